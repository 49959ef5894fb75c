//! Permutation groups, their enumerated element tables and conjugacy classes.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::cyclotomic::CyclotomicField;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::schreier::StabChain;

/// Largest group order handled by default.
pub const DEFAULT_CAP: u64 = 10_000;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// A finite permutation group given by generators.
///
/// Order and membership come from a stabilizer chain. The full element table,
/// conjugacy classes included, is built lazily on first use and only when the
/// order is within the group's cap.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<GroupInner>,
}

struct GroupInner {
    id: u64,
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    cap: u64,
    table: OnceLock<ElementTable>,
}

impl PermGroup {
    /// The group generated by `generators` acting on `degree` points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Permutation>, cap: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let chain = StabChain::new(degree, &generators);
        Ok(PermGroup {
            inner: Arc::new(GroupInner {
                id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
                degree,
                generators,
                chain,
                cap,
                table: OnceLock::new(),
            }),
        })
    }

    /// Builds a group from a nonempty generator list, inferring the degree.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators.first().map(|g| g.degree()).ok_or_else(|| {
            Error::InvalidPermutation("empty generator list has no degree".into())
        })?;
        Self::new(degree, generators)
    }

    pub fn trivial() -> Self {
        Self::new(1, Vec::new()).expect("trivial group")
    }

    /// Same group under a different order cap.
    pub fn recapped(&self, cap: u64) -> Self {
        Self::with_cap(self.degree(), self.generators().to_vec(), cap).expect("valid generators")
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn cap(&self) -> u64 {
        self.inner.cap
    }

    pub fn order(&self) -> u128 {
        self.inner.chain.order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.inner.chain.base()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.inner.chain.contains(g)
    }

    pub fn check_cap(&self) -> Result<()> {
        if self.order() > self.cap() as u128 {
            return Err(Error::CapExceeded {
                order: self.order(),
                cap: self.cap(),
            });
        }
        Ok(())
    }

    /// The enumerated element table; fails when the order exceeds the cap.
    pub fn table(&self) -> Result<&ElementTable> {
        self.check_cap()?;
        Ok(self.inner.table.get_or_init(|| ElementTable::build(self)))
    }

    pub fn exponent(&self) -> Result<u64> {
        Ok(self.table()?.exponent())
    }

    pub fn conjugacy_classes(&self) -> Result<&[ConjugacyClass]> {
        Ok(self.table()?.classes())
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, a)| {
            gens[i + 1..]
                .iter()
                .all(|b| a.compose_unchecked(b) == b.compose_unchecked(a))
        })
    }

    /// Whether every generator of `sub` lies in this group.
    pub fn is_subgroup(&self, sub: &PermGroup) -> bool {
        sub.degree() == self.degree() && sub.generators().iter().all(|g| self.contains(g))
    }

    /// Whether `sub` is a normal subgroup of this group.
    pub fn is_normal(&self, sub: &PermGroup) -> bool {
        self.is_subgroup(sub)
            && self.generators().iter().all(|g| {
                let gi = g.inverse();
                sub.generators()
                    .iter()
                    .all(|n| sub.contains(&g.compose_unchecked(n).compose_unchecked(&gi)))
            })
    }

    /// Direct product acting on the disjoint union of both point sets.
    pub fn direct_product(&self, other: &PermGroup) -> Result<PermGroup> {
        let order = self.order() * other.order();
        let cap = self.cap().min(other.cap());
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        let degree = self.degree() + other.degree();
        let mut gens: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|g| g.extended(degree))
            .collect();
        gens.extend(
            other
                .generators()
                .iter()
                .map(|g| g.shifted(self.degree(), degree)),
        );
        PermGroup::with_cap(degree, gens, cap)
    }

    /// `G/N` realised as the action of `G` on the left cosets of `N`.
    pub fn coset_action_quotient(&self, normal: &PermGroup) -> Result<PermGroup> {
        if !self.is_subgroup(normal) {
            return Err(Error::NotSubgroup);
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let table = self.table()?;
        let n = table.len();
        let mut coset_of = vec![u32::MAX; n];
        let mut cosets = 0u32;
        let normal_elems: Vec<u32> = normal
            .inner
            .chain
            .elements()
            .iter()
            .map(|p| table.index_of(p).expect("normal subgroup element"))
            .collect();
        for x in 0..n as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            for &m in &normal_elems {
                coset_of[table.mul(x, m) as usize] = cosets;
            }
            cosets += 1;
        }
        let degree = cosets as usize;
        if degree == 1 {
            return PermGroup::with_cap(1, Vec::new(), self.cap());
        }
        // first element index of each coset
        let mut rep = vec![u32::MAX; degree];
        for x in (0..n as u32).rev() {
            rep[coset_of[x as usize] as usize] = x;
        }
        let mut gens = Vec::new();
        for g in self.generators() {
            let gi = table.index_of(g).expect("generator in table");
            let images: Vec<u32> = rep
                .iter()
                .map(|&r| coset_of[table.mul(gi, r) as usize])
                .collect();
            let p = Permutation::from_images_unchecked(images);
            if !p.is_identity() {
                gens.push(p);
            }
        }
        PermGroup::with_cap(degree, gens, self.cap())
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    /// Element index of the representative in the group's table.
    pub rep_index: u32,
    pub size: u64,
    pub element_order: u64,
}

/// The per-group data shared by all class functions of one group.
#[derive(Debug)]
pub struct ClassSpace {
    pub group_id: u64,
    pub group_order: u64,
    pub sizes: Vec<u64>,
    /// `inverse_class[c]` is the class of `g⁻¹` for `g` in class `c`.
    pub inverse_class: Vec<usize>,
    pub field: Arc<CyclotomicField>,
}

impl ClassSpace {
    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }
}

type Images = SmallVec<[u32; 32]>;

/// Every element of a group, indexed in lexicographic order of image arrays.
///
/// Index 0 is the identity. Indices depend only on the element set, never on
/// the generating set, which keeps downstream output canonical.
pub struct ElementTable {
    degree: usize,
    perms: Vec<u32>,
    index: FxHashMap<Box<[u32]>, u32>,
    inverse: Vec<u32>,
    element_order: Vec<u32>,
    exponent: u64,
    generator_index: Vec<u32>,
    conj_by_generator: Vec<Vec<u32>>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
    space: Arc<ClassSpace>,
}

impl ElementTable {
    fn build(group: &PermGroup) -> Self {
        let degree = group.degree();
        let mut elements = group.inner.chain.elements();
        elements.sort_unstable();
        let n = elements.len();
        let mut perms = Vec::with_capacity(n * degree);
        let mut index = FxHashMap::default();
        index.reserve(n);
        for (i, p) in elements.iter().enumerate() {
            perms.extend_from_slice(p.images());
            index.insert(p.images().to_vec().into_boxed_slice(), i as u32);
        }
        let mut table = ElementTable {
            degree,
            perms,
            index,
            inverse: Vec::new(),
            element_order: Vec::new(),
            exponent: 1,
            generator_index: Vec::new(),
            conj_by_generator: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            space: Arc::new(ClassSpace {
                group_id: 0,
                group_order: 0,
                sizes: Vec::new(),
                inverse_class: Vec::new(),
                field: CyclotomicField::new(1),
            }),
        };
        table.inverse = elements
            .iter()
            .map(|p| table.index_of(&p.inverse()).unwrap())
            .collect();
        table.element_order = elements.iter().map(|p| p.order() as u32).collect();
        table.exponent = table
            .element_order
            .iter()
            .fold(1u64, |acc, &o| acc.lcm(&(o as u64)));
        table.generator_index = group
            .generators()
            .iter()
            .map(|g| table.index_of(g).unwrap())
            .collect();
        table.conj_by_generator = table
            .generator_index
            .iter()
            .map(|&s| (0..n as u32).map(|x| table.conjugate(s, x)).collect())
            .collect();
        table.build_classes(group.id());
        table
    }

    fn build_classes(&mut self, group_id: u64) {
        let n = self.len();
        let mut orbit_of = vec![u32::MAX; n];
        let mut orbits: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if orbit_of[start as usize] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let mut orbit = vec![start];
            orbit_of[start as usize] = id;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i] as usize;
                for map in &self.conj_by_generator {
                    let y = map[x];
                    if orbit_of[y as usize] == u32::MAX {
                        orbit_of[y as usize] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbits.push(orbit);
        }
        // orbits were discovered from their least element, so orbit[0] is the least
        let mut classes: Vec<ConjugacyClass> = orbits
            .iter()
            .map(|orbit| {
                let rep = orbit[0];
                ConjugacyClass {
                    representative: self.perm(rep),
                    rep_index: rep,
                    size: orbit.len() as u64,
                    element_order: self.element_order[rep as usize] as u64,
                }
            })
            .collect();
        classes.sort_by_key(|c| (c.element_order, c.size, c.rep_index));
        let mut class_of = vec![0u32; n];
        let mut position = vec![0u32; orbits.len()];
        for (pos, class) in classes.iter().enumerate() {
            position[orbit_of[class.rep_index as usize] as usize] = pos as u32;
        }
        for x in 0..n {
            class_of[x] = position[orbit_of[x] as usize];
        }
        let inverse_class = classes
            .iter()
            .map(|c| class_of[self.inverse[c.rep_index as usize] as usize] as usize)
            .collect();
        self.space = Arc::new(ClassSpace {
            group_id,
            group_order: n as u64,
            sizes: classes.iter().map(|c| c.size).collect(),
            inverse_class,
            field: CyclotomicField::new(self.exponent),
        });
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn len(&self) -> usize {
        self.inverse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn images(&self, x: u32) -> &[u32] {
        let start = x as usize * self.degree;
        &self.perms[start..start + self.degree]
    }

    pub fn perm(&self, x: u32) -> Permutation {
        Permutation::from_images_unchecked(self.images(x).to_vec())
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p.images()).copied()
    }

    /// Index of `a ∘ b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let pa = self.images(a);
        let buf: Images = self.images(b).iter().map(|&x| pa[x as usize]).collect();
        self.index[&buf[..]]
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inverse[x as usize]
    }

    /// Index of `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        let pg = self.images(g);
        let px = self.images(x);
        // g x g⁻¹ sends g(i) to g(x(i))
        let mut buf: Images = SmallVec::from_elem(0, self.degree);
        for i in 0..self.degree {
            buf[pg[i] as usize] = pg[px[i] as usize];
        }
        self.index[&buf[..]]
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        let order = self.element_order[x as usize] as u64;
        let mut result = 0;
        for _ in 0..k % order {
            result = self.mul(result, x);
        }
        result
    }

    pub fn element_order(&self, x: u32) -> u64 {
        self.element_order[x as usize] as u64
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.generator_index
    }

    /// For generator `s`, the map `x ↦ s x s⁻¹` on element indices.
    pub fn conjugation_maps(&self) -> &[Vec<u32>] {
        &self.conj_by_generator
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    #[inline]
    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn class_space(&self) -> &Arc<ClassSpace> {
        &self.space
    }
}
