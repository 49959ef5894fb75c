//! Subgroups up to conjugacy, abelianizations and linear characters.
//!
//! Enumeration is a join closure organised by conjugacy classes. Every
//! subgroup is generated by elements of prime-power order, so every class is
//! reached as `⟨R, C⟩` with `R` a representative of a smaller class and `C` a
//! cyclic subgroup of prime-power order. It suffices to try one `C` from each
//! orbit of the normalizer `N_G(R)`.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::group::{ElementTable, PermGroup};
use crate::modp::prime_factors;
use crate::perm::Permutation;

/// A subgroup of an enumerated group, held as element indices of the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<u32>,
    bits: FixedBitSet,
    generators: Vec<u32>,
}

impl Subgroup {
    pub fn trivial(table: &ElementTable) -> Self {
        let mut bits = FixedBitSet::with_capacity(table.len());
        bits.insert(0);
        Subgroup {
            elements: vec![0],
            bits,
            generators: Vec::new(),
        }
    }

    /// The subgroup generated by the given element indices.
    pub fn generated(table: &ElementTable, gens: &[u32]) -> Self {
        gens.iter()
            .fold(Self::trivial(table), |s, &g| s.join(table, g))
    }

    /// The whole parent group.
    pub fn whole(table: &ElementTable) -> Self {
        Self::generated(table, table.generator_indices())
    }

    fn from_bits(bits: FixedBitSet, generators: Vec<u32>) -> Self {
        let elements = bits.ones().map(|x| x as u32).collect();
        Subgroup {
            elements,
            bits,
            generators,
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Element indices in increasing order.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    /// Position of `x` in `elements()`.
    pub fn position(&self, x: u32) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn generator_perms(&self, table: &ElementTable) -> Vec<Permutation> {
        self.generators.iter().map(|&g| table.perm(g)).collect()
    }

    /// The subgroup as a standalone permutation group on the parent's points.
    pub fn to_perm_group(&self, parent: &PermGroup) -> Result<PermGroup> {
        let table = parent.table()?;
        PermGroup::with_cap(parent.degree(), self.generator_perms(table), parent.cap())
    }

    /// `⟨self, g⟩`, grown coset by coset (Dimino's method).
    pub fn join(&self, table: &ElementTable, g: u32) -> Subgroup {
        if self.contains(g) {
            return self.clone();
        }
        let mut bits = self.bits.clone();
        let mut gens = self.generators.clone();
        gens.push(g);
        let mut reps = vec![0u32];
        let mut next = 0;
        while next < reps.len() {
            let t = reps[next];
            for &s in &gens {
                let y = table.mul(t, s);
                if !bits.contains(y as usize) {
                    reps.push(y);
                    for &h in &self.elements {
                        bits.insert(table.mul(h, y) as usize);
                    }
                }
            }
            next += 1;
        }
        Subgroup::from_bits(bits, gens)
    }

    /// `x H x⁻¹`.
    pub fn conjugate(&self, table: &ElementTable, x: u32) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(table.len());
        for &h in &self.elements {
            bits.insert(table.conjugate(x, h) as usize);
        }
        let gens = self
            .generators
            .iter()
            .map(|&g| table.conjugate(x, g))
            .collect();
        Subgroup::from_bits(bits, gens)
    }

    /// `[H, H]`, the normal closure in `H` of the generator commutators.
    pub fn derived_subgroup(&self, table: &ElementTable) -> Subgroup {
        let mut derived = Subgroup::trivial(table);
        for (i, &a) in self.generators.iter().enumerate() {
            for &b in &self.generators[i + 1..] {
                let comm = table.mul(table.mul(table.inv(a), table.inv(b)), table.mul(a, b));
                derived = derived.join(table, comm);
            }
        }
        loop {
            let mut grown = false;
            for &h in &self.generators {
                for k in 0..derived.generators.len() {
                    let c = table.conjugate(h, derived.generators[k]);
                    if !derived.contains(c) {
                        derived = derived.join(table, c);
                        grown = true;
                    }
                }
            }
            if !grown {
                return derived;
            }
        }
    }

    pub fn is_normal_in(&self, table: &ElementTable, gens: &[u32]) -> bool {
        gens.iter().all(|&s| {
            self.generators
                .iter()
                .all(|&h| self.contains(table.conjugate(s, h)))
        })
    }
}

/// Lexicographic comparison of two equal-size element sets, as sorted lists.
fn lex_less(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    for (wa, wb) in a.as_slice().iter().zip(b.as_slice()) {
        let diff = wa ^ wb;
        if diff != 0 {
            return wa & (diff & diff.wrapping_neg()) != 0;
        }
    }
    false
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// The conjugate whose sorted element list is lexicographically least.
    pub representative: Subgroup,
    pub order: u64,
    /// Number of conjugates, `[G : N_G(H)]`.
    pub class_length: u64,
    /// Invariant factors of `H/[H,H]`, each dividing the next; empty when perfect.
    pub abelianization: Vec<u64>,
}

impl SubgroupClass {
    pub fn abelianization_order(&self) -> u64 {
        self.abelianization.iter().product()
    }

    pub fn is_normal(&self) -> bool {
        self.class_length == 1
    }
}

/// All conjugacy classes of subgroups of `group`, ordered by subgroup order
/// and then by the representative's sorted element list.
pub fn subgroup_classes(group: &PermGroup) -> Result<Vec<SubgroupClass>> {
    let table = group.table()?;
    Ok(Enumerator::new(table).run())
}

/// Classes of normal subgroups, i.e. the classes of length one.
pub fn normal_subgroups(group: &PermGroup) -> Result<Vec<SubgroupClass>> {
    Ok(subgroup_classes(group)?
        .into_iter()
        .filter(SubgroupClass::is_normal)
        .collect())
}

struct Enumerator<'a> {
    table: &'a ElementTable,
    /// Prime-power cyclic subgroups, by generating element.
    cyclic: Vec<u32>,
    cyclic_of: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    fn new(table: &'a ElementTable) -> Self {
        let n = table.len();
        let mut cyclic = Vec::new();
        let mut cyclic_of = vec![u32::MAX; n];
        for x in 1..n as u32 {
            let o = table.element_order(x);
            if cyclic_of[x as usize] != u32::MAX || prime_factors(o).len() != 1 {
                continue;
            }
            let id = cyclic.len() as u32;
            cyclic.push(x);
            // the generators of ⟨x⟩ are the powers x^k with gcd(k, o) = 1
            let p = prime_factors(o)[0];
            let mut y = x;
            for k in 1..o {
                if k % p != 0 {
                    cyclic_of[y as usize] = id;
                }
                y = table.mul(y, x);
            }
        }
        Enumerator {
            table,
            cyclic,
            cyclic_of,
        }
    }

    fn run(&self) -> Vec<SubgroupClass> {
        let table = self.table;
        let gens = table.generator_indices();
        let mut known: FxHashMap<FixedBitSet, u32> = FxHashMap::default();
        let mut reps: Vec<(Subgroup, u64)> = Vec::new();
        let mut queue = VecDeque::new();

        let trivial = Subgroup::trivial(table);
        self.register(trivial, &mut known, &mut reps, &mut queue);

        while let Some(cid) = queue.pop_front() {
            let rep = reps[cid as usize].0.clone();
            let normalizer_gens = self.normalizer_generators(&rep, gens);
            let mut seen = vec![false; self.cyclic.len()];
            for c in 0..self.cyclic.len() {
                if seen[c] {
                    continue;
                }
                // orbit of this cyclic subgroup under the normalizer
                let mut orbit = vec![c as u32];
                seen[c] = true;
                let mut i = 0;
                while i < orbit.len() {
                    let x = self.cyclic[orbit[i] as usize];
                    for &s in &normalizer_gens {
                        let d = self.cyclic_of[table.conjugate(s, x) as usize];
                        if !seen[d as usize] {
                            seen[d as usize] = true;
                            orbit.push(d);
                        }
                    }
                    i += 1;
                }
                let x = self.cyclic[c];
                if rep.contains(x) {
                    continue;
                }
                let joined = rep.join(table, x);
                if !known.contains_key(&joined.bits) {
                    self.register(joined, &mut known, &mut reps, &mut queue);
                }
            }
        }

        let mut classes: Vec<SubgroupClass> = reps
            .into_iter()
            .map(|(representative, class_length)| {
                let derived = representative.derived_subgroup(table);
                let abelianization = abelian_invariants(table, &representative, &derived);
                SubgroupClass {
                    order: representative.order(),
                    representative,
                    class_length,
                    abelianization,
                }
            })
            .collect();
        classes.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then_with(|| a.representative.elements.cmp(&b.representative.elements))
        });
        classes
    }

    /// Records the conjugacy class of `sub` and queues its canonical representative.
    fn register(
        &self,
        sub: Subgroup,
        known: &mut FxHashMap<FixedBitSet, u32>,
        reps: &mut Vec<(Subgroup, u64)>,
        queue: &mut VecDeque<u32>,
    ) {
        let table = self.table;
        let id = reps.len() as u32;
        let maps = table.conjugation_maps();
        let mut members: Vec<(FixedBitSet, u32)> = vec![(sub.bits.clone(), 0)];
        known.insert(sub.bits.clone(), id);
        let mut best = 0;
        let mut i = 0;
        while i < members.len() {
            for (s, map) in maps.iter().enumerate() {
                let mut bits = FixedBitSet::with_capacity(table.len());
                for x in members[i].0.ones() {
                    bits.insert(map[x] as usize);
                }
                if !known.contains_key(&bits) {
                    known.insert(bits.clone(), id);
                    let conjugator = table.mul(table.generator_indices()[s], members[i].1);
                    if lex_less(&bits, &members[best].0) {
                        best = members.len();
                    }
                    members.push((bits, conjugator));
                }
            }
            i += 1;
        }
        let canonical = sub.conjugate(table, members[best].1);
        debug_assert_eq!(canonical.bits, members[best].0);
        reps.push((canonical, members.len() as u64));
        queue.push_back(id);
    }

    /// A generating set of `N_G(rep)`.
    fn normalizer_generators(&self, rep: &Subgroup, gens: &[u32]) -> Vec<u32> {
        let table = self.table;
        if rep.order() == 1 || rep.is_normal_in(table, gens) {
            return gens.to_vec();
        }
        let mut normalizer = rep.clone();
        for x in 0..table.len() as u32 {
            if normalizer.contains(x) {
                continue;
            }
            let normalizes = rep
                .generators
                .iter()
                .all(|&h| rep.contains(table.conjugate(x, h)));
            if normalizes {
                normalizer = normalizer.join(table, x);
            }
        }
        normalizer.generators
    }
}

/// Invariant factors of `sub / derived`.
fn abelian_invariants(table: &ElementTable, sub: &Subgroup, derived: &Subgroup) -> Vec<u64> {
    let quotient = Quotient::new(table, sub, derived);
    let m = quotient.len() as u64;
    if m == 1 {
        return Vec::new();
    }
    let orders: Vec<u64> = (0..quotient.len())
        .map(|c| quotient.order(table, c))
        .collect();
    // per prime, exponents of the cyclic p-factors in decreasing order
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(m) {
        let p_part = (m / p_free(m, p)).ilog(p);
        // log_counts[j] = log_p #{a : a^(p^j) = 1}
        let mut log_counts = vec![0u32];
        let mut pj = 1u64;
        while *log_counts.last().unwrap() < p_part {
            pj *= p;
            let count = orders.iter().filter(|&&o| pj.is_multiple_of(o)).count() as u64;
            log_counts.push(count.ilog(p));
        }
        // factors of order ≥ p^j number log_counts[j] - log_counts[j-1]
        let mut exps = Vec::new();
        for j in (1..log_counts.len()).rev() {
            let at_least_j = log_counts[j] - log_counts[j - 1];
            let at_least_next = if j + 1 < log_counts.len() {
                log_counts[j + 1] - log_counts[j]
            } else {
                0
            };
            for _ in 0..at_least_j - at_least_next {
                exps.push(j as u32);
            }
        }
        per_prime.push((p, exps));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, e)| e.get(i).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

fn p_free(mut n: u64, p: u64) -> u64 {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n
}

/// Cosets of a normal subgroup, labelled in order of their least element.
struct Quotient {
    label: FxHashMap<u32, u32>,
    reps: Vec<u32>,
    identity: u32,
}

impl Quotient {
    fn new(table: &ElementTable, sub: &Subgroup, normal: &Subgroup) -> Self {
        let mut label = FxHashMap::default();
        let mut reps = Vec::new();
        for &x in sub.elements() {
            if label.contains_key(&x) {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &d in normal.elements() {
                label.insert(table.mul(x, d), id);
            }
        }
        let identity = label[&0];
        Quotient {
            label,
            reps,
            identity,
        }
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    fn of(&self, x: u32) -> u32 {
        self.label[&x]
    }

    fn mul(&self, table: &ElementTable, a: u32, b: u32) -> u32 {
        self.of(table.mul(self.reps[a as usize], self.reps[b as usize]))
    }

    fn order(&self, table: &ElementTable, c: usize) -> u64 {
        let mut x = c as u32;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(table, x, c as u32);
            k += 1;
        }
        k
    }
}

/// A homomorphism `H → C*`, stored as exponents of ζ_e (e the parent group's
/// exponent) at each element of `H` in increasing index order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearCharacter {
    conductor: u64,
    exponents: Vec<u32>,
}

impl LinearCharacter {
    /// Builds a linear character from per-element exponents, aligned with `sub.elements()`.
    pub fn from_exponents(conductor: u64, exponents: Vec<u32>) -> Self {
        LinearCharacter {
            conductor,
            exponents,
        }
    }

    /// The sign character of a permutation subgroup.
    pub fn sign(table: &ElementTable, sub: &Subgroup) -> Self {
        let e = table.exponent();
        let exponents = sub
            .elements()
            .iter()
            .map(|&x| {
                if table.perm(x).sign() < 0 {
                    (e / 2) as u32
                } else {
                    0
                }
            })
            .collect();
        LinearCharacter {
            conductor: e,
            exponents,
        }
    }

    pub fn trivial(table: &ElementTable, sub: &Subgroup) -> Self {
        LinearCharacter {
            conductor: table.exponent(),
            exponents: vec![0; sub.elements().len()],
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Exponents `k` with λ(h) = ζ_e^k, one per subgroup element.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    pub fn conj(&self) -> Self {
        let e = self.conductor as u32;
        LinearCharacter {
            conductor: self.conductor,
            exponents: self.exponents.iter().map(|&k| (e - k) % e).collect(),
        }
    }
}

/// Every linear character of `sub`, sorted by exponent vector (trivial first).
pub fn linear_characters(table: &ElementTable, sub: &Subgroup) -> Vec<LinearCharacter> {
    let e = table.exponent();
    let derived = sub.derived_subgroup(table);
    let quotient = Quotient::new(table, sub, &derived);
    let m = quotient.len();
    let mut members = vec![quotient.identity];
    let mut inside = vec![false; m];
    inside[quotient.identity as usize] = true;
    // each character as exponents per coset label, defined on `members`
    let mut chars: Vec<Vec<u32>> = vec![vec![0; m]];
    for &g in sub.generators() {
        let a = quotient.of(g);
        if inside[a as usize] {
            continue;
        }
        let mut powers = vec![quotient.identity, a];
        while !inside[*powers.last().unwrap() as usize] {
            let next = quotient.mul(table, *powers.last().unwrap(), a);
            powers.push(next);
        }
        let k = (powers.len() - 1) as u64;
        let top = *powers.last().unwrap();
        let old = members.clone();
        for &pw in &powers[1..k as usize] {
            for &b in &old {
                let c = quotient.mul(table, b, pw);
                inside[c as usize] = true;
                members.push(c);
            }
        }
        let mut extended = Vec::with_capacity(chars.len() * k as usize);
        for lambda in &chars {
            let t = lambda[top as usize] as u64;
            debug_assert_eq!(t % k, 0);
            for i in 0..k {
                let s = (t / k + i * (e / k)) % e;
                let mut next = lambda.clone();
                for (j, &pw) in powers[1..k as usize].iter().enumerate() {
                    let shift = ((j as u64 + 1) * s) % e;
                    for &b in &old {
                        let c = quotient.mul(table, b, pw);
                        next[c as usize] = ((lambda[b as usize] as u64 + shift) % e) as u32;
                    }
                }
                extended.push(next);
            }
        }
        chars = extended;
    }
    debug_assert_eq!(members.len(), m);
    let mut out: Vec<LinearCharacter> = chars
        .into_iter()
        .map(|values| LinearCharacter {
            conductor: e,
            exponents: sub
                .elements()
                .iter()
                .map(|&h| values[quotient.of(h) as usize])
                .collect(),
        })
        .collect();
    out.sort();
    out
}
