//! Class functions and exact character tables (Dixon–Schneider).
//!
//! The table is first computed modulo a prime `p ≡ 1 (mod e)`, `e` the group
//! exponent, by splitting the class-algebra structure matrices into common
//! eigenspaces. Each character is then lifted to exact cyclotomic values by
//! recovering the eigenvalue multiplicities of every class representative from
//! its power map.

use std::sync::Arc;

use num_integer::Roots;
use num_rational::Ratio;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ClassSpace, ElementTable, PermGroup};
use crate::modp::{is_prime, PrimeField};

/// A function on the conjugacy classes of a group, in canonical class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    space: Arc<ClassSpace>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.space.group_id == other.space.group_id && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(space: &Arc<ClassSpace>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != space.class_count() {
            return Err(Error::LengthMismatch {
                expected: space.class_count(),
                got: values.len(),
            });
        }
        Ok(ClassFunction {
            space: space.clone(),
            values,
        })
    }

    pub fn trivial(space: &Arc<ClassSpace>) -> Self {
        let one = Cyclotomic::one(&space.field);
        ClassFunction {
            space: space.clone(),
            values: vec![one; space.class_count()],
        }
    }

    /// The regular character: |G| at the identity, 0 elsewhere.
    pub fn regular(space: &Arc<ClassSpace>) -> Self {
        let mut values = vec![Cyclotomic::zero(&space.field); space.class_count()];
        values[0] = Cyclotomic::from_integer(&space.field, space.group_order as i64);
        ClassFunction {
            space: space.clone(),
            values,
        }
    }

    pub fn space(&self) -> &Arc<ClassSpace> {
        &self.space
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value at the identity class.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// `(1/|G|) Σ_c |c| f(c) conj(g(c))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Cyclotomic> {
        if self.space.group_id != other.space.group_id {
            return Err(Error::GroupMismatch);
        }
        let field = &self.space.field;
        let mut acc = Cyclotomic::zero(field);
        for (c, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = (a * &b.conj()).scale(Ratio::from_integer(self.space.sizes[c] as i128));
            acc = &acc + &term;
        }
        Ok(acc.scale(Ratio::new(1, self.space.group_order as i128)))
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.space.group_id != other.space.group_id {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        ClassFunction {
            space: self.space.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.scale(Ratio::from_integer(k as i128)))
                .collect(),
        }
    }
}

/// The complete set of irreducible characters of a group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    space: Arc<ClassSpace>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    prime: u64,
}

impl CharacterTable {
    pub fn compute(group: &PermGroup) -> Result<Self> {
        let table = group.table()?;
        let (rows, prime) = dixon_schneider(table)?;
        let space = table.class_space().clone();
        let mut irreducibles: Vec<ClassFunction> = rows
            .into_iter()
            .map(|values| ClassFunction {
                space: space.clone(),
                values,
            })
            .collect();
        let degree_of = |f: &ClassFunction| f.degree().as_integer().unwrap() as u64;
        let is_trivial = |f: &ClassFunction| f.values.iter().all(|v| v.as_integer() == Some(1));
        irreducibles.sort_by(|a, b| {
            is_trivial(b)
                .cmp(&is_trivial(a))
                .then_with(|| degree_of(a).cmp(&degree_of(b)))
                .then_with(|| a.values.cmp(&b.values))
        });
        let degrees: Vec<u64> = irreducibles.iter().map(degree_of).collect();
        let sum: u64 = degrees.iter().map(|d| d * d).sum();
        if sum != space.group_order {
            return Err(Error::CharacterTable(format!(
                "sum of squared degrees {} differs from group order {}",
                sum, space.group_order
            )));
        }
        Ok(CharacterTable {
            space,
            irreducibles,
            degrees,
            prime,
        })
    }

    pub fn space(&self) -> &Arc<ClassSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// The prime used for the modular stage.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Checks exact row and column orthogonality.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let r = self.len();
        for i in 0..r {
            for j in 0..r {
                let ip = self.irreducibles[i].inner_product(&self.irreducibles[j])?;
                let expected = if i == j { 1 } else { 0 };
                if ip.as_integer() != Some(expected) {
                    return Err(Error::CharacterTable(format!(
                        "<chi_{}, chi_{}> = {}",
                        i + 1,
                        j + 1,
                        ip
                    )));
                }
            }
        }
        let field = &self.space.field;
        for a in 0..r {
            for b in 0..r {
                let mut sum = Cyclotomic::zero(field);
                for chi in &self.irreducibles {
                    sum = &sum + &(&chi.values[a] * &chi.values[b].conj());
                }
                let expected = if a == b {
                    (self.space.group_order / self.space.sizes[a]) as i128
                } else {
                    0
                };
                if sum.as_integer() != Some(expected) {
                    return Err(Error::CharacterTable(format!(
                        "column orthogonality fails for classes {} and {}",
                        a, b
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√n`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    (1..)
        .map(|k| k * exponent + 1)
        .find(|&p| p * p > 4 * order && is_prime(p))
        .unwrap()
}

fn dixon_schneider(table: &ElementTable) -> Result<(Vec<Vec<Cyclotomic>>, u64)> {
    let classes = table.classes();
    let r = classes.len();
    let n = table.len() as u64;
    let e = table.exponent();
    let p = dixon_prime(e, n);
    let fp = PrimeField::new(p);
    let omega = fp.pow(fp.primitive_root(), (p - 1) / e);

    // consts[(j*r + i)*r + k] = #{x ∈ C_j : x⁻¹ g_k ∈ C_i}
    let mut consts = vec![0u32; r * r * r];
    for (k, class) in classes.iter().enumerate() {
        for x in 0..n as u32 {
            let j = table.class_of(x);
            let i = table.class_of(table.mul(table.inv(x), class.rep_index));
            consts[(j * r + i) * r + k] += 1;
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(r)];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let matrix: Vec<Vec<u64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| consts[(j * r + i) * r + k] as u64 % p)
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split(&fp, &matrix, space)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::CharacterTable(format!(
            "found {} common eigenspaces for {} classes",
            spaces.len(),
            r
        )));
    }

    // power maps: power_classes[c][m] = class of g_c^m
    let power_classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|class| {
            let mut out = Vec::with_capacity(class.element_order as usize);
            let mut x = 0;
            for _ in 0..class.element_order {
                out.push(table.class_of(x));
                x = table.mul(x, class.rep_index);
            }
            out
        })
        .collect();

    let space = table.class_space();
    let mut rows = Vec::with_capacity(r);
    for basis in spaces {
        let mut v = basis.into_iter().next().unwrap();
        let scale = fp.inv(v[0]);
        for x in v.iter_mut() {
            *x = fp.mul(*x, scale);
        }
        // Σ_i ω_i ω_{i'} / h_i = |G| / χ(1)²
        let mut s = 0;
        for i in 0..r {
            let term = fp.mul(
                fp.mul(v[i], v[space.inverse_class[i]]),
                fp.inv(classes[i].size % p),
            );
            s = fp.add(s, term);
        }
        let d2 = fp.mul(n % p, fp.inv(s));
        let degree = (1..=n.sqrt())
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::CharacterTable("no admissible degree".into()))?;
        let modular: Vec<u64> = (0..r)
            .map(|i| fp.mul(fp.mul(v[i], degree % p), fp.inv(classes[i].size % p)))
            .collect();
        let mut row = Vec::with_capacity(r);
        for (c, class) in classes.iter().enumerate() {
            let o = class.element_order;
            let w = fp.pow(omega, e / o);
            let inv_o = fp.inv(o % p);
            let mut counts = vec![0i64; e as usize];
            for k in 0..o {
                let mut a = 0;
                for m in 0..o {
                    let root = fp.pow(w, (o - (m * k) % o) % o);
                    a = fp.add(a, fp.mul(modular[power_classes[c][m as usize]], root));
                }
                let a = fp.mul(a, inv_o);
                if a > degree {
                    return Err(Error::CharacterTable(format!(
                        "eigenvalue multiplicity {} exceeds degree {}",
                        a, degree
                    )));
                }
                counts[(k * (e / o)) as usize] = a as i64;
            }
            row.push(Cyclotomic::from_exponent_counts(&space.field, &counts));
        }
        rows.push(row);
    }
    Ok((rows, p))
}

fn identity_basis(r: usize) -> Vec<Vec<u64>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()
}

/// Reduced row echelon form of a list of vectors; returns rows and pivot columns.
fn echelon(fp: &PrimeField, mut rows: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<usize>) {
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = fp.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                for c in 0..width {
                    let v = fp.mul(f, rows[rank][c]);
                    rows[i][c] = fp.sub(rows[i][c], v);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Splits an invariant subspace into eigenspaces of `matrix`, in order of eigenvalue.
fn split(fp: &PrimeField, matrix: &[Vec<u64>], basis: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let (basis, pivots) = echelon(fp, basis);
    let d = basis.len();
    let r = matrix.len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|w| {
            (0..r)
                .map(|i| (0..r).fold(0, |acc, k| fp.add(acc, fp.mul(matrix[i][k], w[k]))))
                .collect()
        })
        .collect();
    // restricted[a][b] = coordinate a of M w_b
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|a| (0..d).map(|b| images[b][pivots[a]]).collect())
        .collect();
    let cp = fp.charpoly(&restricted);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..fp.modulus() {
        if fp.eval(&cp, lambda) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        let diag = if a == b { lambda } else { 0 };
                        fp.sub(restricted[a][b], diag)
                    })
                    .collect()
            })
            .collect();
        let kernel = fp.null_space(&shifted, d);
        total += kernel.len();
        let vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|y| {
                (0..r)
                    .map(|i| (0..d).fold(0, |acc, b| fp.add(acc, fp.mul(y[b], basis[b][i]))))
                    .collect()
            })
            .collect();
        out.push(echelon(fp, vectors).0);
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::CharacterTable(
            "class matrix is not diagonalisable over the chosen prime".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{Family, Preset};

    fn table_of(f: Family) -> CharacterTable {
        CharacterTable::compute(&f.build().unwrap()).unwrap()
    }

    #[test]
    fn cyclic_tables_are_powers_of_a_root_of_unity() {
        for n in [1usize, 2, 5, 6] {
            let t = table_of(Family::Cyclic(n));
            assert_eq!(t.len(), n);
            assert!(t.degrees().iter().all(|&d| d == 1));
            t.verify_orthogonality().unwrap();
            // every value is an n-th root of unity
            for chi in t.irreducibles() {
                for v in chi.values() {
                    let (re, im) = v.to_complex();
                    assert!((re * re + im * im - 1.0).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn s3_degrees() {
        let t = table_of(Family::Symmetric(3));
        assert_eq!(t.degrees(), &[1, 1, 2]);
        t.verify_orthogonality().unwrap();
    }

    #[test]
    fn q8_and_sl2_3_degrees() {
        let t = table_of(Family::Preset(Preset::Quaternion));
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);
        let t = table_of(Family::Sl2(3));
        assert_eq!(t.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
        t.verify_orthogonality().unwrap();
    }

    #[test]
    fn first_row_is_trivial() {
        let t = table_of(Family::Symmetric(4));
        assert!(t
            .character(0)
            .values()
            .iter()
            .all(|v| v.as_integer() == Some(1)));
        assert_eq!(t.degrees(), &[1, 1, 2, 3, 3]);
    }

    #[test]
    fn inner_products_with_regular_character() {
        let g = Family::Alternating(4).build().unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let reg = ClassFunction::regular(t.space());
        for (i, chi) in t.irreducibles().iter().enumerate() {
            assert_eq!(
                reg.inner_product(chi).unwrap().as_integer(),
                Some(t.degrees()[i] as i128)
            );
            assert_eq!(chi.inner_product(chi).unwrap().as_integer(), Some(1));
        }
    }

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(12, 24), 13);
        assert_eq!(dixon_prime(420, 5040), 421);
        assert_eq!(dixon_prime(2, 4), 5);
    }

    #[test]
    fn group_mismatch() {
        let a = table_of(Family::Symmetric(3));
        let b = table_of(Family::Cyclic(3));
        assert_eq!(
            a.character(0).inner_product(b.character(0)),
            Err(Error::GroupMismatch)
        );
    }
}
