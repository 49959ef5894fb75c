//! Image-array permutations.
//!
//! Points are stored 0-based internally. Every constructor and renderer that
//! faces users speaks 1-based points, matching the group input documents.
//!
//! Composition convention: `p.compose(&q)` applies `q` first and then `p`,
//! i.e. `(p ∘ q)(x) = p(q(x))`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "images {:?} are not a bijection on {} points",
                    images, n
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images, as written in group documents.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let mut zero = Vec::with_capacity(images.len());
        for &x in images {
            if x == 0 {
                return Err(Error::InvalidPermutation(
                    "point 0 in a 1-based image array".into(),
                ));
            }
            zero.push((x - 1) as u32);
        }
        Self::from_images(zero)
    }

    /// Builds a permutation of `degree` points from disjoint 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || a > degree || b == 0 || b > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle {:?} leaves 1..={}",
                        cycle, degree
                    )));
                }
                if touched[a - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} repeated in cycles",
                        a
                    )));
                }
                touched[a - 1] = true;
                images[a - 1] = (b - 1) as u32;
            }
        }
        Self::from_images(images)
    }

    /// Trusted constructor for internal code that already holds a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Lengths of the nontrivial cycles, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            if len > 1 {
                lengths.push(len);
            }
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, len| acc.lcm(&(len as u64)))
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycle_type().iter().map(|len| len - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Same permutation acting on `degree` points, fixing the added ones.
    pub fn extended(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Same permutation with every point shifted up by `offset`, on `degree` points.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let p = cyc(4, &[&[1, 3, 2]]);
        let id = Permutation::identity(4);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
    }

    #[test]
    fn transposition_squares_to_identity() {
        let t = cyc(3, &[&[1, 2]]);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let p = cyc(3, &[&[1, 2, 3]]);
        let q = cyc(3, &[&[1, 2]]);
        // 1 -q-> 2 -p-> 3, 2 -q-> 1 -p-> 2, 3 -q-> 3 -p-> 1
        assert_eq!(p.compose(&q).unwrap().to_one_based(), vec![3, 2, 1]);
        // the reversed product is the one that maps 1→1, 2→3, 3→2
        assert_eq!(q.compose(&p).unwrap().to_one_based(), vec![1, 3, 2]);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(p.compose(&q), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[]).is_err());
        assert!(Permutation::from_one_based(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn order_sign_and_display() {
        let p = cyc(6, &[&[1, 2], &[3, 4, 5]]);
        assert_eq!(p.order(), 6);
        assert_eq!(p.sign(), -1);
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
        assert_eq!(p.inverse().compose(&p).unwrap(), Permutation::identity(6));
    }
}
