//! Built-in group families with deterministic generators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Preset {
    /// Quaternion group of order 8, left regular action.
    Quaternion,
    /// Klein four-group acting regularly on 4 points.
    Klein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Symmetries of the regular n-gon, order 2n.
    Dihedral(usize),
    Sl2(u64),
    Gl2(u64),
    Preset(Preset),
}

impl Family {
    /// Group order, computed without building the group.
    pub fn expected_order(&self) -> u128 {
        match *self {
            Family::Symmetric(n) => (1..=n as u128).product(),
            Family::Alternating(n) => {
                let f: u128 = (1..=n as u128).product();
                if n < 2 {
                    1
                } else {
                    f / 2
                }
            }
            Family::Cyclic(n) => n as u128,
            Family::Dihedral(n) => 2 * n as u128,
            Family::Sl2(q) => q as u128 * (q as u128 * q as u128 - 1),
            Family::Gl2(q) => (q as u128 - 1) * q as u128 * (q as u128 * q as u128 - 1),
            Family::Preset(Preset::Quaternion) => 8,
            Family::Preset(Preset::Klein) => 4,
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        self.build_with_cap(crate::group::DEFAULT_CAP)
    }

    pub fn build_with_cap(&self, cap: u64) -> Result<PermGroup> {
        match *self {
            Family::Sl2(q) | Family::Gl2(q) => {
                prime_power(q).ok_or(Error::NotPrimePower(q))?;
            }
            Family::Symmetric(0)
            | Family::Alternating(0)
            | Family::Cyclic(0)
            | Family::Dihedral(0) => {
                return Err(Error::BadParameter(format!(
                    "{} needs a positive parameter",
                    self
                )))
            }
            _ => {}
        }
        let order = self.expected_order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { order, cap });
        }
        let (degree, gens) = match *self {
            Family::Symmetric(n) => symmetric(n),
            Family::Alternating(n) => alternating(n),
            Family::Cyclic(n) => (n, vec![cycle(n, 0..n)]),
            Family::Dihedral(n) => dihedral(n),
            Family::Sl2(q) => linear(q, false),
            Family::Gl2(q) => linear(q, true),
            Family::Preset(Preset::Quaternion) => quaternion(),
            Family::Preset(Preset::Klein) => (
                4,
                vec![
                    Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap(),
                    Permutation::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap(),
                ],
            ),
        };
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let group = PermGroup::with_cap(degree.max(1), gens, cap)?;
        debug_assert_eq!(group.order(), order, "{}", self);
        Ok(group)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Symmetric(n) => write!(f, "S{}", n),
            Family::Alternating(n) => write!(f, "A{}", n),
            Family::Cyclic(n) => write!(f, "C{}", n),
            Family::Dihedral(n) => write!(f, "D{}", n),
            Family::Sl2(q) => write!(f, "SL2({})", q),
            Family::Gl2(q) => write!(f, "GL2({})", q),
            Family::Preset(Preset::Quaternion) => write!(f, "Q8"),
            Family::Preset(Preset::Klein) => write!(f, "V4"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `S4`, `A5`, `C6`, `D4`, `SL2(3)`, `GL2(3)`, `Q8`, `V4`, and the
    /// long forms `symmetric:4`, `alternating:5`, `cyclic:6`, `dihedral:4`,
    /// `sl2:3`, `gl2:3`, `preset:q8`. A space may replace the colon.
    fn from_str(s: &str) -> Result<Self> {
        let mut t = s.trim().to_ascii_lowercase();
        let bad = || Error::BadParameter(format!("unrecognised group name {:?}", s));
        let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
        if t.is_empty() {
            return Err(bad());
        }
        if !t.contains(':') {
            if let Some((family, param)) = t.split_once(char::is_whitespace) {
                t = format!("{family}:{}", param.trim());
            }
        }
        if let Some((family, param)) = t.split_once(':') {
            return match family.trim() {
                "symmetric" | "sym" | "s" => Ok(Family::Symmetric(num(param)? as usize)),
                "alternating" | "alt" | "a" => Ok(Family::Alternating(num(param)? as usize)),
                "cyclic" | "c" => Ok(Family::Cyclic(num(param)? as usize)),
                "dihedral" | "d" => Ok(Family::Dihedral(num(param)? as usize)),
                "sl2" => Ok(Family::Sl2(num(param)?)),
                "gl2" => Ok(Family::Gl2(num(param)?)),
                "preset" => match param.trim() {
                    "q8" | "quaternion" => Ok(Family::Preset(Preset::Quaternion)),
                    "v4" | "klein" => Ok(Family::Preset(Preset::Klein)),
                    _ => Err(bad()),
                },
                _ => Err(bad()),
            };
        }
        match t.as_str() {
            "q8" => return Ok(Family::Preset(Preset::Quaternion)),
            "v4" => return Ok(Family::Preset(Preset::Klein)),
            _ => {}
        }
        for (prefix, gl) in [("sl2", false), ("gl2", true)] {
            if let Some(rest) = t.strip_prefix(prefix) {
                let inner = rest
                    .trim()
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .unwrap_or(rest);
                let q = num(inner)?;
                return Ok(if gl { Family::Gl2(q) } else { Family::Sl2(q) });
            }
        }
        let (head, tail) = t.split_at(1);
        let n = num(tail)? as usize;
        match head {
            "s" => Ok(Family::Symmetric(n)),
            "a" => Ok(Family::Alternating(n)),
            "c" => Ok(Family::Cyclic(n)),
            "d" => Ok(Family::Dihedral(n)),
            _ => Err(bad()),
        }
    }
}

fn cycle(degree: usize, points: impl Iterator<Item = usize>) -> Permutation {
    let points: Vec<usize> = points.collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &a) in points.iter().enumerate() {
        images[a] = points[(i + 1) % points.len()] as u32;
    }
    Permutation::from_images_unchecked(images)
}

fn symmetric(n: usize) -> (usize, Vec<Permutation>) {
    if n < 2 {
        return (1, vec![]);
    }
    (n, vec![cycle(n, 0..2), cycle(n, 0..n)])
}

fn alternating(n: usize) -> (usize, Vec<Permutation>) {
    if n < 3 {
        return (n.max(1), vec![]);
    }
    let long = if n % 2 == 1 {
        cycle(n, 0..n)
    } else {
        cycle(n, 1..n)
    };
    (n, vec![cycle(n, 0..3), long])
}

fn dihedral(n: usize) -> (usize, Vec<Permutation>) {
    match n {
        1 => (2, vec![cycle(2, 0..2)]),
        2 => (
            4,
            vec![
                Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap(),
                Permutation::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap(),
            ],
        ),
        _ => {
            let reflection = Permutation::from_images_unchecked(
                (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect(),
            );
            (n, vec![cycle(n, 0..n), reflection])
        }
    }
}

/// Quaternion units ±1, ±i, ±j, ±k as points 1..8, acted on by left multiplication.
fn quaternion() -> (usize, Vec<Permutation>) {
    // unit encoded as (sign, basis) with basis 0=1, 1=i, 2=j, 3=k
    fn mul(a: (i8, u8), b: (i8, u8)) -> (i8, u8) {
        const TABLE: [[(i8, u8); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let (s, c) = TABLE[a.1 as usize][b.1 as usize];
        (a.0 * b.0 * s, c)
    }
    let point = |u: (i8, u8)| 2 * u.1 as usize + if u.0 < 0 { 1 } else { 0 };
    let unit = |p: usize| (if p.is_multiple_of(2) { 1i8 } else { -1 }, (p / 2) as u8);
    let left = |g: (i8, u8)| {
        Permutation::from_images_unchecked((0..8).map(|p| point(mul(g, unit(p))) as u32).collect())
    };
    (8, vec![left((1, 1)), left((1, 2))])
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// The finite field with `p^k` elements; elements are integers `0..q` read as
/// base-p coefficient vectors of polynomials modulo a fixed irreducible.
#[derive(Clone, Debug)]
pub struct GaloisField {
    q: u64,
    add: Vec<u32>,
    mul: Vec<u32>,
    primitive: u32,
}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let k = k as usize;
        let digits = |x: u64| -> Vec<u64> { (0..k).map(|i| (x / p.pow(i as u32)) % p).collect() };
        let undigits = |d: &[u64]| -> u64 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        // least monic irreducible of degree k
        let modulus = (0..q)
            .map(|low| {
                let mut m = digits(low);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial exists");
        let poly_mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut r = vec![0u64; 2 * k];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + x * y) % p;
                }
            }
            for deg in (k..2 * k).rev() {
                let c = r[deg];
                if c != 0 {
                    for (i, &mc) in modulus.iter().enumerate() {
                        let idx = deg - k + i;
                        r[idx] = (r[idx] + p * p - c * mc % p) % p;
                    }
                }
            }
            r.truncate(k);
            r
        };
        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&sum) as u32;
                mul[a as usize * qs + b as usize] = undigits(&poly_mul(&da, &db)) as u32;
            }
        }
        let mut field = GaloisField {
            q,
            add,
            mul,
            primitive: 0,
        };
        field.primitive = (1..q as u32)
            .find(|&g| field.multiplicative_order(g) == q - 1)
            .expect("multiplicative group is cyclic");
        Ok(field)
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q as u32).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: u32) -> u32 {
        (1..self.q as u32).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    fn multiplicative_order(&self, g: u32) -> u64 {
        let mut x = g;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, g);
            n += 1;
            if n > self.q {
                return 0;
            }
        }
        n
    }
}

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree at most half.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    for d in 1..=k / 2 {
        for low in 0..p.pow(d as u32) {
            let mut f: Vec<u64> = (0..d).map(|i| (low / p.pow(i as u32)) % p).collect();
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let d = f.len() - 1;
    while r.len() > d {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        for (i, &fc) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * fc % p) % p;
        }
        r.pop();
    }
    r
}

/// SL2(q) or GL2(q) acting on the nonzero vectors of F_q².
fn linear(q: u64, general: bool) -> (usize, Vec<Permutation>) {
    let field = GaloisField::new(q).expect("prime power checked by caller");
    let (_, k) = prime_power(q).unwrap();
    let qs = q as u32;
    let points = (q * q - 1) as usize;
    // vector (a, b) has point index a*q + b - 1
    let act = |m: [u32; 4]| -> Permutation {
        let images = (1..q * q)
            .map(|code| {
                let (a, b) = ((code / q) as u32, (code % q) as u32);
                let x = field.add(field.mul(m[0], a), field.mul(m[1], b));
                let y = field.add(field.mul(m[2], a), field.mul(m[3], b));
                x * qs + y - 1
            })
            .collect();
        Permutation::from_images_unchecked(images)
    };
    // additive F_p-basis of F_q: 1, ω, ω², … is a basis since ω generates F_q
    let omega = field.primitive_element();
    let mut basis = vec![1u32];
    for _ in 1..k {
        let last = *basis.last().unwrap();
        basis.push(field.mul(last, omega));
    }
    let mut gens = Vec::new();
    for &b in &basis {
        gens.push(act([1, b, 0, 1]));
        gens.push(act([1, 0, b, 1]));
    }
    if general {
        gens.push(act([omega, 0, 0, 1]));
    }
    (points, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(Family::Symmetric(4).build().unwrap().order(), 24);
        assert_eq!(Family::Symmetric(1).build().unwrap().order(), 1);
        assert_eq!(Family::Alternating(5).build().unwrap().order(), 60);
        assert_eq!(Family::Alternating(4).build().unwrap().order(), 12);
        assert_eq!(Family::Alternating(2).build().unwrap().order(), 1);
        assert_eq!(Family::Cyclic(1).build().unwrap().order(), 1);
        assert_eq!(Family::Dihedral(4).build().unwrap().order(), 8);
        assert_eq!(Family::Dihedral(2).build().unwrap().order(), 4);
        assert_eq!(Family::Dihedral(1).build().unwrap().order(), 2);
        assert_eq!(
            Family::Preset(Preset::Quaternion).build().unwrap().order(),
            8
        );
        assert_eq!(Family::Preset(Preset::Klein).build().unwrap().order(), 4);
    }

    #[test]
    fn linear_group_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let sl = Family::Sl2(q).build().unwrap();
            assert_eq!(sl.order(), (q * (q * q - 1)) as u128, "SL2({})", q);
            assert_eq!(sl.degree() as u64, q * q - 1);
        }
        for q in [2u64, 3, 4, 5] {
            let gl = Family::Gl2(q).build().unwrap();
            assert_eq!(
                gl.order(),
                ((q - 1) * q * (q * q - 1)) as u128,
                "GL2({})",
                q
            );
        }
    }

    #[test]
    fn quaternion_is_nonabelian_with_unique_involution() {
        let g = Family::Preset(Preset::Quaternion).build().unwrap();
        assert!(!g.is_abelian());
        let table = g.table().unwrap();
        let involutions = (0..table.len() as u32)
            .filter(|&x| table.element_order(x) == 2)
            .count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn errors() {
        assert_eq!(Family::Sl2(6).build().unwrap_err(), Error::NotPrimePower(6));
        assert!(matches!(
            Family::Symmetric(8).build(),
            Err(Error::CapExceeded {
                order: 40320,
                cap: 10_000
            })
        ));
        assert!(Family::Symmetric(8).build_with_cap(50_000).is_ok());
    }

    #[test]
    fn parse_names() {
        assert_eq!("S4".parse::<Family>().unwrap(), Family::Symmetric(4));
        assert_eq!("SL2(3)".parse::<Family>().unwrap(), Family::Sl2(3));
        assert_eq!("gl2:3".parse::<Family>().unwrap(), Family::Gl2(3));
        assert_eq!(
            "q8".parse::<Family>().unwrap(),
            Family::Preset(Preset::Quaternion)
        );
        assert_eq!("dihedral:5".parse::<Family>().unwrap(), Family::Dihedral(5));
        assert!("X4".parse::<Family>().is_err());
        assert!("".parse::<Family>().is_err());
        assert_eq!("SL2 3".parse::<Family>().unwrap(), Family::Sl2(3));
        assert_eq!("cyclic 1".parse::<Family>().unwrap(), Family::Cyclic(1));
        for f in [Family::Alternating(7), Family::Gl2(4), Family::Cyclic(12)] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn galois_field_axioms() {
        for q in [4u64, 8, 9] {
            let f = GaloisField::new(q).unwrap();
            for a in 1..q as u32 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q as u32 {
                    for c in 0..q as u32 {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
