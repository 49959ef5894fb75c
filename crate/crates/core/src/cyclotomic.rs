//! Exact arithmetic in the cyclotomic field Q(ζ_e).
//!
//! Elements are kept in the power basis `1, ζ, …, ζ^{φ(e)-1}`, reduced modulo
//! the e-th cyclotomic polynomial, with rational coefficients stored as an
//! integer numerator vector over one positive common denominator. Two
//! elements of the same field are equal iff their reduced forms are equal.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Ratio;

/// The field Q(ζ_e) together with its reduction table.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    /// Φ_e has degree `phi`.
    phi: usize,
    /// `powers[k]` is ζ^k in the power basis, as sparse (position, coefficient) pairs.
    powers: Vec<Vec<(usize, i64)>>,
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<CyclotomicField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^m - 1 = Π_{d | m} Φ_d(x), solved for Φ_m over the divisors of n in increasing order
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut known: HashMap<u64, Vec<i64>> = HashMap::new();
    for &m in &divisors {
        let mut poly = vec![0i64; m as usize + 1];
        poly[0] = -1;
        poly[m as usize] = 1;
        for &d in divisors.iter().take_while(|&&d| d < m) {
            if m % d == 0 {
                poly = exact_divide(&poly, &known[&d]);
            }
        }
        known.insert(m, poly);
    }
    known.remove(&n).unwrap()
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    debug_assert_eq!(lead.abs(), 1);
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn] / lead;
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

impl CyclotomicField {
    /// The shared field of conductor `conductor`.
    pub fn new(conductor: u64) -> Arc<CyclotomicField> {
        assert!(conductor >= 1, "conductor must be positive");
        let mut cache = field_cache().lock().unwrap();
        cache
            .entry(conductor)
            .or_insert_with(|| Arc::new(Self::build(conductor)))
            .clone()
    }

    fn build(conductor: u64) -> Self {
        let phi_poly = cyclotomic_polynomial(conductor);
        let phi = phi_poly.len() - 1;
        let e = conductor as usize;
        let mut dense: Vec<Vec<i64>> = Vec::with_capacity(e.max(phi));
        for k in 0..phi.min(e) {
            let mut v = vec![0i64; phi];
            v[k] = 1;
            dense.push(v);
        }
        while dense.len() < e {
            // multiply the previous power by ζ and fold ζ^phi back
            let prev = dense.last().unwrap();
            let mut v = vec![0i64; phi];
            let top = prev[phi - 1];
            for j in (1..phi).rev() {
                v[j] = prev[j - 1];
            }
            for j in 0..phi {
                v[j] -= top * phi_poly[j];
            }
            dense.push(v);
        }
        dense.truncate(e);
        let powers = dense
            .into_iter()
            .map(|v| v.into_iter().enumerate().filter(|&(_, c)| c != 0).collect())
            .collect();
        CyclotomicField {
            conductor,
            phi,
            powers,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi
    }
}

/// An element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    num: Vec<i128>,
    den: i128,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            num: vec![0; field.phi],
            den: 1,
        }
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, n: i64) -> Self {
        let mut z = Self::zero(field);
        z.num[0] = n as i128;
        z
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: Ratio<i128>) -> Self {
        let mut z = Self::zero(field);
        z.num[0] = *q.numer();
        z.den = *q.denom();
        z.normalize();
        z
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, 1)
    }

    /// ζ_e^k.
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: u64) -> Self {
        let mut counts = vec![0i64; field.conductor as usize];
        counts[(k % field.conductor) as usize] = 1;
        Self::from_exponent_counts(field, &counts)
    }

    /// Σ_k counts[k] ζ_e^k, for `counts` of length e.
    pub fn from_exponent_counts(field: &Arc<CyclotomicField>, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), field.conductor as usize);
        let mut num = vec![0i128; field.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(j, r) in &field.powers[k] {
                num[j] += c as i128 * r as i128;
            }
        }
        Cyclotomic {
            field: field.clone(),
            num,
            den: 1,
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    /// Power-basis coefficients as exact rationals.
    pub fn coefficients(&self) -> Vec<Ratio<i128>> {
        self.num.iter().map(|&n| Ratio::new(n, self.den)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&n| n == 0)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<Ratio<i128>> {
        if self.num[1..].iter().any(|&n| n != 0) {
            return None;
        }
        Some(Ratio::new(self.num[0], self.den))
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i128> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    fn normalize(&mut self) {
        let mut g = self.den;
        for &n in &self.num {
            if g == 1 {
                break;
            }
            g = g.gcd(&n);
        }
        if self.den < 0 {
            g = -g.abs();
        }
        if g != 1 && g != 0 {
            for n in &mut self.num {
                *n /= g;
            }
            self.den /= g;
        }
    }

    fn same_field(&self, other: &Cyclotomic) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "cyclotomic values from different fields"
        );
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, q: Ratio<i128>) -> Self {
        let mut out = Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|&n| n * q.numer()).collect(),
            den: self.den * q.denom(),
        };
        out.normalize();
        out
    }

    /// Applies the Galois automorphism ζ ↦ ζ^j, for j coprime to the conductor.
    pub fn galois(&self, j: u64) -> Self {
        let e = self.field.conductor;
        debug_assert_eq!(j.gcd(&e), 1);
        let mut num = vec![0i128; self.field.phi];
        for (k, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let target = (k as u64 * j) % e;
            for &(pos, r) in &self.field.powers[target as usize] {
                num[pos] += c * r as i128;
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            num,
            den: self.den,
        }
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let e = self.field.conductor;
        self.galois(e - 1 + if e == 1 { 1 } else { 0 })
    }

    /// Numerical value, for display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.field.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.num.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / e;
            re += c as f64 * angle.cos();
            im += c as f64 * angle.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor
            && self.den == other.den
            && self.num == other.num
    }
}

impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Ord for Cyclotomic {
    /// Lexicographic on power-basis coefficients.
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor
            .cmp(&other.field.conductor)
            .then_with(|| {
                for (a, b) in self.num.iter().zip(&other.num) {
                    let ord = (a * other.den).cmp(&(b * self.den));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_field(rhs);
        let (num, den) = if self.den == rhs.den {
            (
                self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect(),
                self.den,
            )
        } else {
            let l = self.den.lcm(&rhs.den);
            let (fa, fb) = (l / self.den, l / rhs.den);
            (
                self.num
                    .iter()
                    .zip(&rhs.num)
                    .map(|(a, b)| a * fa + b * fb)
                    .collect(),
                l,
            )
        };
        let mut out = Cyclotomic {
            field: self.field.clone(),
            num,
            den,
        };
        out.normalize();
        out
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|a| -a).collect(),
            den: self.den,
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.same_field(rhs);
        let field = &self.field;
        let e = field.conductor as usize;
        let mut raw = vec![0i128; e];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.num.iter().enumerate() {
                if b != 0 {
                    raw[(i + j) % e] += a * b;
                }
            }
        }
        let mut num = vec![0i128; field.phi];
        for (k, &c) in raw.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(pos, r) in &field.powers[k] {
                num[pos] += c * r as i128;
            }
        }
        let mut out = Cyclotomic {
            field: field.clone(),
            num,
            den: self.den * rhs.den,
        };
        out.normalize();
        out
    }
}

impl fmt::Display for Cyclotomic {
    /// Renders as a polynomial in `z = exp(2πi/e)`, e.g. `-z^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (k, q) in self.coefficients().into_iter().enumerate() {
            if *q.numer() == 0 {
                continue;
            }
            let negative = *q.numer() < 0;
            let abs = if negative { -q } else { q };
            let coef = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            let body = match (k, coef.as_str()) {
                (0, c) => c.to_string(),
                (1, "1") => "z".to_string(),
                (1, c) => format!("{}*z", c),
                (k, "1") => format!("z^{}", k),
                (k, c) => format!("{}*z^{}", c, k),
            };
            terms.push((negative, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.reverse();
        for (i, (negative, body)) in terms.iter().enumerate() {
            match (i, negative) {
                (0, true) => write!(f, "-{}", body)?,
                (0, false) => write!(f, "{}", body)?,
                (_, true) => write!(f, " - {}", body)?,
                (_, false) => write!(f, " + {}", body)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[e={}]({})", self.field.conductor, self)
    }
}
