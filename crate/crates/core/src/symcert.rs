//! Certificates that `S_n` is almost monomial, from partitions and Kostka numbers.
//!
//! For distinct partitions α, β, inducing the trivial character of the Young
//! subgroup `S_α` contains `[α]` and contains `[β]` with multiplicity
//! `K_{β,α}`. Inducing the sign character of `S_{α′}` contains `[α]` and
//! contains `[β]` with multiplicity `K_{β′,α′}`. Both cannot be nonzero,
//! since that would force β ⊵ α and α ⊵ β.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Largest `n` accepted by the certifier.
pub const MAX_N: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// The transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// β ⊵ α: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.parts.len().max(other.parts.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            lo: 1,
            hi: MAX_N as i64,
        });
    }
    Ok(())
}

/// All partitions of `n` in reverse lexicographic order, starting with `(n)`.
pub fn partitions(n: usize) -> Result<Vec<Partition>> {
    check_n(n)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n as u32, n as u32, &mut current, &mut out);
    Ok(out)
}

fn fill(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        current.push(p);
        fill(rest - p, p, current, out);
        current.pop();
    }
}

fn check_sizes(beta: &Partition, alpha: &Partition) -> Result<()> {
    if beta.n() != alpha.n() {
        return Err(Error::BadParameter(format!(
            "partitions {beta} and {alpha} have different sizes"
        )));
    }
    Ok(())
}

/// Shapes `μ ⊆ β` with `β/μ` a horizontal strip of `k` cells.
fn strips_removed(beta: &[u32], k: u32, out: &mut Vec<Vec<u32>>) {
    fn go(beta: &[u32], i: usize, left: u32, mu: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == beta.len() {
            if left == 0 {
                let mut shape = mu.clone();
                while shape.last() == Some(&0) {
                    shape.pop();
                }
                out.push(shape);
            }
            return;
        }
        let floor = beta.get(i + 1).copied().unwrap_or(0);
        let most = (beta[i] - floor).min(left);
        for take in 0..=most {
            mu.push(beta[i] - take);
            go(beta, i + 1, left - take, mu, out);
            mu.pop();
        }
    }
    go(beta, 0, k, &mut Vec::with_capacity(beta.len()), out);
}

/// Kostka numbers `K_{·,α}` by peeling off the largest entries.
///
/// Reusable across shapes β for a fixed content α.
pub struct KostkaTable {
    content: Vec<u32>,
    memo: FxHashMap<(usize, Vec<u32>), u128>,
}

impl KostkaTable {
    pub fn new(alpha: &Partition) -> Self {
        KostkaTable {
            content: alpha.parts.clone(),
            memo: FxHashMap::default(),
        }
    }

    /// Number of semistandard tableaux of shape β with content α.
    pub fn count(&mut self, beta: &Partition) -> u128 {
        self.count_prefix(self.content.len(), beta.parts.clone())
    }

    /// Tableaux of shape `mu` using the first `m` content values.
    fn count_prefix(&mut self, m: usize, mu: Vec<u32>) -> u128 {
        if m == 0 {
            return u128::from(mu.is_empty());
        }
        // column lengths are bounded by the number of distinct values
        if mu.len() > m {
            return 0;
        }
        if let Some(&v) = self.memo.get(&(m, mu.clone())) {
            return v;
        }
        let mut inner = Vec::new();
        strips_removed(&mu, self.content[m - 1], &mut inner);
        let total = inner
            .into_iter()
            .map(|nu| self.count_prefix(m - 1, nu))
            .sum();
        self.memo.insert((m, mu), total);
        total
    }
}

/// `K_{β,α}`.
pub fn kostka(beta: &Partition, alpha: &Partition) -> Result<u128> {
    check_sizes(beta, alpha)?;
    Ok(KostkaTable::new(alpha).count(beta))
}

/// `K_{β,α}` for every β at once, by adding horizontal strips of sizes α₁, α₂, …
/// to the empty shape and counting the ways each shape is reached.
pub fn kostka_by_growth(alpha: &Partition) -> FxHashMap<Partition, u128> {
    let mut layer: FxHashMap<Vec<u32>, u128> = FxHashMap::default();
    layer.insert(Vec::new(), 1);
    for &k in &alpha.parts {
        let mut next: FxHashMap<Vec<u32>, u128> = FxHashMap::default();
        for (mu, count) in layer {
            let mut grown = Vec::new();
            strips_added(&mu, k, &mut grown);
            for nu in grown {
                *next.entry(nu).or_insert(0) += count;
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .map(|(parts, c)| (Partition { parts }, c))
        .collect()
}

/// Shapes `ν ⊇ μ` with `ν/μ` a horizontal strip of `k` cells.
fn strips_added(mu: &[u32], k: u32, out: &mut Vec<Vec<u32>>) {
    // row i may grow up to the old length of row i-1; one new row may start
    let mut nu = mu.to_vec();
    nu.push(0);
    fn go(mu: &[u32], i: usize, left: u32, nu: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == nu.len() {
            if left == 0 {
                let mut shape = nu.clone();
                while shape.last() == Some(&0) {
                    shape.pop();
                }
                out.push(shape);
            }
            return;
        }
        let old = mu.get(i).copied().unwrap_or(0);
        let cap = if i == 0 {
            left
        } else {
            (mu[i - 1] - old).min(left)
        };
        for add in 0..=cap {
            nu[i] = old + add;
            go(mu, i + 1, left - add, nu, out);
        }
        nu[i] = old;
    }
    go(mu, 0, k, &mut nu, out);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Trivial character of `S_α`; `K_{β,α} = 0`.
    TrivialOnYoung,
    /// Sign character of `S_{α′}`; `K_{β′,α′} = 0`.
    SignOnConjugateYoung,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::TrivialOnYoung => "trivial",
            Branch::SignOnConjugateYoung => "sign",
        })
    }
}

/// Why `[α]` is separated from `[β]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnWitness {
    pub alpha: Partition,
    pub beta: Partition,
    pub branch: Branch,
    /// `K_{β,α}`.
    pub trivial_kostka: u128,
    /// `K_{β′,α′}`, evaluated only on the sign branch.
    pub sign_kostka: Option<u128>,
}

impl SnWitness {
    /// The Kostka number that must vanish for this branch.
    pub fn vanishing_value(&self) -> u128 {
        match self.branch {
            Branch::TrivialOnYoung => self.trivial_kostka,
            Branch::SignOnConjugateYoung => self.sign_kostka.unwrap_or(u128::MAX),
        }
    }
}

pub fn sn_witness(alpha: &Partition, beta: &Partition) -> Result<SnWitness> {
    check_sizes(beta, alpha)?;
    if alpha == beta {
        return Err(Error::BadParameter(format!("{alpha} paired with itself")));
    }
    let k = kostka(beta, alpha)?;
    witness_from(alpha, beta, k, || {
        kostka(&beta.conjugate(), &alpha.conjugate())
    })
}

fn witness_from(
    alpha: &Partition,
    beta: &Partition,
    trivial_kostka: u128,
    sign: impl FnOnce() -> Result<u128>,
) -> Result<SnWitness> {
    if trivial_kostka == 0 {
        return Ok(SnWitness {
            alpha: alpha.clone(),
            beta: beta.clone(),
            branch: Branch::TrivialOnYoung,
            trivial_kostka,
            sign_kostka: None,
        });
    }
    let s = sign()?;
    if s != 0 {
        return Err(Error::BadParameter(format!(
            "no vanishing Kostka number for ({alpha}, {beta})"
        )));
    }
    Ok(SnWitness {
        alpha: alpha.clone(),
        beta: beta.clone(),
        branch: Branch::SignOnConjugateYoung,
        trivial_kostka,
        sign_kostka: Some(s),
    })
}

/// One certified ordered pair, by index into the certificate's partition list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertEntry {
    pub alpha: u32,
    pub beta: u32,
    pub branch: Branch,
    pub trivial_kostka: u128,
}

#[derive(Clone, Debug)]
pub struct SnCertificate {
    pub n: usize,
    pub partitions: Vec<Partition>,
    /// Ordered pairs (α, β), α ≠ β, with α outer and β inner in partition order.
    pub entries: Vec<CertEntry>,
}

impl SnCertificate {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn branch_counts(&self) -> (usize, usize) {
        let trivial = self
            .entries
            .iter()
            .filter(|e| e.branch == Branch::TrivialOnYoung)
            .count();
        (trivial, self.entries.len() - trivial)
    }

    pub fn witness(&self, i: usize) -> SnWitness {
        let e = self.entries[i];
        let alpha = self.partitions[e.alpha as usize].clone();
        let beta = self.partitions[e.beta as usize].clone();
        SnWitness {
            sign_kostka: (e.branch == Branch::SignOnConjugateYoung).then_some(0),
            alpha,
            beta,
            branch: e.branch,
            trivial_kostka: e.trivial_kostka,
        }
    }

    /// Re-checks every entry with the growth recursion and the dominance order.
    pub fn verify(&self) -> Result<()> {
        let p = self.partitions.len();
        if self.entries.len() != p * (p - 1) {
            return Err(Error::BadParameter(format!(
                "{} entries for {} partitions",
                self.entries.len(),
                p
            )));
        }
        let index: FxHashMap<&Partition, usize> = self
            .partitions
            .iter()
            .enumerate()
            .map(|(i, q)| (q, i))
            .collect();
        let conj: Vec<usize> = self
            .partitions
            .iter()
            .map(|q| index[&q.conjugate()])
            .collect();
        let growth: Vec<Vec<u128>> = self
            .partitions
            .iter()
            .map(|alpha| {
                let counts = kostka_by_growth(alpha);
                self.partitions
                    .iter()
                    .map(|beta| counts.get(beta).copied().unwrap_or(0))
                    .collect()
            })
            .collect();
        let mut seen = vec![false; p * p];
        for e in &self.entries {
            let (a, b) = (e.alpha as usize, e.beta as usize);
            if a == b || std::mem::replace(&mut seen[a * p + b], true) {
                return Err(Error::BadParameter(format!(
                    "duplicate or diagonal entry ({a}, {b})"
                )));
            }
            let (alpha, beta) = (&self.partitions[a], &self.partitions[b]);
            if growth[a][b] != e.trivial_kostka {
                return Err(Error::BadParameter(format!(
                    "K mismatch at ({alpha}, {beta})"
                )));
            }
            let vanishing = match e.branch {
                Branch::TrivialOnYoung => growth[a][b] == 0 && !beta.dominates(alpha),
                Branch::SignOnConjugateYoung => {
                    growth[conj[a]][conj[b]] == 0
                        && !self.partitions[conj[b]].dominates(&self.partitions[conj[a]])
                }
            };
            if !vanishing {
                return Err(Error::BadParameter(format!(
                    "witness for ({alpha}, {beta}) does not vanish"
                )));
            }
        }
        Ok(())
    }
}

/// Witnesses for every ordered pair of distinct partitions of `n`.
pub fn certify_sn(n: usize) -> Result<SnCertificate> {
    let parts = partitions(n)?;
    let index: FxHashMap<&Partition, usize> =
        parts.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let conj: Vec<usize> = parts.iter().map(|q| index[&q.conjugate()]).collect();
    // kostka[a][b] = K_{b,a}, one memo table per content
    let kostka: Vec<Vec<u128>> = parts
        .iter()
        .map(|alpha| {
            let mut table = KostkaTable::new(alpha);
            parts.iter().map(|beta| table.count(beta)).collect()
        })
        .collect();
    let mut entries = Vec::with_capacity(parts.len() * parts.len().saturating_sub(1));
    for a in 0..parts.len() {
        for b in 0..parts.len() {
            if a == b {
                continue;
            }
            let k = kostka[a][b];
            let w = witness_from(&parts[a], &parts[b], k, || Ok(kostka[conj[a]][conj[b]]))?;
            entries.push(CertEntry {
                alpha: a as u32,
                beta: b as u32,
                branch: w.branch,
                trivial_kostka: k,
            });
        }
    }
    Ok(SnCertificate {
        n,
        partitions: parts,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_lists() {
        let three: Vec<String> = partitions(3)
            .unwrap()
            .iter()
            .map(|q| q.to_string())
            .collect();
        assert_eq!(three, ["(3)", "(2,1)", "(1,1,1)"]);
        assert_eq!(partitions(4).unwrap().len(), 5);
        assert_eq!(partitions(10).unwrap().len(), 42);
        assert!(partitions(0).is_err());
        assert!(partitions(41).is_err());
    }

    #[test]
    fn partition_counts_match_recurrence() {
        // p(n) via the pentagonal number recurrence
        let mut pn = vec![1i64];
        for n in 1..=25i64 {
            let mut total = 0;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * pn[(n - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    total += sign * pn[(n - g2) as usize];
                }
            }
            pn.push(total);
            assert_eq!(partitions(n as usize).unwrap().len() as i64, total);
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("(5)").conjugate(), p("(1,1,1,1,1)"));
        assert_eq!(p("(2,1)").conjugate(), p("(2,1)"));
        assert_eq!(p("(3,1)").conjugate(), p("(2,1,1)"));
        for q in partitions(9).unwrap() {
            assert_eq!(q.conjugate().conjugate(), q);
        }
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!("(a)".parse::<Partition>().is_err());
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p("(2,1)"), &p("(1,1,1)")).unwrap(), 2);
        assert_eq!(kostka(&p("(1,1)"), &p("(2)")).unwrap(), 0);
        assert_eq!(kostka(&p("(3,2)"), &p("(2,2,1)")).unwrap(), 2);
        assert_eq!(kostka(&p("(3,2,1)"), &p("(1,1,1,1,1,1)")).unwrap(), 16);
        assert!(kostka(&p("(2)"), &p("(2,1)")).is_err());
        for q in partitions(8).unwrap() {
            assert_eq!(kostka(&q, &q).unwrap(), 1);
        }
    }

    #[test]
    fn both_routes_agree_and_respect_dominance() {
        for n in 1..=8 {
            let parts = partitions(n).unwrap();
            for alpha in &parts {
                let grown = kostka_by_growth(alpha);
                let mut table = KostkaTable::new(alpha);
                for beta in &parts {
                    let k = table.count(beta);
                    assert_eq!(grown.get(beta).copied().unwrap_or(0), k);
                    assert_eq!(k > 0, beta.dominates(alpha), "{beta} {alpha}");
                    assert_eq!(
                        beta.dominates(alpha),
                        alpha.conjugate().dominates(&beta.conjugate())
                    );
                }
            }
        }
    }

    #[test]
    fn standard_tableaux_sum_to_factorial() {
        // Σ_β K_{β,1ⁿ}² = n!
        let ones = Partition::new(vec![1; 7]).unwrap();
        let total: u128 = kostka_by_growth(&ones).values().map(|k| k * k).sum();
        assert_eq!(total, 5040);
    }

    #[test]
    fn witness_examples() {
        let w = sn_witness(&p("(2,1)"), &p("(3)")).unwrap();
        assert_eq!(w.branch, Branch::SignOnConjugateYoung);
        assert_eq!(w.trivial_kostka, 1);
        assert_eq!(w.sign_kostka, Some(0));
        for beta in partitions(5).unwrap().into_iter().skip(1) {
            let w = sn_witness(&p("(5)"), &beta).unwrap();
            assert_eq!(w.branch, Branch::TrivialOnYoung);
            if beta != p("(1,1,1,1,1)") {
                let w = sn_witness(&p("(1,1,1,1,1)"), &beta).unwrap();
                assert_eq!(w.branch, Branch::SignOnConjugateYoung);
                assert_eq!(w.vanishing_value(), 0);
            }
        }
        assert!(sn_witness(&p("(2,1)"), &p("(2,1)")).is_err());
    }

    #[test]
    fn certificates() {
        assert!(certify_sn(1).unwrap().is_empty());
        let c3 = certify_sn(3).unwrap();
        assert_eq!(c3.len(), 6);
        c3.verify().unwrap();
        let c12 = certify_sn(12).unwrap();
        assert_eq!(c12.partitions.len(), 77);
        assert_eq!(c12.len(), 5852);
        c12.verify().unwrap();
        for i in (0..c12.len()).step_by(97) {
            let w = c12.witness(i);
            assert_eq!(sn_witness(&w.alpha, &w.beta).unwrap(), w);
        }
    }

    #[test]
    fn corrupted_certificate_is_rejected() {
        let mut c = certify_sn(5).unwrap();
        let i = c
            .entries
            .iter()
            .position(|e| e.branch == Branch::SignOnConjugateYoung)
            .unwrap();
        c.entries[i].branch = Branch::TrivialOnYoung;
        assert!(c.verify().is_err());
    }
}
