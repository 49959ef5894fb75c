//! Orders of vanishing at a single point, constrained by induced characters.
//!
//! Each irreducible `χᵢ` gets an integer order `nᵢ` (negative for a pole).
//! A character `Σ dᵢ χᵢ` induced from a linear character has a holomorphic
//! L-function, so `Σ dᵢ nᵢ ≥ 0`. The induction from the trivial subgroup gives
//! the degree row, the factorization of the Dedekind zeta function.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::am::{Census, Witness};
use crate::error::{Error, Result};

pub const DEFAULT_BOUND: i64 = 3;
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Orders of vanishing, one per irreducible.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderVector(pub Vec<i64>);

impl OrderVector {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn has_pole(&self) -> bool {
        self.0.iter().any(|&x| x < 0)
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&x| x > 0).count()
    }
}

/// Distinct multiplicity vectors of all induced-from-linear characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    r: usize,
    rows: Vec<Vec<u64>>,
    /// First pair producing each row, when built from a group.
    sources: Vec<Option<Witness>>,
    degree_row: usize,
}

impl ConstraintSystem {
    /// Builds a system from raw rows; the degree row must be among them.
    pub fn from_rows(r: usize, rows: Vec<Vec<u64>>, degrees: &[u64]) -> Result<Self> {
        let mut dedup: Vec<Vec<u64>> = Vec::new();
        for row in rows {
            if row.len() != r {
                return Err(Error::LengthMismatch {
                    expected: r,
                    got: row.len(),
                });
            }
            if !dedup.contains(&row) {
                dedup.push(row);
            }
        }
        let degree_row = dedup
            .iter()
            .position(|row| row == degrees)
            .ok_or_else(|| Error::BadParameter("degree row missing".into()))?;
        let sources = vec![None; dedup.len()];
        Ok(ConstraintSystem {
            r,
            rows: dedup,
            sources,
            degree_row,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn sources(&self) -> &[Option<Witness>] {
        &self.sources
    }

    pub fn degree_row(&self) -> &[u64] {
        &self.rows[self.degree_row]
    }

    pub fn degree_row_index(&self) -> usize {
        self.degree_row
    }
}

/// One row per distinct `⟨Ind_H^G λ, χᵢ⟩` vector, in first-seen scan order.
pub fn build_constraints(census: &Census) -> Result<ConstraintSystem> {
    let r = census.r();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut sources = Vec::new();
    for (w, mult) in census.all_multiplicities()? {
        if !rows.contains(&mult) {
            rows.push(mult);
            sources.push(Some(w));
        }
    }
    let degrees = census.chars.degrees();
    let degree_row = rows
        .iter()
        .position(|row| row == degrees)
        .ok_or_else(|| Error::BadParameter("degree row missing".into()))?;
    Ok(ConstraintSystem {
        r,
        rows,
        sources,
        degree_row,
    })
}

fn check_len(n: &OrderVector, c: &ConstraintSystem) -> Result<()> {
    if n.0.len() != c.r {
        return Err(Error::LengthMismatch {
            expected: c.r,
            got: n.0.len(),
        });
    }
    Ok(())
}

/// True iff every row `d` has `Σ dᵢ nᵢ ≥ 0`.
pub fn pattern_holomorphic(n: &OrderVector, c: &ConstraintSystem) -> Result<bool> {
    check_len(n, c)?;
    Ok(c.rows.iter().all(|row| {
        row.iter()
            .zip(&n.0)
            .map(|(&d, &x)| d as i64 * x)
            .sum::<i64>()
            >= 0
    }))
}

/// Search outcome with the number of visited nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub found: Option<OrderVector>,
    pub nodes: u64,
}

/// Depth-first search over `[-B, B]^r` in lexicographic order for vectors
/// that satisfy every row, have a negative entry and at most `max_zeros`
/// positive entries.
struct Search<'a> {
    c: &'a ConstraintSystem,
    bound: i64,
    max_zeros: usize,
    budget: u64,
    spent: &'a AtomicU64,
}

struct State {
    n: Vec<i64>,
    sums: Vec<i64>,
    zeros: usize,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn tick(&self, st: &mut State) -> Result<()> {
        st.nodes += 1;
        if self.spent.fetch_add(1, Ordering::Relaxed) + 1 > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Whether the partial assignment of the first `k` entries can still extend.
    fn feasible(&self, st: &State, k: usize) -> bool {
        let b = self.bound;
        let rows = &self.c.rows;
        match self.max_zeros - st.zeros {
            0 => st.sums.iter().all(|&s| s >= 0),
            1 => {
                // one positive entry at most, in the same place for every row
                st.sums.iter().all(|&s| s >= 0)
                    || (k..self.c.r).any(|q| {
                        rows.iter()
                            .zip(&st.sums)
                            .all(|(row, &s)| s + b * row[q] as i64 >= 0)
                    })
            }
            left => rows.iter().zip(&st.sums).all(|(row, &s)| {
                let mut rest: Vec<i64> = row[k..].iter().map(|&d| d as i64).collect();
                rest.sort_unstable_by(|x, y| y.cmp(x));
                s + b * rest.iter().take(left).sum::<i64>() >= 0
            }),
        }
    }

    fn descend(
        &self,
        st: &mut State,
        k: usize,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> Result<bool> {
        self.tick(st)?;
        if !self.feasible(st, k) {
            return Ok(false);
        }
        if k == self.c.r {
            if st.n.iter().any(|&x| x < 0) {
                return Ok(visit(&st.n));
            }
            return Ok(false);
        }
        for v in -self.bound..=self.bound {
            if v > 0 && st.zeros == self.max_zeros {
                break;
            }
            if self.assign(st, k, v, visit)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn assign(
        &self,
        st: &mut State,
        k: usize,
        v: i64,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> Result<bool> {
        st.n[k] = v;
        for (s, row) in st.sums.iter_mut().zip(&self.c.rows) {
            *s += row[k] as i64 * v;
        }
        st.zeros += usize::from(v > 0);
        let stop = self.descend(st, k + 1, visit);
        st.zeros -= usize::from(v > 0);
        for (s, row) in st.sums.iter_mut().zip(&self.c.rows) {
            *s -= row[k] as i64 * v;
        }
        st.n[k] = 0;
        stop
    }

    fn state(&self) -> State {
        State {
            n: vec![0; self.c.r],
            sums: vec![0; self.c.rows.len()],
            zeros: 0,
            nodes: 0,
        }
    }
}

fn check_bound(bound: i64) -> Result<()> {
    if bound < 1 {
        return Err(Error::OutOfRange {
            what: "bound",
            value: bound,
            lo: 1,
            hi: i64::MAX,
        });
    }
    Ok(())
}

/// First vector (lexicographically) in `[-B, B]^r` with a pole, at most one zero,
/// and every row satisfied. For an almost monomial group there is none.
pub fn theorem1_search(c: &ConstraintSystem, bound: i64, budget: u64) -> Result<SearchReport> {
    check_bound(bound)?;
    let spent = AtomicU64::new(0);
    let search = Search {
        c,
        bound,
        max_zeros: 1,
        budget,
        spent: &spent,
    };
    if c.r == 0 {
        return Ok(SearchReport {
            found: None,
            nodes: 0,
        });
    }
    // one worker per value of the first entry; the smallest hit wins
    let branches: Vec<Result<(Option<Vec<i64>>, u64)>> = (-bound..=bound)
        .into_par_iter()
        .map(|v| {
            let mut st = search.state();
            let mut hit = None;
            search.assign(&mut st, 0, v, &mut |n| {
                hit = Some(n.to_vec());
                true
            })?;
            Ok((hit, st.nodes))
        })
        .collect();
    let mut found = None;
    let mut nodes = 0;
    for b in branches {
        let (hit, n) = b?;
        nodes += n;
        if found.is_none() {
            found = hit;
        }
    }
    Ok(SearchReport {
        found: found.map(OrderVector),
        nodes,
    })
}

/// True iff every vector in `[-B, B]^r` with a pole that satisfies every row
/// has at least two positive entries, i.e. no violating vector exists.
pub fn corollary2_check(c: &ConstraintSystem, bound: i64, budget: u64) -> Result<bool> {
    check_bound(bound)?;
    let spent = AtomicU64::new(0);
    let search = Search {
        c,
        bound,
        max_zeros: 1,
        budget,
        spent: &spent,
    };
    let mut st = search.state();
    let mut violation = false;
    search.descend(&mut st, 0, &mut |n| {
        violation = n.iter().filter(|&&x| x > 0).count() < 2;
        violation
    })?;
    Ok(!violation)
}

/// Every vector in `[-B, B]^r` with a pole, at most `max_zeros` positive entries,
/// and every row satisfied.
pub fn satisfying_vectors(
    c: &ConstraintSystem,
    bound: i64,
    max_zeros: usize,
    budget: u64,
) -> Result<Vec<OrderVector>> {
    check_bound(bound)?;
    let spent = AtomicU64::new(0);
    let search = Search {
        c,
        bound,
        max_zeros: max_zeros.min(c.r),
        budget,
        spent: &spent,
    };
    let mut st = search.state();
    let mut out = Vec::new();
    search.descend(&mut st, 0, &mut |n| {
        out.push(OrderVector(n.to_vec()));
        false
    })?;
    Ok(out)
}
