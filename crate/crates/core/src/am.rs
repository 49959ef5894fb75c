//! The almost-monomial decision procedure and the monomiality check.
//!
//! For every subgroup class `H` and linear character `λ` of `H`, the
//! constituents of `Ind_H^G λ` cover each ordered pair `(j, k)` with `χⱼ`
//! inside and `χₖ` outside. `G` is almost monomial when every pair of
//! distinct irreducibles is covered.

use rayon::prelude::*;

use crate::charops::{constituents, induce, InducedCharacter};
use crate::chartab::CharacterTable;
use crate::error::Result;
use crate::group::PermGroup;
use crate::subgroups::{linear_characters, subgroup_classes, LinearCharacter, SubgroupClass};

/// A `(subgroup class, linear character)` pair, both as indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub subgroup_class: usize,
    pub character: usize,
}

/// Everything the scan needs about one group, computed once.
#[derive(Clone, Debug)]
pub struct Census {
    pub group: PermGroup,
    pub chars: CharacterTable,
    pub classes: Vec<SubgroupClass>,
    pub linear: Vec<Vec<LinearCharacter>>,
}

impl Census {
    pub fn compute(group: &PermGroup) -> Result<Self> {
        let table = group.table()?;
        let chars = CharacterTable::compute(group)?;
        let classes = subgroup_classes(group)?;
        let linear = classes
            .iter()
            .map(|c| linear_characters(table, &c.representative))
            .collect();
        Ok(Census {
            group: group.clone(),
            chars,
            classes,
            linear,
        })
    }

    pub fn r(&self) -> usize {
        self.chars.len()
    }

    /// All pairs in scan order: classes by index, then characters by index.
    pub fn pairs(&self) -> Vec<Witness> {
        self.linear
            .iter()
            .enumerate()
            .flat_map(|(c, chars)| {
                (0..chars.len()).map(move |k| Witness {
                    subgroup_class: c,
                    character: k,
                })
            })
            .collect()
    }

    /// `Ind_H^G λ` for one pair.
    pub fn induced(&self, w: Witness) -> Result<InducedCharacter> {
        let table = self.group.table()?;
        let h = &self.classes[w.subgroup_class].representative;
        Ok(InducedCharacter {
            function: induce(table, h, &self.linear[w.subgroup_class][w.character])?,
            subgroup_class: w.subgroup_class,
            character: w.character,
        })
    }

    /// Constituent multiplicities of `Ind λ` for one pair.
    pub fn multiplicities(&self, w: Witness) -> Result<Vec<u64>> {
        constituents(&self.induced(w)?.function, &self.chars)
    }

    /// Multiplicity vectors of every pair, in scan order.
    pub fn all_multiplicities(&self) -> Result<Vec<(Witness, Vec<u64>)>> {
        self.pairs()
            .into_par_iter()
            .map(|w| Ok((w, self.multiplicities(w)?)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageMatrix {
    r: usize,
    covered: Vec<bool>,
    witnesses: Vec<Option<Witness>>,
}

impl CoverageMatrix {
    fn new(r: usize) -> Self {
        let mut covered = vec![false; r * r];
        for j in 0..r {
            covered[j * r + j] = true;
        }
        CoverageMatrix {
            r,
            covered,
            witnesses: vec![None; r * r],
        }
    }

    /// Records the pairs covered by a multiplicity vector; returns whether anything changed.
    fn absorb(&mut self, w: Witness, mult: &[u64]) -> bool {
        let mut changed = false;
        for j in (0..self.r).filter(|&j| mult[j] > 0) {
            for k in (0..self.r).filter(|&k| mult[k] == 0) {
                let cell = j * self.r + k;
                if !self.covered[cell] {
                    self.covered[cell] = true;
                    self.witnesses[cell] = Some(w);
                    changed = true;
                }
            }
        }
        changed
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, j: usize, k: usize) -> bool {
        self.covered[j * self.r + k]
    }

    /// The first pair that covers `(j, k)`; `None` on the diagonal or when uncovered.
    pub fn witness(&self, j: usize, k: usize) -> Option<Witness> {
        self.witnesses[j * self.r + k]
    }

    pub fn is_complete(&self) -> bool {
        self.covered.iter().all(|&b| b)
    }

    pub fn failing_pairs(&self) -> Vec<(usize, usize)> {
        let r = self.r;
        (0..r * r)
            .filter(|&c| !self.covered[c])
            .map(|c| (c / r, c % r))
            .collect()
    }

    /// Off-diagonal witnesses in row-major order.
    pub fn witness_list(&self) -> Vec<((usize, usize), Witness)> {
        let r = self.r;
        (0..r * r)
            .filter_map(|c| self.witnesses[c].map(|w| ((c / r, c % r), w)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmVerdict {
    pub almost_monomial: bool,
    pub monomial: bool,
    pub matrix: CoverageMatrix,
    pub failing_pairs: Vec<(usize, usize)>,
    /// For each irreducible, a pair inducing it exactly, if any.
    pub monomial_witnesses: Vec<Option<Witness>>,
}

/// Scan mode. `fast` stops covering as soon as the matrix is complete.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanOptions {
    pub fast: bool,
}

/// Builds the coverage matrix by scanning every pair.
pub fn coverage_matrix(census: &Census) -> Result<CoverageMatrix> {
    let mut m = CoverageMatrix::new(census.r());
    for (w, mult) in census.all_multiplicities()? {
        m.absorb(w, &mult);
    }
    Ok(m)
}

/// Decides almost monomiality and monomiality together.
pub fn analyze(census: &Census, options: ScanOptions) -> Result<AmVerdict> {
    let r = census.r();
    let mut matrix = CoverageMatrix::new(r);
    let mut candidates = vec![None; r];
    let mut consider = |w: Witness, mult: &[u64], matrix: &mut CoverageMatrix| {
        matrix.absorb(w, mult);
        let ones: Vec<usize> = (0..r).filter(|&i| mult[i] > 0).collect();
        if ones.len() == 1 && mult[ones[0]] == 1 && candidates[ones[0]].is_none() {
            candidates[ones[0]] = Some(w);
        }
    };
    if options.fast {
        // sequential scan in witness order, so witnesses match the full scan
        let degrees = census.chars.degrees().to_vec();
        let order = census.group.order() as u64;
        let mut pending_monomial = vec![true; r];
        for w in census.pairs() {
            let index = order / census.classes[w.subgroup_class].order;
            let wanted = (0..r).any(|i| pending_monomial[i] && degrees[i] == index);
            if matrix.is_complete() && !wanted {
                continue;
            }
            let mult = census.multiplicities(w)?;
            consider(w, &mult, &mut matrix);
            for i in 0..r {
                if mult[i] == 1 && mult.iter().sum::<u64>() == 1 {
                    pending_monomial[i] = false;
                }
            }
        }
    } else {
        for (w, mult) in census.all_multiplicities()? {
            consider(w, &mult, &mut matrix);
        }
    }
    // multiplicity vector eᵢ means Ind λ = χᵢ; confirm as class functions
    let mut monomial_witnesses = vec![None; r];
    for (i, cand) in candidates.into_iter().enumerate() {
        if let Some(w) = cand {
            if &census.induced(w)?.function == census.chars.character(i) {
                monomial_witnesses[i] = Some(w);
            }
        }
    }
    let failing_pairs = matrix.failing_pairs();
    Ok(AmVerdict {
        almost_monomial: failing_pairs.is_empty(),
        monomial: monomial_witnesses.iter().all(Option::is_some),
        matrix,
        failing_pairs,
        monomial_witnesses,
    })
}

pub fn is_almost_monomial(group: &PermGroup) -> Result<AmVerdict> {
    analyze(&Census::compute(group)?, ScanOptions::default())
}

/// True iff every irreducible equals `Ind_H^G λ` for some subgroup `H` and linear `λ`.
pub fn is_monomial(group: &PermGroup) -> Result<bool> {
    let census = Census::compute(group)?;
    let table = group.table()?;
    let order = group.order() as u64;
    'chars: for (i, chi) in census.chars.irreducibles().iter().enumerate() {
        let d = census.chars.degrees()[i];
        for (c, class) in census.classes.iter().enumerate() {
            if order / class.order != d {
                continue;
            }
            for lambda in &census.linear[c] {
                if &induce(table, &class.representative, lambda)? == chi {
                    continue 'chars;
                }
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Re-derives every recorded witness from freshly induced characters.
pub fn verify_witnesses(census: &Census, matrix: &CoverageMatrix) -> Result<bool> {
    for ((j, k), w) in matrix.witness_list() {
        let ind = census.induced(w)?.function;
        let inside = ind.inner_product(census.chars.character(j))?;
        let outside = ind.inner_product(census.chars.character(k))?;
        if inside.is_zero() || !outside.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
