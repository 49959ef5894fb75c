//! Induction from linear characters, restriction and constituent extraction.

use num_rational::Ratio;

use crate::chartab::{CharacterTable, ClassFunction};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::ElementTable;
use crate::subgroups::{LinearCharacter, Subgroup};

fn check_subgroup(table: &ElementTable, sub: &Subgroup) -> Result<()> {
    if sub.bits().len() != table.len() {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

fn check_linear(table: &ElementTable, sub: &Subgroup, lambda: &LinearCharacter) -> Result<()> {
    check_subgroup(table, sub)?;
    if lambda.conductor() != table.exponent() {
        return Err(Error::GroupMismatch);
    }
    if lambda.exponents().len() != sub.elements().len() {
        return Err(Error::LengthMismatch {
            expected: sub.elements().len(),
            got: lambda.exponents().len(),
        });
    }
    Ok(())
}

/// `Ind_H^G λ`.
///
/// Evaluated by class sums: the value at a class `c` is
/// `|G| / (|H| |c|) · Σ_{h ∈ H ∩ c} λ(h)`.
pub fn induce(
    table: &ElementTable,
    sub: &Subgroup,
    lambda: &LinearCharacter,
) -> Result<ClassFunction> {
    check_linear(table, sub, lambda)?;
    let space = table.class_space();
    let e = table.exponent() as usize;
    let mut counts = vec![vec![0i64; e]; space.class_count()];
    for (&h, &k) in sub.elements().iter().zip(lambda.exponents()) {
        counts[table.class_of(h)][k as usize] += 1;
    }
    let g = space.group_order as i128;
    let h = sub.order() as i128;
    let values = counts
        .iter()
        .zip(&space.sizes)
        .map(|(row, &size)| {
            Cyclotomic::from_exponent_counts(&space.field, row)
                .scale(Ratio::new(g, h * size as i128))
        })
        .collect();
    ClassFunction::new(space, values)
}

/// An induced character together with the pair it came from.
#[derive(Clone, Debug)]
pub struct InducedCharacter {
    pub function: ClassFunction,
    /// Index into the subgroup class list.
    pub subgroup_class: usize,
    /// Index into that class's linear characters.
    pub character: usize,
}

impl InducedCharacter {
    pub fn degree(&self) -> u64 {
        self.function.degree().as_integer().unwrap_or(0) as u64
    }
}

/// A function on the elements of a subgroup, aligned with `Subgroup::elements`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFunction {
    values: Vec<Cyclotomic>,
}

impl SubgroupFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        SubgroupFunction { values }
    }

    pub fn from_linear(table: &ElementTable, lambda: &LinearCharacter) -> Self {
        let field = &table.class_space().field;
        SubgroupFunction {
            values: lambda
                .exponents()
                .iter()
                .map(|&k| Cyclotomic::root_of_unity(field, k as u64))
                .collect(),
        }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// `(1/|H|) Σ_h f(h) conj(g(h))`.
    pub fn inner_product(&self, other: &SubgroupFunction) -> Result<Cyclotomic> {
        if self.values.len() != other.values.len() {
            return Err(Error::LengthMismatch {
                expected: self.values.len(),
                got: other.values.len(),
            });
        }
        let field = self.values[0].field().clone();
        let mut acc = Cyclotomic::zero(&field);
        for (a, b) in self.values.iter().zip(&other.values) {
            acc = &acc + &(a * &b.conj());
        }
        Ok(acc.scale(Ratio::new(1, self.values.len() as i128)))
    }
}

/// `Res_H χ`.
pub fn restrict(
    table: &ElementTable,
    chi: &ClassFunction,
    sub: &Subgroup,
) -> Result<SubgroupFunction> {
    check_subgroup(table, sub)?;
    if chi.space().group_id != table.class_space().group_id {
        return Err(Error::GroupMismatch);
    }
    Ok(SubgroupFunction {
        values: sub
            .elements()
            .iter()
            .map(|&h| chi.values()[table.class_of(h)].clone())
            .collect(),
    })
}

/// Multiplicities `⟨f, χᵢ⟩` of every irreducible, which must be nonnegative integers.
pub fn constituents(f: &ClassFunction, chars: &CharacterTable) -> Result<Vec<u64>> {
    chars
        .irreducibles()
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let m = f.inner_product(chi)?;
            match m.as_integer() {
                Some(k) if k >= 0 => Ok(k as u64),
                _ => Err(Error::NotACharacter(format!(
                    "multiplicity of irreducible {i} is {m}"
                ))),
            }
        })
        .collect()
}
