//! Exact character theory for finite permutation groups.
//!
//! The crate decides whether a group is almost monomial: for every ordered pair
//! of distinct irreducible characters (χ, ψ) there must be a subgroup `H` and a
//! linear character λ of `H` such that `Ind_H^G λ` contains χ but not ψ. Along
//! the way it computes exact character tables, subgroup classes, induced
//! characters and witnesses, and it ships a combinatorial certificate for the
//! symmetric groups plus a vanishing-order model of Artin L-functions.

pub mod am;
pub mod builtin;
pub mod charops;
pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod lfun;
mod modp;
pub mod perm;
mod schreier;
pub mod subgroups;
pub mod symcert;

pub use am::{
    analyze, is_almost_monomial, is_monomial, AmVerdict, Census, CoverageMatrix, ScanOptions,
    Witness,
};
pub use builtin::{Family, Preset};
pub use charops::{constituents, induce, restrict, InducedCharacter, SubgroupFunction};
pub use chartab::{CharacterTable, ClassFunction};
pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use error::{Error, Result};
pub use group::{ConjugacyClass, ElementTable, PermGroup, DEFAULT_CAP};
pub use perm::Permutation;
pub use subgroups::{
    linear_characters, normal_subgroups, subgroup_classes, LinearCharacter, Subgroup, SubgroupClass,
};
pub use symcert::{
    certify_sn, kostka, partitions, sn_witness, Branch, Partition, SnCertificate, SnWitness,
};
