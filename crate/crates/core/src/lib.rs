//! Finite binary relations and the Tukey morphisms between them.
//!
//! A relation is a 0/1 matrix whose rows form the minus side and whose
//! columns form the plus side. The crate computes dominating numbers, reduces
//! relations to skeletons, decides morphism existence with witnesses, builds
//! the standard block constructions and classifies all small relations.

pub mod bits;
pub mod canon;
pub mod census;
pub mod cli;
pub mod construct;
pub mod error;
pub mod invariants;
pub mod morphism;
pub mod relation;
pub mod skeleton;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use invariants::{dominating_number, dual_dominating_number, is_ladder, min_dominating_family, Delta, DominatingFamily};
pub use morphism::{check_morphism, exists_morphism, find_morphism, MorphismWitness, SolverConfig};
pub use relation::{Relation, Side};
pub use skeleton::{is_skeletal, skeleton, SkeletonTrace};
