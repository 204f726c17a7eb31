//! Exact multilinear-form machinery over prime fields.
//!
//! The crate evaluates multilinear forms on point sets in F_q^d, tests
//! (A, B)-non-degeneracy, computes projective indices and level-set counts,
//! builds omphaloi from lines and cosets, and checks the associated covering
//! bounds with exact integer and rational arithmetic.

pub mod analysis;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod forms;
pub mod group;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod sets;

pub use enumerate::Enumeration;
pub use error::{Error, Result};
pub use field::{PrimeField, Scalar};
pub use forms::{LinearFunctionalTensor, MultiLinearForm, Relation};
pub use group::MultiplicativeSubgroup;
pub use linalg::{FVector, Subspace};
pub use rational::Rational;
pub use sets::{FlatTensorSet, OmphalosSpec, PointSet, ScalarSet};
