//! Exact arithmetic and integer linear algebra.

pub mod group;
pub mod local;
pub mod matrix;
pub mod scalar;
pub mod snf;

pub use group::{cokernel, homology, homology_subquotient, AbelianGroup, Lattice, Subquotient};
pub use matrix::{IntegerMatrix, SparseMatrix, SparseVec};
pub use scalar::{Coeff, RingTag, TwoLocal, F2};
pub use snf::{smith_normal_form, Snf, Track};
