//! Exact integer and rational linear algebra.

pub mod group;
pub mod hnf;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use group::{quotient_group, quotient_with_generators, CyclicFactor, FiniteAbelianGroup};
pub use hnf::row_hnf;
pub use lattice::IntegerLattice;
pub use matrix::{independent_subset, IntMatrix, Matrix, RationalMatrix};
pub use snf::{smith_normal_form, Snf};

use crate::error::Result;
use crate::num::Rat;

/// Some `x` with `a * x = b`, or `None` when the system is inconsistent.
pub fn solve_rational(a: &RationalMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    a.solve(b)
}
