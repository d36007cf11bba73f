//! Exact rational polyhedral cones, fans, integer lattices and the
//! combinatorics of toric boundary charts, with verifiers for the convex
//! geometry behind boundary fixed points of congruence covers.

pub mod cone;
pub mod catalog;
pub mod cores;
pub mod corpus;
pub mod error;
pub mod fan;
pub mod fm;
pub mod json;
pub mod linalg;
pub mod num;
pub mod par;
pub mod report;
pub mod rng;
pub mod toric;

pub use error::{Error, Result};
