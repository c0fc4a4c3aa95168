//! Numerical laboratory for the family of quadratic Dirichlet L-functions
//! `L(s, χ^(8d))`, `d` odd and square-free.

pub mod arith;
pub mod charsums;
pub mod cli;
pub mod error;
pub mod harper;
pub mod lfunc;
pub mod moments;
pub mod report;
pub mod rng;
pub mod special;
pub mod sum;
pub mod tolerances;
pub mod zeta;

pub use error::{QdlError, Result};
