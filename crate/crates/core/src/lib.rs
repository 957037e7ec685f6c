//! Exact computations around log centres of noncommutative crepant resolutions.
//!
//! - [`valmat`]: fractional-ideal matrices over a DVR (min-plus arithmetic),
//!   hereditary orders, their radicals, dualizing modules and centralizers.
//! - [`orders`]: ramification data, discriminant divisors, log centres and
//!   the graded centre of the canonical cover.
//! - [`toric`]: affine toric log pairs, Q-Cartier functionals, Hilbert bases,
//!   klt/canonical verdicts and log canonical covers.
//! - [`ncpoly`]: noncommutative polynomials with terminating rewrite systems.
//! - [`cases`]: the two built-in case studies and their reports.
//! - [`cli`]: the `logcentre` command-line front end.

pub mod cases;
pub mod cli;
pub mod error;
pub mod input;
pub mod linalg;
pub mod ncpoly;
pub mod orders;
pub mod rational;
pub mod toric;
pub mod valmat;

pub use error::{Error, Result};
