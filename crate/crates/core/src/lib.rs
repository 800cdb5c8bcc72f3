//! Exact symbolic calculator and verifier for Whittaker-Shintani functions
//! of `Sp(2n) x Sp(2m)` over a p-adic field.

pub mod charform;
pub mod cli;
pub mod cone;
pub mod error;
pub mod padic;
pub mod ratfun;
pub mod weyl;
pub mod wsformula;
pub mod zetafactors;

pub use error::{Error, Result};
