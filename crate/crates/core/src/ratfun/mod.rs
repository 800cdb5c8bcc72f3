//! Exact arithmetic in the field Q(v, x_1..x_n, y_1..y_m) of Laurent
//! rational functions.
//!
//! Characters are stored through their uniformizer values:
//! `x_i = q^{-chi_i}`, `y_j = q^{-xi_j}` and `v = q^{-1/2}`, so `v^2`
//! stands for `|p|`. Every zeta argument is then an affine form whose
//! image `q^{-s}` is a single Laurent monomial.

mod linear;
mod monomial;
mod poly;
mod rational;

pub use linear::{monomial_of_linear_form, zeta_of, LinearForm};
pub use monomial::{Exponents, Monomial};
pub use poly::Poly;
pub use rational::{Factor, RatFun};

use std::fmt;

/// Arbitrary-precision rational coefficient.
pub type Q = num_rational::BigRational;

/// Ambient variable layout `(v, x_1..x_n, y_1..y_m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vars {
    pub n: usize,
    pub m: usize,
}

impl Vars {
    pub const fn new(n: usize, m: usize) -> Self {
        Vars { n, m }
    }

    /// Number of exponent slots, `1 + n + m`.
    #[allow(clippy::len_without_is_empty)]
    pub const fn len(self) -> usize {
        1 + self.n + self.m
    }

    pub const fn v(self) -> usize {
        0
    }

    /// Slot of `x_{i+1}` (zero-based `i`).
    pub const fn x(self, i: usize) -> usize {
        1 + i
    }

    /// Slot of `y_{j+1}` (zero-based `j`).
    pub const fn y(self, j: usize) -> usize {
        1 + self.n + j
    }

    pub fn name(self, slot: usize) -> String {
        if slot == 0 {
            "v".to_string()
        } else if slot <= self.n {
            format!("x{slot}")
        } else {
            format!("y{}", slot - self.n)
        }
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={})", self.n, self.m)
    }
}

pub(crate) fn check_vars(a: Vars, b: Vars) -> crate::Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(crate::Error::ContextMismatch(a.to_string(), b.to_string()))
    }
}
