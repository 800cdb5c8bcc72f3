use super::{Monomial, RatFun, Vars};
use crate::Result;
use std::ops::{Add, Neg, Sub};

/// A zeta argument `sum c_i chi_i + sum e_j xi_j + halves/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub chi: Vec<i32>,
    pub xi: Vec<i32>,
    /// The constant term, counted in halves.
    pub halves: i32,
}

impl LinearForm {
    pub fn zero(vars: Vars) -> Self {
        LinearForm {
            chi: vec![0; vars.n],
            xi: vec![0; vars.m],
            halves: 0,
        }
    }

    /// `chi_{i+1}` (zero-based index).
    pub fn chi(vars: Vars, i: usize) -> Self {
        let mut s = Self::zero(vars);
        s.chi[i] = 1;
        s
    }

    /// `xi_{j+1}` (zero-based index).
    pub fn xi(vars: Vars, j: usize) -> Self {
        let mut s = Self::zero(vars);
        s.xi[j] = 1;
        s
    }

    pub fn constant(vars: Vars, halves: i32) -> Self {
        let mut s = Self::zero(vars);
        s.halves = halves;
        s
    }

    pub fn vars(&self) -> Vars {
        Vars::new(self.chi.len(), self.xi.len())
    }

    /// Adds `h/2` to the constant term.
    pub fn plus_halves(mut self, h: i32) -> Self {
        self.halves += h;
        self
    }

    pub fn scaled(mut self, k: i32) -> Self {
        self.chi.iter_mut().for_each(|c| *c *= k);
        self.xi.iter_mut().for_each(|c| *c *= k);
        self.halves *= k;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.halves == 0 && self.chi.iter().chain(&self.xi).all(|&c| c == 0)
    }

    /// `q^{-s}` as a monomial in `(v, x, y)`.
    pub fn monomial(&self) -> Monomial {
        let mut e = Vec::with_capacity(1 + self.chi.len() + self.xi.len());
        e.push(self.halves);
        e.extend_from_slice(&self.chi);
        e.extend_from_slice(&self.xi);
        Monomial::from_exponents(&e)
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(mut self, rhs: LinearForm) -> LinearForm {
        assert_eq!(self.vars(), rhs.vars(), "linear form contexts differ");
        self.chi.iter_mut().zip(&rhs.chi).for_each(|(a, b)| *a += b);
        self.xi.iter_mut().zip(&rhs.xi).for_each(|(a, b)| *a += b);
        self.halves += rhs.halves;
        self
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scaled(-1)
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        self + (-rhs)
    }
}

/// `q^{-s}` under the variable convention.
pub fn monomial_of_linear_form(s: &LinearForm) -> Monomial {
    s.monomial()
}

/// `zeta(s) = 1/(1 - q^{-s})`; errors when `s` vanishes identically.
pub fn zeta_of(s: &LinearForm) -> Result<RatFun> {
    RatFun::one_minus_inv(s.vars(), &s.monomial())
}
