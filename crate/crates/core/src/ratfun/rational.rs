use super::{check_vars, Exponents, Monomial, Poly, Vars, Q};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::One;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Magnitude below which a numeric denominator counts as a pole.
pub const POLE_EPS: f64 = 1e-12;

/// An irreducible-by-construction denominator factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// `1 - M` with the first nonzero exponent of `M` positive.
    Binomial(Monomial),
    /// Any other polynomial, scaled so its lex-leading term is `1`.
    General(Poly),
}

impl Factor {
    pub fn to_poly(&self, vars: Vars) -> Poly {
        match self {
            Factor::Binomial(m) => Poly::one_minus(vars, m),
            Factor::General(p) => p.clone(),
        }
    }

    fn divide(&self, p: &Poly) -> Option<Poly> {
        match self {
            Factor::Binomial(m) => p.div_one_minus(m),
            Factor::General(g) => p.div_exact(g),
        }
    }

    fn mul_into(&self, p: &Poly) -> Poly {
        match self {
            Factor::Binomial(m) => p.mul_one_minus(m),
            Factor::General(g) => p * g,
        }
    }

    fn eval(&self, point: &[Complex64]) -> Complex64 {
        match self {
            Factor::Binomial(m) => Complex64::new(1.0, 0.0) - m.eval(point),
            Factor::General(g) => g.eval(point),
        }
    }

    /// Canonical factor for `p` together with the unit `u` such that
    /// `p = u * factor`. `None` for monomials.
    fn normalize(p: &Poly) -> Option<(Factor, Monomial, Q)> {
        let (lm, lc) = p.leading()?;
        if p.len() == 1 {
            return None;
        }
        if p.len() == 2 {
            let (tm, tc) = p.terms().next()?;
            if *tc == -lc {
                // p = lc*lm - lc*tm = (-lc*tm) * (1 - lm/tm); lm/tm has positive orientation
                return Some((Factor::Binomial(lm.div(tm)), tm.clone(), -lc.clone()));
            }
        }
        let g = p.mul_term(&lm.inv(), &lc.recip());
        Some((Factor::General(g), lm.clone(), lc.clone()))
    }
}

/// Exact Laurent rational function `num / prod(factor^e)`.
///
/// Denominators stay factored; every operation cancels common factors by
/// trial division. Equality is decided by cross-multiplication, so it never
/// depends on how far a value was reduced.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: BTreeMap<Factor, u32>,
}

impl RatFun {
    pub fn zero(vars: Vars) -> Self {
        Self::from_poly(Poly::zero(vars))
    }

    pub fn one(vars: Vars) -> Self {
        Self::from_poly(Poly::one(vars))
    }

    pub fn constant(vars: Vars, c: Q) -> Self {
        Self::from_poly(Poly::constant(vars, c))
    }

    pub fn from_i64(vars: Vars, c: i64) -> Self {
        Self::constant(vars, Q::from_integer(c.into()))
    }

    pub fn monomial(vars: Vars, mono: Monomial) -> Self {
        Self::from_poly(Poly::term(vars, mono, Q::one()))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFun {
            num,
            den: BTreeMap::new(),
        }
    }

    /// `num / den`, rejecting a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        check_vars(num.vars(), den.vars())?;
        Ok(&Self::from_poly(num) * &Self::poly_inverse(&den)?)
    }

    /// `1 / (1 - mono)`.
    pub fn one_minus_inv(vars: Vars, mono: &Monomial) -> Result<Self> {
        match mono.orientation() {
            0 => Err(Error::ZetaPole),
            o if o > 0 => Ok(RatFun {
                num: Poly::one(vars),
                den: BTreeMap::from([(Factor::Binomial(mono.clone()), 1)]),
            }),
            _ => {
                let mi = mono.inv();
                Ok(RatFun {
                    num: Poly::term(vars, mi.clone(), -Q::one()),
                    den: BTreeMap::from([(Factor::Binomial(mi), 1)]),
                })
            }
        }
    }

    fn poly_inverse(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let vars = p.vars();
        match Factor::normalize(p) {
            None => {
                let (m, c) = p.single_term().expect("nonzero monomial");
                Ok(Self::from_poly(Poly::term(vars, m.inv(), c.recip())))
            }
            Some((f, unit, c)) => Ok(RatFun {
                num: Poly::term(vars, unit.inv(), c.recip()),
                den: BTreeMap::from([(f, 1)]),
            }),
        }
    }

    /// Builds from a numerator and a factored denominator, then reduces.
    pub fn from_parts(num: Poly, den: BTreeMap<Factor, u32>) -> Self {
        let mut out = RatFun { num, den };
        out.reduce();
        out
    }

    /// Like [`RatFun::from_parts`] but skips cancellation; for summands
    /// that are about to be combined by [`RatFun::sum`].
    pub fn from_parts_unreduced(num: Poly, den: BTreeMap<Factor, u32>) -> Self {
        RatFun { num, den }
    }

    pub fn vars(&self) -> Vars {
        self.num.vars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &BTreeMap<Factor, u32> {
        &self.den
    }

    /// Expanded denominator polynomial.
    pub fn denominator(&self) -> Poly {
        expand(&self.den, &Poly::one(self.vars()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// Laurent polynomial value, if the denominator has fully cancelled.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn checked_add(&self, other: &RatFun) -> Result<RatFun> {
        check_vars(self.vars(), other.vars())?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &RatFun) -> Result<RatFun> {
        check_vars(self.vars(), other.vars())?;
        Ok(self * other)
    }

    pub fn inv(&self) -> Result<RatFun> {
        let num_inv = Self::poly_inverse(&self.num)?;
        let den = RatFun::from_poly(self.denominator());
        Ok(&den * &num_inv)
    }

    pub fn pow(&self, k: i32) -> Result<RatFun> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFun::one(self.vars());
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Q) -> RatFun {
        let mut out = RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> RatFun {
        RatFun {
            num: self.num.mul_monomial(mono),
            den: self.den.clone(),
        }
    }

    /// Exact equality through cross-multiplication.
    pub fn equals(&self, other: &RatFun) -> bool {
        if self.vars() != other.vars() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        let lcm = lcm(&self.den, &other.den);
        let a = expand(&quotient(&lcm, &self.den), &self.num);
        let b = expand(&quotient(&lcm, &other.den), &other.num);
        a == b
    }

    /// Cancels denominator factors that divide the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<(Factor, u32)> = self.den.iter().map(|(f, e)| (f.clone(), *e)).collect();
        for (f, e) in factors {
            let mut left = e;
            while left > 0 {
                match f.divide(&self.num) {
                    Some(q) => {
                        self.num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left == 0 {
                self.den.remove(&f);
            } else {
                self.den.insert(f, left);
            }
        }
    }

    /// Applies a linear exponent substitution (a variable change by a
    /// monomial map) to numerator and denominator.
    pub fn map_exponents(&self, f: impl Fn(&[i32]) -> Exponents + Sync) -> RatFun {
        let vars = self.vars();
        let mut num = self.num.map_exponents(&f);
        let mut den: BTreeMap<Factor, u32> = BTreeMap::new();
        for (fac, &e) in &self.den {
            let p = fac.to_poly(vars).map_exponents(&f);
            let (g, unit, c) = Factor::normalize(&p).expect("factor stays non-monomial");
            // 1/p^e = (c*unit)^{-e} / g^e
            let u = Poly::term(vars, unit.inv(), c.recip()).pow(e);
            num = &num * &u;
            *den.entry(g).or_insert(0) += e;
        }
        let mut out = RatFun { num, den };
        out.reduce();
        out
    }

    /// Numeric value; fails with `NearPole` when the denominator is tiny.
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        let mut d = Complex64::new(1.0, 0.0);
        for (f, &e) in &self.den {
            d *= f.eval(point).powi(e as i32);
        }
        if d.norm() < POLE_EPS {
            return Err(Error::NearPole(d.norm()));
        }
        Ok(self.num.eval(point) / d)
    }

    /// Sum of many fractions over one common denominator, with a single
    /// reduction at the end.
    pub fn sum(vars: Vars, terms: &[RatFun]) -> RatFun {
        let mut l: BTreeMap<Factor, u32> = BTreeMap::new();
        for t in terms {
            assert_eq!(t.vars(), vars, "rational function contexts differ");
            l = lcm(&l, &t.den);
        }
        let num = terms
            .par_iter()
            .map(|t| expand(&quotient(&l, &t.den), &t.num))
            .reduce(|| Poly::zero(vars), |a, b| &a + &b);
        let mut out = RatFun { num, den: l };
        out.reduce();
        out
    }

    /// Deterministic text form; the denominator is printed expanded.
    pub fn to_text(&self) -> String {
        if self.den.is_empty() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num.to_text(), self.denominator().to_text())
        }
    }
}

fn lcm(a: &BTreeMap<Factor, u32>, b: &BTreeMap<Factor, u32>) -> BTreeMap<Factor, u32> {
    let mut out = a.clone();
    for (f, &e) in b {
        let slot = out.entry(f.clone()).or_insert(0);
        *slot = (*slot).max(e);
    }
    out
}

fn quotient(l: &BTreeMap<Factor, u32>, d: &BTreeMap<Factor, u32>) -> BTreeMap<Factor, u32> {
    l.iter()
        .filter_map(|(f, &e)| {
            let r = e - d.get(f).copied().unwrap_or(0);
            (r > 0).then(|| (f.clone(), r))
        })
        .collect()
}

fn expand(factors: &BTreeMap<Factor, u32>, init: &Poly) -> Poly {
    let mut p = init.clone();
    for (f, &e) in factors {
        for _ in 0..e {
            p = f.mul_into(&p);
        }
    }
    p
}

impl PartialEq for RatFun {
    fn eq(&self, other: &RatFun) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        assert_eq!(self.vars(), rhs.vars(), "rational function contexts differ");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let l = lcm(&self.den, &rhs.den);
        let a = expand(&quotient(&l, &self.den), &self.num);
        let b = expand(&quotient(&l, &rhs.den), &rhs.num);
        let mut out = RatFun { num: &a + &b, den: l };
        out.reduce();
        out
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        assert_eq!(self.vars(), rhs.vars(), "rational function contexts differ");
        let mut den = self.den.clone();
        for (f, &e) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        let mut out = RatFun {
            num: &self.num * &rhs.num,
            den,
        };
        out.reduce();
        out
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by zero; use [`RatFun::inv`] for a checked path.
    fn div(self, rhs: &RatFun) -> RatFun {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: RatFun) -> RatFun {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
