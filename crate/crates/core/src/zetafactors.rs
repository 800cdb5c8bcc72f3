//! Closed-form factor products: `b`, `d`, `d'`, `Gamma`, the
//! Gindikin-Karpelevich factors `c_w`, `c~_w`, the gamma factors of simple
//! reflections and the modulus characters on torus cocharacters.

use crate::ratfun::{Exponents, Factor, LinearForm, Monomial, Poly, RatFun, Vars, Q};
use crate::weyl::{coroot, pull_back_block, Block, SignedPerm};
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Ranks of `G = Sp_2n` and `M = Sp_2m`, with `n >= m + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    pub n: usize,
    pub m: usize,
}

impl Context {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < m + 1 {
            return Err(Error::Rank(format!("need n >= m+1, got n={n}, m={m}")));
        }
        Ok(Context { n, m })
    }

    pub fn vars(self) -> Vars {
        Vars::new(self.n, self.m)
    }

    /// `chi_i`, one-based.
    pub fn chi(self, i: usize) -> LinearForm {
        LinearForm::chi(self.vars(), i - 1)
    }

    /// `xi_j`, one-based.
    pub fn xi(self, j: usize) -> LinearForm {
        LinearForm::xi(self.vars(), j - 1)
    }

    /// The constant `h/2`.
    pub fn half(self, h: i32) -> LinearForm {
        LinearForm::constant(self.vars(), h)
    }
}

/// `prod zeta(s_k)^{e_k}`, keyed by the monomial `q^{-s_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaProduct {
    vars: Vars,
    powers: BTreeMap<Monomial, i32>,
}

impl ZetaProduct {
    pub fn one(vars: Vars) -> Self {
        ZetaProduct {
            vars,
            powers: BTreeMap::new(),
        }
    }

    pub fn zeta(s: &LinearForm, e: i32) -> Result<Self> {
        let mut z = Self::one(s.vars());
        z.push(s, e)?;
        Ok(z)
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    /// Multiplies by `zeta(s)^e`.
    pub fn push(&mut self, s: &LinearForm, e: i32) -> Result<()> {
        if s.is_zero() {
            return Err(Error::ZetaPole);
        }
        self.push_monomial(s.monomial(), e);
        Ok(())
    }

    fn push_monomial(&mut self, m: Monomial, e: i32) {
        let slot = self.powers.entry(m.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.powers.remove(&m);
        }
    }

    pub fn powers(&self) -> impl Iterator<Item = (&Monomial, i32)> {
        self.powers.iter().map(|(m, &e)| (m, e))
    }

    /// Number of zeta factors counted with multiplicity.
    pub fn factor_count(&self) -> usize {
        self.powers.values().map(|e| e.unsigned_abs() as usize).sum()
    }

    pub fn mul(&self, other: &ZetaProduct) -> ZetaProduct {
        assert_eq!(self.vars, other.vars, "zeta product contexts differ");
        let mut out = self.clone();
        for (m, &e) in &other.powers {
            out.push_monomial(m.clone(), e);
        }
        out
    }

    pub fn inverse(&self) -> ZetaProduct {
        ZetaProduct {
            vars: self.vars,
            powers: self.powers.iter().map(|(m, &e)| (m.clone(), -e)).collect(),
        }
    }

    /// Substitutes a linear exponent map into every argument.
    pub fn map_exponents(&self, f: impl Fn(&[i32]) -> Exponents) -> ZetaProduct {
        let mut out = Self::one(self.vars);
        for (m, &e) in &self.powers {
            out.push_monomial(m.map(&f), e);
        }
        out
    }

    /// Numerator polynomial and factored denominator of the product.
    pub fn to_parts(&self) -> (Poly, BTreeMap<Factor, u32>) {
        let mut num = Poly::one(self.vars);
        let mut den = BTreeMap::new();
        for (m, &e) in &self.powers {
            if e < 0 {
                for _ in 0..-e {
                    num = num.mul_one_minus(m);
                }
            } else if m.orientation() > 0 {
                *den.entry(Factor::Binomial(m.clone())).or_insert(0) += e as u32;
            } else {
                // 1/(1-M) = -M^{-1}/(1-M^{-1})
                let mi = m.inv();
                num = num.mul_term(&mi.pow(e), &Q::from_integer((-1i64).pow(e as u32).into()));
                *den.entry(Factor::Binomial(mi)).or_insert(0) += e as u32;
            }
        }
        (num, den)
    }

    pub fn to_ratfun(&self) -> RatFun {
        let (num, den) = self.to_parts();
        RatFun::from_parts(num, den)
    }

    /// Direct numeric value; `NearPole` if some `|1 - q^{-s}|` is tiny.
    pub fn eval(&self, point: &[Complex64], eps: f64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = one;
        for (m, &e) in &self.powers {
            let d = one - m.eval(point);
            if e > 0 && d.norm() < eps {
                return Err(Error::NearPole(d.norm()));
            }
            acc *= d.powi(-e);
        }
        Ok(acc)
    }

    /// Smallest `|1 - q^{-s}|` over the denominator factors.
    pub fn min_denominator(&self, point: &[Complex64]) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        self.powers
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(m, _)| (one - m.eval(point)).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Which group a simple root belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    G,
    M,
}

/// Simple root of `C_rank`: `e_i - e_{i+1}` for `index < rank`, `2 e_rank`
/// for `index = rank` (one-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleRoot {
    pub group: Group,
    pub index: usize,
}

impl SimpleRoot {
    pub fn rank(self, ctx: Context) -> usize {
        match self.group {
            Group::G => ctx.n,
            Group::M => ctx.m,
        }
    }

    pub fn is_long(self, ctx: Context) -> bool {
        self.index == self.rank(ctx)
    }

    pub fn vector(self, ctx: Context) -> Vec<i32> {
        let k = self.rank(ctx);
        let mut r = vec![0; k];
        if self.index < k {
            r[self.index - 1] = 1;
            r[self.index] = -1;
        } else {
            r[k - 1] = 2;
        }
        r
    }

    pub fn reflection(self, ctx: Context) -> Result<SignedPerm> {
        SignedPerm::simple_reflection(self.rank(ctx), self.index)
    }

    pub fn all(ctx: Context) -> Vec<SimpleRoot> {
        let g = (1..=ctx.n).map(|index| SimpleRoot {
            group: Group::G,
            index,
        });
        let m = (1..=ctx.m).map(|index| SimpleRoot {
            group: Group::M,
            index,
        });
        g.chain(m).collect()
    }

    pub fn label(self, ctx: Context) -> String {
        let (g, k) = match self.group {
            Group::G => ("G", ctx.n),
            Group::M => ("M", ctx.m),
        };
        if self.index < k {
            format!("{g}:e{}-e{}", self.index, self.index + 1)
        } else {
            format!("{g}:2e{}", self.index)
        }
    }
}

fn pairing(ctx: Context, block: Group, coeffs: &[i32]) -> LinearForm {
    let mut s = LinearForm::zero(ctx.vars());
    match block {
        Group::G => s.chi.copy_from_slice(coeffs),
        Group::M => s.xi.copy_from_slice(coeffs),
    }
    s
}

/// `d(chi) = prod_{a<b} zeta(chi_a - chi_b) zeta(chi_a + chi_b) prod zeta(chi_i)`.
pub fn d_zeta(ctx: Context) -> ZetaProduct {
    let mut z = ZetaProduct::one(ctx.vars());
    for a in 1..=ctx.n {
        for b in a + 1..=ctx.n {
            push(&mut z, ctx.chi(a) - ctx.chi(b), 1);
            push(&mut z, ctx.chi(a) + ctx.chi(b), 1);
        }
        push(&mut z, ctx.chi(a), 1);
    }
    z
}

/// `d'(xi) = prod_{a<b} zeta(xi_a - xi_b) zeta(xi_a + xi_b) prod zeta(2 xi_j)`.
pub fn dprime_zeta(ctx: Context) -> ZetaProduct {
    let mut z = ZetaProduct::one(ctx.vars());
    for a in 1..=ctx.m {
        for b in a + 1..=ctx.m {
            push(&mut z, ctx.xi(a) - ctx.xi(b), 1);
            push(&mut z, ctx.xi(a) + ctx.xi(b), 1);
        }
        push(&mut z, ctx.xi(a).scaled(2), 1);
    }
    z
}

/// `b(chi, xi)`; the diagonal `i = j + n - m` enters neither one-sided product.
pub fn b_zeta(ctx: Context) -> ZetaProduct {
    let (n, m) = (ctx.n, ctx.m);
    let mut z = ZetaProduct::one(ctx.vars());
    for i in 1..=n {
        for j in 1..=m {
            if i < j + n - m {
                push(&mut z, (ctx.chi(i) - ctx.xi(j)).plus_halves(1), -1);
            } else if i > j + n - m {
                push(&mut z, (ctx.xi(j) - ctx.chi(i)).plus_halves(1), -1);
            }
        }
    }
    for j in 1..=m {
        push(&mut z, ctx.xi(j).plus_halves(1), -1);
    }
    for i in 1..=n {
        for j in 1..=m {
            push(&mut z, (ctx.chi(i) + ctx.xi(j)).plus_halves(1), -1);
        }
    }
    z
}

/// `Gamma(chi, xi)`. The factor `1 + v y_j` is written as
/// `zeta(xi_j + 1/2) / zeta(2 xi_j + 1)`.
pub fn gamma_big_zeta(ctx: Context) -> ZetaProduct {
    let (n, m) = (ctx.n, ctx.m);
    let mut z = ZetaProduct::one(ctx.vars());
    for a in 1..=n {
        for b in a + 1..=n {
            push(&mut z, (ctx.chi(a) - ctx.chi(b)).plus_halves(2), -1);
            push(&mut z, (ctx.chi(a) + ctx.chi(b)).plus_halves(2), -1);
        }
        push(&mut z, ctx.chi(a).plus_halves(2), -1);
    }
    for a in 1..=m {
        for b in a + 1..=m {
            push(&mut z, (ctx.xi(a) - ctx.xi(b)).plus_halves(2), -1);
            push(&mut z, (ctx.xi(a) + ctx.xi(b)).plus_halves(2), -1);
        }
    }
    for j in 1..=m {
        push(&mut z, ctx.xi(j).plus_halves(1), 1);
        push(&mut z, ctx.xi(j).scaled(2).plus_halves(2), -1);
    }
    for j in 1..=m {
        for i in 1..n - m + j {
            push(&mut z, (ctx.chi(i) - ctx.xi(j)).plus_halves(1), 1);
            push(&mut z, (ctx.xi(j) - ctx.chi(i)).plus_halves(1), -1);
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            push(&mut z, (ctx.chi(i) + ctx.xi(j)).plus_halves(1), 1);
            push(&mut z, (ctx.xi(j) - ctx.chi(i)).plus_halves(1), 1);
        }
    }
    z
}

fn push(z: &mut ZetaProduct, s: LinearForm, e: i32) {
    z.push(&s, e)
        .expect("factor arguments are never identically zero");
}

pub fn d_factor(ctx: Context) -> RatFun {
    d_zeta(ctx).to_ratfun()
}

pub fn dprime_factor(ctx: Context) -> RatFun {
    dprime_zeta(ctx).to_ratfun()
}

pub fn b_factor(ctx: Context) -> RatFun {
    b_zeta(ctx).to_ratfun()
}

pub fn gamma_big(ctx: Context) -> RatFun {
    gamma_big_zeta(ctx).to_ratfun()
}

/// `c_alpha(chi) = zeta(<chi, alpha^vee>) / zeta(<chi, alpha^vee> + 1)`.
pub fn c_alpha_zeta(ctx: Context, root: &[i32]) -> ZetaProduct {
    let s = pairing(ctx, Group::G, &coroot(root));
    let mut z = ZetaProduct::one(ctx.vars());
    push(&mut z, s.clone(), 1);
    push(&mut z, s.plus_halves(2), -1);
    z
}

/// `c~_alpha(xi) = zeta(<xi, alpha>) / zeta(<xi, alpha> + 1)`, with the root.
pub fn c_tilde_alpha_zeta(ctx: Context, root: &[i32]) -> ZetaProduct {
    let s = pairing(ctx, Group::M, root);
    let mut z = ZetaProduct::one(ctx.vars());
    push(&mut z, s.clone(), 1);
    push(&mut z, s.plus_halves(2), -1);
    z
}

/// `c_w(chi)`: product of `c_alpha` over the inversion set of `w`.
pub fn c_w_zeta(w: &SignedPerm, ctx: Context) -> ZetaProduct {
    assert_eq!(w.rank(), ctx.n, "c_w needs an element of W_G");
    w.inversion_set()
        .iter()
        .fold(ZetaProduct::one(ctx.vars()), |acc, a| {
            acc.mul(&c_alpha_zeta(ctx, a))
        })
}

pub fn c_tilde_w_zeta(w: &SignedPerm, ctx: Context) -> ZetaProduct {
    assert_eq!(w.rank(), ctx.m, "c~_w needs an element of W_M");
    w.inversion_set()
        .iter()
        .fold(ZetaProduct::one(ctx.vars()), |acc, a| {
            acc.mul(&c_tilde_alpha_zeta(ctx, a))
        })
}

pub fn c_w(w: &SignedPerm, ctx: Context) -> RatFun {
    c_w_zeta(w, ctx).to_ratfun()
}

pub fn c_tilde_w(w: &SignedPerm, ctx: Context) -> RatFun {
    c_tilde_w_zeta(w, ctx).to_ratfun()
}

/// Gamma factor of a simple reflection of `G`.
pub fn gamma_alpha_zeta(ctx: Context, alpha: SimpleRoot) -> Result<ZetaProduct> {
    check_root(ctx, alpha, Group::G)?;
    let (n, m, i) = (ctx.n, ctx.m, alpha.index);
    let mut z = c_alpha_zeta(ctx, &alpha.vector(ctx));
    if i == n {
        push(&mut z, ctx.chi(n).plus_halves(2), 1);
        push(&mut z, (-ctx.chi(n)).plus_halves(2), -1);
        return Ok(z);
    }
    push(&mut z, (ctx.chi(i) - ctx.chi(i + 1)).plus_halves(2), 1);
    push(&mut z, (ctx.chi(i + 1) - ctx.chi(i)).plus_halves(2), -1);
    if i + m >= n {
        let j = i - (n - m) + 1;
        push(&mut z, (ctx.chi(i + 1) - ctx.xi(j)).plus_halves(1), 1);
        push(&mut z, (ctx.xi(j) - ctx.chi(i)).plus_halves(1), 1);
        push(&mut z, (ctx.chi(i) - ctx.xi(j)).plus_halves(1), -1);
        push(&mut z, (ctx.xi(j) - ctx.chi(i + 1)).plus_halves(1), -1);
    }
    Ok(z)
}

/// Gamma factor of a simple reflection of `M`, with `chi~_i = chi_{n-m+i}`.
pub fn gamma_beta_zeta(ctx: Context, beta: SimpleRoot) -> Result<ZetaProduct> {
    check_root(ctx, beta, Group::M)?;
    let (n, m, i) = (ctx.n, ctx.m, beta.index);
    let ct = |k: usize| ctx.chi(n - m + k);
    let mut z = c_tilde_alpha_zeta(ctx, &beta.vector(ctx));
    if i < m {
        push(&mut z, (ctx.xi(i) - ctx.xi(i + 1)).plus_halves(2), 1);
        push(&mut z, (ctx.xi(i + 1) - ct(i)).plus_halves(1), 1);
        push(&mut z, (ct(i) - ctx.xi(i)).plus_halves(1), 1);
        push(&mut z, (ctx.xi(i + 1) - ctx.xi(i)).plus_halves(2), -1);
        push(&mut z, (ct(i) - ctx.xi(i + 1)).plus_halves(1), -1);
        push(&mut z, (ctx.xi(i) - ct(i)).plus_halves(1), -1);
    } else {
        let x = || ctx.xi(m);
        push(&mut z, (-x() - ct(m)).plus_halves(1), 1);
        push(&mut z, (ct(m) - x()).plus_halves(1), 1);
        push(&mut z, x().scaled(2).plus_halves(2), 1);
        push(&mut z, (-x()).plus_halves(1), 1);
        push(&mut z, (x() - ct(m)).plus_halves(1), -1);
        push(&mut z, (x() + ct(m)).plus_halves(1), -1);
        push(&mut z, x().scaled(-2).plus_halves(2), -1);
        push(&mut z, x().plus_halves(1), -1);
    }
    Ok(z)
}

fn check_root(ctx: Context, r: SimpleRoot, group: Group) -> Result<()> {
    if r.group != group {
        return Err(Error::Invalid(format!(
            "{} is not a root of {group:?}",
            r.label(ctx)
        )));
    }
    let k = r.rank(ctx);
    if r.index == 0 || r.index > k {
        return Err(Error::IndexOutOfRange {
            what: "simple root",
            index: r.index,
            bound: k,
        });
    }
    Ok(())
}

pub fn gamma_alpha(ctx: Context, alpha: SimpleRoot) -> Result<RatFun> {
    Ok(gamma_alpha_zeta(ctx, alpha)?.to_ratfun())
}

pub fn gamma_beta(ctx: Context, beta: SimpleRoot) -> Result<RatFun> {
    Ok(gamma_beta_zeta(ctx, beta)?.to_ratfun())
}

/// `delta^{1/2}_{B_G}(p^f) = prod v^{2 f_i (n-i+1)}`.
pub fn delta_half_g(vars: Vars, f: &[i64]) -> Monomial {
    let n = f.len();
    let e: i64 = f.iter().enumerate().map(|(i, &fi)| 2 * fi * (n - i) as i64).sum();
    Monomial::var(vars.len(), vars.v(), e as i32)
}

/// `delta^{1/2}_{B_{M^J}}(p^d) = prod v^{d_j (2(m-j)+3)}`.
pub fn delta_half_mj(vars: Vars, d: &[i64]) -> Monomial {
    let m = d.len();
    let e: i64 = d
        .iter()
        .enumerate()
        .map(|(j, &dj)| dj * (2 * (m - j - 1) as i64 + 3))
        .sum();
    Monomial::var(vars.len(), vars.v(), e as i32)
}

/// `zeta(1)^m prod_{i<=m} zeta(2i)^{-1}`.
pub fn normalization_closed_form_zeta(ctx: Context) -> ZetaProduct {
    let mut z = ZetaProduct::one(ctx.vars());
    for i in 1..=ctx.m as i32 {
        push(&mut z, ctx.half(2), 1);
        push(&mut z, ctx.half(4 * i), -1);
    }
    z
}

/// The constant `1 - v^2 = 1 - |p|`.
pub fn one_minus_q_inv(vars: Vars) -> RatFun {
    RatFun::from_poly(Poly::one_minus(vars, &Monomial::var(vars.len(), vars.v(), 2)))
}

/// Outcome of the `Gamma` transformation check for one simple root.
#[derive(Clone, Debug, Serialize)]
pub struct RootConsistency {
    pub root: String,
    pub passed: bool,
}

/// For each simple root `r` with reflection `s_r`, compares
/// `Gamma(s_r .) / Gamma` against `c_r^{-1} gamma_r` as exact rational functions.
pub fn gamma_consistency(ctx: Context) -> Result<Vec<RootConsistency>> {
    let vars = ctx.vars();
    let gamma = gamma_big_zeta(ctx);
    SimpleRoot::all(ctx)
        .into_par_iter()
        .map(|r| {
            let s = r.reflection(ctx)?;
            let block = match r.group {
                Group::G => Block::X,
                Group::M => Block::Y,
            };
            let moved = gamma.map_exponents(|e| pull_back_block(&s, vars, block, e));
            let lhs = moved.mul(&gamma.inverse()).to_ratfun();
            let (c, g) = match r.group {
                Group::G => (c_alpha_zeta(ctx, &r.vector(ctx)), gamma_alpha_zeta(ctx, r)?),
                Group::M => (c_tilde_alpha_zeta(ctx, &r.vector(ctx)), gamma_beta_zeta(ctx, r)?),
            };
            let rhs = c.inverse().mul(&g).to_ratfun();
            Ok(RootConsistency {
                root: r.label(ctx),
                passed: lhs == rhs,
            })
        })
        .collect()
}
