//! Weyl characters of `SO_{2N+1}`, elementary symmetric sums of Satake
//! values, and the generating-series identity for `n = m + 1`.

use crate::ratfun::{Exponents, Monomial, Poly, RatFun, Vars, Q};
use crate::weyl::{antisymmetrize_poly, Block};
use crate::wsformula::{l_value_numeric, ws_torus};
use crate::zetafactors::Context;
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

/// `T~_N(lambda; x)` in the variables `x_1..x_N` of `Vars(N, 0)`.
///
/// Numerator and denominator are antisymmetrized in doubled exponents
/// (`u_i^2 = x_i`); the denominator is divided out through its product
/// form `u^{2 rho} prod (1 - x^{-alpha})`.
pub fn so_char(big_n: usize, lambda: &[i64]) -> Result<Poly> {
    if lambda.len() != big_n {
        return Err(Error::LengthMismatch {
            expected: big_n,
            got: lambda.len(),
        });
    }
    let uv = Vars::new(big_n, 0);
    let len = uv.len();
    let mut top = Exponents::from_elem(0, len);
    let mut rho2 = Exponents::from_elem(0, len);
    for j in 0..big_n {
        let r = (2 * (big_n - j) - 1) as i32;
        rho2[uv.x(j)] = r;
        top[uv.x(j)] = 2 * lambda[j] as i32 + r;
    }
    let num = antisymmetrize_poly(&Poly::term(uv, Monomial::from_vec(top), Q::one()), Block::X)?;
    let mut value = RatFun::from_poly(num).mul_monomial(&Monomial::from_vec(rho2).inv());
    for root in so_positive_roots(big_n) {
        // x^{-alpha} = u^{-2 alpha}
        let mut e = Exponents::from_elem(0, len);
        for (j, &c) in root.iter().enumerate() {
            e[uv.x(j)] = -2 * c;
        }
        value = &value * &RatFun::one_minus_inv(uv, &Monomial::from_vec(e))?;
    }
    let poly = value.as_poly().ok_or(Error::InexactDivision("so_char"))?;
    let mut out = Poly::zero(uv);
    for (m, c) in poly.terms() {
        if m.exponents().iter().any(|e| e % 2 != 0) {
            return Err(Error::InexactDivision("so_char: odd exponent"));
        }
        let half: Exponents = m.exponents().iter().map(|e| e / 2).collect();
        out.add_term(Monomial::from_vec(half), c.clone());
    }
    Ok(out)
}

/// Positive roots of `B_N`: `e_a - e_b`, `e_a + e_b`, `e_i`.
fn so_positive_roots(k: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let mut r = vec![0; k];
            r[a] = 1;
            r[b] = -1;
            out.push(r.clone());
            r[b] = 1;
            out.push(r);
        }
        let mut r = vec![0; k];
        r[a] = 1;
        out.push(r);
    }
    out
}

/// [`so_char`] re-embedded into the `x` block of `vars`.
pub fn so_char_in(vars: Vars, lambda: &[i64]) -> Result<Poly> {
    let big_n = lambda.len();
    if big_n > vars.n {
        return Err(Error::Rank(format!(
            "character rank {big_n} exceeds n={}",
            vars.n
        )));
    }
    let p = so_char(big_n, lambda)?;
    Ok(p.relabel(vars, |slot| if slot == 0 { vars.v() } else { vars.x(slot - 1) }))
}

/// `sum_{|S| = r} prod_{s in S} s` over a multiset of monomials.
pub fn elementary_sym(vars: Vars, set: &[Monomial], r: usize) -> Poly {
    let mut e = vec![Poly::one(vars)];
    for a in set {
        e.push(Poly::zero(vars));
        for k in (1..e.len()).rev() {
            let add = e[k - 1].mul_monomial(a);
            e[k] = &e[k] + &add;
        }
    }
    e.get(r).cloned().unwrap_or_else(|| Poly::zero(vars))
}

/// `{v y_j, v y_j^{-1}}`: the multiplicative Satake values `q^{-gamma}`.
pub fn satake_set(ctx: Context) -> Vec<Monomial> {
    let vars = ctx.vars();
    let mut out = Vec::new();
    for j in 0..ctx.m {
        for s in [1, -1] {
            let mut e = Exponents::from_elem(0, vars.len());
            e[vars.v()] = 1;
            e[vars.y(j)] = s;
            out.push(Monomial::from_vec(e));
        }
    }
    out
}

/// Power series in `T = |p|^s`, truncated at `T^K`.
#[derive(Clone, Debug)]
pub struct SeriesInT {
    pub coefficients: Vec<RatFun>,
}

impl SeriesInT {
    pub fn truncation(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Product with a polynomial in `T`, truncated to the same order.
    pub fn mul_polynomial(&self, p: &[Poly]) -> SeriesInT {
        let k = self.coefficients.len();
        let vars = self.coefficients[0].vars();
        let coefficients = (0..k)
            .map(|i| {
                let mut acc = RatFun::zero(vars);
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    acc = &acc + &(&self.coefficients[i - j] * &RatFun::from_poly(pj.clone()));
                }
                acc
            })
            .collect();
        SeriesInT { coefficients }
    }
}

fn require_shintani_case(ctx: Context) -> Result<()> {
    if ctx.n != ctx.m + 1 {
        return Err(Error::Rank(format!(
            "the series identity needs n = m+1, got n={}, m={}",
            ctx.n, ctx.m
        )));
    }
    Ok(())
}

/// Coefficient `l`: `W^0(diag(p^l, 1, p^{-l})) * |p^l|^{-m-1}`. The
/// `delta^{1/2}` factor inside `W^0` and the compensation are both kept.
pub fn lhs_series(ctx: Context, k: usize) -> Result<SeriesInT> {
    require_shintani_case(ctx)?;
    let vars = ctx.vars();
    let coefficients = (0..=k)
        .into_par_iter()
        .map(|l| {
            let mut f = vec![0i64; ctx.n];
            f[0] = l as i64;
            let w = ws_torus(ctx, &f)?;
            let comp = Monomial::var(vars.len(), vars.v(), -2 * (l * (ctx.m + 1)) as i32);
            Ok(w.mul_monomial(&comp))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesInT { coefficients })
}

/// `sum_a T~_{m+1}((a,0,..,0)) T^a`.
pub fn character_series(ctx: Context, k: usize) -> Result<SeriesInT> {
    require_shintani_case(ctx)?;
    let coefficients = (0..=k)
        .into_par_iter()
        .map(|a| {
            let mut lambda = vec![0i64; ctx.m + 1];
            lambda[0] = a as i64;
            Ok(RatFun::from_poly(so_char_in(ctx.vars(), &lambda)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesInT { coefficients })
}

/// Coefficient `k`: `sum_{a+r=k, r<=2m} (-1)^r e_r(Satake set) T~_{m+1}((a,0,..))`.
pub fn rhs_series(ctx: Context, k: usize) -> Result<SeriesInT> {
    let chars = character_series(ctx, k)?;
    let vars = ctx.vars();
    let set = satake_set(ctx);
    let e: Vec<Poly> = (0..=2 * ctx.m).map(|r| elementary_sym(vars, &set, r)).collect();
    let coefficients = (0..=k)
        .map(|kk| {
            let mut acc = RatFun::zero(vars);
            for (r, er) in e.iter().enumerate().take(kk.min(2 * ctx.m) + 1) {
                let term = &chars.coefficients[kk - r] * &RatFun::from_poly(er.clone());
                acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        })
        .collect();
    Ok(SeriesInT { coefficients })
}

/// Coefficients of `prod_{gamma} (1 - gamma T)`, expanded directly.
pub fn satake_polynomial(ctx: Context) -> Vec<Poly> {
    let vars = ctx.vars();
    let mut p = vec![Poly::one(vars)];
    for g in satake_set(ctx) {
        let mut next = p.clone();
        next.push(Poly::zero(vars));
        for (i, c) in p.iter().enumerate() {
            next[i + 1] = &next[i + 1] - &c.mul_monomial(&g);
        }
        p = next;
    }
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientCheck {
    pub index: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShintaniReport {
    pub n: usize,
    pub m: usize,
    pub truncation: usize,
    pub coefficients: Vec<CoefficientCheck>,
    pub all_equal: bool,
}

/// Compares both sides of the series identity coefficientwise.
pub fn shintani_verify(ctx: Context, k: usize) -> Result<ShintaniReport> {
    let lhs = lhs_series(ctx, k)?;
    let rhs = rhs_series(ctx, k)?;
    let coefficients: Vec<CoefficientCheck> = lhs
        .coefficients
        .iter()
        .zip(&rhs.coefficients)
        .enumerate()
        .map(|(index, (a, b))| CoefficientCheck { index, equal: a == b })
        .collect();
    let all_equal = coefficients.iter().all(|c| c.equal);
    Ok(ShintaniReport {
        n: ctx.n,
        m: ctx.m,
        truncation: k,
        coefficients,
        all_equal,
    })
}

/// Both sides of the series identity evaluated at a point `(v, x, y)`:
/// the left side through the numeric Weyl sum, the right side from
/// characters and Satake values.
pub fn series_numeric(
    ctx: Context,
    k: usize,
    point: &[Complex64],
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    require_shintani_case(ctx)?;
    let vars = ctx.vars();
    let lhs = (0..=k)
        .into_par_iter()
        .map(|l| {
            let mut f = vec![0i64; ctx.n];
            f[0] = l as i64;
            let comp = Monomial::var(vars.len(), vars.v(), -2 * (l * (ctx.m + 1)) as i32);
            Ok(l_value_numeric(ctx, &vec![0; ctx.m], &f, point)? * comp.eval(point))
        })
        .collect::<Result<Vec<_>>>()?;
    let chars = (0..=k)
        .map(|a| {
            let mut lambda = vec![0i64; ctx.m + 1];
            lambda[0] = a as i64;
            Ok(so_char_in(vars, &lambda)?.eval(point))
        })
        .collect::<Result<Vec<_>>>()?;
    let set = satake_set(ctx);
    let e: Vec<Complex64> = (0..=2 * ctx.m)
        .map(|r| elementary_sym(vars, &set, r).eval(point))
        .collect();
    let rhs = (0..=k)
        .map(|kk| {
            (0..=kk.min(2 * ctx.m))
                .map(|r| {
                    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                    chars[kk - r] * e[r] * sign
                })
                .sum()
        })
        .collect();
    Ok((lhs, rhs))
}
