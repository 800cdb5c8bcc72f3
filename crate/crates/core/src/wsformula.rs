//! The closed Weyl-sum formula for the normalized Whittaker-Shintani
//! function on the torus, its normalization constant, and the
//! `W_G x W_M` invariance check.

use crate::ratfun::{Exponents, Monomial, RatFun, Vars};
use crate::weyl::{enumerate, pull_back_block, pull_back_pair, Block, SignedPerm};
use crate::zetafactors::{
    b_zeta, d_zeta, delta_half_g, delta_half_mj, dprime_zeta, gamma_big_zeta, normalization_closed_form_zeta,
    one_minus_q_inv, Context, Group, SimpleRoot, ZetaProduct,
};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Rejects vectors outside the dominant cone (weakly decreasing, `>= 0`).
pub fn check_dominant(what: &'static str, v: &[i64]) -> Result<()> {
    let ok = v.iter().all(|&a| a >= 0) && v.windows(2).all(|w| w[0] >= w[1]);
    if ok {
        Ok(())
    } else {
        Err(Error::NotDominant {
            what,
            values: v.to_vec(),
        })
    }
}

fn check_lengths(ctx: Context, d: &[i64], f: &[i64]) -> Result<()> {
    if d.len() != ctx.m {
        return Err(Error::LengthMismatch {
            expected: ctx.m,
            got: d.len(),
        });
    }
    if f.len() != ctx.n {
        return Err(Error::LengthMismatch {
            expected: ctx.n,
            got: f.len(),
        });
    }
    check_dominant("d", d)?;
    check_dominant("f", f)
}

/// `b(chi,xi) d(chi) d'(xi)`, the summand before the group action.
pub fn summand(ctx: Context) -> ZetaProduct {
    b_zeta(ctx).mul(&d_zeta(ctx)).mul(&dprime_zeta(ctx))
}

/// `chi^{-1}(p^f) xi^{-1}(p^d) = x^{-f} y^{-d}` together with both
/// `delta^{1/2}` factors.
fn torus_monomial(vars: Vars, d: &[i64], f: &[i64]) -> (Monomial, Monomial) {
    let mut e = Exponents::from_elem(0, vars.len());
    for (i, &fi) in f.iter().enumerate() {
        e[vars.x(i)] = -fi as i32;
    }
    for (j, &dj) in d.iter().enumerate() {
        e[vars.y(j)] = -dj as i32;
    }
    let delta = &delta_half_g(vars, f) * &delta_half_mj(vars, d);
    (Monomial::from_vec(e), delta)
}

fn group_pairs(ctx: Context) -> Result<Vec<(SignedPerm, SignedPerm)>> {
    let wg = enumerate(ctx.n)?;
    let wm = enumerate(ctx.m)?;
    Ok(wg
        .iter()
        .flat_map(|w| wm.iter().map(move |w2| (w.clone(), w2.clone())))
        .collect())
}

/// The raw double Weyl sum
/// `sum b(w chi, w' xi) d(w chi) d'(w' xi) ((w chi)^{-1} delta^{1/2})(p^f) ((w' xi)^{-1} delta^{1/2})(p^d)`.
pub fn weyl_sum(ctx: Context, d: &[i64], f: &[i64]) -> Result<RatFun> {
    check_lengths(ctx, d, f)?;
    let vars = ctx.vars();
    let base = summand(ctx);
    let (chi_mono, delta) = torus_monomial(vars, d, f);
    let terms: Vec<RatFun> = group_pairs(ctx)?
        .par_iter()
        .map(|(w, w2)| {
            let pb = |e: &[i32]| pull_back_pair(w, w2, vars, e);
            let (num, den) = base.map_exponents(pb).to_parts();
            let mono = &chi_mono.map(pb) * &delta;
            RatFun::from_parts_unreduced(num.mul_monomial(&mono), den)
        })
        .collect();
    Ok(RatFun::sum(vars, &terms))
}

/// `C = sum b d d'` over `W_G x W_M`.
pub fn normalization_constant(ctx: Context) -> Result<RatFun> {
    weyl_sum(ctx, &vec![0; ctx.m], &vec![0; ctx.n])
}

/// `zeta(1)^m prod zeta(2i)^{-1}`.
pub fn normalization_closed_form(ctx: Context) -> RatFun {
    normalization_closed_form_zeta(ctx).to_ratfun()
}

/// The normalized value `L(d, f)`: the Weyl sum times
/// `zeta(1)^{-m} prod zeta(2i)`.
pub fn l_value(ctx: Context, d: &[i64], f: &[i64]) -> Result<RatFun> {
    let s = weyl_sum(ctx, d, f)?;
    let pre = normalization_closed_form_zeta(ctx).inverse().to_ratfun();
    Ok(&pre * &s)
}

/// `W^0(p^f) = L(0, f)`.
pub fn ws_torus(ctx: Context, f: &[i64]) -> Result<RatFun> {
    l_value(ctx, &vec![0; ctx.m], f)
}

/// The unnormalized pairing value `(1 - |p|)^m Gamma(chi, xi) * weyl_sum`,
/// whose quotient by `Gamma` carries the `W_G x W_M` invariance.
pub fn unnormalized_value(ctx: Context, d: &[i64], f: &[i64]) -> Result<RatFun> {
    let s = weyl_sum(ctx, d, f)?;
    let scale = one_minus_q_inv(ctx.vars()).pow(ctx.m as i32)?;
    Ok(&(&scale * &gamma_big_zeta(ctx).to_ratfun()) * &s)
}

/// Numeric value of [`weyl_sum`] at a point `(v, x, y)`, composing each
/// term directly from its zeta factors.
pub fn weyl_sum_numeric(ctx: Context, d: &[i64], f: &[i64], point: &[Complex64]) -> Result<Complex64> {
    check_lengths(ctx, d, f)?;
    let vars = ctx.vars();
    let base = summand(ctx);
    let (chi_mono, delta) = torus_monomial(vars, d, f);
    let mono = &chi_mono * &delta;
    let mut acc = NeumaierSum::default();
    for (w, w2) in group_pairs(ctx)? {
        let p = act_on_full_point(vars, &w, &w2, point);
        acc.add(base.eval(&p, NUMERIC_POLE_EPS)? * mono.eval(&p));
    }
    Ok(acc.total())
}

/// Numeric value of [`l_value`] at a point.
pub fn l_value_numeric(ctx: Context, d: &[i64], f: &[i64], point: &[Complex64]) -> Result<Complex64> {
    let pre = normalization_closed_form_zeta(ctx)
        .inverse()
        .eval(point, NUMERIC_POLE_EPS)?;
    Ok(pre * weyl_sum_numeric(ctx, d, f, point)?)
}

/// Threshold on `|1 - q^{-s}|` below which a numeric sample is skipped.
pub const NUMERIC_POLE_EPS: f64 = 1e-6;

/// `(v, w·x, w'·y)`.
pub fn act_on_full_point(vars: Vars, w: &SignedPerm, w2: &SignedPerm, point: &[Complex64]) -> Vec<Complex64> {
    let inv = |z: &Complex64| z.inv();
    let xs = w.act_on_point(&point[vars.x(0)..vars.x(0) + vars.n], inv);
    let ys = w2.act_on_point(&point[vars.y(0)..vars.y(0) + vars.m], inv);
    let mut out = vec![point[0]];
    out.extend(xs);
    out.extend(ys);
    out
}

/// Compensated complex summation.
#[derive(Default)]
pub struct NeumaierSum {
    sum: Complex64,
    comp: Complex64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: Complex64) {
        let (s_re, c_re) = two_sum(self.sum.re, x.re);
        let (s_im, c_im) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(s_re, s_im);
        self.comp += Complex64::new(c_re, c_im);
    }

    pub fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let c = if a.abs() >= b.abs() {
        (a - s) + b
    } else {
        (b - s) + a
    };
    (s, c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

/// Sampling parameters for numeric checks.
#[derive(Clone, Debug)]
pub struct NumericConfig {
    pub samples: usize,
    pub seed: u64,
    /// `|x_i| = |y_j| = radius`.
    pub radius: f64,
    /// Residue field size; `v = q^{-1/2}`.
    pub q: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            samples: 10,
            seed: 2024,
            radius: 0.7,
            q: 3.0,
        }
    }
}

impl NumericConfig {
    /// Random point `(v, x, y)` with `x`, `y` on the configured circle.
    pub fn sample(&self, vars: Vars, rng: &mut impl Rng) -> Vec<Complex64> {
        let mut p = vec![Complex64::new(self.q.powf(-0.5), 0.0)];
        for _ in 0..vars.n + vars.m {
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            p.push(Complex64::from_polar(self.radius, t));
        }
        p
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub generator: String,
    pub passed: bool,
    /// Largest `|value(s P) - value(P)|` over samples (numeric mode).
    pub max_deviation: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub mode: Mode,
    pub generators: Vec<GeneratorCheck>,
    pub samples_used: usize,
    pub samples_skipped: usize,
    pub all_passed: bool,
}

/// Tolerance for numeric invariance.
pub const INVARIANCE_TOL: f64 = 1e-9;

fn generator_perms(ctx: Context) -> Result<Vec<(String, SignedPerm, SignedPerm)>> {
    let mut out = vec![(
        "identity".to_string(),
        SignedPerm::identity(ctx.n),
        SignedPerm::identity(ctx.m),
    )];
    for r in SimpleRoot::all(ctx) {
        let s = r.reflection(ctx)?;
        let (w, w2) = match r.group {
            Group::G => (s, SignedPerm::identity(ctx.m)),
            Group::M => (SignedPerm::identity(ctx.n), s),
        };
        out.push((r.label(ctx), w, w2));
    }
    Ok(out)
}

/// Checks that the unnormalized value divided by `Gamma` is unchanged by
/// every simple reflection of `W_G` and `W_M`.
pub fn invariance_report(
    ctx: Context,
    d: &[i64],
    f: &[i64],
    mode: Mode,
    cfg: &NumericConfig,
) -> Result<InvarianceReport> {
    check_lengths(ctx, d, f)?;
    let vars = ctx.vars();
    let gens = generator_perms(ctx)?;
    match mode {
        Mode::Exact => {
            let value = unnormalized_value(ctx, d, f)?;
            let gamma = gamma_big_zeta(ctx);
            let base = &value * &gamma.inverse().to_ratfun();
            let mut checks = Vec::new();
            for (label, w, w2) in &gens {
                let pb =
                    |e: &[i32]| pull_back_block(w2, vars, Block::Y, &pull_back_block(w, vars, Block::X, e));
                let moved = &value.map_exponents(pb) * &gamma.map_exponents(pb).inverse().to_ratfun();
                checks.push(GeneratorCheck {
                    generator: label.clone(),
                    passed: moved == base,
                    max_deviation: None,
                });
            }
            let all_passed = checks.iter().all(|c| c.passed);
            Ok(InvarianceReport {
                mode,
                generators: checks,
                samples_used: 0,
                samples_skipped: 0,
                all_passed,
            })
        }
        Mode::Numeric => {
            let gamma = gamma_big_zeta(ctx);
            let scale = (1.0 - 1.0 / cfg.q).powi(ctx.m as i32);
            let ratio = |p: &[Complex64]| -> Result<Complex64> {
                let g = gamma.eval(p, NUMERIC_POLE_EPS)?;
                let value = g * weyl_sum_numeric(ctx, d, f, p)? * scale;
                Ok(value / g)
            };
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut dev = vec![0.0f64; gens.len()];
            let (mut used, mut skipped) = (0, 0);
            while used < cfg.samples {
                if skipped > 100 * cfg.samples.max(1) {
                    return Err(Error::Invalid("too many near-pole samples".into()));
                }
                let p = cfg.sample(vars, &mut rng);
                let vals: Result<Vec<Complex64>> = std::iter::once(ratio(&p))
                    .chain(
                        gens.iter()
                            .map(|(_, w, w2)| ratio(&act_on_full_point(vars, w, w2, &p))),
                    )
                    .collect();
                match vals {
                    Ok(vals) => {
                        for (k, v) in vals[1..].iter().enumerate() {
                            dev[k] = dev[k].max((v - vals[0]).norm());
                        }
                        used += 1;
                    }
                    Err(Error::NearPole(_)) => skipped += 1,
                    Err(e) => return Err(e),
                }
            }
            let checks: Vec<GeneratorCheck> = gens
                .iter()
                .zip(&dev)
                .map(|((label, _, _), &dv)| GeneratorCheck {
                    generator: label.clone(),
                    passed: dv < INVARIANCE_TOL,
                    max_deviation: Some(dv),
                })
                .collect();
            let all_passed = checks.iter().all(|c| c.passed);
            Ok(InvarianceReport {
                mode,
                generators: checks,
                samples_used: used,
                samples_skipped: skipped,
                all_passed,
            })
        }
    }
}
