//! Seeded property checks for the cell calculus, shared by the CLI and the
//! acceptance suite.

use super::cell::{
    abs_cell_kernel, alpha_k, beta_l, factor_valuations, random_open_cell, random_torus, random_unipotent,
    CellKernel, UnipotentPart,
};
use super::matrix::SympMatrix;
use crate::ratfun::Q;
use crate::weyl::{enumerate, SignedPerm};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Index of the first failing sample, if any.
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub seed: u64,
    pub checks: Vec<PropertyCheck>,
    pub all_passed: bool,
}

/// `log_q |chi^{-1} delta^{1/2}(b_G) xi delta^{-1/2}(b_M)|` from torus valuations.
pub fn kernel_from_torus(n: usize, m: usize, t_val: &[i64], s_val: &[i64], chi: &[Q], xi: &[Q]) -> Q {
    let z = |k: i64| Q::from_integer(BigInt::from(k));
    let half = Q::new(1.into(), 2.into());
    let mut e = Q::zero();
    for i in 0..n {
        e += z(-t_val[i]) * (-chi[i].clone() + z((n - i) as i64));
    }
    for j in 0..m {
        e += z(-s_val[j]) * (xi[j].clone() - z((m - j) as i64) - &half);
    }
    e
}

fn random_weyl(n: usize, rng: &mut impl Rng) -> SignedPerm {
    let image = {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            v.swap(i, rng.gen_range(0..=i));
        }
        v
    };
    let flips = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    SignedPerm::new(image, flips).expect("valid signed permutation")
}

fn random_rational(rng: &mut impl Rng) -> Q {
    Q::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into())
}

/// A random element `d(t) n w n'` of a random Bruhat cell.
fn random_bruhat(n: usize, m: usize, p: u64, rng: &mut impl Rng) -> Result<SympMatrix> {
    let (t, _) = random_torus(n, p, rng);
    let w = SympMatrix::weyl_element(&random_weyl(n, rng));
    let a = random_unipotent(n, m, UnipotentPart::NG, p, rng)?;
    let b = random_unipotent(n, m, UnipotentPart::NG, p, rng)?;
    Ok(&(&(&SympMatrix::torus(n, &t)? * &a) * &w) * &b)
}

fn product<'a>(xs: impl Iterator<Item = &'a Q>) -> Q {
    xs.fold(Q::one(), |acc, x| acc * x)
}

type Sampler = fn(usize, usize, u64, &mut ChaCha8Rng) -> Result<bool>;

fn alpha_unipotent(n: usize, m: usize, p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let g = random_bruhat(n, m, p, rng)?;
    let n1 = random_unipotent(n, m, UnipotentPart::NG, p, rng)?;
    let n2 = random_unipotent(n, m, UnipotentPart::NG, p, rng)?;
    let h = &(&n1 * &g) * &n2;
    (1..=n).try_fold(true, |ok, k| Ok(ok && alpha_k(&h, k)? == alpha_k(&g, k)?))
}

fn alpha_torus(n: usize, m: usize, p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let g = random_bruhat(n, m, p, rng)?;
    let (t, _) = random_torus(n, p, rng);
    let (s, _) = random_torus(n, p, rng);
    let h = &(&SympMatrix::torus(n, &t)? * &g) * &SympMatrix::torus(n, &s)?;
    (1..=n).try_fold(true, |ok, k| {
        let f = product(s[..k].iter()) / product(t[..k].iter());
        Ok(ok && alpha_k(&h, k)? == f * alpha_k(&g, k)?)
    })
}

fn beta_left(n: usize, m: usize, p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let g = random_bruhat(n, m, p, rng)?;
    let h = &random_unipotent(n, m, UnipotentPart::NG, p, rng)? * &g;
    (1..=m).try_fold(true, |ok, l| Ok(ok && beta_l(&h, m, l)? == beta_l(&g, m, l)?))
}

fn beta_right(n: usize, m: usize, p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let g = random_bruhat(n, m, p, rng)?;
    let n2 = random_unipotent(n, m, UnipotentPart::NMJ, p, rng)?;
    let u = random_unipotent(n, m, UnipotentPart::U, p, rng)?;
    let h = &(&g * &n2) * &u;
    (1..=m).try_fold(true, |ok, l| Ok(ok && beta_l(&h, m, l)? == beta_l(&g, m, l)?))
}

fn beta_torus(n: usize, m: usize, p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let g = random_bruhat(n, m, p, rng)?;
    let (t, _) = random_torus(n, p, rng);
    let (s, _) = random_torus(m, p, rng);
    let h = &(&SympMatrix::torus(n, &t)? * &g) * &SympMatrix::torus(n, &s)?;
    (1..=m).try_fold(true, |ok, l| {
        let f =
            product(s[..l].iter()) / (product(t[..n - m].iter()) * product(t[n - m..n - m + l - 1].iter()));
        Ok(ok && beta_l(&h, m, l)? == f * beta_l(&g, m, l)?)
    })
}

fn beta_section(n: usize, m: usize, _p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let r: Vec<Q> = (0..m)
        .map(|_| {
            if rng.gen_bool(0.25) {
                Q::zero()
            } else {
                random_rational(rng)
            }
        })
        .collect();
    let g = &SympMatrix::w0(n) * &SympMatrix::x_element(n, &r)?;
    (1..=m).try_fold(true, |ok, l| {
        let b = beta_l(&g, m, l)?;
        Ok(ok && (b == r[l - 1] || b == -r[l - 1].clone()))
    })
}

fn membership(n: usize, m: usize, p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    // open cell elements are members; w0 X(r) with some r_l = 0 is not
    let sample = random_open_cell(n, m, p, rng)?;
    let inside = factor_valuations(&sample.g, m, p)?.membership;
    let mut r: Vec<Q> = (0..m).map(|_| Q::one()).collect();
    if m > 0 {
        r[rng.gen_range(0..m)] = Q::zero();
    }
    let g = &SympMatrix::w0(n) * &SympMatrix::x_element(n, &r)?;
    let outside = factor_valuations(&g, m, p)?.membership;
    Ok(inside && (m == 0 || !outside))
}

fn valuations(n: usize, m: usize, p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let sample = random_open_cell(n, m, p, rng)?;
    let f = factor_valuations(&sample.g, m, p)?;
    Ok(f.membership && f.t == sample.t_val && f.s == sample.s_val)
}

fn kernel(n: usize, m: usize, p: u64, rng: &mut ChaCha8Rng) -> Result<bool> {
    let sample = random_open_cell(n, m, p, rng)?;
    let chi: Vec<Q> = (0..n).map(|_| random_rational(rng)).collect();
    let xi: Vec<Q> = (0..m).map(|_| random_rational(rng)).collect();
    let expect = kernel_from_torus(n, m, &sample.t_val, &sample.s_val, &chi, &xi);
    Ok(abs_cell_kernel(&sample.g, m, &chi, &xi, p)? == CellKernel::QPower(expect))
}

fn run(
    name: &'static str,
    f: Sampler,
    n: usize,
    m: usize,
    p: u64,
    seed: u64,
    samples: usize,
) -> Result<PropertyCheck> {
    let results = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ name.len() as u64,
            );
            f(n, m, p, &mut rng)
        })
        .collect::<Result<Vec<bool>>>()?;
    let first_failure = results.iter().position(|ok| !ok);
    Ok(PropertyCheck {
        name,
        cases: samples,
        failures: results.iter().filter(|ok| !**ok).count(),
        first_failure,
    })
}

/// Among all Weyl representatives only `w_0` has every `alpha_k` nonzero.
fn alpha_weyl(n: usize) -> Result<PropertyCheck> {
    let group = enumerate(n)?;
    let longest = SignedPerm::longest(n);
    let mut failures = 0;
    let mut first_failure = None;
    for (i, w) in group.iter().enumerate() {
        let g = SympMatrix::weyl_element(w);
        let all_nonzero = (1..=n).try_fold(true, |ok, k| Ok::<_, Error>(ok && !alpha_k(&g, k)?.is_zero()))?;
        if all_nonzero != (*w == longest) {
            failures += 1;
            first_failure.get_or_insert(i);
        }
    }
    Ok(PropertyCheck {
        name: "alpha_weyl_criterion",
        cases: group.len(),
        failures,
        first_failure,
    })
}

/// Runs every cell property on `samples` seeded elements per check.
pub fn verify_cells(n: usize, m: usize, p: u64, samples: usize, seed: u64) -> Result<CellReport> {
    if n < m + 1 {
        return Err(Error::Rank(format!("need n >= m+1, got n={n}, m={m}")));
    }
    if p < 3 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::Invalid(format!("{p} is not an odd prime")));
    }
    let table: [(&'static str, Sampler); 9] = [
        ("alpha_unipotent_invariance", alpha_unipotent),
        ("alpha_torus_equivariance", alpha_torus),
        ("beta_left_invariance", beta_left),
        ("beta_right_invariance", beta_right),
        ("beta_torus_equivariance", beta_torus),
        ("beta_standard_section", beta_section),
        ("open_cell_membership", membership),
        ("factor_valuations", valuations),
        ("abs_cell_kernel", kernel),
    ];
    let mut checks = vec![alpha_weyl(n)?];
    for (name, f) in table {
        checks.push(run(name, f, n, m, p, seed, samples)?);
    }
    let all_passed = checks.iter().all(|c| c.failures == 0);
    Ok(CellReport {
        n,
        m,
        p,
        seed,
        checks,
        all_passed,
    })
}
