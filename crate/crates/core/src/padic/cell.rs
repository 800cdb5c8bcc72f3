use super::matrix::{RootKind, SympMatrix};
use super::valued::valuation;
use crate::ratfun::Q;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

fn check_k(what: &'static str, k: usize, bound: usize) -> Result<()> {
    if k == 0 || k > bound {
        return Err(Error::IndexOutOfRange {
            what,
            index: k,
            bound,
        });
    }
    Ok(())
}

/// `alpha_k(g) = Delta_{I_k, J_k}(g)` with `I_k = {2n+1-k..2n}`, `J_k = {1..k}`.
pub fn alpha_k(g: &SympMatrix, k: usize) -> Result<Q> {
    let n = g.rank();
    check_k("alpha index k", k, n)?;
    let rows: Vec<usize> = (2 * n + 1 - k..=2 * n).collect();
    let cols: Vec<usize> = (1..=k).collect();
    g.minor(&rows, &cols)
}

/// `beta_l(g) = Delta_{I_{n-m+l-1}, J'_l}(g)`, where `J'_l = {1..n-m+l}`
/// with `n-m` removed.
pub fn beta_l(g: &SympMatrix, m: usize, l: usize) -> Result<Q> {
    let n = g.rank();
    if n < m + 1 {
        return Err(Error::Rank(format!("need n >= m+1, got n={n}, m={m}")));
    }
    check_k("beta index l", l, m)?;
    let k = n - m + l - 1;
    let rows: Vec<usize> = (2 * n + 1 - k..=2 * n).collect();
    let cols: Vec<usize> = (1..=n - m + l).filter(|&c| c != n - m).collect();
    g.minor(&rows, &cols)
}

/// Open-cell membership and torus valuations: `|t_i| = q^{-t[i]}`, `|s_j| = q^{-s[j]}`.
/// `t` and `s` are empty when `membership` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellFactorization {
    pub t: Vec<i64>,
    pub s: Vec<i64>,
    pub membership: bool,
}

struct CellValuations {
    alpha: Vec<i64>,
    beta: Vec<i64>,
}

fn cell_valuations(g: &SympMatrix, m: usize, p: u64) -> Result<Option<CellValuations>> {
    let n = g.rank();
    let mut alpha = Vec::with_capacity(n);
    for k in 1..=n {
        match valuation(&alpha_k(g, k)?, p) {
            Some(v) => alpha.push(v),
            None => return Ok(None),
        }
    }
    let mut beta = Vec::with_capacity(m);
    for l in 1..=m {
        match valuation(&beta_l(g, m, l)?, p) {
            Some(v) => beta.push(v),
            None => return Ok(None),
        }
    }
    Ok(Some(CellValuations { alpha, beta }))
}

pub fn factor_valuations(g: &SympMatrix, m: usize, p: u64) -> Result<CellFactorization> {
    let n = g.rank();
    let Some(CellValuations { alpha, beta }) = cell_valuations(g, m, p)? else {
        return Ok(CellFactorization {
            t: vec![],
            s: vec![],
            membership: false,
        });
    };
    // one-based accessors
    let a = |k: usize| alpha[k - 1];
    let b = |l: usize| beta[l - 1];
    let t = (1..=n)
        .map(|i| {
            if i == 1 {
                -a(1)
            } else if i <= n - m {
                a(i - 1) - a(i)
            } else {
                b(i - (n - m)) - a(i)
            }
        })
        .collect();
    let s = (1..=m).map(|j| b(j) - a(n - m + j - 1)).collect();
    Ok(CellFactorization {
        t,
        s,
        membership: true,
    })
}

/// `|K_{chi,xi,psi}(g)|`: zero off the open cell, otherwise `q^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellKernel {
    Zero,
    QPower(Q),
}

/// Product of `|alpha_k|`, `|beta_l|` powers; `chi_re`, `xi_re` are the real
/// parts of the characters (exact rationals).
///
/// The middle product pairs `chi_{n-m-1+j} - xi_j - 1/2` with
/// `alpha_{n-m-1+j}`; this is the indexing under which the kernel agrees
/// with `chi^{-1} delta^{1/2}(b_G) xi delta^{-1/2}(b_M)` on constructed elements.
pub fn abs_cell_kernel(g: &SympMatrix, m: usize, chi_re: &[Q], xi_re: &[Q], p: u64) -> Result<CellKernel> {
    let n = g.rank();
    if chi_re.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: chi_re.len(),
        });
    }
    if xi_re.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            got: xi_re.len(),
        });
    }
    let Some(CellValuations { alpha, beta }) = cell_valuations(g, m, p)? else {
        return Ok(CellKernel::Zero);
    };
    let a = |k: usize| Q::from_integer(BigInt::from(-alpha[k - 1]));
    let b = |l: usize| Q::from_integer(BigInt::from(-beta[l - 1]));
    let chi = |i: usize| chi_re[i - 1].clone();
    let xi = |j: usize| xi_re[j - 1].clone();
    let one = Q::one();
    let half = Q::new(1.into(), 2.into());
    let mut e = Q::zero();
    for i in 1..n - m {
        e += a(i) * (chi(i) - chi(i + 1) - &one);
    }
    for j in 1..=m {
        e += a(n - m - 1 + j) * (chi(n - m - 1 + j) - xi(j) - &half);
    }
    e += a(n) * (chi(n) - &one);
    for j in 1..=m {
        e += b(j) * (-chi(n - m + j) + xi(j) - &half);
    }
    Ok(CellKernel::QPower(e))
}

/// Which unipotent subgroup to sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnipotentPart {
    /// All of `N_G`.
    NG,
    /// `N_{M^J}` without the `X` directions.
    NMJ,
    /// The unipotent radical `U`.
    U,
}

fn roots(n: usize) -> Vec<(RootKind, usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            out.push((RootKind::Minus, a, b));
            out.push((RootKind::Plus, a, b));
        }
        out.push((RootKind::Long, a, a));
    }
    out
}

fn in_part(n: usize, m: usize, part: UnipotentPart, (kind, a, _): (RootKind, usize, usize)) -> bool {
    // first coordinate of the embedded H, one-based
    let h0 = n - m;
    match part {
        UnipotentPart::NG => true,
        UnipotentPart::NMJ => a >= h0 && !(kind == RootKind::Minus && a == h0),
        UnipotentPart::U => a < h0,
    }
}

fn random_unit(p: u64, rng: &mut impl Rng) -> Q {
    loop {
        let a: i64 = rng.gen_range(-9..=9);
        let b: i64 = rng.gen_range(1..=9);
        if a.rem_euclid(p as i64) != 0 && b % p as i64 != 0 {
            return Q::new(a.into(), b.into());
        }
    }
}

fn p_power(p: u64, e: i64) -> Q {
    Q::from_integer(BigInt::from(p)).pow(e as i32)
}

/// `a/b * p^e` with `|a|, b <= 9`, `p` not dividing `b`, `-2 <= e <= 2`.
fn random_entry(p: u64, rng: &mut impl Rng) -> Q {
    let b = loop {
        let b: i64 = rng.gen_range(1..=9);
        if b % p as i64 != 0 {
            break b;
        }
    };
    let a: i64 = rng.gen_range(-9..=9);
    Q::new(a.into(), b.into()) * p_power(p, rng.gen_range(-2..=2))
}

/// Product of random root elements over the roots of `part`.
pub fn random_unipotent(
    n: usize,
    m: usize,
    part: UnipotentPart,
    p: u64,
    rng: &mut impl Rng,
) -> Result<SympMatrix> {
    let mut g = SympMatrix::identity(n);
    for r in roots(n) {
        if in_part(n, m, part, r) {
            g = &g * &SympMatrix::root_element(n, r.0, r.1, r.2, random_entry(p, rng))?;
        }
    }
    Ok(g)
}

/// `k` torus entries with valuations in `[-3, 3]`; returns entries and valuations.
pub fn random_torus(k: usize, p: u64, rng: &mut impl Rng) -> (Vec<Q>, Vec<i64>) {
    (0..k)
        .map(|_| {
            let e = rng.gen_range(-3..=3);
            (random_unit(p, rng) * p_power(p, e), e)
        })
        .unzip()
}

/// `g = d_n(t) n_G w_0 lambda d_m(s) n_{M^J} u` with its ingredients.
#[derive(Clone, Debug)]
pub struct OpenCellSample {
    pub g: SympMatrix,
    pub t: Vec<Q>,
    pub s: Vec<Q>,
    pub t_val: Vec<i64>,
    pub s_val: Vec<i64>,
}

pub fn random_open_cell(n: usize, m: usize, p: u64, rng: &mut impl Rng) -> Result<OpenCellSample> {
    if n < m + 1 {
        return Err(Error::Rank(format!("need n >= m+1, got n={n}, m={m}")));
    }
    let (t, t_val) = random_torus(n, p, rng);
    let (s, s_val) = random_torus(m, p, rng);
    let factors = [
        SympMatrix::torus(n, &t)?,
        random_unipotent(n, m, UnipotentPart::NG, p, rng)?,
        SympMatrix::w0(n),
        SympMatrix::lambda(n, m)?,
        SympMatrix::torus(n, &s)?,
        random_unipotent(n, m, UnipotentPart::NMJ, p, rng)?,
        random_unipotent(n, m, UnipotentPart::U, p, rng)?,
    ];
    let g = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| &acc * f);
    Ok(OpenCellSample {
        g,
        t,
        s,
        t_val,
        s_val,
    })
}
