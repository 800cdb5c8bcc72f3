//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's symbolic kernels: values are rebuilt from the
//! defining products at exact rational points.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use shintani::ratfun::{Poly, RatFun};

pub type Q = BigRational;

pub fn q(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

pub fn qi(a: i64) -> Q {
    Q::from_integer(BigInt::from(a))
}

/// Exact point `(v, x_1..x_n, y_1..y_m)`.
#[derive(Clone, Debug)]
pub struct Point {
    pub v: Q,
    pub x: Vec<Q>,
    pub y: Vec<Q>,
}

impl Point {
    pub fn random(n: usize, m: usize, rng: &mut impl Rng) -> Point {
        let v = q(1, rng.gen_range(2..=5));
        let mut r = || loop {
            let a: i64 = rng.gen_range(-13..=13);
            let b: i64 = rng.gen_range(2..=11);
            if a != 0 && a.abs() != b {
                return q(a, b);
            }
        };
        let x = (0..n).map(|_| r()).collect();
        let y = (0..m).map(|_| r()).collect();
        Point { v, x, y }
    }

    /// Slot order of the library: `v`, then `x`, then `y`.
    pub fn slots(&self) -> Vec<Q> {
        let mut s = vec![self.v.clone()];
        s.extend(self.x.iter().cloned());
        s.extend(self.y.iter().cloned());
        s
    }
}

pub fn pow(a: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(a.clone(), e as usize)
    } else {
        num_traits::pow(a.recip(), (-e) as usize)
    }
}

pub fn eval_poly(p: &Poly, at: &[Q]) -> Q {
    p.terms()
        .map(|(mono, c)| {
            mono.exponents()
                .iter()
                .zip(at)
                .fold(c.clone(), |acc, (&e, z)| acc * pow(z, e as i64))
        })
        .fold(Q::zero(), |a, b| a + b)
}

/// `None` when the denominator vanishes at the point.
pub fn eval_ratfun(r: &RatFun, at: &[Q]) -> Option<Q> {
    let d = eval_poly(&r.denominator(), at);
    if d.is_zero() {
        None
    } else {
        Some(eval_poly(r.numerator(), at) / d)
    }
}

/// `zeta` at a point where `q^{-s}` has value `t`: `1 / (1 - t)`.
pub fn zeta(t: &Q) -> Option<Q> {
    let d = Q::one() - t;
    if d.is_zero() {
        None
    } else {
        Some(d.recip())
    }
}

/// All signed permutations as `(image, flips)`, built independently.
pub fn signed_perms(k: usize) -> Vec<(Vec<usize>, Vec<i8>)> {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..k {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in perms(k) {
        for mask in 0..(1u32 << k) {
            let flips = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push((p.clone(), flips));
        }
    }
    out
}

/// `(w x)_{image(i)} = x_i^{flip_i}`.
pub fn act(w: &(Vec<usize>, Vec<i8>), x: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); x.len()];
    for i in 0..x.len() {
        out[w.0[i]] = if w.1[i] > 0 { x[i].clone() } else { x[i].recip() };
    }
    out
}

fn prod(xs: impl IntoIterator<Item = Option<Q>>) -> Option<Q> {
    xs.into_iter().try_fold(Q::one(), |a, b| Some(a * b?))
}

/// `d(chi) = prod_{a<b} zeta(chi_a - chi_b) zeta(chi_a + chi_b) prod zeta(chi_i)`.
pub fn d_oracle(x: &[Q]) -> Option<Q> {
    let k = x.len();
    let mut fs = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            fs.push(zeta(&(&x[a] / &x[b])));
            fs.push(zeta(&(&x[a] * &x[b])));
        }
        fs.push(zeta(&x[a]));
    }
    prod(fs)
}

/// `d'(xi) = prod_{a<b} zeta(xi_a -+ xi_b) prod zeta(2 xi_j)`.
pub fn dprime_oracle(y: &[Q]) -> Option<Q> {
    let k = y.len();
    let mut fs = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            fs.push(zeta(&(&y[a] / &y[b])));
            fs.push(zeta(&(&y[a] * &y[b])));
        }
        fs.push(zeta(&(&y[a] * &y[a])));
    }
    prod(fs)
}

/// `b(chi, xi)` as a product of `zeta^{-1} = 1 - t` factors.
pub fn b_oracle(n: usize, m: usize, v: &Q, x: &[Q], y: &[Q]) -> Q {
    let one = Q::one();
    let mut acc = Q::one();
    for i in 1..=n {
        for j in 1..=m {
            let (xi, yj) = (&x[i - 1], &y[j - 1]);
            if i < j + n - m {
                acc *= &one - v * xi / yj;
            }
            if i > j + n - m {
                acc *= &one - v * yj / xi;
            }
            acc *= &one - v * xi * yj;
        }
    }
    for yj in y {
        acc *= &one - v * yj;
    }
    acc
}

/// `L(d, f)` rebuilt from its defining double Weyl sum.
pub fn l_value_oracle(n: usize, m: usize, d: &[i64], f: &[i64], pt: &Point) -> Option<Q> {
    let v2 = &pt.v * &pt.v;
    let mut pre = pow(&(Q::one() - &v2), m as i64);
    for i in 1..=m {
        pre /= Q::one() - pow(&v2, 2 * i as i64);
    }
    let dg: i64 = f.iter().enumerate().map(|(i, fi)| 2 * fi * (n - i) as i64).sum();
    let dm: i64 = d
        .iter()
        .enumerate()
        .map(|(j, dj)| dj * (2 * (m - j - 1) as i64 + 3))
        .sum();
    let delta = pow(&pt.v, dg + dm);
    let mut total = Q::zero();
    for w in signed_perms(n) {
        let wx = act(&w, &pt.x);
        for w2 in signed_perms(m) {
            let wy = act(&w2, &pt.y);
            let mut term = b_oracle(n, m, &pt.v, &wx, &wy) * d_oracle(&wx)? * dprime_oracle(&wy)?;
            for (i, fi) in f.iter().enumerate() {
                term *= pow(&wx[i], -fi);
            }
            for (j, dj) in d.iter().enumerate() {
                term *= pow(&wy[j], -dj);
            }
            total += term;
        }
    }
    Some(pre * delta * total)
}
