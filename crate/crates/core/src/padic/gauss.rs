use super::valued::{fractional_part, valuation};
use crate::ratfun::Q;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

/// `int_{|t| = q^{-j}} psi(t^{-1} x) dt` for `|x| = q^{-i}`, conductor of `psi` zero.
pub fn gauss_shell(i: i64, j: i64, q: u64) -> Q {
    let qq = Q::from_integer(BigInt::from(q));
    if j <= i {
        qq.pow(-j as i32) * (Q::one() - qq.recip())
    } else if j == i + 1 {
        -qq.pow(-(i + 2) as i32)
    } else {
        Q::from_integer(0.into())
    }
}

/// Largest residue ring the brute-force sum will walk.
const MAX_RESIDUES: u64 = 5_000_000;

/// Direct character sum over the shell `p^j O^x` modulo `p^{j+M}`,
/// `M = max(j - v(x), 1)`, each class weighted by its measure `q^{-(j+M)}`.
pub fn gauss_shell_character_sum(x: &Q, j: i64, p: u64) -> Result<Complex64> {
    let i = valuation(x, p).ok_or_else(|| Error::Invalid("x must be nonzero".into()))?;
    let depth = (j - i).max(1) as u32;
    let modulus = p
        .checked_pow(depth)
        .filter(|&m| m <= MAX_RESIDUES)
        .ok_or_else(|| Error::SizeGuard(format!("p^{depth} residues")))?;
    let pj = Q::from_integer(BigInt::from(p)).pow(j as i32);
    let sum: Complex64 = (1..modulus)
        .into_par_iter()
        .filter(|u| u % p != 0)
        .map(|u| {
            let t = &pj * Q::from_integer(BigInt::from(u));
            let phase = fractional_part(&(x / t), p);
            let angle = std::f64::consts::TAU * phase.to_f64().unwrap_or(f64::NAN);
            Complex64::from_polar(1.0, angle)
        })
        .sum();
    let measure = (p as f64).powi(-(j as i32) - depth as i32);
    Ok(sum * measure)
}
