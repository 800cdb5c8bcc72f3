use crate::ratfun::Q;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul};

/// `v_p(a)`, or `None` for `a = 0`.
pub fn valuation(a: &Q, p: u64) -> Option<i64> {
    if a.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |x: &BigInt| {
        let mut x = x.clone();
        let mut k = 0;
        loop {
            let (d, r) = x.div_rem(&p);
            if !r.is_zero() {
                return k;
            }
            x = d;
            k += 1;
        }
    };
    Some(count(a.numer()) - count(a.denom()))
}

/// `{a}_p`: the unique `r / p^k` in `[0, 1)` with `a - {a}_p` a `p`-adic integer.
pub fn fractional_part(a: &Q, p: u64) -> Q {
    let v = match valuation(a, p) {
        None => return Q::zero(),
        Some(v) if v >= 0 => return Q::zero(),
        Some(v) => v,
    };
    let pk = BigInt::from(p).pow((-v) as u32);
    // a = num / (rest * p^k) with p not dividing rest
    let rest = a.denom() / &pk;
    let inv = mod_inverse(&rest.mod_floor(&pk), &pk);
    let r = (a.numer() * inv).mod_floor(&pk);
    Q::new(r, pk)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// A rational number viewed in `Q_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PValued {
    pub value: Q,
    pub prime: u64,
}

impl PValued {
    pub fn new(value: Q, prime: u64) -> Result<Self> {
        if prime < 2 {
            return Err(Error::Invalid(format!("{prime} is not a prime")));
        }
        Ok(PValued { value, prime })
    }

    pub fn valuation(&self) -> Option<i64> {
        valuation(&self.value, self.prime)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `|a| = q^{-v(a)}` as an exact rational.
    pub fn abs(&self) -> Q {
        match self.valuation() {
            None => Q::zero(),
            Some(v) => Q::from_integer(BigInt::from(self.prime)).pow(-v as i32),
        }
    }

    pub fn fractional_part(&self) -> Q {
        fractional_part(&self.value, self.prime)
    }
}

impl Add for &PValued {
    type Output = PValued;
    fn add(self, o: &PValued) -> PValued {
        assert_eq!(self.prime, o.prime, "mixed primes");
        PValued {
            value: &self.value + &o.value,
            prime: self.prime,
        }
    }
}

impl Mul for &PValued {
    type Output = PValued;
    fn mul(self, o: &PValued) -> PValued {
        assert_eq!(self.prime, o.prime, "mixed primes");
        PValued {
            value: &self.value * &o.value,
            prime: self.prime,
        }
    }
}

impl fmt::Display for PValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_negative() {
            write!(f, "({})", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}
