use num_complex::Complex64;
use smallvec::SmallVec;
use std::ops::Mul;

/// Exponent vector storage; eight inline slots cover every exact context.
pub type Exponents = SmallVec<[i32; 8]>;

/// A Laurent monomial, ordered lexicographically by its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(smallvec::smallvec![0; len])
    }

    pub fn from_exponents(e: &[i32]) -> Self {
        Monomial(Exponents::from_slice(e))
    }

    pub fn from_vec(e: Exponents) -> Self {
        Monomial(e)
    }

    /// The single variable at `slot` raised to `e`.
    pub fn var(len: usize, slot: usize, e: i32) -> Self {
        let mut m = Self::one(len);
        m.0[slot] = e;
        m
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i32) -> Self {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn div(&self, other: &Monomial) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Sign of the first nonzero exponent, 0 for the unit monomial.
    pub fn orientation(&self) -> i32 {
        self.0.iter().find(|&&e| e != 0).map_or(0, |e| e.signum())
    }

    pub fn map(&self, f: impl Fn(&[i32]) -> Exponents) -> Self {
        Monomial(f(&self.0))
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(point)
            .filter(|(e, _)| **e != 0)
            .fold(Complex64::new(1.0, 0.0), |acc, (&e, z)| acc * z.powi(e))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}
