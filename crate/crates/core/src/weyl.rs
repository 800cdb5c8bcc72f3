//! Hyperoctahedral Weyl groups `W(C_k)`: signed permutations, their sign
//! character, the action on character variables and antisymmetrizers.

use crate::ratfun::{Exponents, Poly, RatFun, Vars};
use crate::{Error, Result};

/// Default bound on `k` for exact enumeration (`2^6 * 6! = 46080`).
pub const DEFAULT_GUARD: usize = 6;

/// Sends coordinate `i` to `flips[i] * e_{image[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    image: Vec<usize>,
    flips: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(k: usize) -> Self {
        SignedPerm {
            image: (0..k).collect(),
            flips: vec![1; k],
        }
    }

    /// Zero-based image and `+-1` flips.
    pub fn new(image: Vec<usize>, flips: Vec<i8>) -> Result<Self> {
        let k = image.len();
        if flips.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: flips.len(),
            });
        }
        let mut seen = vec![false; k];
        for &i in &image {
            if i >= k || seen[i] {
                return Err(Error::Invalid(format!("{image:?} is not a permutation")));
            }
            seen[i] = true;
        }
        if flips.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid(format!("flips {flips:?} must be +-1")));
        }
        Ok(SignedPerm { image, flips })
    }

    /// Simple reflection `s_i` (one-based): swaps `i, i+1` for `i < k`,
    /// flips coordinate `k` for `i = k`.
    pub fn simple_reflection(k: usize, i: usize) -> Result<Self> {
        if i == 0 || i > k {
            return Err(Error::IndexOutOfRange {
                what: "simple reflection",
                index: i,
                bound: k,
            });
        }
        let mut w = Self::identity(k);
        if i < k {
            w.image.swap(i - 1, i);
        } else {
            w.flips[k - 1] = -1;
        }
        Ok(w)
    }

    /// `w_0 = -1`: identity permutation with every coordinate flipped.
    pub fn longest(k: usize) -> Self {
        SignedPerm {
            image: (0..k).collect(),
            flips: vec![-1; k],
        }
    }

    pub fn rank(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn flips(&self) -> &[i8] {
        &self.flips
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j) && self.flips.iter().all(|&s| s == 1)
    }

    /// `self ∘ other`, acting first by `other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        assert_eq!(self.rank(), other.rank());
        let k = self.rank();
        let image = (0..k).map(|i| self.image[other.image[i]]).collect();
        let flips = (0..k)
            .map(|i| other.flips[i] * self.flips[other.image[i]])
            .collect();
        SignedPerm { image, flips }
    }

    pub fn inverse(&self) -> SignedPerm {
        let k = self.rank();
        let mut image = vec![0; k];
        let mut flips = vec![1; k];
        for i in 0..k {
            image[self.image[i]] = i;
            flips[self.image[i]] = self.flips[i];
        }
        SignedPerm { image, flips }
    }

    /// Determinant of the reflection representation.
    pub fn sgn(&self) -> i32 {
        let k = self.rank();
        let mut s = 1;
        for i in 0..k {
            for j in i + 1..k {
                if self.image[i] > self.image[j] {
                    s = -s;
                }
            }
        }
        for &f in &self.flips {
            s *= f as i32;
        }
        s
    }

    /// Linear action on `Z^k`: `(w v)_{image(i)} = flips_i * v_i`.
    pub fn act_on_vector(&self, v: &[i32]) -> Vec<i32> {
        let mut out = vec![0; v.len()];
        for (i, &a) in v.iter().enumerate() {
            out[self.image[i]] = self.flips[i] as i32 * a;
        }
        out
    }

    /// Action on multiplicative points: coordinates move with the
    /// permutation and flipped ones are inverted.
    pub fn act_on_point<T: Clone>(&self, point: &[T], invert: impl Fn(&T) -> T) -> Vec<T> {
        let mut out = point.to_vec();
        for (i, z) in point.iter().enumerate() {
            out[self.image[i]] = if self.flips[i] == 1 { z.clone() } else { invert(z) };
        }
        out
    }

    /// Exponent vector of `x^e` composed with the action, i.e. of
    /// `(w·x)^e`; equals `w^{-1} e`.
    pub fn pull_back(&self, e: &[i32]) -> Vec<i32> {
        (0..e.len())
            .map(|i| self.flips[i] as i32 * e[self.image[i]])
            .collect()
    }

    /// Positive roots sent to negative roots.
    pub fn inversion_set(&self) -> Vec<Vec<i32>> {
        positive_roots(self.rank())
            .into_iter()
            .filter(|a| !is_positive(&self.act_on_vector(a)))
            .collect()
    }

    pub fn length(&self) -> usize {
        self.inversion_set().len()
    }
}

/// Positive roots of `C_k`: `e_a - e_b`, `e_a + e_b` (`a < b`), `2 e_i`.
pub fn positive_roots(k: usize) -> Vec<Vec<i32>> {
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
    }
    for i in 0..k {
        let mut r = vec![0; k];
        r[i] = 2;
        out.push(r);
    }
    out
}

pub fn is_positive(root: &[i32]) -> bool {
    root.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// Coroot `2 alpha / (alpha, alpha)`.
pub fn coroot(root: &[i32]) -> Vec<i32> {
    let norm: i32 = root.iter().map(|c| c * c).sum();
    root.iter().map(|c| 2 * c / norm).collect()
}

/// All `2^k k!` elements: images in lexicographic order, flips in binary
/// order within each image.
pub fn enumerate(k: usize) -> Result<Vec<SignedPerm>> {
    enumerate_with_guard(k, DEFAULT_GUARD)
}

pub fn enumerate_with_guard(k: usize, guard: usize) -> Result<Vec<SignedPerm>> {
    if k > guard {
        return Err(Error::GroupTooLarge { k, limit: guard });
    }
    let mut out = Vec::new();
    for image in permutations(k) {
        for mask in 0u32..(1 << k) {
            let flips = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPerm {
                image: image.clone(),
                flips,
            });
        }
    }
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn simple_reflections(k: usize) -> Vec<SignedPerm> {
    (1..=k)
        .map(|i| SignedPerm::simple_reflection(k, i).expect("in range"))
        .collect()
}

/// `w eps = eps` only for `w = 1`: entries nonzero with distinct absolute values.
pub fn is_regular(eps: &[i32]) -> bool {
    let mut abs: Vec<i32> = eps.iter().map(|e| e.abs()).collect();
    abs.sort_unstable();
    abs.iter().all(|&a| a != 0) && abs.windows(2).all(|w| w[0] != w[1])
}

/// Which variable block of a [`Vars`] layout a Weyl group acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// `x_1..x_n`, acted on by `W_G`.
    X,
    /// `y_1..y_m`, acted on by `W_M`.
    Y,
}

impl Block {
    pub fn offset(self, vars: Vars) -> usize {
        match self {
            Block::X => vars.x(0),
            Block::Y => vars.y(0),
        }
    }

    pub fn rank(self, vars: Vars) -> usize {
        match self {
            Block::X => vars.n,
            Block::Y => vars.m,
        }
    }
}

/// Exponents of `(w·vars)^e` with `w` acting on one block.
pub fn pull_back_block(w: &SignedPerm, vars: Vars, block: Block, e: &[i32]) -> Exponents {
    let off = block.offset(vars);
    let k = w.rank();
    let mut out = Exponents::from_slice(e);
    for i in 0..k {
        out[off + i] = w.flips[i] as i32 * e[off + w.image[i]];
    }
    out
}

/// Exponents of `((w, w')·vars)^e` for the product group `W_G x W_M`.
pub fn pull_back_pair(w: &SignedPerm, w2: &SignedPerm, vars: Vars, e: &[i32]) -> Exponents {
    let once = pull_back_block(w, vars, Block::X, e);
    pull_back_block(w2, vars, Block::Y, &once)
}

/// `sum_w sgn(w) p(w·vars)` over the group acting on `block`.
pub fn antisymmetrize_poly(p: &Poly, block: Block) -> Result<Poly> {
    let vars = p.vars();
    let mut acc = Poly::zero(vars);
    for w in enumerate(block.rank(vars))? {
        let q = p.map_exponents(|e| pull_back_block(&w, vars, block, e));
        acc = if w.sgn() > 0 { &acc + &q } else { &acc - &q };
    }
    Ok(acc)
}

/// `sum_w sgn(w) f(w)` for an arbitrary term builder.
pub fn antisymmetrize(vars: Vars, k: usize, f: impl Fn(&SignedPerm) -> Result<RatFun>) -> Result<RatFun> {
    let mut terms = Vec::new();
    for w in enumerate(k)? {
        let t = f(&w)?;
        terms.push(if w.sgn() > 0 { t } else { -&t });
    }
    Ok(RatFun::sum(vars, &terms))
}
