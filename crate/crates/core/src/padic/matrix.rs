use crate::ratfun::Q;
use crate::weyl::SignedPerm;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::ops::Mul;

/// Largest `|I|` accepted by [`minor_expansion_check`].
pub const EXPANSION_SIZE_LIMIT: usize = 3;

/// A `2n x 2n` matrix over `Q`, meant to lie in `Sp_{2n}` for the form
/// `[[0, w], [-w, 0]]` with `w` the antidiagonal of ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SympMatrix {
    n: usize,
    rows: Vec<Vec<Q>>,
}

/// Root subgroup shapes, with `abar = 2n+1-a`:
/// `Minus`: `I + c(E_ab - E_{bbar,abar})`, `Plus`: `I + c(E_{a,bbar} + E_{b,abar})`,
/// `Long`: `I + c E_{a,abar}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    Minus,
    Plus,
    Long,
}

impl SympMatrix {
    /// Wraps raw rows. With `check`, rejects non-symplectic input.
    pub fn from_rows(rows: Vec<Vec<Q>>, check: bool) -> Result<Self> {
        let dim = rows.len();
        if !dim.is_multiple_of(2) || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid(format!(
                "matrix must be square of even size, got {dim} rows"
            )));
        }
        let g = SympMatrix { n: dim / 2, rows };
        if check && !g.is_symplectic() {
            return Err(Error::Invalid("matrix is not symplectic".into()));
        }
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        let dim = 2 * n;
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        SympMatrix { n, rows }
    }

    /// The Gram matrix of the form; also the representative of `w_0^G`.
    pub fn form(n: usize) -> Self {
        let mut g = Self::zero(n);
        let last = 2 * n - 1;
        for i in 0..n {
            g.rows[i][last - i] = Q::one();
            g.rows[last - i][i] = -Q::one();
        }
        g
    }

    pub fn w0(n: usize) -> Self {
        Self::form(n)
    }

    fn zero(n: usize) -> Self {
        SympMatrix {
            n,
            rows: vec![vec![Q::zero(); 2 * n]; 2 * n],
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// One-based entry access.
    pub fn entry(&self, i: usize, j: usize) -> &Q {
        &self.rows[i - 1][j - 1]
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim();
        let rows = (0..d)
            .map(|i| (0..d).map(|j| self.rows[j][i].clone()).collect())
            .collect();
        SympMatrix { n: self.n, rows }
    }

    pub fn is_symplectic(&self) -> bool {
        let j = Self::form(self.n);
        &(&self.transpose() * &j) * self == j
    }

    fn bar(&self, a: usize) -> usize {
        2 * self.n - 1 - a
    }

    /// Root subgroup element `x_alpha(c)`; `a`, `b` one-based with `a < b`
    /// (`b` ignored for `Long`).
    pub fn root_element(n: usize, kind: RootKind, a: usize, b: usize, c: Q) -> Result<Self> {
        let in_range = |i: usize| (1..=n).contains(&i);
        if !in_range(a) || (kind != RootKind::Long && (!in_range(b) || b <= a)) {
            return Err(Error::Invalid(format!("bad root indices a={a}, b={b} for n={n}")));
        }
        let mut g = Self::identity(n);
        let (a, b) = (a - 1, b.wrapping_sub(1));
        let (ab, bb) = (g.bar(a), g.bar(b.min(n - 1)));
        match kind {
            RootKind::Long => g.rows[a][ab] += c,
            RootKind::Minus => {
                g.rows[a][b] += c.clone();
                g.rows[bb][ab] -= c;
            }
            RootKind::Plus => {
                g.rows[a][bb] += c.clone();
                g.rows[b][ab] += c;
            }
        }
        Ok(g)
    }

    /// `d_k(t) = diag(I_{n-k}, t_1..t_k, t_k^{-1}..t_1^{-1}, I_{n-k})`.
    pub fn torus(n: usize, t: &[Q]) -> Result<Self> {
        let k = t.len();
        if k > n {
            return Err(Error::LengthMismatch { expected: n, got: k });
        }
        if t.iter().any(Zero::is_zero) {
            return Err(Error::Invalid("torus entries must be nonzero".into()));
        }
        let mut g = Self::identity(n);
        for (i, ti) in t.iter().enumerate() {
            let a = n - k + i;
            let ab = g.bar(a);
            g.rows[a][a] = ti.clone();
            g.rows[ab][ab] = ti.recip();
        }
        Ok(g)
    }

    /// `J(x, y, z)` in `H = Sp_{2m+2}`, embedded in `G` on the middle block.
    pub fn heisenberg(n: usize, x: &[Q], y: &[Q], z: Q) -> Result<Self> {
        let m = x.len();
        if y.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: y.len(),
            });
        }
        if n < m + 1 {
            return Err(Error::Rank(format!("need n >= m+1, got n={n}, m={m}")));
        }
        let hn = 2 * m + 2;
        let off = n - m - 1;
        let mut g = Self::identity(n);
        let mut set = |i: usize, j: usize, c: Q| g.rows[off + i][off + j] = c;
        for b in 0..m {
            set(0, 1 + b, x[b].clone());
            set(0, hn - 2 - b, y[b].clone());
            set(1 + b, hn - 1, y[b].clone());
            set(hn - 2 - b, hn - 1, -x[b].clone());
        }
        set(0, hn - 1, z);
        Ok(g)
    }

    /// `X(r) = J(r, 0, 0)`.
    pub fn x_element(n: usize, r: &[Q]) -> Result<Self> {
        Self::heisenberg(n, r, &vec![Q::zero(); r.len()], Q::zero())
    }

    /// `lambda = X(1, .., 1)`.
    pub fn lambda(n: usize, m: usize) -> Result<Self> {
        Self::x_element(n, &vec![Q::one(); m])
    }

    /// Monomial representative of a signed permutation.
    pub fn weyl_element(w: &SignedPerm) -> Self {
        let n = w.rank();
        let mut g = Self::zero(n);
        for i in 0..n {
            let pi = w.image()[i];
            let (bi, bpi) = (g.bar(i), g.bar(pi));
            if w.flips()[i] > 0 {
                g.rows[pi][i] = Q::one();
                g.rows[bpi][bi] = Q::one();
            } else {
                g.rows[bpi][i] = Q::one();
                g.rows[pi][bi] = -Q::one();
            }
        }
        g
    }

    /// `Delta_{I,J}(g)` for one-based index tuples.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Q> {
        if rows.len() != cols.len() {
            return Err(Error::LengthMismatch {
                expected: rows.len(),
                got: cols.len(),
            });
        }
        let d = self.dim();
        for &i in rows.iter().chain(cols) {
            if i == 0 || i > d {
                return Err(Error::IndexOutOfRange {
                    what: "minor index",
                    index: i,
                    bound: d,
                });
            }
        }
        let sub: Vec<Vec<Q>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.rows[i - 1][j - 1].clone()).collect())
            .collect();
        Ok(determinant(sub))
    }
}

/// Gaussian elimination over `Q`.
pub(crate) fn determinant(mut a: Vec<Vec<Q>>) -> Q {
    let k = a.len();
    let mut det = Q::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..k {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for j in c..k {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

impl Mul for &SympMatrix {
    type Output = SympMatrix;
    fn mul(self, o: &SympMatrix) -> SympMatrix {
        assert_eq!(self.n, o.n, "rank mismatch");
        let d = self.dim();
        let mut out = SympMatrix::zero(self.n);
        for i in 0..d {
            for k in 0..d {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    if !o.rows[k][j].is_zero() {
                        out.rows[i][j] += a * &o.rows[k][j];
                    }
                }
            }
        }
        out
    }
}

/// Checks `Delta_{I,J}(g1 g2 g3) = sum_{A,C} f_{I,A}(g1) Delta_{A,C}(g2) f_{C,J}(g3)`,
/// where `f_{I,A}` is the product of entries `g_{i_s, a_s}`. Tuples with a
/// repeated entry are skipped since the middle minor vanishes on them.
pub fn minor_expansion_check(
    g1: &SympMatrix,
    g2: &SympMatrix,
    g3: &SympMatrix,
    rows: &[usize],
    cols: &[usize],
) -> Result<bool> {
    let k = rows.len();
    if k > EXPANSION_SIZE_LIMIT {
        return Err(Error::SizeGuard(format!(
            "|I| = {k} exceeds {EXPANSION_SIZE_LIMIT}"
        )));
    }
    if g1.n != g2.n || g2.n != g3.n {
        return Err(Error::Invalid("matrices are not conformable".into()));
    }
    let direct = (&(g1 * g2) * g3).minor(rows, cols)?;
    let d = g1.dim();
    let tuples = distinct_tuples(d, k);
    let f = |g: &SympMatrix, r: &[usize], c: &[usize]| -> Q {
        r.iter()
            .zip(c)
            .map(|(&i, &j)| g.rows[i - 1][j - 1].clone())
            .product()
    };
    let mut total = Q::zero();
    for a in &tuples {
        let fa = f(g1, rows, a);
        if fa.is_zero() {
            continue;
        }
        for c in &tuples {
            let fc = f(g3, c, cols);
            if fc.is_zero() {
                continue;
            }
            total += &fa * &g2.minor(a, c)? * fc;
        }
    }
    Ok(total == direct)
}

fn distinct_tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for i in (1..=d).filter(|i| !t.contains(i)) {
                let mut t = t.clone();
                t.push(i);
                next.push(t);
            }
        }
        out = next;
    }
    out
}
