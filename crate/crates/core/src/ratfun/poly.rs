use super::{check_vars, Exponents, Monomial, Vars, Q};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial with exact rational coefficients. No stored
/// coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(vars: Vars) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, Q::one())
    }

    pub fn constant(vars: Vars, c: Q) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn term(vars: Vars, mono: Monomial, c: Q) -> Self {
        debug_assert_eq!(mono.len(), vars.len());
        let mut p = Self::zero(vars);
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(vars);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    /// `1 - mono`.
    pub fn one_minus(vars: Vars, mono: &Monomial) -> Self {
        Self::one(vars).mul_one_minus(mono)
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn single_term(&self) -> Option<(&Monomial, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The constant value when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self
                .single_term()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, mono: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn checked_add(&self, other: &Poly) -> crate::Result<Poly> {
        check_vars(self.vars, other.vars)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Poly) -> crate::Result<Poly> {
        check_vars(self.vars, other.vars)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (m * mono, a.clone())).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, a)| (m * mono, a * c)).collect(),
        }
    }

    /// `self * (1 - mono)` in one pass.
    pub fn mul_one_minus(&self, mono: &Monomial) -> Poly {
        let mut out = self.clone();
        for (m, a) in &self.terms {
            out.add_term(m * mono, -a);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by `1 - mono`, or `None` when it does not divide.
    ///
    /// Terms are grouped along lines `e + k*mono`; on each line the
    /// quotient coefficients are prefix sums and the line total must vanish.
    pub fn div_one_minus(&self, mono: &Monomial) -> Option<Poly> {
        let o = mono.orientation();
        assert!(o != 0, "division by 1 - 1");
        if o < 0 {
            let mi = mono.inv();
            return self.div_one_minus(&mi).map(|q| q.mul_term(&mi, &-Q::one()));
        }
        let step = mono.exponents();
        let p = step.iter().position(|&e| e != 0)?;
        let mp = step[p];
        let mut lines: HashMap<Exponents, Vec<(i32, &Q)>> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents();
            let k = e[p].div_euclid(mp);
            let r: Exponents = e.iter().zip(step).map(|(a, s)| a - k * s).collect();
            lines.entry(r).or_default().push((k, c));
        }
        let mut out = Poly::zero(self.vars);
        for (r, mut pts) in lines {
            pts.sort_by_key(|(k, _)| *k);
            let mut acc = Q::zero();
            for w in 0..pts.len() {
                acc += pts[w].1;
                let upto = if w + 1 < pts.len() { pts[w + 1].0 } else { pts[w].0 };
                if acc.is_zero() {
                    continue;
                }
                if w + 1 == pts.len() {
                    return None;
                }
                for k in pts[w].0..upto {
                    let e: Exponents = r.iter().zip(step).map(|(a, s)| a + k * s).collect();
                    out.terms.insert(Monomial::from_vec(e), acc.clone());
                }
            }
        }
        Some(out)
    }

    /// Exact quotient by an arbitrary nonzero divisor, or `None`.
    ///
    /// Lex leading-term division; the Newton box of the would-be quotient
    /// bounds the loop.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm_d, lc_d) = d.leading()?;
        if d.len() == 1 {
            return Some(self.mul_term(&lm_d.inv(), &lc_d.recip()));
        }
        if d.len() == 2 {
            let (tm, tc) = d.terms.iter().next()?;
            if *tc == -lc_d {
                // d = lc*lm*(1 - tm/lm)
                let q = self.div_one_minus(&tm.div(lm_d))?;
                return Some(q.mul_term(&lm_d.inv(), &lc_d.recip()));
            }
        }
        let len = self.vars.len();
        let (lo_f, hi_f) = self.exponent_box();
        let (lo_d, hi_d) = d.exponent_box();
        let lo: Vec<i32> = (0..len).map(|i| lo_f[i] - lo_d[i]).collect();
        let hi: Vec<i32> = (0..len).map(|i| hi_f[i] - hi_d[i]).collect();
        let mut rem = self.clone();
        let mut q = Poly::zero(self.vars);
        while let Some((lm, lc)) = rem.leading() {
            let tm = lm.div(lm_d);
            if tm
                .exponents()
                .iter()
                .enumerate()
                .any(|(i, &e)| e < lo[i] || e > hi[i])
            {
                return None;
            }
            let tc = lc / lc_d;
            rem = &rem - &d.mul_term(&tm, &tc);
            q.add_term(tm, tc);
        }
        Some(q)
    }

    fn exponent_box(&self) -> (Vec<i32>, Vec<i32>) {
        let len = self.vars.len();
        let mut lo = vec![i32::MAX; len];
        let mut hi = vec![i32::MIN; len];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                lo[i] = lo[i].min(e);
                hi[i] = hi[i].max(e);
            }
        }
        (lo, hi)
    }

    /// Applies a linear change of exponents to every monomial.
    pub fn map_exponents(&self, f: impl Fn(&[i32]) -> Exponents) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.map(&f), c.clone());
        }
        out
    }

    /// Re-embeds into another variable layout through a slot map.
    pub fn relabel(&self, vars: Vars, slot: impl Fn(usize) -> usize) -> Poly {
        let mut out = Poly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = Exponents::from_elem(0, vars.len());
            for (i, &a) in m.exponents().iter().enumerate() {
                e[slot(i)] += a;
            }
            out.add_term(Monomial::from_vec(e), c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| m.eval(point) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Deterministic text: ascending lexicographic term order, exact
    /// rational coefficients.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.mono_text(m);
            if mono.is_empty() {
                let _ = write!(s, "{a}");
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{a}*{mono}");
            }
        }
        s
    }

    fn mono_text(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (slot, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars.name(slot)),
                _ => parts.push(format!("{}^{}", self.vars.name(slot), e)),
            }
        }
        parts.join("*")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "polynomial contexts differ");
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        big.add_assign_ref(small);
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "polynomial contexts differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "polynomial contexts differ");
        let (a, b) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: HashMap<Monomial, Q> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                *acc.entry(ma * mb).or_insert_with(Q::zero) += ca * cb;
            }
        }
        Poly::from_terms(self.vars, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}
