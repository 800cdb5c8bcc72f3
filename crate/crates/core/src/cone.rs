//! Support combinatorics: the reduction operations on triples `(d; a, r)`,
//! their normal form, and the order `>=_WS` on pairs `(d, f)`.

use crate::zetafactors::Context;
use crate::{Error, Result};
use rand::Rng;
use serde::Serialize;

/// `(d; a, r)` with `d, r >= 0` of length `m`, `a` dominant of length
/// `n - m`, and `d + r` dominant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConeTriple {
    pub d: Vec<i64>,
    pub a: Vec<i64>,
    pub r: Vec<i64>,
}

pub fn is_dominant(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.windows(2).all(|w| w[0] >= w[1])
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl ConeTriple {
    pub fn new(ctx: Context, d: Vec<i64>, a: Vec<i64>, r: Vec<i64>) -> Result<Self> {
        let t = ConeTriple { d, a, r };
        t.validate(ctx)?;
        Ok(t)
    }

    pub fn validate(&self, ctx: Context) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTriple(msg));
        if self.d.len() != ctx.m || self.r.len() != ctx.m || self.a.len() != ctx.n - ctx.m {
            return bad(format!(
                "lengths (d,a,r) = ({},{},{}) for (n,m)=({},{})",
                self.d.len(),
                self.a.len(),
                self.r.len(),
                ctx.n,
                ctx.m
            ));
        }
        if self.d.iter().chain(&self.r).any(|&x| x < 0) {
            return bad(format!("d={:?}, r={:?} must be >= 0", self.d, self.r));
        }
        if !is_dominant(&self.a) {
            return bad(format!("a={:?} not dominant", self.a));
        }
        if !is_dominant(&self.sum()) {
            return bad(format!("d+r={:?} not dominant", self.sum()));
        }
        Ok(())
    }

    /// `d + r`, preserved by every operation.
    pub fn sum(&self) -> Vec<i64> {
        add(&self.d, &self.r)
    }

    /// `(a, r)` as a length-`n` vector.
    pub fn ar(&self) -> Vec<i64> {
        self.a.iter().chain(&self.r).copied().collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        let m = self.d.len();
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange {
                what: "operation",
                index: i,
                bound: m,
            });
        }
        Ok(())
    }
}

/// Operation 1: if `a_{n-m} < r_1`, replace `r_1` by `a_{n-m}` and move the
/// difference into `d`.
pub fn op1(t: &ConeTriple) -> ConeTriple {
    let Some(&last) = t.a.last() else {
        return t.clone();
    };
    match t.r.first() {
        Some(&r1) if last < r1 => {
            let mut rbar = t.r.clone();
            rbar[0] = last;
            ConeTriple {
                d: add(&t.d, &sub(&t.r, &rbar)),
                a: t.a.clone(),
                r: rbar,
            }
        }
        _ => t.clone(),
    }
}

/// Operation `(2, i)`: clips every later `r_j > r_i` down to `r_i`.
pub fn op2(t: &ConeTriple, i: usize) -> Result<ConeTriple> {
    t.check_index(i)?;
    let ri = t.r[i - 1];
    let rt: Vec<i64> =
        t.r.iter()
            .enumerate()
            .map(|(j, &rj)| if j + 1 > i && rj > ri { ri } else { rj })
            .collect();
    Ok(ConeTriple {
        d: add(&t.d, &sub(&t.r, &rt)),
        a: t.a.clone(),
        r: rt,
    })
}

/// Operation `(3, i)`: raises every earlier `d_j < d_i` up to `d_i`.
pub fn op3(t: &ConeTriple, i: usize) -> Result<ConeTriple> {
    t.check_index(i)?;
    let di = t.d[i - 1];
    let dt: Vec<i64> =
        t.d.iter()
            .enumerate()
            .map(|(j, &dj)| if j + 1 < i && dj < di { di } else { dj })
            .collect();
    Ok(ConeTriple {
        r: add(&t.r, &sub(&t.d, &dt)),
        a: t.a.clone(),
        d: dt,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub op: String,
    pub before: ConeTriple,
    pub after: ConeTriple,
}

/// Operation 1, then `(2,i)` for `i = 1..m`, then `(3,i)` for `i = m..1`.
pub fn normal_form_traced(ctx: Context, t: &ConeTriple) -> Result<(ConeTriple, Vec<TraceStep>)> {
    t.validate(ctx)?;
    let mut trace = Vec::new();
    let mut cur = t.clone();
    let mut step = |name: String, next: ConeTriple, cur: &mut ConeTriple| {
        trace.push(TraceStep {
            op: name,
            before: cur.clone(),
            after: next.clone(),
        });
        *cur = next;
    };
    let next = op1(&cur);
    step("op1".into(), next, &mut cur);
    for i in 1..=ctx.m {
        let next = op2(&cur, i)?;
        step(format!("op2,{i}"), next, &mut cur);
    }
    for i in (1..=ctx.m).rev() {
        let next = op3(&cur, i)?;
        step(format!("op3,{i}"), next, &mut cur);
    }
    Ok((cur, trace))
}

pub fn normal_form(ctx: Context, t: &ConeTriple) -> Result<ConeTriple> {
    Ok(normal_form_traced(ctx, t)?.0)
}

/// Closure conditions for a candidate `(d'; a, r')` reached from `t`:
/// same sum, `d' >= d`, `d'` dominant, `(a, r')` dominant.
pub fn is_feasible(t: &ConeTriple, cand: &ConeTriple) -> bool {
    cand.a == t.a
        && cand.sum() == t.sum()
        && cand.d.iter().zip(&t.d).all(|(x, y)| x >= y)
        && is_dominant(&cand.d)
        && is_dominant(&cand.ar())
}

/// Every feasible `(d'; a, r')` for `t`, by exhaustive search.
pub fn feasible_set(t: &ConeTriple) -> Vec<ConeTriple> {
    let total = t.sum();
    let m = total.len();
    let mut out = Vec::new();
    let mut d = t.d.clone();
    loop {
        let cand = ConeTriple {
            d: d.clone(),
            a: t.a.clone(),
            r: sub(&total, &d),
        };
        if is_feasible(t, &cand) {
            out.push(cand);
        }
        // odometer over t.d[j] <= d[j] <= total[j]
        let mut j = 0;
        loop {
            if j == m {
                return out;
            }
            if d[j] < total[j] {
                d[j] += 1;
                break;
            }
            d[j] = t.d[j];
            j += 1;
        }
    }
}

/// Result of comparing a normal form against the feasible-set oracle.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalityCheck {
    pub triple: ConeTriple,
    pub normal_form: ConeTriple,
    pub feasible: bool,
    pub minimal: bool,
    pub feasible_count: usize,
}

pub fn check_minimality(ctx: Context, t: &ConeTriple) -> Result<MinimalityCheck> {
    let nf = normal_form(ctx, t)?;
    let set = feasible_set(t);
    let minimal = set.iter().all(|c| nf.d.iter().zip(&c.d).all(|(x, y)| x <= y));
    Ok(MinimalityCheck {
        triple: t.clone(),
        feasible: is_feasible(t, &nf),
        normal_form: nf,
        minimal,
        feasible_count: set.len(),
    })
}

fn boxes(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Dominant vectors of length `len` with entries `<= bound`.
pub fn dominant_vectors(len: usize, bound: i64) -> Vec<Vec<i64>> {
    boxes(len, bound).into_iter().filter(|v| is_dominant(v)).collect()
}

/// All valid triples with entries `<= bound`.
pub fn all_triples(ctx: Context, bound: i64) -> Vec<ConeTriple> {
    let mut out = Vec::new();
    for a in dominant_vectors(ctx.n - ctx.m, bound) {
        for d in boxes(ctx.m, bound) {
            for r in boxes(ctx.m, bound) {
                let t = ConeTriple {
                    d: d.clone(),
                    a: a.clone(),
                    r,
                };
                if t.validate(ctx).is_ok() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// A uniformly drawn valid triple with entries `<= bound` (rejection sampling).
pub fn random_triple(ctx: Context, bound: i64, rng: &mut impl Rng) -> ConeTriple {
    loop {
        let mut a: Vec<i64> = (0..ctx.n - ctx.m).map(|_| rng.gen_range(0..=bound)).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        let d: Vec<i64> = (0..ctx.m).map(|_| rng.gen_range(0..=bound)).collect();
        let r: Vec<i64> = (0..ctx.m).map(|_| rng.gen_range(0..=bound)).collect();
        let t = ConeTriple { d, a, r };
        if t.validate(ctx).is_ok() {
            return t;
        }
    }
}

/// `(d, f)` with `d` dominant of length `m`, `f` dominant of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WsPair {
    pub d: Vec<i64>,
    pub f: Vec<i64>,
}

impl WsPair {
    pub fn new(ctx: Context, d: Vec<i64>, f: Vec<i64>) -> Result<Self> {
        let p = WsPair { d, f };
        p.validate(ctx)?;
        Ok(p)
    }

    pub fn validate(&self, ctx: Context) -> Result<()> {
        if self.d.len() != ctx.m || self.f.len() != ctx.n {
            return Err(Error::Rank(format!(
                "pair lengths ({}, {}) for (n,m)=({},{})",
                self.d.len(),
                self.f.len(),
                ctx.n,
                ctx.m
            )));
        }
        crate::wsformula::check_dominant("d", &self.d)?;
        crate::wsformula::check_dominant("f", &self.f)
    }
}

/// `<varpi_l, v> = v_1 + ... + v_l`, with `varpi_0 = 0`.
fn partial(v: &[i64], l: usize) -> i64 {
    v[..l].iter().sum()
}

/// `p >=_WS q`.
pub fn ws_geq(ctx: Context, p: &WsPair, q: &WsPair) -> Result<bool> {
    p.validate(ctx)?;
    q.validate(ctx)?;
    let (n, m) = (ctx.n, ctx.m);
    let k = n - m;
    let cond1 = (1..=k).all(|l| partial(&p.f, l) >= partial(&q.f, l));
    let cond2 = (k + 1..=n)
        .all(|l| partial(&p.f, l) + partial(&p.d, l - k) >= partial(&q.f, l) + partial(&q.d, l - k));
    let cond3 = (1..=m)
        .all(|l| partial(&p.f, k + l - 1) + partial(&p.d, l) >= partial(&q.f, k + l - 1) + partial(&q.d, l));
    Ok(cond1 && cond2 && cond3)
}

/// `p <=_WS q`, i.e. `q >=_WS p`.
pub fn ws_leq(ctx: Context, p: &WsPair, q: &WsPair) -> Result<bool> {
    ws_geq(ctx, q, p)
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialOrderReport {
    pub elements: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
}

/// Exhaustive order axioms over all dominant pairs with entries `<= bound`.
pub fn check_partial_order(ctx: Context, bound: i64) -> Result<PartialOrderReport> {
    let mut elems = Vec::new();
    for d in dominant_vectors(ctx.m, bound) {
        for f in dominant_vectors(ctx.n, bound) {
            elems.push(WsPair { d: d.clone(), f });
        }
    }
    let k = elems.len();
    let mut geq = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            geq[i][j] = ws_geq(ctx, &elems[i], &elems[j])?;
        }
    }
    let reflexive = (0..k).all(|i| geq[i][i]);
    let antisymmetric = (0..k).all(|i| (0..k).all(|j| i == j || !(geq[i][j] && geq[j][i])));
    let transitive = (0..k).all(|i| (0..k).all(|j| !geq[i][j] || (0..k).all(|l| !geq[j][l] || geq[i][l])));
    Ok(PartialOrderReport {
        elements: k,
        reflexive,
        antisymmetric,
        transitive,
    })
}

/// Entry bound for the randomly drawn triples of [`verify_cone`].
pub const RANDOM_TRIPLE_BOUND: i64 = 9;

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConeReport {
    pub n: usize,
    pub m: usize,
    pub bound: i64,
    pub random_samples: usize,
    pub triples_enumerated: usize,
    pub sum_conservation_failures: usize,
    pub monotonicity_failures: usize,
    pub idempotence_failures: usize,
    pub feasibility_failures: usize,
    pub minimality_failures: usize,
    /// First triple that failed any check.
    pub witness: Option<ConeTriple>,
    pub all_passed: bool,
}

/// Step-level invariants on `random_samples` seeded triples, then
/// idempotence, feasibility and minimality on every triple with entries
/// `<= bound`.
pub fn verify_cone(ctx: Context, bound: i64, random_samples: usize, seed: u64) -> Result<ConeReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ConeReport {
        n: ctx.n,
        m: ctx.m,
        bound,
        random_samples,
        ..Default::default()
    };
    let note = |rep: &mut ConeReport, t: &ConeTriple| {
        rep.witness.get_or_insert_with(|| t.clone());
    };
    for _ in 0..random_samples {
        let t = random_triple(ctx, RANDOM_TRIPLE_BOUND, &mut rng);
        let (_, trace) = normal_form_traced(ctx, &t)?;
        if trace.iter().any(|s| s.before.sum() != s.after.sum()) {
            rep.sum_conservation_failures += 1;
            note(&mut rep, &t);
        }
        if trace
            .iter()
            .any(|s| s.before.d.iter().zip(&s.after.d).any(|(x, y)| y < x))
        {
            rep.monotonicity_failures += 1;
            note(&mut rep, &t);
        }
    }
    let triples = all_triples(ctx, bound);
    rep.triples_enumerated = triples.len();
    for t in &triples {
        let chk = check_minimality(ctx, t)?;
        if normal_form(ctx, &chk.normal_form)? != chk.normal_form {
            rep.idempotence_failures += 1;
            note(&mut rep, t);
        }
        if !chk.feasible {
            rep.feasibility_failures += 1;
            note(&mut rep, t);
        }
        if !chk.minimal {
            rep.minimality_failures += 1;
            note(&mut rep, t);
        }
    }
    rep.all_passed = rep.witness.is_none();
    Ok(rep)
}
