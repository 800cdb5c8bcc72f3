//! End-to-end acceptance run: one line per criterion, nonzero exit on any failure.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shintani::charform::{shintani_verify, so_char};
use shintani::cone::{check_partial_order, verify_cone};
use shintani::padic::{gauss_shell, gauss_shell_character_sum, verify_cells};
use shintani::ratfun::{Vars, Q};
use shintani::weyl::{enumerate, pull_back_block, Block};
use shintani::wsformula::{
    invariance_report, l_value, normalization_closed_form, normalization_constant, Mode, NumericConfig,
};
use shintani::zetafactors::{gamma_consistency, Context};
use shintani::Result;
use std::time::Instant;

type Criterion = fn() -> Result<String>;

const CONTEXTS: [(usize, usize); 4] = [(1, 0), (2, 1), (3, 1), (3, 2)];

fn ctx(n: usize, m: usize) -> Result<Context> {
    Context::new(n, m)
}

fn normalization() -> Result<String> {
    for (n, m) in CONTEXTS {
        let c = ctx(n, m)?;
        let value = normalization_constant(c)?;
        if value != normalization_closed_form(c) {
            return Err(fail(format!("({n},{m}): {}", value.to_text())));
        }
    }
    Ok("4 contexts".into())
}

fn identity_value() -> Result<String> {
    for (n, m) in CONTEXTS {
        if !l_value(ctx(n, m)?, &vec![0; m], &vec![0; n])?.is_one() {
            return Err(fail(format!("({n},{m})")));
        }
    }
    Ok("4 contexts".into())
}

fn gamma_roots() -> Result<String> {
    let mut roots = 0;
    for (n, m) in [(2, 1), (3, 2)] {
        for r in gamma_consistency(ctx(n, m)?)? {
            if !r.passed {
                return Err(fail(format!("({n},{m}) root {}", r.root)));
            }
            roots += 1;
        }
    }
    Ok(format!("{roots} simple roots"))
}

fn invariance() -> Result<String> {
    let c = ctx(2, 1)?;
    let cfg = NumericConfig::default();
    for (d, f) in [
        (vec![0], vec![0, 0]),
        (vec![0], vec![1, 0]),
        (vec![1], vec![1, 1]),
    ] {
        if !invariance_report(c, &d, &f, Mode::Exact, &cfg)?.all_passed {
            return Err(fail(format!("exact d={d:?} f={f:?}")));
        }
    }
    let cfg = NumericConfig { samples: 10, ..cfg };
    let rep = invariance_report(ctx(3, 2)?, &[1, 0], &[2, 1, 0], Mode::Numeric, &cfg)?;
    let worst = rep
        .generators
        .iter()
        .filter_map(|g| g.max_deviation)
        .fold(0.0, f64::max);
    if !rep.all_passed || rep.samples_used < 10 || worst >= 1e-9 {
        return Err(fail(format!("numeric (3,2): max deviation {worst:e}")));
    }
    Ok(format!("3 exact pairs; numeric max deviation {worst:.1e}"))
}

fn series_identity() -> Result<String> {
    for (n, m, k) in [(2, 1, 8), (3, 2, 6)] {
        let rep = shintani_verify(ctx(n, m)?, k)?;
        if !rep.all_equal {
            let bad: Vec<usize> = rep
                .coefficients
                .iter()
                .filter(|c| !c.equal)
                .map(|c| c.index)
                .collect();
            return Err(fail(format!("({n},{m}) coefficients {bad:?}")));
        }
    }
    Ok("(2,1) K=8, (3,2) K=6".into())
}

fn cone() -> Result<String> {
    let mut triples = 0;
    for (n, m) in [(2, 1), (3, 2)] {
        let rep = verify_cone(ctx(n, m)?, 3, 1000, 7)?;
        if !rep.all_passed {
            return Err(fail(format!("({n},{m}): {rep:?}")));
        }
        triples += rep.triples_enumerated;
    }
    Ok(format!("2x1000 random, {triples} exhaustive"))
}

fn padic_cells() -> Result<String> {
    for (n, m) in [(2, 1), (3, 2)] {
        let rep = verify_cells(n, m, 3, 100, 2024)?;
        if let Some(c) = rep.checks.iter().find(|c| c.failures > 0 || c.cases == 0) {
            return Err(fail(format!("({n},{m}) {}: {} failures", c.name, c.failures)));
        }
    }
    Ok("100 samples per check, (2,1) and (3,2)".into())
}

fn gauss() -> Result<String> {
    let mut worst = 0.0f64;
    for p in [3u64, 5] {
        for i in -4..=4i64 {
            let x = Q::from_integer(p.into()).pow(i as i32);
            for j in -4..=4i64 {
                let brute = gauss_shell_character_sum(&x, j, p)?;
                let exact = gauss_shell(i, j, p).to_f64().unwrap_or(f64::NAN);
                worst = worst.max((brute - Complex64::new(exact, 0.0)).norm());
            }
        }
    }
    if worst.is_nan() || worst >= 1e-9 {
        return Err(fail(format!("max deviation {worst:e}")));
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn characters() -> Result<String> {
    for lambda in [vec![1], vec![3], vec![1, 0], vec![2, 1], vec![3, 3]] {
        let c = so_char(lambda.len(), &lambda)?;
        let vars = Vars::new(lambda.len(), 0);
        for w in enumerate(lambda.len())? {
            if c.map_exponents(|e| pull_back_block(&w, vars, Block::X, e)) != c {
                return Err(fail(format!("exact invariance lambda={lambda:?}")));
            }
        }
    }
    let c = so_char(3, &[2, 1, 1])?;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..5 {
        let mut pt = vec![Complex64::new(1.0, 0.0)];
        pt.extend((0..3).map(|_| {
            Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU))
        }));
        let base = c.eval(&pt);
        for w in enumerate(3)? {
            let mut moved = vec![pt[0]];
            moved.extend(w.act_on_point(&pt[1..], |z| z.inv()));
            if (c.eval(&moved) - base).norm() > 1e-9 * base.norm().max(1.0) {
                return Err(fail("numeric invariance N=3".into()));
            }
        }
    }
    for m in 1..=2usize {
        for k in 1..=2 * m as i64 {
            let mut lambda = vec![0; m + 1];
            lambda[0] = -k;
            if !so_char(m + 1, &lambda)?.is_zero() {
                return Err(fail(format!("strip m={m} k={k}")));
            }
        }
    }
    Ok("invariance N<=3, strip m<=2".into())
}

fn order() -> Result<String> {
    let rep = check_partial_order(ctx(2, 1)?, 3)?;
    if !(rep.reflexive && rep.antisymmetric && rep.transitive) {
        return Err(fail(format!("{rep:?}")));
    }
    Ok(format!("{} pairs", rep.elements))
}

fn fail(msg: String) -> shintani::Error {
    shintani::Error::Invalid(msg)
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("normalization constant", normalization),
        ("value at identity", identity_value),
        ("gamma consistency", gamma_roots),
        ("invariance", invariance),
        ("series identity", series_identity),
        ("cone normal form", cone),
        ("p-adic cell calculus", padic_cells),
        ("gauss shell", gauss),
        ("characters", characters),
        ("order axioms", order),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (status, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e.to_string())
            }
        };
        println!(
            "{status} [{:>2}] {name}: {detail} ({:.2?})",
            i + 1,
            start.elapsed()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
