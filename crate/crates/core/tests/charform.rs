mod common;

use common::{eval_poly, pow, q, signed_perms, Point, Q};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shintani::charform::*;
use shintani::ratfun::{Monomial, Poly, RatFun, Vars};
use shintani::weyl::{enumerate, pull_back_block, Block};
use shintani::zetafactors::Context;
use shintani::Error;

fn ctx(n: usize, m: usize) -> Context {
    Context::new(n, m).unwrap()
}

fn det(mut a: Vec<Vec<Q>>) -> Q {
    let k = a.len();
    let mut out = Q::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            out = -out;
        }
        out *= a[c][c].clone();
        for r in c + 1..k {
            let f = a[r][c].clone() / a[c][c].clone();
            for j in c..k {
                let s = f.clone() * a[c][j].clone();
                a[r][j] -= s;
            }
        }
    }
    out
}

/// Determinant ratio at `x_i = u_i^2`, so half-integer powers stay rational.
fn char_oracle(lambda: &[i64], u: &[Q]) -> Q {
    let big_n = lambda.len();
    let matrix = |shift: &dyn Fn(usize) -> i64| -> Vec<Vec<Q>> {
        (0..big_n)
            .map(|i| {
                (0..big_n)
                    .map(|j| pow(&u[i], shift(j)) - pow(&u[i], -shift(j)))
                    .collect()
            })
            .collect()
    };
    let rho = |j: usize| 2 * (big_n - j) as i64 - 1;
    det(matrix(&|j| 2 * lambda[j] + rho(j))) / det(matrix(&rho))
}

fn random_u(k: usize, rng: &mut impl Rng) -> Vec<Q> {
    // distinct and > 1, so the Weyl denominator never vanishes
    (0..k)
        .map(|i| q(2 * (rng.gen_range(1..=5) + 6 * i as i64) + 1, 2))
        .collect()
}

fn at_squares(u: &[Q]) -> Vec<Q> {
    let mut s = vec![Q::one()];
    s.extend(u.iter().map(|x| x * x));
    s
}

#[test]
fn character_examples() {
    assert!(so_char(3, &[0, 0, 0]).unwrap().is_one());
    let c = so_char(2, &[1, 0]).unwrap();
    assert_eq!(c.to_text(), "x1^-1 + x2^-1 + 1 + x2 + x1");
    assert!(matches!(so_char(2, &[1]), Err(Error::LengthMismatch { .. })));
}

#[test]
fn characters_match_determinant_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let lambdas: [&[i64]; 6] = [&[1], &[3], &[2, 1], &[3, 0], &[1, 1, 0], &[2, -1]];
    for lambda in lambdas {
        let c = so_char(lambda.len(), lambda).unwrap();
        for _ in 0..3 {
            let u = random_u(lambda.len(), &mut rng);
            assert_eq!(
                eval_poly(&c, &at_squares(&u)),
                char_oracle(lambda, &u),
                "{lambda:?}"
            );
        }
    }
}

#[test]
fn dimension_at_identity() {
    // Weyl dimension formula for the symmetric powers of the standard representation
    let ones = |k: usize| vec![Q::one(); k + 1];
    for (lambda, dim) in [
        (vec![1, 0], 5),
        (vec![2, 0], 14),
        (vec![1, 1], 10),
        (vec![1, 0, 0], 7),
    ] {
        let c = so_char(lambda.len(), &lambda).unwrap();
        assert_eq!(eval_poly(&c, &ones(lambda.len())), q(dim, 1), "{lambda:?}");
    }
}

#[test]
fn vanishing_strip() {
    for m in 1..=2usize {
        for k in 1..=2 * m as i64 {
            let mut lambda = vec![0; m + 1];
            lambda[0] = -k;
            assert!(so_char(m + 1, &lambda).unwrap().is_zero(), "m={m} k={k}");
        }
        let mut past = vec![0; m + 1];
        past[0] = -(2 * m as i64 + 1);
        assert!(!so_char(m + 1, &past).unwrap().is_zero());
    }
}

#[test]
fn weyl_invariance_exact() {
    for lambda in [vec![1], vec![2], vec![1, 0], vec![2, 1], vec![3, -1]] {
        let c = so_char(lambda.len(), &lambda).unwrap();
        let vars = Vars::new(lambda.len(), 0);
        for w in enumerate(lambda.len()).unwrap() {
            assert_eq!(c.map_exponents(|e| pull_back_block(&w, vars, Block::X, e)), c);
        }
    }
}

#[test]
fn weyl_invariance_numeric_rank_three() {
    let c = so_char(3, &[2, 1, 0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..4 {
        let x: Vec<Q> = (0..3)
            .map(|_| q(rng.gen_range(2..=9), rng.gen_range(1..=4)))
            .collect();
        let base = {
            let mut s = vec![Q::one()];
            s.extend(x.iter().cloned());
            s
        };
        let f = |s: &[Q]| {
            let pt: Vec<Complex64> = s
                .iter()
                .map(|v| Complex64::new(num_traits::ToPrimitive::to_f64(v).unwrap(), 0.0))
                .collect();
            c.eval(&pt)
        };
        let reference = f(&base);
        for w in signed_perms(3) {
            let mut s = vec![Q::one()];
            s.extend(common::act(&w, &x));
            assert!((f(&s) - reference).norm() < 1e-9 * reference.norm(), "{w:?}");
        }
    }
}

#[test]
fn elementary_symmetric_examples() {
    let vars = Vars::new(2, 0);
    let a = Monomial::var(vars.len(), vars.x(0), 1);
    let b = Monomial::var(vars.len(), vars.x(1), 1);
    let set = [a.clone(), b.clone()];
    assert!(elementary_sym(vars, &set, 0).is_one());
    let e1 = &Poly::term(vars, a.clone(), Q::one()) + &Poly::term(vars, b.clone(), Q::one());
    assert_eq!(elementary_sym(vars, &set, 1), e1);
    assert_eq!(elementary_sym(vars, &set, 2), Poly::term(vars, &a * &b, Q::one()));
    assert!(elementary_sym(vars, &set, 3).is_zero());
}

#[test]
fn satake_set_shape() {
    let c = ctx(3, 2);
    let set = satake_set(c);
    assert_eq!(set.len(), 4);
    let p = satake_polynomial(c);
    assert_eq!(p.len(), 5);
    assert!(p[0].is_one());
}

#[test]
fn series_small_cases() {
    let c = ctx(2, 1);
    let rhs = rhs_series(c, 1).unwrap();
    let vars = c.vars();
    let x = |i: usize, e: i32| Poly::term(vars, Monomial::var(vars.len(), vars.x(i), e), Q::one());
    let vy = |e: i32| {
        let mut m = Monomial::var(vars.len(), vars.y(0), e).exponents().to_vec();
        m[vars.v()] = 1;
        Poly::term(vars, Monomial::from_exponents(&m), Q::one())
    };
    let mut expect = Poly::one(vars);
    for p in [x(0, 1), x(0, -1), x(1, 1), x(1, -1)] {
        expect = &expect + &p;
    }
    expect = &(&expect - &vy(1)) - &vy(-1);
    assert_eq!(rhs.coefficients[1], RatFun::from_poly(expect));
    assert!(rhs.coefficients[0].is_one());

    let zero = lhs_series(c, 0).unwrap();
    assert_eq!(zero.truncation(), 0);
    assert!(zero.coefficients[0].is_one());
    assert!(shintani_verify(c, 0).unwrap().all_equal);
    assert!(matches!(lhs_series(ctx(3, 1), 2), Err(Error::Rank(_))));
    assert!(rhs_series(ctx(2, 0), 1).is_err());
}

#[test]
fn rhs_is_character_series_times_satake_polynomial() {
    for (c, k) in [(ctx(2, 1), 5), (ctx(3, 2), 4)] {
        let product = character_series(c, k)
            .unwrap()
            .mul_polynomial(&satake_polynomial(c));
        assert_eq!(product.coefficients, rhs_series(c, k).unwrap().coefficients);
    }
}

#[test]
fn series_identity_rank_two() {
    let rep = shintani_verify(ctx(2, 1), 6).unwrap();
    assert!(rep.all_equal, "{rep:?}");
    assert_eq!(rep.coefficients.len(), 7);
}

#[test]
fn series_identity_at_rational_points() {
    // lhs coefficients against the independent double-Weyl-sum oracle
    let c = ctx(2, 1);
    let rhs = rhs_series(c, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    while checked < 3 {
        let pt = Point::random(2, 1, &mut rng);
        for l in 0..=3i64 {
            let Some(w) = common::l_value_oracle(2, 1, &[0], &[l, 0], &pt) else {
                continue;
            };
            let lhs = w * pow(&pt.v, -4 * l);
            assert_eq!(
                Some(lhs),
                common::eval_ratfun(&rhs.coefficients[l as usize], &pt.slots())
            );
        }
        checked += 1;
    }
}

#[test]
fn numeric_series_sides_agree() {
    let c = ctx(3, 2);
    let point: Vec<Complex64> = [0.6, 1.3, 0.8, 1.7, 1.2, 0.7]
        .iter()
        .map(|&r| Complex64::new(r, 0.1))
        .collect();
    let (lhs, rhs) = series_numeric(c, 3, &point).unwrap();
    for (a, b) in lhs.iter().zip(&rhs) {
        assert!((a - b).norm() < 1e-8 * b.norm().max(1.0));
    }
}
