mod common;

use common::{b_oracle, d_oracle, dprime_oracle, eval_ratfun, zeta, Point};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shintani::ratfun::{Monomial, Poly, RatFun, Vars};
use shintani::weyl::{enumerate, pull_back_block, Block, SignedPerm};
use shintani::zetafactors::*;
use shintani::Error;

type Q = common::Q;

fn ctx(n: usize, m: usize) -> Context {
    Context::new(n, m).unwrap()
}

fn mono(vars: Vars, v: i32, x: &[i32], y: &[i32]) -> Monomial {
    let mut e = vec![0; vars.len()];
    e[vars.v()] = v;
    for (i, &a) in x.iter().enumerate() {
        e[vars.x(i)] = a;
    }
    for (j, &a) in y.iter().enumerate() {
        e[vars.y(j)] = a;
    }
    Monomial::from_exponents(&e)
}

fn inv_binomials(vars: Vars, ms: &[Monomial]) -> RatFun {
    ms.iter().fold(RatFun::one(vars), |acc, m| {
        &acc * &RatFun::one_minus_inv(vars, m).unwrap()
    })
}

fn binomials(vars: Vars, ms: &[Monomial]) -> RatFun {
    ms.iter().fold(RatFun::one(vars), |acc, m| {
        &acc * &RatFun::from_poly(Poly::one_minus(vars, m))
    })
}

#[test]
fn rank_constraint() {
    assert!(matches!(Context::new(2, 2), Err(Error::Rank(_))));
    assert!(Context::new(1, 0).is_ok());
}

#[test]
fn d_examples() {
    let c = ctx(1, 0);
    assert_eq!(
        d_factor(c),
        inv_binomials(c.vars(), &[mono(c.vars(), 0, &[1], &[])])
    );
    let c = ctx(2, 0);
    let v = c.vars();
    let expect = inv_binomials(
        v,
        &[
            mono(v, 0, &[1, -1], &[]),
            mono(v, 0, &[1, 1], &[]),
            mono(v, 0, &[1, 0], &[]),
            mono(v, 0, &[0, 1], &[]),
        ],
    );
    assert_eq!(d_factor(c), expect);
    // the zeta(chi_1 - chi_2) pole shows up numerically at x_1 = x_2
    let p = [0.5, 0.7, 0.7].map(|t| num_complex::Complex64::new(t, 0.0));
    assert!(matches!(d_zeta(c).eval(&p, 1e-9), Err(Error::NearPole(_))));
}

#[test]
fn dprime_examples() {
    let c = ctx(2, 1);
    let v = c.vars();
    assert_eq!(dprime_factor(c), inv_binomials(v, &[mono(v, 0, &[], &[2])]));
    assert!(dprime_factor(ctx(1, 0)).is_one());
    let c = ctx(3, 2);
    assert_eq!(dprime_zeta(c).factor_count(), 4);
}

#[test]
fn b_examples() {
    let c = ctx(2, 1);
    let v = c.vars();
    let expect = binomials(
        v,
        &[
            mono(v, 1, &[1, 0], &[-1]),
            mono(v, 1, &[0, 0], &[1]),
            mono(v, 1, &[1, 0], &[1]),
            mono(v, 1, &[0, 1], &[1]),
        ],
    );
    assert_eq!(b_factor(c), expect);
    assert!(b_factor(ctx(1, 0)).is_one());
    assert_eq!(b_zeta(ctx(3, 1)).factor_count(), 6);
}

#[test]
fn factors_match_pointwise_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (n, m) in [(2, 1), (3, 1), (3, 2)] {
        let c = ctx(n, m);
        for _ in 0..5 {
            let pt = Point::random(n, m, &mut rng);
            let at = pt.slots();
            assert_eq!(eval_ratfun(&d_factor(c), &at), d_oracle(&pt.x));
            assert_eq!(eval_ratfun(&dprime_factor(c), &at), dprime_oracle(&pt.y));
            assert_eq!(
                eval_ratfun(&b_factor(c), &at),
                Some(b_oracle(n, m, &pt.v, &pt.x, &pt.y))
            );
        }
    }
}

/// `Gamma` rebuilt from its product display.
fn gamma_oracle(n: usize, m: usize, pt: &Point) -> Option<Q> {
    let (v, x, y) = (&pt.v, &pt.x, &pt.y);
    let v2 = v * v;
    let one = Q::one();
    let mut g = Q::one();
    for a in 0..n {
        for b in a + 1..n {
            g *= (&one - &v2 * &x[a] / &x[b]) * (&one - &v2 * &x[a] * &x[b]);
        }
        g *= &one - &v2 * &x[a];
    }
    for a in 0..m {
        for b in a + 1..m {
            g *= (&one - &v2 * &y[a] / &y[b]) * (&one - &v2 * &y[a] * &y[b]);
        }
        g *= &one + v * &y[a];
    }
    for j in 0..m {
        for i in 0..(n - m + j) {
            g *= zeta(&(v * &x[i] / &y[j]))? / zeta(&(v * &y[j] / &x[i]))?;
        }
    }
    for i in 0..n {
        for j in 0..m {
            g *= zeta(&(v * &x[i] * &y[j]))? * zeta(&(v * &y[j] / &x[i]))?;
        }
    }
    Some(g)
}

#[test]
fn gamma_big_examples() {
    let c = ctx(1, 0);
    let v = c.vars();
    assert_eq!(gamma_big(c), binomials(v, &[mono(v, 2, &[1], &[])]));
    let c = ctx(2, 1);
    let v = c.vars();
    let g = gamma_big(c);
    let plus = RatFun::from_poly(Poly::one(v)) + RatFun::monomial(v, mono(v, 1, &[0, 0], &[1]));
    // (1 + v y_1) divides Gamma: the quotient no longer vanishes on v y_1 = -1
    let q = &g / &plus;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pt = Point::random(2, 1, &mut rng);
    pt.y[0] = -pt.v.recip();
    assert_eq!(eval_ratfun(&g, &pt.slots()), Some(Q::from_integer(0.into())));
    assert_ne!(eval_ratfun(&q, &pt.slots()), Some(Q::from_integer(0.into())));
    assert!((&g * &g.inv().unwrap()).is_one());
}

#[test]
fn gamma_big_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (n, m) in [(1, 0), (2, 1), (3, 1), (3, 2)] {
        let c = ctx(n, m);
        let g = gamma_big(c);
        let mut checked = 0;
        while checked < 5 {
            let pt = Point::random(n, m, &mut rng);
            let Some(expect) = gamma_oracle(n, m, &pt) else {
                continue;
            };
            assert_eq!(eval_ratfun(&g, &pt.slots()), Some(expect), "(n,m)=({n},{m})");
            checked += 1;
        }
    }
}

#[test]
fn c_function_examples() {
    let c = ctx(1, 0);
    let v = c.vars();
    let s = SignedPerm::simple_reflection(1, 1).unwrap();
    let expect = &binomials(v, &[mono(v, 2, &[1], &[])]) * &inv_binomials(v, &[mono(v, 0, &[1], &[])]);
    assert_eq!(c_w(&s, c), expect);
    assert_eq!(c_w(&SignedPerm::longest(1), c), expect);
    assert!(c_w(&SignedPerm::identity(1), c).is_one());

    let c = ctx(2, 1);
    let v = c.vars();
    let s = SignedPerm::simple_reflection(1, 1).unwrap();
    let expect =
        &binomials(v, &[mono(v, 2, &[0, 0], &[2])]) * &inv_binomials(v, &[mono(v, 0, &[0, 0], &[2])]);
    assert_eq!(c_tilde_w(&s, c), expect);
    assert!(c_tilde_w(&SignedPerm::identity(1), c).is_one());

    let c = ctx(3, 2);
    let v = c.vars();
    let s = SignedPerm::simple_reflection(2, 1).unwrap();
    let expect = &binomials(v, &[mono(v, 2, &[0, 0, 0], &[1, -1])])
        * &inv_binomials(v, &[mono(v, 0, &[0, 0, 0], &[1, -1])]);
    assert_eq!(c_tilde_w(&s, c), expect);
}

#[test]
fn c_cocycle_on_length_additive_pairs() {
    let c = ctx(2, 1);
    let vars = c.vars();
    let group = enumerate(2).unwrap();
    let mut checked = 0;
    for r in SimpleRoot::all(c).into_iter().filter(|r| r.group == Group::G) {
        let s = r.reflection(c).unwrap();
        let alpha = r.vector(c);
        for w in &group {
            let sw = s.compose(w);
            if sw.length() != w.length() + 1 {
                continue;
            }
            let lhs = c_w(&sw, c);
            // c_alpha(w chi) as a function of chi
            let moved = c_alpha_zeta(c, &alpha)
                .map_exponents(|e| pull_back_block(w, vars, Block::X, e))
                .to_ratfun();
            assert_eq!(lhs, &moved * &c_w(w, c));
            // the same through the root w^{-1} alpha
            let root = w.inverse().act_on_vector(&alpha);
            assert_eq!(lhs, &c_alpha_zeta(c, &root).to_ratfun() * &c_w(w, c));
            checked += 1;
        }
    }
    assert_eq!(checked, 8);
}

#[test]
fn gamma_alpha_cases() {
    let c = ctx(3, 1);
    let v = c.vars();
    // case 1: i = 1 <= n - m - 1
    let a = SimpleRoot {
        group: Group::G,
        index: 1,
    };
    let z = |e: Monomial| RatFun::one_minus_inv(v, &e).unwrap();
    let expect = &(&c_alpha_zeta(c, &a.vector(c)).to_ratfun() * &z(mono(v, 2, &[1, -1, 0], &[0])))
        / &z(mono(v, 2, &[-1, 1, 0], &[0]));
    assert_eq!(gamma_alpha(c, a).unwrap(), expect);
    // case 3: the long root
    let a = SimpleRoot {
        group: Group::G,
        index: 3,
    };
    let expect = &(&c_alpha_zeta(c, &a.vector(c)).to_ratfun() * &z(mono(v, 2, &[0, 0, 1], &[0])))
        / &z(mono(v, 2, &[0, 0, -1], &[0]));
    assert_eq!(gamma_alpha(c, a).unwrap(), expect);
    // case 2 brings in xi_1 when i = n - m
    let c = ctx(2, 1);
    let g = gamma_alpha_zeta(
        c,
        SimpleRoot {
            group: Group::G,
            index: 1,
        },
    )
    .unwrap();
    assert!(g.powers().any(|(m, _)| m.exponents()[c.vars().y(0)] != 0));
    assert!(gamma_beta(
        c,
        SimpleRoot {
            group: Group::G,
            index: 1
        }
    )
    .is_err());
}

#[test]
fn gamma_transformation_law() {
    for (n, m) in [(2, 1), (3, 1), (3, 2)] {
        for r in gamma_consistency(ctx(n, m)).unwrap() {
            assert!(r.passed, "(n,m)=({n},{m}) root {}", r.root);
        }
    }
}

#[test]
fn delta_examples() {
    let v = Vars::new(2, 2);
    let vpow = |e: i32| Monomial::var(v.len(), v.v(), e);
    assert_eq!(delta_half_g(v, &[1, 0]), vpow(4));
    assert_eq!(delta_half_g(v, &[0, 0]), vpow(0));
    assert_eq!(delta_half_g(v, &[1, 1]), vpow(6));
    assert_eq!(delta_half_mj(Vars::new(2, 1), &[1]), Monomial::var(4, 0, 3));
    assert_eq!(delta_half_mj(v, &[0, 0]), vpow(0));
    assert_eq!(delta_half_mj(v, &[1, 0]), vpow(5));
    // consecutive coordinates differ by |t|^{-1}, i.e. by v^2
    for m in 2..=4 {
        let vars = Vars::new(m + 1, m);
        for j in 0..m - 1 {
            let mut a = vec![0; m];
            let mut b = vec![0; m];
            a[j] = 1;
            b[j + 1] = 1;
            let ea = delta_half_mj(vars, &a).exponents()[0];
            let eb = delta_half_mj(vars, &b).exponents()[0];
            assert_eq!(ea - eb, 2);
        }
        // the last coordinate carries |t|^{3/2}
        let mut last = vec![0; m];
        last[m - 1] = 1;
        assert_eq!(delta_half_mj(vars, &last).exponents()[0], 3);
    }
}

#[test]
fn closed_form_constant() {
    let c = ctx(3, 2);
    let v = c.vars();
    let v2 = |k: i32| RatFun::monomial(v, Monomial::var(v.len(), v.v(), k));
    // zeta(1)^2 / (zeta(2) zeta(4)) = (1 - v^4)(1 - v^8) / (1 - v^2)^2
    let one = RatFun::one(v);
    let expect = &(&(&one - &v2(4)) * &(&one - &v2(8))) / &(&(&one - &v2(2)) * &(&one - &v2(2)));
    assert_eq!(normalization_closed_form_zeta(c).to_ratfun(), expect);
}
