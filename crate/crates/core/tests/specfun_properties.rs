use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};

use lsmahler::mahler::{mu_k_1pxy_star, walk_moment};
use lsmahler::mpcore::{make_context, Complex, PrecisionContext};
use lsmahler::specfun::{clausen_glaisher, kummer_lambda, multiple_polylog, mzv, ClKind, Composition};
use lsmahler::symconst::cexpr_eval;

fn ctx(d: u32) -> PrecisionContext {
    make_context(d).unwrap()
}

fn diff(a: &Float, b: &Float) -> f64 {
    Float::with_val(a.prec().max(b.prec()), a - b).abs().to_f64()
}

/// Admissible compositions of weight at most 8 and depth at most 3.
fn composition() -> impl Strategy<Value = Vec<u32>> {
    (2u32..=5, prop::collection::vec(1u32..=3, 0..=2))
        .prop_map(|(a, rest)| std::iter::once(a).chain(rest).collect::<Vec<u32>>())
        .prop_filter("weight <= 8", |v| v.iter().sum::<u32>() <= 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parity_reconstructs_polylog(parts in composition(), theta in 0.05f64..6.2) {
        let c = ctx(20);
        let a = Composition::new(parts).unwrap();
        let th = Float::with_val(c.prec(), theta);
        let li = multiple_polylog(&a, &Complex::cis(&th), &c).unwrap();
        let cl = clausen_glaisher(ClKind::Cl, &a, &th, &c).unwrap();
        let gl = clausen_glaisher(ClKind::Gl, &a, &th, &c).unwrap();
        let (re, im) = if a.weight() % 2 == 0 { (gl, cl) } else { (cl, gl) };
        prop_assert!(diff(&li.re, &re) < 1e-18, "{a} at {theta}: re {} vs {}", li.re, re);
        prop_assert!(diff(&li.im, &im) < 1e-18, "{a} at {theta}: im {} vs {}", li.im, im);
    }

    #[test]
    fn mzv_is_polylog_at_one(parts in composition()) {
        let c = ctx(20);
        let a = Composition::new(parts).unwrap();
        let z = mzv(&a, &c).unwrap();
        let li = multiple_polylog(&a, &Complex::real(c.float(1)), &c).unwrap();
        prop_assert!(diff(&z, &li.re) < 1e-18, "{a}: {z} vs {}", li.re);
        prop_assert!(li.im.clone().abs() < 1e-18);
    }

    #[test]
    fn polylog_doubled_truncation(parts in composition(), r in 0.0f64..=1.0, theta in 0.1f64..6.1) {
        let a = Composition::new(parts).unwrap();
        let at = |d: u32| {
            let c = ctx(d);
            let z = Complex::cis(&Float::with_val(c.prec(), theta)).scale(&Float::with_val(c.prec(), r));
            multiple_polylog(&a, &z, &c).unwrap()
        };
        let (lo, hi) = (at(16), at(32));
        prop_assert!(diff(&lo.re, &hi.re) < 1e-16 && diff(&lo.im, &hi.im) < 1e-16, "{a} at {r}e^(i{theta})");
    }

    #[test]
    fn kummer_lambda_two_paths(n in 1u32..=6, x in 0.01f64..=1.0) {
        // assembled from separately computed Li_{n-k}(x) and powers of log x
        let c = ctx(25);
        let p = c.prec();
        let x = Float::with_val(p, x);
        let lg = x.clone().ln();
        let mut expect = Float::with_val(p, (&lg).pow(n)) / n;
        if n % 2 == 1 {
            expect = -expect;
        }
        if n >= 2 {
            let fact = Float::with_val(p, Integer::from(Integer::factorial(n - 2)));
            for k in 0..=(n - 2) {
                let li = multiple_polylog(&Composition::single(n - k), &Complex::real(x.clone()), &c).unwrap().re;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let kf = Float::with_val(p, Integer::from(Integer::factorial(k)));
                expect += li * Float::with_val(p, (&lg).pow(k)) * &fact / kf * sign;
            }
        }
        let got = kummer_lambda(n, &x, &c).unwrap();
        prop_assert!(diff(&got, &expect) < 1e-20, "lambda_{n}({x}): {got} vs {expect}");
    }
}

#[test]
fn walk_moments_at_even_integers() {
    let c = ctx(25);
    for n in [2u32, 3] {
        let w = |s: u32| walk_moment(n, &c.float(s), &c).unwrap();
        assert!(diff(&w(0), &c.float(1)) < 1e-20, "W_{n}(0)");
        assert!(diff(&w(2), &c.float(n)) < 1e-20, "W_{n}(2)");
        assert!(diff(&w(4), &c.float(2 * n * n - n)) < 1e-20, "W_{n}(4)");
    }
}

#[test]
fn star_measures_decay_like_log2_powers() {
    let c = ctx(20);
    let log2 = c.log2();
    for k in 1..=6u32 {
        let m = cexpr_eval(&mu_k_1pxy_star(k).unwrap(), &c).unwrap().abs();
        let bound = Float::with_val(c.prec(), (&log2).pow(k)) * 2u32 / 3u32;
        assert!(m <= bound, "k={k}: {m} > {bound}");
    }
}
