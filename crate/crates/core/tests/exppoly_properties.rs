//! Property and oracle tests for the symbolic ring layer.

use num_complex::Complex64;
use overshear_core::{parse_exppoly, ExpPoly, GaussianRational, Poly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scalar_strategy() -> impl Strategy<Value = GaussianRational> {
    (-2i64..=2, 1i64..=2, -2i64..=2, 1i64..=2)
        .prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar_strategy(), 0..=3).prop_map(Poly::from_coeffs)
}

fn exponent_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar_strategy(), 0..=2).prop_map(|tail| {
        let mut coeffs = vec![GaussianRational::zero()];
        coeffs.extend(tail);
        Poly::from_coeffs(coeffs)
    })
}

fn exppoly_strategy() -> impl Strategy<Value = ExpPoly> {
    prop::collection::vec((poly_strategy(), exponent_strategy()), 1..=2).prop_map(|terms| {
        let mut acc = ExpPoly::zero();
        for (p, q) in terms {
            acc = &acc + &ExpPoly::exp_of(q).unwrap().mul_poly(&p);
        }
        acc
    })
}

proptest! {
    #[test]
    fn add_is_commutative_and_associative(
        a in exppoly_strategy(),
        b in exppoly_strategy(),
        c in exppoly_strategy(),
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn mul_is_commutative_and_associative(
        a in exppoly_strategy(),
        b in exppoly_strategy(),
        c in exppoly_strategy(),
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn mul_distributes_over_add(
        a in exppoly_strategy(),
        b in exppoly_strategy(),
        c in exppoly_strategy(),
    ) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn derivative_is_linear(a in exppoly_strategy(), b in exppoly_strategy()) {
        prop_assert_eq!((&a + &b).derivative(), &a.derivative() + &b.derivative());
    }

    #[test]
    fn operations_preserve_canonical_invariants(
        a in exppoly_strategy(),
        b in exppoly_strategy(),
    ) {
        for value in [&a + &b, &a * &b, a.derivative(), -&a] {
            prop_assert!(value.validate().is_ok());
        }
    }

    #[test]
    fn print_parse_round_trip(a in exppoly_strategy()) {
        let printed = a.to_string();
        let back = parse_exppoly(&printed).unwrap();
        prop_assert_eq!(back, a);
    }
}

fn random_exppoly<R: Rng>(rng: &mut R) -> ExpPoly {
    overshear_core::random::exppoly(rng, overshear_core::random::SymbolicSize::default())
}

fn sample_points<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2)))
        .collect()
}

/// Structural equality of canonical forms coincides with numeric equality:
/// equal forms evaluate identically, and distinct forms are falsified by at
/// least one of 50 random sample points.
#[test]
fn canonical_form_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..40 {
        let a = random_exppoly(&mut rng);
        let c = random_exppoly(&mut rng);
        // same value along a different operation route: structural equality
        let round = &(&a + &c) - &c;
        assert_eq!(round, a);
        let points = sample_points(&mut rng, 50);
        for &x in &points {
            let va = a.eval(x);
            let vb = round.eval(x);
            let scale = 1.0 + va.norm() + vb.norm();
            assert!((va - vb).norm() / scale < 1e-9);
        }
        // a genuinely different canonical form must disagree somewhere
        let mut delta = random_exppoly(&mut rng);
        while delta.is_zero() {
            delta = random_exppoly(&mut rng);
        }
        let b = &a + &delta;
        assert_ne!(b, a);
        let falsified = points.iter().any(|&x| {
            let va = a.eval(x);
            let vb = b.eval(x);
            (va - vb).norm() / (1.0 + va.norm() + vb.norm()) > 1e-9
        });
        assert!(falsified, "distinct canonical forms {a} and {b} numerically equal");
    }
}

/// Derivative against central finite differences of the evaluator.
#[test]
fn derivative_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let a = random_exppoly(&mut rng);
        let da = a.derivative();
        for x in sample_points(&mut rng, 20) {
            let h = 1e-5;
            let fd = (a.eval(x + h) - a.eval(x - h)) / (2.0 * h);
            let exact = da.eval(x);
            let rel = (fd - exact).norm() / (1.0 + exact.norm());
            assert!(rel < 1e-6, "finite difference mismatch {rel} at {x} for {a}");
        }
    }
}

/// Evaluation against an independent naive term-by-term summation.
#[test]
fn eval_matches_naive_summation() {
    fn naive_poly(p: &Poly, x: Complex64) -> Complex64 {
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_complex() * x.powu(k as u32))
            .sum()
    }
    fn naive(e: &ExpPoly, x: Complex64) -> Complex64 {
        e.terms().map(|(q, p)| naive_poly(p, x) * naive_poly(q, x).exp()).sum()
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..25 {
        let a = random_exppoly(&mut rng);
        for x in sample_points(&mut rng, 10) {
            let lhs = a.eval(x);
            let rhs = naive(&a, x);
            assert!((lhs - rhs).norm() / (1.0 + rhs.norm()) < 1e-12);
        }
    }
}

/// Overflow in evaluation reports an infinite value rather than panicking.
#[test]
fn eval_overflow_is_infinite() {
    let big = ExpPoly::exp_of(Poly::from_ints(&[0, 1000])).unwrap();
    let v = big.eval(Complex64::new(1000.0, 0.0));
    assert!(!v.norm().is_finite());
}

/// One hundred generator-built canonical forms round-trip exactly.
#[test]
fn hundred_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let a = random_exppoly(&mut rng);
        let back = parse_exppoly(&a.to_string()).unwrap();
        assert_eq!(back, a, "round trip of {a}");
    }
}
