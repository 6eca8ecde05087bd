//! Property tests for the continuant recurrences.

use num_bigint::BigInt;
use proptest::prelude::*;
use qwire::tridiag::{self, ArithmeticMode, DetSequence, SymToeplitzTridiag};
use qwire_oracle::toeplitz_det;

fn mat(alpha: f64, beta: f64, n: usize) -> SymToeplitzTridiag {
    SymToeplitzTridiag::new(alpha, beta, n).unwrap()
}

fn exact(alpha: i32, beta: i32, n: usize) -> Vec<BigInt> {
    match tridiag::det_sequence(&mat(alpha as f64, beta as f64, n), ArithmeticMode::ExactInteger).unwrap() {
        DetSequence::Exact(v) => v,
        DetSequence::Float { .. } => unreachable!(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exact_identity_is_zero(alpha in -10i32..=10, beta in -10i32..=10, n in 2usize..=40) {
        let r = tridiag::identity_residual(&mat(alpha as f64, beta as f64, n), ArithmeticMode::ExactInteger).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn exact_telescoping_step(alpha in -10i32..=10, beta in -10i32..=10, n in 3usize..=40) {
        // A_{N-1}^2 - A_{N-2} A_N = beta^2 (A_{N-2}^2 - A_{N-3} A_{N-1})
        let a = exact(alpha, beta, n);
        let lhs = &a[n - 1] * &a[n - 1] - &a[n - 2] * &a[n];
        let rhs = BigInt::from(beta * beta) * (&a[n - 2] * &a[n - 2] - &a[n - 3] * &a[n - 1]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_sequence_starts_and_recurs(alpha in -10i32..=10, beta in -10i32..=10, n in 0usize..=30) {
        let a = exact(alpha, beta, n);
        prop_assert_eq!(a.len(), n + 1);
        prop_assert_eq!(&a[0], &BigInt::from(1));
        if n >= 1 {
            prop_assert_eq!(&a[1], &BigInt::from(alpha));
        }
        for k in 2..=n {
            prop_assert_eq!(&a[k], &(BigInt::from(alpha) * &a[k - 1] - BigInt::from(beta * beta) * &a[k - 2]));
        }
    }

    #[test]
    fn det_matches_dense_oracle(alpha in -10.0f64..10.0, beta in -10.0f64..10.0, n in 1usize..=20) {
        let ours = tridiag::det(&mat(alpha, beta, n), ArithmeticMode::FloatingDouble).unwrap().to_f64();
        let dense = toeplitz_det(alpha, beta, n);
        // both sides suffer the same cancellation near a root of the
        // continuant; compare against the size of the terms that cancel
        let scale = (alpha.abs() + 2.0 * beta.abs()).powi(n as i32);
        prop_assert!((ours - dense).abs() <= 1e-9 * dense.abs().max(1e-6 * scale),
            "ours {} dense {}", ours, dense);
    }

    #[test]
    fn chebyshev_form_matches_recurrence(alpha in -10.0f64..10.0, beta in prop_oneof![-10.0f64..-0.01, 0.01f64..10.0], n in 0usize..=40) {
        let m = mat(alpha, beta, n);
        let d = tridiag::det(&m, ArithmeticMode::FloatingDouble).unwrap().to_f64();
        let c = tridiag::det_chebyshev(&m).unwrap();
        let scale = (alpha.abs() + 2.0 * beta.abs()).powi(n as i32);
        prop_assert!((c - d).abs() <= 1e-9 * d.abs().max(1e-6 * scale), "cheb {} det {}", c, d);
    }

    #[test]
    fn float_identity_in_oscillatory_regime(beta in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0], x in -1.0f64..=1.0, n in 2usize..=40) {
        // |alpha| <= 2|beta|: the continuants stay O(N beta^N), so the gap
        // A_{N-1}^2 - A_{N-2} A_N is computed without catastrophic cancellation.
        let alpha = 2.0 * beta * x;
        let r = tridiag::identity_residual(&mat(alpha, beta, n), ArithmeticMode::FloatingDouble).unwrap().to_f64();
        prop_assert!(r.abs() <= 1e-9, "residual {}", r);
    }

    #[test]
    fn float_telescoping_in_oscillatory_regime(beta in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0], x in -1.0f64..=1.0, n in 3usize..=40) {
        let alpha = 2.0 * beta * x;
        let a = tridiag::det_sequence(&mat(alpha, beta, n), ArithmeticMode::FloatingDouble).unwrap().to_f64_vec();
        let lhs = a[n - 1] * a[n - 1] - a[n - 2] * a[n];
        let rhs = beta * beta * (a[n - 2] * a[n - 2] - a[n - 3] * a[n - 1]);
        prop_assert!(rel(lhs, rhs) <= 1e-9, "{} vs {}", lhs, rhs);
    }
}

#[test]
fn every_other_fibonacci_number() {
    // alpha = 3, beta = 1 gives F_2, F_4, F_6, ...
    let a = exact(3, 1, 20);
    let (mut f0, mut f1) = (BigInt::from(0), BigInt::from(1));
    let mut fib = vec![f0.clone()];
    for _ in 0..42 {
        let f2 = &f0 + &f1;
        f0 = f1;
        f1 = f2;
        fib.push(f0.clone());
    }
    for (k, ak) in a.iter().enumerate() {
        assert_eq!(ak, &fib[2 * k + 2], "k = {k}");
    }
}

#[test]
fn float_identity_loses_precision_outside_oscillatory_regime() {
    // alpha = 3, beta = 1, N = 40: A_39 ~ 1e16, so the gap of two ~1e32
    // products is unresolvable in double precision even though it is 1.
    let r = tridiag::identity_residual(&mat(3.0, 1.0, 40), ArithmeticMode::FloatingDouble).unwrap().to_f64();
    assert!(r.abs() > 1e-9);
    let e = tridiag::identity_residual(&mat(3.0, 1.0, 40), ArithmeticMode::ExactInteger).unwrap();
    assert!(e.is_zero());
}
