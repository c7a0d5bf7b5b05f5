//! Invariants of the linear algebra, spectral, IFS and decision layers.

mod common;

use common::*;
use fractal_hull::decide::{analyze, decide_theorem1, CertCheck, DecideOptions, Decision};
use fractal_hull::ifs::{ledger_at, step_hull, validate_model, FiniteAddress};
use fractal_hull::numeric::{eigen_residual, eigenvalues, spectral_radius, Complex64, Matrix, ToleranceConfig, Vector};
use fractal_hull::spectral::{
    angle_residual, classify_angle, compute_bound_k, exact_angle_test_2x2, inverse_spectrum, sw_criterion, BoundMode,
    BoundOutcome, ExactAngle,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational(max: i64, den: i64) -> impl Strategy<Value = Q> {
    (-max..=max, 1..=den).prop_map(|(n, d)| q(n, d))
}

fn matrix(n: usize, max: i64, den: i64) -> impl Strategy<Value = Matrix<Q>> {
    prop::collection::vec(prop::collection::vec(rational(max, den), n), n)
        .prop_map(|rows| Matrix::from_rows(rows).unwrap())
}

fn any_matrix() -> impl Strategy<Value = Matrix<Q>> {
    (1usize..=3).prop_flat_map(|n| matrix(n, 9, 4))
}

fn vector(n: usize) -> impl Strategy<Value = Vector<Q>> {
    prop::collection::vec(rational(9, 4), n).prop_map(Vector::new)
}

fn model_strategy() -> impl Strategy<Value = fractal_hull::RationalModel> {
    any::<u64>().prop_map(|seed| random_model(&mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalue_residuals(t in any_matrix()) {
        let n = t.dim() as i32;
        let bound = 1e-8 * (1.0 + t.inf_norm_f64().powi(n));
        for lambda in eigenvalues(&t) {
            prop_assert!(eigen_residual(&t, lambda) <= bound, "{t} {lambda}");
        }
    }

    #[test]
    fn solve_round_trips_exactly((a, b) in (1usize..=3).prop_flat_map(|n| (matrix(n, 9, 4), vector(n)))) {
        if let Ok(x) = a.solve(&b, 0.0) {
            prop_assert_eq!(a.apply(&x).unwrap(), b);
        } else {
            prop_assert_eq!(a.det(), q(0, 1));
        }
    }

    #[test]
    fn power_is_additive(t in any_matrix(), a in 0u64..6, b in 0u64..6) {
        prop_assert_eq!(t.pow(a + b), t.pow(a).mul(&t.pow(b)).unwrap());
    }

    #[test]
    fn radius_of_powers(t in any_matrix(), k in 1u64..=8) {
        let rho = spectral_radius(&t);
        let rho_k = spectral_radius(&t.pow(k));
        let expected = rho.powi(k as i32);
        prop_assert!((rho_k - expected).abs() <= 1e-6 * expected.max(1e-300), "{t} k={k}: {rho_k} vs {expected}");
    }

    #[test]
    fn conjugate_angles_mirror(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        prop_assume!(im != 0.0);
        let tol = ToleranceConfig::default();
        let a = classify_angle(Complex64::new(re, im), &tol).rational_angle;
        let b = classify_angle(Complex64::new(re, -im), &tol).rational_angle;
        prop_assert_eq!(a.map(|r| (-r.p, r.n)), b.map(|r| (r.p, r.n)));
    }

    #[test]
    fn rational_angles_mirror(p in -20i64..=20, n in 1u32..=40, modulus in 0.5f64..4.0) {
        let angle = std::f64::consts::PI * p as f64 / n as f64;
        prop_assume!(angle.abs() < std::f64::consts::PI && p != 0);
        let tol = ToleranceConfig::default();
        let a = classify_angle(Complex64::from_polar(modulus, angle), &tol).rational_angle.unwrap();
        let b = classify_angle(Complex64::from_polar(modulus, -angle), &tol).rational_angle.unwrap();
        prop_assert_eq!((a.p, a.n), (-b.p, b.n));
        prop_assert_eq!(a.p as f64 / a.n as f64, p as f64 / n as f64);
    }

    #[test]
    fn bound_powers_are_positive_real(t in matrix(2, 4, 4)) {
        prop_assume!(t.det() != q(0, 1));
        let classes = inverse_spectrum(&t, &ToleranceConfig::default());
        for mode in [BoundMode::Product, BoundMode::Lcm] {
            if let BoundOutcome::Bound(b) = compute_bound_k(&classes, mode) {
                for c in &b.members {
                    let p = c.lambda.powu(b.k as u32);
                    let scale = c.modulus.powi(b.k as i32);
                    prop_assert!(p.im.abs() <= 1e-6 * scale, "{t}: {:?}^{} = {p}", c.lambda, b.k);
                    prop_assert!(p.re > 0.0);
                }
            }
        }
    }

    #[test]
    fn exact_angle_test_agrees_with_float(t_inv in matrix(2, 8, 8)) {
        let disc = t_inv.trace() * &t_inv.trace() - q(4, 1) * &t_inv.det();
        prop_assume!(disc < q(0, 1));
        let tol = ToleranceConfig::default();
        let lambda = eigenvalues(&t_inv)[0];
        let class = classify_angle(lambda, &tol);
        let residual = angle_residual(class.angle, tol.denom_max);
        prop_assume!(residual < tol.angle_tol / 10.0 || residual > 10.0 * tol.angle_tol);
        let exact = exact_angle_test_2x2(&t_inv, tol.denom_max).unwrap();
        let exact_rational = matches!(exact, ExactAngle::Rational { n, .. } if n <= tol.denom_max);
        prop_assert_eq!(exact_rational, class.rational_angle.is_some(), "{}", t_inv);
        if let (ExactAngle::Rational { n, .. }, Some(r)) = (exact, class.rational_angle) {
            prop_assert_eq!(n, r.n);
        }
    }

    #[test]
    fn sw_verdict_is_scale_invariant(m in model_strategy(), num in 1i64..=7, den in 1i64..=7) {
        let scale = q(num, den);
        let scaled: Vec<Vector<Q>> = m.digits().iter().map(|d| d.scale(&scale)).collect();
        let a = sw_criterion(m.matrix(), m.digits(), 16, 1e-9);
        let b = sw_criterion(m.matrix(), &scaled, 16, 1e-9);
        prop_assert_eq!(a.verdict, b.verdict);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn ledger_invariants(m in model_strategy()) {
        let mut ledger = ledger_at(&m, 0);
        for _ in 0..6 {
            let next = step_hull(&m, &ledger);
            // monotone hulls (d_1 = 0)
            for v in ledger.hull().vertices() {
                prop_assert!(next.hull().contains(v));
            }
            prop_assert!(next.len() <= m.q() * ledger.len());
            for e in next.entries() {
                prop_assert_eq!(e.address.len(), next.step());
                prop_assert_eq!(&m.evaluate_finite_address(&e.address).unwrap(), &e.point);
            }
            let pts = next.points();
            for (i, p) in pts.iter().enumerate() {
                prop_assert!(!pts[i + 1..].contains(p));
            }
            ledger = next;
        }
    }

    #[test]
    fn conjugation_keeps_count_traces(m in model_strategy(), seed in any::<u64>()) {
        let s = unimodular(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = conjugate(&m, &s);
        for k in 1..=5 {
            prop_assert_eq!(ledger_at(&m, k).len(), ledger_at(&c, k).len());
        }
    }

    #[test]
    fn decisions_are_sound(m in model_strategy()) {
        let r = analyze(&m, &DecideOptions::default());
        // bounded work
        if let Some(k) = r.bound_k() {
            prop_assert!(r.counts.len() as u64 <= k + 1);
        }
        match &r.decision {
            Decision::Polytope { vertices, stabilization_index, certified } => {
                prop_assert!(*certified);
                let i = *stabilization_index;
                prop_assert_eq!(vertices.len(), r.counts[i - 1].count);
                let cert = r.certification.as_ref().unwrap();
                let hull = cert.hull.as_ref().unwrap();
                for check in &cert.transcript {
                    prop_assert!(check.passed());
                    if let CertCheck::Containment { image, .. } = check {
                        prop_assert!(hull.contains(image));
                    }
                }
                for (addr, v) in vertices {
                    prop_assert_eq!(&m.evaluate_ep_address(addr).unwrap(), v);
                    for j in 1..=m.q() {
                        prop_assert!(hull.contains(&m.apply_map(j, v)));
                    }
                }
            }
            Decision::NotPolytope(_) => {
                let counts: Vec<usize> = r.counts.iter().map(|c| c.count).collect();
                prop_assert!(counts.windows(2).all(|w| w[0] != w[1]));
            }
            Decision::Inconclusive { .. } => {}
        }
    }

    #[test]
    fn translation_keeps_decisions(m in model_strategy(), a in rational(9, 5), b in rational(9, 5)) {
        let moved = translate(&m, &Vector::new(vec![a, b]));
        let opts = DecideOptions::default();
        let r0 = decide_theorem1(&m, &opts);
        let r1 = decide_theorem1(&moved, &opts);
        prop_assert_eq!(r0.decision, r1.decision);
        let c0: Vec<usize> = r0.counts.iter().map(|c| c.count).collect();
        let c1: Vec<usize> = r1.counts.iter().map(|c| c.count).collect();
        prop_assert_eq!(c0, c1);
    }
}

#[test]
fn float_and_exact_models_agree_on_the_corpus() {
    let opts = DecideOptions::default();
    for m in corpus().iter().take(30) {
        let exact = decide_theorem1(m, &opts);
        let float = decide_theorem1(&m.to_f64(), &opts);
        let ce: Vec<usize> = exact.counts.iter().map(|c| c.count).collect();
        let cf: Vec<usize> = float.counts.iter().map(|c| c.count).collect();
        assert_eq!(exact.decision.verdict_id(), float.decision.verdict_id(), "{ce:?} vs {cf:?}");
    }
}

#[test]
fn one_and_three_dimensional_models() {
    let t1 = Matrix::<Q>::from_ratios(&[&[(-1, 3)]]);
    let m1 = validate_model(t1, vec![Vector::from_ints(&[0]), Vector::from_ints(&[2])], ToleranceConfig::default())
        .unwrap();
    assert_eq!(analyze(&m1, &DecideOptions::default()).decision.verdict_id(), "POLYTOPE");

    // anisotropic cube scaling: not a polytope with a simplex digit set
    let t3 = Matrix::<Q>::from_ratios(&[
        &[(1, 2), (0, 1), (0, 1)],
        &[(0, 1), (1, 3), (0, 1)],
        &[(0, 1), (0, 1), (1, 5)],
    ]);
    let d = vec![
        Vector::from_ints(&[0, 0, 0]),
        Vector::from_ints(&[1, 0, 0]),
        Vector::from_ints(&[0, 1, 0]),
        Vector::from_ints(&[0, 0, 1]),
    ];
    let m3 = validate_model(t3, d, ToleranceConfig::default()).unwrap();
    let r = analyze(&m3, &DecideOptions::default());
    assert_eq!(r.decision.verdict_id(), "NOT_POLYTOPE_NO_STABILIZATION");
    assert_eq!(r.cross_check.unwrap().agreement, fractal_hull::decide::Agreement::Agree);

    // same digits with T = I/2: the simplex is its own hull
    let half = Matrix::<Q>::identity(3).scale(&q(1, 2));
    let d = vec![
        Vector::from_ints(&[0, 0, 0]),
        Vector::from_ints(&[1, 0, 0]),
        Vector::from_ints(&[0, 1, 0]),
        Vector::from_ints(&[0, 0, 1]),
    ];
    let m = validate_model(half, d, ToleranceConfig::default()).unwrap();
    let r = analyze(&m, &DecideOptions::default());
    assert!(matches!(r.decision, Decision::Polytope { certified: true, .. }));
    let finite = FiniteAddress::new(vec![2, 3]);
    assert_eq!(m.evaluate_finite_address(&finite).unwrap(), Vector::from_ratios(&[(1, 2), (1, 4), (0, 1)]));
}
