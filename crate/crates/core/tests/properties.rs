mod common;

use std::f64::consts::FRAC_PI_4;

use proptest::prelude::*;
use qecgate_core::states::schmidt_amplitudes;
use qecgate_core::{
    apply_postselect, fidelity, make_plan, reconstruct, run_exact, run_monte_carlo, schmidt_decompose, svd2x2,
    tensor_matrix, tensor_vector, Complex64, ComplexMatrix, ComplexVector, GateParams, StepMode,
};

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix2() -> impl Strategy<Value = ComplexMatrix> {
    prop::array::uniform4(complex()).prop_map(|[a, b, c, d]| ComplexMatrix::from_rows([[a, b], [c, d]]))
}

fn int_matrix2() -> impl Strategy<Value = ComplexMatrix> {
    prop::array::uniform8(-9i32..10).prop_map(|e| {
        let c = |k: usize| Complex64::new(e[2 * k] as f64, e[2 * k + 1] as f64);
        ComplexMatrix::from_rows([[c(0), c(1)], [c(2), c(3)]])
    })
}

fn state4() -> impl Strategy<Value = ComplexVector> {
    prop::array::uniform4(complex())
        .prop_filter("nonzero", |a| a.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-4)
        .prop_map(|a| ComplexVector::new(a.to_vec()).normalized().unwrap())
}

fn unitary2() -> impl Strategy<Value = ComplexMatrix> {
    any::<u64>().prop_map(|seed| common::random_unitary2(&mut common::rng(seed)))
}

fn params() -> impl Strategy<Value = GateParams> {
    (0.01..0.75f64, 0.001..0.999f64).prop_filter_map("valid gate", |(xi, frac)| {
        let eta = xi + frac * (FRAC_PI_4 - xi);
        GateParams::new(xi, eta).ok().filter(|p| p.step() > 1.0 + 1e-6)
    })
}

proptest! {
    #[test]
    fn svd_reconstructs(m in matrix2()) {
        let svd = svd2x2(&m).unwrap();
        prop_assert!(svd.s[0] >= svd.s[1] && svd.s[1] >= 0.0);
        prop_assert!(svd.u.is_unitary(1e-12));
        prop_assert!(svd.v.is_unitary(1e-12));
        prop_assert!(svd.reconstruct().max_abs_diff(&m).unwrap() < 1e-10);
    }

    #[test]
    fn singular_values_invariant_under_unitaries(m in matrix2(), u in unitary2(), v in unitary2()) {
        let rotated = u.matmul(&m).unwrap().matmul(&v).unwrap();
        let a = svd2x2(&m).unwrap().s;
        let b = svd2x2(&rotated).unwrap().s;
        prop_assert!((a[0] - b[0]).abs() < 1e-10 && (a[1] - b[1]).abs() < 1e-10);
    }

    /// Small-integer entries keep every product exact, so both groupings must
    /// agree bit for bit.
    #[test]
    fn tensor_is_associative(a in int_matrix2(), b in int_matrix2(), c in int_matrix2()) {
        let left = tensor_matrix(&tensor_matrix(&a, &b), &c);
        let right = tensor_matrix(&a, &tensor_matrix(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tensor_associative_up_to_rounding(a in matrix2(), b in matrix2(), c in matrix2()) {
        let left = tensor_matrix(&tensor_matrix(&a, &b), &c);
        let right = tensor_matrix(&a, &tensor_matrix(&b, &c));
        prop_assert!(left.max_abs_diff(&right).unwrap() < 1e-15);
    }

    #[test]
    fn unitaries_preserve_norm(u in unitary2(), w in unitary2(), psi in state4()) {
        let uw = tensor_matrix(&u, &w);
        prop_assert!(uw.unitarity_defect() < 1e-12);
        let out = uw.apply(&psi).unwrap();
        prop_assert!((out.norm() - psi.norm()).abs() < 1e-12);
    }

    #[test]
    fn scaling_scales_norm(psi in state4(), c in complex()) {
        prop_assert!((psi.scale(c).norm() - c.norm() * psi.norm()).abs() < 1e-12);
    }

    #[test]
    fn tensor_of_unit_vectors_is_unit(a in state4(), b in state4()) {
        let v = tensor_vector(&a, &b);
        prop_assert_eq!(v.dim(), 16);
        prop_assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schmidt_round_trip(psi in state4()) {
        let s = schmidt_decompose(&psi).unwrap();
        prop_assert!((0.0..=FRAC_PI_4).contains(&s.theta));
        prop_assert!(s.frame_a.is_unitary(1e-12) && s.frame_b.is_unitary(1e-12));
        let back = reconstruct(&s);
        prop_assert!((back.norm() - 1.0).abs() < 1e-12);
        prop_assert!(back.overlap(&psi).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn schmidt_angle_invariant_under_local_unitaries(psi in state4(), u in unitary2(), v in unitary2()) {
        let moved = tensor_matrix(&u, &v).apply(&psi).unwrap();
        let a = schmidt_decompose(&psi).unwrap().theta;
        let b = schmidt_decompose(&moved).unwrap().theta;
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn gate_unitary(p in params()) {
        prop_assert!(p.unitary().unitarity_defect() < 1e-12);
    }

    #[test]
    fn branches_complete(p in params(), psi in state4()) {
        let [ok, fail] = apply_postselect(&p.unitary(), &psi).unwrap();
        prop_assert!((ok.probability + fail.probability - 1.0).abs() < 1e-12);
        for b in [&ok, &fail] {
            prop_assert!((0.0..=1.0).contains(&b.probability));
            if b.probability > 0.0 {
                prop_assert!((b.state.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn schmidt_input_fails_into_all_ones(p in params(), theta in 0.001..FRAC_PI_4) {
        let [ok, fail] = apply_postselect(&p.unitary(), &schmidt_amplitudes(theta)).unwrap();
        prop_assert!(fail.state.overlap(&ComplexVector::basis(4, 3)).unwrap() > 1.0 - 1e-12);
        let theta1 = (p.step() * theta.tan()).atan();
        prop_assert!((ok.probability - (theta.sin() / theta1.sin()).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn plan_recurrence_and_probability(p in params(), theta0 in 0.01..FRAC_PI_4, capped in any::<bool>()) {
        let mode = if capped { StepMode::Capped } else { StepMode::Nearest };
        let plan = make_plan(theta0, &p, mode).unwrap();
        for w in plan.thetas.windows(2) {
            let next = qecgate_core::next_theta(w[0], &p).unwrap();
            prop_assert!((w[1] - next).abs() < 1e-12);
        }
        let product: f64 = plan.step_probs.iter().product();
        prop_assert!((product - plan.total_prob).abs() < 1e-12);
        prop_assert!(plan.fidelity >= 0.5 && plan.fidelity <= 1.0);
        prop_assert!(plan.normalization_residual < 1e-12);
    }

    /// Shifting θ₀ by one step and removing one application leaves the
    /// fidelity and final angle unchanged.
    #[test]
    fn fidelity_periodic_in_one_step(p in params(), theta0 in 0.01..FRAC_PI_4) {
        let plan = make_plan(theta0, &p, StepMode::Nearest).unwrap();
        prop_assume!(plan.steps >= 1);
        let shifted = (p.step() * theta0.tan()).atan();
        let f = fidelity(shifted, &p, plan.steps - 1).unwrap();
        prop_assert!((f - plan.fidelity).abs() < 1e-12);
        let run = run_exact(shifted, &p, plan.steps - 1).unwrap();
        prop_assert!((run.theta_final() - plan.theta_final()).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn monte_carlo_reproducible(p in params(), theta0 in 0.05..FRAC_PI_4, seed in any::<u64>()) {
        let a = run_monte_carlo(theta0, &p, StepMode::Nearest, 500, seed).unwrap();
        let b = run_monte_carlo(theta0, &p, StepMode::Nearest, 500, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.successes <= a.trials);
        prop_assert_eq!(a.empirical_prob, a.successes as f64 / a.trials as f64);
    }
}

#[test]
fn thousand_random_svds() {
    let mut rng = common::rng(11);
    for _ in 0..1000 {
        let m = common::random_matrix2(&mut rng);
        let svd = svd2x2(&m).unwrap();
        assert!(svd.reconstruct().max_abs_diff(&m).unwrap() < 1e-10);
    }
}

#[test]
fn unitaries_satisfy_defect_bound() {
    let mut rng = common::rng(12);
    for _ in 0..100 {
        let u = common::random_unitary2(&mut rng);
        assert!(u.unitarity_defect() < 1e-12);
        assert_eq!(u.adjoint().adjoint(), u);
    }
}
