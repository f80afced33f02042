//! Property tests for the algebraic invariants.

use proptest::prelude::*;

use spinordual_core::bilinears::{bilinears, dirac_bilinears, dirac_dual, transformed_bilinears, BilinearSet, Spinor};
use spinordual_core::classify::{extended_class, lounesto_class, ZeroPolicy};
use spinordual_core::clifford::{gamma, gamma0_adjoint, is_gamma0_hermitian, matrix_of, multivector_of, sigma_upper, Multivector};
use spinordual_core::duals::{unit_constraint, Branch, DualCoefficients};
use spinordual_core::fpk::check_fpk;
use spinordual_core::classify::ClassLabel;
use spinordual_core::reconstruction::{aggregate, invert};
use spinordual_core::tensor::{c, dot, raise, Bivector, Matrix4, Vector4, C64, METRIC};

fn unit() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

fn spinor() -> impl Strategy<Value = Spinor> {
    prop::array::uniform8(unit()).prop_map(|p| Spinor::from_real_parts(&p))
}

fn complex() -> impl Strategy<Value = C64> {
    (unit(), unit()).prop_map(|(re, im)| c(re, im))
}

fn multivector() -> impl Strategy<Value = Multivector> {
    prop::array::uniform16(complex()).prop_map(Multivector::from_coefficients)
}

fn real_multivector() -> impl Strategy<Value = Multivector> {
    prop::array::uniform16(unit()).prop_map(|x| Multivector::from_coefficients(x.map(|r| c(r, 0.0))))
}

fn coefficients() -> impl Strategy<Value = DualCoefficients> {
    (
        prop::array::uniform5(complex()),
        prop::array::uniform4(complex()),
        prop::array::uniform4(complex()),
        prop::array::uniform6(complex()),
    )
        .prop_map(|(s, v, n, h)| DualCoefficients {
            a: s[0],
            b: s[1],
            c: s[2],
            d: s[3],
            e: s[4],
            v: Vector4::from_column_slice(&v),
            n: Vector4::from_column_slice(&n),
            h: Bivector::new(h),
        })
}

fn max_dev(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multivector_round_trip(mv in multivector()) {
        let back = multivector_of(&matrix_of(&mv));
        prop_assert!(max_dev(&mv.coefficients(), &back.coefficients()) < 1e-12);
    }

    #[test]
    fn matrix_round_trip(entries in prop::array::uniform16(complex())) {
        let d = Matrix4::from_column_slice(&entries);
        let back = matrix_of(&multivector_of(&d));
        prop_assert!((back - d).norm() < 1e-12);
    }

    #[test]
    fn real_coefficients_are_gamma0_hermitian(mv in real_multivector()) {
        prop_assert!(is_gamma0_hermitian(&matrix_of(&mv), 1e-12));
    }

    #[test]
    fn gamma0_hermitian_part_has_real_coefficients(mv in multivector()) {
        let m = matrix_of(&mv);
        let herm = (m + gamma0_adjoint(&m)) * C64::from(0.5);
        prop_assert!(multivector_of(&herm).is_real(1e-12));
    }

    #[test]
    fn closed_form_equals_first_principles(psi in spinor(), coeffs in coefficients()) {
        let closed = transformed_bilinears(&dirac_bilinears(&psi), &coeffs).unwrap();
        let direct = bilinears(&psi, &coeffs.to_multivector());
        prop_assert!(closed.max_deviation(&direct) < 1e-10);
    }

    #[test]
    fn dirac_bilinears_are_real(psi in spinor()) {
        prop_assert!(dirac_bilinears(&psi).is_real(1e-12));
    }

    #[test]
    fn degree_two_homogeneity(psi in spinor(), mv in multivector(), lambda in -3.0..3.0f64, phase in 0.0..6.28f64) {
        let base = bilinears(&psi, &mv);
        let scaled = bilinears(&psi.scaled(c(lambda, 0.0)), &mv);
        prop_assert!(scaled.max_deviation(&base.scaled(c(lambda * lambda, 0.0))) < 1e-10);
        let rotated = bilinears(&psi.scaled(C64::from_polar(1.0, phase)), &mv);
        prop_assert!(rotated.max_deviation(&base) < 1e-12);
    }

    #[test]
    fn bilinears_are_linear_in_the_dual(psi in spinor(), x in multivector(), y in multivector()) {
        let sum = Multivector::from_coefficients(std::array::from_fn(|k| x.coefficients()[k] + y.coefficients()[k]));
        let lhs = bilinears(&psi, &sum).components();
        let bx = bilinears(&psi, &x).components();
        let by = bilinears(&psi, &y).components();
        let rhs: Vec<C64> = bx.iter().zip(by).map(|(p, q)| p + q).collect();
        prop_assert!(max_dev(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn lorentz_covariance(psi in spinor(), a in 0usize..4, b in 0usize..4, theta in -0.3..0.3f64) {
        prop_assume!(a != b);
        let generator = sigma_upper(a, b).unwrap() * C64::from(theta);
        let s = generator.exp();
        let s_inv = (-generator).exp();
        // Λ^p_q = ¼ Tr(S⁻¹ γ^p S γ_q)
        let lambda = Matrix4::from_fn(|p, q| {
            (s_inv * gamma(p).unwrap() * s * gamma(q).unwrap()).trace() * (0.25 * METRIC[q])
        });
        let metric = Matrix4::from_fn(|p, q| if p == q { C64::from(METRIC[p]) } else { C64::from(0.0) });
        prop_assert!((lambda.transpose() * metric * lambda - metric).norm() < 1e-10);

        let before = dirac_bilinears(&psi);
        let after = dirac_bilinears(&Spinor::from_vector(s * psi.components()));
        prop_assert!((after.phi - before.phi).norm() < 1e-9);
        prop_assert!((after.theta - before.theta).norm() < 1e-9);
        prop_assert!((raise(&after.u) - lambda * raise(&before.u)).norm() < 1e-9);
        prop_assert!((raise(&after.s) - lambda * raise(&before.s)).norm() < 1e-9);
        prop_assert!((dot(&after.u, &after.u) - dot(&before.u, &before.u)).norm() < 1e-9);
    }

    #[test]
    fn fpk_holds_for_every_spinor(psi in spinor()) {
        prop_assert!(check_fpk(&dirac_bilinears(&psi), 1e-10).passes);
    }

    #[test]
    fn fpk_verdict_is_scale_invariant_on_spinor_sets(psi in spinor(), log_lambda in -3.0..3.0f64) {
        let lambda = 10f64.powf(log_lambda);
        let b = dirac_bilinears(&psi);
        let base = check_fpk(&b, 1e-10).passes;
        prop_assert_eq!(check_fpk(&b.scaled(c(lambda * lambda, 0.0)), 1e-10).passes, base);
    }

    #[test]
    fn fpk_verdict_is_scale_invariant_on_perturbed_sets(psi in spinor(), log_lambda in -3.0..3.0f64, slot in 0usize..16, kick in unit()) {
        let lambda = 10f64.powf(log_lambda);
        let mut comps = dirac_bilinears(&psi).components();
        comps[slot] += c(kick, 0.0);
        let b = BilinearSet::from_components(comps);
        let base = check_fpk(&b, 1e-10).passes;
        prop_assert_eq!(check_fpk(&b.scaled(c(lambda * lambda, 0.0)), 1e-10).passes, base);
    }

    #[test]
    fn fpk_max_is_the_largest_residual(psi in spinor(), slot in 0usize..16, kick in unit()) {
        let mut comps = dirac_bilinears(&psi).components();
        comps[slot] += c(kick, 0.0);
        let r = check_fpk(&BilinearSet::from_components(comps), 1e-10);
        let max = r.residuals.iter().map(|(_, x)| *x).fold(0.0, f64::max);
        prop_assert_eq!(max, r.max_residual);
    }

    #[test]
    fn standard_and_extended_labels_agree(psi in spinor(), log_lambda in -2.0..2.0f64) {
        let policy = ZeroPolicy::default();
        let b = dirac_bilinears(&psi);
        if let Some(label) = lounesto_class(&b, &policy) {
            prop_assert_eq!(extended_class(&b, &policy), Some(label));
        }
        let lambda = 10f64.powf(log_lambda);
        prop_assert_eq!(extended_class(&b.scaled(c(lambda * lambda, 0.0)), &policy), extended_class(&b, &policy));
    }

    #[test]
    fn feasible_constraint_branches(s in prop::array::uniform5(-2.0..2.0f64)) {
        let coeffs = DualCoefficients {
            a: s[0].into(), b: s[1].into(), c: s[2].into(), d: s[3].into(), e: s[4].into(),
            ..DualCoefficients::identity()
        };
        let r = unit_constraint(&coeffs);
        if r.max_residual() > 1e-6 {
            prop_assert_eq!(r.branch, Branch::Neither);
        }
        prop_assert!(matches!(r.branch, Branch::Dirac | Branch::AZero | Branch::Neither));
    }

    #[test]
    fn coefficients_round_trip_through_the_matrix(coeffs in coefficients()) {
        let mv = coeffs.to_multivector();
        let back = DualCoefficients::from_multivector(&multivector_of(&matrix_of(&mv)));
        prop_assert!(max_dev(&back.to_multivector().coefficients(), &mv.coefficients()) < 1e-12);
    }

    #[test]
    fn inversion_recovers_the_spinor(psi in spinor()) {
        let back = invert(&dirac_bilinears(&psi)).unwrap();
        let overlap = psi.components().dotc(back.components());
        let phase = overlap / overlap.norm();
        prop_assert!((back.components() - psi.components() * phase).norm() < 1e-8);
    }

    #[test]
    fn canonical_phase_is_idempotent(psi in spinor()) {
        let once = psi.canonical_phase();
        prop_assert_eq!(once.canonical_phase(), once);
    }

    #[test]
    fn dirac_dual_is_antilinear(psi in spinor(), z in complex()) {
        let lhs = dirac_dual(&psi.scaled(z)).0;
        let rhs = dirac_dual(&psi).0 * z.conj();
        prop_assert!((lhs - rhs).norm() < 1e-13);
    }
    #[test]
    fn aggregate_of_a_spinor_has_rank_one(psi in spinor()) {
        prop_assume!(psi.norm() > 1e-3);
        let z = aggregate(&dirac_bilinears(&psi)).unwrap();
        prop_assert_eq!(z.rank(1e-9), 1);
        prop_assert!(z.bilinears().max_deviation(&dirac_bilinears(&psi)) < 1e-10);
    }

    #[test]
    fn sigma_is_always_the_dual_of_m(psi in spinor(), mv in multivector()) {
        let b = bilinears(&psi, &mv);
        prop_assert_eq!(b.sigma(), b.m.dual());
    }

    #[test]
    fn zero_flags_follow_the_policy(psi in spinor(), abs_floor in 0.0..0.5f64, rel in 0.0..0.5f64) {
        let policy = ZeroPolicy::new(abs_floor, rel).unwrap();
        let b = dirac_bilinears(&psi);
        let t = abs_floor.max(rel * b.max_abs());
        let flags = spinordual_core::classify::zero_pattern(&b, &policy).flags();
        let sizes = [b.phi.norm(), b.theta.norm(), spinordual_core::tensor::max_abs_vector(&b.u),
                     spinordual_core::tensor::max_abs_vector(&b.s), b.m.max_abs()];
        for (flag, size) in flags.iter().zip(sizes) {
            prop_assert_eq!(*flag, size <= t);
        }
    }
}

#[test]
fn labels_have_distinct_patterns() {
    for x in ClassLabel::ALL {
        for y in ClassLabel::ALL {
            if x != y {
                assert_ne!(x.pattern(), y.pattern(), "{x} vs {y}");
            }
        }
        assert_eq!(ClassLabel::from_pattern(&x.pattern()), Some(x));
    }
}

#[test]
fn clifford_anticommutator() {
    for a in 0..4 {
        for b in 0..4 {
            let ga = gamma(a).unwrap();
            let gb = gamma(b).unwrap();
            let expected = if a == b { Matrix4::identity() * C64::from(2.0 * METRIC[a]) } else { Matrix4::zeros() };
            assert!((ga * gb + gb * ga - expected).norm() < 1e-15);
        }
    }
}


/// Dirac-branch samples of the constraint system are exactly a = ±1.
#[test]
fn constraint_feasibility_on_random_samples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for _ in 0..10_000 {
        let s: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let coeffs = DualCoefficients {
            a: s[0].into(),
            b: s[1].into(),
            c: s[2].into(),
            d: s[3].into(),
            e: s[4].into(),
            ..DualCoefficients::identity()
        };
        let r = unit_constraint(&coeffs);
        assert!(r.branch != Branch::Dirac || (s[0].abs() - 1.0).abs() < 1e-6);
    }
}
