mod common;

use proptest::prelude::*;
use quasiprob_core::pauli::qubit_count;
use quasiprob_core::{
    bloch_to_density, decompose, density_to_bloch, mh_joint, pauli_expand, pauli_synthesize,
    symmetric_product, tensor, BlochVector, EPS,
};

fn dim_strategy() -> impl Strategy<Value = usize> {
    prop_oneof![Just(2usize), Just(4), Just(8)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pauli_round_trip(seed in any::<u64>(), dim in dim_strategy()) {
        let mut rng = common::rng(seed);
        let m = common::random_hermitian(&mut rng, dim);
        let n = qubit_count(dim).unwrap();
        let e = pauli_expand(&m, n).unwrap();
        let back = pauli_synthesize(&e);
        prop_assert!(back.approx_eq(&m, EPS), "diff {}", back.max_abs_diff(&m));
        // expand ∘ synthesize is the identity on coefficients too.
        let again = pauli_expand(&back, n).unwrap();
        prop_assert!(again.approx_eq(&e, EPS));
    }

    #[test]
    fn symmetric_product_is_symmetric(seed in any::<u64>(), dim in dim_strategy()) {
        let mut rng = common::rng(seed);
        let a = common::random_hermitian(&mut rng, dim);
        let b = common::random_hermitian(&mut rng, dim);
        let ab = symmetric_product(&a, &b).unwrap();
        prop_assert_eq!(&ab, &symmetric_product(&b, &a).unwrap());
        prop_assert!(ab.is_hermitian(EPS));
        let direct = a.trace_product(&b).unwrap().re;
        prop_assert!((ab.trace().re - direct).abs() <= 1e-10 * (1.0 + direct.abs()));
    }

    #[test]
    fn tensor_trace_is_multiplicative(seed in any::<u64>(), da in dim_strategy(), db in dim_strategy()) {
        let mut rng = common::rng(seed);
        let a = common::random_hermitian(&mut rng, da);
        let b = common::random_hermitian(&mut rng, db);
        let t = tensor(&a, &b);
        prop_assert_eq!(t.dim(), da * db);
        let want = a.trace() * b.trace();
        prop_assert!((t.trace() - want).norm() <= 1e-10 * (1.0 + want.norm()));
    }

    #[test]
    fn bloch_round_trip(theta in 0.0..std::f64::consts::PI, phi in 0.0..std::f64::consts::TAU, r in 0.0f64..=1.0) {
        let b = BlochVector::new(r * theta.sin() * phi.cos(), r * theta.sin() * phi.sin(), r * theta.cos());
        let rho = bloch_to_density(b).unwrap();
        prop_assert!((rho.trace().re - 1.0).abs() <= EPS);
        let back = density_to_bloch(&rho).unwrap();
        prop_assert!((back.x - b.x).abs() <= EPS && (back.y - b.y).abs() <= EPS && (back.z - b.z).abs() <= EPS);
        prop_assert!(bloch_to_density(back).unwrap().approx_eq(&rho, EPS));
    }

    #[test]
    fn decomposition_reconstructs_state(seed in any::<u64>(), dim in dim_strategy(), pure in any::<bool>()) {
        let mut rng = common::rng(seed);
        let rho = if pure { common::random_pure(&mut rng, dim) } else { common::random_density(&mut rng, dim) };
        let basis = common::random_basis(&mut rng, dim);
        let parts = decompose(&rho, &basis).unwrap();
        let born = basis.born_probabilities(&rho).unwrap();
        let mut sum = quasiprob_core::ComplexMatrix::zeros(dim);
        for (part, p) in parts.iter().zip(&born) {
            prop_assert!(part.operator.is_hermitian(EPS));
            prop_assert!((part.weight - p).abs() <= EPS);
            prop_assert!((part.operator.trace().re - part.weight).abs() <= EPS);
            sum = &sum + &part.operator;
        }
        prop_assert!(sum.approx_eq(&rho, EPS), "diff {}", sum.max_abs_diff(&rho));
        prop_assert!((parts.iter().map(|p| p.weight).sum::<f64>() - 1.0).abs() <= EPS);
    }

    #[test]
    fn joint_marginals_and_order_symmetry(seed in any::<u64>(), dim in prop_oneof![Just(2usize), Just(4)]) {
        let mut rng = common::rng(seed);
        let rho = common::random_density(&mut rng, dim);
        let a = common::random_basis(&mut rng, dim);
        let b = common::random_basis(&mut rng, dim);
        let d = mh_joint(&rho, &a, &b).unwrap();
        for (m, p) in d.marginal_a().iter().zip(a.born_probabilities(&rho).unwrap()) {
            prop_assert!((m - p).abs() <= EPS);
        }
        for (m, p) in d.marginal_b().iter().zip(b.born_probabilities(&rho).unwrap()) {
            prop_assert!((m - p).abs() <= EPS);
        }
        prop_assert!((d.total() - 1.0).abs() <= EPS);

        let swapped = mh_joint(&rho, &b, &a).unwrap();
        for (i, pa) in a.projectors().iter().enumerate() {
            for (j, pb) in b.projectors().iter().enumerate() {
                prop_assert!((d.q[i][j] - swapped.q[j][i]).abs() <= EPS);
                let direct = (pb * pa).trace_product(&rho).unwrap().re;
                prop_assert!((d.q[i][j] - direct).abs() <= EPS);
            }
        }
    }
}
