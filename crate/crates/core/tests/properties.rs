use inq_core::qrel::{inq_span, kernel_subspace, m_p, random_projection, KernelKind, ProjectionFamily};
use inq_core::rep::{haar_average, orbit_span, DerivationSet};
use inq_core::verify::orthogonality_residual;
use inq_core::{Algebra, Element, Tensor, TolerancePolicy, Verdict, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=3)
}

fn random_ranks(alg: &Algebra, rng: &mut ChaCha8Rng) -> Vec<usize> {
    alg.dims().iter().map(|&n| rng.random_range(0..=n)).collect()
}

fn random_tensor(alg: &Algebra, rng: &mut ChaCha8Rng) -> Tensor {
    let coeffs = (0..alg.tensor_dim()).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    alg.devectorize(coeffs).unwrap()
}

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complement_gives_the_flip(dims in dims_strategy(), seed in any::<u64>()) {
        let alg = Algebra::new(&dims, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_projection(&alg, &random_ranks(&alg, &mut rng), &mut rng).unwrap();
        let m = m_p(&alg, &p).unwrap();
        let m_c = m_p(&alg, &p.complement()).unwrap();
        prop_assert!(m_c.max_abs_diff(&m.flip()) < 1e-12);
    }

    #[test]
    fn m_p_lies_in_both_kernels(dims in dims_strategy(), seed in any::<u64>()) {
        let alg = Algebra::new(&dims, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_projection(&alg, &random_ranks(&alg, &mut rng), &mut rng).unwrap();
        let m = m_p(&alg, &p).unwrap();
        prop_assert!(alg.mu(&m).unwrap().frobenius_norm() < 1e-10);
        prop_assert!(alg.mu_op(&m).unwrap().frobenius_norm() < 1e-10);
    }

    #[test]
    fn kernel_dimensions_ignore_the_weights(dims in dims_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<f64> = dims.iter().map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let uniform = Algebra::new(&dims, None).unwrap();
        let skewed = Algebra::new(&dims, Some(&w)).unwrap();
        for which in [KernelKind::Mu, KernelKind::MuOp, KernelKind::Joint] {
            prop_assert_eq!(
                kernel_subspace(&uniform, which, tol()).unwrap().dim(),
                kernel_subspace(&skewed, which, tol()).unwrap().dim()
            );
        }
    }

    #[test]
    fn haar_average_is_an_orthogonal_projection(dims in dims_strategy(), seed in any::<u64>()) {
        let alg = Algebra::new(&dims, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (random_tensor(&alg, &mut rng), random_tensor(&alg, &mut rng));
        let hx = haar_average(&alg, &x, tol()).unwrap();
        let hy = haar_average(&alg, &y, tol()).unwrap();
        prop_assert!(haar_average(&alg, &hx, tol()).unwrap().max_abs_diff(&hx) < 1e-10);
        let lhs = alg.inner(&hx, &y).unwrap();
        let rhs = alg.inner(&x, &hy).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn multiplication_is_equivariant(dims in dims_strategy(), seed in any::<u64>()) {
        let alg = Algebra::new(&dims, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tensor(&alg, &mut rng);
        let ops = DerivationSet::new(&alg);
        let mu = alg.mu(&t).unwrap();
        for g in ops.generators() {
            let e = Element::unit(&alg, g.factor, g.row, g.col).unwrap();
            let bracket = &(&e * &mu) - &(&mu * &e);
            let lhs = alg.mu(&ops.apply(g, &t).unwrap()).unwrap();
            prop_assert!((&lhs - &bracket).frobenius_norm() < 1e-10);
        }
    }

    #[test]
    fn antisymmetric_traceless_tensors_are_orthogonal_to_m_p(dims in dims_strategy(), seed in any::<u64>()) {
        let alg = Algebra::new(&dims, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(orthogonality_residual(&alg, 20, &mut rng).unwrap() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn orbit_spans_are_invariant(n in 2usize..=3, seed in any::<u64>()) {
        let alg = Algebra::matrix(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_tensor(&alg, &mut rng);
        let orbit = orbit_span(&alg, &v, tol()).unwrap();
        let ops = DerivationSet::new(&alg);
        for b in orbit.basis_tensors().iter().take(6) {
            for g in ops.generators() {
                prop_assert!(orbit.membership_residual(&ops.apply(g, b).unwrap()).unwrap() < 1e-8);
            }
        }
    }

    #[test]
    fn saturated_span_is_seed_stable(dims in prop::sample::select(vec![vec![2], vec![1, 1], vec![1, 2], vec![1, 1, 1]]), a in any::<u64>(), b in any::<u64>()) {
        let alg = Algebra::new(&dims, None).unwrap();
        let sa = inq_span(&alg, &ProjectionFamily::new(a), tol()).unwrap();
        let sb = inq_span(&alg, &ProjectionFamily::new(b), tol()).unwrap();
        prop_assert!(sa.stalled && sb.stalled);
        prop_assert_eq!(sa.subspace.relate(&sb.subspace).unwrap().verdict, Verdict::Equal);
        let joint = kernel_subspace(&alg, KernelKind::Joint, tol()).unwrap();
        let v = sa.subspace.relate(&joint).unwrap().verdict;
        prop_assert!(v == Verdict::Equal || v == Verdict::Subset);
    }
}
