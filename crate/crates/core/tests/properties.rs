use approx::assert_relative_eq;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ncmult::algebra::{complex_gaussian, random_element, AlgebraElement, CMatrix, Ensemble, TracialAlgebra, C64};
use ncmult::fourier::build_finite_abelian;
use ncmult::spectral::{lorentz_norm, lp_norm, singular_function};

fn algebra() -> impl Strategy<Value = TracialAlgebra> {
    prop::collection::vec((1usize..=3, 0.1f64..3.0), 1..=3).prop_map(|blocks| {
        let (dims, weights) = blocks.into_iter().unzip();
        TracialAlgebra::new(dims, weights).unwrap()
    })
}

fn ensemble() -> impl Strategy<Value = Ensemble> {
    prop_oneof![
        Just(Ensemble::Gaussian),
        Just(Ensemble::Hermitian),
        Just(Ensemble::RankOne),
        Just(Ensemble::Sparse { density: 0.4 }),
    ]
}

fn random_unitary(alg: &TracialAlgebra, seed: u64) -> AlgebraElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = alg
        .dims()
        .iter()
        .map(|&n| CMatrix::from_fn(n, n, |_, _| complex_gaussian(&mut rng)).qr().q())
        .collect();
    alg.element(blocks).unwrap()
}

/// `λ_s(x) = Σ_k w_k #{σ ∈ spec |x_k| : σ > s}` from nalgebra's own SVD.
fn oracle_distribution(x: &AlgebraElement, s: f64) -> f64 {
    x.blocks()
        .iter()
        .zip(x.algebra().weights())
        .map(|(b, w)| w * b.singular_values().iter().filter(|&&v| v > s).count() as f64)
        .sum()
}

const TOL: f64 = 1e-9;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distribution_matches_block_svd(alg in algebra(), seed in any::<u64>(), ens in ensemble(), frac in 0.0f64..1.0) {
        let x = random_element(&alg, seed, ens);
        let mu = singular_function(&x).unwrap();
        let s = frac * mu.sup();
        let expected = oracle_distribution(&x, s * (1.0 + 1e-9) + 1e-12);
        let got = mu.distribution(s * (1.0 + 1e-9) + 1e-12);
        prop_assert!((got - expected).abs() <= 1e-9 * alg.total_weight(), "{got} vs {expected}");
        prop_assert!(mu.support_measure() <= alg.total_weight() * (1.0 + 1e-12));
    }

    #[test]
    fn singular_numbers_are_submultiplicative(
        alg in algebra(), s1 in any::<u64>(), s2 in any::<u64>(),
        ea in ensemble(), eb in ensemble(), fs in 0.0f64..1.0, ft in 0.0f64..1.0,
    ) {
        let x = random_element(&alg, s1, ea);
        let y = random_element(&alg, s2, eb);
        let (mx, my) = (singular_function(&x).unwrap(), singular_function(&y).unwrap());
        let mxy = singular_function(&x.try_mul(&y).unwrap()).unwrap();
        let total = alg.total_weight();
        let (s, t) = (fs * total, ft * total);
        let floor = 1e-12 * mx.sup() * my.sup();
        let lhs = mxy.value_at(s + t);
        let rhs = mx.value_at(s) * my.value_at(t);
        prop_assert!(lhs <= rhs * (1.0 + TOL) + floor, "μ_(s+t)(xy) = {lhs} > {rhs}");
    }

    #[test]
    fn schatten_holder(alg in algebra(), s1 in any::<u64>(), s2 in any::<u64>(), p in 1.0f64..8.0, q in 1.0f64..8.0) {
        let x = random_element(&alg, s1, Ensemble::Gaussian);
        let y = random_element(&alg, s2, Ensemble::Gaussian);
        let r = 1.0 / (1.0 / p + 1.0 / q);
        let lhs = lp_norm(&x.try_mul(&y).unwrap(), r).unwrap();
        let rhs = lp_norm(&x, p).unwrap() * lp_norm(&y, q).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + TOL));
    }

    #[test]
    fn lorentz_holder_with_constant(alg in algebra(), s1 in any::<u64>(), s2 in any::<u64>(),
        p0 in 0.5f64..6.0, p1 in 0.5f64..6.0, q in 0.5f64..6.0) {
        let x = random_element(&alg, s1, Ensemble::Gaussian);
        let y = random_element(&alg, s2, Ensemble::RankOne);
        let p = 1.0 / (1.0 / p0 + 1.0 / p1);
        let lhs = lorentz_norm(&x.try_mul(&y).unwrap(), p, q).unwrap();
        let rhs = 2f64.powf(1.0 / p) * lorentz_norm(&x, p0, f64::INFINITY).unwrap() * lorentz_norm(&y, p1, q).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + TOL));
    }

    #[test]
    fn lorentz_nesting(alg in algebra(), seed in any::<u64>(), ens in ensemble(), p in 0.5f64..6.0, q in 0.5f64..6.0, dr in 0.0f64..6.0) {
        let x = random_element(&alg, seed, ens);
        let r = q + dr;
        let c = (q / p).powf(1.0 / q - 1.0 / r);
        let lhs = lorentz_norm(&x, p, r).unwrap();
        prop_assert!(lhs <= c * lorentz_norm(&x, p, q).unwrap() * (1.0 + TOL));
        let weak = lorentz_norm(&x, p, f64::INFINITY).unwrap();
        prop_assert!(weak <= (q / p).powf(1.0 / q) * lorentz_norm(&x, p, q).unwrap() * (1.0 + TOL));
    }

    #[test]
    fn diagonal_lorentz_index_is_lp(alg in algebra(), seed in any::<u64>(), p in 0.5f64..8.0) {
        let x = random_element(&alg, seed, Ensemble::Gaussian);
        assert_relative_eq!(lorentz_norm(&x, p, p).unwrap(), lp_norm(&x, p).unwrap(), max_relative = 1e-10);
    }

    #[test]
    fn unitary_invariance(alg in algebra(), seed in any::<u64>(), ens in ensemble(), p in 0.5f64..8.0, q in 0.5f64..8.0) {
        let x = random_element(&alg, seed, ens);
        let u = random_unitary(&alg, seed ^ 1);
        let v = random_unitary(&alg, seed ^ 2);
        let uxv = u.try_mul(&x).unwrap().try_mul(&v).unwrap();
        assert_relative_eq!(lp_norm(&uxv, p).unwrap(), lp_norm(&x, p).unwrap(), max_relative = 1e-9);
        assert_relative_eq!(lorentz_norm(&uxv, p, q).unwrap(), lorentz_norm(&x, p, q).unwrap(), max_relative = 1e-9);
        assert_relative_eq!(lp_norm(&x.adjoint(), p).unwrap(), lp_norm(&x, p).unwrap(), max_relative = 1e-9);
    }

    #[test]
    fn homogeneity(alg in algebra(), seed in any::<u64>(), re in -5.0f64..5.0, im in -5.0f64..5.0, p in 0.5f64..8.0, q in 0.5f64..8.0) {
        let x = random_element(&alg, seed, Ensemble::Gaussian);
        let c = C64::new(re, im);
        let cx = x.scale(c);
        assert_relative_eq!(lp_norm(&cx, p).unwrap(), c.norm() * lp_norm(&x, p).unwrap(), max_relative = 1e-9, epsilon = 1e-300);
        assert_relative_eq!(lorentz_norm(&cx, p, q).unwrap(), c.norm() * lorentz_norm(&x, p, q).unwrap(), max_relative = 1e-9, epsilon = 1e-300);
    }

    #[test]
    fn trace_identities(alg in algebra(), seed in any::<u64>(), ens in ensemble()) {
        let x = random_element(&alg, seed, ens);
        let xx = x.adjoint().try_mul(&x).unwrap();
        let l2 = lp_norm(&x, 2.0).unwrap();
        assert_relative_eq!(l2 * l2, xx.trace().re, max_relative = 1e-10);
        prop_assert!(xx.trace().im.abs() <= 1e-10 * (1.0 + l2 * l2));
        prop_assert!(x.trace().norm() <= lp_norm(&x, 1.0).unwrap() * (1.0 + TOL));
        assert_relative_eq!(lp_norm(&alg.identity(), 1.0).unwrap(), alg.total_weight(), max_relative = 1e-12);
    }

    #[test]
    fn abelian_plancherel(orders in prop::collection::vec(2usize..6, 1..=2), seed in any::<u64>()) {
        let pair = build_finite_abelian(&orders).unwrap();
        let x = random_element(pair.source(), seed, Ensemble::Gaussian);
        let fx = pair.fourier(&x).unwrap();
        assert_relative_eq!(lp_norm(&fx, 2.0).unwrap(), lp_norm(&x, 2.0).unwrap(), max_relative = 1e-10);
        prop_assert!(lp_norm(&fx, f64::INFINITY).unwrap() <= lp_norm(&x, 1.0).unwrap() * (1.0 + TOL));
        let back = pair.inverse_fourier(&fx).unwrap();
        prop_assert!(back.max_abs_diff(&x).unwrap() <= 1e-10 * (1.0 + lp_norm(&x, 2.0).unwrap()));
    }
}

#[test]
fn block_weights_scale_norms() {
    // τ = w Tr on M_n multiplies ‖x‖_p by w^{1/p}
    let a = TracialAlgebra::new(vec![3], vec![1.0]).unwrap();
    let b = TracialAlgebra::new(vec![3], vec![2.5]).unwrap();
    let m = DMatrix::from_fn(3, 3, |i, j| C64::new((i + 2 * j) as f64, 1.0 - i as f64));
    let xa = a.element(vec![m.clone()]).unwrap();
    let xb = b.element(vec![m]).unwrap();
    for p in [1.0, 1.5, 2.0, 3.0] {
        assert_relative_eq!(
            lp_norm(&xb, p).unwrap(),
            2.5f64.powf(1.0 / p) * lp_norm(&xa, p).unwrap(),
            max_relative = 1e-12
        );
    }
}
