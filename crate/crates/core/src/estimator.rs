//! Lower bounds for `‖M : L_p → L_q‖` between weighted block algebras.
//!
//! Exact at `p = q = 2`; otherwise multi-restart projected gradient ascent on the
//! sphere `‖z‖_p = 1`. Every estimate carries its witness, so the reported value is
//! a certified lower bound.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::algebra::{random_element_with, random_rank_one_in_block, AlgebraElement, Ensemble};
use crate::error::{Error, Result};
use crate::linmap::LinearMap;
use crate::schatten::SchattenKernel;
use crate::seed::derive_seed;

/// Real domain dimension above which [`brute_force_pq_norm`] refuses to run.
pub const BRUTE_FORCE_MAX_DIM: usize = 8;
pub const BRUTE_FORCE_MIN_SAMPLES: usize = 100_000;
const BRUTE_FORCE_LOCAL_STEPS: usize = 200;
const MAX_HALVINGS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatorOptions {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iters: 500,
            tol: 1e-10,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NormEstimate {
    pub lower_bound: f64,
    /// Domain element with `‖witness‖_p = 1` and `‖M witness‖_q = lower_bound`.
    pub witness: AlgebraElement,
    pub restarts_used: usize,
    pub converged_fraction: f64,
    /// Index of the restart that produced the witness.
    pub best_restart: usize,
    pub p: f64,
    pub q: f64,
    /// Set when `M z = 0` for every starting point.
    pub degenerate: bool,
}

/// Largest singular value of `D_cod^{1/2} M D_dom^{-1/2}`, i.e. `‖M : L_2 → L_2‖`.
pub fn exact_l2_norm(map: &LinearMap) -> Result<f64> {
    let w = weighted_matrix(map);
    let svd = nalgebra::linalg::SVD::try_new(w, false, false, 1e-15, 100_000).ok_or(Error::Svd { block: 0 })?;
    Ok(svd.singular_values.max())
}

fn real_weights(alg: &crate::algebra::TracialAlgebra) -> Vec<f64> {
    alg.coordinate_weights().iter().flat_map(|&w| [w, w]).collect()
}

fn weighted_matrix(map: &LinearMap) -> DMatrix<f64> {
    let wd = real_weights(map.domain());
    let wc = real_weights(map.codomain());
    let mut m = map.matrix().clone();
    for (j, w) in wd.iter().enumerate() {
        m.column_mut(j).scale_mut(w.sqrt().recip());
    }
    for (i, w) in wc.iter().enumerate() {
        m.row_mut(i).scale_mut(w.sqrt());
    }
    m
}

/// Top right singular vector of the weighted matrix, pulled back to domain coordinates.
fn l2_maximizer(map: &LinearMap) -> Option<Vec<f64>> {
    let w = weighted_matrix(map);
    let svd = nalgebra::linalg::SVD::try_new(w, false, true, 1e-15, 100_000)?;
    let vt = svd.v_t?;
    let (imax, _) =
        svd.singular_values.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, &s)| if s > acc.1 { (i, s) } else { acc },
        );
    let wd = real_weights(map.domain());
    Some(vt.row(imax).iter().zip(&wd).map(|(v, w)| v / w.sqrt()).collect())
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().singular_values().max()
}

/// State shared by every ascent run on one map.
struct Ascent<'a> {
    map: &'a LinearMap,
    dom: SchattenKernel,
    cod: SchattenKernel,
    p: f64,
    q: f64,
    step0: f64,
}

struct AscentResult {
    value: f64,
    z: Vec<f64>,
    converged: bool,
}

impl<'a> Ascent<'a> {
    fn new(map: &'a LinearMap, p: f64, q: f64) -> Self {
        let l = spectral_norm(map.matrix());
        Self {
            map,
            dom: SchattenKernel::new(map.domain()),
            cod: SchattenKernel::new(map.codomain()),
            p,
            q,
            step0: if l > 0.0 { 1.0 / l } else { 1.0 },
        }
    }

    fn normalize(&self, z: &mut [f64]) -> bool {
        let n = self.dom.norm(z, self.p);
        if !(n > 0.0 && n.is_finite()) {
            return false;
        }
        z.iter_mut().for_each(|v| *v /= n);
        true
    }

    fn value(&self, z: &[f64], y: &mut [f64]) -> f64 {
        self.map.apply_coords_into(z, y);
        self.cod.norm(y, self.q)
    }

    /// Projected gradient ascent of `‖M z‖_q / ‖z‖_p` from `z`.
    fn run(&self, mut z: Vec<f64>, max_iters: usize, tol: f64) -> Option<AscentResult> {
        if !self.normalize(&mut z) {
            return None;
        }
        let nd = z.len();
        let nc = self.map.codomain().real_dim();
        let mut y = vec![0.0; nc];
        let mut gy = vec![0.0; nc];
        let mut grad = vec![0.0; nd];
        let mut gz = vec![0.0; nd];
        let mut trial = vec![0.0; nd];
        let mut ytrial = vec![0.0; nc];

        self.map.apply_coords_into(&z, &mut y);
        let mut f = self.cod.norm_and_gradient(&y, self.q, &mut gy);
        if f == 0.0 {
            return Some(AscentResult {
                value: 0.0,
                z,
                converged: false,
            });
        }
        let mut step = self.step0;
        let mut converged = false;
        for _ in 0..max_iters {
            // ∇(‖Mz‖_q/‖z‖_p) at ‖z‖_p = 1
            self.map.apply_transpose_into(&gy, &mut grad);
            self.dom.norm_and_gradient(&z, self.p, &mut gz);
            for (g, d) in grad.iter_mut().zip(&gz) {
                *g -= f * d;
            }
            if grad.iter().all(|&g| g == 0.0) {
                converged = true;
                break;
            }
            let mut accepted = None;
            for _ in 0..MAX_HALVINGS {
                for ((t, zi), g) in trial.iter_mut().zip(&z).zip(&grad) {
                    *t = zi + step * g;
                }
                if self.normalize(&mut trial) {
                    let ft = self.value(&trial, &mut ytrial);
                    if ft > f {
                        accepted = Some(ft);
                        break;
                    }
                }
                step *= 0.5;
            }
            let Some(ft) = accepted else {
                converged = true;
                break;
            };
            let rel = (ft - f) / f;
            std::mem::swap(&mut z, &mut trial);
            std::mem::swap(&mut y, &mut ytrial);
            f = self.cod.norm_and_gradient(&y, self.q, &mut gy);
            step *= 2.0;
            if rel < tol {
                converged = true;
                break;
            }
        }
        Some(AscentResult { value: f, z, converged })
    }
}

fn check_exponents(p: f64, q: f64) -> Result<()> {
    for (name, v) in [("p", p), ("q", q)] {
        if !(v > 1.0 && v.is_finite()) {
            return Err(Error::Domain(format!("{name} = {v} must lie in (1, ∞)")));
        }
    }
    Ok(())
}

/// Starting point for restart `i`: the `L_2` maximizer first, then alternating
/// Gaussian and rank-one elements. Rank-one starts visit the blocks in turn, so
/// a few restarts already reach every block of a small algebra.
fn initial_point(map: &LinearMap, i: usize, seed: u64, warm: &Option<Vec<f64>>) -> Vec<f64> {
    if i == 0 {
        if let Some(w) = warm {
            return w.clone();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &["restart", &i.to_string()]));
    let dom = map.domain();
    if i % 2 == 1 {
        random_element_with(dom, &mut rng, Ensemble::Gaussian).real_coords()
    } else {
        let block = (i / 2).saturating_sub(1) % dom.num_blocks();
        random_rank_one_in_block(dom, &mut rng, block).real_coords()
    }
}

/// Multi-restart projected gradient ascent for `sup_{‖z‖_p=1} ‖M z‖_q`.
///
/// Restarts run in parallel; the result is the maximum over the fixed seed set
/// (ties go to the lowest restart index), so it does not depend on scheduling.
pub fn estimate_pq_norm(map: &LinearMap, p: f64, q: f64, opts: &EstimatorOptions) -> Result<NormEstimate> {
    check_exponents(p, q)?;
    if opts.restarts == 0 {
        return Err(Error::Parameter("at least one restart is required".into()));
    }
    let ascent = Ascent::new(map, p, q);
    let warm = l2_maximizer(map);
    let results: Vec<Option<AscentResult>> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| ascent.run(initial_point(map, i, opts.seed, &warm), opts.max_iters, opts.tol))
        .collect();

    let converged = results.iter().flatten().filter(|r| r.converged).count();
    let best = results
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
        .fold(None::<(usize, &AscentResult)>, |acc, (i, r)| match acc {
            Some((_, b)) if b.value >= r.value => acc,
            _ => Some((i, r)),
        });

    let (best_restart, witness_coords) = match best {
        Some((i, r)) if r.value > 0.0 => (i, r.z.clone()),
        _ => {
            return Ok(NormEstimate {
                lower_bound: 0.0,
                witness: first_unit_vector(map, p)?,
                restarts_used: opts.restarts,
                converged_fraction: converged as f64 / opts.restarts as f64,
                best_restart: 0,
                p,
                q,
                degenerate: true,
            })
        }
    };
    let witness = map.domain().from_real_coords(&witness_coords)?;
    let image = map.apply(&witness)?;
    let lower_bound = crate::spectral::lp_norm(&image, q)? / crate::spectral::lp_norm(&witness, p)?;
    Ok(NormEstimate {
        lower_bound,
        witness,
        restarts_used: opts.restarts,
        converged_fraction: converged as f64 / opts.restarts as f64,
        best_restart,
        p,
        q,
        degenerate: false,
    })
}

fn first_unit_vector(map: &LinearMap, p: f64) -> Result<AlgebraElement> {
    let mut e = vec![0.0; map.domain().real_dim()];
    e[0] = 1.0;
    let x = map.domain().from_real_coords(&e)?;
    let n = crate::spectral::lp_norm(&x, p)?;
    Ok(x.scale_real(1.0 / n))
}

/// Oracle for tiny maps: Gaussian (uniform on the Euclidean sphere) starting points,
/// each refined by at most 200 ascent steps; returns the best ratio found.
pub fn brute_force_pq_norm(map: &LinearMap, p: f64, q: f64, samples: usize, seed: u64) -> Result<f64> {
    check_exponents(p, q)?;
    let dim = map.domain().real_dim();
    if dim > BRUTE_FORCE_MAX_DIM {
        return Err(Error::Refused(format!(
            "brute force needs real domain dimension ≤ {BRUTE_FORCE_MAX_DIM}, got {dim}"
        )));
    }
    if samples < BRUTE_FORCE_MIN_SAMPLES {
        return Err(Error::Refused(format!(
            "brute force needs at least {BRUTE_FORCE_MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let ascent = Ascent::new(map, p, q);
    let chunk = 1024;
    let best = (0..samples.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &["brute", &c.to_string()]));
            let mut best = 0.0_f64;
            for _ in (c * chunk)..((c + 1) * chunk).min(samples) {
                let z: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
                if let Some(r) = ascent.run(z, BRUTE_FORCE_LOCAL_STEPS, 1e-13) {
                    best = best.max(r.value);
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CMatrix, TracialAlgebra, C64};
    use crate::spectral::lp_norm;

    fn diagonal_map(values: &[f64], weights: Vec<f64>) -> LinearMap {
        let a = TracialAlgebra::commutative(weights).unwrap();
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            values.len(),
            values.iter().map(|&v| C64::new(v, 0.0)),
        ));
        LinearMap::from_complex(a.clone(), a, &m).unwrap()
    }

    #[test]
    fn exact_l2_examples() {
        let a = TracialAlgebra::new(vec![2, 1], vec![0.3, 2.0]).unwrap();
        let id = LinearMap::identity(&a);
        assert!((exact_l2_norm(&id).unwrap() - 1.0).abs() < 1e-12);
        let n = exact_l2_norm(&id.scaled(-2.5)).unwrap();
        assert!((n - 2.5).abs() < 1e-12);
        assert!((exact_l2_norm(&diagonal_map(&[2.0, 1.0], vec![1.0, 1.0])).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn identity_on_state_weighted_z4() {
        // four points of mass 1/4; p = 4/3, q = 4 ⇒ 1/r = 1/2, norm = 4^{1/2}
        let map = diagonal_map(&[1.0; 4], vec![0.25; 4]);
        let est = estimate_pq_norm(&map, 4.0 / 3.0, 4.0, &EstimatorOptions::default()).unwrap();
        assert!((est.lower_bound - 2.0).abs() < 1e-6, "{}", est.lower_bound);
        let oracle = brute_force_pq_norm(&map, 4.0 / 3.0, 4.0, BRUTE_FORCE_MIN_SAMPLES, 3).unwrap();
        assert!((oracle - 2.0).abs() < 1e-6, "{oracle}");
    }

    #[test]
    fn certificate_property() {
        let a = TracialAlgebra::new(vec![2, 1], vec![0.5, 1.5]).unwrap();
        let b = TracialAlgebra::new(vec![1, 1, 2], vec![1.0, 0.1, 0.4]).unwrap();
        let m = CMatrix::from_fn(b.complex_dim(), a.complex_dim(), |i, j| {
            C64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64 - 1.0)
        });
        let map = LinearMap::from_complex(a, b, &m).unwrap();
        for (p, q) in [(1.5, 3.0), (2.0, 2.0), (3.0, 1.5)] {
            let est = estimate_pq_norm(&map, p, q, &EstimatorOptions::default()).unwrap();
            let wp = lp_norm(&est.witness, p).unwrap();
            assert!((wp - 1.0).abs() < 1e-10);
            let ratio = lp_norm(&map.apply(&est.witness).unwrap(), q).unwrap() / wp;
            assert!((ratio - est.lower_bound).abs() <= 1e-8 * est.lower_bound);
            assert!(est.converged_fraction > 0.0);
        }
        let est = estimate_pq_norm(&map, 2.0, 2.0, &EstimatorOptions::default()).unwrap();
        let exact = exact_l2_norm(&map).unwrap();
        assert!((est.lower_bound - exact).abs() <= 1e-6 * exact);
    }

    #[test]
    fn zero_map_is_degenerate() {
        let a = TracialAlgebra::matrix(2).unwrap();
        let zero = LinearMap::identity(&a).scaled(0.0);
        let est = estimate_pq_norm(&zero, 1.5, 3.0, &EstimatorOptions::default()).unwrap();
        assert_eq!(est.lower_bound, 0.0);
        assert!(est.degenerate);
        assert_eq!(
            brute_force_pq_norm(&zero, 1.5, 3.0, BRUTE_FORCE_MIN_SAMPLES, 0).unwrap(),
            0.0
        );
    }

    #[test]
    fn brute_force_refusals_and_diagonal() {
        let big = LinearMap::identity(&TracialAlgebra::matrix(3).unwrap());
        assert!(matches!(
            brute_force_pq_norm(&big, 2.0, 2.0, BRUTE_FORCE_MIN_SAMPLES, 0),
            Err(Error::Refused(_))
        ));
        let small = diagonal_map(&[2.0, 1.0], vec![1.0, 1.0]);
        assert!(brute_force_pq_norm(&small, 2.0, 2.0, 10, 0).is_err());
        let v = brute_force_pq_norm(&small, 2.0, 2.0, BRUTE_FORCE_MIN_SAMPLES, 0).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
        assert!(estimate_pq_norm(&small, 1.0, 2.0, &EstimatorOptions::default()).is_err());
    }

    #[test]
    fn restart_order_does_not_matter() {
        let a = TracialAlgebra::new(vec![2, 2], vec![0.25, 0.75]).unwrap();
        let m = CMatrix::from_fn(8, 8, |i, j| {
            C64::new(((i * 5 + j) % 7) as f64 - 3.0, 0.5 * (i as f64 - j as f64))
        });
        let map = LinearMap::from_complex(a.clone(), a, &m).unwrap();
        let opts = EstimatorOptions {
            restarts: 8,
            ..Default::default()
        };
        let one = estimate_pq_norm(&map, 1.5, 2.5, &opts).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let two = pool.install(|| estimate_pq_norm(&map, 1.5, 2.5, &opts).unwrap());
        assert_eq!(one.lower_bound.to_bits(), two.lower_bound.to_bits());
        assert_eq!(one.witness, two.witness);
    }
}
