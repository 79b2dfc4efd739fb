//! Weighted Schatten norms and their gradients.
//!
//! [`schatten_gradient`] works on [`AlgebraElement`]s through a full SVD per block.
//! [`SchattenKernel`] evaluates the same quantities directly on real coordinate
//! vectors; it is the inner loop of the norm estimator and has closed forms for
//! 1×1 and 2×2 blocks.

use crate::algebra::{AlgebraElement, CMatrix, TracialAlgebra, C64};
use crate::error::{Error, Result};
use crate::spectral::lp_norm;

/// Singular values below this fraction of their block's largest one are treated
/// as zero: their `σ^{q-1}` contribution to a gradient is rounding noise.
const RANK_CUTOFF: f64 = 1e-13;

fn cutoff(s: f64, top: f64) -> f64 {
    if s > RANK_CUTOFF * top {
        s
    } else {
        0.0
    }
}

/// Gradient of `x ↦ ‖x‖_q` for the real trace inner product `Re τ(y*x)`.
///
/// With `x_k = U Σ V*` per block this is `U Σ^{q-1} V* / ‖x‖_q^{q-1}`.
pub fn schatten_gradient(x: &AlgebraElement, q: f64) -> Result<AlgebraElement> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::Domain(format!("gradient exponent q = {q} must lie in (1, ∞)")));
    }
    let norm = lp_norm(x, q)?;
    if norm == 0.0 {
        return Err(Error::Domain("gradient of the norm is undefined at zero".into()));
    }
    let scale = norm.powf(1.0 - q);
    let blocks = x
        .blocks()
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let svd =
                nalgebra::linalg::SVD::try_new(b.clone(), true, true, 1e-15, 10_000).ok_or(Error::Svd { block: k })?;
            let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
            let top = svd.singular_values.max();
            let d = svd
                .singular_values
                .map(|s| C64::new(cutoff(s, top).powf(q - 1.0) * scale, 0.0));
            Ok(u * CMatrix::from_diagonal(&d) * vt)
        })
        .collect::<Result<Vec<_>>>()?;
    x.algebra().element(blocks)
}

#[derive(Clone, Copy, Debug)]
struct BlockSpec {
    dim: usize,
    weight: f64,
    /// Offset into the real coordinate vector.
    offset: usize,
}

/// Schatten norms and Euclidean-coordinate gradients on real coordinate vectors.
#[derive(Clone, Debug)]
pub struct SchattenKernel {
    blocks: Vec<BlockSpec>,
    real_dim: usize,
}

impl SchattenKernel {
    pub fn new(algebra: &TracialAlgebra) -> Self {
        let blocks = algebra
            .dims()
            .iter()
            .zip(algebra.weights())
            .enumerate()
            .map(|(k, (&dim, &weight))| BlockSpec {
                dim,
                weight,
                offset: 2 * algebra.block_offset(k),
            })
            .collect();
        Self {
            blocks,
            real_dim: algebra.real_dim(),
        }
    }

    pub fn real_dim(&self) -> usize {
        self.real_dim
    }

    /// `‖x‖_p` for finite `p > 0`.
    pub fn norm(&self, x: &[f64], p: f64) -> f64 {
        let mut acc = 0.0;
        for b in &self.blocks {
            let data = &x[b.offset..b.offset + 2 * b.dim * b.dim];
            acc += b.weight * block_power_sum(b.dim, data, p);
        }
        acc.powf(1.0 / p)
    }

    /// Returns `‖x‖_p` and writes the Euclidean gradient of `x ↦ ‖x‖_p` into `grad`.
    /// At `x = 0` the gradient is set to zero.
    pub fn norm_and_gradient(&self, x: &[f64], p: f64, grad: &mut [f64]) -> f64 {
        let mut acc = 0.0;
        for b in &self.blocks {
            let range = b.offset..b.offset + 2 * b.dim * b.dim;
            // unnormalized: σ^{p-1} directions
            acc += b.weight * block_power_gradient(b.dim, &x[range.clone()], p, &mut grad[range.clone()]);
            for g in &mut grad[range] {
                *g *= b.weight;
            }
        }
        if acc == 0.0 {
            grad.iter_mut().for_each(|g| *g = 0.0);
            return 0.0;
        }
        let norm = acc.powf(1.0 / p);
        let scale = norm.powf(1.0 - p);
        grad.iter_mut().for_each(|g| *g *= scale);
        norm
    }
}

fn block_power_sum(dim: usize, data: &[f64], p: f64) -> f64 {
    match dim {
        1 => data[0].hypot(data[1]).powf(p),
        2 => {
            let (s1, s2) = singular_values_2x2(data);
            s1.powf(p) + if s2 > 0.0 { s2.powf(p) } else { 0.0 }
        }
        _ => block_matrix(dim, data)
            .singular_values()
            .iter()
            .map(|&s| if s > 0.0 { s.powf(p) } else { 0.0 })
            .sum(),
    }
}

/// Writes `U Σ^{p-1} V*` (real coordinates) into `out` and returns `Σ σ^p`.
fn block_power_gradient(dim: usize, data: &[f64], p: f64, out: &mut [f64]) -> f64 {
    match dim {
        1 => {
            let s = data[0].hypot(data[1]);
            if s == 0.0 {
                out[0] = 0.0;
                out[1] = 0.0;
                return 0.0;
            }
            let f = s.powf(p - 2.0);
            out[0] = f * data[0];
            out[1] = f * data[1];
            s.powf(p)
        }
        2 => gradient_2x2(data, p, out),
        _ => {
            let m = block_matrix(dim, data);
            let svd = m.svd(true, true);
            let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
            let top = svd.singular_values.max();
            let d = svd
                .singular_values
                .map(|s| C64::new(if cutoff(s, top) > 0.0 { s.powf(p - 1.0) } else { 0.0 }, 0.0));
            let g = u * CMatrix::from_diagonal(&d) * vt;
            for i in 0..dim {
                for j in 0..dim {
                    let z = g[(i, j)];
                    out[2 * (i * dim + j)] = z.re;
                    out[2 * (i * dim + j) + 1] = z.im;
                }
            }
            svd.singular_values
                .iter()
                .map(|&s| if s > 0.0 { s.powf(p) } else { 0.0 })
                .sum()
        }
    }
}

fn block_matrix(dim: usize, data: &[f64]) -> CMatrix {
    CMatrix::from_fn(dim, dim, |i, j| {
        let k = 2 * (i * dim + j);
        C64::new(data[k], data[k + 1])
    })
}

fn entries_2x2(data: &[f64]) -> [C64; 4] {
    [
        C64::new(data[0], data[1]),
        C64::new(data[2], data[3]),
        C64::new(data[4], data[5]),
        C64::new(data[6], data[7]),
    ]
}

/// Singular values of a 2×2 complex matrix (row-major real coordinates), largest first.
fn singular_values_2x2(data: &[f64]) -> (f64, f64) {
    let [a, b, c, d] = entries_2x2(data);
    let fro2 = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    let det = (a * d - b * c).norm();
    // σ1² + σ2² = ‖A‖_F², σ1 σ2 = |det A|
    let disc = ((fro2 - 2.0 * det) * (fro2 + 2.0 * det)).max(0.0).sqrt();
    let s1 = ((fro2 + disc) / 2.0).sqrt();
    let s2 = if s1 > 0.0 { cutoff(det / s1, s1) } else { 0.0 };
    (s1, s2)
}

fn gradient_2x2(data: &[f64], p: f64, out: &mut [f64]) -> f64 {
    let m = entries_2x2(data);
    let (s1, s2) = singular_values_2x2(data);
    if s1 == 0.0 {
        out[..8].iter_mut().for_each(|o| *o = 0.0);
        return 0.0;
    }
    // H = A*A = [[h11, h12], [conj(h12), h22]]
    let [a, b, c, d] = m;
    let h11 = a.norm_sqr() + c.norm_sqr();
    let h22 = b.norm_sqr() + d.norm_sqr();
    let h12 = a.conj() * b + c.conj() * d;
    let l1 = s1 * s1;
    // eigenvector of λ1: pick the better conditioned of the two null-space candidates
    let cand1 = (h12, C64::new(l1 - h11, 0.0));
    let cand2 = (C64::new(l1 - h22, 0.0), h12.conj());
    let n1 = cand1.0.norm_sqr() + cand1.1.norm_sqr();
    let n2 = cand2.0.norm_sqr() + cand2.1.norm_sqr();
    let (v1, v2) = if n1 >= n2 { (cand1, n1) } else { (cand2, n2) };
    let (v, nv) = (v1, v2);
    let gap_tiny = nv <= 1e-28 * l1 * l1;
    let mut g = [C64::new(0.0, 0.0); 4];
    if gap_tiny {
        // σ1 = σ2: gradient is σ^{p-2} A
        let f = s1.powf(p - 2.0);
        for (gi, mi) in g.iter_mut().zip(&m) {
            *gi = mi * f;
        }
    } else {
        let inv = 1.0 / nv.sqrt();
        let v1 = [v.0 * inv, v.1 * inv];
        let v2 = [-v1[1].conj(), v1[0].conj()];
        let mut add = |vec: [C64; 2], s: f64| {
            if s <= 0.0 {
                return;
            }
            let f = s.powf(p - 2.0);
            // (A v) v*
            let av = [a * vec[0] + b * vec[1], c * vec[0] + d * vec[1]];
            for i in 0..2 {
                for j in 0..2 {
                    g[2 * i + j] += av[i] * vec[j].conj() * f;
                }
            }
        };
        add(v1, s1);
        add(v2, s2);
    }
    for (k, z) in g.iter().enumerate() {
        out[2 * k] = z.re;
        out[2 * k + 1] = z.im;
    }
    s1.powf(p) + if s2 > 0.0 { s2.powf(p) } else { 0.0 }
}
