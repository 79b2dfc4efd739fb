//! Finite-dimensional tracial algebras modelled as weighted direct sums of
//! matrix blocks, `M = ⊕_k M_{n_k}` with trace `τ(x) = Σ_k w_k Tr(x_k)`.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

const SVD_EPS: f64 = 1e-15;
const SVD_MAX_ITER: usize = 10_000;

#[derive(Debug, PartialEq)]
struct Layout {
    dims: Vec<usize>,
    weights: Vec<f64>,
    /// Offset of each block in the complex coordinate vector.
    offsets: Vec<usize>,
    complex_dim: usize,
}

/// A block algebra `⊕_k M_{n_k}` with strictly positive block weights.
///
/// Cloning is cheap; clones compare equal to the original.
#[derive(Clone)]
pub struct TracialAlgebra(Arc<Layout>);

impl TracialAlgebra {
    pub fn new(dims: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidAlgebra("at least one block is required".into()));
        }
        if dims.len() != weights.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} block dimensions but {} weights",
                dims.len(),
                weights.len()
            )));
        }
        if let Some(k) = dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidAlgebra(format!("block {k} has dimension 0")));
        }
        if let Some(k) = weights.iter().position(|&w| !(w.is_finite() && w > 0.0)) {
            return Err(Error::InvalidAlgebra(format!(
                "block {k} has non-positive weight {}",
                weights[k]
            )));
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &n in &dims {
            offsets.push(acc);
            acc += n * n;
        }
        Ok(Self(Arc::new(Layout {
            dims,
            weights,
            offsets,
            complex_dim: acc,
        })))
    }

    /// `M_n` with the standard (unweighted) trace.
    pub fn matrix(n: usize) -> Result<Self> {
        Self::new(vec![n], vec![1.0])
    }

    /// `ℓ_∞` of a finite measure space: one-dimensional blocks with the given point masses.
    pub fn commutative(weights: Vec<f64>) -> Result<Self> {
        Self::new(vec![1; weights.len()], weights)
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn weights(&self) -> &[f64] {
        &self.0.weights
    }

    pub fn num_blocks(&self) -> usize {
        self.0.dims.len()
    }

    pub fn block_offset(&self, k: usize) -> usize {
        self.0.offsets[k]
    }

    /// `τ(1) = Σ_k w_k n_k`.
    pub fn total_weight(&self) -> f64 {
        self.dims()
            .iter()
            .zip(self.weights())
            .map(|(&n, &w)| w * n as f64)
            .sum()
    }

    /// Number of complex coordinates, `Σ_k n_k²`.
    pub fn complex_dim(&self) -> usize {
        self.0.complex_dim
    }

    pub fn real_dim(&self) -> usize {
        2 * self.0.complex_dim
    }

    pub fn is_commutative(&self) -> bool {
        self.dims().iter().all(|&n| n == 1)
    }

    /// Trace weight attached to every complex coordinate.
    pub fn coordinate_weights(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.complex_dim());
        for (&n, &w) in self.dims().iter().zip(self.weights()) {
            out.extend(std::iter::repeat_n(w, n * n));
        }
        out
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.clone(),
            blocks: self.dims().iter().map(|&n| CMatrix::zeros(n, n)).collect(),
        }
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.clone(),
            blocks: self.dims().iter().map(|&n| CMatrix::identity(n, n)).collect(),
        }
    }

    pub fn element(&self, blocks: Vec<CMatrix>) -> Result<AlgebraElement> {
        if blocks.len() != self.num_blocks() {
            return Err(Error::Shape(format!(
                "expected {} blocks, got {}",
                self.num_blocks(),
                blocks.len()
            )));
        }
        for (k, (b, &n)) in blocks.iter().zip(self.dims()).enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::Shape(format!(
                    "block {k} is {}x{}, expected {n}x{n}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(AlgebraElement {
            algebra: self.clone(),
            blocks,
        })
    }

    /// Element of a commutative algebra from its values on the points.
    pub fn diagonal(&self, values: &[C64]) -> Result<AlgebraElement> {
        if !self.is_commutative() || values.len() != self.num_blocks() {
            return Err(Error::Shape(format!(
                "diagonal element needs a commutative algebra with {} points",
                values.len()
            )));
        }
        Ok(AlgebraElement {
            algebra: self.clone(),
            blocks: values.iter().map(|&v| CMatrix::from_element(1, 1, v)).collect(),
        })
    }

    /// Element from complex coordinates (blocks concatenated, row-major inside a block).
    pub fn from_complex_coords(&self, coords: &[C64]) -> Result<AlgebraElement> {
        if coords.len() != self.complex_dim() {
            return Err(Error::Shape(format!(
                "expected {} complex coordinates, got {}",
                self.complex_dim(),
                coords.len()
            )));
        }
        let blocks = self
            .dims()
            .iter()
            .zip(&self.0.offsets)
            .map(|(&n, &off)| CMatrix::from_row_slice(n, n, &coords[off..off + n * n]))
            .collect();
        Ok(AlgebraElement {
            algebra: self.clone(),
            blocks,
        })
    }

    /// Element from real coordinates: each complex coordinate contributes `(re, im)`.
    pub fn from_real_coords(&self, coords: &[f64]) -> Result<AlgebraElement> {
        if coords.len() != self.real_dim() {
            return Err(Error::Shape(format!(
                "expected {} real coordinates, got {}",
                self.real_dim(),
                coords.len()
            )));
        }
        let c: Vec<C64> = coords.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect();
        self.from_complex_coords(&c)
    }

    /// Matrix unit `e_{ij}` of block `k`.
    pub fn matrix_unit(&self, k: usize, i: usize, j: usize) -> AlgebraElement {
        let mut x = self.zero();
        x.blocks[k][(i, j)] = C64::new(1.0, 0.0);
        x
    }
}

impl PartialEq for TracialAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for TracialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TracialAlgebra")
            .field("dims", &self.dims())
            .field("weights", &self.weights())
            .finish()
    }
}

/// One complex matrix per block of a [`TracialAlgebra`].
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    algebra: TracialAlgebra,
    blocks: Vec<CMatrix>,
}

impl AlgebraElement {
    pub fn algebra(&self) -> &TracialAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &CMatrix {
        &self.blocks[k]
    }

    pub fn block_mut(&mut self, k: usize) -> &mut CMatrix {
        &mut self.blocks[k]
    }

    pub fn into_blocks(self) -> Vec<CMatrix> {
        self.blocks
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::Shape(format!(
                "elements belong to different algebras: {:?} vs {:?}",
                self.algebra, other.algebra
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Blockwise matrix product `x·y`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    /// `τ(x) = Σ_k w_k Tr(x_k)`.
    pub fn trace(&self) -> C64 {
        self.blocks
            .iter()
            .zip(self.algebra.weights())
            .map(|(b, &w)| b.trace() * w)
            .sum()
    }

    /// Real trace inner product `Re τ(y* x)`.
    pub fn inner_real(&self, other: &Self) -> Result<f64> {
        self.same_algebra(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .zip(self.algebra.weights())
            .map(|((a, b), &w)| w * a.iter().zip(b.iter()).map(|(u, v)| (u.conj() * v).re).sum::<f64>())
            .sum())
    }

    /// Largest absolute entry difference, for tolerance checks.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_algebra(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(u, v)| (u - v).norm()))
            .fold(0.0, f64::max))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().zip(b.adjoint().iter()).all(|(u, v)| (u - v).norm() <= tol))
    }

    pub fn complex_coords(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.algebra.complex_dim());
        for b in &self.blocks {
            // nalgebra is column-major; coordinates are row-major.
            out.extend(b.transpose().iter().copied());
        }
        out
    }

    pub fn real_coords(&self) -> Vec<f64> {
        self.complex_coords().iter().flat_map(|c| [c.re, c.im]).collect()
    }

    /// The modulus `|x| = (x*x)^{1/2}`, via a Hermitian eigendecomposition per block.
    pub fn modulus(&self) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, b)| {
                if b.nrows() == 1 {
                    return Ok(CMatrix::from_element(1, 1, C64::new(b[(0, 0)].norm(), 0.0)));
                }
                // x = UΣV*  ⇒  |x| = VΣV*
                let svd = block_svd(b, true, k)?;
                let vt = svd.v_t.expect("requested");
                let sigma = svd.singular_values.map(|s| C64::new(s, 0.0));
                Ok(vt.adjoint() * CMatrix::from_diagonal(&sigma) * vt)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            algebra: self.algebra.clone(),
            blocks,
        })
    }

    /// Eigenvalues of `|x|` per block (unsorted).
    pub fn block_singular_values(&self) -> Result<Vec<Vec<f64>>> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(k, b)| {
                if b.nrows() == 1 {
                    return Ok(vec![b[(0, 0)].norm()]);
                }
                Ok(block_svd(b, false, k)?.singular_values.iter().copied().collect())
            })
            .collect()
    }
}

/// Singular values come straight from the block rather than from the spectrum of
/// `x*x`, which would lose half the digits of the small ones.
fn block_svd(b: &CMatrix, compute_v: bool, block: usize) -> Result<SVD<C64, nalgebra::Dyn, nalgebra::Dyn>> {
    SVD::try_new(b.clone(), false, compute_v, SVD_EPS, SVD_MAX_ITER).ok_or(Error::Svd { block })
}

/// Random element distributions.
///
/// Every complex entry drawn from the Gaussian ensembles has independent real and
/// imaginary parts `N(0, 1/2)`, so `E|z|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ensemble {
    /// i.i.d. complex Gaussian entries.
    Gaussian,
    /// `(g + g*)/2` with `g` complex Gaussian.
    Hermitian,
    /// Each entry independently nonzero (complex Gaussian) with probability `density`.
    Sparse { density: f64 },
    /// `u v*` with complex Gaussian vectors, placed in one uniformly chosen block.
    RankOne,
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn gaussian_block<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    // Fill row-major so the draw order matches the coordinate order.
    let data: Vec<C64> = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    CMatrix::from_row_slice(n, n, &data)
}

/// Deterministic random element for a fixed `(seed, ensemble)`.
pub fn random_element(algebra: &TracialAlgebra, seed: u64, ensemble: Ensemble) -> AlgebraElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element_with(algebra, &mut rng, ensemble)
}

pub fn random_element_with<R: Rng + ?Sized>(
    algebra: &TracialAlgebra,
    rng: &mut R,
    ensemble: Ensemble,
) -> AlgebraElement {
    let blocks = match ensemble {
        Ensemble::Gaussian => algebra.dims().iter().map(|&n| gaussian_block(n, rng)).collect(),
        Ensemble::Hermitian => algebra
            .dims()
            .iter()
            .map(|&n| {
                let g = gaussian_block(n, rng);
                (&g + g.adjoint()) * C64::new(0.5, 0.0)
            })
            .collect(),
        Ensemble::Sparse { density } => algebra
            .dims()
            .iter()
            .map(|&n| {
                let data: Vec<C64> = (0..n * n)
                    .map(|_| {
                        let keep = rng.random::<f64>() < density;
                        let z = complex_gaussian(rng);
                        if keep {
                            z
                        } else {
                            C64::new(0.0, 0.0)
                        }
                    })
                    .collect();
                CMatrix::from_row_slice(n, n, &data)
            })
            .collect(),
        Ensemble::RankOne => {
            let target = rng.random_range(0..algebra.num_blocks());
            return random_rank_one_in_block(algebra, rng, target);
        }
    };
    AlgebraElement {
        algebra: algebra.clone(),
        blocks,
    }
}

/// `u v*` with Gaussian `u, v` in block `block`, zero elsewhere.
pub fn random_rank_one_in_block<R: Rng + ?Sized>(
    algebra: &TracialAlgebra,
    rng: &mut R,
    block: usize,
) -> AlgebraElement {
    let blocks = algebra
        .dims()
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            if k != block {
                return CMatrix::zeros(n, n);
            }
            let u: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
            let v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
            CMatrix::from_fn(n, n, |i, j| u[i] * v[j].conj())
        })
        .collect();
    AlgebraElement {
        algebra: algebra.clone(),
        blocks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn two_blocks() -> TracialAlgebra {
        TracialAlgebra::new(vec![1, 2, 3], vec![0.5, 2.0, 1.25]).unwrap()
    }

    #[test]
    fn rejects_bad_layouts() {
        assert!(TracialAlgebra::new(vec![], vec![]).is_err());
        assert!(TracialAlgebra::new(vec![2], vec![0.0]).is_err());
        assert!(TracialAlgebra::new(vec![0], vec![1.0]).is_err());
        assert!(TracialAlgebra::new(vec![1, 2], vec![1.0]).is_err());
        assert!(TracialAlgebra::new(vec![1], vec![f64::NAN]).is_err());
    }

    #[test]
    fn trace_of_identity() {
        let a = TracialAlgebra::matrix(2).unwrap();
        assert!((a.identity().trace() - c(2.0)).norm() < 1e-15);
        let b = TracialAlgebra::new(vec![1, 2], vec![0.5, 2.0]).unwrap();
        assert!((b.identity().trace() - c(4.5)).norm() < 1e-15);
        assert!((b.total_weight() - 4.5).abs() < 1e-15);
    }

    #[test]
    fn trace_positive_faithful_tracial() {
        let a = two_blocks();
        for seed in 0..20 {
            let x = random_element(&a, seed, Ensemble::Gaussian);
            let y = random_element(&a, seed + 100, Ensemble::Gaussian);
            let xx = x.adjoint().try_mul(&x).unwrap().trace();
            assert!(xx.re > 0.0 && xx.im.abs() < 1e-12);
            let xy = x.try_mul(&y).unwrap().trace();
            let yx = y.try_mul(&x).unwrap().trace();
            assert!((xy - yx).norm() <= 1e-10 * (1.0 + xy.norm()));
        }
        let z = a.zero();
        assert!(z.adjoint().try_mul(&z).unwrap().trace().norm() <= 1e-12);
    }

    #[test]
    fn arithmetic_identities() {
        let a = two_blocks();
        let x = random_element(&a, 1, Ensemble::Gaussian);
        let y = random_element(&a, 2, Ensemble::Gaussian);
        assert_eq!(x.try_mul(&a.identity()).unwrap(), x);
        let lhs = x.try_mul(&y).unwrap().adjoint();
        let rhs = y.adjoint().try_mul(&x.adjoint()).unwrap();
        assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
        let h = random_element(&a, 3, Ensemble::Hermitian);
        assert!(h.adjoint().max_abs_diff(&h).unwrap() == 0.0);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = two_blocks();
        let b = TracialAlgebra::matrix(2).unwrap();
        assert!(matches!(a.identity().try_add(&b.identity()), Err(Error::Shape(_))));
        assert!(a.element(vec![CMatrix::zeros(2, 2)]).is_err());
    }

    #[test]
    fn modulus_examples() {
        let a = TracialAlgebra::matrix(2).unwrap();
        let x = a
            .element(vec![CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                c(-3.0),
                c(4.0),
            ]))])
            .unwrap();
        let m = x.modulus().unwrap();
        assert!((m.block(0)[(0, 0)] - c(3.0)).norm() < 1e-12);
        assert!((m.block(0)[(1, 1)] - c(4.0)).norm() < 1e-12);
        assert!(m.block(0)[(0, 1)].norm() < 1e-12);

        let t = 0.7_f64;
        let u = CMatrix::from_row_slice(
            2,
            2,
            &[c(t.cos()), C64::new(0.0, t.sin()), C64::new(0.0, t.sin()), c(t.cos())],
        );
        let m = a.element(vec![u]).unwrap().modulus().unwrap();
        assert!(m.max_abs_diff(&a.identity()).unwrap() < 1e-12);
    }

    #[test]
    fn modulus_squares_and_matches_svd() {
        let a = two_blocks();
        for seed in 0..10 {
            let x = random_element(&a, seed, Ensemble::Gaussian);
            let m = x.modulus().unwrap();
            let m2 = m.try_mul(&m).unwrap();
            let xx = x.adjoint().try_mul(&x).unwrap();
            for (k, (l, r)) in m2.blocks().iter().zip(xx.blocks()).enumerate() {
                let scale = r.clone().svd(false, false).singular_values.max();
                let err = (l - r).svd(false, false).singular_values.max();
                assert!(err <= 1e-10 * scale.max(1.0), "block {k}: {err}");
            }
            // eigenvalues of |x| against a direct SVD of each block
            let ours = x.block_singular_values().unwrap();
            for (b, sv) in x.blocks().iter().zip(ours) {
                let mut direct: Vec<f64> = b.clone().svd(false, false).singular_values.iter().copied().collect();
                let mut sv = sv;
                direct.sort_by(|a, b| b.total_cmp(a));
                sv.sort_by(|a, b| b.total_cmp(a));
                for (s, d) in sv.iter().zip(&direct) {
                    assert!((s - d).abs() < 1e-10);
                }
            }
            let mm = m.modulus().unwrap();
            assert!(mm.max_abs_diff(&m).unwrap() < 1e-10);
        }
    }

    #[test]
    fn ensembles() {
        let a = two_blocks();
        assert_eq!(
            random_element(&a, 9, Ensemble::Gaussian),
            random_element(&a, 9, Ensemble::Gaussian)
        );
        assert!(random_element(&a, 9, Ensemble::Hermitian).is_hermitian(0.0));

        let m3 = TracialAlgebra::matrix(3).unwrap();
        for seed in 0..5 {
            let x = random_element(&m3, seed, Ensemble::RankOne);
            let sv = x.block(0).clone().svd(false, false).singular_values;
            let nonzero = sv.iter().filter(|&&s| s > 1e-12).count();
            assert_eq!(nonzero, 1);
        }

        let big = TracialAlgebra::matrix(20).unwrap();
        let x = random_element(&big, 4, Ensemble::Sparse { density: 0.1 });
        let nnz = x.block(0).iter().filter(|z| z.norm() > 0.0).count();
        assert!(nnz > 10 && nnz < 80, "{nnz}");
    }

    #[test]
    fn coordinates_round_trip() {
        let a = two_blocks();
        let x = random_element(&a, 5, Ensemble::Gaussian);
        assert_eq!(a.from_real_coords(&x.real_coords()).unwrap(), x);
        // inner product in coordinates is weighted Euclidean
        let y = random_element(&a, 6, Ensemble::Gaussian);
        let w = a.coordinate_weights();
        let ip: f64 = x
            .complex_coords()
            .iter()
            .zip(y.complex_coords())
            .zip(&w)
            .map(|((u, v), w)| w * (u.conj() * v).re)
            .sum();
        assert!((ip - x.inner_real(&y).unwrap()).abs() < 1e-12);
        let e = a.matrix_unit(2, 0, 1);
        assert_eq!(e.complex_coords()[a.block_offset(2) + 1], c(1.0));
    }
}
