//! Explicit real-linear maps between block algebras.

use nalgebra::DMatrix;

use crate::algebra::{AlgebraElement, CMatrix, TracialAlgebra, C64};
use crate::error::{Error, Result};

/// A real-linear map stored as a matrix in real coordinates
/// (see [`AlgebraElement::real_coords`]).
#[derive(Clone, Debug)]
pub struct LinearMap {
    domain: TracialAlgebra,
    codomain: TracialAlgebra,
    matrix: DMatrix<f64>,
    /// Set when the map is a complex diagonal; applied without the dense matrix.
    diagonal: Option<Vec<C64>>,
}

impl LinearMap {
    pub fn new(domain: TracialAlgebra, codomain: TracialAlgebra, matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != codomain.real_dim() || matrix.ncols() != domain.real_dim() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                codomain.real_dim(),
                domain.real_dim()
            )));
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
            diagonal: None,
        })
    }

    /// Realification of a complex-linear map given in complex coordinates.
    pub fn from_complex(domain: TracialAlgebra, codomain: TracialAlgebra, m: &CMatrix) -> Result<Self> {
        if m.nrows() != codomain.complex_dim() || m.ncols() != domain.complex_dim() {
            return Err(Error::Shape(format!(
                "complex map matrix is {}x{}, expected {}x{}",
                m.nrows(),
                m.ncols(),
                codomain.complex_dim(),
                domain.complex_dim()
            )));
        }
        let mut r = DMatrix::zeros(2 * m.nrows(), 2 * m.ncols());
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let c = m[(i, j)];
                r[(2 * i, 2 * j)] = c.re;
                r[(2 * i, 2 * j + 1)] = -c.im;
                r[(2 * i + 1, 2 * j)] = c.im;
                r[(2 * i + 1, 2 * j + 1)] = c.re;
            }
        }
        let mut map = Self::new(domain, codomain, r)?;
        let off_diagonal_zero =
            m.is_square() && (0..m.ncols()).all(|j| (0..m.nrows()).all(|i| i == j || m[(i, j)] == C64::new(0.0, 0.0)));
        if off_diagonal_zero {
            map.diagonal = Some(m.diagonal().iter().copied().collect());
        }
        Ok(map)
    }

    /// Materializes `f` by applying it to every real basis vector of the domain.
    pub fn from_fn(
        domain: TracialAlgebra,
        codomain: TracialAlgebra,
        f: impl Fn(&AlgebraElement) -> Result<AlgebraElement>,
    ) -> Result<Self> {
        let n = domain.real_dim();
        let mut matrix = DMatrix::zeros(codomain.real_dim(), n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let image = f(&domain.from_real_coords(&e)?)?;
            if image.algebra() != &codomain {
                return Err(Error::Shape("map image lies outside the codomain".into()));
            }
            matrix.set_column(j, &nalgebra::DVector::from_vec(image.real_coords()));
            e[j] = 0.0;
        }
        Self::new(domain, codomain, matrix)
    }

    pub fn identity(algebra: &TracialAlgebra) -> Self {
        let n = algebra.real_dim();
        Self {
            domain: algebra.clone(),
            codomain: algebra.clone(),
            matrix: DMatrix::identity(n, n),
            diagonal: Some(vec![C64::new(1.0, 0.0); n / 2]),
        }
    }

    pub fn domain(&self) -> &TracialAlgebra {
        &self.domain
    }

    pub fn codomain(&self) -> &TracialAlgebra {
        &self.codomain
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.algebra() != &self.domain {
            return Err(Error::Shape("argument is not in the map's domain".into()));
        }
        let image = self.apply_coords(&x.real_coords());
        self.codomain.from_real_coords(&image)
    }

    pub fn apply_coords(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.matrix.nrows()];
        self.apply_coords_into(x, &mut out);
        out
    }

    pub(crate) fn apply_coords_into(&self, x: &[f64], out: &mut [f64]) {
        if let Some(d) = &self.diagonal {
            apply_diagonal(d, x, out, false);
            return;
        }
        out.iter_mut().for_each(|o| *o = 0.0);
        // column-major storage: accumulate column by column
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            let col = self.matrix.column(j);
            for (o, &m) in out.iter_mut().zip(col.iter()) {
                *o += m * xj;
            }
        }
    }

    /// `out = Mᵀ y`.
    pub(crate) fn apply_transpose_into(&self, y: &[f64], out: &mut [f64]) {
        if let Some(d) = &self.diagonal {
            apply_diagonal(d, y, out, true);
            return;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.matrix.column(j).iter().zip(y).map(|(m, v)| m * v).sum();
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<Self> {
        if inner.codomain != self.domain {
            return Err(Error::Shape("composition of incompatible maps".into()));
        }
        Self::new(
            inner.domain.clone(),
            self.codomain.clone(),
            &self.matrix * &inner.matrix,
        )
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * c,
            diagonal: self.diagonal.as_ref().map(|d| d.iter().map(|z| z * c).collect()),
        }
    }

    pub fn max_abs_diff(&self, other: &LinearMap) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }
}

/// Realified complex diagonal; the transpose of multiplication by `c` is
/// multiplication by `conj(c)`.
fn apply_diagonal(d: &[C64], x: &[f64], out: &mut [f64], transpose: bool) {
    for (k, c) in d.iter().enumerate() {
        let c = if transpose { c.conj() } else { *c };
        let z = c * C64::new(x[2 * k], x[2 * k + 1]);
        out[2 * k] = z.re;
        out[2 * k + 1] = z.im;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, Ensemble};
    use nalgebra::DVector;

    #[test]
    fn complex_realification_matches_direct_application() {
        let a = TracialAlgebra::new(vec![1, 2], vec![1.0, 0.5]).unwrap();
        let b = TracialAlgebra::matrix(2).unwrap();
        let m = CMatrix::from_fn(4, 5, |i, j| C64::new(i as f64 - j as f64, (i * j) as f64 * 0.5));
        let map = LinearMap::from_complex(a.clone(), b.clone(), &m).unwrap();
        let x = random_element(&a, 3, Ensemble::Gaussian);
        let direct = &m * nalgebra::DVector::from_vec(x.complex_coords());
        let via = map.apply(&x).unwrap();
        for (u, v) in via.complex_coords().iter().zip(direct.iter()) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn diagonal_path_matches_dense_matrix() {
        let a = TracialAlgebra::new(vec![1, 2], vec![1.0, 0.5]).unwrap();
        let d = nalgebra::DVector::from_fn(5, |i, _| C64::new(1.0 + i as f64, 0.5 - i as f64));
        let map = LinearMap::from_complex(a.clone(), a.clone(), &CMatrix::from_diagonal(&d)).unwrap();
        assert!(map.diagonal.is_some());
        let x = random_element(&a, 4, Ensemble::Gaussian).real_coords();
        for (transpose, dense) in [
            (false, map.matrix() * DVector::from_column_slice(&x)),
            (true, map.matrix().transpose() * DVector::from_column_slice(&x)),
        ] {
            let mut out = vec![0.0; x.len()];
            if transpose {
                map.apply_transpose_into(&x, &mut out);
            } else {
                map.apply_coords_into(&x, &mut out);
            }
            for (u, v) in out.iter().zip(dense.iter()) {
                assert!((u - v).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn from_fn_reproduces_the_function() {
        let a = TracialAlgebra::new(vec![2, 1], vec![1.0, 3.0]).unwrap();
        let s = random_element(&a, 1, Ensemble::Gaussian);
        let map = LinearMap::from_fn(a.clone(), a.clone(), |x| s.try_mul(&x.adjoint())).unwrap();
        let x = random_element(&a, 2, Ensemble::Gaussian);
        let expected = s.try_mul(&x.adjoint()).unwrap();
        assert!(map.apply(&x).unwrap().max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn shape_checks() {
        let a = TracialAlgebra::matrix(2).unwrap();
        assert!(LinearMap::new(a.clone(), a.clone(), DMatrix::zeros(3, 8)).is_err());
        let id = LinearMap::identity(&a);
        let other = TracialAlgebra::matrix(3).unwrap();
        assert!(id.apply(&other.identity()).is_err());
        assert!(id.compose(&LinearMap::identity(&other)).is_err());
        let twice = id.compose(&id.scaled(2.0)).unwrap();
        assert_eq!(twice.apply(&a.identity()).unwrap(), a.identity().scale_real(2.0));
    }
}
