//! Schur (entrywise) multipliers on `M_n` with the standard trace.

use crate::algebra::{CMatrix, TracialAlgebra, C64};
use crate::error::Result;
use crate::linmap::LinearMap;
use crate::spectral::lorentz_norm;

/// The symbol `a = (a_ij)` of the Schur multiplier `(x_ij) ↦ (a_ij x_ij)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurSymbol {
    entries: CMatrix,
}

impl SchurSymbol {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(crate::Error::Shape(format!(
                "Schur symbol must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self { entries })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self {
            entries: CMatrix::from_fn(n, n, f),
        }
    }

    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| C64::new(1.0, 0.0))
    }

    /// Matrix unit `e_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(n, |a, b| C64::new(if (a, b) == (i, j) { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }
}

/// The Schur multiplier as a map on `S_p^n` (one block, weight 1).
pub fn schur_map(a: &SchurSymbol) -> LinearMap {
    let n = a.n();
    let alg = TracialAlgebra::matrix(n).expect("n ≥ 1");
    // coordinates are row-major, so the entry (i, j) is coordinate i·n + j
    let diag = nalgebra::DVector::from_iterator(n * n, (0..n * n).map(|k| a.entries[(k / n, k % n)]));
    LinearMap::from_complex(alg.clone(), alg, &CMatrix::from_diagonal(&diag)).expect("square map")
}

/// `‖a‖_{ℓ_{r,w}(X×X)}` of the entries under counting measure.
pub fn symbol_sequence_norm(a: &SchurSymbol, r: f64, w: f64) -> Result<f64> {
    let n2 = a.n() * a.n();
    let alg = TracialAlgebra::commutative(vec![1.0; n2])?;
    let values: Vec<C64> = a.entries.transpose().iter().copied().collect();
    lorentz_norm(&alg.diagonal(&values)?, r, w)
}
