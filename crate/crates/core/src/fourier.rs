//! Finite quantum-group pairs `(G, φ) ↔ (Ĝ, φ̂)` with an explicit Fourier map.
//!
//! Two families are built:
//!
//! * finite abelian groups: source `ℓ_∞(Γ)` with counting measure, dual `ℓ_∞(Γ̂)` with
//!   point masses `1/N`, and `F(f)(χ) = Σ_g f(g) conj(χ(g))`;
//! * finite group von Neumann algebras: source `ℓ_∞(Γ)` with counting measure, dual
//!   `⊕_π M_{n_π}` with block weights `n_π/|Γ|` (so `φ̂` is the canonical tracial
//!   state), and `F(f)_π = Σ_g f(g) π(g)`.
//!
//! With these normalizations `F` is an isometry `L_2 → L_2` and a contraction
//! `L_1 → L_∞` at the same time.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{random_element_with, AlgebraElement, CMatrix, Ensemble, TracialAlgebra, C64};
use crate::error::{Error, Result};
use crate::group::{root_of_unity, FiniteGroupData};
use crate::linmap::LinearMap;
use crate::spectral::lp_norm;

#[derive(Clone, Debug)]
pub struct QuantumGroupPair {
    name: String,
    source: TracialAlgebra,
    dual: TracialAlgebra,
    /// `F` in complex coordinates: dual coordinates × source coordinates.
    fourier: CMatrix,
    inverse: CMatrix,
}

impl QuantumGroupPair {
    fn from_parts(name: String, source: TracialAlgebra, dual: TracialAlgebra, fourier: CMatrix) -> Result<Self> {
        let inverse = fourier
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Domain(format!("Fourier matrix of {name} is singular")))?;
        Ok(Self {
            name,
            source,
            dual,
            fourier,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &TracialAlgebra {
        &self.source
    }

    pub fn dual(&self) -> &TracialAlgebra {
        &self.dual
    }

    pub fn fourier_matrix(&self) -> &CMatrix {
        &self.fourier
    }

    /// Order of the underlying group (the number of points of the source).
    pub fn size(&self) -> usize {
        self.source.complex_dim()
    }

    pub fn fourier(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.algebra() != &self.source {
            return Err(Error::Shape(format!(
                "element is not in the source algebra of {}",
                self.name
            )));
        }
        let v = &self.fourier * nalgebra::DVector::from_vec(x.complex_coords());
        self.dual.from_complex_coords(v.as_slice())
    }

    pub fn inverse_fourier(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        if a.algebra() != &self.dual {
            return Err(Error::Shape(format!(
                "element is not in the dual algebra of {}",
                self.name
            )));
        }
        let v = &self.inverse * nalgebra::DVector::from_vec(a.complex_coords());
        self.source.from_complex_coords(v.as_slice())
    }

    /// Point mass `δ_g` on the source.
    pub fn point_mass(&self, g: usize) -> AlgebraElement {
        let mut coords = vec![C64::new(0.0, 0.0); self.source.complex_dim()];
        coords[g] = C64::new(1.0, 0.0);
        self.source
            .from_complex_coords(&coords)
            .expect("source is commutative with one coordinate per point")
    }

    /// The Fourier multiplier `F(y) ↦ F(symbol·y)` on the dual, materialized.
    pub fn multiplier_map(&self, symbol: &AlgebraElement) -> Result<LinearMap> {
        if symbol.algebra() != &self.source {
            return Err(Error::Shape(format!(
                "symbol is not in the source algebra of {}",
                self.name
            )));
        }
        // the source is commutative with one coordinate per group element,
        // so multiplication by the symbol is diagonal
        let left = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(symbol.complex_coords()));
        let m = &self.fourier * left * &self.inverse;
        LinearMap::from_complex(self.dual.clone(), self.dual.clone(), &m)
    }

    /// Copy with `F` scaled by `1 + eps` (inverse recomputed). Used for fault injection.
    pub fn with_perturbed_fourier(&self, eps: f64) -> Result<Self> {
        Self::from_parts(
            format!("{}~perturbed", self.name),
            self.source.clone(),
            self.dual.clone(),
            &self.fourier * C64::new(1.0 + eps, 0.0),
        )
    }

    /// Largest Plancherel defect and largest `L_1 → L_∞` ratio over random elements.
    pub fn invariant_defects(&self, trials: usize, seed: u64) -> Result<PairDefects> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = PairDefects::default();
        for _ in 0..trials {
            let x = random_element_with(&self.source, &mut rng, Ensemble::Gaussian);
            let fx = self.fourier(&x)?;
            let l2 = lp_norm(&x, 2.0)?;
            out.plancherel = out.plancherel.max((lp_norm(&fx, 2.0)? - l2).abs() / (1.0 + l2));
            out.contraction = out.contraction.max(lp_norm(&fx, f64::INFINITY)? / lp_norm(&x, 1.0)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PairDefects {
    /// `max |‖F x‖₂ − ‖x‖₂| / (1 + ‖x‖₂)`.
    pub plancherel: f64,
    /// `max ‖F x‖_∞ / ‖x‖_1`.
    pub contraction: f64,
}

/// Character-sum transform on `Z_{n_1} × … × Z_{n_k}`.
pub fn build_finite_abelian(orders: &[usize]) -> Result<QuantumGroupPair> {
    if orders.is_empty() || orders.contains(&0) {
        return Err(Error::Parameter(
            "orders must be a nonempty list of positive integers".into(),
        ));
    }
    let n: usize = orders.iter().product();
    let digits = |mut idx: usize| {
        let mut out = vec![0; orders.len()];
        for (d, &m) in out.iter_mut().zip(orders).rev() {
            *d = idx % m;
            idx /= m;
        }
        out
    };
    let source = TracialAlgebra::commutative(vec![1.0; n])?;
    let dual = TracialAlgebra::commutative(vec![1.0 / n as f64; n])?;
    let fourier = CMatrix::from_fn(n, n, |k, g| {
        let (kd, gd) = (digits(k), digits(g));
        kd.iter()
            .zip(&gd)
            .zip(orders)
            .map(|((&ki, &gi), &m)| root_of_unity(ki * gi, m).conj())
            .product()
    });
    let name = orders.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x");
    QuantumGroupPair::from_parts(name, source, dual, fourier)
}

/// `ℓ_∞(Γ)` against the group von Neumann algebra `⊕_π M_{n_π}`.
pub fn build_group_vna(data: &FiniteGroupData) -> Result<QuantumGroupPair> {
    data.validate()?;
    let order = data.order;
    let dims = data.irrep_dims();
    let weights = dims.iter().map(|&d| d as f64 / order as f64).collect();
    let source = TracialAlgebra::commutative(vec![1.0; order])?;
    let dual = TracialAlgebra::new(dims, weights)?;
    let mut fourier = CMatrix::zeros(dual.complex_dim(), order);
    for (pi, rep) in data.irreps.iter().enumerate() {
        let off = dual.block_offset(pi);
        for (g, m) in rep.matrices.iter().enumerate() {
            for i in 0..rep.dim {
                for j in 0..rep.dim {
                    fourier[(off + i * rep.dim + j, g)] = m[(i, j)];
                }
            }
        }
    }
    QuantumGroupPair::from_parts(data.name.clone(), source, dual, fourier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random_element;
    use crate::group::presentation;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn z2_plancherel_example() {
        let pair = build_finite_abelian(&[2]).unwrap();
        let f = pair.fourier(&pair.point_mass(0)).unwrap();
        assert_eq!(f.complex_coords(), vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((lp_norm(&f, 2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn z4_constant_saturates_contraction() {
        let pair = build_finite_abelian(&[4]).unwrap();
        let one = pair.source().identity();
        let f = pair.fourier(&one).unwrap();
        let coords = f.complex_coords();
        assert!((coords[0] - c(4.0, 0.0)).norm() < 1e-12);
        assert!(coords[1..].iter().all(|z| z.norm() < 1e-12));
        assert!((lp_norm(&f, f64::INFINITY).unwrap() - lp_norm(&one, 1.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn z2xz2_fourth_power_is_n_squared() {
        // F is a 4x4 matrix; since source and dual share coordinates, compose directly.
        let pair = build_finite_abelian(&[2, 2]).unwrap();
        assert_eq!(pair.source().complex_dim(), 4);
        assert_eq!(pair.dual().complex_dim(), 4);
        let f = pair.fourier_matrix();
        let f4 = f * f * f * f;
        let expected = CMatrix::identity(4, 4) * c(16.0, 0.0);
        assert!((f4 - expected).camax() < 1e-12);
    }

    #[test]
    fn z4_point_mass_at_one() {
        let pair = build_finite_abelian(&[4]).unwrap();
        let f = pair.fourier(&pair.point_mass(1)).unwrap().complex_coords();
        // conj(e^{2πi k/4}) for k = 0..3
        let oracle: Vec<C64> = (0..4)
            .map(|k| C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 4.0).conj())
            .collect();
        let expected = [c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)];
        for ((a, b), o) in f.iter().zip(expected).zip(oracle) {
            assert!((a - b).norm() < 1e-15 && (a - o).norm() < 1e-15);
        }
    }

    #[test]
    fn inverse_examples() {
        let pair = build_finite_abelian(&[2]).unwrap();
        let a = pair.dual().diagonal(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let f = pair.inverse_fourier(&a).unwrap().complex_coords();
        assert!((f[0] - c(0.5, 0.0)).norm() < 1e-15 && (f[1] - c(0.5, 0.0)).norm() < 1e-15);

        let s3 = build_group_vna(&presentation("S3").unwrap().unwrap()).unwrap();
        for seed in 0..20 {
            let x = random_element(s3.source(), seed, Ensemble::Gaussian);
            let back = s3.inverse_fourier(&s3.fourier(&x).unwrap()).unwrap();
            assert!(back.max_abs_diff(&x).unwrap() < 1e-10);
            let a = random_element(s3.dual(), seed, Ensemble::Gaussian);
            let again = s3.fourier(&s3.inverse_fourier(&a).unwrap()).unwrap();
            assert!(again.max_abs_diff(&a).unwrap() < 1e-10);
        }
    }

    #[test]
    fn fourier_is_linear_and_checks_algebra() {
        let pair = build_finite_abelian(&[3, 2]).unwrap();
        let x = random_element(pair.source(), 1, Ensemble::Gaussian);
        let y = random_element(pair.source(), 2, Ensemble::Gaussian);
        let (a, b) = (c(0.3, -1.2), c(2.0, 0.5));
        let lhs = pair.fourier(&x.scale(a).try_add(&y.scale(b)).unwrap()).unwrap();
        let rhs = pair
            .fourier(&x)
            .unwrap()
            .scale(a)
            .try_add(&pair.fourier(&y).unwrap().scale(b))
            .unwrap();
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        assert_eq!(pair.fourier(&pair.source().zero()).unwrap(), pair.dual().zero());
        assert!(pair.fourier(&pair.dual().identity()).is_err());
        assert!(pair
            .inverse_fourier(&TracialAlgebra::matrix(2).unwrap().identity())
            .is_err());
    }

    #[test]
    fn z2_group_vna_matches_abelian_build() {
        let vna = build_group_vna(&FiniteGroupData::cyclic(2)).unwrap();
        let ab = build_finite_abelian(&[2]).unwrap();
        assert_eq!(vna.dual(), ab.dual());
        assert!((vna.fourier_matrix() - ab.fourier_matrix()).camax() < 1e-15);
    }

    #[test]
    fn s3_point_masses() {
        let pair = build_group_vna(&presentation("S3").unwrap().unwrap()).unwrap();
        let fe = pair.fourier(&pair.point_mass(0)).unwrap();
        assert!(fe.max_abs_diff(&pair.dual().identity()).unwrap() < 1e-15);
        assert!((lp_norm(&fe, f64::INFINITY).unwrap() - 1.0).abs() < 1e-12);
        for g in 1..6 {
            let fg = pair.fourier(&pair.point_mass(g)).unwrap();
            // unitary blockwise
            let uu = fg.adjoint().try_mul(&fg).unwrap();
            assert!(uu.max_abs_diff(&pair.dual().identity()).unwrap() < 1e-12);
            // Σ_π (n_π/6)·n_π = 1
            let oracle: f64 = [1.0, 1.0, 2.0].iter().map(|&n: &f64| n / 6.0 * n).sum();
            assert!((lp_norm(&fg, 2.0).unwrap().powi(2) - oracle).abs() < 1e-12);
            assert!((oracle - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn pair_invariants_hold() {
        let mut pairs = vec![
            build_finite_abelian(&[8]).unwrap(),
            build_finite_abelian(&[2, 3]).unwrap(),
        ];
        for name in crate::group::SHIPPED_GROUPS {
            pairs.push(build_group_vna(&presentation(name).unwrap().unwrap()).unwrap());
        }
        for pair in &pairs {
            let d = pair.invariant_defects(200, 11).unwrap();
            assert!(d.plancherel <= 1e-10, "{}: {d:?}", pair.name());
            assert!(d.contraction <= 1.0 + 1e-10, "{}: {d:?}", pair.name());
        }
        let bad = pairs[0].with_perturbed_fourier(1e-3).unwrap();
        assert!(bad.invariant_defects(20, 11).unwrap().plancherel > 1e-5);
    }

    #[test]
    fn multiplier_examples() {
        let s3 = build_group_vna(&presentation("S3").unwrap().unwrap()).unwrap();
        let id = s3.multiplier_map(&s3.source().identity()).unwrap();
        assert!(id.max_abs_diff(&LinearMap::identity(s3.dual())) < 1e-12);

        // symbol δ_e keeps λ_e and kills λ_g, g ≠ e
        let m = s3.multiplier_map(&s3.point_mass(0)).unwrap();
        for g in 0..6 {
            let lambda = s3.fourier(&s3.point_mass(g)).unwrap();
            let image = m.apply(&lambda).unwrap();
            let expected = if g == 0 { lambda.clone() } else { s3.dual().zero() };
            assert!(image.max_abs_diff(&expected).unwrap() < 1e-12, "g = {g}");
        }

        // λ_g ↦ φ(g) λ_g
        let phi = random_element(s3.source(), 4, Ensemble::Gaussian);
        let m = s3.multiplier_map(&phi).unwrap();
        for g in 0..6 {
            let lambda = s3.fourier(&s3.point_mass(g)).unwrap();
            let expected = lambda.scale(phi.block(g)[(0, 0)]);
            assert!(m.apply(&lambda).unwrap().max_abs_diff(&expected).unwrap() < 1e-10);
        }

        // m_x ∘ m_y = m_{xy}
        let x = random_element(s3.source(), 5, Ensemble::Gaussian);
        let y = random_element(s3.source(), 6, Ensemble::Gaussian);
        let lhs = s3
            .multiplier_map(&x)
            .unwrap()
            .compose(&s3.multiplier_map(&y).unwrap())
            .unwrap();
        let rhs = s3.multiplier_map(&x.try_mul(&y).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-10);

        assert!(s3.multiplier_map(&s3.dual().identity()).is_err());
    }
}
