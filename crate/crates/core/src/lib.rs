//! Noncommutative `L_p` and Lorentz norms on weighted block-matrix algebras,
//! Fourier transforms on finite (quantum) groups, and numerical verification of
//! Fourier and Schur multiplier inequalities.
//!
//! * [`algebra`]: tracial block algebras and their elements
//! * [`spectral`]: generalized singular numbers, `L_p` and `L_{p,q}` norms
//! * [`group`], [`fourier`]: finite group data and Fourier pairs
//! * [`estimator`]: `L_p → L_q` operator-norm lower bounds
//! * [`schur`]: Schur multipliers
//! * [`lab`]: named verification checks producing [`lab::CheckReport`]s
//! * [`campaign`]: config-driven campaigns, report files and plot tables
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod algebra;
pub mod campaign;
pub mod error;
pub mod estimator;
pub mod fourier;
pub mod group;
pub mod lab;
pub mod linmap;
pub mod schatten;
pub mod schur;
pub mod seed;
pub mod spectral;

pub use algebra::{random_element, AlgebraElement, CMatrix, Ensemble, TracialAlgebra, C64};
pub use error::{Error, Result};
pub use estimator::{brute_force_pq_norm, estimate_pq_norm, exact_l2_norm, EstimatorOptions, NormEstimate};
pub use fourier::{build_finite_abelian, build_group_vna, QuantumGroupPair};
pub use group::FiniteGroupData;
pub use linmap::LinearMap;
pub use schatten::schatten_gradient;
pub use schur::{schur_map, symbol_sequence_norm, SchurSymbol};
pub use spectral::{distribution_function, lorentz_norm, lp_norm, singular_function, SingularFunction};
