//! Distribution functions, generalized singular numbers and Lorentz quasi-norms.
//!
//! On a finite block algebra `t ↦ μ_t(x)` is a decreasing step function, so every
//! norm here is evaluated in closed form from its breakpoints.

use crate::algebra::{AlgebraElement, C64};
use crate::error::{Error, Result};

/// Relative tolerance under which two singular values are treated as equal.
pub const MERGE_TOL: f64 = 1e-12;

/// The decreasing right-continuous step function `t ↦ μ_t(x)`.
///
/// Stored as pairs `(T_i, μ_i)`: `μ_t = μ_i` on `[T_{i-1}, T_i)` with `T_0 = 0`,
/// and `μ_t = 0` for `t ≥ T_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularFunction {
    steps: Vec<(f64, f64)>,
}

impl SingularFunction {
    /// Builds the rearrangement of a finite family of `(value, measure)` pairs.
    ///
    /// Values are taken in absolute value; zero values and zero measures are dropped.
    pub fn from_weighted_values(values: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut vals: Vec<(f64, f64)> = values
            .into_iter()
            .map(|(v, w)| (v.abs(), w))
            .filter(|&(v, w)| v > 0.0 && w > 0.0)
            .collect();
        vals.sort_by(|a, b| b.0.total_cmp(&a.0));

        let mut steps: Vec<(f64, f64)> = Vec::new();
        let mut total = 0.0;
        for (v, w) in vals {
            total += w;
            match steps.last_mut() {
                Some(last) if (last.1 - v) <= MERGE_TOL * last.1 => last.0 = total,
                _ => steps.push((total, v)),
            }
        }
        Self { steps }
    }

    /// Counting-measure rearrangement of a finite sequence.
    pub fn from_sequence(values: &[f64]) -> Self {
        Self::from_weighted_values(values.iter().map(|&v| (v, 1.0)))
    }

    pub fn steps(&self) -> &[(f64, f64)] {
        &self.steps
    }

    /// Measure of the support, `T_m`.
    pub fn support_measure(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.0)
    }

    /// `μ_t`. Breakpoints are sums of weights, so `t` within relative
    /// [`MERGE_TOL`] of a breakpoint counts as having reached it.
    pub fn value_at(&self, t: f64) -> f64 {
        self.steps
            .iter()
            .find(|&&(end, _)| t < end * (1.0 - MERGE_TOL))
            .map_or(0.0, |&(_, v)| v)
    }

    /// `λ_s = τ(χ_{(s,∞)}(|x|))`.
    pub fn distribution(&self, s: f64) -> f64 {
        self.steps
            .iter()
            .take_while(|&&(_, v)| v > s)
            .last()
            .map_or(0.0, |&(end, _)| end)
    }

    /// Largest value, `μ_0 = ‖x‖_∞`.
    pub fn sup(&self) -> f64 {
        self.steps.first().map_or(0.0, |s| s.1)
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        check_exponent("p", p, true)?;
        let top = self.sup();
        if p.is_infinite() || top == 0.0 {
            return Ok(top);
        }
        let mut prev = 0.0;
        let mut acc = 0.0;
        for &(end, v) in &self.steps {
            acc += (end - prev) * (v / top).powf(p);
            prev = end;
        }
        Ok(top * acc.powf(1.0 / p))
    }

    /// `‖x‖_{p,q}`; `q = ∞` gives the weak norm `sup_t t^{1/p} μ_t`.
    pub fn lorentz_norm(&self, p: f64, q: f64) -> Result<f64> {
        check_exponent("p", p, false)?;
        check_exponent("q", q, true)?;
        if q.is_infinite() {
            return Ok(self
                .steps
                .iter()
                .map(|&(end, v)| end.powf(1.0 / p) * v)
                .fold(0.0, f64::max));
        }
        let top = self.sup();
        if top == 0.0 {
            return Ok(0.0);
        }
        let ratio = q / p;
        let mut prev: f64 = 0.0;
        let mut acc = 0.0;
        for &(end, v) in &self.steps {
            acc += (v / top).powf(q) * (end.powf(ratio) - prev.powf(ratio));
            prev = end;
        }
        Ok(top * (acc / ratio).powf(1.0 / q))
    }
}

fn check_exponent(name: &str, v: f64, allow_inf: bool) -> Result<()> {
    let ok = if v.is_infinite() { allow_inf && v > 0.0 } else { v > 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("exponent {name} = {v} out of range")))
    }
}

pub fn singular_function(x: &AlgebraElement) -> Result<SingularFunction> {
    let sv = x.block_singular_values()?;
    let weights = x.algebra().weights();
    Ok(SingularFunction::from_weighted_values(
        sv.iter()
            .zip(weights)
            .flat_map(|(vals, &w)| vals.iter().map(move |&v| (v, w))),
    ))
}

pub fn distribution_function(x: &AlgebraElement, s: f64) -> Result<f64> {
    if s < 0.0 || s.is_nan() {
        return Err(Error::Domain(format!("distribution threshold {s} < 0")));
    }
    Ok(singular_function(x)?.distribution(s))
}

/// `‖x‖_p = τ(|x|^p)^{1/p}`, `p = ∞` for the operator norm.
pub fn lp_norm(x: &AlgebraElement, p: f64) -> Result<f64> {
    singular_function(x)?.lp_norm(p)
}

pub fn lorentz_norm(x: &AlgebraElement, p: f64, q: f64) -> Result<f64> {
    singular_function(x)?.lorentz_norm(p, q)
}

/// Conjugate exponent `p'` with `1/p + 1/p' = 1`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// Harmonic difference: the `r` with `1/r = 1/p − 1/q` (`∞` when `p = q`).
pub fn harmonic_gap(p: f64, q: f64) -> f64 {
    let inv = 1.0 / p - 1.0 / q;
    if inv <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / inv
    }
}

/// Absolute values of complex sequence entries.
pub fn moduli(values: &[C64]) -> Vec<f64> {
    values.iter().map(|z| z.norm()).collect()
}
