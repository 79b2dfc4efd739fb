//! Trigonometric-polynomial experiments on `Z_M`, standing in for the circle.
//!
//! Norms are Riemann sums with weight `1/M`; polynomials of degree below `M/4`
//! are sampled with at least fourfold oversampling.

use rustfft::FftPlanner;

use super::{CheckReport, Criterion, Table};
use crate::algebra::C64;
use crate::error::{Error, Result};
use crate::spectral::{harmonic_gap, SingularFunction};

/// Samples `Σ_n c_n cos(2π n j / M)` for `j ∈ Z_M`.
fn cosine_series(m: usize, coeffs: &[(usize, f64)], planner: &mut FftPlanner<f64>) -> Vec<f64> {
    let mut buf = vec![C64::new(0.0, 0.0); m];
    for &(n, c) in coeffs {
        buf[n % m] += C64::new(c / 2.0, 0.0);
        buf[(m - n % m) % m] += C64::new(c / 2.0, 0.0);
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    buf.into_iter().map(|z| z.re).collect()
}

fn torus_norm(samples: &[f64], p: f64) -> f64 {
    let m = samples.len() as f64;
    if p.is_infinite() {
        return samples.iter().fold(0.0, |a, v| a.max(v.abs()));
    }
    (samples.iter().map(|v| v.abs().powf(p)).sum::<f64>() / m).powf(1.0 / p)
}

/// Growth of `‖m_φ f_N‖_q / ‖f_N‖_p` for `φ(n) = |n|^{-1/s}` with `s = s_factor·r`
/// and `f_N = Σ_{n ≤ N} n^{1/p − 1 − α} cos(2πn·)`, `α = 1/r − 1/s`.
///
/// The ratio diverges like `(log N)^{1/q}`, so no symbol in a weak space strictly
/// larger than `L_{r,∞}` can give a bounded multiplier.
pub fn sharpness_experiment(p: f64, q: f64, s_factor: f64, n_list: &[usize], seed: u64) -> Result<CheckReport> {
    if !(p > 1.0 && p <= 2.0 && q >= 2.0 && q.is_finite()) {
        return Err(Error::Parameter(format!(
            "need 1 < p ≤ 2 ≤ q < ∞, got p = {p}, q = {q}"
        )));
    }
    let r = harmonic_gap(p, q);
    if r.is_infinite() {
        return Err(Error::Parameter("p = q = 2 has no finite r".into()));
    }
    if !(s_factor > 1.0) {
        return Err(Error::Parameter(format!("s_factor = {s_factor} must exceed 1")));
    }
    if n_list.len() < 3 {
        return Err(Error::Parameter(format!(
            "need at least 3 N values, got {}",
            n_list.len()
        )));
    }
    if n_list[0] < 2 || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("N values must be increasing and at least 2".into()));
    }
    let s = s_factor * r;
    let alpha = 1.0 / r - 1.0 / s;
    let n_max = *n_list.last().unwrap();
    let m = 4 * n_max;
    let mut planner = FftPlanner::new();

    let mut table = Table::new(&["N", "lp_norm", "lq_norm", "ratio"]);
    let mut ratios = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let a = |k: usize| (k as f64).powf(1.0 / p - 1.0 - alpha);
        let phi = |k: usize| (k as f64).powf(-1.0 / s);
        let f: Vec<(usize, f64)> = (1..=n).map(|k| (k, a(k))).collect();
        let mf: Vec<(usize, f64)> = (1..=n).map(|k| (k, a(k) * phi(k))).collect();
        let lp = torus_norm(&cosine_series(m, &f, &mut planner), p);
        let lq = torus_norm(&cosine_series(m, &mf, &mut planner), q);
        ratios.push(lq / lp);
        table.push(&[n as f64, lp, lq, lq / lp]);
    }

    let n_min = n_list[0] as f64;
    let growth = ratios[ratios.len() - 1] / ratios[0];
    let required = 0.8 * ((n_max as f64).ln() / n_min.ln()).powf(1.0 / q);
    let decreases = ratios.windows(2).filter(|w| w[1] <= w[0]).count();

    let mut rep = CheckReport::new("sharpness", &format!("Z{m}"), seed)
        .param("p", p)
        .param("q", q)
        .param("r", r)
        .param("s", s)
        .param("alpha", alpha);
    rep.trials = n_list.len();
    rep.max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    rep.empirical_constant = rep.max_ratio;
    rep.witness = format!("N = {n_max}");
    rep.metric("growth", growth);
    rep.metric("required_growth", required);
    rep.table = Some(table);
    rep.criterion(Criterion::at_most(
        "non-increasing steps in ratio(N)",
        decreases as f64,
        0.0,
    ));
    rep.criterion(Criterion::at_least("ratio(N_max)/ratio(N_min)", growth, required));
    Ok(rep)
}

/// Lacunary symbol `φ_K = Σ_{k ≤ K} k^{-1/2} 1_{±2^k}`: its weak `ℓ_{2,∞}` norm stays 1
/// while the kernel `h_K = Σ k^{-1/2} cos(2π 2^k ·)` grows in `L_1`.
pub fn endpoint_experiment(k_list: &[u32], m: usize, seed: u64) -> Result<CheckReport> {
    if k_list.is_empty() || k_list.contains(&0) || k_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("K values must be positive and increasing".into()));
    }
    let k_max = *k_list.last().unwrap();
    if k_max >= usize::BITS - 2 || (1usize << k_max) > m / 4 {
        return Err(Error::Parameter(format!(
            "discretization Z_{m} too coarse for frequency 2^{k_max}"
        )));
    }
    let mut planner = FftPlanner::new();
    let mut table = Table::new(&["K", "l1_norm", "weak_norm"]);
    let mut l1 = Vec::with_capacity(k_list.len());
    let mut weak_defect: f64 = 0.0;
    let mut l2_defect: f64 = 0.0;
    for &kk in k_list {
        let coeffs: Vec<(usize, f64)> = (1..=kk).map(|k| (1usize << k, 1.0 / (k as f64).sqrt())).collect();
        let h = cosine_series(m, &coeffs, &mut planner);
        let n1 = torus_norm(&h, 1.0);
        let expected_l2 = (1..=kk).map(|k| 0.5 / k as f64).sum::<f64>().sqrt();
        l2_defect = l2_defect.max((torus_norm(&h, 2.0) - expected_l2).abs());
        let values: Vec<f64> = coeffs.iter().map(|c| c.1).collect();
        let weak = SingularFunction::from_sequence(&values).lorentz_norm(2.0, f64::INFINITY)?;
        weak_defect = weak_defect.max((weak - 1.0).abs());
        l1.push((kk, n1));
        table.push(&[kk as f64, n1, weak]);
    }
    let decreases = l1.windows(2).filter(|w| w[1].1 <= w[0].1).count();
    let at = |k: u32| l1.iter().find(|e| e.0 == k).map(|e| e.1);

    let mut rep = CheckReport::new("endpoint", &format!("Z{m}"), seed).param("p", 1.0);
    rep.trials = k_list.len();
    rep.max_ratio = l1.iter().map(|e| e.1).fold(0.0, f64::max);
    rep.empirical_constant = rep.max_ratio;
    rep.witness = format!("K = {k_max}");
    rep.metric("weak_norm_defect", weak_defect);
    rep.metric("l2_defect", l2_defect);
    rep.table = Some(table);
    rep.criterion(Criterion::at_most("max |‖φ_K‖_2,∞ − 1|", weak_defect, 1e-12));
    rep.criterion(Criterion::at_most(
        "non-increasing steps in ‖h_K‖_1",
        decreases as f64,
        0.0,
    ));
    if let (Some(a), Some(b)) = (at(8), at(16)) {
        rep.metric("l1_growth_8_to_16", b / a);
        rep.criterion(Criterion::at_least("‖h_16‖_1/‖h_8‖_1", b / a, 1.15));
    }
    rep.criterion(Criterion::at_most("max |‖h_K‖_2 − (Σ 1/2k)^½|", l2_defect, 1e-8));
    Ok(rep)
}
