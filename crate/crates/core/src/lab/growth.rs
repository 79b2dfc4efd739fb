//! Weak-norm membership of symbols that decay against the group's growth.

use super::{CheckReport, Criterion, Table, EXACT_SLACK};
use crate::error::{Error, Result};

/// Word-length ball sizes `|B_n|` of a discrete group.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthModel {
    /// Free group on `generators` letters.
    Free { generators: u32 },
    /// `|B_n| = n^degree`.
    Polynomial { degree: u32 },
}

/// `|B_n| = 1 + Σ_{k ≤ n} 2N(2N−1)^{k−1}` for the free group on `N` letters.
pub fn free_group_ball_size(generators: u32, n: u32) -> f64 {
    let s = 2.0 * generators as f64;
    let mut sphere = 1.0;
    let mut ball = 1.0;
    for k in 1..=n {
        sphere = if k == 1 { s } else { sphere * (s - 1.0) };
        ball += sphere;
    }
    ball
}

impl GrowthModel {
    pub fn ball_size(&self, n: u32) -> f64 {
        match *self {
            GrowthModel::Free { generators } => free_group_ball_size(generators, n),
            GrowthModel::Polynomial { degree } => (n as f64).powi(degree as i32),
        }
    }

    /// The growth rate used for the symbol decay: `2N` for free groups.
    pub fn default_rate(&self) -> f64 {
        match *self {
            GrowthModel::Free { generators } => 2.0 * generators as f64,
            GrowthModel::Polynomial { degree } => degree as f64,
        }
    }

    fn label(&self) -> String {
        match self {
            GrowthModel::Free { generators } => format!("F{generators}"),
            GrowthModel::Polynomial { degree } => format!("polynomial growth n^{degree}"),
        }
    }
}

/// Checks `α^{p*} |{g : φ(g) ≥ α}| ≤ C^{p*}` at every level `α` attained within `depth`.
///
/// Free groups use `φ(g) = C·M^{−|g|/p*}` with levels `n = 0..=depth`; the polynomial
/// model uses `φ(g) = C|g|^{−k/p*}` with levels `n = 1..=depth`. The reported
/// `empirical_constant` is the weak-norm bound `max_n (α_n^{p*} |B_n|)^{1/p*}`.
pub fn growth_symbol_check(model: GrowthModel, rate: f64, p_star: f64, c: f64, depth: u32) -> Result<CheckReport> {
    if !(p_star >= 1.0 && p_star.is_finite()) || !(c > 0.0) {
        return Err(Error::Parameter(format!(
            "need p* ∈ [1, ∞) and C > 0, got {p_star}, {c}"
        )));
    }
    if matches!(model, GrowthModel::Free { .. }) && !(rate > 1.0) {
        return Err(Error::Parameter(format!("growth rate {rate} must exceed 1")));
    }
    let first = match model {
        GrowthModel::Free { .. } => 0,
        GrowthModel::Polynomial { .. } => 1,
    };
    let bound = c.powf(p_star);
    let mut table = Table::new(&["n", "threshold", "ball_size", "weighted_count"]);
    let mut violations = 0usize;
    let mut worst = 0.0f64;
    let mut worst_level = first;
    for n in first..=depth.max(first) {
        let alpha = match model {
            GrowthModel::Free { .. } => c * rate.powf(-(n as f64) / p_star),
            GrowthModel::Polynomial { degree } => c * (n as f64).powf(-(degree as f64) / p_star),
        };
        let count = model.ball_size(n);
        let weighted = alpha.powf(p_star) * count;
        if weighted > bound * (1.0 + EXACT_SLACK) {
            violations += 1;
        }
        if weighted > worst {
            worst = weighted;
            worst_level = n;
        }
        table.push(&[n as f64, alpha, count, weighted]);
    }
    let mut rep = CheckReport::new("growth_symbol", &model.label(), 0)
        .param("rate", rate)
        .param("p_star", p_star)
        .param("C", c)
        .param("depth", depth as f64);
    rep.trials = table.rows.len();
    rep.empirical_constant = worst.powf(1.0 / p_star);
    rep.max_ratio = worst / bound;
    rep.witness = format!("level n = {worst_level}");
    rep.metric("weak_norm_bound", rep.empirical_constant);
    rep.table = Some(table);
    rep.criterion(Criterion::at_most("threshold violations", violations as f64, 0.0));
    Ok(rep)
}
