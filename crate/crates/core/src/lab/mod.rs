//! Named verification checks.
//!
//! Every check returns a [`CheckReport`]. Checks whose constant is exactly known
//! carry hard [`Criterion`]s; checks of inequalities with unspecified constants
//! only report empirical constants, and their boundedness is judged across a
//! size ladder by [`size_ladder_verdict`].
//!
//! Exponent relations used throughout:
//! `1/r = 1/p − 1/q` (multiplier bounds), `1/s = 2/p − 1` (Paley),
//! `1/p* = |1/2 − 1/p|`, and `1/p + 1/p' = 1`.

mod checks;
mod growth;
mod torus;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use checks::{
    check_hausdorff_young, check_inversion_and_plancherel, check_lemma_constants, check_matrix_hausdorff_young,
    check_multiplier_bound, check_paley, check_real_interpolation_hy, check_schur_bound, paley_exponent,
};
pub use growth::{free_group_ball_size, growth_symbol_check, GrowthModel};
pub use torus::{endpoint_experiment, sharpness_experiment};

/// Slack on constant-one inequalities evaluated directly.
pub const EXACT_SLACK: f64 = 1e-9;
/// Slack on constant-one inequalities whose left side comes from the estimator.
pub const ESTIMATOR_SLACK: f64 = 1e-6;
/// Largest admissible log-log slope of max ratio versus instance size.
pub const SLOPE_LIMIT: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
    GreaterThan,
}

/// One hard pass/fail condition: `value <relation> limit`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    #[serde(with = "ext_float")]
    pub value: f64,
    pub relation: Relation,
    #[serde(with = "ext_float")]
    pub limit: f64,
    pub pass: bool,
}

impl Criterion {
    pub fn new(name: impl Into<String>, value: f64, relation: Relation, limit: f64) -> Self {
        let pass = match relation {
            Relation::AtMost => value <= limit,
            Relation::AtLeast => value >= limit,
            Relation::GreaterThan => value > limit,
        };
        Self {
            name: name.into(),
            value,
            relation,
            limit,
            pass,
        }
    }

    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, Relation::AtMost, limit)
    }

    pub fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, Relation::AtLeast, limit)
    }
}

/// A small numeric table, exported as CSV plot data.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<ExtFloat>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&v| ExtFloat(v)).collect());
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx].0).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub params: BTreeMap<String, ExtFloat>,
    pub trials: usize,
    pub seed: u64,
    #[serde(with = "ext_float")]
    pub max_ratio: f64,
    #[serde(with = "ext_float")]
    pub empirical_constant: f64,
    /// True when the report carries pass/fail criteria.
    pub hard: bool,
    pub pass: bool,
    pub criteria: Vec<Criterion>,
    pub metrics: BTreeMap<String, ExtFloat>,
    /// Which input attained `max_ratio`.
    pub witness: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl CheckReport {
    pub fn new(check: &str, instance: &str, seed: u64) -> Self {
        Self {
            check: check.into(),
            instance: instance.into(),
            params: BTreeMap::new(),
            trials: 0,
            seed,
            max_ratio: 0.0,
            empirical_constant: 0.0,
            hard: false,
            pass: true,
            criteria: Vec::new(),
            metrics: BTreeMap::new(),
            witness: String::new(),
            table: None,
        }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.into(), ExtFloat(value));
        self
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.insert(name.into(), ExtFloat(value));
    }

    pub fn criterion(&mut self, c: Criterion) {
        self.criteria.push(c);
        self.finalize();
    }

    /// Recomputes `hard`/`pass` from the criteria.
    pub fn finalize(&mut self) {
        self.hard = !self.criteria.is_empty();
        self.pass = self.criteria.iter().all(|c| c.pass);
    }

    pub fn failed_criteria(&self) -> impl Iterator<Item = &Criterion> {
        self.criteria.iter().filter(|c| !c.pass)
    }

    pub fn get_param(&self, name: &str) -> Option<f64> {
        self.params.get(name).map(|v| v.0)
    }

    pub fn get_metric(&self, name: &str) -> Option<f64> {
        self.metrics.get(name).map(|v| v.0)
    }
}

/// Running maximum of a ratio together with a label for its argmax.
#[derive(Clone, Debug, Default)]
pub(crate) struct MaxTracker {
    pub value: f64,
    pub label: String,
    pub count: usize,
}

impl MaxTracker {
    pub fn offer(&mut self, value: f64, label: impl FnOnce() -> String) {
        self.count += 1;
        if value > self.value || self.label.is_empty() {
            self.value = value;
            self.label = label();
        }
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Boundedness verdict for an implicit-constant check over a size ladder.
///
/// `points` are `(instance size, max ratio)`; passes when the least-squares log-log
/// slope is at most [`SLOPE_LIMIT`].
pub fn size_ladder_verdict(check: &str, instance: &str, seed: u64, points: &[(f64, f64)]) -> CheckReport {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let slope = log_log_slope(&sorted);
    let mut table = Table::new(&["size", "max_ratio"]);
    for &(s, r) in &sorted {
        table.push(&[s, r]);
    }
    let mut report = CheckReport::new(check, instance, seed);
    report.trials = sorted.len();
    report.max_ratio = sorted.iter().map(|p| p.1).fold(0.0, f64::max);
    report.empirical_constant = report.max_ratio;
    report.metric("slope", slope);
    report.witness = sorted
        .iter()
        .find(|p| p.1 == report.max_ratio)
        .map(|p| format!("size {}", p.0))
        .unwrap_or_default();
    report.table = Some(table);
    report.criterion(Criterion::at_most(
        "log-log slope of max ratio vs size",
        slope,
        SLOPE_LIMIT,
    ));
    report
}

/// `f64` that survives JSON: non-finite values are written as strings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtFloat(pub f64);

impl Serialize for ExtFloat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ext_float::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for ExtFloat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ext_float::deserialize(d).map(ExtFloat)
    }
}

pub(crate) mod ext_float {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("invalid number `{other}`"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [4.0f64, 8.0, 16.0, 32.0]
            .iter()
            .map(|&n| (n, 3.0 * n.powf(0.3)))
            .collect();
        assert!((log_log_slope(&pts) - 0.3).abs() < 1e-12);
        let flat: Vec<(f64, f64)> = [4.0, 8.0].iter().map(|&n| (n, 1.0)).collect();
        assert_eq!(log_log_slope(&flat), 0.0);
    }

    #[test]
    fn ladder_verdict() {
        let ok = size_ladder_verdict("x", "ladder", 0, &[(4.0, 1.0), (8.0, 1.0), (16.0, 0.9)]);
        assert!(ok.pass && ok.hard);
        let bad = size_ladder_verdict("x", "ladder", 0, &[(4.0, 1.0), (8.0, 1.5), (16.0, 2.2)]);
        assert!(!bad.pass);
        assert_eq!(bad.failed_criteria().count(), 1);
    }

    #[test]
    fn report_json_round_trip_with_infinities() {
        let mut r = CheckReport::new("c", "i", 3).param("q", f64::INFINITY).param("p", 1.5);
        r.criterion(Criterion::at_most("ratio", 0.5, 1.0));
        r.metric("m", f64::NEG_INFINITY);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"inf\""));
        let back: CheckReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.get_param("q"), Some(f64::INFINITY));
        assert_eq!(back.criteria, r.criteria);
        assert!(back.pass);
    }
}
