//! Config-driven campaigns: instance resolution, check expansion, report files
//! and plot tables.
//!
//! A campaign is a TOML file (see `campaigns/SCHEMA.md` in the repository):
//!
//! ```toml
//! seed = 7
//! output = "reports"
//!
//! [estimator]
//! restarts = 8
//! max_iters = 300
//!
//! [[check]]
//! kind = "hausdorff_young"
//! instances = ["Z8", "S3"]
//! p = [1, "4/3", 2]
//! trials = 200
//! ```
//!
//! Each `[[check]]` expands into one run per (instance or size) × parameter tuple.
//! Run seeds are `derive_seed(seed, ["check", index, kind, instance, params])`,
//! so a run's output depends only on the master seed and its own coordinates.
//! All runs finish before anything is written; an error leaves no summary behind.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::estimator::EstimatorOptions;
use crate::fourier::{build_finite_abelian, build_group_vna, QuantumGroupPair};
use crate::group::{shipped_group_json, FiniteGroupData, SHIPPED_GROUPS};
use crate::lab::{self, size_ladder_verdict, CheckReport, GrowthModel};
use crate::seed::derive_seed;
use crate::spectral::harmonic_gap;

/// Environment variable naming the default group data directory.
pub const DATA_DIR_ENV: &str = "NCMULT_DATA_DIR";
pub const SUMMARY_FILE: &str = "summary.json";

/// An exponent written as a number, a fraction such as `"4/3"`, or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Param(pub f64);

impl std::str::FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if matches!(s, "inf" | "∞") {
            return Ok(Param(f64::INFINITY));
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse `{s}` as a number"))
        };
        match s.split_once('/') {
            Some((a, b)) => Ok(Param(parse(a)? / parse(b)?)),
            None => parse(s).map(Param),
        }
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Float(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(Param(v as f64)),
            Repr::Float(v) => Ok(Param(v)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimatorSection {
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_restarts() -> usize {
    EstimatorOptions::default().restarts
}
fn default_max_iters() -> usize {
    EstimatorOptions::default().max_iters
}
fn default_tol() -> f64 {
    EstimatorOptions::default().tol
}
fn default_trials() -> usize {
    100
}

impl Default for EstimatorSection {
    fn default() -> Self {
        Self {
            restarts: default_restarts(),
            max_iters: default_max_iters(),
            tol: default_tol(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub seed: u64,
    /// Output directory, relative to the config file.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub estimator: EstimatorSection,
    #[serde(default, rename = "check")]
    pub checks: Vec<CheckSpec>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthKind {
    #[default]
    Free,
    Polynomial,
}

/// One `[[check]]` entry.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CheckSpec {
    InversionPlancherel {
        instances: Vec<String>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        perturb_fourier: Option<f64>,
    },
    HausdorffYoung {
        instances: Vec<String>,
        p: Vec<Param>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        perturb_fourier: Option<f64>,
    },
    MatrixHausdorffYoung {
        sizes: Vec<usize>,
        p: Vec<Param>,
        #[serde(default = "default_trials")]
        trials: usize,
    },
    RealInterpolation {
        instances: Vec<String>,
        p: Vec<Param>,
        #[serde(default = "default_trials")]
        trials: usize,
    },
    MultiplierBound {
        instances: Vec<String>,
        pq: Vec<[Param; 2]>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        ladder: bool,
    },
    Paley {
        instances: Vec<String>,
        p: Vec<Param>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        ladder: bool,
    },
    SchurBound {
        sizes: Vec<usize>,
        pq: Vec<[Param; 2]>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        ladder: bool,
    },
    LemmaConstants {
        #[serde(default = "default_trials")]
        trials: usize,
    },
    Sharpness {
        p: Param,
        q: Param,
        s_factor: f64,
        n: Vec<usize>,
    },
    Endpoint {
        k: Vec<u32>,
        m: usize,
    },
    Growth {
        #[serde(default)]
        model: GrowthKind,
        #[serde(default)]
        generators: Vec<u32>,
        #[serde(default)]
        degree: Option<u32>,
        /// Decay base; defaults to `2N` for free groups.
        #[serde(default)]
        rate: Option<f64>,
        p_star: Vec<Param>,
        c: Vec<f64>,
        depth: u32,
    },
}

impl CheckSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            CheckSpec::InversionPlancherel { .. } => "inversion_plancherel",
            CheckSpec::HausdorffYoung { .. } => "hausdorff_young",
            CheckSpec::MatrixHausdorffYoung { .. } => "matrix_hausdorff_young",
            CheckSpec::RealInterpolation { .. } => "real_interpolation",
            CheckSpec::MultiplierBound { .. } => "multiplier_bound",
            CheckSpec::Paley { .. } => "paley",
            CheckSpec::SchurBound { .. } => "schur_bound",
            CheckSpec::LemmaConstants { .. } => "lemma_constants",
            CheckSpec::Sharpness { .. } => "sharpness",
            CheckSpec::Endpoint { .. } => "endpoint",
            CheckSpec::Growth { .. } => "growth",
        }
    }
}

impl CampaignConfig {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Where instance names and relative paths are looked up.
#[derive(Clone, Debug, Default)]
pub struct InstanceResolver {
    /// Base for relative `file:` paths (the config file's directory).
    pub base: PathBuf,
    /// Directory searched for `<name>.json` when a name is not built in.
    pub data_dir: Option<PathBuf>,
}

impl InstanceResolver {
    pub fn new(base: impl Into<PathBuf>, data_dir: Option<PathBuf>) -> Self {
        Self {
            base: base.into(),
            data_dir,
        }
    }

    /// Data directory from [`DATA_DIR_ENV`], if set.
    pub fn data_dir_from_env() -> Option<PathBuf> {
        std::env::var_os(DATA_DIR_ENV).map(PathBuf::from)
    }

    /// Resolves `Z<n>`, products such as `Z2xZ4`, the shipped groups,
    /// `file:<path>`, paths ending in `.json`, and `<name>.json` in the data directory.
    pub fn resolve(&self, spec: &str) -> Result<QuantumGroupPair> {
        if let Some(text) = shipped_group_json(spec) {
            return build_group_vna(&FiniteGroupData::from_json(text)?);
        }
        if let Some(orders) = parse_abelian(spec) {
            return build_finite_abelian(&orders);
        }
        if let Some(path) = spec.strip_prefix("file:") {
            return build_group_vna(&FiniteGroupData::load(self.base.join(path))?);
        }
        if spec.ends_with(".json") {
            return build_group_vna(&FiniteGroupData::load(self.base.join(spec))?);
        }
        if let Some(dir) = &self.data_dir {
            let path = dir.join(format!("{spec}.json"));
            if path.is_file() {
                return build_group_vna(&FiniteGroupData::load(path)?);
            }
        }
        Err(Error::UnknownInstance(spec.to_string()))
    }
}

/// `Z6` → `[6]`, `Z2xZ3` → `[2, 3]`.
fn parse_abelian(spec: &str) -> Option<Vec<usize>> {
    spec.split('x')
        .map(|f| f.strip_prefix('Z')?.parse::<usize>().ok().filter(|&n| n > 0))
        .collect()
}

/// One catalog line of [`list_instances`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceInfo {
    pub name: String,
    pub origin: String,
    pub order: Option<usize>,
    pub dual_block_dims: Vec<usize>,
    /// `None` when valid, otherwise the violated invariant.
    pub invalid: Option<String>,
}

impl InstanceInfo {
    fn from_result(name: String, origin: String, r: Result<QuantumGroupPair>) -> Self {
        match r {
            Ok(pair) => Self {
                name,
                origin,
                order: Some(pair.size()),
                dual_block_dims: pair.dual().dims().to_vec(),
                invalid: None,
            },
            Err(e) => Self {
                name,
                origin,
                order: None,
                dual_block_dims: Vec::new(),
                invalid: Some(e.to_string()),
            },
        }
    }
}

/// Describes any resolvable instance, e.g. `Z6` or `file:my_group.json`.
pub fn describe_instance(resolver: &InstanceResolver, spec: &str) -> InstanceInfo {
    let origin = if shipped_group_json(spec).is_some() {
        "built-in data"
    } else if parse_abelian(spec).is_some() {
        "built-in abelian"
    } else {
        "file"
    };
    InstanceInfo::from_result(spec.to_string(), origin.into(), resolver.resolve(spec))
}

/// Built-in groups (with `Z4` standing in for the `Z<n>` family) followed by every
/// `*.json` file of the data directory, sorted by file name.
pub fn list_instances(resolver: &InstanceResolver) -> Vec<InstanceInfo> {
    let mut out = vec![InstanceInfo {
        name: "Z<n>".into(),
        ..describe_instance(resolver, "Z4")
    }];
    out.extend(SHIPPED_GROUPS.iter().map(|g| describe_instance(resolver, g)));
    if let Some(dir) = &resolver.data_dir {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .into_iter()
            .flatten()
            .flatten()
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|e| e == "json"))
            .collect();
        files.sort();
        for path in files {
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let r = FiniteGroupData::load(&path).and_then(|d| build_group_vna(&d));
            out.push(InstanceInfo::from_result(name, path.display().to_string(), r));
        }
    }
    out
}

pub fn format_instances(list: &[InstanceInfo]) -> String {
    let mut s = String::new();
    for i in list {
        let status = match &i.invalid {
            None => "valid".to_string(),
            Some(why) => format!("INVALID: {why}"),
        };
        let order = i.order.map_or("-".to_string(), |o| o.to_string());
        let _ = writeln!(
            s,
            "{:<8} order {:>4}  dual blocks {:?}  [{}] {}",
            i.name, order, i.dual_block_dims, i.origin, status
        );
    }
    s
}

type RunFn = Box<dyn Fn(u64) -> Result<CheckReport> + Send + Sync>;

/// A single check invocation with everything resolved.
struct Job {
    check: usize,
    instance: String,
    size: f64,
    /// Parameter tuple; also the ladder grouping key.
    params: String,
    run: RunFn,
}

fn fmt_param(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v}")
    }
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Config(what()))
    }
}

fn check_p(kind: &str, p: f64, lo_open: bool) -> Result<()> {
    let ok = if lo_open { p > 1.0 } else { p >= 1.0 } && p <= 2.0;
    let range = if lo_open { "(1, 2]" } else { "[1, 2]" };
    require(ok, || format!("{kind}: p = {p} outside {range}"))
}

fn check_pq(kind: &str, p: f64, q: f64) -> Result<()> {
    check_p(kind, p, true)?;
    require(q >= 2.0 && q.is_finite(), || format!("{kind}: q = {q} outside [2, ∞)"))
}

fn nonempty<T>(kind: &str, field: &str, v: &[T]) -> Result<()> {
    require(!v.is_empty(), || format!("{kind}: `{field}` must not be empty"))
}

fn expand(
    index: usize,
    spec: &CheckSpec,
    resolver: &InstanceResolver,
    est: EstimatorOptions,
    cache: &mut BTreeMap<String, Arc<QuantumGroupPair>>,
) -> Result<Vec<Job>> {
    let kind = spec.kind();
    let mut pair = |name: &str, perturb: Option<f64>| -> Result<Arc<QuantumGroupPair>> {
        let base = match cache.get(name) {
            Some(p) => p.clone(),
            None => {
                let p = Arc::new(
                    resolver
                        .resolve(name)
                        .map_err(|e| Error::Config(format!("check #{index} ({kind}): instance `{name}`: {e}")))?,
                );
                cache.insert(name.to_string(), p.clone());
                p
            }
        };
        match perturb {
            Some(eps) => Ok(Arc::new(base.with_perturbed_fourier(eps)?)),
            None => Ok(base),
        }
    };
    let mut jobs = Vec::new();
    let mut push = |instance: String, size: f64, params: String, run: RunFn| {
        jobs.push(Job {
            check: index,
            instance,
            size,
            params,
            run,
        })
    };
    match spec.clone() {
        CheckSpec::InversionPlancherel {
            instances,
            trials,
            perturb_fourier,
        } => {
            nonempty(kind, "instances", &instances)?;
            for name in instances {
                let pr = pair(&name, perturb_fourier)?;
                let size = pr.size() as f64;
                push(
                    name,
                    size,
                    String::new(),
                    Box::new(move |seed| lab::check_inversion_and_plancherel(&pr, trials, seed)),
                );
            }
        }
        CheckSpec::HausdorffYoung {
            instances,
            p,
            trials,
            perturb_fourier,
        } => {
            nonempty(kind, "instances", &instances)?;
            nonempty(kind, "p", &p)?;
            for name in instances {
                let pr = pair(&name, perturb_fourier)?;
                for &Param(p) in &p {
                    check_p(kind, p, false)?;
                    let pr = pr.clone();
                    push(
                        name.clone(),
                        pr.size() as f64,
                        format!("p={}", fmt_param(p)),
                        Box::new(move |seed| lab::check_hausdorff_young(&pr, p, trials, seed)),
                    );
                }
            }
        }
        CheckSpec::MatrixHausdorffYoung { sizes, p, trials } => {
            nonempty(kind, "sizes", &sizes)?;
            nonempty(kind, "p", &p)?;
            for n in sizes {
                require(n >= 1, || format!("{kind}: matrix size must be positive"))?;
                for &Param(p) in &p {
                    check_p(kind, p, false)?;
                    push(
                        format!("M{n}"),
                        n as f64,
                        format!("p={}", fmt_param(p)),
                        Box::new(move |seed| lab::check_matrix_hausdorff_young(n, p, trials, seed)),
                    );
                }
            }
        }
        CheckSpec::RealInterpolation { instances, p, trials } => {
            nonempty(kind, "instances", &instances)?;
            nonempty(kind, "p", &p)?;
            for name in instances {
                let pr = pair(&name, None)?;
                for &Param(p) in &p {
                    check_p(kind, p, true)?;
                    let pr = pr.clone();
                    push(
                        name.clone(),
                        pr.size() as f64,
                        format!("p={}", fmt_param(p)),
                        Box::new(move |seed| lab::check_real_interpolation_hy(&pr, p, trials, seed)),
                    );
                }
            }
        }
        CheckSpec::MultiplierBound {
            instances, pq, trials, ..
        } => {
            nonempty(kind, "instances", &instances)?;
            nonempty(kind, "pq", &pq)?;
            for name in instances {
                let pr = pair(&name, None)?;
                for &[Param(p), Param(q)] in &pq {
                    check_pq(kind, p, q)?;
                    let pr = pr.clone();
                    push(
                        name.clone(),
                        pr.size() as f64,
                        format!("p={},q={}", fmt_param(p), fmt_param(q)),
                        Box::new(move |seed| lab::check_multiplier_bound(&pr, p, q, trials, seed, &est)),
                    );
                }
            }
        }
        CheckSpec::Paley {
            instances, p, trials, ..
        } => {
            nonempty(kind, "instances", &instances)?;
            nonempty(kind, "p", &p)?;
            for name in instances {
                let pr = pair(&name, None)?;
                for &Param(p) in &p {
                    check_p(kind, p, true)?;
                    let pr = pr.clone();
                    push(
                        name.clone(),
                        pr.size() as f64,
                        format!("p={}", fmt_param(p)),
                        Box::new(move |seed| lab::check_paley(&pr, p, trials, seed)),
                    );
                }
            }
        }
        CheckSpec::SchurBound { sizes, pq, trials, .. } => {
            nonempty(kind, "sizes", &sizes)?;
            nonempty(kind, "pq", &pq)?;
            for n in sizes {
                require(n >= 2, || format!("{kind}: matrix size {n} must be at least 2"))?;
                for &[Param(p), Param(q)] in &pq {
                    check_pq(kind, p, q)?;
                    push(
                        format!("M{n}"),
                        n as f64,
                        format!("p={},q={}", fmt_param(p), fmt_param(q)),
                        Box::new(move |seed| lab::check_schur_bound(n, p, q, trials, seed, &est)),
                    );
                }
            }
        }
        CheckSpec::LemmaConstants { trials } => {
            push(
                "random block algebras".into(),
                0.0,
                String::new(),
                Box::new(move |seed| lab::check_lemma_constants(trials, seed)),
            );
        }
        CheckSpec::Sharpness { p, q, s_factor, n } => {
            let (p, q) = (p.0, q.0);
            check_pq(kind, p, q)?;
            require(harmonic_gap(p, q).is_finite(), || {
                format!("{kind}: p = q = 2 has no finite r")
            })?;
            require(s_factor > 1.0, || {
                format!("{kind}: s_factor = {s_factor} must exceed 1")
            })?;
            require(n.len() >= 3, || format!("{kind}: need at least 3 values of n"))?;
            require(n[0] >= 2 && n.windows(2).all(|w| w[0] < w[1]), || {
                format!("{kind}: n must be increasing and at least 2")
            })?;
            let m = 4 * n[n.len() - 1];
            push(
                format!("Z{m}"),
                m as f64,
                format!("p={},q={},s_factor={s_factor}", fmt_param(p), fmt_param(q)),
                Box::new(move |seed| lab::sharpness_experiment(p, q, s_factor, &n, seed)),
            );
        }
        CheckSpec::Endpoint { k, m } => {
            nonempty(kind, "k", &k)?;
            require(k[0] >= 1 && k.windows(2).all(|w| w[0] < w[1]), || {
                format!("{kind}: k must be positive and increasing")
            })?;
            let top = k[k.len() - 1];
            require(top < usize::BITS - 2 && (1usize << top) <= m / 4, || {
                format!("{kind}: Z{m} is too coarse for frequency 2^{top}")
            })?;
            push(
                format!("Z{m}"),
                m as f64,
                String::new(),
                Box::new(move |seed| lab::endpoint_experiment(&k, m, seed)),
            );
        }
        CheckSpec::Growth {
            model,
            generators,
            degree,
            rate,
            p_star,
            c,
            depth,
        } => {
            nonempty(kind, "p_star", &p_star)?;
            nonempty(kind, "c", &c)?;
            let models: Vec<GrowthModel> = match model {
                GrowthKind::Free => {
                    nonempty(kind, "generators", &generators)?;
                    require(generators.iter().all(|&g| g >= 1), || {
                        format!("{kind}: generator counts must be positive")
                    })?;
                    generators
                        .iter()
                        .map(|&g| GrowthModel::Free { generators: g })
                        .collect()
                }
                GrowthKind::Polynomial => {
                    let degree =
                        degree.ok_or_else(|| Error::Config(format!("{kind}: polynomial model needs `degree`")))?;
                    vec![GrowthModel::Polynomial { degree }]
                }
            };
            for m in models {
                let rate = rate.unwrap_or_else(|| m.default_rate());
                if matches!(m, GrowthModel::Free { .. }) {
                    require(rate > 1.0, || format!("{kind}: rate {rate} must exceed 1"))?;
                }
                for &Param(ps) in &p_star {
                    require(ps >= 1.0 && ps.is_finite(), || {
                        format!("{kind}: p_star = {ps} outside [1, ∞)")
                    })?;
                    for &cc in &c {
                        require(cc > 0.0, || format!("{kind}: C = {cc} must be positive"))?;
                        let label = match m {
                            GrowthModel::Free { generators } => format!("F{generators}"),
                            GrowthModel::Polynomial { degree } => format!("poly{degree}"),
                        };
                        push(
                            label,
                            0.0,
                            format!("rate={rate},p_star={},C={cc}", fmt_param(ps)),
                            Box::new(move |_| lab::growth_symbol_check(m, rate, ps, cc, depth)),
                        );
                    }
                }
            }
        }
    }
    Ok(jobs)
}

fn ladder_enabled(spec: &CheckSpec) -> bool {
    matches!(
        spec,
        CheckSpec::MultiplierBound { ladder: true, .. }
            | CheckSpec::Paley { ladder: true, .. }
            | CheckSpec::SchurBound { ladder: true, .. }
    )
}

/// Reports of one `[[check]]` entry, written as one JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckFile {
    pub index: usize,
    pub kind: String,
    pub hard: bool,
    pub pass: bool,
    pub reports: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub index: usize,
    pub kind: String,
    pub file: String,
    pub runs: usize,
    pub hard: bool,
    pub pass: bool,
    /// `instance [params]: criterion = value (limit)` for each failed criterion.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub seed: u64,
    pub checks: Vec<SummaryEntry>,
    pub hard_failures: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub data_dir: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct CampaignOutcome {
    pub out_dir: PathBuf,
    pub summary: Summary,
    pub files: Vec<CheckFile>,
}

fn params_label(r: &CheckReport) -> String {
    r.params
        .iter()
        .map(|(k, v)| format!("{k}={}", fmt_param(v.0)))
        .collect::<Vec<_>>()
        .join(",")
}

/// Runs every check of `config` and returns the report files in memory.
pub fn execute(config: &CampaignConfig, resolver: &InstanceResolver, seed: u64) -> Result<Vec<CheckFile>> {
    let est = EstimatorOptions {
        restarts: config.estimator.restarts,
        max_iters: config.estimator.max_iters,
        tol: config.estimator.tol,
        seed: 0,
    };
    require(est.restarts >= 1, || "estimator.restarts must be at least 1".into())?;
    let mut cache = BTreeMap::new();
    let mut jobs = Vec::new();
    for (i, spec) in config.checks.iter().enumerate() {
        jobs.extend(expand(i, spec, resolver, est, &mut cache)?);
    }

    let results: Vec<Result<CheckReport>> = jobs
        .par_iter()
        .map(|job| {
            let kind = config.checks[job.check].kind();
            let seed = derive_seed(
                seed,
                &["check", &job.check.to_string(), kind, &job.instance, &job.params],
            );
            let mut r = (job.run)(seed)?;
            if r.get_metric("size").is_none() && job.size > 0.0 {
                r.metric("size", job.size);
            }
            Ok(r)
        })
        .collect();

    let mut per_check: Vec<Vec<CheckReport>> = vec![Vec::new(); config.checks.len()];
    for (job, r) in jobs.iter().zip(results) {
        per_check[job.check].push(r?);
    }

    let mut files = Vec::with_capacity(config.checks.len());
    for (index, (spec, mut reports)) in config.checks.iter().zip(per_check).enumerate() {
        let kind = spec.kind();
        if ladder_enabled(spec) {
            let mut groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
            for (job, r) in jobs.iter().filter(|j| j.check == index).zip(&reports) {
                // the Paley constant is exactly 1 at p = 2; no ladder there
                if kind == "paley" && r.get_param("p") == Some(2.0) {
                    continue;
                }
                groups
                    .entry(job.params.clone())
                    .or_default()
                    .push((job.size, r.max_ratio));
            }
            for (params, points) in groups {
                let mut v = size_ladder_verdict(
                    &format!("{kind}_ladder"),
                    &format!("size ladder [{params}]"),
                    0,
                    &points,
                );
                let first = reports.iter().find(|r| params_label_matches(r, &params));
                if let Some(f) = first {
                    v.params = f.params.clone();
                }
                reports.push(v);
            }
        }
        let hard = reports.iter().any(|r| r.hard);
        let pass = reports.iter().all(|r| r.pass);
        files.push(CheckFile {
            index,
            kind: kind.to_string(),
            hard,
            pass,
            reports,
        });
    }
    Ok(files)
}

fn params_label_matches(r: &CheckReport, params: &str) -> bool {
    let want: Vec<&str> = params.split(',').collect();
    want.iter().all(|kv| {
        let Some((k, v)) = kv.split_once('=') else { return true };
        r.get_param(k).map(fmt_param).as_deref() == Some(v)
    })
}

pub fn check_file_name(f: &CheckFile) -> String {
    format!("{:02}-{}.json", f.index, f.kind)
}

pub fn summarize(seed: u64, files: &[CheckFile]) -> Summary {
    let checks: Vec<SummaryEntry> = files
        .iter()
        .map(|f| SummaryEntry {
            index: f.index,
            kind: f.kind.clone(),
            file: check_file_name(f),
            runs: f.reports.len(),
            hard: f.hard,
            pass: f.pass,
            failures: f
                .reports
                .iter()
                .flat_map(|r| {
                    r.failed_criteria().map(move |c| {
                        format!(
                            "{} [{}]: {} = {} (limit {})",
                            r.instance,
                            params_label(r),
                            c.name,
                            fmt_param(c.value),
                            fmt_param(c.limit)
                        )
                    })
                })
                .collect(),
        })
        .collect();
    let hard_failures = checks.iter().map(|c| c.failures.len()).sum();
    Summary {
        seed,
        pass: checks.iter().all(|c| c.pass),
        checks,
        hard_failures,
    }
}

fn to_json_text<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Loads, runs and writes a campaign. `summary.pass` is false iff a hard criterion failed.
pub fn run_campaign(config_path: impl AsRef<Path>, opts: &RunOptions) -> Result<CampaignOutcome> {
    let config_path = config_path.as_ref();
    let config = CampaignConfig::load(config_path)?;
    let base = config_path.parent().map(Path::to_path_buf).unwrap_or_default();
    let out_dir = match (&opts.out, &config.output) {
        (Some(o), _) => o.clone(),
        (None, Some(o)) => base.join(o),
        (None, None) => base.join("reports"),
    };
    let data_dir = opts.data_dir.clone().or_else(InstanceResolver::data_dir_from_env);
    let resolver = InstanceResolver::new(base, data_dir);
    let seed = opts.seed.unwrap_or(config.seed);

    let files = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {n} worker threads: {e}")))?
            .install(|| execute(&config, &resolver, seed))?,
        None => execute(&config, &resolver, seed)?,
    };
    let summary = summarize(seed, &files);

    std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
    for f in &files {
        write_file(&out_dir.join(check_file_name(f)), &to_json_text(f)?)?;
    }
    write_file(&out_dir.join(SUMMARY_FILE), &to_json_text(&summary)?)?;
    Ok(CampaignOutcome {
        out_dir,
        summary,
        files,
    })
}

/// Reads the check files listed in `<dir>/summary.json`.
pub fn load_reports(dir: impl AsRef<Path>) -> Result<Vec<CheckFile>> {
    let dir = dir.as_ref();
    let path = dir.join(SUMMARY_FILE);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let summary: Summary = serde_json::from_str(&text)?;
    summary
        .checks
        .iter()
        .map(|c| {
            let path = dir.join(&c.file);
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            Ok(serde_json::from_str(&text)?)
        })
        .collect()
}

/// `v` with 12 significant digits, in the shortest of fixed or exponent form.
pub fn format_sig12(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.into();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(&format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

fn slug(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        if c.is_ascii_alphanumeric() || c == '.' {
            out.push(c);
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

/// Writes CSV plot tables into `out_dir` and returns their file names:
/// one overview per check file (one row per run) and one per report table
/// (growth curves, size ladders).
pub fn emit_plot_data(files: &[CheckFile], out_dir: impl AsRef<Path>) -> Result<Vec<String>> {
    let out_dir = out_dir.as_ref();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    for f in files {
        let stem = format!("{:02}-{}", f.index, f.kind);
        let mut param_names: Vec<&str> = Vec::new();
        for r in &f.reports {
            for k in r.params.keys() {
                if !param_names.contains(&k.as_str()) {
                    param_names.push(k);
                }
            }
        }
        param_names.sort_unstable();
        let name = format!("{stem}.csv");
        let mut w = csv::Writer::from_path(out_dir.join(&name))?;
        let mut header = vec!["check", "instance", "size"];
        header.extend(&param_names);
        header.extend(["max_ratio", "empirical_constant", "pass"]);
        w.write_record(&header)?;
        for r in &f.reports {
            let mut row = vec![
                r.check.clone(),
                r.instance.clone(),
                r.get_metric("size").map(format_sig12).unwrap_or_default(),
            ];
            row.extend(
                param_names
                    .iter()
                    .map(|p| r.get_param(p).map(format_sig12).unwrap_or_default()),
            );
            row.push(format_sig12(r.max_ratio));
            row.push(format_sig12(r.empirical_constant));
            row.push(r.pass.to_string());
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| Error::io(out_dir.join(&name), e))?;
        written.push(name);

        for (j, r) in f.reports.iter().enumerate() {
            let Some(t) = &r.table else { continue };
            let name = format!("{stem}-{j:02}-{}.csv", slug(&r.instance));
            let mut w = csv::Writer::from_path(out_dir.join(&name))?;
            w.write_record(&t.columns)?;
            for row in &t.rows {
                w.write_record(row.iter().map(|v| format_sig12(v.0)))?;
            }
            w.flush().map_err(|e| Error::io(out_dir.join(&name), e))?;
            written.push(name);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse() {
        assert_eq!("4/3".parse::<Param>().unwrap().0, 4.0 / 3.0);
        assert_eq!("inf".parse::<Param>().unwrap().0, f64::INFINITY);
        assert_eq!(" 2.5 ".parse::<Param>().unwrap().0, 2.5);
        assert!("four".parse::<Param>().is_err());
        let c = CampaignConfig::parse(
            "seed = 1\n[[check]]\nkind = \"hausdorff_young\"\ninstances = [\"Z4\"]\np = [1, \"3/2\", 2.0]\n",
        )
        .unwrap();
        match &c.checks[0] {
            CheckSpec::HausdorffYoung { p, trials, .. } => {
                assert_eq!(p, &[Param(1.0), Param(1.5), Param(2.0)]);
                assert_eq!(*trials, 100);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn config_errors_are_descriptive() {
        let e = CampaignConfig::parse("seed = 1\n[[check]]\nkind = \"nope\"\n").unwrap_err();
        assert!(e.to_string().contains("nope"), "{e}");
        let e =
            CampaignConfig::parse("seed = 1\n[[check]]\nkind = \"paley\"\ninstances = [\"Z4\"]\np = [2]\nbogus = 1\n")
                .unwrap_err();
        assert!(e.to_string().contains("bogus"), "{e}");
    }

    #[test]
    fn instance_resolution() {
        let r = InstanceResolver::default();
        assert_eq!(r.resolve("Z6").unwrap().dual().dims(), &[1; 6]);
        assert_eq!(r.resolve("Z2xZ3").unwrap().size(), 6);
        assert_eq!(r.resolve("S3").unwrap().dual().dims(), &[1, 1, 2]);
        assert!(matches!(r.resolve("Z0"), Err(Error::UnknownInstance(_))));
        assert!(matches!(r.resolve("SL2"), Err(Error::UnknownInstance(_))));
        assert_eq!(parse_abelian("Z2xZ2"), Some(vec![2, 2]));
        assert_eq!(parse_abelian("Zx"), None);
    }

    #[test]
    fn catalog_lists_builtins() {
        let list = list_instances(&InstanceResolver::default());
        let s3 = list.iter().find(|i| i.name == "S3").unwrap();
        assert_eq!(s3.dual_block_dims, [1, 1, 2]);
        assert!(list.iter().all(|i| i.invalid.is_none()));
        let z6 = describe_instance(&InstanceResolver::default(), "Z6");
        assert_eq!(z6.dual_block_dims, [1; 6]);
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(4.0), "4");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(2.0 / 3.0 * 1e-7), "6.66666666667e-8");
        assert_eq!(format_sig12(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_sig12(-0.5), "-0.5");
        assert_eq!(format_sig12(f64::INFINITY), "inf");
        assert_eq!(format_sig12(1048576.0), "1048576");
    }

    #[test]
    fn empty_campaign_passes() {
        let c = CampaignConfig::parse("seed = 3\n").unwrap();
        let files = execute(&c, &InstanceResolver::default(), 3).unwrap();
        let s = summarize(3, &files);
        assert!(s.pass && s.checks.is_empty() && s.hard_failures == 0);
    }

    #[test]
    fn invalid_parameters_fail_before_running() {
        let c =
            CampaignConfig::parse("seed = 3\n[[check]]\nkind = \"hausdorff_young\"\ninstances = [\"Z4\"]\np = [3]\n")
                .unwrap();
        let e = execute(&c, &InstanceResolver::default(), 3).unwrap_err();
        assert!(matches!(e, Error::Config(_)), "{e}");
        let c = CampaignConfig::parse(
            "seed = 3\n[[check]]\nkind = \"sharpness\"\np = \"4/3\"\nq = 4\ns_factor = 1.25\nn = [8, 16]\n",
        )
        .unwrap();
        assert!(execute(&c, &InstanceResolver::default(), 3).is_err());
    }
}
