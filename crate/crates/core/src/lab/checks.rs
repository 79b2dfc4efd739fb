use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckReport, Criterion, MaxTracker, ESTIMATOR_SLACK, EXACT_SLACK};
use crate::algebra::{random_element_with, AlgebraElement, CMatrix, Ensemble, TracialAlgebra, C64};
use crate::error::{Error, Result};
use crate::estimator::{estimate_pq_norm, EstimatorOptions};
use crate::fourier::QuantumGroupPair;
use crate::schur::{schur_map, symbol_sequence_norm, SchurSymbol};
use crate::seed::derive_seed;
use crate::spectral::{conjugate, harmonic_gap, lorentz_norm, lp_norm, singular_function, SingularFunction};

const RANDOM_ENSEMBLES: [Ensemble; 3] = [
    Ensemble::Gaussian,
    Ensemble::Sparse { density: 0.25 },
    Ensemble::RankOne,
];

fn ensemble_name(e: Ensemble) -> &'static str {
    match e {
        Ensemble::Gaussian => "gaussian",
        Ensemble::Hermitian => "hermitian",
        Ensemble::Sparse { .. } => "sparse",
        Ensemble::RankOne => "rank-one",
    }
}

/// Random element that is not identically zero.
fn nonzero_random<R: Rng>(alg: &TracialAlgebra, rng: &mut R, ens: Ensemble) -> AlgebraElement {
    loop {
        let x = random_element_with(alg, rng, ens);
        if x.blocks().iter().any(|b| b.iter().any(|z| z.norm() > 0.0)) {
            return x;
        }
    }
}

fn random_battery(alg: &TracialAlgebra, trials: usize, seed: u64) -> Vec<(String, AlgebraElement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|i| {
            let ens = RANDOM_ENSEMBLES[i % RANDOM_ENSEMBLES.len()];
            (
                format!("random #{i} ({})", ensemble_name(ens)),
                nonzero_random(alg, &mut rng, ens),
            )
        })
        .collect()
}

fn distinct_points(n: usize) -> Vec<usize> {
    let mut pts = vec![0, 1, n / 2, n.saturating_sub(1)];
    pts.retain(|&g| g < n);
    pts.sort_unstable();
    pts.dedup();
    pts
}

/// Structured symbols on the (commutative) source: constant, point masses, a power
/// decay in the element index, and a lacunary profile on indices `2^k`.
fn structured_source_symbols(pair: &QuantumGroupPair, decay: f64) -> Result<Vec<(String, AlgebraElement)>> {
    let n = pair.size();
    let src = pair.source();
    let mut out = vec![("constant 1".to_string(), src.identity())];
    for g in distinct_points(n) {
        out.push((format!("point mass {g}"), pair.point_mass(g)));
    }
    let dist = |g: usize| g.min(n - g) as f64;
    let values: Vec<C64> = (0..n).map(|g| C64::new((1.0 + dist(g)).powf(-decay), 0.0)).collect();
    out.push((format!("power decay {decay:.4}"), src.diagonal(&values)?));
    let mut lac = vec![C64::new(0.0, 0.0); n];
    let mut k = 1;
    while (1usize << k) < n {
        lac[1 << k] = C64::new(1.0 / (k as f64).sqrt(), 0.0);
        k += 1;
    }
    if k > 1 {
        out.push(("lacunary".to_string(), src.diagonal(&lac)?));
    }
    Ok(out)
}

fn check_exponent(name: &str, v: f64, lo: f64, hi: f64, lo_open: bool) -> Result<()> {
    let ok = if lo_open { v > lo } else { v >= lo } && v <= hi;
    if ok {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} = {v} outside its admissible range")))
    }
}

/// `‖F x‖_{p'} ≤ ‖x‖_p`, constant 1.
pub fn check_hausdorff_young(pair: &QuantumGroupPair, p: f64, trials: usize, seed: u64) -> Result<CheckReport> {
    check_exponent("p", p, 1.0, 2.0, false)?;
    let pp = conjugate(p);
    let mut inputs = vec![("constant 1".to_string(), pair.source().identity())];
    for g in 0..pair.size() {
        inputs.push((format!("point mass {g}"), pair.point_mass(g)));
    }
    let structured = inputs.len();
    inputs.extend(random_battery(pair.source(), trials, seed));

    let mut best = MaxTracker::default();
    let mut point_mass = MaxTracker::default();
    for (i, (label, x)) in inputs.iter().enumerate() {
        let ratio = lp_norm(&pair.fourier(x)?, pp)? / lp_norm(x, p)?;
        if (1..structured).contains(&i) {
            point_mass.offer(ratio, || label.clone());
        }
        best.offer(ratio, || label.clone());
    }
    let mut r = CheckReport::new("hausdorff_young", pair.name(), seed)
        .param("p", p)
        .param("p_conjugate", pp);
    r.trials = best.count;
    r.max_ratio = best.value;
    r.empirical_constant = best.value;
    r.witness = best.label;
    r.metric("point_mass_max_ratio", point_mass.value);
    r.criterion(Criterion::at_most("max ‖Fx‖_p'/‖x‖_p", best.value, 1.0 + EXACT_SLACK));
    Ok(r)
}

/// Entrywise-vs-Schatten Hausdorff–Young on `M_n`:
/// `‖x‖_{S_p'} ≤ ‖x‖_{ℓ_p}` and `‖x‖_{ℓ_p'} ≤ ‖x‖_{S_p}`, constant 1 both ways.
pub fn check_matrix_hausdorff_young(n: usize, p: f64, trials: usize, seed: u64) -> Result<CheckReport> {
    check_exponent("p", p, 1.0, 2.0, false)?;
    if n == 0 {
        return Err(Error::Parameter("matrix size must be positive".into()));
    }
    let pp = conjugate(p);
    let alg = TracialAlgebra::matrix(n)?;
    let entrywise = |x: &AlgebraElement, e: f64| {
        let vals: Vec<f64> = x.block(0).iter().map(|z| z.norm()).collect();
        SingularFunction::from_sequence(&vals).lp_norm(e)
    };
    let mut inputs = vec![
        ("identity".to_string(), alg.identity()),
        ("matrix unit e_00".to_string(), alg.matrix_unit(0, 0, 0)),
        (
            "all ones".to_string(),
            alg.element(vec![CMatrix::from_element(n, n, C64::new(1.0, 0.0))])?,
        ),
    ];
    inputs.extend(random_battery(&alg, trials, seed));
    let mut forward = MaxTracker::default();
    let mut backward = MaxTracker::default();
    for (label, x) in &inputs {
        forward.offer(lp_norm(x, pp)? / entrywise(x, p)?, || label.clone());
        backward.offer(entrywise(x, pp)? / lp_norm(x, p)?, || label.clone());
    }
    let mut r = CheckReport::new("matrix_hausdorff_young", &format!("M{n}"), seed)
        .param("n", n as f64)
        .param("p", p);
    r.trials = inputs.len();
    r.max_ratio = forward.value.max(backward.value);
    r.empirical_constant = r.max_ratio;
    r.witness = if forward.value >= backward.value {
        format!("S_p' vs ℓ_p: {}", forward.label)
    } else {
        format!("ℓ_p' vs S_p: {}", backward.label)
    };
    r.metric("schatten_over_entrywise", forward.value);
    r.metric("entrywise_over_schatten", backward.value);
    r.criterion(Criterion::at_most(
        "max ‖x‖_S_p'/‖x‖_ℓ_p",
        forward.value,
        1.0 + EXACT_SLACK,
    ));
    r.criterion(Criterion::at_most(
        "max ‖x‖_ℓ_p'/‖x‖_S_p",
        backward.value,
        1.0 + EXACT_SLACK,
    ));
    Ok(r)
}

/// Empirical constants of the Lorentz-space Hausdorff–Young forms
/// `‖F x‖_{p'} ≲ ‖x‖_{L_{p,p'}}` and `‖x‖_{L_{p',p}} ≲ ‖F x‖_p`. Report only.
pub fn check_real_interpolation_hy(pair: &QuantumGroupPair, p: f64, trials: usize, seed: u64) -> Result<CheckReport> {
    check_exponent("p", p, 1.0, 2.0, true)?;
    let pp = conjugate(p);
    let mut inputs = structured_source_symbols(pair, 1.0 / p)?;
    inputs.extend(random_battery(pair.source(), trials, seed));
    let mut forward = MaxTracker::default();
    let mut dual = MaxTracker::default();
    for (label, x) in &inputs {
        let fx = pair.fourier(x)?;
        forward.offer(lp_norm(&fx, pp)? / lorentz_norm(x, p, pp)?, || label.clone());
        dual.offer(lorentz_norm(x, pp, p)? / lp_norm(&fx, p)?, || label.clone());
    }
    let mut r = CheckReport::new("real_interpolation_hy", pair.name(), seed)
        .param("p", p)
        .param("p_conjugate", pp);
    r.trials = inputs.len();
    r.max_ratio = forward.value;
    r.empirical_constant = forward.value.max(dual.value);
    r.witness = forward.label;
    r.metric("forward_constant", forward.value);
    r.metric("dual_constant", dual.value);
    r.metric("size", pair.size() as f64);
    Ok(r)
}

/// `‖m_x : L_p(Ĝ) → L_q(Ĝ)‖ / ‖x‖_{L_{r,∞}(G)}` over a symbol battery.
///
/// The constant-1 symbol must give ratio 1 (hard criterion, estimator slack);
/// the maximum ratio is reported as the empirical constant.
pub fn check_multiplier_bound(
    pair: &QuantumGroupPair,
    p: f64,
    q: f64,
    trials: usize,
    seed: u64,
    est: &EstimatorOptions,
) -> Result<CheckReport> {
    check_exponent("p", p, 1.0, 2.0, true)?;
    if !(q >= 2.0 && q.is_finite()) {
        return Err(Error::Parameter(format!("q = {q} must lie in [2, ∞)")));
    }
    let r = harmonic_gap(p, q);
    let decay = if r.is_finite() { 1.0 / r } else { 0.5 };
    let mut symbols = structured_source_symbols(pair, decay)?;
    symbols.extend(random_battery(pair.source(), trials, derive_seed(seed, &["symbols"])));

    let mut best = MaxTracker::default();
    let mut identity_ratio = f64::NAN;
    for (i, (label, x)) in symbols.iter().enumerate() {
        let map = pair.multiplier_map(x)?;
        let opts = EstimatorOptions {
            seed: derive_seed(seed, &["estimator", &i.to_string()]),
            ..*est
        };
        let norm = estimate_pq_norm(&map, p, q, &opts)?.lower_bound;
        let ratio = norm / weak_norm(x, r)?;
        if i == 0 {
            identity_ratio = ratio;
        }
        best.offer(ratio, || label.clone());
    }
    let mut rep = CheckReport::new("multiplier_bound", pair.name(), seed)
        .param("p", p)
        .param("q", q)
        .param("r", r);
    rep.trials = symbols.len();
    rep.max_ratio = best.value;
    rep.empirical_constant = best.value;
    rep.witness = best.label;
    rep.metric("identity_ratio", identity_ratio);
    rep.metric("size", pair.size() as f64);
    rep.criterion(Criterion::at_most(
        "|identity-symbol ratio − 1|",
        (identity_ratio - 1.0).abs(),
        ESTIMATOR_SLACK,
    ));
    Ok(rep)
}

/// `‖x‖_{r,∞}`, read as the operator norm when `r = ∞`.
fn weak_norm(x: &AlgebraElement, r: f64) -> Result<f64> {
    if r.is_infinite() {
        lp_norm(x, f64::INFINITY)
    } else {
        lorentz_norm(x, r, f64::INFINITY)
    }
}

/// `s` with `1/s = 2/p − 1` (`∞` at `p = 2`).
pub fn paley_exponent(p: f64) -> f64 {
    let inv = 2.0 / p - 1.0;
    if inv <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / inv
    }
}

fn structured_dual_weights(pair: &QuantumGroupPair, s: f64) -> Vec<(String, AlgebraElement)> {
    let dual = pair.dual();
    let mut out = vec![("a = 1".to_string(), dual.identity())];
    for k in 0..dual.num_blocks() {
        out.push((format!("minimal projection in block {k}"), dual.matrix_unit(k, 0, 0)));
    }
    let decay = if s.is_finite() { 1.0 / s } else { 0.5 };
    let blocks = dual
        .dims()
        .iter()
        .enumerate()
        .map(|(k, &n)| CMatrix::identity(n, n) * C64::new((1.0 + k as f64).powf(-decay), 0.0))
        .collect();
    out.push((
        "block power decay".to_string(),
        dual.element(blocks).expect("shapes match"),
    ));
    out
}

/// `‖a·F(x)‖_{L_p(Ĝ)} / (‖a‖_{L_{s,∞}(Ĝ)} ‖x‖_{L_p(G)})` over random pairs `(a, x)`.
/// Hard constant-1 criterion at `p = 2`; report only otherwise.
pub fn check_paley(pair: &QuantumGroupPair, p: f64, trials: usize, seed: u64) -> Result<CheckReport> {
    check_exponent("p", p, 1.0, 2.0, true)?;
    let s = paley_exponent(p);
    let mut weights = structured_dual_weights(pair, s);
    let structured_a = weights.len();
    weights.extend(random_battery(pair.dual(), trials, derive_seed(seed, &["a"])));
    let mut xs = structured_source_symbols(pair, 1.0 / p)?;
    xs.extend(random_battery(pair.source(), trials, derive_seed(seed, &["x"])));

    let mut best = MaxTracker::default();
    let mut evaluate = |label_a: &str, a: &AlgebraElement, label_x: &str, x: &AlgebraElement| -> Result<()> {
        let lhs = lp_norm(&a.try_mul(&pair.fourier(x)?)?, p)?;
        let ratio = lhs / (weak_norm(a, s)? * lp_norm(x, p)?);
        best.offer(ratio, || format!("a: {label_a}; x: {label_x}"));
        Ok(())
    };
    // structured weights against every x, random weights paired with random x
    for (la, a) in &weights[..structured_a] {
        for (lx, x) in &xs {
            evaluate(la, a, lx, x)?;
        }
    }
    let random_x = &xs[xs.len() - trials..];
    for ((la, a), (lx, x)) in weights[structured_a..].iter().zip(random_x) {
        evaluate(la, a, lx, x)?;
    }
    let mut r = CheckReport::new("paley", pair.name(), seed).param("p", p).param("s", s);
    r.trials = best.count;
    r.max_ratio = best.value;
    r.empirical_constant = best.value;
    r.witness = best.label;
    r.metric("size", pair.size() as f64);
    if s.is_infinite() {
        r.criterion(Criterion::at_most("max ratio at p = 2", best.value, 1.0 + EXACT_SLACK));
    }
    Ok(r)
}

fn structured_schur_symbols(n: usize, r: f64) -> Vec<(String, SchurSymbol)> {
    let decay = if r.is_finite() { 1.0 / r } else { 0.5 };
    vec![
        ("e_00".into(), SchurSymbol::unit(n, 0, 0)),
        ("all ones".into(), SchurSymbol::ones(n)),
        (
            "diagonal".into(),
            SchurSymbol::from_fn(n, |i, j| C64::new((i == j) as u8 as f64, 0.0)),
        ),
        (
            "upper triangular".into(),
            SchurSymbol::from_fn(n, |i, j| C64::new((i <= j) as u8 as f64, 0.0)),
        ),
        (
            "Toeplitz power decay".into(),
            SchurSymbol::from_fn(n, |i, j| C64::new((1.0 + i.abs_diff(j) as f64).powf(-decay), 0.0)),
        ),
        (
            "single row".into(),
            SchurSymbol::from_fn(n, |i, _| C64::new((i == 0) as u8 as f64, 0.0)),
        ),
    ]
}

/// Schur multipliers on `S_p^n → S_q^n`: empirical constant against `‖a‖_{ℓ_{r,∞}}`
/// and the hard constant-1 bound against `‖a‖_{ℓ_r}`.
pub fn check_schur_bound(
    n: usize,
    p: f64,
    q: f64,
    trials: usize,
    seed: u64,
    est: &EstimatorOptions,
) -> Result<CheckReport> {
    check_exponent("p", p, 1.0, 2.0, true)?;
    if !(q >= 2.0 && q.is_finite()) {
        return Err(Error::Parameter(format!("q = {q} must lie in [2, ∞)")));
    }
    if n < 2 {
        return Err(Error::Parameter("Schur checks need n ≥ 2".into()));
    }
    let r = harmonic_gap(p, q);
    let mut symbols = structured_schur_symbols(n, r);
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &["symbols"]));
    let kinds = ["gaussian", "sparse", "rank-one", "0/1 pattern"];
    for i in 0..trials {
        let kind = kinds[i % kinds.len()];
        let sym = match kind {
            "gaussian" => SchurSymbol::from_fn(n, |_, _| crate::algebra::complex_gaussian(&mut rng)),
            "sparse" => SchurSymbol::from_fn(n, |_, _| {
                let z = crate::algebra::complex_gaussian(&mut rng);
                if rng.random::<f64>() < 0.25 {
                    z
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
            "rank-one" => {
                let u: Vec<C64> = (0..n).map(|_| crate::algebra::complex_gaussian(&mut rng)).collect();
                let v: Vec<C64> = (0..n).map(|_| crate::algebra::complex_gaussian(&mut rng)).collect();
                SchurSymbol::from_fn(n, |i, j| u[i] * v[j].conj())
            }
            _ => SchurSymbol::from_fn(n, |_, _| C64::new(rng.random_range(0..2u8) as f64, 0.0)),
        };
        if sym.entries().iter().all(|z| z.norm() == 0.0) {
            symbols.push((format!("random #{i} ({kind}) → e_00"), SchurSymbol::unit(n, 0, 0)));
        } else {
            symbols.push((format!("random #{i} ({kind})"), sym));
        }
    }

    let mut weak = MaxTracker::default();
    let mut strong = MaxTracker::default();
    for (i, (label, a)) in symbols.iter().enumerate() {
        let opts = EstimatorOptions {
            seed: derive_seed(seed, &["estimator", &i.to_string()]),
            ..*est
        };
        let norm = estimate_pq_norm(&schur_map(a), p, q, &opts)?.lower_bound;
        let (weak_a, strong_a) = if r.is_infinite() {
            let sup = a.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
            (sup, sup)
        } else {
            (
                symbol_sequence_norm(a, r, f64::INFINITY)?,
                symbol_sequence_norm(a, r, r)?,
            )
        };
        weak.offer(norm / weak_a, || label.clone());
        strong.offer(norm / strong_a, || label.clone());
    }
    let mut rep = CheckReport::new("schur_bound", &format!("M{n}"), seed)
        .param("n", n as f64)
        .param("p", p)
        .param("q", q)
        .param("r", r);
    rep.trials = symbols.len();
    rep.max_ratio = weak.value;
    rep.empirical_constant = weak.value;
    rep.witness = weak.label;
    rep.metric("size", n as f64);
    rep.metric("strong_max_ratio", strong.value);
    rep.criterion(Criterion::at_most(
        "max ‖A‖_{p→q,est}/‖a‖_ℓ_r",
        strong.value,
        1.0 + ESTIMATOR_SLACK,
    ));
    Ok(rep)
}

fn random_algebra<R: Rng>(rng: &mut R) -> Result<TracialAlgebra> {
    let blocks = rng.random_range(1..=4);
    let dims = (0..blocks).map(|_| rng.random_range(1..=6)).collect();
    let weights = (0..blocks).map(|_| rng.random_range(0.1..3.0)).collect();
    TracialAlgebra::new(dims, weights)
}

fn random_lemma_element<R: Rng>(alg: &TracialAlgebra, rng: &mut R) -> AlgebraElement {
    let ens = match rng.random_range(0..4) {
        0 => Ensemble::Gaussian,
        1 => Ensemble::Hermitian,
        2 => Ensemble::Sparse { density: 0.3 },
        _ => Ensemble::RankOne,
    };
    nonzero_random(alg, rng, ens)
}

/// Submultiplicativity of generalized singular numbers, Lorentz nesting with
/// constant `(q/p)^{1/q − 1/r}`, and the Lorentz Hölder inequality with constant
/// `2^{1/p}`, over random block algebras.
pub fn check_lemma_constants(trials: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slack = 1.0 + EXACT_SLACK;
    let mut submult = MaxTracker::default();
    let mut nesting = MaxTracker::default();
    let mut holder = MaxTracker::default();
    let mut violations = [0usize; 3];

    for trial in 0..trials {
        let alg = random_algebra(&mut rng)?;
        let x = random_lemma_element(&alg, &mut rng);
        let y = random_lemma_element(&alg, &mut rng);
        let xy = x.try_mul(&y)?;
        let (mx, my, mxy) = (singular_function(&x)?, singular_function(&y)?, singular_function(&xy)?);

        // μ_{s+t}(xy) ≤ μ_s(x) μ_t(y) on breakpoints, half-breakpoints and 0
        let grid = |f: &SingularFunction| {
            let mut g = vec![0.0];
            for &(t, _) in f.steps() {
                g.push(t / 2.0);
                g.push(t);
            }
            g
        };
        // singular values carry absolute error ~ε‖x‖; values below `floor` are zero
        let floor = 1e-12 * mx.sup() * my.sup();
        for &s in &grid(&mx) {
            for &t in &grid(&my) {
                let lhs = mxy.value_at(s + t);
                let rhs = mx.value_at(s) * my.value_at(t);
                let ratio = if rhs > floor {
                    lhs / rhs
                } else if lhs <= floor {
                    0.0
                } else {
                    f64::INFINITY
                };
                if ratio > slack {
                    violations[0] += 1;
                }
                submult.offer(ratio, || format!("trial {trial}: s = {s}, t = {t}"));
            }
        }

        // ‖x‖_{p,r} ≤ (q/p)^{1/q − 1/r} ‖x‖_{p,q}
        let p = rng.random_range(1.05..6.0);
        let q = rng.random_range(1.05..6.0);
        let r = if rng.random::<f64>() < 0.25 {
            f64::INFINITY
        } else {
            q + rng.random_range(0.01..6.0)
        };
        let c = (q / p).powf(1.0 / q - 1.0 / r);
        let ratio = mx.lorentz_norm(p, r)? / (c * mx.lorentz_norm(p, q)?);
        if ratio > slack {
            violations[1] += 1;
        }
        nesting.offer(ratio, || format!("trial {trial}: p = {p}, q = {q}, r = {r}"));

        // ‖xy‖_{p,q} ≤ 2^{1/p} ‖x‖_{p0,∞} ‖y‖_{p1,q}
        let p0 = rng.random_range(0.5..6.0);
        let p1 = rng.random_range(0.5..6.0);
        let q = rng.random_range(0.5..6.0);
        let p = 1.0 / (1.0 / p0 + 1.0 / p1);
        let rhs = 2f64.powf(1.0 / p) * mx.lorentz_norm(p0, f64::INFINITY)? * my.lorentz_norm(p1, q)?;
        let lhs = mxy.lorentz_norm(p, q)?;
        let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
        if ratio > slack {
            violations[2] += 1;
        }
        holder.offer(ratio, || format!("trial {trial}: p0 = {p0}, p1 = {p1}, q = {q}"));
    }

    let mut rep = CheckReport::new("lemma_constants", "random block algebras", seed);
    rep.trials = trials;
    let suites = [
        ("submultiplicativity", &submult),
        ("nesting", &nesting),
        ("holder", &holder),
    ];
    let (name, top) = suites
        .iter()
        .fold(suites[0], |a, b| if b.1.value > a.1.value { *b } else { a });
    rep.max_ratio = top.value;
    rep.empirical_constant = top.value;
    rep.witness = format!("{name}: {}", top.label);
    for ((name, tracker), v) in suites.iter().zip(violations) {
        rep.metric(&format!("{name}_max_ratio"), tracker.value);
        rep.metric(&format!("{name}_violations"), v as f64);
        rep.criterion(Criterion::at_most(format!("{name} violations"), v as f64, 0.0));
    }
    Ok(rep)
}

/// Round-trip and Plancherel residuals, normalized by `1 + ‖x‖₂`.
pub fn check_inversion_and_plancherel(pair: &QuantumGroupPair, trials: usize, seed: u64) -> Result<CheckReport> {
    let mut inputs = vec![("zero".to_string(), pair.source().zero())];
    for g in distinct_points(pair.size()) {
        inputs.push((format!("point mass {g}"), pair.point_mass(g)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..trials {
        inputs.push((
            format!("random #{i}"),
            random_element_with(pair.source(), &mut rng, Ensemble::Gaussian),
        ));
    }
    let mut inversion = MaxTracker::default();
    let mut plancherel = MaxTracker::default();
    for (label, x) in &inputs {
        let fx = pair.fourier(x)?;
        let l2 = lp_norm(x, 2.0)?;
        let back = pair.inverse_fourier(&fx)?;
        inversion.offer(lp_norm(&back.try_sub(x)?, 2.0)? / (1.0 + l2), || label.clone());
        plancherel.offer((lp_norm(&fx, 2.0)? - l2).abs() / (1.0 + l2), || label.clone());
    }
    let mut rep = CheckReport::new("inversion_and_plancherel", pair.name(), seed);
    rep.trials = inputs.len();
    rep.max_ratio = inversion.value.max(plancherel.value);
    rep.empirical_constant = rep.max_ratio;
    rep.witness = if inversion.value >= plancherel.value {
        format!("inversion: {}", inversion.label)
    } else {
        format!("plancherel: {}", plancherel.label)
    };
    rep.metric("inversion_residual", inversion.value);
    rep.metric("plancherel_residual", plancherel.value);
    rep.criterion(Criterion::at_most(
        "inversion residual / (1+‖x‖₂)",
        inversion.value,
        1e-10,
    ));
    rep.criterion(Criterion::at_most(
        "Plancherel residual / (1+‖x‖₂)",
        plancherel.value,
        1e-10,
    ));
    Ok(rep)
}
