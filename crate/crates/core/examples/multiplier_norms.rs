// Norm estimates for Fourier multipliers `L_p(Ĝ) → L_q(Ĝ)`.
//
// ```bash
// cargo run -p ncmult --example multiplier_norms
// ```

use ncmult::algebra::C64;
use ncmult::campaign::InstanceResolver;
use ncmult::estimator::{estimate_pq_norm, exact_l2_norm, EstimatorOptions};
use ncmult::spectral::{harmonic_gap, lorentz_norm};

pub fn run_example() -> ncmult::Result<()> {
    let resolver = InstanceResolver::new(env!("CARGO_MANIFEST_DIR"), None);
    let pair = resolver.resolve("Z16")?;
    let n = pair.size();
    let (p, q) = (4.0 / 3.0, 4.0);
    let r = harmonic_gap(p, q);

    // Symbol with critical decay (1 + |g|)^{-1/r}, |g| the distance to 0 in Z16.
    let coords: Vec<C64> = (0..n)
        .map(|g| C64::new((1.0 + g.min(n - g) as f64).powf(-1.0 / r), 0.0))
        .collect();
    let symbol = pair.source().from_complex_coords(&coords)?;
    let map = pair.multiplier_map(&symbol)?;

    let opts = EstimatorOptions {
        restarts: 8,
        max_iters: 300,
        ..Default::default()
    };
    let est = estimate_pq_norm(&map, p, q, &opts)?;
    let weak = lorentz_norm(&symbol, r, f64::INFINITY)?;
    println!("Z16, p = 4/3, q = 4, r = {r}");
    println!(
        "  ‖m‖ ≥ {:.6} (restart {} of {})",
        est.lower_bound, est.best_restart, est.restarts_used
    );
    println!("  ‖symbol‖_{{r,∞}} = {weak:.6}, ratio {:.4}", est.lower_bound / weak);
    println!("  ‖m : L_2 → L_2‖ = {:.6} (sup of the symbol)", exact_l2_norm(&map)?);

    let id = pair.multiplier_map(&pair.source().identity())?;
    let e = estimate_pq_norm(&id, p, q, &opts)?;
    let one = lorentz_norm(&pair.source().identity(), r, f64::INFINITY)?;
    println!(
        "  identity symbol: ‖m‖ ≥ {:.9} = ‖1‖_{{r,∞}} · {:.9}",
        e.lower_bound,
        e.lower_bound / one
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncmult::Result<()> {
    run_example()
}
