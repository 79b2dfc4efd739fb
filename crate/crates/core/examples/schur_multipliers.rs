// Schur multipliers `S_p^n → S_q^n` against sequence norms of the symbol.
//
// ```bash
// cargo run -p ncmult --example schur_multipliers
// ```

use ncmult::algebra::C64;
use ncmult::estimator::{estimate_pq_norm, EstimatorOptions};
use ncmult::schur::{schur_map, symbol_sequence_norm, SchurSymbol};
use ncmult::spectral::harmonic_gap;

pub fn run_example() -> ncmult::Result<()> {
    let (p, q) = (4.0 / 3.0, 4.0);
    let r = harmonic_gap(p, q);
    let opts = EstimatorOptions {
        restarts: 6,
        max_iters: 200,
        ..Default::default()
    };
    let n = 4;
    let symbols = [
        ("all ones", SchurSymbol::ones(n)),
        ("e_00", SchurSymbol::unit(n, 0, 0)),
        (
            "Toeplitz decay",
            SchurSymbol::from_fn(n, |i, j| C64::new((1.0 + i.abs_diff(j) as f64).powf(-1.0 / r), 0.0)),
        ),
    ];
    println!("n = {n}, p = 4/3, q = 4, r = {r}");
    for (label, a) in &symbols {
        let est = estimate_pq_norm(&schur_map(a), p, q, &opts)?;
        let strong = symbol_sequence_norm(a, r, r)?;
        let weak = symbol_sequence_norm(a, r, f64::INFINITY)?;
        println!(
            "  {label:<15} ‖M_a‖ ≥ {:.5}  ‖a‖_r = {strong:.5}  ‖a‖_{{r,∞}} = {weak:.5}",
            est.lower_bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncmult::Result<()> {
    run_example()
}
