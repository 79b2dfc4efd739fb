// Discretized-torus experiments: growth of Fejér-type norm ratios and
// lacunary cosine sums at the endpoint.
//
// ```bash
// cargo run --release -p ncmult --example torus_experiments
// ```

use ncmult::lab::{endpoint_experiment, growth_symbol_check, sharpness_experiment, GrowthModel};

pub fn run_example() -> ncmult::Result<()> {
    let sharp = sharpness_experiment(4.0 / 3.0, 4.0, 1.25, &[16, 64, 256], 1)?;
    print_report(&sharp);

    let end = endpoint_experiment(&[2, 4, 6, 8], 4096, 1)?;
    print_report(&end);

    let growth = growth_symbol_check(GrowthModel::Free { generators: 2 }, 5.0, 2.0, 1.0, 6)?;
    print_report(&growth);
    Ok(())
}

fn print_report(r: &ncmult::lab::CheckReport) {
    println!("{} [{}]", r.check, if r.pass { "pass" } else { "FAIL" });
    if let Some(t) = &r.table {
        println!("  {}", t.columns.join("\t"));
        for row in &t.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{:.5}", v.0)).collect();
            println!("  {}", cells.join("\t"));
        }
    }
    for c in &r.criteria {
        println!(
            "  {}: {:.4e} ({})",
            c.name,
            c.value,
            if c.pass { "ok" } else { "violated" }
        );
    }
}

#[allow(dead_code)]
fn main() -> ncmult::Result<()> {
    run_example()
}
