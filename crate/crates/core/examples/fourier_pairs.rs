// Fourier pairs for finite abelian groups and group von Neumann algebras.
//
// ```bash
// cargo run -p ncmult --example fourier_pairs
// ```

use ncmult::algebra::{random_element, Ensemble};
use ncmult::campaign::InstanceResolver;
use ncmult::spectral::lp_norm;

pub fn run_example() -> ncmult::Result<()> {
    let resolver = InstanceResolver::new(env!("CARGO_MANIFEST_DIR"), None);
    for name in ["Z8", "Z2xZ3", "S3", "Q8"] {
        let pair = resolver.resolve(name)?;
        let d = pair.invariant_defects(20, 1)?;
        println!(
            "{:<6} |G| = {:<2} dual blocks {:?}  defects {:?}",
            pair.name(),
            pair.size(),
            pair.dual().dims(),
            d
        );
    }

    // Hausdorff–Young on S3: ‖F x‖_{p'} ≤ ‖x‖_p.
    let pair = resolver.resolve("S3")?;
    let x = random_element(pair.source(), 3, Ensemble::Gaussian);
    let fx = pair.fourier(&x)?;
    for p in [1.0, 4.0 / 3.0, 1.5, 2.0] {
        let pp = p / (p - 1.0);
        println!(
            "p = {p:.4}: ‖Fx‖_{{p'}} = {:.6}  ‖x‖_p = {:.6}",
            lp_norm(&fx, pp)?,
            lp_norm(&x, p)?
        );
    }
    let back = pair.inverse_fourier(&fx)?;
    println!("inversion error on S3: {:.2e}", back.max_abs_diff(&x)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncmult::Result<()> {
    run_example()
}
