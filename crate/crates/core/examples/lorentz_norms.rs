// Singular functions, `L_p` and Lorentz norms on a weighted block algebra.
//
// ```bash
// cargo run -p ncmult --example lorentz_norms
// ```

use ncmult::algebra::{random_element, CMatrix, Ensemble, TracialAlgebra, C64};
use ncmult::spectral::{lorentz_norm, lp_norm, singular_function};

pub fn run_example() -> ncmult::Result<()> {
    // C ⊕ M_2 with τ = Tr_1 + 2 Tr_2, as in the dual of S3.
    let alg = TracialAlgebra::new(vec![1, 2], vec![1.0, 2.0])?;
    let x = alg.element(vec![
        CMatrix::from_element(1, 1, C64::new(3.0, 0.0)),
        CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(2.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
            ],
        ),
    ])?;

    let mu = singular_function(&x)?;
    println!("μ(x) steps (T_i, μ_i):");
    for (t, v) in mu.steps() {
        println!("  T = {t:<4} μ = {v}");
    }
    println!(
        "μ_t at t = 0.5, 1.5, 2.5: {} {} {}",
        mu.value_at(0.5),
        mu.value_at(1.5),
        mu.value_at(2.5)
    );
    println!("λ_s at s = 1.5: {}", mu.distribution(1.5));

    // τ(|x|^2) = 9 + 2·4 + 2·1 = 19.
    println!("‖x‖_2 = {:.6} (√19 = {:.6})", lp_norm(&x, 2.0)?, 19f64.sqrt());
    println!("‖x‖_∞ = {}", lp_norm(&x, f64::INFINITY)?);
    for (p, q) in [(2.0, 2.0), (2.0, 1.0), (2.0, f64::INFINITY), (4.0, 2.0)] {
        println!("‖x‖_{{{p},{q}}} = {:.6}", lorentz_norm(&x, p, q)?);
    }

    let y = random_element(&alg, 7, Ensemble::Gaussian);
    let xy = x.try_mul(&y)?;
    println!(
        "Hölder at (4, 4 → 2): ‖xy‖_2 = {:.4} ≤ ‖x‖_4 ‖y‖_4 = {:.4}",
        lp_norm(&xy, 2.0)?,
        lp_norm(&x, 4.0)? * lp_norm(&y, 4.0)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncmult::Result<()> {
    run_example()
}
