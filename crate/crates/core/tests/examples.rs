mod lorentz_norms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lorentz_norms.rs"));
}

mod fourier_pairs {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fourier_pairs.rs"));
}

mod multiplier_norms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/multiplier_norms.rs"));
}

mod schur_multipliers {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/schur_multipliers.rs"));
}

mod torus_experiments {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/torus_experiments.rs"));
}

mod campaign {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/campaign.rs"));
}

#[test]
fn lorentz_norms_example_runs() {
    lorentz_norms::run_example().expect("lorentz_norms example should run");
}

#[test]
fn fourier_pairs_example_runs() {
    fourier_pairs::run_example().expect("fourier_pairs example should run");
}

#[test]
fn multiplier_norms_example_runs() {
    multiplier_norms::run_example().expect("multiplier_norms example should run");
}

#[test]
fn schur_multipliers_example_runs() {
    schur_multipliers::run_example().expect("schur_multipliers example should run");
}

#[test]
fn torus_experiments_example_runs() {
    torus_experiments::run_example().expect("torus_experiments example should run");
}

#[test]
fn campaign_example_runs() {
    campaign::run_example().expect("campaign example should run");
}
