// Running a small campaign from an inline config and exporting plot tables.
//
// ```bash
// cargo run -p ncmult --example campaign
// ```
//
// The `ncmult` binary does the same from a file: `ncmult run campaigns/quick.toml`.

use ncmult::campaign::{emit_plot_data, execute, summarize, CampaignConfig, InstanceResolver};

const CONFIG: &str = r#"
seed = 42

[estimator]
restarts = 2
max_iters = 100

[[check]]
kind = "hausdorff_young"
instances = ["Z4", "S3"]
p = ["4/3", 2]
trials = 20

[[check]]
kind = "paley"
instances = ["Z4", "Z8"]
p = ["3/2"]
trials = 10
"#;

pub fn run_example() -> ncmult::Result<()> {
    let config = CampaignConfig::parse(CONFIG)?;
    let resolver = InstanceResolver::new(env!("CARGO_MANIFEST_DIR"), None);
    let files = execute(&config, &resolver, config.seed)?;
    let summary = summarize(config.seed, &files);
    for entry in &summary.checks {
        println!("{:<18} runs {:<3} pass {}", entry.kind, entry.runs, entry.pass);
    }
    for f in &files {
        for r in &f.reports {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k} = {:.4}", v.0)).collect();
            println!(
                "  {:<4} {:<30} max ratio {:.5}",
                r.instance,
                params.join(", "),
                r.max_ratio
            );
        }
    }
    let dir = std::env::temp_dir().join(format!("ncmult-example-{}", std::process::id()));
    let written = emit_plot_data(&files, &dir)?;
    println!("plot tables in {}: {:?}", dir.display(), written);
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncmult::Result<()> {
    run_example()
}
