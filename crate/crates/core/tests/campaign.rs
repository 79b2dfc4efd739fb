use std::path::Path;

use ncmult::campaign::{execute, list_instances, run_campaign, CampaignConfig, InstanceResolver, RunOptions};
use ncmult::group::{presentation, shipped_file_name};

const SMALL: &str = r#"
seed = 77

[estimator]
restarts = 2
max_iters = 80

[[check]]
kind = "hausdorff_young"
instances = ["Z4", "S3"]
p = ["3/2"]
trials = 15

[[check]]
kind = "multiplier_bound"
instances = ["Z4", "Z8"]
pq = [["3/2", 3]]
trials = 4
ladder = true

[[check]]
kind = "lemma_constants"
trials = 30
"#;

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .flatten()
        .filter(|e| e.path().is_file())
        .map(|e| {
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

#[test]
fn same_seed_gives_identical_files_for_any_job_count() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("small.toml");
    write(&cfg, SMALL);
    let run = |jobs: usize, out: &str| {
        let opts = RunOptions {
            jobs: Some(jobs),
            out: Some(tmp.path().join(out)),
            ..Default::default()
        };
        run_campaign(&cfg, &opts).unwrap();
        read_dir_sorted(&tmp.path().join(out))
    };
    let a = run(1, "a");
    let b = run(3, "b");
    assert_eq!(a, b);
    assert!(a.iter().any(|(n, _)| n == "summary.json"));

    let opts = RunOptions {
        seed: Some(78),
        out: Some(tmp.path().join("c")),
        ..Default::default()
    };
    run_campaign(&cfg, &opts).unwrap();
    assert_ne!(read_dir_sorted(&tmp.path().join("c")), a);
}

#[test]
fn perturbed_fourier_matrix_is_reported_as_hard_failure() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("fault.toml");
    write(
        &cfg,
        "seed = 1\n[[check]]\nkind = \"inversion_plancherel\"\ninstances = [\"Z8\"]\ntrials = 10\nperturb_fourier = 1e-4\n\n\
         [[check]]\nkind = \"hausdorff_young\"\ninstances = [\"Z8\"]\np = [2]\ntrials = 10\n",
    );
    let outcome = run_campaign(&cfg, &RunOptions::default()).unwrap();
    assert!(!outcome.summary.pass);
    assert!(outcome.summary.hard_failures > 0);
    assert!(!outcome.summary.checks[0].pass);
    assert!(outcome.summary.checks[1].pass);
    assert!(outcome.out_dir.join("summary.json").exists());
}

#[test]
fn execution_does_not_depend_on_resolver_base_for_builtins() {
    let config = CampaignConfig::parse(SMALL).unwrap();
    let here = InstanceResolver::new(env!("CARGO_MANIFEST_DIR"), None);
    let elsewhere = InstanceResolver::new(std::env::temp_dir(), None);
    let a = execute(&config, &here, 5).unwrap();
    let b = execute(&config, &elsewhere, 5).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn invalid_group_file_is_listed_with_the_violated_invariant() {
    let tmp = tempfile::tempdir().unwrap();
    let mut s3 = presentation("S3").unwrap().unwrap();
    write(&tmp.path().join(shipped_file_name("S3")), &s3.to_json().unwrap());
    // swap two products in one row: the table is no longer associative
    let n = s3.order;
    s3.mult_table.swap(n + 1, n + 2);
    s3.name = "broken".into();
    write(&tmp.path().join("broken.json"), &s3.to_json().unwrap());
    write(&tmp.path().join("garbage.json"), "{ not json");

    let resolver = InstanceResolver::new(tmp.path(), Some(tmp.path().to_path_buf()));
    let list = list_instances(&resolver);
    let find = |name: &str| {
        list.iter()
            .find(|i| i.name == name)
            .unwrap_or_else(|| panic!("{name} listed"))
    };
    let broken = find("broken");
    let why = broken.invalid.as_deref().expect("broken group flagged");
    assert!(
        why.contains("associativity") || why.contains("identity") || why.contains("inverse"),
        "{why}"
    );
    assert!(find("garbage").invalid.is_some());
    assert_eq!(find(shipped_file_name("S3").trim_end_matches(".json")).invalid, None);
    assert!(resolver.resolve("broken").is_err());
    assert_eq!(
        resolver
            .resolve("file:broken.json")
            .map(|_| ())
            .unwrap_err()
            .to_string(),
        why
    );
}

#[test]
fn binary_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let ok = tmp.path().join("ok.toml");
    write(
        &ok,
        "seed = 3\n[[check]]\nkind = \"paley\"\ninstances = [\"Z4\"]\np = [2]\ntrials = 5\n",
    );
    let bad = tmp.path().join("bad.toml");
    write(
        &bad,
        "seed = 3\n[[check]]\nkind = \"paley\"\ninstances = [\"Z4\"]\np = [7]\n",
    );
    let unknown = tmp.path().join("unknown.toml");
    write(&unknown, "seed = 3\n[[check]]\nkind = \"nope\"\n");
    let exe = env!("CARGO_BIN_EXE_ncmult");
    let code = |args: &[&str]| {
        std::process::Command::new(exe)
            .args(args)
            .env_remove("NCMULT_DATA_DIR")
            .output()
            .unwrap()
            .status
            .code()
    };
    let out = tmp.path().join("out");
    assert_eq!(
        code(&["run", ok.to_str().unwrap(), "--out", out.to_str().unwrap()]),
        Some(0)
    );
    assert_eq!(
        code(&["run", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]),
        Some(2)
    );
    assert_eq!(code(&["run", unknown.to_str().unwrap()]), Some(2));
    assert_eq!(code(&["plot", out.to_str().unwrap()]), Some(0));
    assert!(out.join("plots/00-paley.csv").exists());
    assert_eq!(code(&["instances", "Z6", "S3"]), Some(0));
}
