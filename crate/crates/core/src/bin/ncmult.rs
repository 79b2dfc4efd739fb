//! Command-line front end for campaigns.
//!
//! Exit status: 0 when every hard criterion passes, 1 when one fails, 2 on errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncmult::campaign::{
    describe_instance, emit_plot_data, format_instances, list_instances, load_reports, run_campaign, InstanceResolver,
    RunOptions, DATA_DIR_ENV,
};

#[derive(Parser)]
#[command(name = "ncmult", version, about = "Noncommutative multiplier verification campaigns")]
struct Cli {
    /// Directory searched for `<name>.json` group files.
    #[arg(long, global = true, env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a campaign config and write one report per check plus summary.json.
    Run {
        config: PathBuf,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Output directory (default: the config's `output`, else `reports/` next to it).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write CSV plot tables for a report directory.
    Plot {
        report_dir: PathBuf,
        /// Output directory (default: `<report-dir>/plots`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List built-in and data-directory instances, or describe the named ones.
    Instances { names: Vec<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> ncmult::Result<ExitCode> {
    match cli.command {
        Command::Run {
            config,
            seed,
            jobs,
            out,
        } => {
            let opts = RunOptions {
                seed,
                out,
                jobs,
                data_dir: cli.data_dir,
            };
            let outcome = run_campaign(&config, &opts)?;
            for c in &outcome.summary.checks {
                let status = match (c.hard, c.pass) {
                    (false, _) => "report",
                    (true, true) => "pass",
                    (true, false) => "FAIL",
                };
                println!("{:>6}  {:<24} {:>3} runs  {}", status, c.kind, c.runs, c.file);
                for f in &c.failures {
                    println!("        {f}");
                }
            }
            println!("reports written to {}", outcome.out_dir.display());
            Ok(if outcome.summary.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Plot { report_dir, out } => {
            let files = load_reports(&report_dir)?;
            let out = out.unwrap_or_else(|| report_dir.join("plots"));
            for name in emit_plot_data(&files, &out)? {
                println!("{}", out.join(name).display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Instances { names } => {
            let resolver = InstanceResolver::new(".", cli.data_dir);
            let list = if names.is_empty() {
                list_instances(&resolver)
            } else {
                names.iter().map(|n| describe_instance(&resolver, n)).collect()
            };
            print!("{}", format_instances(&list));
            Ok(ExitCode::SUCCESS)
        }
    }
}
