use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use freeprod_lab::{list_experiments, run, ExperimentConfig, RunOptions};

/// Run a configured experiment sweep and write its CSV rows and JSON summary.
#[derive(Parser, Debug)]
#[command(name = "freeprod-lab", version)]
struct Cli {
    /// Key-value configuration file.
    #[arg(required_unless_present = "list")]
    config: Option<PathBuf>,
    /// Directory for the CSV and JSON outputs.
    #[arg(short, long, default_value = "out")]
    out: PathBuf,
    /// Master seed, replacing the one in the configuration.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(short, long)]
    workers: Option<usize>,
    /// Run a single trial by its global index and print its row.
    #[arg(long)]
    replay: Option<usize>,
    /// Print the experiment catalog and exit.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        for e in list_experiments() {
            println!("{:<24} {}", e.name, e.anchor);
        }
        return ExitCode::SUCCESS;
    }
    let path = cli.config.expect("clap requires a config");
    let result = std::fs::read_to_string(&path)
        .map_err(freeprod_lab::LabError::from)
        .and_then(|text| ExperimentConfig::parse(&text))
        .and_then(|config| run(&config, &RunOptions { workers: cli.workers, seed: cli.seed, replay: cli.replay }));
    let result = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    if cli.replay.is_some() {
        print!("{}", result.csv());
        return ExitCode::SUCCESS;
    }
    match result.write(&cli.out) {
        Ok((csv, json)) => {
            for a in &result.aggregates {
                println!(
                    "{} d={} ell={} m={}: {}/{} ({} errors), wilson95 [{:.3}, {:.3}]",
                    result.entry.name,
                    freeprod::scalar::format_ratio(&a.point.density),
                    a.point.ell,
                    a.point.m,
                    a.successes,
                    a.trials - a.errors,
                    a.errors,
                    a.wilson.0,
                    a.wilson.1
                );
            }
            println!("wrote {} and {}", csv.display(), json.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
