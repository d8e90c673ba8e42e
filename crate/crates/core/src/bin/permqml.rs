use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use permqml::experiments::{
    cmd_count, cmd_curve, cmd_gen, cmd_train, default_output_dir, unit_grid, ExperimentConfig,
};
use permqml::Property;

#[derive(Parser)]
#[command(name = "permqml", about = "Graph-property classification with symmetric quantum circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a balanced dataset CSV (plus `.meta` sidecar).
    Gen {
        #[arg(long, default_value = "connected")]
        property: Property,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 3000)]
        total: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train ansatzes over seeds and write raw and aggregate CSVs.
    Train {
        /// key=value config file
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides, e.g. `--set epochs=20`
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Monte-Carlo P(connected) curve for G(n, p).
    Curve {
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Number of evenly spaced grid points on [0, 1]
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Labeled and unlabeled graph counts.
    Count { n: usize },
    /// Print the effective training configuration.
    ShowConfig {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
}

fn load_config(path: Option<PathBuf>, overrides: &[String]) -> permqml::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    if let Some(p) = path {
        cfg.apply_text(&std::fs::read_to_string(p)?)?;
    }
    for o in overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| permqml::Error::Parse(format!("override {o:?} is not key=value")))?;
        cfg.set(k, v)?;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> permqml::Result<()> {
    match cli.command {
        Command::Gen { property, n, total, seed, out } => {
            let out = out.unwrap_or_else(|| default_output_dir().join("dataset.csv"));
            let meta = cmd_gen(property, n, total, seed, &out)?;
            println!(
                "wrote {} ({} positive, {} negative)",
                out.display(),
                meta.positives,
                meta.negatives
            );
        }
        Command::Train { config, overrides } => {
            let cfg = load_config(config, &overrides)?;
            let out = cmd_train(&cfg)?;
            for (path, r) in out.raw_paths.iter().zip(&out.records) {
                let last = r.epochs.last().expect("at least one epoch");
                println!("{} seed {}: val_acc {:.4} -> {}", r.ansatz, r.seed, last.val_acc, path.display());
            }
            println!("aggregate -> {}", out.aggregate_path.display());
        }
        Command::Curve { n, points, samples, seed, out } => {
            let out = out.unwrap_or_else(|| default_output_dir().join("connectedness.csv"));
            let pts = cmd_curve(n, &unit_grid(points), samples, seed, &out)?;
            println!("wrote {} points to {}", pts.len(), out.display());
        }
        Command::Count { n } => {
            let c = cmd_count(n)?;
            println!("labeled {}", c.labeled);
            println!("unlabeled {}", c.unlabeled);
        }
        Command::ShowConfig { config, overrides } => {
            print!("{}", load_config(config, &overrides)?.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
