//! Desk-scale comparison of all four ansatzes on connectedness.
//!
//! Usage: `train_connectedness [n] [epochs] [seeds]` (defaults 6, 20, 5).
//! Writes raw and aggregate CSVs under the default output directory.

use permqml::experiments::{run_campaign, ExperimentConfig};
use permqml::graph::generate_balanced_dataset;
use permqml::{AnsatzKind, Property};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arg(i: usize, default: usize) -> usize {
    std::env::args().nth(i).map_or(default, |s| s.parse().expect("integer argument"))
}

fn main() -> permqml::Result<()> {
    let (n, epochs, seeds) = (arg(1, 6), arg(2, 20), arg(3, 5));
    let dataset = generate_balanced_dataset(Property::Connected, n, 3000, &mut ChaCha8Rng::seed_from_u64(2024))?;
    let mut cfg = ExperimentConfig::default();
    cfg.n_qubits = n;
    cfg.train.epochs = epochs;
    cfg.train.train_per_epoch = 60;
    cfg.train.seeds = (0..seeds as u64).collect();
    cfg.output_dir = cfg.output_dir.join("connectedness");

    let start = std::time::Instant::now();
    let out = run_campaign(&cfg, &dataset)?;
    let stems: Vec<&str> = cfg.ansatzes.iter().map(|k| k.column_stem()).collect();
    println!("epoch  {}", stems.iter().map(|s| format!("{s:>17}")).collect::<String>());
    for (epoch, cols) in &out.aggregate.rows {
        let cells: String = cols.iter().map(|(m, c)| format!("{:>17}", format!("{m:.3} ± {c:.3}"))).collect();
        println!("{epoch:>5}  {cells}");
    }
    for kind in AnsatzKind::ALL {
        let runs: Vec<_> = out.records.iter().filter(|r| r.ansatz == kind).collect();
        let tail = epochs.min(5);
        let mean = runs
            .iter()
            .map(|r| r.epochs[epochs - tail..].iter().map(|e| e.val_acc).sum::<f64>() / tail as f64)
            .sum::<f64>()
            / runs.len() as f64;
        println!("{:<20} final-{tail}-epoch validation accuracy {mean:.3}", kind.name());
    }
    println!("aggregate -> {} ({:.0?})", out.aggregate_path.display(), start.elapsed());
    Ok(())
}
