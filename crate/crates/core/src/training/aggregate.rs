use super::RunRecord;
use crate::error::{invalid, Result};

/// Per-epoch validation accuracy across seeds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpochAggregate {
    pub epoch: usize,
    pub mean: f64,
    /// Normal-approximation 95% half-width, `1.96 · s / √k`.
    pub ci95: f64,
}

pub fn aggregate_seeds(records: &[RunRecord]) -> Result<Vec<EpochAggregate>> {
    if records.len() < 2 {
        return Err(invalid("at least two runs are needed for an interval"));
    }
    let epochs = records[0].epochs.len();
    if records.iter().any(|r| r.epochs.len() != epochs) {
        return Err(invalid("runs have different epoch counts"));
    }
    Ok((0..epochs)
        .map(|e| {
            let xs: Vec<f64> = records.iter().map(|r| r.epochs[e].val_acc).collect();
            let (mean, ci95) = mean_ci95(&xs);
            EpochAggregate {
                epoch: records[0].epochs[e].epoch,
                mean,
                ci95,
            }
        })
        .collect())
}

/// Mean and `1.96 · sample_std / √len` of at least two values.
pub(crate) fn mean_ci95(xs: &[f64]) -> (f64, f64) {
    if xs.iter().all(|&x| x == xs[0]) {
        return (xs[0], 0.0);
    }
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, 1.96 * var.sqrt() / k.sqrt())
}
