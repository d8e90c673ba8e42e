use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{batch_objective, classify, loss_mse, predictions, qng_step, Classification, TrainConfig};
use crate::circuit::{AnsatzKind, CircuitIR};
use crate::error::{invalid, Result};
use crate::graph::{Dataset, GraphSample, Label, Property};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpochStats {
    /// 1-based.
    pub epoch: usize,
    pub loss: f64,
    pub train_acc: f64,
    pub val_acc: f64,
    /// Fraction of validation predictions inside the near-zero band.
    pub near_zero_frac: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub ansatz: AnsatzKind,
    pub property: Property,
    pub epochs: Vec<EpochStats>,
    pub final_params: Vec<f64>,
}

/// Trains the default-depth circuit of `kind` on `dataset`.
pub fn train_run(kind: AnsatzKind, dataset: &Dataset, config: &TrainConfig, seed: u64) -> Result<RunRecord> {
    let circuit = kind.build_default(dataset.n)?;
    train_run_with_circuit(&circuit, dataset, config, seed)
}

/// One seeded training run.
///
/// The first `config.train_per_epoch` samples are the training set and the
/// rest the validation set. Parameters start uniform in `(-0.1, 0.1)`. Each
/// epoch shuffles the training set, takes one natural-gradient step per
/// minibatch, then scores the training and validation sets. A near-zero
/// prediction counts as wrong.
pub fn train_run_with_circuit(
    circuit: &CircuitIR,
    dataset: &Dataset,
    config: &TrainConfig,
    seed: u64,
) -> Result<RunRecord> {
    config.validate()?;
    if dataset.n != circuit.n_qubits() {
        return Err(invalid(format!(
            "{}-node dataset for a {}-qubit circuit",
            dataset.n,
            circuit.n_qubits()
        )));
    }
    if dataset.samples.len() <= config.train_per_epoch {
        return Err(invalid(format!(
            "dataset of {} samples leaves no validation set after {} training samples",
            dataset.samples.len(),
            config.train_per_epoch
        )));
    }
    let (train, validation) = dataset.samples.split_at(config.train_per_epoch);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params: Vec<f64> = (0..circuit.n_params())
        .map(|_| rng.gen_range(-0.1..0.1))
        .collect();

    let mut order: Vec<usize> = (0..train.len()).collect();
    let mut epochs = Vec::with_capacity(config.epochs);
    for epoch in 1..=config.epochs {
        order.shuffle(&mut rng);
        for chunk in order.chunks(config.minibatch) {
            let batch: Vec<GraphSample> = chunk.iter().map(|&i| train[i]).collect();
            let obj = batch_objective(circuit, &params, &batch, Some(config.metric_mode))?;
            let metric = obj.metric.expect("metric requested");
            params = qng_step(&params, &obj.gradient, &metric, config)?;
        }

        let train_preds = predictions(circuit, &params, train)?;
        let labels: Vec<f64> = train.iter().map(|s| s.label.value()).collect();
        let loss = loss_mse(&train_preds, &labels)?;
        let (train_acc, _) = score(&train_preds, train, config.near_zero_epsilon);
        let val_preds = predictions(circuit, &params, validation)?;
        let (val_acc, near_zero_frac) = score(&val_preds, validation, config.near_zero_epsilon);
        epochs.push(EpochStats {
            epoch,
            loss,
            train_acc,
            val_acc,
            near_zero_frac,
        });
    }

    Ok(RunRecord {
        seed,
        ansatz: circuit.kind(),
        property: dataset.property,
        epochs,
        final_params: params,
    })
}

/// `(accuracy, near-zero fraction)`.
fn score(preds: &[f64], samples: &[GraphSample], epsilon: f64) -> (f64, f64) {
    let mut correct = 0usize;
    let mut near_zero = 0usize;
    for (p, s) in preds.iter().zip(samples) {
        match (classify(*p, epsilon), s.label) {
            (Classification::NearZero, _) => near_zero += 1,
            (Classification::Positive, Label::Positive) | (Classification::Negative, Label::Negative) => {
                correct += 1
            }
            _ => {}
        }
    }
    let n = samples.len() as f64;
    (correct as f64 / n, near_zero as f64 / n)
}
