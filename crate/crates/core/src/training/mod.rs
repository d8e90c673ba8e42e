//! Loss, exact gradients, the Fubini–Study metric, quantum natural gradient
//! steps, and the seeded training protocol.

mod aggregate;
mod geometry;
mod run;

pub use aggregate::{aggregate_seeds, EpochAggregate};
pub use geometry::{
    batch_objective, fubini_study_metric, gradient, predict, predictions, BatchObjective,
    MetricTensor,
};
pub use run::{train_run, train_run_with_circuit, EpochStats, RunRecord};

use crate::error::{invalid, Error, Result};

/// How the metric is assembled from the exact derivative states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricMode {
    Exact,
    /// Entries coupling slots of different layers are zeroed.
    BlockDiagonal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub metric_regularizer: f64,
    pub epochs: usize,
    pub train_per_epoch: usize,
    pub minibatch: usize,
    pub near_zero_epsilon: f64,
    pub seeds: Vec<u64>,
    pub metric_mode: MetricMode,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.1,
            metric_regularizer: 1e-3,
            epochs: 50,
            train_per_epoch: 100,
            minibatch: 10,
            near_zero_epsilon: 0.01,
            seeds: (0..10).collect(),
            metric_mode: MetricMode::Exact,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0) {
            return Err(invalid("learning_rate must be positive"));
        }
        if !(self.metric_regularizer >= 0.0) {
            return Err(invalid("metric_regularizer must be non-negative"));
        }
        if !(self.near_zero_epsilon >= 0.0) {
            return Err(invalid("near_zero_epsilon must be non-negative"));
        }
        if self.epochs == 0 || self.train_per_epoch == 0 || self.minibatch == 0 {
            return Err(invalid("epochs, train_per_epoch and minibatch must be positive"));
        }
        if self.train_per_epoch % self.minibatch != 0 {
            return Err(invalid(format!(
                "minibatch {} does not divide train_per_epoch {}",
                self.minibatch, self.train_per_epoch
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Positive,
    Negative,
    NearZero,
}

/// Sign classification with a dead band `[-ε, ε]`.
pub fn classify(prediction: f64, epsilon: f64) -> Classification {
    if prediction > epsilon {
        Classification::Positive
    } else if prediction < -epsilon {
        Classification::Negative
    } else {
        Classification::NearZero
    }
}

/// Mean squared error against ±1 labels.
pub fn loss_mse(predictions: &[f64], labels: &[f64]) -> Result<f64> {
    if predictions.is_empty() {
        return Err(invalid("empty batch"));
    }
    if predictions.len() != labels.len() {
        return Err(invalid("predictions and labels differ in length"));
    }
    let sum: f64 = predictions
        .iter()
        .zip(labels)
        .map(|(p, y)| (p - y).powi(2))
        .sum();
    Ok(sum / predictions.len() as f64)
}

/// `θ - η · (G + λI)⁻¹ ∇L` via a Cholesky solve.
pub fn qng_step(
    params: &[f64],
    grad: &[f64],
    metric: &MetricTensor,
    config: &TrainConfig,
) -> Result<Vec<f64>> {
    let n = params.len();
    if grad.len() != n || metric.dim() != n {
        return Err(invalid("parameter, gradient and metric dimensions differ"));
    }
    let mut a = metric.entries().clone();
    for i in 0..n {
        a[(i, i)] += config.metric_regularizer;
    }
    let chol = a.cholesky().ok_or_else(|| {
        Error::NumericalFailure("regularized metric is not positive definite".into())
    })?;
    let step = chol.solve(&nalgebra::DVector::from_column_slice(grad));
    Ok(params
        .iter()
        .zip(step.iter())
        .map(|(p, s)| p - config.learning_rate * s)
        .collect())
}
