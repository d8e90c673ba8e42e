use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::MetricMode;
use crate::circuit::CircuitIR;
use crate::error::{invalid, Result};
use crate::graph::{Graph, GraphSample};
use crate::statevector::{inner, prepare_graph_state, StateVector};

/// Symmetric `n_params × n_params` Fubini–Study metric.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricTensor {
    entries: DMatrix<f64>,
}

impl MetricTensor {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(invalid("metric must be square"));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    fn block_diagonal(mut self, slot_layers: &[usize]) -> Self {
        for j in 0..self.dim() {
            for k in 0..self.dim() {
                if slot_layers[j] != slot_layers[k] {
                    self.entries[(j, k)] = 0.0;
                }
            }
        }
        self
    }
}

/// `⟨(1/n) Σ Z_q⟩` after running the circuit on the graph state of `g`.
pub fn predict(circuit: &CircuitIR, params: &[f64], g: &Graph) -> Result<f64> {
    if g.n() != circuit.n_qubits() {
        return Err(invalid(format!(
            "{}-node graph for a {}-qubit circuit",
            g.n(),
            circuit.n_qubits()
        )));
    }
    Ok(circuit
        .run(params, &prepare_graph_state(g)?)?
        .expectation_mean_z())
}

/// Predictions for many samples, evaluated in parallel, in input order.
pub fn predictions(circuit: &CircuitIR, params: &[f64], samples: &[GraphSample]) -> Result<Vec<f64>> {
    samples
        .par_iter()
        .map(|s| predict(circuit, params, &s.graph))
        .collect()
}

/// Weighted overlap `Σ_b conj(d_b)·w_b·ψ_b` with `w_b` the mean-Z eigenvalue.
fn mean_z_cross(d: &StateVector, psi: &StateVector) -> Complex64 {
    let nf = psi.n() as f64;
    d.amplitudes()
        .iter()
        .zip(psi.amplitudes())
        .enumerate()
        .map(|(b, (x, y))| x.conj() * y * ((nf - 2.0 * b.count_ones() as f64) / nf))
        .sum()
}

fn metric_from(state: &StateVector, derivs: &[StateVector]) -> DMatrix<f64> {
    let p = derivs.len();
    let overlaps: Vec<Complex64> = derivs.iter().map(|d| state.inner(d)).collect();
    let mut g = DMatrix::zeros(p, p);
    for j in 0..p {
        for k in j..p {
            let dd = inner(derivs[j].amplitudes(), derivs[k].amplitudes());
            let v = (dd - overlaps[j].conj() * overlaps[k]).re;
            g[(j, k)] = v;
            g[(k, j)] = v;
        }
    }
    g
}

struct SampleGeometry {
    prediction: f64,
    prediction_grad: Vec<f64>,
    metric: Option<DMatrix<f64>>,
}

fn sample_geometry(
    circuit: &CircuitIR,
    params: &[f64],
    g: &Graph,
    with_metric: bool,
) -> Result<SampleGeometry> {
    if g.n() != circuit.n_qubits() {
        return Err(invalid("graph size does not match circuit width"));
    }
    let d = circuit.derivative_states(params, &prepare_graph_state(g)?)?;
    // ∂⟨O⟩/∂θ_j = 2·Re⟨∂_j ψ|O|ψ⟩
    let prediction_grad = d
        .derivatives
        .iter()
        .map(|dj| 2.0 * mean_z_cross(dj, &d.state).re)
        .collect();
    Ok(SampleGeometry {
        prediction: d.state.expectation_mean_z(),
        prediction_grad,
        metric: with_metric.then(|| metric_from(&d.state, &d.derivatives)),
    })
}

/// Exact `∂L/∂θ` of the batch MSE.
pub fn gradient(circuit: &CircuitIR, params: &[f64], batch: &[GraphSample]) -> Result<Vec<f64>> {
    Ok(batch_objective(circuit, params, batch, None)?.gradient)
}

/// Fubini–Study metric of the circuit output for a single input state:
/// `g_jk = Re(⟨∂_j ψ|∂_k ψ⟩ − ⟨∂_j ψ|ψ⟩⟨ψ|∂_k ψ⟩)`.
pub fn fubini_study_metric(
    circuit: &CircuitIR,
    params: &[f64],
    input: &StateVector,
) -> Result<MetricTensor> {
    let d = circuit.derivative_states(params, input)?;
    MetricTensor::new(metric_from(&d.state, &d.derivatives))
}

/// Loss, gradient and (optionally) batch-mean metric of one minibatch.
#[derive(Clone, Debug)]
pub struct BatchObjective {
    pub loss: f64,
    pub predictions: Vec<f64>,
    pub gradient: Vec<f64>,
    pub metric: Option<MetricTensor>,
}

pub fn batch_objective(
    circuit: &CircuitIR,
    params: &[f64],
    batch: &[GraphSample],
    metric: Option<MetricMode>,
) -> Result<BatchObjective> {
    if batch.is_empty() {
        return Err(invalid("empty batch"));
    }
    let per_sample: Vec<SampleGeometry> = batch
        .par_iter()
        .map(|s| sample_geometry(circuit, params, &s.graph, metric.is_some()))
        .collect::<Result<_>>()?;

    let b = batch.len() as f64;
    let p = circuit.n_params();
    let predictions: Vec<f64> = per_sample.iter().map(|s| s.prediction).collect();
    let labels: Vec<f64> = batch.iter().map(|s| s.label.value()).collect();
    let loss = super::loss_mse(&predictions, &labels)?;

    let mut grad = vec![0.0; p];
    for (s, y) in per_sample.iter().zip(&labels) {
        let w = 2.0 * (s.prediction - y) / b;
        for (g, d) in grad.iter_mut().zip(&s.prediction_grad) {
            *g += w * d;
        }
    }

    let metric = match metric {
        None => None,
        Some(mode) => {
            let mut sum = DMatrix::zeros(p, p);
            for s in &per_sample {
                sum += s.metric.as_ref().expect("metric requested");
            }
            let m = MetricTensor::new(sum / b)?;
            Some(match mode {
                MetricMode::Exact => m,
                MetricMode::BlockDiagonal => m.block_diagonal(circuit.slot_layers()),
            })
        }
    };

    Ok(BatchObjective {
        loss,
        predictions,
        gradient: grad,
        metric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::AnsatzKind;
    use crate::graph::Property;
    use crate::statevector::GateInstr;
    use std::f64::consts::PI;

    fn one_gate(gates: Vec<GateInstr>) -> CircuitIR {
        CircuitIR::new(1, gates, 1, AnsatzKind::FreeParameters, vec![0]).unwrap()
    }

    #[test]
    fn single_rx_metric() {
        let c = one_gate(vec![GateInstr::rx(0, 0)]);
        for theta in [0.0, 0.37, 1.4] {
            let m = fubini_study_metric(&c, &[theta], &StateVector::zero(1).unwrap()).unwrap();
            assert!((m.entries()[(0, 0)] - PI * PI / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn shared_slot_matches_doubled_coefficient() {
        let twice = one_gate(vec![GateInstr::ry(0, 0), GateInstr::ry(0, 0)]);
        let doubled = one_gate(vec![GateInstr::ry(0, 0).with_coefficient(2.0)]);
        let mut input = StateVector::zero(1).unwrap();
        input.apply_pauli_rotation(&"X".parse().unwrap(), 0.4).unwrap();
        let a = fubini_study_metric(&twice, &[0.3], &input).unwrap();
        let b = fubini_study_metric(&doubled, &[0.3], &input).unwrap();
        assert!((a.entries()[(0, 0)] - b.entries()[(0, 0)]).abs() < 1e-12);
    }

    #[test]
    fn empty_graph_with_zero_params_predicts_zero() {
        let c = AnsatzKind::SnInvariant.build(5, 2).unwrap();
        let p = predict(&c, &vec![0.0; c.n_params()], &Graph::empty(5).unwrap()).unwrap();
        assert!(p.abs() < 1e-12);
        assert!(predict(&c, &vec![0.0; c.n_params()], &Graph::empty(4).unwrap()).is_err());
    }

    #[test]
    fn gradient_vanishes_at_exact_fit() {
        let c = AnsatzKind::SnInvariant.build(3, 1).unwrap();
        let g = Graph::empty(3).unwrap();
        let mut params = vec![0.0; 3];
        // RY(-0.5) maps |+⟩ to |0⟩, so the prediction is +1
        params[1] = -0.5;
        let pred = predict(&c, &params, &g).unwrap();
        assert!((pred - 1.0).abs() < 1e-12, "{pred}");
        let sample = GraphSample {
            graph: g,
            label: crate::graph::Label::Positive,
            property: Property::Connected,
        };
        let grad = gradient(&c, &params, &[sample]).unwrap();
        assert!(grad.iter().all(|x| x.abs() < 1e-10), "{grad:?}");
    }

    #[test]
    fn block_diagonal_drops_cross_layer_terms() {
        let c = AnsatzKind::SnInvariant.build(3, 2).unwrap();
        let s = GraphSample::labeled(Graph::path(3).unwrap(), Property::Connected);
        let params: Vec<f64> = (0..6).map(|i| 0.1 * i as f64 - 0.2).collect();
        let full = batch_objective(&c, &params, &[s], Some(MetricMode::Exact)).unwrap();
        let block = batch_objective(&c, &params, &[s], Some(MetricMode::BlockDiagonal)).unwrap();
        let (f, b) = (full.metric.unwrap(), block.metric.unwrap());
        assert_eq!(b.entries()[(0, 4)], 0.0);
        assert_eq!(b.entries()[(1, 2)], f.entries()[(1, 2)]);
        assert!(f.entries()[(0, 4)].abs() > 0.0);
    }
}
