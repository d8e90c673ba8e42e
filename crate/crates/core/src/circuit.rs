//! Circuit intermediate representation and exact state derivatives.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::statevector::{fuse_diagonal_runs, GateInstr, Op, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnsatzKind {
    SnInvariant,
    CnInvariant,
    FreeParameters,
    StronglyEntangling,
}

impl AnsatzKind {
    pub const ALL: [AnsatzKind; 4] = [
        AnsatzKind::SnInvariant,
        AnsatzKind::CnInvariant,
        AnsatzKind::FreeParameters,
        AnsatzKind::StronglyEntangling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AnsatzKind::SnInvariant => "sn_invariant",
            AnsatzKind::CnInvariant => "cn_invariant",
            AnsatzKind::FreeParameters => "free_parameters",
            AnsatzKind::StronglyEntangling => "strongly_entangling",
        }
    }

    /// Column stem used in aggregate CSVs.
    pub fn column_stem(self) -> &'static str {
        match self {
            AnsatzKind::SnInvariant => "Sn",
            AnsatzKind::CnInvariant => "Cn",
            AnsatzKind::FreeParameters => "free_parameters",
            AnsatzKind::StronglyEntangling => "entanglement",
        }
    }

    /// Layer count giving the reference parameter budget at 8 qubits.
    pub fn default_layers(self) -> usize {
        match self {
            AnsatzKind::SnInvariant => 40,
            AnsatzKind::CnInvariant => 30,
            AnsatzKind::FreeParameters => 3,
            AnsatzKind::StronglyEntangling => 5,
        }
    }

    pub fn build(self, n: usize, layers: usize) -> Result<CircuitIR> {
        use crate::ansatz::*;
        match self {
            AnsatzKind::SnInvariant => build_sn(n, layers),
            AnsatzKind::CnInvariant => build_cn(n, layers),
            AnsatzKind::FreeParameters => build_free(n, layers),
            AnsatzKind::StronglyEntangling => build_strongly_entangling(n, layers),
        }
    }

    pub fn build_default(self, n: usize) -> Result<CircuitIR> {
        self.build(n, self.default_layers())
    }
}

impl fmt::Display for AnsatzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AnsatzKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AnsatzKind::ALL
            .into_iter()
            .find(|k| k.name() == s || k.column_stem() == s)
            .ok_or_else(|| Error::Parse(format!("unknown ansatz {s:?}")))
    }
}

/// Ordered gate list with parameter-slot bindings.
#[derive(Clone, Debug)]
pub struct CircuitIR {
    n_qubits: usize,
    gates: Vec<GateInstr>,
    n_params: usize,
    kind: AnsatzKind,
    /// Layer index of every slot, non-decreasing.
    slot_layers: Vec<usize>,
    ops: Vec<Op>,
}

impl CircuitIR {
    /// Validates every gate and that each slot is referenced at least once.
    pub fn new(
        n_qubits: usize,
        gates: Vec<GateInstr>,
        n_params: usize,
        kind: AnsatzKind,
        slot_layers: Vec<usize>,
    ) -> Result<Self> {
        if slot_layers.len() != n_params {
            return Err(invalid("one layer index per slot is required"));
        }
        let mut used = vec![false; n_params];
        for g in &gates {
            g.validate(n_qubits, n_params)?;
            if let Some(s) = g.param_slot {
                used[s..s + g.kind.slot_span()].iter_mut().for_each(|u| *u = true);
            }
        }
        if let Some(s) = used.iter().position(|u| !u) {
            return Err(invalid(format!("slot {s} is never used")));
        }
        let ops = fuse_diagonal_runs(
            gates.iter().flat_map(|g| g.lower(n_qubits)).collect(),
            n_qubits,
        );
        Ok(Self {
            n_qubits,
            gates,
            n_params,
            kind,
            slot_layers,
            ops,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateInstr] {
        &self.gates
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn kind(&self) -> AnsatzKind {
        self.kind
    }

    pub fn slot_layers(&self) -> &[usize] {
        &self.slot_layers
    }

    fn check(&self, params: &[f64], input: &StateVector) -> Result<()> {
        if params.len() != self.n_params {
            return Err(invalid(format!(
                "{} parameters given, circuit has {}",
                params.len(),
                self.n_params
            )));
        }
        if input.n() != self.n_qubits {
            return Err(invalid(format!(
                "{}-qubit input for a {}-qubit circuit",
                input.n(),
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// The output state for `input`.
    pub fn run(&self, params: &[f64], input: &StateVector) -> Result<StateVector> {
        self.check(params, input)?;
        let mut out = input.clone();
        for op in &self.ops {
            op.apply(out.amplitudes_mut(), params);
        }
        Ok(out)
    }

    /// Output state and `∂|ψ⟩/∂θ_j` for every slot, by forward-mode
    /// propagation. Each occurrence of a slot contributes its generator
    /// `(-iπc/2)·P` at its position in the circuit; occurrences are summed.
    pub fn derivative_states(&self, params: &[f64], input: &StateVector) -> Result<Derivatives> {
        self.check(params, input)?;
        let dim = input.amplitudes().len();
        let mut psi = input.amplitudes().to_vec();
        let mut derivs: Vec<Option<Vec<Complex64>>> = vec![None; self.n_params];
        for op in &self.ops {
            op.apply(&mut psi, params);
            for d in derivs.iter_mut().flatten() {
                op.apply(d, params);
            }
            if let Some(slot) = op.slot() {
                let d = derivs[slot].get_or_insert_with(|| vec![Complex64::new(0.0, 0.0); dim]);
                op.accumulate_generator(d, &psi);
            }
        }
        let n = self.n_qubits;
        let derivatives = derivs
            .into_iter()
            .map(|d| {
                StateVector::from_amplitudes(n, d.unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); dim]))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivatives {
            state: StateVector::from_amplitudes(n, psi)?,
            derivatives,
        })
    }

    /// Same circuit with qubit `q` relabeled to `perm[q]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<CircuitIR> {
        if !crate::graph::is_permutation(perm, self.n_qubits) {
            return Err(invalid("qubit relabeling is not a permutation"));
        }
        let gates = self
            .gates
            .iter()
            .map(|g| GateInstr {
                qubits: g.qubits.iter().map(|&q| perm[q]).collect(),
                ..g.clone()
            })
            .collect();
        CircuitIR::new(self.n_qubits, gates, self.n_params, self.kind, self.slot_layers.clone())
    }

    /// One line per gate, `KIND q0[,q1] slot=<k|-> coeff=<c>`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// Distinct qubit tuples per slot, for structural comparisons.
    pub fn slot_supports(&self) -> Vec<BTreeSet<Vec<usize>>> {
        let mut out = vec![BTreeSet::new(); self.n_params];
        for g in &self.gates {
            if let Some(s) = g.param_slot {
                out[s].insert(g.qubits.clone());
            }
        }
        out
    }
}

pub struct Derivatives {
    pub state: StateVector,
    pub derivatives: Vec<StateVector>,
}
