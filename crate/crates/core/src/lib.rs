//! Exact simulation of symmetry-restricted parameterized quantum circuits
//! that classify graph properties.
//!
//! Graphs are loaded into qubits as graph states, pushed through one of four
//! circuit families ([`circuit::AnsatzKind`]), and read out through the mean
//! magnetization `⟨(1/n) Σ Z_q⟩`. The permutation-invariant family ties one
//! parameter to each `S_n` orbit of Pauli generators, so its output cannot
//! depend on node labels. The cyclic family does the same for ring
//! rotations. The two baselines reuse familiar layouts without that tying.
//!
//! Modules, bottom-up:
//! - [`pauli`]: Pauli strings, group orbits, commutation.
//! - [`graph`]: graphs, `G(n, p)` sampling, property oracles, datasets, counting.
//! - [`statevector`]: amplitudes, gates, graph-state preparation, observables.
//! - [`circuit`] / [`ansatz`]: circuit IR, derivative states, the four builders.
//! - [`training`]: loss, gradients, Fubini–Study metric, natural-gradient training.
//! - [`experiments`]: campaigns and CSV artifacts behind the `permqml` binary.

pub mod ansatz;
pub mod circuit;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod pauli;
pub mod statevector;
pub mod training;

mod util;

pub use circuit::{AnsatzKind, CircuitIR};
pub use error::{Error, Result};
pub use graph::{Graph, Property};
pub use pauli::PauliString;
pub use statevector::StateVector;
