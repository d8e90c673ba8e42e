//! Builders for the four circuit families.
//!
//! The symmetric families tie one parameter to every gate in a Pauli-string
//! orbit. Orbit elements commute, so the exponential of the orbit sum equals
//! the product of per-string rotations applied in any order; each distinct
//! string is applied once (the orbit multiplicity is absorbed into the
//! parameter scale).

use crate::circuit::{AnsatzKind, CircuitIR};
use crate::error::{invalid, Result};
use crate::pauli::{is_mutually_commuting, orbit, GeneratorOrbit, PauliOp, PauliString, SymmetryGroup};
use crate::statevector::GateInstr;

/// Rotation gates for every element of `orbit`, all reading `slot`.
fn orbit_gates(orbit: &GeneratorOrbit, slot: usize) -> Vec<GateInstr> {
    debug_assert!(is_mutually_commuting(&orbit.elements));
    orbit
        .elements
        .iter()
        .map(|p| {
            let support = p.support();
            match (p.letters()[support[0]], support.len()) {
                (PauliOp::X, 1) => GateInstr::rx(support[0], slot),
                (PauliOp::Y, 1) => GateInstr::ry(support[0], slot),
                (PauliOp::Z, 1) => GateInstr::rz(support[0], slot),
                (PauliOp::Z, 2) => GateInstr::rzz(support[0], support[1], slot),
                _ => unreachable!("no primitive gate for {p}"),
            }
        })
        .collect()
}

fn site(n: usize, sites: &[(usize, PauliOp)]) -> PauliString {
    PauliString::from_sites(n, sites)
}

/// The S_n-symmetric layer generators: all-X, all-Y, all-pairs ZZ.
fn sn_orbits(n: usize) -> Result<Vec<GeneratorOrbit>> {
    let g = SymmetryGroup::full(n);
    Ok(vec![
        orbit(&site(n, &[(0, PauliOp::X)]), g)?,
        orbit(&site(n, &[(0, PauliOp::Y)]), g)?,
        orbit(&site(n, &[(0, PauliOp::Z), (1, PauliOp::Z)]), g)?,
    ])
}

/// Permutation-invariant circuit: 3 shared slots per layer.
pub fn build_sn(n: usize, layers: usize) -> Result<CircuitIR> {
    if n < 2 {
        return Err(invalid("the S_n ansatz needs at least 2 qubits"));
    }
    let orbits = sn_orbits(n)?;
    let mut gates = Vec::new();
    let mut slot_layers = Vec::new();
    for layer in 0..layers {
        for o in &orbits {
            gates.extend(orbit_gates(o, slot_layers.len()));
            slot_layers.push(layer);
        }
    }
    CircuitIR::new(n, gates, slot_layers.len(), AnsatzKind::SnInvariant, slot_layers)
}

/// Cyclic-invariant circuit: X ring, Y ring, nearest-neighbour ZZ ring and
/// next-nearest ZZ ring, 4 shared slots per layer.
pub fn build_cn(n: usize, layers: usize) -> Result<CircuitIR> {
    if n < 3 {
        return Err(invalid("the C_n ansatz needs at least 3 qubits"));
    }
    let g = SymmetryGroup::cyclic(n);
    let orbits = [
        orbit(&site(n, &[(0, PauliOp::X)]), g)?,
        orbit(&site(n, &[(0, PauliOp::Y)]), g)?,
        orbit(&site(n, &[(0, PauliOp::Z), (1, PauliOp::Z)]), g)?,
        orbit(&site(n, &[(0, PauliOp::Z), (2, PauliOp::Z)]), g)?,
    ];
    let mut gates = Vec::new();
    let mut slot_layers = Vec::new();
    for layer in 0..layers {
        for o in &orbits {
            gates.extend(orbit_gates(o, slot_layers.len()));
            slot_layers.push(layer);
        }
    }
    CircuitIR::new(n, gates, slot_layers.len(), AnsatzKind::CnInvariant, slot_layers)
}

/// Gate arrangement of [`build_sn`] with an independent slot per gate.
pub fn build_free(n: usize, layers: usize) -> Result<CircuitIR> {
    if n < 2 {
        return Err(invalid("the free-parameter ansatz needs at least 2 qubits"));
    }
    let orbits = sn_orbits(n)?;
    let mut gates = Vec::new();
    let mut slot_layers = Vec::new();
    for layer in 0..layers {
        for o in &orbits {
            for mut gate in orbit_gates(o, 0) {
                gate.param_slot = Some(slot_layers.len());
                slot_layers.push(layer);
                gates.push(gate);
            }
        }
    }
    CircuitIR::new(n, gates, slot_layers.len(), AnsatzKind::FreeParameters, slot_layers)
}

/// Strongly entangling layers: a three-angle rotation on each qubit, then a
/// CNOT ring `i -> (i + r) mod n` with range `r` alternating 1, 2, 1, ...
pub fn build_strongly_entangling(n: usize, layers: usize) -> Result<CircuitIR> {
    if n < 3 {
        return Err(invalid("the strongly entangling ansatz needs at least 3 qubits"));
    }
    let mut gates = Vec::new();
    let mut slot_layers = Vec::new();
    for layer in 0..layers {
        for q in 0..n {
            gates.push(GateInstr::rot3(q, slot_layers.len()));
            slot_layers.extend([layer; 3]);
        }
        let range = if layer % 2 == 0 { 1 } else { 2 };
        for q in 0..n {
            gates.push(GateInstr::cnot(q, (q + range) % n));
        }
    }
    CircuitIR::new(n, gates, slot_layers.len(), AnsatzKind::StronglyEntangling, slot_layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::GateKind;

    fn count(c: &CircuitIR, kind: GateKind) -> usize {
        c.gates().iter().filter(|g| g.kind == kind).count()
    }

    #[test]
    fn reference_budgets_at_eight_qubits() {
        let sn = build_sn(8, 40).unwrap();
        assert_eq!(sn.n_params(), 120);
        assert_eq!(sn.gates().len(), 1760);
        let cn = build_cn(8, 30).unwrap();
        assert_eq!(cn.n_params(), 120);
        assert_eq!(cn.gates().len(), 960);
        assert_eq!(build_free(8, 3).unwrap().n_params(), 132);
        assert_eq!(build_free(8, 1).unwrap().n_params(), 44);
        let se = build_strongly_entangling(8, 5).unwrap();
        assert_eq!(se.n_params(), 120);
        assert_eq!(count(&se, GateKind::ROT3), 40);
        assert_eq!(count(&se, GateKind::CNOT), 40);
    }

    #[test]
    fn smallest_sn_layer() {
        let c = build_sn(2, 1).unwrap();
        assert_eq!(c.n_params(), 3);
        let mut lines: Vec<_> = c.dump().lines().map(str::to_owned).collect();
        lines.sort();
        assert_eq!(
            lines,
            [
                "RX 0 slot=0 coeff=1",
                "RX 1 slot=0 coeff=1",
                "RY 0 slot=1 coeff=1",
                "RY 1 slot=1 coeff=1",
                "RZZ 0,1 slot=2 coeff=1",
            ]
        );
    }

    #[test]
    fn cn_distance_two_orbit_at_four_qubits() {
        let c = build_cn(4, 1).unwrap();
        assert_eq!(c.n_params(), 4);
        let supports = c.slot_supports();
        let sizes: Vec<_> = supports.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, [4, 4, 4, 2]);
        assert!(supports[3].contains(&vec![0, 2]) && supports[3].contains(&vec![1, 3]));
    }

    #[test]
    fn strongly_entangling_three_qubits() {
        let c = build_strongly_entangling(3, 1).unwrap();
        assert_eq!(c.n_params(), 9);
        let cnots: Vec<_> = c
            .gates()
            .iter()
            .filter(|g| g.kind == GateKind::CNOT)
            .map(|g| (g.qubits[0], g.qubits[1]))
            .collect();
        assert_eq!(cnots, [(0, 1), (1, 2), (2, 0)]);
        let second = build_strongly_entangling(4, 2).unwrap();
        let last: Vec<_> = second.gates()[second.gates().len() - 4..]
            .iter()
            .map(|g| (g.qubits[0], g.qubits[1]))
            .collect();
        assert_eq!(last, [(0, 2), (1, 3), (2, 0), (3, 1)]);
    }

    #[test]
    fn size_preconditions() {
        assert!(build_sn(1, 1).is_err());
        assert!(build_free(1, 1).is_err());
        assert!(build_cn(2, 1).is_err());
        assert!(build_strongly_entangling(2, 1).is_err());
    }

    /// Gate multiset with RZZ endpoints unordered.
    fn multiset(c: &CircuitIR) -> Vec<String> {
        let mut v: Vec<String> = c
            .gates()
            .iter()
            .map(|g| {
                let mut q = g.qubits.clone();
                if g.kind == GateKind::RZZ {
                    q.sort();
                }
                format!("{:?} {:?} {:?}", g.kind, q, g.param_slot)
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn sn_closed_under_relabeling() {
        let c = build_sn(5, 2).unwrap();
        let r = c.relabeled(&[3, 0, 4, 1, 2]).unwrap();
        assert_eq!(multiset(&c), multiset(&r));
    }

    #[test]
    fn cn_closed_under_rotation_only() {
        let c = build_cn(6, 2).unwrap();
        let rot: Vec<usize> = (0..6).map(|q| (q + 1) % 6).collect();
        assert_eq!(multiset(&c), multiset(&c.relabeled(&rot).unwrap()));
        let swap = [1, 0, 2, 3, 4, 5];
        assert_ne!(multiset(&c), multiset(&c.relabeled(&swap).unwrap()));
    }

    #[test]
    fn every_symmetric_block_commutes() {
        for o in sn_orbits(8).unwrap() {
            assert!(is_mutually_commuting(&o.elements));
        }
    }
}
