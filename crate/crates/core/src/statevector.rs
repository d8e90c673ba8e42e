//! Exact statevector simulation.
//!
//! Basis index `b` is little-endian: qubit `q` is bit `q` of `b`.
//! Parameterized gates implement `exp(-i·π·(coefficient·θ)/2 · P)` for a
//! Pauli string `P`, so every angle has period 4 in `θ`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::pauli::{PauliOp, PauliString};

pub const MAX_QUBITS: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::UnsupportedSize(n));
        }
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(Self { n, amps })
    }

    /// `|+⟩^⊗n`.
    pub fn plus(n: usize) -> Result<Self> {
        let mut s = Self::zero(n)?;
        let a = Complex64::new((0.5f64).powf(n as f64 / 2.0), 0.0);
        s.amps.iter_mut().for_each(|x| *x = a);
        Ok(s)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let mut s = Self::zero(n)?;
        if index >= s.amps.len() {
            return Err(invalid(format!("basis index {index} out of range")));
        }
        s.amps[0] = ZERO;
        s.amps[index] = ONE;
        Ok(s)
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::UnsupportedSize(n));
        }
        if amps.len() != 1 << n {
            return Err(invalid(format!(
                "{} amplitudes given for {n} qubits",
                amps.len()
            )));
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        inner(&self.amps, &other.amps)
    }

    pub fn apply_h(&mut self, q: usize) {
        hadamard(&mut self.amps, q);
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        cz(&mut self.amps, a, b);
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        cnot(&mut self.amps, control, target);
    }

    /// `exp(-i·angle/2 · P)` for a Hermitian Pauli string `P`.
    pub fn apply_pauli_rotation(&mut self, pauli: &PauliString, angle: f64) -> Result<()> {
        let action = self.action(pauli)?;
        if pauli.phase_power() % 2 != 0 {
            return Err(invalid(format!("{pauli} is not Hermitian")));
        }
        rotate(&mut self.amps, &action, angle);
        Ok(())
    }

    /// Multiplies the state by `P`.
    pub fn apply_pauli(&mut self, pauli: &PauliString) -> Result<()> {
        let action = self.action(pauli)?;
        let src = self.amps.clone();
        self.amps.iter_mut().for_each(|a| *a = ZERO);
        accumulate_pauli(&mut self.amps, &src, &action, ONE);
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩` (real part; exact for Hermitian `P`).
    pub fn expectation_pauli(&self, pauli: &PauliString) -> Result<f64> {
        let action = self.action(pauli)?;
        let mut p_psi = vec![ZERO; self.amps.len()];
        accumulate_pauli(&mut p_psi, &self.amps, &action, ONE);
        Ok(inner(&self.amps, &p_psi).re)
    }

    /// `⟨(1/n) Σ_q Z_q⟩`.
    pub fn expectation_mean_z(&self) -> f64 {
        mean_z(&self.amps, self.n)
    }

    /// The state with qubit `q` relabeled to `perm[q]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<StateVector> {
        if !crate::graph::is_permutation(perm, self.n) {
            return Err(invalid("qubit relabeling is not a permutation"));
        }
        let mut out = vec![ZERO; self.amps.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            let mut img = 0usize;
            for (q, &p) in perm.iter().enumerate() {
                img |= (b >> q & 1) << p;
            }
            out[img] = a;
        }
        Ok(StateVector { n: self.n, amps: out })
    }

    /// Debug dump: `basis_index,re,im` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "basis_index,re,im")?;
        for (b, a) in self.amps.iter().enumerate() {
            writeln!(w, "{b},{},{}", a.re, a.im)?;
        }
        Ok(())
    }

    fn action(&self, pauli: &PauliString) -> Result<PauliAction> {
        if pauli.len() != self.n {
            return Err(invalid(format!(
                "Pauli string on {} qubits applied to a {}-qubit state",
                pauli.len(),
                self.n
            )));
        }
        Ok(PauliAction::from_string(pauli))
    }
}

/// Graph state: Hadamard on every qubit of `|0…0⟩`, then CZ on every edge.
pub fn prepare_graph_state(g: &Graph) -> Result<StateVector> {
    let mut s = StateVector::zero(g.n())?;
    for q in 0..g.n() {
        s.apply_h(q);
    }
    for (i, j) in g.edges() {
        s.apply_cz(i, j);
    }
    Ok(s)
}

/// Stabilizer generator `X_i Π_{j ∈ N(i)} Z_j` of a graph state.
pub fn graph_stabilizer(g: &Graph, node: usize) -> PauliString {
    let adj = g.adjacency();
    let mut sites = vec![(node, PauliOp::X)];
    sites.extend((0..g.n()).filter(|&j| adj[node] >> j & 1 == 1).map(|j| (j, PauliOp::Z)));
    PauliString::from_sites(g.n(), &sites)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    CZ,
    CNOT,
    RX,
    RY,
    RZ,
    RZZ,
    /// `RX(θ_s)` then `RY(θ_{s+1})` then `RZ(θ_{s+2})` on one qubit.
    ROT3,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::CZ | GateKind::CNOT | GateKind::RZZ => 2,
            _ => 1,
        }
    }

    pub fn is_parameterized(self) -> bool {
        !matches!(self, GateKind::H | GateKind::CZ | GateKind::CNOT)
    }

    /// Number of consecutive parameter slots consumed.
    pub fn slot_span(self) -> usize {
        match self {
            GateKind::ROT3 => 3,
            k if k.is_parameterized() => 1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::CZ => "CZ",
            GateKind::CNOT => "CNOT",
            GateKind::RX => "RX",
            GateKind::RY => "RY",
            GateKind::RZ => "RZ",
            GateKind::RZZ => "RZZ",
            GateKind::ROT3 => "ROT3",
        }
    }
}

/// One gate of a circuit. Parameterized gates read `coefficient · θ[slot]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GateInstr {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub param_slot: Option<usize>,
    pub coefficient: f64,
}

impl GateInstr {
    fn fixed(kind: GateKind, qubits: Vec<usize>) -> Self {
        Self {
            kind,
            qubits,
            param_slot: None,
            coefficient: 1.0,
        }
    }

    fn param(kind: GateKind, qubits: Vec<usize>, slot: usize) -> Self {
        Self {
            kind,
            qubits,
            param_slot: Some(slot),
            coefficient: 1.0,
        }
    }

    pub fn h(q: usize) -> Self {
        Self::fixed(GateKind::H, vec![q])
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Self::fixed(GateKind::CZ, vec![a, b])
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::fixed(GateKind::CNOT, vec![control, target])
    }

    pub fn rx(q: usize, slot: usize) -> Self {
        Self::param(GateKind::RX, vec![q], slot)
    }

    pub fn ry(q: usize, slot: usize) -> Self {
        Self::param(GateKind::RY, vec![q], slot)
    }

    pub fn rz(q: usize, slot: usize) -> Self {
        Self::param(GateKind::RZ, vec![q], slot)
    }

    pub fn rzz(a: usize, b: usize, slot: usize) -> Self {
        Self::param(GateKind::RZZ, vec![a, b], slot)
    }

    pub fn rot3(q: usize, first_slot: usize) -> Self {
        Self::param(GateKind::ROT3, vec![q], first_slot)
    }

    pub fn with_coefficient(mut self, coefficient: f64) -> Self {
        self.coefficient = coefficient;
        self
    }

    /// Checks arity, qubit range and distinctness, and slot binding.
    pub fn validate(&self, n_qubits: usize, n_params: usize) -> Result<()> {
        let kind = self.kind;
        if self.qubits.len() != kind.arity() {
            return Err(invalid(format!("{} takes {} qubit(s)", kind.name(), kind.arity())));
        }
        if let Some(&q) = self.qubits.iter().find(|&&q| q >= n_qubits) {
            return Err(invalid(format!("qubit {q} out of range for {n_qubits} qubits")));
        }
        if self.qubits.len() == 2 && self.qubits[0] == self.qubits[1] {
            return Err(invalid(format!("{} on a repeated qubit", kind.name())));
        }
        match (kind.is_parameterized(), self.param_slot) {
            (true, None) => Err(invalid(format!("{} without a parameter slot", kind.name()))),
            (false, Some(_)) => Err(invalid(format!("{} cannot carry a parameter", kind.name()))),
            (true, Some(s)) if s + kind.slot_span() > n_params => Err(invalid(format!(
                "slot {s} of {} is unbound ({n_params} parameters)",
                kind.name()
            ))),
            _ => Ok(()),
        }
    }

    /// The gate as a sequence of primitive operations.
    pub(crate) fn lower(&self, n: usize) -> Vec<Op> {
        let q = &self.qubits;
        let rot = |op: PauliOp, slot: usize| Op::Rotation {
            action: PauliAction::from_string(&PauliString::from_sites(n, &[(q[0], op)])),
            slot,
            coefficient: self.coefficient,
        };
        match (self.kind, self.param_slot) {
            (GateKind::H, _) => vec![Op::H(q[0])],
            (GateKind::CZ, _) => vec![Op::CZ(q[0], q[1])],
            (GateKind::CNOT, _) => vec![Op::CNOT(q[0], q[1])],
            (GateKind::RX, Some(s)) => vec![rot(PauliOp::X, s)],
            (GateKind::RY, Some(s)) => vec![rot(PauliOp::Y, s)],
            (GateKind::RZ, Some(s)) => vec![rot(PauliOp::Z, s)],
            (GateKind::RZZ, Some(s)) => vec![Op::Rotation {
                action: PauliAction::from_string(&PauliString::from_sites(
                    n,
                    &[(q[0], PauliOp::Z), (q[1], PauliOp::Z)],
                )),
                slot: s,
                coefficient: self.coefficient,
            }],
            (GateKind::ROT3, Some(s)) => vec![
                rot(PauliOp::X, s),
                rot(PauliOp::Y, s + 1),
                rot(PauliOp::Z, s + 2),
            ],
            (kind, None) => unreachable!("{} validated without a slot", kind.name()),
        }
    }
}

/// `KIND q0[,q1] slot=<k|-> coeff=<c>`.
impl fmt::Display for GateInstr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qubits: Vec<String> = self.qubits.iter().map(|q| q.to_string()).collect();
        let slot = self
            .param_slot
            .map_or_else(|| "-".to_string(), |s| s.to_string());
        write!(
            f,
            "{} {} slot={} coeff={}",
            self.kind.name(),
            qubits.join(","),
            slot,
            self.coefficient
        )
    }
}

/// Applies one gate with parameters `params`.
pub fn apply_gate(state: &mut StateVector, instr: &GateInstr, params: &[f64]) -> Result<()> {
    instr.validate(state.n, params.len())?;
    for op in instr.lower(state.n) {
        op.apply(&mut state.amps, params);
    }
    Ok(())
}

/// `P = i^phase · X^x · Z^z`, acting as `P|b⟩ = i^phase (-1)^{|b∧z|} |b⊕x⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct PauliAction {
    x: usize,
    z: usize,
    phase: u8,
}

impl PauliAction {
    pub(crate) fn from_string(p: &PauliString) -> Self {
        let (x, z) = p.masks();
        let ys = p.letters().iter().filter(|&&l| l == PauliOp::Y).count() as u8;
        // Y = i·X·Z
        Self {
            x: x as usize,
            z: z as usize,
            phase: (p.phase_power() + ys) % 4,
        }
    }

    fn phase_factor(&self) -> Complex64 {
        [ONE, I, -ONE, -I][self.phase as usize]
    }

    /// For a single flipped qubit with no Z-component elsewhere, returns the
    /// flipped bit and whether `f` is negated on the half where it is clear.
    fn single_flip(&self) -> Option<(usize, bool)> {
        (self.x.is_power_of_two() && self.z & !self.x == 0).then(|| (self.x, self.z != 0))
    }

    /// Coefficient `f` with `(Pψ)[c] = f(c) · ψ[c ⊕ x]`.
    #[inline]
    fn coeff(&self, c: usize, base: Complex64) -> Complex64 {
        if ((c ^ self.x) & self.z).count_ones() % 2 == 1 {
            -base
        } else {
            base
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Op {
    H(usize),
    CZ(usize, usize),
    CNOT(usize, usize),
    Rotation {
        action: PauliAction,
        slot: usize,
        coefficient: f64,
    },
    /// Product of commuting diagonal rotations sharing a slot, applied as
    /// `exp(-i·π·c·θ/2 · Σ_t P_t)`; `eigen[b]` is the eigenvalue of the sum
    /// on basis state `b`.
    DiagonalBlock {
        eigen: Vec<i32>,
        terms: i32,
        slot: usize,
        coefficient: f64,
    },
}

/// Fuses runs of consecutive diagonal rotations that share a slot and
/// coefficient into one [`Op::DiagonalBlock`].
pub(crate) fn fuse_diagonal_runs(ops: Vec<Op>, n: usize) -> Vec<Op> {
    let mut out: Vec<Op> = Vec::with_capacity(ops.len());
    let mut run: Vec<PauliAction> = Vec::new();
    let mut key: Option<(usize, f64)> = None;
    let flush = |run: &mut Vec<PauliAction>, key: Option<(usize, f64)>, out: &mut Vec<Op>| {
        let Some((slot, coefficient)) = key else { return };
        if run.len() == 1 {
            out.push(Op::Rotation { action: run[0], slot, coefficient });
        } else if !run.is_empty() {
            let eigen = (0..1usize << n)
                .map(|b| {
                    run.iter()
                        .map(|a| if (b & a.z).count_ones() % 2 == 1 { -1 } else { 1 })
                        .sum()
                })
                .collect();
            out.push(Op::DiagonalBlock { eigen, terms: run.len() as i32, slot, coefficient });
        }
        run.clear();
    };
    for op in ops {
        match op {
            Op::Rotation { action, slot, coefficient } if action.x == 0 && action.phase == 0 => {
                if key != Some((slot, coefficient)) {
                    flush(&mut run, key, &mut out);
                    key = Some((slot, coefficient));
                }
                run.push(action);
            }
            other => {
                flush(&mut run, key, &mut out);
                key = None;
                out.push(other);
            }
        }
    }
    flush(&mut run, key, &mut out);
    out
}

impl Op {
    #[inline]
    pub(crate) fn apply(&self, amps: &mut [Complex64], params: &[f64]) {
        match *self {
            Op::H(q) => hadamard(amps, q),
            Op::CZ(a, b) => cz(amps, a, b),
            Op::CNOT(c, t) => cnot(amps, c, t),
            Op::Rotation {
                ref action,
                slot,
                coefficient,
            } => rotate(amps, action, PI * coefficient * params[slot]),
            Op::DiagonalBlock {
                ref eigen,
                terms,
                slot,
                coefficient,
            } => {
                let half = -PI * coefficient * params[slot] / 2.0;
                let table: Vec<Complex64> = (-terms..=terms)
                    .map(|e| Complex64::cis(half * e as f64))
                    .collect();
                for (amp, &e) in amps.iter_mut().zip(eigen) {
                    *amp *= table[(e + terms) as usize];
                }
            }
        }
    }

    pub(crate) fn slot(&self) -> Option<usize> {
        match *self {
            Op::Rotation { slot, .. } | Op::DiagonalBlock { slot, .. } => Some(slot),
            _ => None,
        }
    }

    /// For parameterized ops, adds `∂(gate)/∂θ · gate⁻¹` applied to `src` into
    /// `dst`, i.e. `dst += (-iπc/2)·P·src`.
    #[inline]
    pub(crate) fn accumulate_generator(&self, dst: &mut [Complex64], src: &[Complex64]) {
        if let Op::Rotation {
            ref action,
            coefficient,
            ..
        } = *self
        {
            accumulate_pauli(dst, src, action, Complex64::new(0.0, -PI * coefficient / 2.0));
        } else if let Op::DiagonalBlock {
            ref eigen,
            coefficient,
            ..
        } = *self
        {
            let scale = -PI * coefficient / 2.0;
            for ((d, x), &e) in dst.iter_mut().zip(src).zip(eigen) {
                *d += Complex64::new(0.0, scale * e as f64) * x;
            }
        }
    }
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn mean_z(amps: &[Complex64], n: usize) -> f64 {
    let nf = n as f64;
    amps.iter()
        .enumerate()
        .map(|(b, a)| a.norm_sqr() * (nf - 2.0 * b.count_ones() as f64) / nf)
        .sum()
}

fn hadamard(amps: &mut [Complex64], q: usize) {
    let bit = 1 << q;
    for c in 0..amps.len() {
        if c & bit == 0 {
            let (a, b) = (amps[c], amps[c | bit]);
            amps[c] = (a + b) * FRAC_1_SQRT_2;
            amps[c | bit] = (a - b) * FRAC_1_SQRT_2;
        }
    }
}

fn cz(amps: &mut [Complex64], a: usize, b: usize) {
    let mask = 1 << a | 1 << b;
    for (c, amp) in amps.iter_mut().enumerate() {
        if c & mask == mask {
            *amp = -*amp;
        }
    }
}

fn cnot(amps: &mut [Complex64], control: usize, target: usize) {
    let (cb, tb) = (1 << control, 1 << target);
    for c in 0..amps.len() {
        if c & cb != 0 && c & tb == 0 {
            amps.swap(c, c | tb);
        }
    }
}

/// `ψ ← cos(φ/2)ψ − i sin(φ/2)·Pψ`.
fn rotate(amps: &mut [Complex64], action: &PauliAction, angle: f64) {
    let (s, c) = (angle / 2.0).sin_cos();
    let m = Complex64::new(0.0, -s) * action.phase_factor();
    if action.x == 0 {
        let factors = [c + m, c - m];
        for (b, amp) in amps.iter_mut().enumerate() {
            *amp *= factors[((b & action.z).count_ones() & 1) as usize];
        }
        return;
    }
    if let Some((bit, lo_sign)) = action.single_flip() {
        // b with the flipped bit clear picks up lo_sign·m, its partner +m
        let m_lo = if lo_sign { -m } else { m };
        for chunk in amps.chunks_exact_mut(2 * bit) {
            let (lo, hi) = chunk.split_at_mut(bit);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*u, *v);
                *u = a * c + m_lo * b;
                *v = b * c + m * a;
            }
        }
        return;
    }
    let high = 1usize << (usize::BITS - 1 - action.x.leading_zeros());
    for b in 0..amps.len() {
        if b & high == 0 {
            let b2 = b ^ action.x;
            let (u, v) = (amps[b], amps[b2]);
            amps[b] = u * c + action.coeff(b, m) * v;
            amps[b2] = v * c + action.coeff(b2, m) * u;
        }
    }
}

/// `dst += scale · P · src`.
fn accumulate_pauli(dst: &mut [Complex64], src: &[Complex64], action: &PauliAction, scale: Complex64) {
    let base = scale * action.phase_factor();
    if action.x == 0 {
        let factors = [base, -base];
        for (b, (d, x)) in dst.iter_mut().zip(src).enumerate() {
            *d += factors[((b & action.z).count_ones() & 1) as usize] * x;
        }
        return;
    }
    if let Some((bit, lo_sign)) = action.single_flip() {
        let base_lo = if lo_sign { -base } else { base };
        for (dc, sc) in dst.chunks_exact_mut(2 * bit).zip(src.chunks_exact(2 * bit)) {
            let (dlo, dhi) = dc.split_at_mut(bit);
            let (slo, shi) = sc.split_at(bit);
            for (d, x) in dlo.iter_mut().zip(shi) {
                *d += base_lo * x;
            }
            for (d, x) in dhi.iter_mut().zip(slo) {
                *d += base * x;
            }
        }
        return;
    }
    for (c, d) in dst.iter_mut().enumerate() {
        *d += action.coeff(c, base) * src[c ^ action.x];
    }
}
