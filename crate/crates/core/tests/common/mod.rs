//! Dense-matrix oracles and random inputs shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use permqml::graph::erdos_renyi;
use permqml::pauli::PauliOp;
use permqml::statevector::{GateInstr, GateKind};
use permqml::{Graph, PauliString, StateVector};
use rand::seq::SliceRandom;
use rand::Rng;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single(op: PauliOp) -> CMat {
    let (z, o, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    let entries = match op {
        PauliOp::I => [o, z, z, o],
        PauliOp::X => [z, o, o, z],
        PauliOp::Y => [z, -i, i, z],
        PauliOp::Z => [o, z, z, -o],
    };
    CMat::from_row_slice(2, 2, &entries)
}

/// Little-endian: qubit 0 is the least significant tensor factor.
pub fn embed(factors: &[CMat]) -> CMat {
    let mut m = CMat::identity(1, 1);
    for f in factors {
        m = f.kronecker(&m);
    }
    m
}

pub fn pauli_matrix(p: &PauliString) -> CMat {
    let factors: Vec<CMat> = p.letters().iter().map(|&l| single(l)).collect();
    embed(&factors) * c(0.0, 1.0).powu(p.phase_power() as u32)
}

/// `exp(-i·angle/2·P)` in closed form, valid because `P² = I`.
pub fn rotation_matrix(p: &PauliString, angle: f64) -> CMat {
    let dim = 1 << p.len();
    CMat::identity(dim, dim) * c((angle / 2.0).cos(), 0.0)
        - pauli_matrix(p) * c(0.0, (angle / 2.0).sin())
}

fn on_qubit(n: usize, q: usize, m: CMat) -> CMat {
    let factors: Vec<CMat> = (0..n)
        .map(|k| if k == q { m.clone() } else { CMat::identity(2, 2) })
        .collect();
    embed(&factors)
}

fn sited(n: usize, sites: &[(usize, PauliOp)]) -> PauliString {
    PauliString::from_sites(n, sites)
}

pub fn gate_matrix(n: usize, g: &GateInstr, params: &[f64]) -> CMat {
    let dim = 1 << n;
    let angle = |k: usize| PI * g.coefficient * params[g.param_slot.unwrap() + k];
    let q = &g.qubits;
    match g.kind {
        GateKind::H => {
            let s = 1.0 / 2f64.sqrt();
            on_qubit(n, q[0], CMat::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]))
        }
        GateKind::CZ => CMat::from_diagonal(&DVector::from_fn(dim, |b, _| {
            if b >> q[0] & 1 == 1 && b >> q[1] & 1 == 1 {
                c(-1.0, 0.0)
            } else {
                c(1.0, 0.0)
            }
        })),
        GateKind::CNOT => CMat::from_fn(dim, dim, |r, col| {
            let img = if col >> q[0] & 1 == 1 { col ^ (1 << q[1]) } else { col };
            if r == img {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        }),
        GateKind::RX => rotation_matrix(&sited(n, &[(q[0], PauliOp::X)]), angle(0)),
        GateKind::RY => rotation_matrix(&sited(n, &[(q[0], PauliOp::Y)]), angle(0)),
        GateKind::RZ => rotation_matrix(&sited(n, &[(q[0], PauliOp::Z)]), angle(0)),
        GateKind::RZZ => rotation_matrix(&sited(n, &[(q[0], PauliOp::Z), (q[1], PauliOp::Z)]), angle(0)),
        GateKind::ROT3 => {
            rotation_matrix(&sited(n, &[(q[0], PauliOp::Z)]), angle(2))
                * rotation_matrix(&sited(n, &[(q[0], PauliOp::Y)]), angle(1))
                * rotation_matrix(&sited(n, &[(q[0], PauliOp::X)]), angle(0))
        }
    }
}

pub fn circuit_matrix(n: usize, gates: &[GateInstr], params: &[f64]) -> CMat {
    gates
        .iter()
        .fold(CMat::identity(1 << n, 1 << n), |acc, g| gate_matrix(n, g, params) * acc)
}

pub fn to_vector(s: &StateVector) -> DVector<Complex64> {
    DVector::from_column_slice(s.amplitudes())
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn spectral_norm(m: &CMat) -> f64 {
    m.clone().singular_values().max()
}

pub fn all_pauli_strings(n: usize) -> Vec<PauliString> {
    (0..1usize << (2 * n))
        .map(|code| {
            PauliString::new((0..n).map(|q| PauliOp::ALL[code >> (2 * q) & 3]).collect())
        })
        .collect()
}

pub fn random_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let p = rng.gen_range(0.0..1.0);
    erdos_renyi(n, p, rng).unwrap()
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_params<R: Rng>(k: usize, scale: f64, rng: &mut R) -> Vec<f64> {
    (0..k).map(|_| rng.gen_range(-scale..scale)).collect()
}

/// Calls `f` on every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(k: usize, p: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, f);
            p.swap(k, i);
        }
    }
    rec(0, &mut (0..n).collect(), &mut f);
}

pub fn brute_hamiltonian_path(g: &Graph) -> bool {
    let mut found = false;
    for_each_permutation(g.n(), |p| {
        found = found || p.windows(2).all(|w| g.has_edge(w[0], w[1]));
    });
    found
}

pub fn brute_hamiltonian_cycle(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let mut found = false;
    for_each_permutation(n, |p| {
        found = found
            || (p[0] == 0 && p.windows(2).all(|w| g.has_edge(w[0], w[1])) && g.has_edge(p[n - 1], p[0]));
    });
    found
}

pub fn brute_bipartite(g: &Graph) -> bool {
    (0..1u32 << g.n()).any(|colors| g.edges().all(|(i, j)| (colors >> i & 1) != (colors >> j & 1)))
}

pub fn brute_connected(g: &Graph) -> bool {
    // union-find
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (i, j) in g.edges() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..g.n()).all(|x| find(&mut parent, x) == root)
}

pub fn scratch_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("permqml-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
