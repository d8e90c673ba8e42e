//! Simple undirected graphs on at most 16 nodes, random generation, exact
//! property oracles, and the dataset/counting/curve utilities built on them.

mod counting;
mod curve;
mod dataset;
mod oracles;

pub use counting::{
    canonical_form, count_unlabeled_graphs, count_unlabeled_graphs_burnside,
    count_unlabeled_graphs_exhaustive, labeled_graph_count,
};
pub use curve::{connectedness_curve, read_curve_csv, write_curve_csv, CurvePoint};
pub use dataset::{generate_balanced_dataset, meta_path, Dataset, DatasetMeta, GraphSample, Label};
pub use oracles::{
    has_hamiltonian_cycle, has_hamiltonian_path, is_bipartite, is_connected, Property,
};

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{invalid, Error, Result};

pub const MAX_NODES: usize = 16;

/// Simple undirected labeled graph. Edge `(i, j)` with `i < j` occupies bit
/// `i*(2n-i-1)/2 + (j-i-1)` of `edges` (row-major upper triangle).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: u128,
}

impl Graph {
    /// Edgeless graph on `n` nodes, `1 <= n <= 16`.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_NODES {
            return Err(Error::UnsupportedSize(n));
        }
        Ok(Self { n, edges: 0 })
    }

    pub fn from_bits(n: usize, edges: u128) -> Result<Self> {
        let g = Self::empty(n)?;
        let pairs = g.pair_count();
        if pairs < 128 && edges >> pairs != 0 {
            return Err(invalid(format!("edge bitset has bits beyond {pairs} pairs")));
        }
        Ok(Self { n, edges })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let g = Self::empty(n)?;
        let pairs = g.pair_count();
        let bits = if pairs == 128 { u128::MAX } else { (1u128 << pairs) - 1 };
        Ok(Self { n, edges: bits })
    }

    pub fn path(n: usize) -> Result<Self> {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &e)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut g = Self::path(n)?;
        if n >= 3 {
            g.add_edge(0, n - 1)?;
        }
        Ok(g)
    }

    /// Star with center 0.
    pub fn star(n: usize) -> Result<Self> {
        let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.edges
    }

    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    fn index(&self, i: usize, j: usize) -> Result<usize> {
        if i >= self.n || j >= self.n || i == j {
            return Err(invalid(format!("bad edge ({i},{j}) for n = {}", self.n)));
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Ok(pair_index(self.n, i, j))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.index(i, j)
            .map(|k| self.edges >> k & 1 == 1)
            .unwrap_or(false)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let k = self.index(i, j)?;
        self.edges |= 1 << k;
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let k = self.index(i, j)?;
        self.edges &= !(1 << k);
        Ok(())
    }

    /// Edges `(i, j)` with `i < j` in bit order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .enumerate()
            .filter(|(k, _)| self.edges >> k & 1 == 1)
            .map(|(_, e)| e)
    }

    /// Neighbor bitmask per node.
    pub fn adjacency(&self) -> Vec<u16> {
        let mut adj = vec![0u16; self.n];
        for (i, j) in self.edges() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    /// Relabeled copy: node `i` becomes node `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph> {
        if !is_permutation(perm, self.n) {
            return Err(invalid("relabeling is not a permutation of the nodes"));
        }
        let mut g = Graph::empty(self.n)?;
        for (i, j) in self.edges() {
            g.add_edge(perm[i], perm[j])?;
        }
        Ok(g)
    }
}

pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub(crate) fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = 0u32;
    perm.iter().all(|&p| {
        let fresh = p < n && seen >> p & 1 == 0;
        seen |= 1 << p.min(31);
        fresh
    })
}

/// Edge list as `i-j` pairs joined by `;`.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j) in self.edges() {
            if !first {
                f.write_str(";")?;
            }
            write!(f, "{i}-{j}")?;
            first = false;
        }
        Ok(())
    }
}

impl Graph {
    /// Parses the `i-j;k-l` edge list written by `Display`.
    pub fn parse_edges(n: usize, s: &str) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for tok in s.split(';').filter(|t| !t.is_empty()) {
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad edge token {tok:?}")))?;
            let a = usize::from_str(a).map_err(|_| Error::Parse(format!("bad node in {tok:?}")))?;
            let b = usize::from_str(b).map_err(|_| Error::Parse(format!("bad node in {tok:?}")))?;
            if a >= b {
                return Err(Error::Parse(format!("edge {tok:?} must satisfy i < j")));
            }
            g.add_edge(a, b)?;
        }
        Ok(g)
    }
}

/// Erdős–Rényi `G(n, p)`: each pair is joined independently with probability `p`.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    let mut g = Graph::empty(n)?;
    for k in 0..g.pair_count() {
        if rng.gen::<f64>() < p {
            g.edges |= 1 << k;
        }
    }
    Ok(g)
}
