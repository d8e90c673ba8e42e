use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::Error;

/// Graph property being classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Connected,
    Bipartite,
    HamiltonianCycle,
    HamiltonianPath,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Connected,
        Property::Bipartite,
        Property::HamiltonianCycle,
        Property::HamiltonianPath,
    ];

    pub fn holds(self, g: &Graph) -> bool {
        match self {
            Property::Connected => is_connected(g),
            Property::Bipartite => is_bipartite(g),
            Property::HamiltonianCycle => has_hamiltonian_cycle(g),
            Property::HamiltonianPath => has_hamiltonian_path(g),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::Connected => "connected",
            Property::Bipartite => "bipartite",
            Property::HamiltonianCycle => "hamiltonian_cycle",
            Property::HamiltonianPath => "hamiltonian_path",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown property {s:?}")))
    }
}

/// Single search from node 0 reaches every node.
pub fn is_connected(g: &Graph) -> bool {
    let adj = g.adjacency();
    let full = full_mask(g.n());
    let mut seen: u32 = 1;
    let mut frontier: u32 = 1;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v] as u32;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

/// Two-colors every component by BFS layering; fails on a same-color edge.
pub fn is_bipartite(g: &Graph) -> bool {
    let adj = g.adjacency();
    let n = g.n();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].unwrap();
            for w in (0..n).filter(|&w| adj[v] >> w & 1 == 1) {
                match color[w] {
                    None => {
                        color[w] = Some(!cv);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Held–Karp over vertex subsets. `reach[mask]` is the set of endpoints `v`
/// such that some path covering exactly `mask` ends at `v`, with the
/// starting points given by `init`.
fn path_endpoints(adj: &[u16], init: impl Iterator<Item = usize>) -> Vec<u16> {
    let n = adj.len();
    let mut reach = vec![0u16; 1 << n];
    for v in init {
        reach[1 << v] |= 1 << v;
    }
    for mask in 1..(1usize << n) {
        let mut ends = reach[mask];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = adj[v] & !(mask as u16);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    reach
}

/// Closed walk through every node exactly once. Always false for `n < 3`.
pub fn has_hamiltonian_cycle(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let adj = g.adjacency();
    let reach = path_endpoints(&adj, std::iter::once(0));
    reach[(1 << n) - 1] & adj[0] != 0
}

/// Open walk through every node exactly once. True for `n = 1`.
pub fn has_hamiltonian_path(g: &Graph) -> bool {
    let n = g.n();
    let adj = g.adjacency();
    let reach = path_endpoints(&adj, 0..n);
    reach[(1 << n) - 1] != 0
}

fn full_mask(n: usize) -> u32 {
    (1u32 << n) - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&Graph::complete(8).unwrap()));
        assert!(!is_connected(&Graph::empty(8).unwrap()));
        assert!(is_connected(&Graph::empty(1).unwrap()));
        let two_triangles = g(8, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (5, 6), (6, 7)]);
        assert!(!is_connected(&two_triangles));
    }

    #[test]
    fn bipartiteness() {
        assert!(is_bipartite(&Graph::cycle(8).unwrap()));
        assert!(!is_bipartite(&Graph::cycle(5).unwrap()));
        assert!(is_bipartite(&Graph::empty(5).unwrap()));
        // odd cycle hidden in a second component
        assert!(!is_bipartite(&g(6, &[(0, 1), (2, 3), (3, 4), (2, 4)])));
    }

    #[test]
    fn hamiltonian_examples() {
        assert!(has_hamiltonian_cycle(&Graph::complete(8).unwrap()));
        assert!(!has_hamiltonian_cycle(&Graph::path(8).unwrap()));
        assert!(has_hamiltonian_cycle(&Graph::cycle(3).unwrap()));
        assert!(!has_hamiltonian_cycle(&Graph::complete(2).unwrap()));
        assert!(has_hamiltonian_path(&Graph::path(8).unwrap()));
        assert!(!has_hamiltonian_path(&Graph::star(8).unwrap()));
        assert!(has_hamiltonian_path(&Graph::empty(1).unwrap()));
        assert!(!has_hamiltonian_path(&Graph::empty(2).unwrap()));
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("planar".parse::<Property>().is_err());
    }
}
