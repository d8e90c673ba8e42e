use super::{pair_index, Graph};
use crate::error::{Error, Result};
use crate::util::{next_permutation, permutations};

/// `2^(n(n-1)/2)` labeled simple graphs on `n` nodes.
pub fn labeled_graph_count(n: usize) -> u128 {
    1u128 << (n * n.saturating_sub(1) / 2)
}

/// For each permutation, the image of every edge bit.
fn edge_maps(n: usize) -> Vec<Vec<u8>> {
    permutations(n).iter().map(|p| edge_map(n, p)).collect()
}

fn edge_map(n: usize, perm: &[usize]) -> Vec<u8> {
    let mut map = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
            map.push(pair_index(n, a, b) as u8);
        }
    }
    map
}

fn apply_map(map: &[u8], mut bits: u128) -> u128 {
    let mut out = 0u128;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1 << map[k];
    }
    out
}

/// Minimum edge bitset over all `n!` relabelings. Exponential in `n`; meant
/// for `n <= 8`.
pub fn canonical_form(g: &Graph) -> Result<u128> {
    if g.n() > 8 {
        return Err(Error::UnsupportedSize(g.n()));
    }
    Ok(edge_maps(g.n())
        .iter()
        .map(|m| apply_map(m, g.bits()))
        .min()
        .unwrap())
}

/// Number of isomorphism classes of simple graphs on `n <= 7` nodes, by
/// enumerating every labeled graph.
pub fn count_unlabeled_graphs(n: usize) -> Result<u64> {
    if n > 7 {
        return Err(Error::UnsupportedSize(n));
    }
    Ok(count_by_enumeration(n))
}

/// As [`count_unlabeled_graphs`] but also accepts `n = 8` (2^28 labeled
/// graphs; takes minutes in release builds).
pub fn count_unlabeled_graphs_exhaustive(n: usize) -> Result<u64> {
    if n > 8 {
        return Err(Error::UnsupportedSize(n));
    }
    Ok(count_by_enumeration(n))
}

/// Scans labeled graphs in increasing bitset order. The first unvisited
/// bitset is the minimum of its class, i.e. its canonical form; marking all
/// its relabelings means each class is counted once.
fn count_by_enumeration(n: usize) -> u64 {
    if n <= 1 {
        return 1;
    }
    let total = 1usize << (n * (n - 1) / 2);
    let maps = edge_maps(n);
    let mut visited = vec![0u64; total.div_ceil(64)];
    let mut classes = 0;
    for g in 0..total {
        if visited[g / 64] >> (g % 64) & 1 == 1 {
            continue;
        }
        classes += 1;
        for m in &maps {
            let img = apply_map(m, g as u128) as usize;
            visited[img / 64] |= 1 << (img % 64);
        }
    }
    classes
}

/// Burnside count: the mean over `S_n` of `2^(cycles of π on node pairs)`.
/// Independent of [`count_unlabeled_graphs`]; exact for `n <= 10`.
pub fn count_unlabeled_graphs_burnside(n: usize) -> Result<u64> {
    if n > 10 {
        return Err(Error::UnsupportedSize(n));
    }
    if n <= 1 {
        return Ok(1);
    }
    let pairs = n * (n - 1) / 2;
    let mut sum: u128 = 0;
    let mut count: u128 = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let map = edge_map(n, &perm);
        let mut seen = vec![false; pairs];
        let mut cycles = 0;
        for start in 0..pairs {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = map[k] as usize;
            }
        }
        sum += 1u128 << cycles;
        count += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok((sum / count) as u64)
}
