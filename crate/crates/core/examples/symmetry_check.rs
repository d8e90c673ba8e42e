//! How each ansatz responds to relabeling the nodes of its input graph.

use permqml::graph::erdos_renyi;
use permqml::training::predict;
use permqml::AnsatzKind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> permqml::Result<()> {
    let n = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = erdos_renyi(n, 0.5, &mut rng)?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let shift: Vec<usize> = (0..n).map(|q| (q + 1) % n).collect();
    println!("graph {g}, relabeling {perm:?}");
    for kind in AnsatzKind::ALL {
        let c = kind.build_default(n)?;
        let params: Vec<f64> = (0..c.n_params()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let base = predict(&c, &params, &g)?;
        let permuted = predict(&c, &params, &g.relabeled(&perm)?)?;
        let rotated = predict(&c, &params, &g.relabeled(&shift)?)?;
        println!(
            "{:<20} f = {base:+.6}  |Δ| permuted {:.1e}  |Δ| rotated {:.1e}",
            kind.name(),
            (permuted - base).abs(),
            (rotated - base).abs()
        );
    }
    Ok(())
}
