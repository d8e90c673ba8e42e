//! Property oracles on named graphs, and a balanced labeled dataset.

use permqml::graph::generate_balanced_dataset;
use permqml::{Graph, Property};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> permqml::Result<()> {
    let graphs = [
        ("K_6", Graph::complete(6)?),
        ("P_6", Graph::path(6)?),
        ("C_6", Graph::cycle(6)?),
        ("C_5", Graph::cycle(5)?),
        ("star K_1,5", Graph::star(6)?),
        ("two triangles", Graph::parse_edges(6, "0-1;1-2;0-2;3-4;4-5;3-5")?),
    ];
    print!("{:<14}", "graph");
    for p in Property::ALL {
        print!("{:>18}", p.name());
    }
    println!();
    for (name, g) in &graphs {
        print!("{name:<14}");
        for p in Property::ALL {
            print!("{:>18}", p.holds(g));
        }
        println!();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ds = generate_balanced_dataset(Property::HamiltonianCycle, 7, 200, &mut rng)?;
    let (pos, neg) = ds.class_counts();
    println!("hamiltonian_cycle dataset at n=7: {pos} positive, {neg} negative");
    for s in ds.samples.iter().take(3) {
        println!("  {:>2} {}", s.label.as_i8(), s.graph);
    }
    Ok(())
}
