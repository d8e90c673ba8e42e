//! Labeled and unlabeled simple graphs by node count.

use permqml::graph::{count_unlabeled_graphs, count_unlabeled_graphs_burnside, labeled_graph_count};

fn main() -> permqml::Result<()> {
    println!("{:>2} {:>12} {:>10} {:>10}", "n", "labeled", "unlabeled", "burnside");
    for n in 1..=8 {
        let enumerated = if n <= 7 {
            count_unlabeled_graphs(n)?.to_string()
        } else {
            "-".to_string()
        };
        println!(
            "{n:>2} {:>12} {enumerated:>10} {:>10}",
            labeled_graph_count(n),
            count_unlabeled_graphs_burnside(n)?
        );
    }
    Ok(())
}
