//! Graph-state encoding and its stabilizers.

use permqml::statevector::{graph_stabilizer, prepare_graph_state};
use permqml::Graph;

fn main() -> permqml::Result<()> {
    let g = Graph::parse_edges(4, "0-1;1-2;2-3;0-3")?;
    let state = prepare_graph_state(&g)?;
    for node in 0..g.n() {
        let s = graph_stabilizer(&g, node);
        println!("<{s}> = {:+.12}", state.expectation_pauli(&s)?);
    }
    println!("mean Z = {:+.3}", state.expectation_mean_z());
    state.write_csv(std::io::stdout().lock())?;
    Ok(())
}
