//! Parameter budgets of every ansatz and a circuit IR dump.

use permqml::AnsatzKind;

fn main() -> permqml::Result<()> {
    let n = std::env::args().nth(1).map_or(Ok(8), |s| s.parse()).expect("qubit count");
    for kind in AnsatzKind::ALL {
        let c = kind.build_default(n)?;
        println!(
            "{:<20} layers {:>2}  slots {:>3}  gates {:>4}",
            kind.name(),
            kind.default_layers(),
            c.n_params(),
            c.gates().len()
        );
    }
    println!("\nsn_invariant, 2 qubits, 1 layer:");
    print!("{}", AnsatzKind::SnInvariant.build(2, 1)?.dump());
    println!("\nstrongly_entangling, 3 qubits, 2 layers:");
    print!("{}", AnsatzKind::StronglyEntangling.build(3, 2)?.dump());
    Ok(())
}
