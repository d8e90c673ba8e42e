//! Pauli-string algebra and generator orbits under S_n and C_n.

use permqml::pauli::{is_mutually_commuting, orbit, PauliOp, SymmetryGroup};
use permqml::PauliString;

fn main() -> permqml::Result<()> {
    let x: PauliString = "X".parse()?;
    let y: PauliString = "Y".parse()?;
    println!("X * Y = {}", x.multiply(&y)?);
    let xx: PauliString = "XX".parse()?;
    let zz: PauliString = "ZZ".parse()?;
    println!("XX commutes with ZZ: {}", xx.commutes(&zz)?);

    let n = 8;
    let pair = PauliString::from_sites(n, &[(0, PauliOp::Z), (1, PauliOp::Z)]);
    let skip = PauliString::from_sites(n, &[(0, PauliOp::Z), (2, PauliOp::Z)]);
    for (label, generator, group) in [
        ("ZZ nearest, S_8", &pair, SymmetryGroup::full(n)),
        ("ZZ nearest, C_8", &pair, SymmetryGroup::cyclic(n)),
        ("ZZ distance 2, C_8", &skip, SymmetryGroup::cyclic(n)),
    ] {
        let o = orbit(generator, group)?;
        println!(
            "{label}: {} strings, multiplicity {}, commuting {}",
            o.len(),
            o.multiplicity,
            is_mutually_commuting(&o.elements)
        );
    }
    let small = orbit(&PauliString::from_sites(4, &[(0, PauliOp::Z), (2, PauliOp::Z)]), SymmetryGroup::cyclic(4))?;
    let shown: Vec<String> = small.elements.iter().map(|p| p.to_string()).collect();
    println!("C_4 distance-2 orbit: {}", shown.join(" "));
    Ok(())
}
