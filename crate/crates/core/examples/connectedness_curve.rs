//! Monte-Carlo probability that G(n, p) is connected.

use permqml::experiments::unit_grid;
use permqml::graph::connectedness_curve;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> permqml::Result<()> {
    let n = 8;
    let points = connectedness_curve(n, &unit_grid(21), 1000, &mut ChaCha8Rng::seed_from_u64(42))?;
    println!("ln(n)/n = {:.3}", (n as f64).ln() / n as f64);
    for pt in points {
        let bar = "#".repeat((pt.connectedness * 50.0).round() as usize);
        println!("p={:.2} {:>6.3} {bar}", pt.p, pt.connectedness);
    }
    Ok(())
}
