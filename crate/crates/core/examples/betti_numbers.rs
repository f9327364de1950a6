//! Betti numbers, including both middle-degree formulas.
//!
//! `cargo run --example betti_numbers`

use moduli_topology::moduli::{self, MiddleBetti};
use moduli_topology::ModuliParams;

fn main() -> moduli_topology::Result<()> {
    for (g, n, dd, d) in [
        (1, 2, 0, 0),
        (2, 2, 0, 1),
        (2, 1, 0, 2),
        (3, 2, 1, 2),
        (3, 3, -1, 3),
    ] {
        let p = ModuliParams::new(g, n, dd, d)?;
        let betti = moduli::betti_table(&p)?;
        let inclusive = moduli::middle_betti(&p, MiddleBetti::InclusiveSum);
        println!(
            "(g={g}, N={n}, D={dd}, d={d})  m = {}  χ = {}  b = {:?}  (sum to j = m would give b_m = {inclusive})",
            p.dimension(),
            moduli::euler_characteristic(&p)?,
            betti.values().iter().map(ToString::to_string).collect::<Vec<_>>(),
        );
    }
    Ok(())
}
