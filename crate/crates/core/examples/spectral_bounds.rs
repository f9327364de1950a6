//! Degeneracy-locus connectedness bound and spectral-cover numerology.
//!
//! `cargo run --example spectral_bounds`

use moduli_topology::{moduli, ModuliParams};

fn main() -> moduli_topology::Result<()> {
    for (g, n, dd, d) in [(2, 2, 0, 1), (3, 2, 1, 2), (4, 3, -2, 3)] {
        let p = ModuliParams::new(g, n, dd, d)?;
        let s = moduli::spectral_numerology(&p);
        println!(
            "(g={g}, N={n}, D={dd}, d={d}, K={})  dim = {}  bound = {}  δ = {}  g_Y = {}  consistent = {}",
            p.stabilization(),
            p.dimension(),
            moduli::fl_bound(&p)?,
            s.delta,
            s.genus_y,
            s.dim_consistency
        );
    }
    Ok(())
}
