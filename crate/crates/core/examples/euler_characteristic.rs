//! Euler characteristics (with `D = 0`) from the closed form and from `∫ ξ^K c_m(T)`.
//!
//! `cargo run --example euler_characteristic`

use moduli_topology::{moduli, ModuliParams};

fn main() -> moduli_topology::Result<()> {
    println!(
        "{:>3} {:>3} {:>3} {:>4} {:>10} {:>10}",
        "g", "N", "d", "m", "closed", "integral"
    );
    for g in 1..=3 {
        for n in 1..=3 {
            for d in 0..=3 {
                let p = ModuliParams::new(g, n, 0, d)?;
                if p.dimension() < 0 {
                    continue;
                }
                println!(
                    "{g:>3} {n:>3} {d:>3} {:>4} {:>10} {:>10}",
                    p.dimension(),
                    moduli::euler_closed_form(&p),
                    moduli::euler_integral(&p)?
                );
            }
        }
    }
    Ok(())
}
