//! Hodge numbers `h^{p,q}` (row `p`, column `q`) of a moduli space, with the middle row from
//! Hirzebruch-Riemann-Roch.
//!
//! `cargo run --example hodge_numbers -- 3 2 1 2`   (g N D d)

use moduli_topology::{moduli, ModuliParams};

fn main() -> moduli_topology::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let [g, n, dd, d] = match args[..] {
        [g, n, dd, d] => [g, n, dd, d],
        _ => [3, 2, 1, 2],
    };
    let p = ModuliParams::new(g as u32, n as u32, dd, d)?;
    let chi = moduli::holomorphic_euler_characteristics(&p)?;
    println!(
        "χ(Ω^p) = {:?}",
        chi.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    let table = moduli::hodge_table(&p)?;
    for row in table.rows() {
        let cells: Vec<String> = row.iter().map(|h| format!("{h:>5}")).collect();
        println!("{}", cells.concat());
    }
    Ok(())
}
