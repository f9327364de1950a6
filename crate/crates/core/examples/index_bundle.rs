//! Families index of the Dolbeault operators `∂̄` on `L ⊗ E` as `L` runs over
//! `Pic^d`: the Chern character is computed in `H*(X × J)` and compared with
//! the closed form `R - NΘ`.
//!
//! `cargo run --example index_bundle -- 2 3 1 2`   (g N D d)

use moduli_topology::index::chern_index;
use moduli_topology::ModuliParams;

fn main() -> moduli_topology::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let [g, n, dd, d] = match args[..] {
        [g, n, dd, d] => [g, n, dd, d],
        _ => [2, 3, 1, 2],
    };
    let params = ModuliParams::new(g as u32, n as u32, dd, d)?;
    let data = chern_index(&params)?;
    println!("g = {g}, N = {n}, D = {dd}, d = {d}");
    println!("rank R     = {}", data.rank);
    println!("ch(ind)    = {}", data.chern_character);
    println!("c(ind)     = {}", data.total_chern);
    Ok(())
}
