//! For `N = 1` the moduli space is the symmetric product `Sym^{d+D} X`; its
//! Betti numbers agree with the Macdonald generating function.
//!
//! `cargo run --example macdonald`

use moduli_topology::{moduli, ModuliParams};

fn main() -> moduli_topology::Result<()> {
    let g = 2;
    for n in 0..=5 {
        let oracle = moduli::macdonald_oracle(g, n);
        let betti = moduli::betti_table(&ModuliParams::new(g, 1, 0, n as i64)?)?;
        assert_eq!(betti.values(), &oracle[..]);
        let poly: Vec<String> = oracle
            .iter()
            .enumerate()
            .map(|(r, b)| format!("{b}t^{r}"))
            .collect();
        println!("P(Sym^{n} X_{g}) = {}", poly.join(" + "));
    }
    Ok(())
}
