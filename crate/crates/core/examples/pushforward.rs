//! Pushforward along `P(U) -> J` computed twice: from the closed form and by
//! reducing with the Leray-Hirsch relation.
//!
//! `cargo run --example pushforward`

use moduli_topology::projective::ProjectiveBundle;

fn main() -> moduli_topology::Result<()> {
    // genus 3, N = 2, R = 1, K = 4: U has rank 5 and P(U) has fibers P^4
    let bundle = ProjectiveBundle::new(3, 2, 1, 4)?;
    let fiber = bundle.fiber_rank() - 1;
    for r in 0..=3 {
        let class = bundle.xi_power(fiber + r);
        let closed = bundle.pushforward_xi(fiber + r);
        let reduced = class.pushforward_by_reduction();
        let fmt = |p: &[moduli_topology::Rational]| {
            p.iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| format!("{c}·Θ^{i}"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        println!("p_*(ξ^{}) = {}", fiber + r, fmt(&closed));
        assert_eq!(closed, reduced);
        println!("  ∫ ξ^{} = {}", fiber + r, class.integrate()?);
    }
    Ok(())
}
