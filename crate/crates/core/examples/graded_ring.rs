//! The graded-commutative ring `H*(X × J)` of a genus-2 curve times its
//! Jacobian: Koszul signs, the Poincaré class, and top-degree integrals on `J`.
//!
//! `cargo run --example graded_ring`

use moduli_topology::index::poincare_c1;
use moduli_topology::surface::make_product_model;
use moduli_topology::Rational;

fn main() -> moduli_topology::Result<()> {
    let p = make_product_model(2)?;
    let (alpha, a) = (p.alpha(1), p.a(1));

    // odd classes anticommute and square to zero
    println!("alpha_1 a_1 = {}", &alpha * &a);
    println!("a_1 alpha_1 = {}", &a * &alpha);
    println!("a_1^2       = {}", a.pow(2));

    // on the curve, alpha_i beta_i is the point class
    println!("alpha_1 beta_1 = {}", &alpha * &p.beta(1));

    // the mixed part of c_1 of the Poincaré bundle squares to -2 Θ σ
    let mixed = poincare_c1(&p, 0);
    println!("c_1 (degree 0)  = {mixed}");
    println!("c_1^2           = {}", mixed.pow(2));
    assert_eq!(
        mixed.pow(2),
        (&p.theta() * &p.sigma()).scale(&Rational::from_integer((-2).into()))
    );

    let jac = p.jacobian();
    for k in 0..=2 {
        println!("∫_J Θ^{k} = {}", jac.integrate(&jac.theta().pow(k))?);
    }
    Ok(())
}
