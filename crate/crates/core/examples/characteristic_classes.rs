//! Chern classes, Chern characters, Todd classes, twists and exterior powers
//! of virtual bundles in the polynomial model `Q[Θ, ξ]`.
//!
//! `cargo run --example characteristic_classes`

use moduli_topology::charclass::{
    character_from_chern, chern_classes, chern_from_character, dualize, lambda_power_character,
    todd_class, twist_total_chern, VirtualBundle,
};
use moduli_topology::surface::ThetaXiModel;
use moduli_topology::{GradedClass, Rational};

fn main() -> moduli_topology::Result<()> {
    let model = ThetaXiModel::new(2, 4)?;
    let (theta, xi) = (model.theta(), model.xi());

    // V = 3 - 2Θ: the index bundle of a rank-2 family with R = 3
    let ch = &GradedClass::from_integer(model.ring(), 3)
        - &theta.scale(&Rational::from_integer(2.into()));
    let v = VirtualBundle::new(3, ch)?;
    for (k, c) in chern_classes(&v).iter().enumerate().take(3) {
        println!("c_{k}(V) = {c}");
    }
    let back = character_from_chern(&chern_from_character(&v), 3)?;
    assert_eq!(back, v);

    println!("Td(V)       = {}", todd_class(&v));
    println!("c(O(1) ⊗ V) = {}", twist_total_chern(&xi, &v)?);

    let line = VirtualBundle::line_bundle(&xi)?;
    let tangent = line.tensor(&v)?;
    let cotangent = dualize(&tangent);
    for p in 0..=2 {
        println!(
            "ch Λ^{p} T* = {}",
            lambda_power_character(&cotangent, p).chern_character()
        );
    }
    Ok(())
}
