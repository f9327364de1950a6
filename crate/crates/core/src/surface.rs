//! Cohomology rings of a genus-`g` curve `X`, its Jacobian `J`, the product
//! `X × J`, and the polynomial model `Q[Θ, ξ]` used over the projectivized
//! index bundle.
//!
//! `H*(X)` is the `2g + 2` dimensional ring spanned by `1, α_i, β_i, σ` with
//! `α_i β_j = δ_ij σ`; `H*(J)` is the full exterior algebra on `a_i, b_i`. In
//! the product, generators are ordered `α_1, β_1, …, α_g, β_g, σ, a_1, b_1, …`,
//! so a class of the form `σ ⊗ v` is stored with `σ` first and fiber
//! integration over `X` just strips `σ`.

use std::sync::Arc;

use num_traits::Zero;

use crate::combinatorics::{factorial, Rational};
use crate::error::{Error, Result};
use crate::ring::{Generator, GradedClass, Monomial, Relation, RingModel};

/// Largest genus for which the full `X × J` product model is built.
pub const MAX_PRODUCT_GENUS: u32 = 6;
/// Largest genus for the exterior-algebra model of `H*(J)`.
pub const MAX_JACOBIAN_GENUS: u32 = 24;

fn check_genus(g: u32, cap: u32) -> Result<()> {
    if g == 0 {
        return Err(Error::invalid("genus must be at least 1"));
    }
    if g > cap {
        return Err(Error::invalid(format!(
            "genus {g} exceeds the supported cap {cap}"
        )));
    }
    Ok(())
}

/// Generators and relations of `H*(X)`, starting at generator index `offset`.
fn curve_part(g: u32, offset: usize) -> (Vec<Generator>, Vec<Relation>) {
    let mut gens = Vec::new();
    for i in 1..=g {
        gens.push(Generator::new(format!("alpha{i}"), 1));
        gens.push(Generator::new(format!("beta{i}"), 1));
    }
    gens.push(Generator::new("sigma", 2));
    let sigma = offset + 2 * g as usize;
    let odd = 2 * g as usize;
    let mut rels = Vec::new();
    for p in 0..odd {
        for q in p + 1..odd {
            // alpha_i beta_i = sigma; every other pair of degree-1 classes vanishes
            let target = (p % 2 == 0 && q == p + 1).then_some(sigma);
            rels.push(Relation::Contract {
                first: offset + p,
                second: offset + q,
                target,
            });
        }
    }
    rels.push(Relation::FactorTop {
        generators: (offset..=sigma).collect(),
        top_degree: 2,
    });
    (gens, rels)
}

fn jacobian_generators(g: u32) -> Vec<Generator> {
    let mut gens = Vec::new();
    for i in 1..=g {
        gens.push(Generator::new(format!("a{i}"), 1));
        gens.push(Generator::new(format!("b{i}"), 1));
    }
    gens
}

/// `H*(X)` for a genus-`g` curve.
pub fn curve_model(g: u32) -> Result<Arc<RingModel>> {
    check_genus(g, MAX_JACOBIAN_GENUS)?;
    let (gens, rels) = curve_part(g, 0);
    Ok(Arc::new(RingModel::new(
        format!("H*(X_{g})"),
        gens,
        rels,
        2,
    )?))
}

/// `H*(J)` as the exterior algebra on `a_1, b_1, …, a_g, b_g`.
#[derive(Clone, Debug)]
pub struct JacobianModel {
    ring: Arc<RingModel>,
    genus: u32,
}

impl JacobianModel {
    pub fn new(g: u32) -> Result<Self> {
        check_genus(g, MAX_JACOBIAN_GENUS)?;
        let ring = RingModel::new(format!("H*(J_{g})"), jacobian_generators(g), vec![], 2 * g)?;
        Ok(JacobianModel {
            ring: Arc::new(ring),
            genus: g,
        })
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn a(&self, i: u32) -> GradedClass {
        GradedClass::generator(&self.ring, 2 * (i as usize - 1))
    }

    pub fn b(&self, i: u32) -> GradedClass {
        GradedClass::generator(&self.ring, 2 * (i as usize - 1) + 1)
    }

    /// The polarization `Θ = Σ a_i b_i`.
    pub fn theta(&self) -> GradedClass {
        let mut t = GradedClass::zero(&self.ring);
        for i in 1..=self.genus {
            t += &(&self.a(i) * &self.b(i));
        }
        t
    }

    /// `a_1 b_1 a_2 b_2 … a_k b_k`, the canonical representative of `Θ^k / k!`
    /// restricted to its first `k` pairs.
    fn leading_pairs(&self, k: u32) -> Monomial {
        let mask = if k == 0 { 0 } else { (1u64 << (2 * k)) - 1 };
        let odd: Vec<usize> = (0..64).filter(|i| mask & (1 << i) != 0).collect();
        self.ring
            .monomial(&odd, &[])
            .expect("pair products are nonzero")
            .1
    }

    /// Integral over `J`: the coefficient of `a_1 b_1 … a_g b_g`.
    pub fn integrate(&self, u: &GradedClass) -> Result<Rational> {
        if u.model().as_ref() != self.ring.as_ref() {
            return Err(Error::ModelMismatch);
        }
        Ok(u.coefficient(&self.leading_pairs(self.genus)))
    }

    /// `Σ_k c_k Θ^k` as a class.
    pub fn from_theta_polynomial(&self, coeffs: &[Rational]) -> GradedClass {
        let theta = self.theta();
        let mut out = GradedClass::zero(&self.ring);
        let mut power = GradedClass::one(&self.ring);
        for c in coeffs {
            out += &power.scale(c);
            power = &power * &theta;
        }
        out
    }

    /// Writes `u` as a polynomial in `Θ` of length `g + 1`, or `None` if `u`
    /// is not in the subalgebra generated by `Θ`.
    pub fn theta_polynomial(&self, u: &GradedClass) -> Option<Vec<Rational>> {
        if u.model().as_ref() != self.ring.as_ref() {
            return None;
        }
        let coeffs: Vec<Rational> = (0..=self.genus)
            .map(|k| {
                u.coefficient(&self.leading_pairs(k)) / Rational::from_integer(factorial(k as u64))
            })
            .collect();
        (self.from_theta_polynomial(&coeffs) == *u).then_some(coeffs)
    }
}

/// `H*(X × J)` with Koszul signs across the tensor product.
#[derive(Clone, Debug)]
pub struct ProductModel {
    ring: Arc<RingModel>,
    jacobian: JacobianModel,
    genus: u32,
}

/// Builds the product model for a genus-`g` curve.
pub fn make_product_model(g: u32) -> Result<ProductModel> {
    check_genus(g, MAX_PRODUCT_GENUS)?;
    let (mut gens, rels) = curve_part(g, 0);
    gens.extend(jacobian_generators(g));
    let ring = RingModel::new(format!("H*(X_{g} x J_{g})"), gens, rels, 2 + 2 * g)?;
    Ok(ProductModel {
        ring: Arc::new(ring),
        jacobian: JacobianModel::new(g)?,
        genus: g,
    })
}

impl ProductModel {
    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn jacobian(&self) -> &JacobianModel {
        &self.jacobian
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    fn sigma_index(&self) -> usize {
        2 * self.genus as usize
    }

    fn jacobian_offset(&self) -> usize {
        2 * self.genus as usize + 1
    }

    pub fn alpha(&self, i: u32) -> GradedClass {
        GradedClass::generator(&self.ring, 2 * (i as usize - 1))
    }

    pub fn beta(&self, i: u32) -> GradedClass {
        GradedClass::generator(&self.ring, 2 * (i as usize - 1) + 1)
    }

    pub fn sigma(&self) -> GradedClass {
        GradedClass::generator(&self.ring, self.sigma_index())
    }

    pub fn a(&self, i: u32) -> GradedClass {
        GradedClass::generator(&self.ring, self.jacobian_offset() + 2 * (i as usize - 1))
    }

    pub fn b(&self, i: u32) -> GradedClass {
        GradedClass::generator(
            &self.ring,
            self.jacobian_offset() + 2 * (i as usize - 1) + 1,
        )
    }

    pub fn theta(&self) -> GradedClass {
        let mut t = GradedClass::zero(&self.ring);
        for i in 1..=self.genus {
            t += &(&self.a(i) * &self.b(i));
        }
        t
    }

    /// Pulls back a class from `J`.
    pub fn from_jacobian(&self, v: &GradedClass) -> Result<GradedClass> {
        if v.model().as_ref() != self.jacobian.ring().as_ref() {
            return Err(Error::ModelMismatch);
        }
        let offset = self.jacobian_offset();
        let mut out = GradedClass::zero(&self.ring);
        for (m, c) in v.terms() {
            let odd: Vec<usize> = (0..64)
                .filter(|i| m.odd_mask() & (1u64 << i) != 0)
                .map(|i| i + offset)
                .collect();
            out += &GradedClass::monomial(&self.ring, c.clone(), &odd, &[]);
        }
        Ok(out)
    }

    /// Slant product with `[X]`: keeps the `σ ⊗ v` terms and returns `Σ v`.
    pub fn integrate_fiber_x(&self, u: &GradedClass) -> Result<GradedClass> {
        if u.model().as_ref() != self.ring.as_ref() {
            return Err(Error::ModelMismatch);
        }
        let offset = self.jacobian_offset();
        let curve_odd = (1u64 << (2 * self.genus)) - 1;
        let mut out = GradedClass::zero(self.jacobian.ring());
        for (m, c) in u.terms() {
            // sigma is the only even generator of the product model
            if m.even_exponents()[0] != 1 || m.odd_mask() & curve_odd != 0 {
                continue;
            }
            let jac_mask = m.odd_mask() >> offset;
            let odd: Vec<usize> = (0..64 - offset)
                .filter(|i| jac_mask & (1u64 << i) != 0)
                .collect();
            out += &GradedClass::monomial(self.jacobian.ring(), c.clone(), &odd, &[]);
        }
        Ok(out)
    }
}

/// `Q[Θ, ξ] / (Θ^{g+1})` truncated above complex degree `top`.
#[derive(Clone, Debug)]
pub struct ThetaXiModel {
    ring: Arc<RingModel>,
    genus: u32,
    top: u32,
}

pub const THETA: usize = 0;
pub const XI: usize = 1;

impl ThetaXiModel {
    pub fn new(g: u32, top_complex_degree: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::invalid("genus must be at least 1"));
        }
        let order = u16::try_from(g + 1).map_err(|_| Error::invalid("genus too large"))?;
        let ring = RingModel::new(
            format!("Q[Theta,xi]_{g}/{top_complex_degree}"),
            vec![Generator::new("Theta", 2), Generator::new("xi", 2)],
            vec![Relation::Nilpotent {
                generator: THETA,
                order,
            }],
            2 * top_complex_degree,
        )?;
        Ok(ThetaXiModel {
            ring: Arc::new(ring),
            genus: g,
            top: top_complex_degree,
        })
    }

    pub fn ring(&self) -> &Arc<RingModel> {
        &self.ring
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn top_complex_degree(&self) -> u32 {
        self.top
    }

    pub fn theta(&self) -> GradedClass {
        GradedClass::generator(&self.ring, THETA)
    }

    pub fn xi(&self) -> GradedClass {
        GradedClass::generator(&self.ring, XI)
    }

    /// `Σ_k c_k Θ^k`.
    pub fn theta_polynomial(&self, coeffs: &[Rational]) -> GradedClass {
        let mut out = GradedClass::zero(&self.ring);
        for (k, c) in coeffs.iter().enumerate() {
            out += &GradedClass::monomial(&self.ring, c.clone(), &[], &[(THETA, k as u16)]);
        }
        out
    }

    /// Coefficient of `Θ^a ξ^b`.
    pub fn coefficient(&self, u: &GradedClass, theta_exp: u16, xi_exp: u16) -> Rational {
        match self.ring.monomial(&[], &[(THETA, theta_exp), (XI, xi_exp)]) {
            Some((_, m)) => u.coefficient(&m),
            None => Rational::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rat;

    #[test]
    fn curve_cup_products() {
        let p = make_product_model(1).unwrap();
        assert_eq!(&p.alpha(1) * &p.beta(1), p.sigma());
        assert_eq!(&p.beta(1) * &p.alpha(1), -&p.sigma());
        assert!((&p.alpha(1) * &p.alpha(1)).is_zero());
        assert!((&p.sigma() * &p.alpha(1)).is_zero());
        let p2 = make_product_model(2).unwrap();
        assert!((&p2.alpha(1) * &p2.beta(2)).is_zero());
        assert!((&p2.alpha(1) * &p2.alpha(2)).is_zero());
        assert_eq!(&p2.alpha(2) * &p2.beta(2), p2.sigma());
    }

    #[test]
    fn curve_model_alone() {
        let x = curve_model(2).unwrap();
        let a1 = GradedClass::named(&x, "alpha1").unwrap();
        let b1 = GradedClass::named(&x, "beta1").unwrap();
        let s = GradedClass::named(&x, "sigma").unwrap();
        assert_eq!(&a1 * &b1, s);
        assert!((&s * &s).is_zero());
    }

    #[test]
    fn theta_square_genus_two() {
        let j = JacobianModel::new(2).unwrap();
        let theta = j.theta();
        let top = &(&j.a(1) * &j.b(1)) * &(&j.a(2) * &j.b(2));
        assert_eq!(theta.pow(2), top.scale(&rat(2)));
        assert_eq!(j.integrate(&theta.pow(2)).unwrap(), rat(2));
        assert_eq!(j.integrate(&top).unwrap(), rat(1));
        assert_eq!(j.integrate(&theta).unwrap(), rat(0));
    }

    #[test]
    fn theta_power_integrals() {
        for g in 1..=4 {
            let j = JacobianModel::new(g).unwrap();
            let t = j.theta();
            assert_eq!(
                j.integrate(&t.pow(g)).unwrap(),
                Rational::from_integer(factorial(g as u64))
            );
            assert_eq!(j.integrate(&t.pow(g - 1)).unwrap(), rat(0));
            assert!(t.pow(g + 1).is_zero());
        }
    }

    #[test]
    fn koszul_cross_term() {
        let p = make_product_model(1).unwrap();
        let left = &p.a(1) * &p.alpha(1);
        let right = &p.b(1) * &p.beta(1);
        let expected = -&(&(&p.a(1) * &p.b(1)) * &p.sigma());
        assert_eq!(&left * &right, expected);
    }

    #[test]
    fn fiber_integration_basics() {
        let p = make_product_model(2).unwrap();
        let one_j = GradedClass::one(p.jacobian().ring());
        assert_eq!(p.integrate_fiber_x(&p.sigma()).unwrap(), one_j);
        assert!(p
            .integrate_fiber_x(&GradedClass::one(p.ring()))
            .unwrap()
            .is_zero());
        assert!(p.integrate_fiber_x(&p.alpha(1)).unwrap().is_zero());
        let u = &p.sigma() * &p.theta();
        assert_eq!(p.integrate_fiber_x(&u).unwrap(), p.jacobian().theta());
    }

    #[test]
    fn theta_polynomial_round_trip() {
        let j = JacobianModel::new(3).unwrap();
        let coeffs = vec![rat(2), rat(-3), Rational::new(1.into(), 2.into()), rat(5)];
        let u = j.from_theta_polynomial(&coeffs);
        assert_eq!(j.theta_polynomial(&u).unwrap(), coeffs);
        assert!(j.theta_polynomial(&j.a(1)).is_none());
        assert!(j.theta_polynomial(&(&j.a(1) * &j.b(1))).is_none());
    }

    #[test]
    fn pullback_from_jacobian() {
        let p = make_product_model(2).unwrap();
        let theta = p.from_jacobian(&p.jacobian().theta()).unwrap();
        assert_eq!(theta, p.theta());
    }

    #[test]
    fn genus_bounds() {
        assert!(make_product_model(0).is_err());
        assert!(make_product_model(MAX_PRODUCT_GENUS + 1).is_err());
        assert!(JacobianModel::new(0).is_err());
    }

    #[test]
    fn product_basis_size() {
        // (2g+2) * 2^{2g} classes; check via the degree-graded count of monomials in 1 + sum of gens, exponentiated
        let p = make_product_model(1).unwrap();
        let mut sum = GradedClass::one(p.ring());
        for c in [p.alpha(1), p.beta(1), p.a(1), p.b(1)] {
            sum = &sum * &(&GradedClass::one(p.ring()) + &c);
        }
        sum = &sum * &(&GradedClass::one(p.ring()) + &p.sigma());
        // every basis monomial appears exactly once (4 curve classes x 4 jacobian classes)
        assert_eq!(sum.len(), 16);
    }
}
