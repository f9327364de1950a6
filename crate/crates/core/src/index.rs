//! Chern data of the Dolbeault index bundle over the Jacobian and of the
//! stable tangent bundle of the moduli space.
//!
//! The index is computed from scratch with the families index theorem in the
//! full `H*(X × J)` model, taking `E` split as `O^{N-1} ⊕ (degree D)`; the
//! result is compared with the closed form `ch = R - NΘ`,
//! `c_r = (-1)^r N^r Θ^r / r!`.

use num_traits::Zero;

use crate::charclass::{chern_from_character, twist_total_chern, VirtualBundle};
use crate::combinatorics::{binom_or_zero, factorial, pow_int, rat, Rational};
use crate::error::{Error, Result};
use crate::params::ModuliParams;
use crate::projective::{PUClass, ProjectiveBundle, ThetaPoly};
use crate::ring::GradedClass;
use crate::surface::{make_product_model, JacobianModel, ProductModel, ThetaXiModel};

/// `c_1` of the degree-`m` Poincaré line bundle: `mσ + Σ_i (a_i α_i + b_i β_i)`.
pub fn poincare_c1(model: &ProductModel, m: i64) -> GradedClass {
    let mut c1 = model.sigma().scale(&rat(m));
    for i in 1..=model.genus() {
        c1 += &(&model.a(i) * &model.alpha(i));
        c1 += &(&model.b(i) * &model.beta(i));
    }
    c1
}

/// `Td(X) = 1 - (g-1)σ`, pulled back to the product.
fn curve_todd(model: &ProductModel) -> GradedClass {
    &GradedClass::one(model.ring()) - &model.sigma().scale(&rat(model.genus() as i64 - 1))
}

/// `ch` of the index family on the degree-`m` Poincaré bundle:
/// `∫_X ch(P_m) Td(X)`.
pub fn tau(model: &ProductModel, m: i64) -> Result<GradedClass> {
    let ch = poincare_c1(model, m).exp_truncated()?;
    model.integrate_fiber_x(&(&ch * &curve_todd(model)))
}

/// `ch(ind)` for `E` split into line bundles of the given degrees.
pub fn ch_index_split(g: u32, deg_l: i64, summand_degrees: &[i64]) -> Result<GradedClass> {
    let model = make_product_model(g)?;
    let mut total = GradedClass::zero(model.jacobian().ring());
    for &e in summand_degrees {
        total += &tau(&model, deg_l + e)?;
    }
    Ok(total)
}

/// `ch(ind)` with `E = O^{N-1} ⊕ (degree D)`, computed in the product model.
pub fn ch_index_full(params: &ModuliParams) -> Result<GradedClass> {
    let mut degrees = vec![0; params.rank() as usize - 1];
    degrees.push(params.deg_e());
    ch_index_split(params.genus(), params.deg_l(), &degrees)
}

/// `R - NΘ` in the Jacobian model.
pub fn ch_index_closed(jacobian: &JacobianModel, params: &ModuliParams) -> GradedClass {
    &GradedClass::from_integer(jacobian.ring(), params.index_rank())
        - &jacobian.theta().scale(&rat(params.rank() as i64))
}

/// Coefficients `(-1)^r N^r / r!` of `c(ind)` as a polynomial in `Θ`.
pub fn chern_index_closed_form(g: u32, n: u32) -> ThetaPoly {
    (0..=g)
        .map(|r| {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            Rational::new(pow_int(sign * n as i64, r), factorial(r as u64))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexData {
    pub rank: i64,
    pub chern_character: GradedClass,
    pub total_chern: GradedClass,
}

/// Chern character and total Chern class of the index bundle, both checked
/// against their closed forms.
pub fn chern_index(params: &ModuliParams) -> Result<IndexData> {
    let ch = ch_index_full(params)?;
    let jac = JacobianModel::new(params.genus())?;
    let closed_ch = ch_index_closed(&jac, params);
    if ch != closed_ch {
        return Err(Error::consistency(
            "ch of the index bundle",
            &ch,
            &closed_ch,
        ));
    }
    let bundle = VirtualBundle::new(params.index_rank(), ch.clone())?;
    let total = chern_from_character(&bundle);
    let closed_c =
        jac.from_theta_polynomial(&chern_index_closed_form(params.genus(), params.rank()));
    if total != closed_c {
        return Err(Error::consistency(
            "Chern classes of the index bundle",
            &total,
            &closed_c,
        ));
    }
    Ok(IndexData {
        rank: params.index_rank(),
        chern_character: ch,
        total_chern: total,
    })
}

/// The index bundle `R - NΘ` in a `Q[Θ, ξ]` model.
pub fn index_bundle(model: &ThetaXiModel, params: &ModuliParams) -> Result<VirtualBundle> {
    let ch = &GradedClass::from_integer(model.ring(), params.index_rank())
        - &model.theta().scale(&rat(params.rank() as i64));
    VirtualBundle::new(params.index_rank(), ch)
}

/// K-theory class of the tangent bundle of the moduli space, restricted from
/// `P(U)`: `O(1) ⊗ ind + (g - 1)` trivial summands (the Jacobian directions
/// minus the scaling direction). Its rank is the dimension `R + g - 1`.
pub fn stable_tangent_bundle(model: &ThetaXiModel, params: &ModuliParams) -> Result<VirtualBundle> {
    let twisted = VirtualBundle::line_bundle(&model.xi())?.tensor(&index_bundle(model, params)?)?;
    twisted.sum(&VirtualBundle::trivial(
        model.ring(),
        params.genus() as i64 - 1,
    ))
}

/// `c_k(O(1) ⊗ ind) = Σ_{l=0}^{min(k,g)} C(R-l, k-l) (-1)^l (N^l / l!) Θ^l ξ^{k-l}`.
pub fn tangent_chern_closed(params: &ModuliParams, k: u64) -> Result<PUClass> {
    let bundle = ProjectiveBundle::from_params(params)?;
    let coeffs = chern_index_closed_form(params.genus(), params.rank());
    let mut out = bundle.zero();
    for l in 0..=k.min(params.genus() as u64) {
        let b = binom_or_zero(params.index_rank() - l as i64, (k - l) as i64);
        if b.is_zero() {
            continue;
        }
        let c = &coeffs[l as usize] * Rational::from_integer(b);
        out += &bundle.monomial(c, l as u32, k - l);
    }
    Ok(out)
}

/// `c_k(O(1) ⊗ ind)` through the general twisting formula in `Q[Θ, ξ]`.
pub fn tangent_chern_via_twist(params: &ModuliParams, k: u64) -> Result<PUClass> {
    let top = u32::try_from(k).map_err(|_| Error::invalid("degree too large"))?;
    let model = ThetaXiModel::new(params.genus(), top.max(1))?;
    let ind = index_bundle(&model, params)?;
    let total = twist_total_chern(&model.xi(), &ind)?;
    let bundle = ProjectiveBundle::from_params(params)?;
    bundle.from_theta_xi(&model, &total.homogeneous(2 * top))
}

/// `c_k` of the tangent bundle, as a class on `P(U)`; both routes must agree.
pub fn tangent_chern(params: &ModuliParams, k: u64) -> Result<PUClass> {
    let closed = tangent_chern_closed(params, k)?;
    let twisted = tangent_chern_via_twist(params, k)?;
    if closed != twisted {
        return Err(Error::consistency(
            format!("c_{k} of the tangent bundle"),
            &closed,
            &twisted,
        ));
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poincare_class_properties() {
        let p = make_product_model(1).unwrap();
        let c1 = poincare_c1(&p, 0);
        assert_eq!(c1, &(&p.a(1) * &p.alpha(1)) + &(&p.b(1) * &p.beta(1)));
        assert!(c1.is_homogeneous_of(2));
        for g in 1..=3 {
            let p = make_product_model(g).unwrap();
            let mixed = poincare_c1(&p, 0);
            assert_eq!(mixed.pow(2), (&p.theta() * &p.sigma()).scale(&rat(-2)));
        }
    }

    #[test]
    fn line_bundle_character() {
        let p = make_product_model(2).unwrap();
        let m = 3;
        let ch = poincare_c1(&p, m).exp_truncated().unwrap();
        let expected =
            &(&GradedClass::one(p.ring()) + &poincare_c1(&p, m)) - &(&p.theta() * &p.sigma());
        assert_eq!(ch, expected);
    }

    #[test]
    fn single_summand_tau() {
        for g in 1..=3u32 {
            let p = make_product_model(g).unwrap();
            let jac = p.jacobian();
            for d in -2..=4i64 {
                let t = tau(&p, d).unwrap();
                let expected =
                    &GradedClass::from_integer(jac.ring(), d + 1 - g as i64) - &jac.theta();
                assert_eq!(t, expected);
            }
        }
    }

    #[test]
    fn index_rank_zero_case() {
        let params = ModuliParams::new(2, 2, 0, 1).unwrap();
        let ch = ch_index_full(&params).unwrap();
        let jac = JacobianModel::new(2).unwrap();
        assert_eq!(ch, jac.theta().scale(&rat(-2)));
    }

    #[test]
    fn index_classes_match_closed_forms() {
        for g in 1..=3u32 {
            for n in 1..=3u32 {
                for dd in -2..=2 {
                    let params = ModuliParams::new(g, n, dd, 1).unwrap();
                    let data = chern_index(&params).unwrap();
                    assert_eq!(data.rank, params.index_rank());
                    let jac = JacobianModel::new(g).unwrap();
                    let coeffs = jac.theta_polynomial(&data.total_chern).unwrap();
                    assert_eq!(coeffs[1], rat(-(n as i64)));
                }
            }
        }
    }

    #[test]
    fn homotopy_invariance_of_splitting() {
        for g in 1..=3u32 {
            for dd in -2..=3i64 {
                let a = ch_index_split(g, 1, &[0, 0, dd]).unwrap();
                let b = ch_index_split(g, 1, &[0, 1, dd - 1]).unwrap();
                let c = ch_index_split(g, 1, &[dd + 2, -1, -1]).unwrap();
                assert_eq!(a, b);
                assert_eq!(a, c);
            }
        }
    }

    #[test]
    fn tangent_chern_low_degrees() {
        let params = ModuliParams::new(2, 3, 1, 2).unwrap();
        let b = ProjectiveBundle::from_params(&params).unwrap();
        assert_eq!(tangent_chern(&params, 0).unwrap(), b.one());
        let r = params.index_rank();
        let expected = &b.monomial(rat(r), 0, 1) + &b.monomial(rat(-3), 1, 0);
        assert_eq!(tangent_chern(&params, 1).unwrap(), expected);
    }

    #[test]
    fn tangent_chern_routes_agree() {
        for g in 1..=3u32 {
            for n in 1..=3u32 {
                for dd in -2..=2 {
                    for d in -1..=3 {
                        let params = ModuliParams::new(g, n, dd, d).unwrap();
                        let top = (params.index_rank() + g as i64).max(0) as u64;
                        for k in 0..=top {
                            tangent_chern(&params, k).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stable_tangent_rank() {
        let params = ModuliParams::new(3, 2, 1, 2).unwrap();
        let model = ThetaXiModel::new(3, 4).unwrap();
        let t = stable_tangent_bundle(&model, &params).unwrap();
        assert_eq!(t.rank(), params.dimension());
    }
}
