//! Cohomology of the projectivized stabilized index bundle `P(U) -> J`.
//!
//! Only classes built from `Θ` and the hyperplane class `ξ` are modelled:
//! a [`PUClass`] maps each `ξ`-exponent to a dense polynomial in `Θ` of
//! degree at most `g`. With `n = R + K` the rank of `U`, the ring is
//! `H*(J)[ξ]` modulo `Σ_{i=0}^{n} c_i(U) ξ^{n-i} = 0`, where
//! `c_i(U) = (-1)^i N^i Θ^i / i!`.
//!
//! Integration over `P(U)` is done twice: by pushing powers of `ξ` forward to
//! the Jacobian with the closed form `p_*(ξ^{n-1+r}) = N^r Θ^r / r!`, and by
//! reducing with the relation until the fiber class `ξ^{n-1}` can be read off.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::{factorial, pow_int, Rational};
use crate::error::{Error, Result};
use crate::params::ModuliParams;
use crate::ring::GradedClass;
use crate::surface::{ThetaXiModel, THETA, XI};

/// Polynomial in `Θ`, lowest degree first, implicitly truncated above `Θ^g`.
pub type ThetaPoly = Vec<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveBundle {
    genus: u32,
    rank: u32,
    index_rank: i64,
    stabilization: i64,
}

impl ProjectiveBundle {
    pub fn new(genus: u32, rank: u32, index_rank: i64, stabilization: i64) -> Result<Self> {
        if genus == 0 || rank == 0 {
            return Err(Error::invalid("genus and rank must be positive"));
        }
        let n = index_rank + stabilization;
        if n < 1 || n < genus as i64 {
            return Err(Error::invalid(format!(
                "U must have rank at least max(1, g); got R + K = {n}"
            )));
        }
        Ok(ProjectiveBundle {
            genus,
            rank,
            index_rank,
            stabilization,
        })
    }

    pub fn from_params(p: &ModuliParams) -> Result<Self> {
        Self::new(p.genus(), p.rank(), p.index_rank(), p.stabilization())
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn stabilization(&self) -> i64 {
        self.stabilization
    }

    /// `R + K`, the rank of `U`.
    pub fn fiber_rank(&self) -> u64 {
        (self.index_rank + self.stabilization) as u64
    }

    /// Complex dimension of `P(U)`.
    pub fn dimension(&self) -> u64 {
        self.fiber_rank() - 1 + self.genus as u64
    }

    /// Coefficient of `Θ^i` in `c_i(U)`.
    pub fn chern_u(&self, i: u32) -> Rational {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        Rational::new(pow_int(sign * self.rank as i64, i), factorial(i as u64))
    }

    fn zero_poly(&self) -> ThetaPoly {
        vec![Rational::zero(); self.genus as usize + 1]
    }

    /// `p_*(ξ^j)`: zero below the fiber dimension, `N^r Θ^r / r!` at `j = R + K - 1 + r`.
    pub fn pushforward_xi(&self, j: u64) -> ThetaPoly {
        let mut out = self.zero_poly();
        let fiber = self.fiber_rank() - 1;
        if j >= fiber {
            let r = j - fiber;
            if r <= self.genus as u64 {
                out[r as usize] = Rational::new(pow_int(self.rank as i64, r as u32), factorial(r));
            }
        }
        out
    }

    pub fn zero(&self) -> PUClass {
        PUClass {
            bundle: *self,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> PUClass {
        self.monomial(Rational::from_integer(1.into()), 0, 0)
    }

    /// `coeff · Θ^theta_exp · ξ^xi_exp`.
    pub fn monomial(&self, coeff: Rational, theta_exp: u32, xi_exp: u64) -> PUClass {
        let mut c = self.zero();
        if theta_exp <= self.genus {
            let mut poly = self.zero_poly();
            poly[theta_exp as usize] = coeff;
            c.add_poly(xi_exp, &poly);
        }
        c
    }

    pub fn xi_power(&self, k: u64) -> PUClass {
        self.monomial(Rational::from_integer(1.into()), 0, k)
    }

    /// Reads a class of the `Q[Θ, ξ]` model into this ring.
    pub fn from_theta_xi(&self, model: &ThetaXiModel, u: &GradedClass) -> Result<PUClass> {
        if model.genus() != self.genus || u.model().as_ref() != model.ring().as_ref() {
            return Err(Error::ModelMismatch);
        }
        let mut out = self.zero();
        for (m, c) in u.terms() {
            let e = m.even_exponents();
            out += &self.monomial(c.clone(), e[THETA] as u32, e[XI] as u64);
        }
        Ok(out)
    }
}

/// A class in `H*(P(U))` spanned by `Θ^a ξ^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PUClass {
    bundle: ProjectiveBundle,
    terms: BTreeMap<u64, ThetaPoly>,
}

fn poly_is_zero(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

impl PUClass {
    pub fn bundle(&self) -> &ProjectiveBundle {
        &self.bundle
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &ThetaPoly)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, theta_exp: u32, xi_exp: u64) -> Rational {
        self.terms
            .get(&xi_exp)
            .and_then(|p| p.get(theta_exp as usize).cloned())
            .unwrap_or_else(Rational::zero)
    }

    fn add_poly(&mut self, xi_exp: u64, poly: &[Rational]) {
        let entry = self
            .terms
            .entry(xi_exp)
            .or_insert_with(|| self.bundle.zero_poly());
        for (a, b) in entry.iter_mut().zip(poly) {
            *a += b;
        }
        if poly_is_zero(entry) {
            self.terms.remove(&xi_exp);
        }
    }

    pub fn scale(&self, c: &Rational) -> PUClass {
        let mut out = self.bundle.zero();
        for (k, p) in &self.terms {
            let scaled: ThetaPoly = p.iter().map(|x| x * c).collect();
            out.add_poly(*k, &scaled);
        }
        out
    }

    pub fn multiply(&self, other: &PUClass) -> Result<PUClass> {
        if self.bundle != other.bundle {
            return Err(Error::ModelMismatch);
        }
        let g = self.bundle.genus as usize;
        let mut out = self.bundle.zero();
        for (ka, pa) in &self.terms {
            for (kb, pb) in &other.terms {
                let mut prod = self.bundle.zero_poly();
                for (i, a) in pa.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in pb.iter().enumerate().take(g + 1 - i) {
                        prod[i + j] += a * b;
                    }
                }
                out.add_poly(ka + kb, &prod);
            }
        }
        Ok(out)
    }

    /// Largest complex degree `a + b` over the terms `Θ^a ξ^b`.
    pub fn max_degree(&self) -> Option<u64> {
        self.terms
            .iter()
            .flat_map(|(k, p)| {
                p.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(a, _)| k + a as u64)
            })
            .max()
    }

    /// Whether every `ξ`-exponent is below `R + K`.
    pub fn is_reduced(&self) -> bool {
        let n = self.bundle.fiber_rank();
        self.terms.keys().all(|&k| k < n)
    }

    /// Rewrites `ξ^{n} = -Σ_{i>=1} c_i(U) ξ^{n-i}` until all exponents are below `n = R + K`.
    pub fn reduce_leray_hirsch(&self) -> PUClass {
        let n = self.bundle.fiber_rank();
        let g = self.bundle.genus as usize;
        let mut out = self.clone();
        while let Some((&top, _)) = out.terms.last_key_value() {
            if top < n {
                break;
            }
            let poly = out.terms.remove(&top).expect("key just observed");
            for i in 1..=g.min(n as usize) {
                let c = -self.bundle.chern_u(i as u32);
                let mut shifted = self.bundle.zero_poly();
                for (a, x) in poly.iter().enumerate().take(g + 1 - i) {
                    shifted[a + i] = x * &c;
                }
                if !poly_is_zero(&shifted) {
                    out.add_poly(top - i as u64, &shifted);
                }
            }
        }
        out
    }

    /// Pushforward to the Jacobian, term by term.
    pub fn pushforward(&self) -> ThetaPoly {
        let g = self.bundle.genus as usize;
        let mut out = self.bundle.zero_poly();
        for (k, p) in &self.terms {
            let push = self.bundle.pushforward_xi(*k);
            for (i, a) in p.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in push.iter().enumerate().take(g + 1 - i) {
                    out[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Pushforward read off the reduced form: only `ξ^{R+K-1}` survives, with `p_*(ξ^{R+K-1}) = 1`.
    pub fn pushforward_by_reduction(&self) -> ThetaPoly {
        let top = self.bundle.fiber_rank() - 1;
        self.reduce_leray_hirsch()
            .terms
            .remove(&top)
            .unwrap_or_else(|| self.bundle.zero_poly())
    }

    /// Integral via the closed-form pushforward, then `∫_J Θ^g = g!`.
    pub fn integrate_by_pushforward(&self) -> Rational {
        let g = self.bundle.genus;
        &self.pushforward()[g as usize] * Rational::from_integer(factorial(g as u64))
    }

    /// Integral via full reduction: the coefficient of `Θ^g ξ^{R+K-1}` times `g!`.
    pub fn integrate_by_reduction(&self) -> Rational {
        let g = self.bundle.genus;
        let reduced = self.reduce_leray_hirsch();
        reduced.coefficient(g, self.bundle.fiber_rank() - 1)
            * Rational::from_integer(factorial(g as u64))
    }

    /// `∫_{P(U)}`, with both routes required to agree.
    pub fn integrate(&self) -> Result<Rational> {
        let a = self.integrate_by_pushforward();
        let b = self.integrate_by_reduction();
        if a != b {
            return Err(Error::consistency("integration over P(U)", &a, &b));
        }
        Ok(a)
    }

    /// Integral as an integer; non-integral values are a consistency failure.
    pub fn integrate_integer(&self) -> Result<BigInt> {
        let v = self.integrate()?;
        if !v.is_integer() {
            return Err(Error::consistency(
                "integrality of an integral over P(U)",
                &v,
                "an integer",
            ));
        }
        Ok(v.to_integer())
    }
}

impl std::ops::AddAssign<&PUClass> for PUClass {
    fn add_assign(&mut self, rhs: &PUClass) {
        assert_eq!(
            self.bundle, rhs.bundle,
            "adding classes over different bundles"
        );
        for (k, p) in &rhs.terms {
            self.add_poly(*k, p);
        }
    }
}

impl std::ops::Add for &PUClass {
    type Output = PUClass;
    fn add(self, rhs: &PUClass) -> PUClass {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Mul for &PUClass {
    type Output = PUClass;
    fn mul(self, rhs: &PUClass) -> PUClass {
        self.multiply(rhs)
            .expect("multiplying classes over different bundles")
    }
}

impl fmt::Display for PUClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, p) in &self.terms {
            for (a, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut s = c.to_string();
                if a > 0 {
                    s.push_str(&format!("*Theta^{a}"));
                }
                if *k > 0 {
                    s.push_str(&format!("*xi^{k}"));
                }
                parts.push(s);
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rat;

    fn bundle(g: u32, n: u32, r: i64, k: i64) -> ProjectiveBundle {
        ProjectiveBundle::new(g, n, r, k).unwrap()
    }

    #[test]
    fn reduced_monomials_unchanged() {
        let b = bundle(2, 2, 1, 3);
        for j in 0..b.fiber_rank() {
            let x = b.xi_power(j);
            assert_eq!(x.reduce_leray_hirsch(), x);
        }
    }

    #[test]
    fn one_step_reduction() {
        let b = bundle(3, 2, 1, 4);
        let n = b.fiber_rank();
        let reduced = b.xi_power(n).reduce_leray_hirsch();
        let mut expected = b.zero();
        for i in 1..=3u32 {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let c = Rational::new(pow_int(2, i) * sign, factorial(i as u64));
            expected += &b.monomial(c, i, n - i as u64);
        }
        assert_eq!(reduced, expected);
    }

    #[test]
    fn two_step_reduction_matches_pushforward() {
        // the coefficient of ξ^{n-1} after reducing ξ^{n+1} is the Θ-polynomial p_*(ξ^{n+1})
        for g in 1..=4u32 {
            let b = bundle(g, 3, 2, 5);
            let n = b.fiber_rank();
            let reduced = b.xi_power(n + 1).reduce_leray_hirsch();
            let push = b.pushforward_xi(n + 1);
            for a in 0..=g {
                assert_eq!(reduced.coefficient(a, n - 1), push[a as usize]);
            }
            if g >= 2 {
                // N^2 Θ^2 / 2 with N = 3
                assert_eq!(push[2], Rational::new(9.into(), 2.into()));
            }
        }
    }

    #[test]
    fn pushforward_values() {
        let b = bundle(3, 2, 0, 4);
        let n = b.fiber_rank();
        let mut one = b.zero_poly();
        one[0] = rat(1);
        assert_eq!(b.pushforward_xi(n - 1), one);
        let mut theta = b.zero_poly();
        theta[1] = rat(2);
        assert_eq!(b.pushforward_xi(n), theta);
        assert_eq!(b.pushforward_xi(n - 2), b.zero_poly());
        assert_eq!(b.pushforward_xi(n + 4), b.zero_poly());
    }

    #[test]
    fn integrals() {
        for g in 1..=4u32 {
            let b = bundle(g, 2, 1, 4);
            let n = b.fiber_rank();
            let top = b.monomial(rat(1), g, n - 1);
            assert_eq!(
                top.integrate().unwrap(),
                Rational::from_integer(factorial(g as u64))
            );
            let xi = b.xi_power(n - 1 + g as u64);
            assert_eq!(
                xi.integrate().unwrap(),
                Rational::from_integer(pow_int(2, g))
            );
            let low = b.monomial(rat(5), g, n - 2);
            assert_eq!(low.integrate().unwrap(), rat(0));
        }
    }

    #[test]
    fn route_equality_on_monomials() {
        for g in 1..=4u32 {
            for nn in 1..=3u32 {
                for r in [-1i64, 0, 2, 5] {
                    let k = (g as i64 - r).max(1) + 1;
                    let b = bundle(g, nn, r, k);
                    let n = b.fiber_rank();
                    for a in 0..=g {
                        for e in 0..=n - 1 + 2 * g as u64 {
                            let m = b.monomial(rat(1), a, e);
                            assert_eq!(m.integrate_by_pushforward(), m.integrate_by_reduction());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_is_idempotent_and_degree_preserving() {
        let b = bundle(3, 2, 1, 4);
        for e in 0..15u64 {
            for a in 0..=3 {
                let m = b.monomial(rat(1), a, e);
                let once = m.reduce_leray_hirsch();
                assert!(once.is_reduced());
                assert_eq!(once.reduce_leray_hirsch(), once);
                if let Some(d) = once.max_degree() {
                    assert_eq!(d, a as u64 + e);
                }
            }
        }
    }

    #[test]
    fn reduction_is_multiplicative() {
        let b = bundle(2, 2, 1, 3);
        let x = &b.monomial(rat(2), 1, 5) + &b.xi_power(3);
        let y = &b.monomial(rat(-1), 0, 6) + &b.monomial(rat(3), 2, 2);
        let lhs = (&x * &y).reduce_leray_hirsch();
        let rhs = (&x.reduce_leray_hirsch() * &y.reduce_leray_hirsch()).reduce_leray_hirsch();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_small_fiber() {
        assert!(ProjectiveBundle::new(3, 1, -1, 2).is_err());
        assert!(ProjectiveBundle::new(1, 1, -3, 2).is_err());
    }
}
