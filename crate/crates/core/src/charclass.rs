//! Characteristic classes of virtual bundles, computed in power sums.
//!
//! A [`VirtualBundle`] is an integer rank together with a Chern character in
//! some truncated [`RingModel`](crate::ring::RingModel). Writing `ch_k` for the
//! degree-`2k` part, the power sums of the Chern roots are `p_k = k! ch_k`.
//! Everything here (Chern classes through Newton's identities, Todd classes,
//! exterior powers) is expressed in the `p_k`, which are additive, so virtual
//! bundles of negative rank need no special handling.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{binom_general, factorial, log_todd_coefficients, rat, Rational};
use crate::error::{Error, Result};
use crate::ring::{GradedClass, RingModel};
use crate::series::PowerSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualBundle {
    rank: i64,
    ch: GradedClass,
}

fn top_complex_degree(model: &RingModel) -> usize {
    (model.top_degree() / 2) as usize
}

fn inv_factorial(k: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(k as u64))
}

impl VirtualBundle {
    /// Checks that the degree-0 part of `ch` equals `rank` and that `ch` is even.
    pub fn new(rank: i64, ch: GradedClass) -> Result<Self> {
        if ch.constant_term() != rat(rank) {
            return Err(Error::invalid(format!(
                "Chern character has rank {} but {rank} was given",
                ch.constant_term()
            )));
        }
        if !ch.has_only_even_degrees() {
            return Err(Error::invalid("Chern character has odd-degree components"));
        }
        Ok(VirtualBundle { rank, ch })
    }

    /// Reads the rank off the degree-0 part.
    pub fn from_character(ch: GradedClass) -> Result<Self> {
        let c0 = ch.constant_term();
        if !c0.is_integer() {
            return Err(Error::invalid(
                "rank of a Chern character must be an integer",
            ));
        }
        let rank = i64::try_from(c0.to_integer())
            .map_err(|_| Error::invalid("rank does not fit in 64 bits"))?;
        Self::new(rank, ch)
    }

    pub fn trivial(model: &Arc<RingModel>, rank: i64) -> Self {
        VirtualBundle {
            rank,
            ch: GradedClass::from_integer(model, rank),
        }
    }

    /// The line bundle with first Chern class `c1`.
    pub fn line_bundle(c1: &GradedClass) -> Result<Self> {
        if !c1.is_homogeneous_of(2) {
            return Err(Error::invalid(
                "first Chern class must be homogeneous of degree 2",
            ));
        }
        Self::new(1, c1.exp_truncated()?)
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn chern_character(&self) -> &GradedClass {
        &self.ch
    }

    pub fn model(&self) -> &Arc<RingModel> {
        self.ch.model()
    }

    /// Whitney sum.
    pub fn sum(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        Ok(VirtualBundle {
            rank: self.rank + other.rank,
            ch: self.ch.try_add(other.ch())?,
        })
    }

    pub fn difference(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        Ok(VirtualBundle {
            rank: self.rank - other.rank,
            ch: self.ch.try_add(&-other.ch())?,
        })
    }

    pub fn tensor(&self, other: &VirtualBundle) -> Result<VirtualBundle> {
        Ok(VirtualBundle {
            rank: self.rank * other.rank,
            ch: self.ch.multiply(other.ch())?,
        })
    }

    fn ch(&self) -> &GradedClass {
        &self.ch
    }

    /// `ch_k`, the degree-`2k` component of the Chern character.
    pub fn character_component(&self, k: usize) -> GradedClass {
        self.ch.homogeneous(2 * k as u32)
    }

    /// Power sums `p_0 = rank, p_k = k! ch_k` up to the model's top degree.
    pub fn power_sums(&self) -> Vec<GradedClass> {
        let n = top_complex_degree(self.model());
        (0..=n)
            .map(|k| {
                if k == 0 {
                    GradedClass::from_integer(self.model(), self.rank)
                } else {
                    self.character_component(k)
                        .scale(&Rational::from_integer(factorial(k as u64)))
                }
            })
            .collect()
    }
}

/// Chern classes `c_0 = 1, c_1, …` from Newton's identities
/// `k c_k = Σ_{i=1}^{k} (-1)^{i-1} c_{k-i} p_i`.
pub fn chern_classes(v: &VirtualBundle) -> Vec<GradedClass> {
    let p = v.power_sums();
    let mut c = vec![GradedClass::one(v.model())];
    for k in 1..p.len() {
        let mut acc = GradedClass::zero(v.model());
        for i in 1..=k {
            let term = &c[k - i] * &p[i];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc += &-&term;
            }
        }
        c.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    c
}

/// Total Chern class.
pub fn chern_from_character(v: &VirtualBundle) -> GradedClass {
    let mut total = GradedClass::zero(v.model());
    for c in chern_classes(v) {
        total += &c;
    }
    total
}

/// Inverse of [`chern_from_character`] for a given rank.
pub fn character_from_chern(c: &GradedClass, rank: i64) -> Result<VirtualBundle> {
    if !c.constant_term().is_one() {
        return Err(Error::invalid("total Chern class must start with 1"));
    }
    let model = c.model().clone();
    let n = top_complex_degree(&model);
    let parts: Vec<GradedClass> = (0..=n).map(|k| c.homogeneous(2 * k as u32)).collect();
    // p_k = Σ_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
    let mut p: Vec<GradedClass> = vec![GradedClass::from_integer(&model, rank)];
    for k in 1..=n {
        let mut acc = parts[k].scale(&rat(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
        for i in 1..k {
            let term = &parts[i] * &p[k - i];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc += &-&term;
            }
        }
        p.push(acc);
    }
    let mut ch = GradedClass::from_integer(&model, rank);
    for (k, pk) in p.iter().enumerate().skip(1) {
        ch += &pk.scale(&inv_factorial(k));
    }
    VirtualBundle::new(rank, ch)
}

/// Multiplicative Todd class, `exp(Σ_k τ_k p_k)` with `τ_k` the coefficients of
/// `log(x / (1 - e^{-x}))`.
pub fn todd_class(v: &VirtualBundle) -> GradedClass {
    let p = v.power_sums();
    let tau = log_todd_coefficients(p.len().saturating_sub(1));
    let mut log_td = GradedClass::zero(v.model());
    for k in 1..p.len() {
        log_td += &p[k].scale(&tau[k]);
    }
    log_td
        .exp_truncated()
        .expect("log Todd has no constant term")
}

/// Total Chern class of `L ⊗ V` where `c_1(L) = h`:
/// `Σ_l c_l(V) Σ_j C(rank V - l, j) h^j`.
pub fn twist_total_chern(h: &GradedClass, v: &VirtualBundle) -> Result<GradedClass> {
    if !h.is_homogeneous_of(2) {
        return Err(Error::invalid(
            "twisting class must be homogeneous of degree 2",
        ));
    }
    if h.model() != v.model() {
        return Err(Error::ModelMismatch);
    }
    let n = top_complex_degree(v.model());
    let h_powers: Vec<GradedClass> = (0..=n as u32).map(|j| h.pow(j)).collect();
    let mut total = GradedClass::zero(v.model());
    for (l, cl) in chern_classes(v).iter().enumerate() {
        if cl.is_zero() {
            continue;
        }
        for (j, hj) in h_powers.iter().enumerate().take(n - l + 1) {
            if hj.is_zero() {
                break;
            }
            let b = binom_general(v.rank() - l as i64, j);
            total += &(cl * hj).scale(&b);
        }
    }
    Ok(total)
}

/// `ch_k(V*) = (-1)^k ch_k(V)`.
pub fn dualize(v: &VirtualBundle) -> VirtualBundle {
    let ch =
        v.ch.map_by_degree(|deg, c| if (deg / 2) % 2 == 0 { c.clone() } else { -c });
    VirtualBundle { rank: v.rank, ch }
}

/// Polynomials `D_k(s)` with `(d/dx)^k log(1 + t e^x)|_{x=0} = D_k(t/(1+t))`.
fn log_derivative_polynomials(max_k: usize) -> Vec<Vec<Rational>> {
    // D_1 = s, D_{k+1} = D_k'(s) * (s - s^2)
    let mut out = vec![vec![], vec![Rational::zero(), Rational::one()]];
    for k in 1..max_k {
        let prev = &out[k];
        let mut next = vec![Rational::zero(); prev.len() + 1];
        for (j, c) in prev.iter().enumerate().skip(1) {
            let d = c * rat(j as i64);
            next[j] += &d;
            next[j + 1] -= &d;
        }
        out.push(next);
    }
    out
}

type TSeries = Vec<GradedClass>;

fn tseries_mul(a: &TSeries, b: &TSeries, model: &Arc<RingModel>) -> TSeries {
    let n = a.len().min(b.len());
    let mut out = vec![GradedClass::zero(model); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            if b[j].is_zero() {
                continue;
            }
            out[i + j] += &(&a[i] * &b[j]);
        }
    }
    out
}

/// Chern character of the `p`-th exterior power, from
/// `log Σ_p ch(Λ^p V) t^p = Σ_k f_k(t) p_k(V)` with
/// `f_k(t) = (1/k!) (d/dx)^k log(1 + t e^x)|_{x=0}`.
pub fn lambda_power_character(v: &VirtualBundle, p: usize) -> VirtualBundle {
    let model = v.model().clone();
    if p == 0 {
        return VirtualBundle::trivial(&model, 1);
    }
    let sums = v.power_sums();
    let n = sums.len() - 1;

    // s = t/(1+t) as a series in t, and its powers
    let s = PowerSeries::new(
        (0..=p)
            .map(|j| {
                if j == 0 {
                    Rational::zero()
                } else {
                    rat(if j % 2 == 1 { 1 } else { -1 })
                }
            })
            .collect(),
        p,
    );
    let mut s_powers = vec![PowerSeries::new(vec![Rational::one()], p)];
    for j in 1..=n + 1 {
        let next = s_powers[j - 1].mul(&s);
        s_powers.push(next);
    }
    let d = log_derivative_polynomials(n);

    // A(t) = Σ_{k>=1} f_k(t) p_k, which has no t^0 term
    let mut a: TSeries = vec![GradedClass::zero(&model); p + 1];
    for k in 1..=n {
        if sums[k].is_zero() {
            continue;
        }
        let mut fk = vec![Rational::zero(); p + 1];
        for (j, c) in d[k].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, sc) in s_powers[j].coeffs().iter().enumerate() {
                fk[i] += c * sc;
            }
        }
        let scale = inv_factorial(k);
        for (i, f) in fk.iter().enumerate() {
            if !f.is_zero() {
                a[i] += &sums[k].scale(&(f * &scale));
            }
        }
    }

    // exp(A): A^j starts at t^j, so j <= p suffices
    let mut e: TSeries = vec![GradedClass::zero(&model); p + 1];
    e[0] = GradedClass::one(&model);
    let mut power = e.clone();
    for j in 1..=p {
        power = tseries_mul(&power, &a, &model);
        if power.iter().all(GradedClass::is_zero) {
            break;
        }
        let inv = Rational::new(BigInt::one(), BigInt::from(j));
        power = power.iter().map(|x| x.scale(&inv)).collect();
        for (ei, pi) in e.iter_mut().zip(&power) {
            *ei += pi;
        }
    }

    // multiply by (1+t)^{rank} and read off t^p
    let mut ch = GradedClass::zero(&model);
    for (i, ei) in e.iter().enumerate() {
        ch += &ei.scale(&binom_general(v.rank(), p - i));
    }
    VirtualBundle::from_character(ch).expect("exterior power has integral rank")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Generator, Relation};
    use crate::surface::{curve_model, ThetaXiModel};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Free polynomial ring on `n` degree-2 generators truncated at complex degree `top`.
    fn roots_model(n: usize, top: u32) -> Arc<RingModel> {
        let gens = (0..n).map(|i| Generator::new(format!("x{i}"), 2)).collect();
        Arc::new(RingModel::new("roots", gens, Vec::<Relation>::new(), 2 * top).unwrap())
    }

    fn line_sum(model: &Arc<RingModel>, roots: &[GradedClass]) -> VirtualBundle {
        let mut v = VirtualBundle::trivial(model, 0);
        for x in roots {
            v = v.sum(&VirtualBundle::line_bundle(x).unwrap()).unwrap();
        }
        v
    }

    #[test]
    fn trivial_bundle_classes() {
        let m = roots_model(1, 4);
        let v = VirtualBundle::trivial(&m, 3);
        assert_eq!(chern_from_character(&v), GradedClass::one(&m));
        assert_eq!(todd_class(&v), GradedClass::one(&m));
        assert_eq!(dualize(&v), v);
        let back = character_from_chern(&GradedClass::one(&m), 3).unwrap();
        assert_eq!(back, v);
        for p in 0..=5 {
            let l = lambda_power_character(&v, p);
            assert_eq!(
                l.chern_character(),
                &GradedClass::constant(&m, binom_general(3, p))
            );
        }
    }

    #[test]
    fn line_bundle_classes() {
        let m = roots_model(1, 2);
        let x = GradedClass::generator(&m, 0);
        let l = VirtualBundle::line_bundle(&x).unwrap();
        assert_eq!(chern_from_character(&l), &GradedClass::one(&m) + &x);
        let expected = &(&GradedClass::one(&m) + &x.scale(&q(1, 2))) + &x.pow(2).scale(&q(1, 12));
        assert_eq!(todd_class(&l), expected);
    }

    #[test]
    fn todd_of_curve() {
        for g in 1..=4 {
            let x = curve_model(g).unwrap();
            let sigma = GradedClass::named(&x, "sigma").unwrap();
            let ch = &GradedClass::one(&x) + &sigma.scale(&rat(2 - 2 * g as i64));
            let t = VirtualBundle::new(1, ch).unwrap();
            let expected = &GradedClass::one(&x) - &sigma.scale(&rat(g as i64 - 1));
            assert_eq!(todd_class(&t), expected);
        }
    }

    #[test]
    fn index_chern_classes_closed_form() {
        let g = 3;
        let model = ThetaXiModel::new(g, 6).unwrap();
        let theta = model.theta();
        for n in 1..=3i64 {
            for r in -3..=4i64 {
                let ch = &GradedClass::from_integer(model.ring(), r) - &theta.scale(&rat(n));
                let v = VirtualBundle::new(r, ch).unwrap();
                let coeffs: Vec<Rational> = (0..=g as usize)
                    .map(|k| {
                        rat(if k % 2 == 0 { 1 } else { -1 })
                            * Rational::from_integer(num_traits::pow(BigInt::from(n), k))
                            * inv_factorial(k)
                    })
                    .collect();
                let closed = model.theta_polynomial(&coeffs);
                assert_eq!(chern_from_character(&v), closed);
                assert_eq!(character_from_chern(&closed, r).unwrap(), v);
            }
        }
    }

    #[test]
    fn dual_flips_odd_components() {
        let model = ThetaXiModel::new(2, 4).unwrap();
        let ch = &GradedClass::from_integer(model.ring(), 5) - &model.theta().scale(&rat(2));
        let v = VirtualBundle::new(5, ch).unwrap();
        let d = dualize(&v);
        let expected = &GradedClass::from_integer(model.ring(), 5) + &model.theta().scale(&rat(2));
        assert_eq!(d.chern_character(), &expected);
        assert_eq!(dualize(&d), v);
    }

    #[test]
    fn lambda_one_is_identity() {
        let model = ThetaXiModel::new(2, 5).unwrap();
        let ch = &(&GradedClass::from_integer(model.ring(), -2) - &model.theta())
            + &(&model.xi().pow(2) * &model.theta()).scale(&q(3, 2));
        let v = VirtualBundle::new(-2, ch).unwrap();
        assert_eq!(lambda_power_character(&v, 1), v);
        assert_eq!(
            lambda_power_character(&v, 0),
            VirtualBundle::trivial(model.ring(), 1)
        );
    }

    #[test]
    fn rank_two_determinant() {
        // Λ^2 of a rank-2 bundle is its determinant line bundle
        let gens = vec![Generator::new("c1", 2), Generator::new("c2", 4)];
        let m = Arc::new(RingModel::new("chern", gens, Vec::<Relation>::new(), 8).unwrap());
        let c1 = GradedClass::generator(&m, 0);
        let c2 = GradedClass::generator(&m, 1);
        let two = GradedClass::from_integer(&m, 2);
        // ch = 2 + c1 + (c1^2 - 2 c2)/2 + ..., built from the Chern classes
        let total = &(&GradedClass::one(&m) + &c1) + &c2;
        let v = character_from_chern(&total, 2).unwrap();
        assert_eq!(v.character_component(0), two);
        assert_eq!(v.character_component(1), c1);
        assert_eq!(
            v.character_component(2),
            (&c1.pow(2) - &c2.scale(&rat(2))).scale(&q(1, 2))
        );
        let det = lambda_power_character(&v, 2);
        assert_eq!(det.chern_character(), &c1.exp_truncated().unwrap());
        assert_eq!(
            lambda_power_character(&v, 3).chern_character(),
            &GradedClass::zero(&m)
        );
    }

    #[test]
    fn twist_of_trivial_and_by_zero() {
        let m = roots_model(2, 5);
        let h = GradedClass::generator(&m, 0);
        let v = VirtualBundle::trivial(&m, 3);
        assert_eq!(
            twist_total_chern(&h, &v).unwrap(),
            (&GradedClass::one(&m) + &h).pow(3)
        );
        let y = GradedClass::generator(&m, 1);
        let w = line_sum(&m, &[y.clone(), -&y]);
        let w_chern = chern_from_character(&w);
        assert_eq!(w_chern, &GradedClass::one(&m) - &y.pow(2));
        let zero = GradedClass::zero(&m);
        assert_eq!(twist_total_chern(&zero, &w).unwrap(), w_chern);
        assert!(twist_total_chern(&y.pow(2), &w).is_err());
    }
}
