//! Topological invariants of the moduli space: dimension, Euler
//! characteristic, Betti and Hodge numbers, and the numerology of the
//! degeneracy-locus and spectral-curve descriptions.
//!
//! The Betti numbers below the middle dimension agree with those of a
//! projective bundle over the Jacobian, `b_r = Λ(g, r)`. The middle Betti
//! number is fixed by Poincaré duality and the Euler characteristic. In the
//! same way, the Hodge numbers off the middle row are those of
//! `P^{NK-1} × J`, and the middle row comes from Hirzebruch-Riemann-Roch on
//! the stable tangent bundle.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::charclass::{dualize, lambda_power_character, todd_class};
use crate::combinatorics::{binom_int, binom_or_zero, lambda_fn, pow_int};
use crate::error::{Error, Result};
use crate::index::{stable_tangent_bundle, tangent_chern};
use crate::params::ModuliParams;
use crate::projective::ProjectiveBundle;
use crate::surface::ThetaXiModel;

/// Complex dimension `R + g - 1`; negative means the moduli space is empty.
pub fn dimension(params: &ModuliParams) -> i64 {
    params.dimension()
}

/// `(-1)^m N^g C(2g - 2, m)`, or zero when `m < 0`.
pub fn euler_closed_form(params: &ModuliParams) -> BigInt {
    let m = params.dimension();
    if m < 0 {
        return BigInt::zero();
    }
    let g = params.genus();
    let sign = if m % 2 == 0 { 1 } else { -1 };
    pow_int(params.rank() as i64, g) * binom_int(2 * g as i64 - 2, m as usize) * sign
}

/// `∫_{P(U)} ξ^K c_m(T)`: the moduli space is Poincaré dual to `ξ^K`.
pub fn euler_integral(params: &ModuliParams) -> Result<BigInt> {
    let m = params.dimension();
    if m < 0 {
        return Ok(BigInt::zero());
    }
    let bundle = ProjectiveBundle::from_params(params)?;
    let top_chern = tangent_chern(params, m as u64)?;
    let integrand = &top_chern * &bundle.xi_power(params.stabilization() as u64);
    integrand.integrate_integer()
}

/// Euler characteristic; the closed form and the integral must agree.
pub fn euler_characteristic(params: &ModuliParams) -> Result<BigInt> {
    let closed = euler_closed_form(params);
    let integral = euler_integral(params)?;
    if closed != integral {
        return Err(Error::consistency(
            format!("Euler characteristic at {params:?}"),
            &closed,
            &integral,
        ));
    }
    Ok(closed)
}

/// How the middle Betti number is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MiddleBetti {
    /// `N^g C(2g-2, m) - 2 Σ_{j=0}^{m-1} (-1)^{m-j} Λ(g, j)`, forced by duality and `χ`.
    #[default]
    DualityConsistent,
    /// The same expression with the sum running up to `j = m`.
    InclusiveSum,
}

/// Middle Betti number `b_m` for `m >= 0`.
pub fn middle_betti(params: &ModuliParams, variant: MiddleBetti) -> BigInt {
    let m = params.dimension();
    assert!(m >= 0, "middle Betti number of an empty moduli space");
    let g = params.genus();
    let last = match variant {
        MiddleBetti::DualityConsistent => m - 1,
        MiddleBetti::InclusiveSum => m,
    };
    let mut sum = BigInt::zero();
    for j in 0..=last {
        let sign = if (m - j) % 2 == 0 { 1 } else { -1 };
        sum += lambda_fn(g, j as u32) * sign;
    }
    pow_int(params.rank() as i64, g) * binom_int(2 * g as i64 - 2, m as usize) - sum * 2
}

/// Betti numbers `b_0 … b_{2m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable(Vec<BigInt>);

impl BettiTable {
    pub fn new(values: Vec<BigInt>) -> Self {
        BettiTable(values)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn get(&self, r: usize) -> BigInt {
        self.0.get(r).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ (-1)^r b_r`.
    pub fn alternating_sum(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(r, b)| if r % 2 == 0 { b.clone() } else { -b })
            .sum()
    }

    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn satisfies_duality(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|b| !b.is_negative())
    }
}

/// Betti numbers with a chosen middle-degree formula. The inclusive-sum variant is
/// only for comparison and may produce a table violating the Euler check.
pub fn betti_table_with(params: &ModuliParams, variant: MiddleBetti) -> Result<BettiTable> {
    let m = params.dimension();
    if m < 0 {
        return Ok(BettiTable(vec![]));
    }
    let g = params.genus();
    let m = m as usize;
    let mut values = Vec::with_capacity(2 * m + 1);
    for r in 0..=2 * m {
        let b = match r.cmp(&m) {
            std::cmp::Ordering::Less => lambda_fn(g, r as u32),
            std::cmp::Ordering::Equal => middle_betti(params, variant),
            std::cmp::Ordering::Greater => lambda_fn(g, (2 * m - r) as u32),
        };
        values.push(b);
    }
    Ok(BettiTable(values))
}

/// Betti numbers `b_r = dim H^r(N; Q)`.
pub fn betti_table(params: &ModuliParams) -> Result<BettiTable> {
    let table = betti_table_with(params, MiddleBetti::DualityConsistent)?;
    if let Some(b) = table.values().iter().find(|b| b.is_negative()) {
        return Err(Error::consistency(
            format!("nonnegativity of the middle Betti number at {params:?}"),
            b,
            ">= 0",
        ));
    }
    Ok(table)
}

/// Poincaré polynomial coefficients (lowest degree first).
pub fn poincare_polynomial(params: &ModuliParams) -> Result<Vec<BigInt>> {
    Ok(betti_table(params)?.0)
}

/// Poincaré polynomial of `Sym^n` of a genus-`g` curve, read off
/// `Σ_n P_t(Sym^n X) x^n = (1 + xt)^{2g} / ((1 - x)(1 - x t^2))`.
pub fn macdonald_oracle(g: u32, n: u32) -> Vec<BigInt> {
    let n = n as usize;
    let width = 2 * n + 1;
    // series in x up to x^n with polynomial coefficients in t
    type Series = Vec<Vec<BigInt>>;
    let zero = || vec![vec![BigInt::zero(); width]; n + 1];
    let mul = |a: &Series, b: &Series| {
        let mut out = zero();
        for i in 0..=n {
            for j in 0..=n - i {
                for (s, x) in a[i].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (u, y) in b[j].iter().enumerate() {
                        if s + u < width && !y.is_zero() {
                            out[i + j][s + u] += x * y;
                        }
                    }
                }
            }
        }
        out
    };
    let mut numerator = zero();
    for i in 0..=n.min(2 * g as usize) {
        if i < width {
            numerator[i][i] = binom_int(2 * g as i64, i);
        }
    }
    let mut geometric = zero();
    let mut geometric_t2 = zero();
    for i in 0..=n {
        geometric[i][0] = BigInt::one();
        if 2 * i < width {
            geometric_t2[i][2 * i] = BigInt::one();
        }
    }
    let product = mul(&mul(&numerator, &geometric), &geometric_t2);
    product[n].clone()
}

/// Hodge numbers `h^{p,q}` for `0 <= p, q <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTable {
    entries: Vec<Vec<BigInt>>,
}

impl HodgeTable {
    pub fn from_rows(entries: Vec<Vec<BigInt>>) -> Self {
        HodgeTable { entries }
    }

    /// `m`, or `-1` for an empty moduli space.
    pub fn dimension(&self) -> i64 {
        self.entries.len() as i64 - 1
    }

    pub fn get(&self, p: usize, q: usize) -> BigInt {
        self.entries
            .get(p)
            .and_then(|row| row.get(q))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    /// `(p, q, h^{p,q})` in row-major order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().enumerate().map(move |(q, h)| (p, q, h)))
    }

    /// `Σ_{p+q=r} h^{p,q}` for `r = 0..=2m`.
    pub fn degree_sums(&self) -> Vec<BigInt> {
        let m = self.entries.len();
        if m == 0 {
            return vec![];
        }
        let mut out = vec![BigInt::zero(); 2 * m - 1];
        for (p, q, h) in self.triples() {
            out[p + q] += h;
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.triples().all(|(p, q, h)| *h == self.get(q, p))
    }

    pub fn satisfies_serre_duality(&self) -> bool {
        let m = self.entries.len();
        self.triples()
            .all(|(p, q, h)| *h == self.get(m - 1 - p, m - 1 - q))
    }
}

/// Hodge numbers of `P^{NK-1} × J`: `Σ_r C(g, p-r) C(g, q-r)`.
pub fn hodge_off_middle(g: u32, p: usize, q: usize) -> BigInt {
    (0..=p.min(q))
        .map(|r| binom_or_zero(g as i64, (p - r) as i64) * binom_or_zero(g as i64, (q - r) as i64))
        .sum()
}

/// Caps for the middle-row Hirzebruch-Riemann-Roch computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgeLimits {
    pub max_genus: u32,
    pub max_dimension: i64,
}

impl Default for HodgeLimits {
    fn default() -> Self {
        HodgeLimits {
            max_genus: 3,
            max_dimension: 8,
        }
    }
}

impl HodgeLimits {
    pub fn allows(&self, params: &ModuliParams) -> bool {
        params.genus() <= self.max_genus && params.dimension() <= self.max_dimension
    }
}

/// `χ(Ω^p) = ∫_{P(U)} ξ^K ch(Λ^p T*) Td(T)` for `p = 0..=m`.
pub fn holomorphic_euler_characteristics(params: &ModuliParams) -> Result<Vec<BigInt>> {
    let m = params.dimension();
    if m < 0 {
        return Ok(vec![]);
    }
    let m32 = m as u32;
    let model = ThetaXiModel::new(params.genus(), m32.max(1))?;
    let tangent = stable_tangent_bundle(&model, params)?;
    let cotangent = dualize(&tangent);
    let todd = todd_class(&tangent);
    let bundle = ProjectiveBundle::from_params(params)?;
    let xi_k = bundle.xi_power(params.stabilization() as u64);
    (0..=m as usize)
        .map(|p| {
            let forms = lambda_power_character(&cotangent, p);
            let integrand = (forms.chern_character() * &todd).homogeneous(2 * m32);
            let class = bundle.from_theta_xi(&model, &integrand)?;
            (&class * &xi_k).integrate_integer()
        })
        .collect()
}

/// Hodge table using the default [`HodgeLimits`].
pub fn hodge_table(params: &ModuliParams) -> Result<HodgeTable> {
    hodge_table_with_limits(params, HodgeLimits::default())
}

pub fn hodge_table_with_limits(params: &ModuliParams, limits: HodgeLimits) -> Result<HodgeTable> {
    let m = params.dimension();
    if m < 0 {
        return Ok(HodgeTable { entries: vec![] });
    }
    if !limits.allows(params) {
        return Err(Error::invalid(format!(
            "Hodge numbers are limited to g <= {} and dimension <= {}",
            limits.max_genus, limits.max_dimension
        )));
    }
    let g = params.genus();
    let m = m as usize;
    let mut entries = vec![vec![BigInt::zero(); m + 1]; m + 1];
    for p in 0..=m {
        for q in 0..=m {
            if p + q < m {
                entries[p][q] = hodge_off_middle(g, p, q);
            } else if p + q > m {
                entries[p][q] = hodge_off_middle(g, m - p, m - q);
            }
        }
    }
    let chi = holomorphic_euler_characteristics(params)?;
    if m >= 2 && (params.index_rank() >= 1 || params.rank() == 1) {
        // h^{0,q} = C(g, q) persists up to q = m. Not when R = 0 and N > 1: then the
        // space is a divisor of class NΘ in J, with χ(O) = (-1)^{g-1} N^g.
        let expected: BigInt = (0..=m)
            .map(|q| {
                let h = hodge_off_middle(g, 0, q);
                if q % 2 == 0 {
                    h
                } else {
                    -h
                }
            })
            .sum();
        if chi[0] != expected {
            return Err(Error::consistency(
                format!("χ(O) against Σ (-1)^q h^{{0,q}} at {params:?}"),
                &chi[0],
                &expected,
            ));
        }
    }
    for p in 0..=m {
        let q_mid = m - p;
        let mut rest = BigInt::zero();
        for (q, h) in entries[p].iter().enumerate() {
            if q != q_mid {
                rest += if q % 2 == 0 { h.clone() } else { -h };
            }
        }
        let value = &chi[p] - rest;
        entries[p][q_mid] = if q_mid % 2 == 0 { value } else { -value };
    }
    let table = HodgeTable { entries };
    for p in 0..=m {
        let h = table.get(p, m - p);
        if h.is_negative() {
            return Err(Error::consistency(
                format!("nonnegativity of h^{{{p},{}}} at {params:?}", m - p),
                &h,
                ">= 0",
            ));
        }
    }
    if !table.is_symmetric() {
        let p = (0..=m)
            .find(|&p| table.get(p, m - p) != table.get(m - p, p))
            .unwrap_or(0);
        return Err(Error::consistency(
            format!(
                "Hodge symmetry h^{{{p},{}}} = h^{{{},{p}}} at {params:?}",
                m - p,
                m - p
            ),
            table.get(p, m - p),
            table.get(m - p, p),
        ));
    }
    // Σ_p (-1)^p χ(Ω^p) is the topological Euler characteristic
    let chi_sum: BigInt = chi
        .iter()
        .enumerate()
        .map(|(p, c)| if p % 2 == 0 { c.clone() } else { -c })
        .sum();
    let euler = euler_characteristic(params)?;
    if chi_sum != euler {
        return Err(Error::consistency(
            format!("Σ (-1)^p χ(Ω^p) against χ at {params:?}"),
            &chi_sum,
            &euler,
        ));
    }
    Ok(table)
}

/// Connectedness bound `dim M - (v - k)(w - k)` for the degeneracy locus
/// `D_{NK-1}` of `V -> W` over `Pic^d`, with `v = NK`, `w = NK - R`.
pub fn fl_bound(params: &ModuliParams) -> Result<i64> {
    let n = params.rank() as i64;
    let k = params.stabilization();
    let v = n * k;
    let w = n * k - params.index_rank();
    if w <= 0 {
        return Err(Error::invalid(format!("W has nonpositive rank {w}")));
    }
    let locus = n * k - 1;
    Ok(params.genus() as i64 - (v - locus) * (w - locus))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralData {
    /// `δ = D + N(N-1)(g-1)`.
    pub delta: i64,
    /// `g_Y = N^2 (g-1) + 1`.
    #[serde(rename = "genus_Y")]
    pub genus_y: i64,
    /// `(δ + Nd) - (g_Y - g) = dim`.
    pub dim_consistency: bool,
}

/// Numerology of the `N`-sheeted spectral cover `Y -> X`.
pub fn spectral_numerology(params: &ModuliParams) -> SpectralData {
    let n = params.rank() as i64;
    let g = params.genus() as i64;
    let delta = params.deg_e() + n * (n - 1) * (g - 1);
    let genus_y = n * n * (g - 1) + 1;
    let fiber_dim = (delta + n * params.deg_l()) - (genus_y - g);
    SpectralData {
        delta,
        genus_y,
        dim_consistency: fiber_dim == params.dimension(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: u32, n: u32, dd: i64, d: i64) -> ModuliParams {
        ModuliParams::new(g, n, dd, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_points() {
        let p = params(1, 2, 0, 0);
        assert_eq!(dimension(&p), 0);
        assert_eq!(euler_characteristic(&p).unwrap(), BigInt::from(2));
        assert_eq!(betti_table(&p).unwrap().values(), &ints(&[2])[..]);
    }

    #[test]
    fn genus_five_curve() {
        let p = params(2, 2, 0, 1);
        assert_eq!(dimension(&p), 1);
        assert_eq!(euler_characteristic(&p).unwrap(), BigInt::from(-8));
        assert_eq!(betti_table(&p).unwrap().values(), &ints(&[1, 10, 1])[..]);
    }

    #[test]
    fn inclusive_middle_sum_differs() {
        let p = params(2, 2, 0, 1);
        assert_eq!(middle_betti(&p, MiddleBetti::InclusiveSum), BigInt::from(2));
        assert_eq!(
            middle_betti(&p, MiddleBetti::DualityConsistent),
            BigInt::from(10)
        );
        let p0 = params(1, 2, 0, 0);
        assert_eq!(
            middle_betti(&p0, MiddleBetti::InclusiveSum),
            BigInt::from(0)
        );
    }

    #[test]
    fn empty_moduli_space() {
        let p = params(2, 1, 0, -3);
        assert!(dimension(&p) < 0);
        assert_eq!(euler_characteristic(&p).unwrap(), BigInt::zero());
        assert!(betti_table(&p).unwrap().is_empty());
        assert_eq!(hodge_table(&p).unwrap().dimension(), -1);
    }

    #[test]
    fn euler_vanishes_past_canonical_degree() {
        for g in 1..=3u32 {
            for d in 0..=8 {
                let p = params(g, 2, 1, d);
                let m = p.dimension();
                let chi = euler_characteristic(&p).unwrap();
                if m >= 0 && m <= 2 * g as i64 - 2 {
                    assert!(!chi.is_zero(), "{p:?}");
                } else {
                    assert!(chi.is_zero(), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn macdonald_examples() {
        assert_eq!(macdonald_oracle(3, 0), ints(&[1]));
        assert_eq!(macdonald_oracle(2, 1), ints(&[1, 4, 1]));
        assert_eq!(macdonald_oracle(2, 2), ints(&[1, 4, 7, 4, 1]));
        assert_eq!(macdonald_oracle(1, 3), ints(&[1, 2, 2, 2, 2, 2, 1]));
        let p = params(1, 1, 0, 3);
        assert_eq!(
            poincare_polynomial(&p).unwrap(),
            ints(&[1, 2, 2, 2, 2, 2, 1])
        );
        let p = params(2, 1, 0, 2);
        assert_eq!(
            betti_table(&p).unwrap().values(),
            &ints(&[1, 4, 7, 4, 1])[..]
        );
    }

    #[test]
    fn off_middle_hodge() {
        assert_eq!(hodge_off_middle(2, 1, 1), BigInt::from(5));
        assert_eq!(hodge_off_middle(1, 0, 0), BigInt::from(1));
        assert_eq!(hodge_off_middle(3, 2, 0), BigInt::from(3));
    }

    #[test]
    fn torus_hodge_diamond() {
        let t = hodge_table(&params(1, 1, 0, 1)).unwrap();
        assert_eq!(t.rows(), &[ints(&[1, 1]), ints(&[1, 1])]);
    }

    #[test]
    fn genus_five_hodge() {
        let t = hodge_table(&params(2, 2, 0, 1)).unwrap();
        assert_eq!(t.rows(), &[ints(&[1, 5]), ints(&[5, 1])]);
    }

    #[test]
    fn structure_sheaf_of_theta_multiple_divisor() {
        // R = 0: a smooth divisor D of class NΘ in J, and Riemann-Roch on J gives
        // χ(O_D) = χ(O_J) - χ(O_J(-D)) = -(-N)^g
        for g in 1..=3u32 {
            for n in 1..=3u32 {
                let p = params(g, n, n as i64 * (g as i64 - 1), 0);
                assert_eq!(p.index_rank(), 0);
                let chi = holomorphic_euler_characteristics(&p).unwrap();
                assert_eq!(chi[0], -pow_int(-(n as i64), g), "{p:?}");
                hodge_table(&p).unwrap();
            }
        }
    }

    #[test]
    fn symmetric_product_hodge_numbers() {
        // for N = 1 the space is Sym^n X; its Hodge numbers are the coefficients of
        // x^n u^p v^q in (1 + xu)^g (1 + xv)^g / ((1 - x)(1 - xuv))
        for g in 1..=3u32 {
            for n in 0..=5usize {
                let p = params(g, 1, 0, n as i64);
                let table = hodge_table(&p).unwrap();
                for a in 0..=n {
                    for b in 0..=n {
                        let mut expected = BigInt::zero();
                        // x^i u^i from (1 + xu)^g, x^j v^j from (1 + xv)^g, (xuv)^k, x^l
                        for k in 0..=a.min(b) {
                            let (i, j) = (a - k, b - k);
                            if i + j + k <= n {
                                expected += binom_int(g as i64, i) * binom_int(g as i64, j);
                            }
                        }
                        assert_eq!(table.get(a, b), expected, "{p:?} h^{a},{b}");
                    }
                }
            }
        }
    }

    #[test]
    fn hodge_limits_enforced() {
        assert!(hodge_table(&params(4, 1, 0, 1)).is_err());
        let big = params(2, 1, 0, 9);
        assert!(hodge_table(&big).is_err());
        let relaxed = HodgeLimits {
            max_genus: 4,
            max_dimension: 9,
        };
        assert!(hodge_table_with_limits(&big, relaxed).is_ok());
    }

    #[test]
    fn fl_bound_examples() {
        let p = params(2, 2, 0, 1).with_stabilization(5).unwrap();
        assert_eq!(fl_bound(&p).unwrap(), 1);
        for g in 1..=3u32 {
            for n in 1..=3u32 {
                for d in -2..=5 {
                    let p = params(g, n, 1, d);
                    assert_eq!(fl_bound(&p).unwrap(), p.dimension());
                    let q = p.with_stabilization(p.stabilization() + 3).unwrap();
                    assert_eq!(fl_bound(&q).unwrap(), p.dimension());
                }
            }
        }
    }

    #[test]
    fn spectral_examples() {
        let s = spectral_numerology(&params(2, 2, 0, 1));
        assert_eq!((s.delta, s.genus_y), (2, 5));
        assert!(s.dim_consistency);
        let s = spectral_numerology(&params(3, 1, 4, 2));
        assert_eq!((s.delta, s.genus_y), (4, 3));
        assert!(s.dim_consistency);
    }
}
