//! Sparse graded-commutative rings presented by generators and relations.
//!
//! A [`RingModel`] lists generators (with cohomological degree and parity) in a
//! fixed canonical order. Odd generators are stored as a bitmask, so a product
//! of odd generators is always written in increasing generator order and the
//! Koszul sign of a reordering is a transposition count. Even generators carry
//! exponents and commute with everything.
//!
//! Relations cover the shapes needed for the cohomology of a curve, of its
//! Jacobian, of their product, and of polynomial models such as `Q[Θ, ξ]`:
//! nilpotency of an even generator, vanishing of a tensor factor above its top
//! degree, and contraction of a pair of odd generators to an even one
//! (`α_i β_i = σ`) or to zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub parity: Parity,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        let parity = if degree % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        Generator {
            name: name.into(),
            degree,
            parity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `x^order = 0` for an even generator `x`.
    Nilpotent { generator: usize, order: u16 },
    /// Any monomial whose degree in the listed generators exceeds `top_degree` vanishes.
    FactorTop {
        generators: Vec<usize>,
        top_degree: u32,
    },
    /// `first * second = target` for odd generators `first < second`; `None` means zero.
    Contract {
        first: usize,
        second: usize,
        target: Option<usize>,
    },
}

/// A monomial in canonical order: odd generators as a bitmask indexed by
/// generator position, even generators as exponents indexed by even slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    odd: u64,
    even: Vec<u16>,
}

impl Monomial {
    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn even_exponents(&self) -> &[u16] {
        &self.even
    }
}

#[derive(Clone, Debug)]
struct Contraction {
    mask: u64,
    first: usize,
    second: usize,
    target: Option<usize>,
}

#[derive(Clone, Debug)]
struct FactorBound {
    odd_mask: u64,
    even_slots: Vec<usize>,
    top_degree: u32,
}

#[derive(Clone, Debug)]
pub struct RingModel {
    name: String,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
    top_degree: u32,
    even_slot: Vec<Option<usize>>,
    even_gens: Vec<usize>,
    nilpotency: Vec<Option<u16>>,
    contractions: Vec<Contraction>,
    factor_bounds: Vec<FactorBound>,
}

impl PartialEq for RingModel {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.generators == other.generators
            && self.relations == other.relations
            && self.top_degree == other.top_degree
    }
}

impl Eq for RingModel {}

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn below(i: usize) -> u64 {
    bit(i) - 1
}

fn above(mask: u64, i: usize) -> u32 {
    if i >= 63 {
        0
    } else {
        (mask >> (i + 1)).count_ones()
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

impl RingModel {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        relations: Vec<Relation>,
        top_degree: u32,
    ) -> Result<Self> {
        if generators.len() > 64 {
            return Err(Error::invalid("at most 64 generators are supported"));
        }
        for g in &generators {
            let expected = if g.degree % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            };
            if g.parity != expected || g.degree == 0 {
                return Err(Error::invalid(format!(
                    "generator {} has inconsistent degree/parity",
                    g.name
                )));
            }
        }
        let mut even_slot = vec![None; generators.len()];
        let mut even_gens = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            if g.parity == Parity::Even {
                even_slot[i] = Some(even_gens.len());
                even_gens.push(i);
            }
        }
        let mut nilpotency = vec![None; even_gens.len()];
        let mut contractions = Vec::new();
        let mut factor_bounds = Vec::new();
        let check_index = |i: usize| {
            if i >= generators.len() {
                Err(Error::invalid(format!(
                    "relation mentions unknown generator {i}"
                )))
            } else {
                Ok(())
            }
        };
        for rel in &relations {
            match rel {
                Relation::Nilpotent { generator, order } => {
                    check_index(*generator)?;
                    let slot = even_slot[*generator]
                        .ok_or_else(|| Error::invalid("nilpotency relation on an odd generator"))?;
                    nilpotency[slot] =
                        Some(nilpotency[slot].map_or(*order, |o: u16| o.min(*order)));
                }
                Relation::FactorTop {
                    generators: gens,
                    top_degree,
                } => {
                    let mut odd_mask = 0;
                    let mut even_slots = Vec::new();
                    for &g in gens {
                        check_index(g)?;
                        match even_slot[g] {
                            Some(s) => even_slots.push(s),
                            None => odd_mask |= bit(g),
                        }
                    }
                    factor_bounds.push(FactorBound {
                        odd_mask,
                        even_slots,
                        top_degree: *top_degree,
                    });
                }
                Relation::Contract {
                    first,
                    second,
                    target,
                } => {
                    check_index(*first)?;
                    check_index(*second)?;
                    if first >= second
                        || generators[*first].parity != Parity::Odd
                        || generators[*second].parity != Parity::Odd
                    {
                        return Err(Error::invalid(
                            "contraction needs two odd generators in increasing order",
                        ));
                    }
                    if let Some(t) = target {
                        check_index(*t)?;
                        if generators[*t].degree
                            != generators[*first].degree + generators[*second].degree
                        {
                            return Err(Error::invalid("contraction target has the wrong degree"));
                        }
                    }
                    contractions.push(Contraction {
                        mask: bit(*first) | bit(*second),
                        first: *first,
                        second: *second,
                        target: *target,
                    });
                }
            }
        }
        Ok(RingModel {
            name: name.into(),
            generators,
            relations,
            top_degree,
            even_slot,
            even_gens,
            nilpotency,
            contractions,
            factor_bounds,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial {
            odd: 0,
            even: vec![0; self.even_gens.len()],
        }
    }

    pub fn generator_monomial(&self, index: usize) -> Monomial {
        let mut m = self.unit_monomial();
        match self.even_slot[index] {
            Some(s) => m.even[s] = 1,
            None => m.odd = bit(index),
        }
        m
    }

    /// Builds a monomial from odd generator indices (any order) and even
    /// exponents, returning the Koszul sign of sorting the odd factors.
    /// `None` if the product vanishes.
    pub fn monomial(&self, odd: &[usize], even: &[(usize, u16)]) -> Option<(bool, Monomial)> {
        let mut acc = (false, self.unit_monomial());
        for &i in odd {
            let (s, m) = self.mul_monomials(&acc.1, &self.generator_monomial(i))?;
            acc = (acc.0 ^ s, m);
        }
        for &(i, e) in even {
            let slot = self.even_slot[i]?;
            let mut m = self.unit_monomial();
            m.even[slot] = e;
            let (s, p) = self.mul_monomials(&acc.1, &m)?;
            acc = (acc.0 ^ s, p);
        }
        Some(acc)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        let odd: u32 = bits(m.odd).map(|i| self.generators[i].degree).sum();
        let even: u32 = m
            .even
            .iter()
            .zip(&self.even_gens)
            .map(|(&e, &g)| e as u32 * self.generators[g].degree)
            .sum();
        odd + even
    }

    /// Product of two canonical monomials; the flag is `true` when the
    /// result carries a minus sign.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        if a.odd & b.odd != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in bits(b.odd) {
            swaps += above(a.odd, j);
        }
        let even = a.even.iter().zip(&b.even).map(|(x, y)| x + y).collect();
        self.normalize(
            swaps % 2 == 1,
            Monomial {
                odd: a.odd | b.odd,
                even,
            },
        )
    }

    fn normalize(&self, mut negative: bool, mut m: Monomial) -> Option<(bool, Monomial)> {
        for c in &self.contractions {
            if m.odd & c.mask != c.mask {
                continue;
            }
            let before_first = (m.odd & below(c.first)).count_ones();
            let before_second = (m.odd & below(c.second) & !bit(c.first)).count_ones();
            negative ^= (before_first + before_second) % 2 == 1;
            m.odd &= !c.mask;
            let Some(target) = c.target else {
                return None;
            };
            let slot = self.even_slot[target].expect("contraction target is even");
            m.even[slot] += 1;
        }
        for (slot, order) in self.nilpotency.iter().enumerate() {
            if let Some(order) = order {
                if m.even[slot] >= *order {
                    return None;
                }
            }
        }
        for fb in &self.factor_bounds {
            let odd: u32 = bits(m.odd & fb.odd_mask)
                .map(|i| self.generators[i].degree)
                .sum();
            let even: u32 = fb
                .even_slots
                .iter()
                .map(|&s| m.even[s] as u32 * self.generators[self.even_gens[s]].degree)
                .sum();
            if odd + even > fb.top_degree {
                return None;
            }
        }
        if self.degree(&m) > self.top_degree {
            return None;
        }
        Some((negative, m))
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            match self.even_slot[i] {
                Some(s) => match m.even[s] {
                    0 => {}
                    1 => parts.push(g.name.clone()),
                    e => parts.push(format!("{}^{}", g.name, e)),
                },
                None => {
                    if m.odd & bit(i) != 0 {
                        parts.push(g.name.clone());
                    }
                }
            }
        }
        parts.join("*")
    }
}

/// An element of a [`RingModel`], stored sparsely in the canonical monomial basis.
#[derive(Clone, Debug)]
pub struct GradedClass {
    model: Arc<RingModel>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GradedClass {
    fn eq(&self, other: &Self) -> bool {
        same_model(&self.model, &other.model) && self.terms == other.terms
    }
}

impl Eq for GradedClass {}

fn same_model(a: &Arc<RingModel>, b: &Arc<RingModel>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GradedClass {
    pub fn zero(model: &Arc<RingModel>) -> Self {
        GradedClass {
            model: model.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(model: &Arc<RingModel>) -> Self {
        Self::constant(model, Rational::one())
    }

    pub fn constant(model: &Arc<RingModel>, value: Rational) -> Self {
        let mut c = Self::zero(model);
        c.add_term(model.unit_monomial(), value);
        c
    }

    pub fn from_integer(model: &Arc<RingModel>, value: i64) -> Self {
        Self::constant(model, Rational::from_integer(BigInt::from(value)))
    }

    pub fn generator(model: &Arc<RingModel>, index: usize) -> Self {
        let mut c = Self::zero(model);
        c.add_term(model.generator_monomial(index), Rational::one());
        c
    }

    pub fn named(model: &Arc<RingModel>, name: &str) -> Result<Self> {
        let i = model
            .generator_index(name)
            .ok_or_else(|| Error::invalid(format!("no generator named {name}")))?;
        Ok(Self::generator(model, i))
    }

    /// Monomial term with the given coefficient; factors may be listed in any order.
    pub fn monomial(
        model: &Arc<RingModel>,
        coeff: Rational,
        odd: &[usize],
        even: &[(usize, u16)],
    ) -> Self {
        let mut c = Self::zero(model);
        if let Some((neg, m)) = model.monomial(odd, even) {
            c.add_term(m, if neg { -coeff } else { coeff });
        }
        c
    }

    pub fn model(&self) -> &Arc<RingModel> {
        &self.model
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&self.model.unit_monomial())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, value: Rational) {
        if value.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
        }
    }

    /// Part of the class in cohomological degree `degree`.
    pub fn homogeneous(&self, degree: u32) -> GradedClass {
        GradedClass {
            model: self.model.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.model.degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree above `degree`.
    pub fn truncate(&self, degree: u32) -> GradedClass {
        GradedClass {
            model: self.model.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.model.degree(m) <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| self.model.degree(m) == degree)
    }

    pub fn has_only_even_degrees(&self) -> bool {
        self.terms.keys().all(|m| self.model.degree(m) % 2 == 0)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.model.degree(m)).max()
    }

    pub fn scale(&self, factor: &Rational) -> GradedClass {
        if factor.is_zero() {
            return Self::zero(&self.model);
        }
        GradedClass {
            model: self.model.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Applies `f(degree, coefficient)` termwise.
    pub fn map_by_degree(&self, f: impl Fn(u32, &Rational) -> Rational) -> GradedClass {
        let mut out = Self::zero(&self.model);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(self.model.degree(m), c));
        }
        out
    }

    pub fn try_add(&self, other: &GradedClass) -> Result<GradedClass> {
        if !same_model(&self.model, &other.model) {
            return Err(Error::ModelMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Graded-commutative product with relations and truncation applied.
    pub fn multiply(&self, other: &GradedClass) -> Result<GradedClass> {
        if !same_model(&self.model, &other.model) {
            return Err(Error::ModelMismatch);
        }
        let mut out = Self::zero(&self.model);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = self.model.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> GradedClass {
        let mut out = Self::one(&self.model);
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = &out * self;
        }
        out
    }

    /// `sum_k u^k / k!` for `u` nilpotent with even-degree components only.
    pub fn exp_truncated(&self) -> Result<GradedClass> {
        if !self.constant_term().is_zero() {
            return Err(Error::invalid("exp of a class with nonzero degree-0 part"));
        }
        if !self.has_only_even_degrees() {
            return Err(Error::invalid("exp of a class with odd-degree components"));
        }
        let mut out = Self::one(&self.model);
        let mut power = Self::one(&self.model);
        let mut k = 0u64;
        loop {
            power = &power * self;
            if power.is_zero() {
                break;
            }
            k += 1;
            power = power.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            out = &out + &power;
        }
        Ok(out)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| self.model.degree(m));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let name = self.model.format_monomial(m);
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            match (name.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{name}")?,
                (false, false) => write!(f, "{abs}*{name}")?,
            }
        }
        Ok(())
    }
}

impl Add for &GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: &GradedClass) -> GradedClass {
        self.try_add(rhs)
            .expect("adding classes from different ring models")
    }
}

impl AddAssign<&GradedClass> for GradedClass {
    fn add_assign(&mut self, rhs: &GradedClass) {
        assert!(
            same_model(&self.model, &rhs.model),
            "adding classes from different ring models"
        );
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        GradedClass {
            model: self.model.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: &GradedClass) -> GradedClass {
        self + &(-rhs)
    }
}

impl Mul for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &GradedClass) -> GradedClass {
        self.multiply(rhs)
            .expect("multiplying classes from different ring models")
    }
}

impl Mul<&Rational> for &GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: &Rational) -> GradedClass {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rat;

    fn exterior(n: usize) -> Arc<RingModel> {
        let gens = (0..n).map(|i| Generator::new(format!("e{i}"), 1)).collect();
        Arc::new(RingModel::new("exterior", gens, vec![], n as u32).unwrap())
    }

    #[test]
    fn odd_generators_anticommute() {
        let m = exterior(3);
        let e0 = GradedClass::generator(&m, 0);
        let e1 = GradedClass::generator(&m, 1);
        assert_eq!(&e0 * &e1, -&(&e1 * &e0));
        assert!((&e0 * &e0).is_zero());
    }

    #[test]
    fn reordering_absorbs_sign() {
        let m = exterior(4);
        let a = GradedClass::monomial(&m, rat(1), &[3, 1, 0], &[]);
        let b = GradedClass::monomial(&m, rat(1), &[0, 1, 3], &[]);
        // (3 1 0) -> (0 1 3) is an odd permutation
        assert_eq!(a, -&b);
    }

    #[test]
    fn nilpotent_and_top_degree() {
        let gens = vec![Generator::new("t", 2), Generator::new("x", 2)];
        let rels = vec![Relation::Nilpotent {
            generator: 0,
            order: 3,
        }];
        let m = Arc::new(RingModel::new("poly", gens, rels, 8).unwrap());
        let t = GradedClass::generator(&m, 0);
        let x = GradedClass::generator(&m, 1);
        assert!(t.pow(3).is_zero());
        assert!(!t.pow(2).is_zero());
        assert!(x.pow(5).is_zero());
        assert!(!(&t.pow(2) * &x.pow(2)).is_zero());
        let e = t.exp_truncated().unwrap();
        let expected =
            &(&GradedClass::one(&m) + &t) + &t.pow(2).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(e, expected);
    }

    #[test]
    fn exp_rejects_constant_and_odd() {
        let m = exterior(2);
        assert!(GradedClass::one(&m).exp_truncated().is_err());
        assert!(GradedClass::generator(&m, 0).exp_truncated().is_err());
        assert_eq!(
            GradedClass::zero(&m).exp_truncated().unwrap(),
            GradedClass::one(&m)
        );
    }

    #[test]
    fn mismatched_models_rejected() {
        let a = GradedClass::one(&exterior(2));
        let b = GradedClass::one(&exterior(3));
        assert_eq!(a.multiply(&b), Err(Error::ModelMismatch));
    }

    #[test]
    fn invalid_relations_rejected() {
        let gens = vec![Generator::new("a", 1), Generator::new("b", 1)];
        assert!(RingModel::new(
            "bad",
            gens.clone(),
            vec![Relation::Nilpotent {
                generator: 0,
                order: 2
            }],
            2
        )
        .is_err());
        assert!(RingModel::new(
            "bad",
            gens,
            vec![Relation::Contract {
                first: 1,
                second: 0,
                target: None
            }],
            2
        )
        .is_err());
    }
}
