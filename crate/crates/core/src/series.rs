//! Truncated univariate power series over exact rationals.

use num_traits::{One, Zero};

use crate::combinatorics::Rational;

/// A power series `c_0 + c_1 x + ... + c_n x^n`, known modulo `x^(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Builds a series truncated at `order` (inclusive), padding or cutting `coeffs`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse. Panics if the constant term vanishes.
    pub fn inverse(&self) -> PowerSeries {
        let c0 = &self.coeffs[0];
        assert!(
            !c0.is_zero(),
            "power series with zero constant term is not invertible"
        );
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -acc * &inv0;
        }
        PowerSeries { coeffs: out }
    }

    /// `log(f)` for `f` with constant term 1, via `n g_n = n f_n - sum_{k<n} k g_k f_{n-k}`.
    pub fn log(&self) -> PowerSeries {
        assert!(self.coeffs[0].is_one(), "log needs constant term 1");
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = Rational::from_integer(m.into()) * &self.coeffs[m];
            for k in 1..m {
                acc -= Rational::from_integer(k.into()) * &out[k] * &self.coeffs[m - k];
            }
            out[m] = acc / Rational::from_integer(m.into());
        }
        PowerSeries { coeffs: out }
    }

    /// `exp(f)` for `f` with zero constant term, via `n g_n = sum_k k f_k g_{n-k}`.
    pub fn exp(&self) -> PowerSeries {
        assert!(self.coeffs[0].is_zero(), "exp needs zero constant term");
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += Rational::from_integer(k.into()) * &self.coeffs[k] * &out[m - k];
            }
            out[m] = acc / Rational::from_integer(m.into());
        }
        PowerSeries { coeffs: out }
    }
}
