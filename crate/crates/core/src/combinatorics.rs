//! Exact integer and rational primitives: generalized binomials, the
//! parity-matched binomial tail sum, and Todd series coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Arbitrary-precision rational, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient `n(n-1)...(n-j+1)/j!` for any integer `n`.
///
/// Agrees with the coefficient of `x^j` in the formal expansion of `(1+x)^n`,
/// so negative upper entries are allowed.
pub fn binom_general(n: i64, j: usize) -> Rational {
    Rational::from_integer(binom_int(n, j))
}

/// Integer-valued form of [`binom_general`].
pub fn binom_int(n: i64, j: usize) -> BigInt {
    let mut num = BigInt::one();
    let n = BigInt::from(n);
    for i in 0..j {
        num *= &n - i;
    }
    let den = factorial(j as u64);
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero(), "generalized binomial must be integral");
    quot
}

/// Signed-index entry point: rejects a negative lower index.
pub fn try_binom(n: i64, j: i64) -> Result<Rational> {
    if j < 0 {
        return Err(Error::invalid(format!(
            "binomial lower index {j} is negative"
        )));
    }
    Ok(binom_general(n, j as usize))
}

/// Binomial with the convention that a negative lower index gives zero.
pub(crate) fn binom_or_zero(n: i64, j: i64) -> BigInt {
    if j < 0 {
        BigInt::zero()
    } else {
        binom_int(n, j as usize)
    }
}

/// `C(2g, n) + C(2g, n-2) + ...`, the sum stopping at index 0 or 1.
///
/// Defined for every `n`, including `n > 2g` where the leading terms vanish.
pub fn lambda_fn(g: u32, n: u32) -> BigInt {
    let top = 2 * g as i64;
    (0..=n / 2)
        .map(|j| binom_or_zero(top, n as i64 - 2 * j as i64))
        .fold(BigInt::zero(), |a, b| a + b)
}

/// Coefficients `t_0..t_max_order` of `x / (1 - e^{-x})`.
pub fn todd_series_coefficients(max_order: usize) -> Vec<Rational> {
    // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    let denom: Vec<Rational> = (0..=max_order)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rational::new(BigInt::from(sign), factorial(k as u64 + 1))
        })
        .collect();
    PowerSeries::new(denom, max_order).inverse().into_coeffs()
}

/// Coefficients of `log(x / (1 - e^{-x}))` up to `max_order`; entry 0 is zero.
pub fn log_todd_coefficients(max_order: usize) -> Vec<Rational> {
    PowerSeries::new(todd_series_coefficients(max_order), max_order)
        .log()
        .into_coeffs()
}

/// Checks `sum_{j=0}^{m} C(n, j) C(p, m-j) = C(n+p, m)` with generalized binomials.
pub fn vandermonde_check(n: i64, p: i64, m: usize) -> bool {
    let lhs = (0..=m)
        .map(|j| binom_int(n, j) * binom_int(p, m - j))
        .fold(BigInt::zero(), |a, b| a + b);
    lhs == binom_int(n + p, m)
}

/// `base^exp` as a big integer.
pub(crate) fn pow_int(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Ceiling division for signed integers with positive divisor.
pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    let (q, r) = (a.div_euclid(b), a.rem_euclid(b));
    if r == 0 {
        q
    } else {
        q + 1
    }
}
