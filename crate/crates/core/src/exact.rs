//! Exact scalars and the elementary combinatorial functions built on them.
//!
//! `Integer` and `Rational` are arbitrary precision. `Rational` is kept in
//! canonical form (positive denominator, coprime parts) after every
//! operation, so structural equality is numeric equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Rising factorial `r (r+1) ... (r+k-1)`, equal to 1 for `k = 0`.
///
/// Any integer `r` is accepted; `r = 0` gives 0 for every `k >= 1`.
pub fn rising_factorial(r: i64, k: usize) -> Integer {
    let mut acc = Integer::one();
    for i in 0..k as i64 {
        let factor = r + i;
        if factor == 0 {
            return Integer::zero();
        }
        acc *= factor;
    }
    acc
}

pub fn factorial(n: usize) -> Integer {
    (2..=n as u64).fold(Integer::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> Integer {
    if k < 0 || k as u64 > n as u64 {
        return Integer::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = Integer::one();
    // acc = C(n - k + i, i) after step i; each division is exact.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(Integer::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn from_integer(v: Integer) -> Rational {
    Rational::from_integer(v)
}

/// `base^exp` for a possibly negative exponent. `0^0 = 1`.
pub fn pow(base: &Rational, exp: i64) -> Result<Rational, Error> {
    if exp < 0 {
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize));
    }
    Ok(num_traits::pow(base.clone(), exp as usize))
}

/// Parse `p`, `-p`, `p/q` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: Integer = num.parse().map_err(|_| bad())?;
    let den: Integer = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Render as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_canonical(q: &Rational) -> bool {
    use num_integer::Integer as _;
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}
