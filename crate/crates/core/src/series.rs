//! Truncated power series in `z` over the rationals, and the exponential
//! generating functions of every sequence family.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::exact::{factorial, format_rational, from_integer, int, rising_factorial, Rational};
use crate::{Error, Result};

/// Coefficients `[z^0], ..., [z^order]` of a power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series of the given order from leading coefficients, padding
    /// with zeros or truncating as needed.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplies by `z^k`, dropping terms past the order.
    pub fn shift(&self, k: usize) -> TruncatedSeries {
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        if k <= order {
            out[k..].clone_from_slice(&self.coeffs[..=order - k]);
        }
        TruncatedSeries { coeffs: out }
    }

    /// `n! [z^n]` for every `n`: the sequence an EGF encodes.
    pub fn egf_terms(&self) -> Vec<Rational> {
        let mut fact = Rational::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= int(n as i64);
                }
                c * &fact
            })
            .collect()
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Panics on mismatched orders; use [`TruncatedSeries::mul`] to get an error.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs).expect("series orders must match")
    }
}

/// `e^{cz}`: coefficients `c^n / n!`.
pub fn series_exp(c: &Rational, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for n in 1..=order {
        term = term * c / int(n as i64);
        coeffs.push(term.clone());
    }
    TruncatedSeries { coeffs }
}

/// `1 / (1 - xz)^r` via its closed binomial expansion `r^(k) x^k / k!`.
pub fn geom_pow(x: &Rational, r: u32, order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|k| {
            let c = from_integer(rising_factorial(r as i64, k)) / from_integer(factorial(k));
            c * num_traits::pow(x.clone(), k)
        })
        .collect();
    TruncatedSeries { coeffs }
}

/// One of the seven sequence families, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// `e^{-z} / (1-z)`
    Classic,
    /// `e^{-z} / (1-z)^r`
    OrderRNumbers { r: u32 },
    /// `z^r e^{-z} / (1-z)^{r+1}`, `r >= 1`
    RDerangementNumbers { r: u32 },
    /// `z^r e^{xz} / (1-z)^{r+1}`, `r >= 1`
    RDerangementPoly { r: u32, x: Rational },
    /// `e^{xz} / (1-z)^r`
    OrderRPoly { r: u32, x: Rational },
    /// `e^{-z} / (1-rz)`
    Cyclic { r: u32 },
    /// `e^z / (1-xz)^r`
    Generalized { r: u32, x: Rational },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::RDerangementNumbers { r } | FamilySpec::RDerangementPoly { r, .. }
                if *r == 0 =>
            {
                Err(Error::InvalidFamilyParams(format!(
                    "{} requires r >= 1",
                    self.name()
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Classic => "classic",
            FamilySpec::OrderRNumbers { .. } => "order-r-numbers",
            FamilySpec::RDerangementNumbers { .. } => "r-derangement-numbers",
            FamilySpec::RDerangementPoly { .. } => "r-derangement-poly",
            FamilySpec::OrderRPoly { .. } => "order-r-poly",
            FamilySpec::Cyclic { .. } => "cyclic",
            FamilySpec::Generalized { .. } => "generalized",
        }
    }

    pub fn r(&self) -> Option<u32> {
        match self {
            FamilySpec::Classic => None,
            FamilySpec::OrderRNumbers { r }
            | FamilySpec::RDerangementNumbers { r }
            | FamilySpec::RDerangementPoly { r, .. }
            | FamilySpec::OrderRPoly { r, .. }
            | FamilySpec::Cyclic { r }
            | FamilySpec::Generalized { r, .. } => Some(*r),
        }
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            FamilySpec::RDerangementPoly { x, .. }
            | FamilySpec::OrderRPoly { x, .. }
            | FamilySpec::Generalized { x, .. } => Some(x),
            _ => None,
        }
    }

    /// Parameters as report-ready strings, keyed `family`, `r`, `x`.
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("family".to_string(), self.name().to_string());
        if let Some(r) = self.r() {
            m.insert("r".to_string(), r.to_string());
        }
        if let Some(x) = self.x() {
            m.insert("x".to_string(), format_rational(x));
        }
        m
    }

    /// The family's EGF, expanded to the given order.
    pub fn egf(&self, order: usize) -> Result<TruncatedSeries> {
        self.validate()?;
        let minus_one = int(-1);
        let one = Rational::one();
        let series = match self {
            FamilySpec::Classic => &series_exp(&minus_one, order) * &geom_pow(&one, 1, order),
            FamilySpec::OrderRNumbers { r } => {
                &series_exp(&minus_one, order) * &geom_pow(&one, *r, order)
            }
            FamilySpec::RDerangementNumbers { r } => {
                (&series_exp(&minus_one, order) * &geom_pow(&one, r + 1, order)).shift(*r as usize)
            }
            FamilySpec::RDerangementPoly { r, x } => {
                (&series_exp(x, order) * &geom_pow(&one, r + 1, order)).shift(*r as usize)
            }
            FamilySpec::OrderRPoly { r, x } => &series_exp(x, order) * &geom_pow(&one, *r, order),
            FamilySpec::Cyclic { r } => {
                &series_exp(&minus_one, order) * &geom_pow(&int(*r as i64), 1, order)
            }
            FamilySpec::Generalized { r, x } => &series_exp(&one, order) * &geom_pow(x, *r, order),
        };
        Ok(series)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match (self.r(), self.x()) {
            (Some(r), Some(x)) => write!(f, "(r={r}, x={})", format_rational(x)),
            (Some(r), None) => write!(f, "(r={r})"),
            _ => Ok(()),
        }
    }
}

/// `a_n = n! [z^n] F(z)` for `n = 0..count`, where `F` is the family's EGF.
pub fn egf_values(spec: &FamilySpec, count: usize) -> Result<Vec<Rational>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    Ok(spec.egf(count - 1)?.egf_terms())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&i| int(i)).collect()
    }

    #[test]
    fn mul_examples() {
        let a = TruncatedSeries::new(ints(&[1, 1]), 2);
        let b = TruncatedSeries::new(ints(&[1, -1]), 2);
        assert_eq!(a.mul(&b).unwrap().coeffs(), ints(&[1, 0, -1]).as_slice());
        assert_eq!(a.mul(&TruncatedSeries::zero(2)).unwrap(), TruncatedSeries::zero(2));

        let e = series_exp(&int(1), 6);
        let e_inv = series_exp(&int(-1), 6);
        assert_eq!(e.mul(&e_inv).unwrap(), TruncatedSeries::one(6));
    }

    #[test]
    fn mul_rejects_order_mismatch() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::one(3);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch(2, 3)));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(series_exp(&int(0), 3).coeffs(), ints(&[1, 0, 0, 0]).as_slice());
        assert_eq!(
            series_exp(&int(-1), 4).coeffs(),
            &[int(1), int(-1), ratio(1, 2), ratio(-1, 6), ratio(1, 24)]
        );
        assert_eq!(
            series_exp(&ratio(1, 2), 2).coeffs(),
            &[int(1), ratio(1, 2), ratio(1, 8)]
        );
    }

    #[test]
    fn geom_pow_examples() {
        assert_eq!(geom_pow(&ratio(7, 3), 0, 4), TruncatedSeries::one(4));
        assert_eq!(geom_pow(&int(1), 1, 3).coeffs(), ints(&[1, 1, 1, 1]).as_slice());
        assert_eq!(geom_pow(&int(2), 2, 2).coeffs(), ints(&[1, 4, 12]).as_slice());
    }

    #[test]
    fn egf_value_examples() {
        assert_eq!(egf_values(&FamilySpec::Classic, 5).unwrap(), ints(&[1, 0, 1, 2, 9]));
        let gen = FamilySpec::Generalized { r: 1, x: int(-1) };
        assert_eq!(egf_values(&gen, 5).unwrap(), ints(&[1, 0, 1, -2, 9]));
        assert_eq!(
            egf_values(&FamilySpec::Cyclic { r: 2 }, 4).unwrap(),
            ints(&[1, 1, 5, 29])
        );
        assert_eq!(
            egf_values(&FamilySpec::OrderRNumbers { r: 2 }, 4).unwrap(),
            ints(&[1, 1, 3, 11])
        );
    }

    #[test]
    fn r_derangement_families_have_leading_zeros() {
        // z^2 e^{-z}/(1-z)^3: 2!·[z^2] = 2, 3!·[z^3] = 6·(3 - 1) = 12
        let v = egf_values(&FamilySpec::RDerangementNumbers { r: 2 }, 5).unwrap();
        assert_eq!(&v[..4], ints(&[0, 0, 2, 12]).as_slice());
        let p = egf_values(&FamilySpec::RDerangementPoly { r: 2, x: int(-1) }, 12).unwrap();
        assert_eq!(p, egf_values(&FamilySpec::RDerangementNumbers { r: 2 }, 12).unwrap());
    }

    #[test]
    fn r_derangement_rejects_zero_r() {
        for spec in [
            FamilySpec::RDerangementNumbers { r: 0 },
            FamilySpec::RDerangementPoly { r: 0, x: int(1) },
        ] {
            assert!(matches!(
                egf_values(&spec, 3),
                Err(Error::InvalidFamilyParams(_))
            ));
        }
        assert!(egf_values(&FamilySpec::Classic, 0).is_err());
    }

    #[test]
    fn specialization_chain() {
        let n = 25;
        assert_eq!(
            egf_values(&FamilySpec::Classic, n).unwrap(),
            egf_values(&FamilySpec::Cyclic { r: 1 }, n).unwrap()
        );
        for r in 0..5 {
            assert_eq!(
                egf_values(&FamilySpec::OrderRPoly { r, x: int(-1) }, n).unwrap(),
                egf_values(&FamilySpec::OrderRNumbers { r }, n).unwrap()
            );
        }
        for rp in 1..5u32 {
            let gen = egf_values(&FamilySpec::Generalized { r: 1, x: int(-(rp as i64)) }, n).unwrap();
            let cyc = egf_values(&FamilySpec::Cyclic { r: rp }, n).unwrap();
            for (k, (g, c)) in gen.iter().zip(&cyc).enumerate() {
                let sign = if k % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(&(g * sign), c);
            }
        }
    }

    #[test]
    fn integer_inputs_give_integer_values() {
        for spec in [
            FamilySpec::Classic,
            FamilySpec::OrderRNumbers { r: 3 },
            FamilySpec::RDerangementNumbers { r: 2 },
            FamilySpec::OrderRPoly { r: 2, x: int(5) },
            FamilySpec::Cyclic { r: 4 },
            FamilySpec::Generalized { r: 3, x: int(-2) },
        ] {
            for v in egf_values(&spec, 20).unwrap() {
                assert!(v.is_integer(), "{spec}: {v}");
            }
        }
    }
}
