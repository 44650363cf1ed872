//! Dense polynomials in `x` and the two derangement polynomial families:
//! the generalized polynomials `e^z / (1-xz)^r` and the order-`r`
//! polynomials `e^{xz} / (1-z)^r`, which are reflections of each other.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact::{binomial, factorial, from_integer, int, rising_factorial, Integer, Rational};
use crate::report::{Cell, Params};
use crate::series::{egf_values, FamilySpec};
use crate::{Error, Result};

/// Coefficient list, index `k` holding the coefficient of `x^k`.
///
/// Trailing zeros are allowed; equality compares trimmed coefficient lists.
#[derive(Debug, Clone)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn trimmed(&self) -> &[Rational] {
        let len = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(0, |i| i + 1);
        &self.coeffs[..len]
    }

    /// Degree of the trimmed polynomial; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.trimmed().len().saturating_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Polynomial {}

pub fn eval_poly(p: &Polynomial, x: &Rational) -> Rational {
    p.eval(x)
}

/// Explicit sum `Σ_k C(n,k) r^(k) x^k` of the generalized polynomial.
pub fn generalized_poly(n: usize, r: u32) -> Polynomial {
    let coeffs = (0..=n)
        .map(|k| from_integer(binomial(n, k as i64) * rising_factorial(r as i64, k)))
        .collect();
    Polynomial::new(coeffs)
}

/// Explicit sum `Σ_k C(n,k) r^(k) x^{n-k}` of the order-`r` polynomial.
pub fn order_poly(n: usize, r: u32) -> Polynomial {
    reflect(&generalized_poly(n, r), n).expect("degree of the generalized polynomial is n")
}

/// `x^n p(1/x)`: reverses the coefficient list padded to length `n + 1`.
pub fn reflect(p: &Polynomial, n: usize) -> Result<Polynomial> {
    let t = p.trimmed();
    if t.len() > n + 1 {
        return Err(Error::DegreeTooHigh { degree: t.len() - 1, n });
    }
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (k, c) in t.iter().enumerate() {
        coeffs[n - k] = c.clone();
    }
    Ok(Polynomial::new(coeffs))
}

/// `n! Σ_{k<=n} (-1)^k / k!`, summed as the integers `±n!/k!`.
pub fn classic_derangement(n: usize) -> Integer {
    let mut sum = Integer::zero();
    // n!/k! for k = n, n-1, ..., 0
    let mut tail = Integer::one();
    for k in (0..=n).rev() {
        if k % 2 == 0 {
            sum += &tail;
        } else {
            sum -= &tail;
        }
        tail *= k.max(1);
    }
    sum
}

/// Cyclic derangement count `(-1)^n` times the `r = 1` generalized
/// polynomial at `-r`.
pub fn cyclic_derangement(n: usize, r: u32) -> Integer {
    let v = generalized_poly(n, 1).eval(&int(-(r as i64)));
    let v = if n.is_multiple_of(2) { v } else { -v };
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Generalized polynomial values at `x` by the fixed-order convolution
/// recurrence
/// `D_{n+1} = D_n + r x Σ_k C(n,k) D_k x^{n-k} (n-k)!`, seeded by `D_0 = 1`.
pub fn generalized_by_convolution(r: u32, x: &Rational, count: usize) -> Vec<Rational> {
    let r = int(r as i64);
    let mut out = vec![Rational::one()];
    while out.len() < count {
        let n = out.len() - 1;
        let mut acc = Rational::zero();
        let mut x_pow = Rational::one();
        // j = n - k runs upward so x^j and j! build incrementally
        for j in 0..=n {
            let k = n - j;
            let weight = from_integer(binomial(n, k as i64) * factorial(j));
            acc += &out[k] * &x_pow * weight;
            x_pow *= x;
        }
        let next = &out[n] + &r * x * acc;
        out.push(next);
    }
    out.truncate(count.max(1));
    out
}

/// Order-`r` polynomial values at `x` by
/// `d_{n+1} = x d_n + r Σ_k C(n,k) d_k (n-k)!`, seeded by `d_0 = 1`.
pub fn order_by_convolution(r: u32, x: &Rational, count: usize) -> Vec<Rational> {
    let r = int(r as i64);
    let mut out = vec![Rational::one()];
    while out.len() < count {
        let n = out.len() - 1;
        let mut acc = Rational::zero();
        for k in 0..=n {
            acc += &out[k] * from_integer(binomial(n, k as i64) * factorial(n - k));
        }
        let next = x * &out[n] + &r * acc;
        out.push(next);
    }
    out.truncate(count.max(1));
    out
}

/// `(n, r, x)` in row-major order, `n` outermost.
fn grid<'a>(n_max: usize, rs: &'a [u32], xs: &'a [Rational]) -> Vec<(usize, u32, &'a Rational)> {
    (0..=n_max)
        .flat_map(|n| rs.iter().flat_map(move |&r| xs.iter().map(move |x| (n, r, x))))
        .collect()
}

/// Both cross-order shift recurrences on the grid:
/// `D_{n+1}^(r)(x) = D_n^(r)(x) + r x D_n^(r+1)(x)` and
/// `d_{n+1}^(r)(x) = x d_n^(r)(x) + r d_n^(r+1)(x)`.
///
/// A failed identity is a `Fail` cell, not an error.
pub fn verify_shift_recurrences(n_max: usize, rs: &[u32], xs: &[Rational]) -> Vec<Cell> {
    let grid = grid(n_max, rs, xs);
    grid.par_iter()
        .flat_map_iter(|&(n, r, x)| {
            let rq = int(r as i64);
            let params = |check: &str| {
                Params::new(check)
                    .set("n", n)
                    .set("r", r)
                    .rational("x", x)
            };

            let lhs = generalized_poly(n + 1, r).eval(x);
            let rhs = generalized_poly(n, r).eval(x) + &rq * x * generalized_poly(n, r + 1).eval(x);
            let gen = Cell::compare(params("shift-generalized"), &lhs, &rhs);

            let lhs = order_poly(n + 1, r).eval(x);
            let rhs = x * order_poly(n, r).eval(x) + &rq * order_poly(n, r + 1).eval(x);
            let ord = Cell::compare(params("shift-order"), &lhs, &rhs);

            [gen, ord]
        })
        .collect()
}

/// `x^n D_n^(r)(1/x) = d_n^(r)(x)`; `x = 0` cells are skipped.
pub fn verify_reflection(n_max: usize, rs: &[u32], xs: &[Rational]) -> Vec<Cell> {
    let grid = grid(n_max, rs, xs);
    grid.par_iter()
        .map(|&(n, r, x)| {
            let params = Params::new("reflection")
                .set("n", n)
                .set("r", r)
                .rational("x", x);
            if x.is_zero() {
                return Cell::skipped(params, "x = 0");
            }
            let lhs = num_traits::pow(x.clone(), n) * generalized_poly(n, r).eval(&x.recip());
            let rhs = order_poly(n, r).eval(x);
            Cell::compare(params, &rhs, &lhs)
        })
        .collect()
}

/// Explicit formula, EGF coefficient and convolution recurrence agree, for
/// both polynomial families. One cell per `(family, n, r, x)`; the cell
/// passes only if all three values coincide.
pub fn verify_three_paths(n_max: usize, rs: &[u32], xs: &[Rational]) -> Result<Vec<Cell>> {
    let grid: Vec<(u32, &Rational)> = rs
        .iter()
        .flat_map(|&r| xs.iter().map(move |x| (r, x)))
        .collect();
    let count = n_max + 1;
    let per_pair: Vec<Result<Vec<Cell>>> = grid
        .par_iter()
        .map(|&(r, x)| {
            let mut cells = Vec::with_capacity(2 * count);
            let families = [
                (
                    "three-path-generalized",
                    egf_values(&FamilySpec::Generalized { r, x: x.clone() }, count)?,
                    generalized_by_convolution(r, x, count),
                    generalized_poly as fn(usize, u32) -> Polynomial,
                ),
                (
                    "three-path-order",
                    egf_values(&FamilySpec::OrderRPoly { r, x: x.clone() }, count)?,
                    order_by_convolution(r, x, count),
                    order_poly,
                ),
            ];
            for (check, egf, conv, explicit) in &families {
                for n in 0..count {
                    let value = explicit(n, r).eval(x);
                    let params = Params::new(check).set("n", n).set("r", r).rational("x", x);
                    let mut cell = Cell::compare(params, &value, &egf[n]);
                    if conv[n] != value {
                        cell.verdict = crate::Verdict::Fail;
                    }
                    cells.push(cell.with_detail("convolution", crate::exact::format_rational(&conv[n])));
                }
            }
            Ok(cells)
        })
        .collect();
    let mut out = Vec::new();
    for cells in per_pair {
        out.extend(cells?);
    }
    Ok(out)
}
