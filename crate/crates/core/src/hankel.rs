//! Hankel matrices, exact determinants, and the closed-form Hankel
//! determinants of the derangement families.
//!
//! Three determinant kernels are provided: fraction-free Bareiss elimination
//! (the authority), Dodgson condensation (which contracts through the same
//! Sylvester identity `Δ_{m+1} = Δ_2(Δ_m) / Δ_{m-1}` used in inductive
//! Hankel proofs), and Laplace expansion as a small-size oracle.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::exact::{factorial, format_rational, from_integer, int, pow, rising_factorial, Integer, Rational};
use crate::poly::generalized_poly;
use crate::report::{Cell, Params, Verdict};
use crate::series::{egf_values, FamilySpec};
use crate::{Error, Result};

/// Largest matrix size accepted by [`det_cofactor`].
pub const COFACTOR_MAX_SIZE: usize = 6;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    size: usize,
    entries: Vec<Rational>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidArgument("matrix must be square and non-empty".into()));
        }
        Ok(SquareMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(size >= 1, "matrix size must be positive");
        let entries = (0..size * size).map(|k| f(k / size, k % size)).collect();
        SquareMatrix { size, entries }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The `(n+1) x (n+1)` matrix with entry `(i, j) = seq[i + j]`.
pub fn hankel_matrix(seq: &[Rational], n: usize) -> Result<SquareMatrix> {
    let needed = 2 * n + 1;
    if seq.len() < needed {
        return Err(Error::InsufficientTerms { size: n + 1, needed, got: seq.len() });
    }
    Ok(SquareMatrix::from_fn(n + 1, |i, j| seq[i + j].clone()))
}

/// Exact determinant by one-step fraction-free (Bareiss) elimination.
///
/// Each row is scaled by the LCM of its denominators so elimination runs
/// over the integers, where every Bareiss division is exact; the scale
/// factors are divided back out at the end.
pub fn det_bareiss(m: &SquareMatrix) -> Rational {
    let n = m.size;
    let mut scale = Integer::one();
    let mut a: Vec<Vec<Integer>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(Integer::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &lcm;
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = Integer::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = Integer::zero();
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    let det = if negate { -det } else { det };
    Rational::new(det, scale)
}

/// Condensation hit a zero interior minor and cannot continue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("zero interior minor at condensation step {step}")]
pub struct DegenerateInterior {
    pub step: usize,
}

/// Determinant by Dodgson condensation. Each step replaces the matrix by
/// its connected 2x2 minors divided by the interior of the previous
/// matrix; a zero divisor is reported as [`DegenerateInterior`].
pub fn det_condensation(m: &SquareMatrix) -> std::result::Result<Rational, DegenerateInterior> {
    let n = m.size;
    let mut prev: Vec<Vec<Rational>> = vec![vec![Rational::one(); n + 1]; n + 1];
    let mut cur: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut step = 1;
    while cur.len() > 1 {
        let s = cur.len() - 1;
        let mut next = vec![vec![Rational::zero(); s]; s];
        for i in 0..s {
            for j in 0..s {
                let divisor = &prev[i + 1][j + 1];
                if divisor.is_zero() {
                    return Err(DegenerateInterior { step });
                }
                let minor = &cur[i][j] * &cur[i + 1][j + 1] - &cur[i][j + 1] * &cur[i + 1][j];
                next[i][j] = minor / divisor;
            }
        }
        prev = cur;
        cur = next;
        step += 1;
    }
    Ok(cur[0][0].clone())
}

/// Laplace expansion along the first row. Sizes above
/// [`COFACTOR_MAX_SIZE`] are refused.
pub fn det_cofactor(m: &SquareMatrix) -> Result<Rational> {
    if m.size > COFACTOR_MAX_SIZE {
        return Err(Error::SizeTooLarge { size: m.size, limit: COFACTOR_MAX_SIZE });
    }
    let rows: Vec<usize> = (0..m.size).collect();
    let cols: Vec<usize> = (0..m.size).collect();
    Ok(laplace(m, &rows, &cols))
}

fn laplace(m: &SquareMatrix, rows: &[usize], cols: &[usize]) -> Rational {
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut total = Rational::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let entry = m.get(rows[0], c);
        if entry.is_zero() {
            continue;
        }
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
        let term = entry * laplace(m, &rows[1..], &minor_cols);
        if idx % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `Π_{k=1}^{n} r^(k-1) k!`, the product shared by all the closed forms.
fn rising_product(n: usize, r: u32) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| {
        acc * rising_factorial(r as i64, k - 1) * factorial(k)
    })
}

/// Hankel determinant of order `n+1` of the generalized polynomials at `z`:
/// `z^{n(n+1)} r^(n) Π_{k=1}^{n} r^(k-1) k!`.
pub fn closed_form_generalized(n: usize, r: u32, z: &Rational) -> Rational {
    let c = rising_factorial(r as i64, n) * rising_product(n, r);
    num_traits::pow(z.clone(), n * (n + 1)) * from_integer(c)
}

/// Hankel determinant of order `n+1` of the order-`r` polynomials, which
/// does not depend on the evaluation point: `r^(n) Π_{k=1}^{n} r^(k-1) k!`.
pub fn closed_form_order_d(n: usize, r: u32) -> Integer {
    rising_factorial(r as i64, n) * rising_product(n, r)
}

/// Hankel determinant of order `n+1` of the cyclic derangement counts:
/// `r^{n(n+1)} (Π_{k=1}^{n} k!)^2`.
pub fn closed_form_cyclic(n: usize, r: u32) -> Integer {
    let superfactorial: Integer = (1..=n).map(factorial).product();
    num_traits::pow(Integer::from(r), n * (n + 1)) * &superfactorial * &superfactorial
}

/// `(Π_{k=1}^{n} k!)^2`, the Hankel determinant of both `(i+j)!` and the
/// classic derangement numbers.
pub fn closed_form_classic(n: usize) -> Integer {
    closed_form_cyclic(n, 1)
}

/// Closed-form Hankel determinant of order `n+1` for a family, when one is
/// known.
pub fn closed_form(spec: &FamilySpec, n: usize) -> Result<Rational> {
    Ok(match spec {
        FamilySpec::Classic => from_integer(closed_form_classic(n)),
        FamilySpec::Generalized { r, x } => closed_form_generalized(n, *r, x),
        // the order-r numbers are the order-r polynomials at x = -1
        FamilySpec::OrderRPoly { r, .. } | FamilySpec::OrderRNumbers { r } => {
            from_integer(closed_form_order_d(n, *r))
        }
        FamilySpec::Cyclic { r } => from_integer(closed_form_cyclic(n, *r)),
        FamilySpec::RDerangementNumbers { .. } | FamilySpec::RDerangementPoly { .. } => {
            return Err(Error::NoClosedForm(spec.to_string()))
        }
    })
}

/// All determinant values computed for one Hankel matrix, against the
/// closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelReport {
    pub family: FamilySpec,
    /// Matrix size is `n + 1`.
    pub n: usize,
    pub det_bareiss: Rational,
    /// `None` when condensation met a zero interior minor.
    pub det_condensation: Option<Rational>,
    /// Present only for sizes up to [`COFACTOR_MAX_SIZE`].
    pub det_cofactor: Option<Rational>,
    pub closed_form: Rational,
    pub verdict: Verdict,
}

impl HankelReport {
    fn assemble(family: FamilySpec, n: usize, m: &SquareMatrix, closed_form: Rational) -> Self {
        let det_bareiss = det_bareiss(m);
        let det_condensation = det_condensation(m).ok();
        let det_cofactor = det_cofactor(m).ok();
        let agree = det_bareiss == closed_form
            && det_condensation.as_ref().is_none_or(|d| *d == closed_form)
            && det_cofactor.as_ref().is_none_or(|d| *d == closed_form);
        HankelReport {
            family,
            n,
            det_bareiss,
            det_condensation,
            det_cofactor,
            closed_form,
            verdict: if agree { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_cell(&self) -> Cell {
        let mut params = Params::new("hankel").set("n", self.n);
        for (k, v) in self.family.params() {
            params = params.set(&k, v);
        }
        let mut cell = Cell::compare(params, &self.closed_form, &self.det_bareiss);
        cell.verdict = self.verdict;
        let condensation = self
            .det_condensation
            .as_ref()
            .map_or_else(|| "degenerate".to_string(), format_rational);
        cell = cell.with_detail("condensation", condensation);
        if let Some(c) = &self.det_cofactor {
            cell = cell.with_detail("cofactor", format_rational(c));
        }
        cell
    }
}

/// Builds `2n+1` terms of the family, its Hankel matrix of size `n+1`, and
/// compares every available determinant with the closed form.
pub fn verify_hankel(spec: &FamilySpec, n: usize) -> Result<HankelReport> {
    let closed = closed_form(spec, n)?;
    let seq = egf_values(spec, 2 * n + 1)?;
    let m = hankel_matrix(&seq, n)?;
    Ok(HankelReport::assemble(spec.clone(), n, &m, closed))
}

/// Hankel determinant of `(i+j)!`, against `(Π k!)^2`. The factorials are
/// the order-1 polynomials at `x = 0`, which is how the report labels them.
pub fn verify_factorial_hankel(n: usize) -> Result<HankelReport> {
    let seq: Vec<Rational> = (0..=2 * n).map(|k| from_integer(factorial(k))).collect();
    let m = hankel_matrix(&seq, n)?;
    let family = FamilySpec::OrderRPoly { r: 1, x: Rational::zero() };
    Ok(HankelReport::assemble(family, n, &m, from_integer(closed_form_classic(n))))
}

/// `g_n(z) = e^{-z} d^n/dz^n (e^z / (1-z)^r)`, computed as
/// `D_n^(r)(1/(1-z)) / (1-z)^r`.
pub fn reduced_derivative(n: usize, r: u32, z: &Rational) -> Result<Rational> {
    let one_minus = Rational::one() - z;
    if one_minus.is_zero() {
        return Err(Error::PoleAtOne);
    }
    let t = one_minus.recip();
    Ok(generalized_poly(n, r).eval(&t) * num_traits::pow(t, r as usize))
}

/// Size-`n` Hankel matrix of the reduced derivatives `g_0, ..., g_{2n-2}`.
pub fn derivative_hankel_matrix(n: usize, r: u32, z: &Rational) -> Result<SquareMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("derivative Hankel size must be >= 1".into()));
    }
    let g = (0..2 * n - 1)
        .map(|m| reduced_derivative(m, r, z))
        .collect::<Result<Vec<_>>>()?;
    hankel_matrix(&g, n - 1)
}

/// Checks the size-`n` Hankel determinant of the derivatives of
/// `e^z / (1-z)^r` with the common factor `e^{nz}` cancelled:
///
/// `det(g_{i+j}) = (1-z)^{-nr} r^(n-1) Π_{k=1}^{n-1} r^(k-1) k! / (z-1)^{(n-1)n}`.
///
/// The same value is also reached from the generalized-polynomial closed
/// form at `1/(1-z)`; the cell fails if any of the three differ.
pub fn verify_derivative_hankel(n: usize, r: u32, z: &Rational) -> Result<Cell> {
    let m = derivative_hankel_matrix(n, r, z)?;
    let lhs = det_bareiss(&m);

    let one_minus = Rational::one() - z;
    let prefactor = pow(&one_minus, -((n as i64) * r as i64))?;
    let constant = from_integer(rising_factorial(r as i64, n - 1) * rising_product(n - 1, r));
    let pole = pow(&(z - int(1)), ((n - 1) * n) as i64)?;
    let rhs = prefactor.clone() * constant / pole;

    let via_generalized = closed_form_generalized(n - 1, r, &one_minus.recip()) * prefactor;

    let params = Params::new("derivative-hankel")
        .set("n", n)
        .set("r", r)
        .rational("z", z);
    let mut cell = Cell::compare(params, &rhs, &lhs)
        .with_detail("via_generalized", format_rational(&via_generalized));
    if via_generalized != rhs {
        cell.verdict = Verdict::Fail;
    }
    Ok(cell)
}
