//! Named verification suites over parameter grids, as driven by the CLI.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rayon::prelude::*;

use crate::exact::{binomial, factorial, format_rational, from_integer, ratio, Rational};
use crate::hankel::{
    closed_form_order_d, det_bareiss, hankel_matrix, verify_derivative_hankel, verify_factorial_hankel,
    verify_hankel,
};
use crate::oracle::{count_cyclic_derangements_brute, count_derangements_brute, wreath_size, MAX_WREATH_ELEMENTS};
use crate::poly::{
    classic_derangement, cyclic_derangement, generalized_poly, order_poly, verify_reflection,
    verify_shift_recurrences, verify_three_paths,
};
use crate::report::{Cell, Params, Verdict};
use crate::series::{egf_values, geom_pow, series_exp, FamilySpec};
use crate::stochastic::{erlang_moment_exact, moment_expansion};
use crate::{Error, Result};

/// Default grid: `r <= 3`, `n <= 6`, evaluation points
/// `{1, -1, 2, 1/2, -3/5}`; derivative checks use `{0, 1/2, -1, 2}`.
pub const DEFAULT_R_MAX: u32 = 3;
pub const DEFAULT_N_MAX: usize = 6;
pub const DEFAULT_POINTS: [(i64, i64); 5] = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 5)];
pub const DEFAULT_DERIVATIVE_POINTS: [(i64, i64); 4] = [(0, 1), (1, 2), (-1, 1), (2, 1)];
/// Order to which the EGF of the generalized polynomials is compared with
/// the explicit formula in the `mgf` suite.
pub const MGF_SERIES_ORDER: usize = 20;
pub const ORACLE_DERANGEMENT_N_MAX: usize = 9;
pub const ORACLE_WREATH_R_MAX: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub rs: Vec<u32>,
    pub n_max: usize,
    /// Evaluation points; `None` selects each suite's default.
    pub points: Option<Vec<Rational>>,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            rs: (0..=DEFAULT_R_MAX).collect(),
            n_max: DEFAULT_N_MAX,
            points: None,
        }
    }
}

impl Grid {
    fn points(&self) -> Vec<Rational> {
        self.points
            .clone()
            .unwrap_or_else(|| DEFAULT_POINTS.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    fn derivative_points(&self) -> Vec<Rational> {
        self.points.clone().unwrap_or_else(|| {
            DEFAULT_DERIVATIVE_POINTS
                .iter()
                .map(|&(p, q)| ratio(p, q))
                .collect()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Recurrences,
    Reflection,
    Hankel,
    DerivativeHankel,
    Mgf,
    Oracles,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Recurrences,
        Suite::Reflection,
        Suite::Hankel,
        Suite::DerivativeHankel,
        Suite::Mgf,
        Suite::Oracles,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Recurrences => "recurrences",
            Suite::Reflection => "reflection",
            Suite::Hankel => "hankel",
            Suite::DerivativeHankel => "derivative-hankel",
            Suite::Mgf => "mgf",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Runs one suite (or all of them, in [`Suite::ALL`] order). Every cell is
/// tagged with a `suite` parameter.
pub fn run_suite(suite: Suite, grid: &Grid) -> Result<Vec<Cell>> {
    if suite == Suite::All {
        let mut cells = Vec::new();
        for s in Suite::ALL {
            cells.extend(run_suite(s, grid)?);
        }
        return Ok(cells);
    }
    let cells = match suite {
        Suite::Recurrences => recurrences(grid)?,
        Suite::Reflection => verify_reflection(grid.n_max, &grid.rs, &grid.points()),
        Suite::Hankel => hankel(grid)?,
        Suite::DerivativeHankel => derivative_hankel(grid)?,
        Suite::Mgf => mgf(grid)?,
        Suite::Oracles => oracles(grid)?,
        Suite::All => unreachable!(),
    };
    Ok(cells
        .into_iter()
        .map(|mut c| {
            c.params.insert("suite".to_string(), suite.name().to_string());
            c
        })
        .collect())
}

fn recurrences(grid: &Grid) -> Result<Vec<Cell>> {
    let xs = grid.points();
    let mut cells = verify_shift_recurrences(grid.n_max, &grid.rs, &xs);
    cells.extend(verify_three_paths(grid.n_max, &grid.rs, &xs)?);
    Ok(cells)
}

fn hankel(grid: &Grid) -> Result<Vec<Cell>> {
    let xs = grid.points();
    let ns: Vec<usize> = (0..=grid.n_max).collect();

    let mut specs = Vec::new();
    for &r in &grid.rs {
        for x in &xs {
            specs.push(FamilySpec::Generalized { r, x: x.clone() });
        }
    }
    for &r in grid.rs.iter().filter(|&&r| r >= 1) {
        specs.push(FamilySpec::Cyclic { r });
    }
    specs.push(FamilySpec::Classic);
    let jobs: Vec<(&FamilySpec, usize)> = specs.iter().flat_map(|s| ns.iter().map(move |&n| (s, n))).collect();
    let mut cells = jobs
        .par_iter()
        .map(|&(spec, n)| verify_hankel(spec, n).map(|r| r.to_cell()))
        .collect::<Result<Vec<_>>>()?;

    cells.extend(
        ns.par_iter()
            .map(|&n| {
                let report = verify_factorial_hankel(n)?;
                let mut cell = report.to_cell();
                cell.params.insert("family".into(), "factorial".into());
                cell.params.remove("r");
                cell.params.remove("x");
                Ok(cell)
            })
            .collect::<Result<Vec<_>>>()?,
    );

    let pairs: Vec<(usize, u32)> = ns.iter().flat_map(|&n| grid.rs.iter().map(move |&r| (n, r))).collect();
    cells.extend(
        pairs
            .par_iter()
            .map(|&(n, r)| order_d_invariance(n, r, &xs))
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(cells)
}

/// The order-`r` Hankel determinant at every point must be the same
/// integer, equal to its closed form.
pub fn order_d_invariance(n: usize, r: u32, xs: &[Rational]) -> Result<Cell> {
    let expected = from_integer(closed_form_order_d(n, r));
    let mut values = Vec::with_capacity(xs.len());
    for x in xs {
        let seq = egf_values(&FamilySpec::OrderRPoly { r, x: x.clone() }, 2 * n + 1)?;
        values.push(det_bareiss(&hankel_matrix(&seq, n)?));
    }
    let params = Params::new("hankel-order-invariance")
        .set("n", n)
        .set("r", r)
        .set("points", xs.iter().map(format_rational).collect::<Vec<_>>().join(","));
    let mismatch = values.iter().find(|v| **v != expected).unwrap_or(&expected);
    Ok(Cell::compare(params, &expected, mismatch).with_detail(
        "values",
        values.iter().map(format_rational).collect::<Vec<_>>().join(","),
    ))
}

fn derivative_hankel(grid: &Grid) -> Result<Vec<Cell>> {
    let zs = grid.derivative_points();
    let zs = &zs;
    let jobs: Vec<(usize, u32, &Rational)> = (1..=grid.n_max.max(1))
        .flat_map(|n| grid.rs.iter().flat_map(move |&r| zs.iter().map(move |z| (n, r, z))))
        .collect();
    jobs.par_iter()
        .map(|&(n, r, z)| match verify_derivative_hankel(n, r, z) {
            Err(Error::PoleAtOne) => Ok(Cell::skipped(
                Params::new("derivative-hankel").set("n", n).set("r", r).rational("z", z),
                "pole at z = 1",
            )),
            other => other,
        })
        .collect()
}

fn mgf(grid: &Grid) -> Result<Vec<Cell>> {
    let xs = grid.points();
    let pairs: Vec<(u32, &Rational)> = grid.rs.iter().flat_map(|&r| xs.iter().map(move |x| (r, x))).collect();
    let mut cells: Vec<Cell> = pairs
        .par_iter()
        .map(|&(r, x)| series_identity(r, x, MGF_SERIES_ORDER))
        .collect();
    let triples: Vec<(usize, u32, &Rational)> = (0..=grid.n_max)
        .flat_map(|n| pairs.iter().map(move |&(r, x)| (n, r, x)))
        .collect();
    cells.par_extend(triples.par_iter().map(|&(n, r, x)| {
        let params = Params::new("moment-expansion").set("n", n).set("r", r).rational("x", x);
        Cell::compare(params, &generalized_poly(n, r).eval(x), &moment_expansion(n, r, x))
    }));
    cells.par_extend(triples.par_iter().map(|&(n, r, x)| {
        let params = Params::new("moment-expansion-order").set("n", n).set("r", r).rational("x", x);
        let value: Rational = (0..=n)
            .map(|k| {
                from_integer(binomial(n, k as i64) * erlang_moment_exact(r, k))
                    * num_traits::pow(x.clone(), n - k)
            })
            .sum();
        Cell::compare(params, &order_poly(n, r).eval(x), &value)
    }));
    Ok(cells)
}

/// `e^z · (1-xz)^{-r}` (the exponential times the Erlang moment generating
/// function at `xz`) against `Σ D_n^(r)(x) z^n / n!` from the explicit
/// polynomials, coefficient by coefficient.
pub fn series_identity(r: u32, x: &Rational, order: usize) -> Cell {
    let product = &series_exp(&Rational::one(), order) * &geom_pow(x, r, order);
    let mismatch = (0..=order).find(|&n| {
        let explicit = generalized_poly(n, r).eval(x) / from_integer(factorial(n));
        *product.coeff(n) != explicit
    });
    let params = Params::new("mgf-series")
        .set("order", order)
        .set("r", r)
        .rational("x", x);
    match mismatch {
        None => Cell {
            params: params.0,
            expected: format!("{} coefficients", order + 1),
            actual: format!("{} coefficients", order + 1),
            verdict: Verdict::Pass,
            details: Default::default(),
        },
        Some(n) => {
            let explicit = generalized_poly(n, r).eval(x) / from_integer(factorial(n));
            Cell::compare(params.set("coeff", n), &explicit, product.coeff(n))
        }
    }
}

fn oracles(grid: &Grid) -> Result<Vec<Cell>> {
    let classic = egf_values(&FamilySpec::Classic, ORACLE_DERANGEMENT_N_MAX + 1)?;
    let mut cells = Vec::new();
    for n in 0..=ORACLE_DERANGEMENT_N_MAX {
        let brute = from_integer(count_derangements_brute(n)?.into());
        let formula = from_integer(classic_derangement(n));
        let params = Params::new("derangement-brute").set("n", n);
        let mut cell = Cell::compare(params, &formula, &brute);
        if classic[n] != formula {
            cell.verdict = Verdict::Fail;
        }
        cells.push(cell.with_detail("egf", format_rational(&classic[n])));
    }
    let jobs: Vec<(usize, u32)> = (1..=ORACLE_WREATH_R_MAX)
        .flat_map(|r| (0..=grid.n_max).map(move |n| (n, r)))
        .collect();
    cells.extend(
        jobs.par_iter()
            .map(|&(n, r)| {
                let params = Params::new("cyclic-brute").set("n", n).set("r", r);
                if wreath_size(n, r).is_none_or(|s| s > MAX_WREATH_ELEMENTS) {
                    return Ok(Cell::skipped(params, "wreath product too large"));
                }
                let brute = from_integer(count_cyclic_derangements_brute(n, r)?.into());
                Ok(Cell::compare(params, &from_integer(cyclic_derangement(n, r)), &brute))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::Summary;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn default_grid_all_suites_pass() {
        let cells = run_suite(Suite::All, &Grid::default()).unwrap();
        let s = Summary::of(&cells);
        assert_eq!(s.fail, 0, "{:?}", cells.iter().find(|c| c.verdict == Verdict::Fail));
        assert!(s.pass >= 500, "{s:?}");
        assert!(cells.iter().all(|c| c.params.contains_key("suite")));
    }

    #[test]
    fn derivative_suite_skips_pole() {
        let grid = Grid { rs: vec![2], n_max: 3, points: Some(vec![int(1), ratio(1, 2)]) };
        let cells = run_suite(Suite::DerivativeHankel, &grid).unwrap();
        let s = Summary::of(&cells);
        assert_eq!((s.pass, s.skipped, s.fail), (3, 3, 0));
    }

    #[test]
    fn series_identity_cell() {
        assert!(series_identity(3, &ratio(-3, 5), 12).passed());
        assert!(series_identity(0, &int(0), 5).passed());
    }

    #[test]
    fn oracle_cells_respect_cap() {
        let grid = Grid { n_max: 8, ..Grid::default() };
        let cells = oracles(&grid).unwrap();
        let skipped: Vec<_> = cells.iter().filter(|c| c.verdict == Verdict::Skipped).collect();
        // 2^8 8! , 3^7 7!, 3^8 8!, 4^7 7!, 4^8 8! exceed ten million
        assert_eq!(skipped.len(), 5);
        assert!(cells.iter().all(|c| c.verdict != Verdict::Fail));
    }
}
