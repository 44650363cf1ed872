//! Per-cell verification records shared by every verifier.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// One checked instance of an identity: the parameters, both sides, and the
/// outcome. Values are exact `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub params: BTreeMap<String, String>,
    pub expected: String,
    pub actual: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
}

impl Cell {
    pub fn compare(params: Params, expected: &Rational, actual: &Rational) -> Cell {
        Cell {
            params: params.0,
            expected: format_rational(expected),
            actual: format_rational(actual),
            verdict: if expected == actual {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            details: BTreeMap::new(),
        }
    }

    pub fn skipped(params: Params, reason: impl Into<String>) -> Cell {
        let mut details = BTreeMap::new();
        details.insert("reason".to_string(), reason.into());
        Cell {
            params: params.0,
            expected: String::new(),
            actual: String::new(),
            verdict: Verdict::Skipped,
            details,
        }
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<String>) -> Cell {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Builder for a cell's parameter map.
#[derive(Debug, Clone, Default)]
pub struct Params(pub BTreeMap<String, String>);

impl Params {
    pub fn new(check: &str) -> Params {
        let mut m = BTreeMap::new();
        m.insert("check".to_string(), check.to_string());
        Params(m)
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Params {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn rational(self, key: &str, value: &Rational) -> Params {
        self.set(key, format_rational(value))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(cells: &[Cell]) -> Summary {
        cells.iter().fold(Summary::default(), |mut s, c| {
            match c.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skipped => s.skipped += 1,
            }
            s
        })
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    #[test]
    fn compare_sets_verdict() {
        let ok = Cell::compare(Params::new("t"), &ratio(1, 2), &ratio(2, 4));
        assert_eq!(ok.verdict, Verdict::Pass);
        assert_eq!(ok.expected, "1/2");
        let bad = Cell::compare(Params::new("t").set("n", 3), &int(1), &int(2));
        assert_eq!(bad.verdict, Verdict::Fail);
        assert_eq!(bad.params["n"], "3");
        let skip = Cell::skipped(Params::new("t"), "pole");
        let s = Summary::of(&[ok, bad, skip]);
        assert_eq!((s.pass, s.fail, s.skipped, s.total()), (1, 1, 1, 3));
    }
}
