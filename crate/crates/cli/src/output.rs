use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::Duration;

use anyhow::Result;
use clap::ValueEnum;
use derange_core::{Cell, Summary, Verdict};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Result of a verifying command. The JSON form omits wall time so that
/// repeated runs are byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub grid: BTreeMap<String, String>,
    pub cells: Vec<Cell>,
    pub summary: Summary,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(command: String, grid: BTreeMap<String, String>, cells: Vec<Cell>, wall_time: Duration) -> Self {
        let summary = Summary::of(&cells);
        RunReport { command, grid, cells, summary, wall_time }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => json(self),
            Format::Csv => self.csv(),
            Format::Text => Ok(self.text()),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for cell in &self.cells {
            let verdict = match cell.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIP",
            };
            let params: Vec<String> = cell.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("{verdict} {}", params.join(" ")));
            if cell.verdict != Verdict::Skipped {
                out.push_str(&format!(" expected={} actual={}", cell.expected, cell.actual));
            }
            for (k, v) in &cell.details {
                out.push_str(&format!(" {k}={v}"));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{}: pass={} fail={} skipped={} ({} ms)\n",
            if self.ok() { "ok" } else { "FAILED" },
            s.pass,
            s.fail,
            s.skipped,
            self.wall_time.as_millis()
        ));
        out
    }

    /// One row per cell; parameter and detail keys become columns.
    fn csv(&self) -> Result<String> {
        let params: BTreeSet<&String> = self.cells.iter().flat_map(|c| c.params.keys()).collect();
        let details: BTreeSet<&String> = self.cells.iter().flat_map(|c| c.details.keys()).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
        header.extend(["expected", "actual", "verdict"]);
        header.extend(details.iter().map(|s| s.as_str()));
        w.write_record(&header)?;
        for cell in &self.cells {
            let mut row: Vec<&str> = params
                .iter()
                .map(|k| cell.params.get(*k).map_or("", String::as_str))
                .collect();
            let verdict = match cell.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Skipped => "skipped",
            };
            row.extend([cell.expected.as_str(), cell.actual.as_str(), verdict]);
            row.extend(details.iter().map(|k| cell.details.get(*k).map_or("", String::as_str)));
            w.write_record(&row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn emit(content: &str, output: Option<&std::path::Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use derange_core::report::Params;
    use derange_core::exact::int;

    fn sample() -> RunReport {
        let cells = vec![
            Cell::compare(Params::new("a").set("n", 1), &int(4), &int(4)).with_detail("cofactor", "4"),
            Cell::compare(Params::new("b").set("points", "1,-1"), &int(1), &int(2)),
            Cell::skipped(Params::new("c"), "pole"),
        ];
        RunReport::new("verify".into(), BTreeMap::new(), cells, Duration::from_millis(3))
    }

    #[test]
    fn json_roundtrip_is_byte_stable() {
        let r = sample();
        let s = r.render(Format::Json).unwrap();
        let parsed: RunReport = serde_json::from_str(&s).unwrap();
        assert_eq!(json(&parsed).unwrap(), s);
        let value: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(json(&value).unwrap(), s);
        assert!(!s.contains("wall"));
    }

    #[test]
    fn csv_quotes_lists() {
        let s = sample().render(Format::Csv).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), "check,n,points,expected,actual,verdict,cofactor,reason");
        assert_eq!(lines.next().unwrap(), "a,1,,4,4,pass,4,");
        assert_eq!(lines.next().unwrap(), "b,,\"1,-1\",1,2,fail,,");
    }

    #[test]
    fn text_summary() {
        let r = sample();
        assert!(!r.ok());
        let t = r.render(Format::Text).unwrap();
        assert!(t.ends_with("FAILED: pass=1 fail=1 skipped=1 (3 ms)\n"));
        assert!(t.starts_with("PASS check=a n=1 expected=4 actual=4 cofactor=4\n"));
    }
}
