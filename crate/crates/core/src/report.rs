//! Renders sweep, limit, and search results into artifact files.
//!
//! Everything here is pure string building: no clocks, no filesystem, no
//! thread-dependent ordering. The same input renders to byte-identical
//! output every time, so two runs of the same config can be diffed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::ensemble::SweepTable;
use crate::harmonic::FourierProfile;
use crate::inequalities::{LimitRow, CSV_HEADER};
use crate::search::SearchOutcome;

/// A set of rendered artifact files, keyed by file name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArtifactSet {
    pub files: BTreeMap<String, String>,
}

impl ArtifactSet {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.files.get(name).map(String::as_str)
    }

    fn insert(&mut self, name: &str, contents: String) {
        self.files.insert(name.to_owned(), contents);
    }
}

fn pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// `sweep.csv` holds one report row per (body, parameter) combination in
/// sweep order; `summary.json` carries the aggregate counts and the argmin
/// location, including the body indices the CSV does not repeat.
pub fn sweep_artifacts(table: &SweepTable) -> ArtifactSet {
    let mut csv = String::with_capacity(80 * (table.rows.len() + 1));
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    for row in &table.rows {
        csv.push_str(&row.report.csv_row());
        csv.push('\n');
    }
    let mut out = ArtifactSet::default();
    out.insert("sweep.csv", csv);
    out.insert("summary.json", pretty_json(&table.summary));
    out
}

/// `limit.csv` tabulates the normalized correlation against its large-order
/// limit, one row per requested order.
pub fn limit_artifacts(rows: &[LimitRow]) -> ArtifactSet {
    let mut csv = String::from("k,value,deviation\n");
    for row in rows {
        writeln!(csv, "{},{},{}", row.k, row.value, row.deviation).unwrap();
    }
    let mut out = ArtifactSet::default();
    out.insert("limit.csv", csv);
    out
}

#[derive(Serialize)]
struct TerminalReport<'a> {
    profile: &'a FourierProfile,
    slack: f64,
    iterations: usize,
    converged: bool,
}

/// `trace.csv` lists the slack after each accepted step (iteration 0 is the
/// starting body); `terminal.json` holds the final profile and convergence
/// state.
pub fn search_artifacts(outcome: &SearchOutcome) -> ArtifactSet {
    let mut csv = String::from("iteration,slack\n");
    for (i, slack) in outcome.trace.slacks.iter().enumerate() {
        writeln!(csv, "{i},{slack}").unwrap();
    }
    let terminal = TerminalReport {
        profile: outcome.body.profile(),
        slack: *outcome.trace.slacks.last().expect("trace holds the starting slack"),
        iterations: outcome.trace.iterations,
        converged: outcome.trace.converged,
    };
    let mut out = ArtifactSet::default();
    out.insert("trace.csv", csv);
    out.insert("terminal.json", pretty_json(&terminal));
    out
}
