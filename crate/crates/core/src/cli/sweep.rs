//! Formula-versus-exact sweep over a range of orders.

use std::fmt;
use std::time::Duration;

use crate::error::Result;
use crate::gamma4::{construct_dominating_set, gamma_formula, DELTA};
use crate::graph::KnodelGraph;
use crate::solver::{solve_with, SolverConfig};

pub const CSV_HEADER: &str = "n,formula,exact,agree,construct_ok,elapsed_ms";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub formula: usize,
    /// `None` when the time budget ran out.
    pub exact: Option<usize>,
    /// `None` exactly when `exact` is `None`.
    pub agree: Option<bool>,
    pub construct_ok: bool,
    pub elapsed_ms: u128,
}

impl SweepRow {
    /// A row counts as failed on a disagreement or a broken construction;
    /// an unknown exact value is not a failure.
    pub fn failed(&self) -> bool {
        self.agree == Some(false) || !self.construct_ok
    }
}

fn or_unknown<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "unknown".to_string(), |x| x.to_string())
}

impl fmt::Display for SweepRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.n,
            self.formula,
            or_unknown(self.exact),
            or_unknown(self.agree),
            self.construct_ok,
            self.elapsed_ms
        )
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub from: usize,
    pub to: usize,
    /// Per-order budget for the exact search.
    pub budget: Option<Duration>,
    pub threads: usize,
    /// Write 0 in the `elapsed_ms` column so that reruns are byte-identical.
    pub record_timing: bool,
}

pub fn sweep_row(n: usize, config: &SweepConfig) -> Result<SweepRow> {
    let formula = gamma_formula(n)?.value;
    let construct_ok = construct_dominating_set(n).is_ok_and(|d| d.len() == formula);
    let g = KnodelGraph::new(DELTA, n)?;
    let outcome = solve_with(
        &g,
        &SolverConfig {
            threads: config.threads,
            time_budget: config.budget,
            canonical: false,
        },
    )?;
    let exact = outcome.value();
    Ok(SweepRow {
        n,
        formula,
        exact,
        agree: exact.map(|e| e == formula),
        construct_ok,
        elapsed_ms: if config.record_timing {
            outcome.elapsed().as_millis()
        } else {
            0
        },
    })
}

/// One row per even `n` in `from..=to`.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    (config.from..=config.to)
        .step_by(2)
        .map(|n| sweep_row(n, config))
        .collect()
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}
