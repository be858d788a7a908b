//! Search reports: a human-readable table and a line-oriented JSON variant.
//!
//! The machine variant is one JSON object per line. The first line holds the
//! search configuration under `"config"`; every following line is one
//! [`GridEntry`] with its recurrence, per-depth statuses, summary tag,
//! stationary certificate and, for order-2 Lucas-initialised recurrences,
//! the classifier verdict and anomaly flag. Integers are decimal strings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::explorer::{summarize, DepthStatus, GridConfig, GridEntry, SearchSummary};
use crate::seqcore::join;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("report is missing its config line")]
    MissingConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub config: GridConfig,
    pub entries: Vec<GridEntry>,
}

#[derive(Serialize, Deserialize)]
struct ConfigLine {
    config: GridConfig,
}

impl ReportDocument {
    pub fn summary(&self) -> SearchSummary {
        summarize(&self.entries, self.config.imax)
    }

    pub fn emit_machine(&self) -> String {
        let mut out = serde_json::to_string(&ConfigLine {
            config: self.config.clone(),
        })
        .expect("config serializes");
        out.push('\n');
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entry serializes"));
            out.push('\n');
        }
        out
    }

    pub fn parse_machine(text: &str) -> Result<Self, ReportError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (i, first) = lines.next().ok_or(ReportError::MissingConfig)?;
        let header: ConfigLine = serde_json::from_str(first)
            .map_err(|source| ReportError::Json { line: i + 1, source })?;
        let entries = lines
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|source| ReportError::Json { line: i + 1, source })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            config: header.config,
            entries,
        })
    }

    /// Fixed-width table, one row per recurrence.
    pub fn emit_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<18} {:<12} {:<width$} {:<20} lucas",
            "coefficients",
            "init",
            "depths",
            "summary",
            width = self.config.imax.max(6)
        );
        for e in &self.entries {
            let r = &e.report;
            let depths: String = r
                .statuses
                .iter()
                .map(|s| match s {
                    DepthStatus::NonnegativeUpTo { .. } => '+',
                    DepthStatus::Failure { .. } => '-',
                })
                .collect();
            let lucas = match &e.lucas {
                Some(a) => format!(
                    "({},{}) {}{}",
                    a.p,
                    a.q,
                    a.verdict.short_label(),
                    if a.anomaly { " ANOMALY" } else { "" }
                ),
                None => String::new(),
            };
            let row = format!(
                "{:<18} {:<12} {:<width$} {:<20} {}",
                format!("[{}]", join(r.spec.coeffs())),
                format!("[{}]", join(r.spec.init())),
                depths,
                r.summary.label(),
                lucas,
                width = self.config.imax.max(6)
            );
            let _ = writeln!(out, "{}", row.trim_end());
        }
        out
    }
}

impl SearchSummary {
    pub fn lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("specs: {}", self.total),
            format!("looks-∞-concave: {}", self.looks_infinitely_concave),
        ];
        for (i, n) in self.fails_at_depth.iter().enumerate() {
            lines.push(format!("fails-at-depth({}): {}", i + 1, n));
        }
        lines.push(format!("degenerate: {}", self.degenerate));
        lines.push(format!("inconclusive: {}", self.inconclusive));
        lines.push(format!("anomalies: {}", self.anomalies));
        lines
    }
}
