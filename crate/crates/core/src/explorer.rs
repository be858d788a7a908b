//! Empirical log-concavity survey of order-`m` linear recurrences
//! `a_n = k_1 a_{n-1} + … + k_m a_{n-m}`.
//!
//! Reports are evidence, never proofs. For order 2 with initial values
//! `[0, 1]` the recurrence is the Lucas sequence `U(P, Q)` with
//! `(k_1, k_2) = (P, -Q)`, and each report is cross-checked against
//! [`crate::lucas::classify`].

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::Integer;
use crate::logop::{detect_stationary, iterate_source, StationaryCertificate};
use crate::lucas::{classify, ConcavityVerdict, LucasParams, VerdictKind};
use crate::seqcore::{Mode, SeqSource, SeqWindow};

pub use crate::seqcore::RecurrenceSpec;

/// Largest recurrence order a grid search accepts.
pub const MAX_ORDER: usize = 4;
/// Largest number of values per coefficient a grid search accepts.
pub const MAX_RANGE_LEN: usize = 21;
/// Depth from which "looks ∞-log-concave" no longer needs a certificate.
pub const UNCERTIFIED_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error("horizon {horizon} too short: need at least order + depth = {needed}")]
    HorizonTooShort { horizon: usize, needed: usize },
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("order {0} outside the supported range 1..={MAX_ORDER}")]
    OrderLimit(usize),
    #[error("coefficient range {lo}..{hi} has {len} values; at most {MAX_RANGE_LEN} are supported")]
    RangeLimit { lo: i64, hi: i64, len: usize },
    #[error("empty coefficient range {lo}..{hi}")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("initial values must have length {order}, got {got}")]
    InitLength { order: usize, got: usize },
}

/// Status of a single depth `i`: is `L^i` nonnegative on `0..=horizon`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DepthStatus {
    NonnegativeUpTo {
        horizon: usize,
    },
    Failure {
        index: usize,
        #[serde(with = "crate::decimal")]
        value: Integer,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Summary {
    /// Every inspected depth is nonnegative and either a stationary shape
    /// was certified or enough depths were inspected.
    LooksInfinitelyConcave,
    /// First depth with a negative entry.
    FailsAtDepth { depth: usize },
    /// `m` consecutive zeros occur, so the sequence is zero from there on.
    Degenerate,
    /// Nonnegative so far, but too shallow and without a certificate.
    Inconclusive,
}

impl Summary {
    pub fn label(&self) -> String {
        match self {
            Self::LooksInfinitelyConcave => "looks-∞-concave".to_string(),
            Self::FailsAtDepth { depth } => format!("fails-at-depth({depth})"),
            Self::Degenerate => "degenerate".to_string(),
            Self::Inconclusive => "inconclusive".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalReport {
    pub spec: RecurrenceSpec,
    pub horizon: usize,
    pub imax: usize,
    /// `statuses[i - 1]` describes `L^i`.
    pub statuses: Vec<DepthStatus>,
    pub summary: Summary,
    pub certificate: Option<StationaryCertificate>,
}

pub fn evaluate_rec(spec: &RecurrenceSpec, horizon: usize) -> SeqWindow {
    SeqSource::recurrence(spec.clone()).generate(horizon)
}

fn eventually_zero(values: &[Integer], order: usize) -> bool {
    values
        .windows(order)
        .any(|w| w.iter().all(|v| v.is_zero()))
}

pub fn empirical_classify(
    spec: &RecurrenceSpec,
    horizon: usize,
    imax: usize,
) -> Result<EmpiricalReport, ExplorerError> {
    if imax == 0 {
        return Err(ExplorerError::ZeroDepth);
    }
    let needed = spec.order() + imax;
    if horizon < needed {
        return Err(ExplorerError::HorizonTooShort { horizon, needed });
    }
    let src = SeqSource::recurrence(spec.clone());
    let levels = iterate_source(&src, imax, horizon);
    let statuses: Vec<DepthStatus> = levels[1..]
        .iter()
        .map(|level| match level.iter().position(|v| v.is_negative()) {
            Some(index) => DepthStatus::Failure {
                index,
                value: level[index].clone(),
            },
            None => DepthStatus::NonnegativeUpTo { horizon },
        })
        .collect();
    let certificate = detect_stationary(&src, horizon);
    let first_failure = statuses
        .iter()
        .position(|s| matches!(s, DepthStatus::Failure { .. }));
    let summary = if let Some(i) = first_failure {
        Summary::FailsAtDepth { depth: i + 1 }
    } else if eventually_zero(&levels[0], spec.order()) {
        Summary::Degenerate
    } else if certificate.is_some() || imax >= UNCERTIFIED_DEPTH {
        Summary::LooksInfinitelyConcave
    } else {
        Summary::Inconclusive
    };
    Ok(EmpiricalReport {
        spec: spec.clone(),
        horizon,
        imax,
        statuses,
        summary,
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitChoice {
    /// `[0, …, 0, 1]`, mirroring `U_0 = 0, U_1 = 1`.
    LucasLike,
    Fixed {
        #[serde(with = "crate::decimal::vec")]
        values: Vec<Integer>,
    },
}

impl InitChoice {
    fn values(&self, order: usize) -> Vec<Integer> {
        match self {
            Self::LucasLike => {
                let mut v = vec![Integer::zero(); order];
                v[order - 1] = Integer::from(1);
                v
            }
            Self::Fixed { values } => values.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridConfig {
    pub order: usize,
    pub lo: i64,
    pub hi: i64,
    pub init: InitChoice,
    pub horizon: usize,
    pub imax: usize,
}

impl GridConfig {
    pub fn validate(&self) -> Result<(), ExplorerError> {
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(ExplorerError::OrderLimit(self.order));
        }
        if self.lo > self.hi {
            return Err(ExplorerError::EmptyRange { lo: self.lo, hi: self.hi });
        }
        let len = (self.hi - self.lo + 1) as usize;
        if len > MAX_RANGE_LEN {
            return Err(ExplorerError::RangeLimit { lo: self.lo, hi: self.hi, len });
        }
        if let InitChoice::Fixed { values } = &self.init {
            if values.len() != self.order {
                return Err(ExplorerError::InitLength { order: self.order, got: values.len() });
            }
        }
        if self.imax == 0 {
            return Err(ExplorerError::ZeroDepth);
        }
        let needed = self.order + self.imax;
        if self.horizon < needed {
            return Err(ExplorerError::HorizonTooShort { horizon: self.horizon, needed });
        }
        Ok(())
    }

    /// Coefficient vectors in lexicographic order, `k_1` most significant.
    pub fn coefficient_vectors(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..self.order {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (self.lo..=self.hi).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// Cross-check of an order-2, `[0, 1]`-initialised report against the
/// Lucas classifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasAnnotation {
    #[serde(with = "crate::decimal")]
    pub p: Integer,
    #[serde(with = "crate::decimal")]
    pub q: Integer,
    pub verdict: ConcavityVerdict,
    pub anomaly: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    pub report: EmpiricalReport,
    pub lucas: Option<LucasAnnotation>,
}

/// Lucas parameters of a recurrence, if it is one: order 2 with initial
/// values `[0, 1]`, `(P, Q) = (k_1, -k_2)`.
pub fn as_lucas(spec: &RecurrenceSpec) -> Option<LucasParams> {
    let is_lucas = spec.order() == 2
        && spec.init()[0].is_zero()
        && spec.init()[1] == Integer::from(1);
    is_lucas.then(|| LucasParams::new(spec.coeffs()[0].clone(), -spec.coeffs()[1].clone()))
}

/// A report contradicts a verdict when a proven ∞-log-concave sequence
/// fails at some depth, or when the depth-1 status does not show the
/// classifier's witness.
pub fn is_anomaly(verdict: &ConcavityVerdict, report: &EmpiricalReport) -> bool {
    match &verdict.kind {
        VerdictKind::InfinitelyLogConcave { .. } => {
            matches!(report.summary, Summary::FailsAtDepth { .. })
        }
        VerdictKind::NotOneFold { index, value } => {
            report.statuses.first()
                != Some(&DepthStatus::Failure {
                    index: *index,
                    value: value.clone(),
                })
        }
        VerdictKind::OutsideScope { .. } => false,
    }
}

fn annotate(report: EmpiricalReport) -> GridEntry {
    let lucas = as_lucas(&report.spec).map(|params| {
        let verdict = classify(&params, Mode::Extended);
        let anomaly = is_anomaly(&verdict, &report);
        LucasAnnotation {
            p: params.p().clone(),
            q: params.q().clone(),
            verdict,
            anomaly,
        }
    });
    GridEntry { report, lucas }
}

/// Exhaustive search over every coefficient vector in the configured range.
/// Output order is lexicographic regardless of parallel evaluation.
pub fn grid_search(config: &GridConfig) -> Result<Vec<GridEntry>, ExplorerError> {
    config.validate()?;
    let init = config.init.values(config.order);
    let specs: Vec<RecurrenceSpec> = config
        .coefficient_vectors()
        .into_iter()
        .map(|k| {
            RecurrenceSpec::new(k.into_iter().map(Integer::from).collect(), init.clone())
                .expect("lengths validated")
        })
        .collect();
    let run = |spec: &RecurrenceSpec| {
        empirical_classify(spec, config.horizon, config.imax)
            .map(annotate)
            .expect("limits validated")
    };
    #[cfg(feature = "parallel")]
    let entries = {
        use rayon::prelude::*;
        specs.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let entries = specs.iter().map(run).collect();
    Ok(entries)
}

/// Counts per summary tag plus anomalies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub total: usize,
    pub looks_infinitely_concave: usize,
    /// `fails_at_depth[i - 1]` counts reports failing first at depth `i`.
    pub fails_at_depth: Vec<usize>,
    pub degenerate: usize,
    pub inconclusive: usize,
    pub anomalies: usize,
}

pub fn summarize(entries: &[GridEntry], imax: usize) -> SearchSummary {
    let mut s = SearchSummary {
        fails_at_depth: vec![0; imax],
        ..Default::default()
    };
    for e in entries {
        s.total += 1;
        match e.report.summary {
            Summary::LooksInfinitelyConcave => s.looks_infinitely_concave += 1,
            Summary::FailsAtDepth { depth } => s.fails_at_depth[depth - 1] += 1,
            Summary::Degenerate => s.degenerate += 1,
            Summary::Inconclusive => s.inconclusive += 1,
        }
        if e.lucas.as_ref().is_some_and(|a| a.anomaly) {
            s.anomalies += 1;
        }
    }
    s
}
