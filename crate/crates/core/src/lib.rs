//! Exact log-concavity analysis of integer sequences.
//!
//! The log-operator maps `a` to `L(a)_n = a_n² - a_{n-1}a_{n+1}`, with
//! `a_n = 0` for `n < 0`. A sequence is *i-fold* log-concave when `L^i(a)` is
//! nonnegative and *∞-log-concave* when that holds for every `i ≥ 1`.
//!
//! - [`exactnum`]: big integers, rationals and the quadratic ring `Q[√D]`.
//! - [`seqcore`]: sequence sources and windows.
//! - [`logop`]: the operator, its iterates, fold verdicts and stationary
//!   certificates.
//! - [`lucas`]: Lucas sequences `U_n(P, Q)` and their classification.
//! - [`explorer`]: empirical surveys of general linear recurrences.
//! - `cli`: the `logconcave` command line tool, b-files and reports.

pub mod decimal;
pub mod exactnum;
pub mod explorer;
pub mod logop;
pub mod lucas;
pub mod seqcore;

pub mod bfile;
pub mod report;
#[cfg(feature = "cli")]
pub mod cli;

pub use exactnum::{Integer, QuadElem, Rational};
pub use logop::{check_k_fold, detect_stationary, FoldKind, FoldVerdict, StationaryCertificate};
pub use lucas::{classify, ConcavityVerdict, LucasParams};
pub use seqcore::{Mode, RightPolicy, SeqSource, SeqWindow};
