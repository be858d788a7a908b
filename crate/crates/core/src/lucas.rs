//! Lucas sequences of the first kind: Binet evaluation, the closed form of
//! `L(U_n)`, and the `(P, Q)` classification.
//!
//! For every `n ≥ 1`, `U_n² - U_{n-1}U_{n+1} = Q^(n-1)`. With `Q ≥ 0` the
//! image `L(U) = [0, 1, Q, Q², …]` is a zero-padded geometric sequence, so
//! `U` is infinitely log-concave; with `Q < 0` the entry at `n = 2` is `Q`
//! and `U` is not even 1-fold log-concave.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{int_pow, Integer, QuadElem, Rational};
use crate::seqcore::{Mode, SeqSource};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LucasError {
    #[error("Binet form needs D > 0, got D = {0}; use the repeated-root form for D = 0")]
    NonPositiveDiscriminant(Integer),
    #[error("Binet evaluation produced a non-integer value {0}")]
    NonIntegral(Rational),
}

/// `(P, Q)` with cached discriminant `D = P² - 4Q`. `D` may be negative
/// here; classification reports such pairs as out of scope.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LucasParams {
    p: Integer,
    q: Integer,
    d: Integer,
}

impl LucasParams {
    pub fn new(p: impl Into<Integer>, q: impl Into<Integer>) -> Self {
        let (p, q) = (p.into(), q.into());
        let d = &p * &p - Integer::from(4) * &q;
        Self { p, q, d }
    }

    pub fn p(&self) -> &Integer {
        &self.p
    }

    pub fn q(&self) -> &Integer {
        &self.q
    }

    pub fn discriminant(&self) -> &Integer {
        &self.d
    }

    pub fn source(&self, mode: Mode) -> Result<SeqSource, crate::seqcore::SourceError> {
        SeqSource::lucas(self.p.clone(), self.q.clone(), mode)
    }
}

impl fmt::Display for LucasParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// `U_n = (aⁿ - bⁿ)/(a - b)` with `a = (P + √D)/2`, `b = conj(a)`, so
/// `U_n = 2·y(aⁿ)`.
pub fn binet_u(params: &LucasParams, n: u64) -> Result<Integer, LucasError> {
    if !params.d.is_positive() {
        return Err(LucasError::NonPositiveDiscriminant(params.d.clone()));
    }
    let (a, _) = QuadElem::lucas_roots(&params.p, &params.q)
        .expect("positive discriminant was checked");
    let doubled = a.pow(n).y() * Rational::from_integer(Integer::from(2));
    if !doubled.is_integer() {
        return Err(LucasError::NonIntegral(doubled));
    }
    Ok(doubled.to_integer())
}

/// `U_n = n·S^(n-1)` for `P = 2S`, `Q = S²`.
pub fn degenerate_u(s: &Integer, n: u64) -> Integer {
    if n == 0 {
        return Integer::zero();
    }
    Integer::from(n) * int_pow(s, n - 1)
}

/// Two closed forms of `L(U)_n` for `D > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogUClosedForm {
    /// `Q^(n-1)`; equals `U_n² - U_{n-1}U_{n+1}`.
    pub value: Integer,
    /// `Q^(n-1)·P²/D`. Has the sign of `value` but is off by the factor
    /// `P²/D`, the result of substituting `a - b = P` where `a - b = √D`.
    pub quotient_form: Rational,
}

pub fn closed_form_log_u(params: &LucasParams, n: u64) -> Result<LogUClosedForm, LucasError> {
    if !params.d.is_positive() {
        return Err(LucasError::NonPositiveDiscriminant(params.d.clone()));
    }
    assert!(n >= 1, "closed form of L(U)_n is stated for n ≥ 1");
    let value = int_pow(&params.q, n - 1);
    let quotient_form = Rational::new(&value * &params.p * &params.p, params.d.clone());
    Ok(LogUClosedForm {
        value,
        quotient_form,
    })
}

/// Which side of `P² > 4Q, Q ≥ 0` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremBranch {
    /// `P > 2√Q`.
    AboveTwoRootQ,
    /// `P < -2√Q`.
    BelowMinusTwoRootQ,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Certificate {
    /// `D = 0`, `P = 2S`, `Q = S²`: `L(U)_n = (S^(n-1))²`.
    DZeroCase {
        #[serde(with = "crate::decimal")]
        s: Integer,
    },
    /// `D > 0`, `Q ≥ 0`: `L(U)_n = Q^(n-1) ≥ 0`, a padded geometric sequence.
    TheoremCase { branch: TheoremBranch },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VerdictKind {
    InfinitelyLogConcave {
        certificate: Certificate,
    },
    NotOneFold {
        index: usize,
        #[serde(with = "crate::decimal")]
        value: Integer,
    },
    OutsideScope {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcavityVerdict {
    #[serde(flatten)]
    pub kind: VerdictKind,
    /// Set when `P = 0` or `Q = 0` was accepted in extended mode.
    pub outside_hypothesis: bool,
}

impl ConcavityVerdict {
    /// Process exit status for this verdict: 0, 1 or 2.
    pub fn exit_code(&self) -> u8 {
        match self.kind {
            VerdictKind::InfinitelyLogConcave { .. } => 0,
            VerdictKind::NotOneFold { .. } => 1,
            VerdictKind::OutsideScope { .. } => 2,
        }
    }

    pub fn is_infinitely_log_concave(&self) -> bool {
        matches!(self.kind, VerdictKind::InfinitelyLogConcave { .. })
    }

    pub fn short_label(&self) -> &'static str {
        match self.kind {
            VerdictKind::InfinitelyLogConcave { .. } => "∞-log-concave",
            VerdictKind::NotOneFold { .. } => "not 1-fold",
            VerdictKind::OutsideScope { .. } => "outside scope",
        }
    }
}

impl fmt::Display for ConcavityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            VerdictKind::InfinitelyLogConcave { certificate } => match certificate {
                Certificate::DZeroCase { s } => write!(
                    f,
                    "∞-log-concave (D = 0, S = {s}: L(U)_n = (S^(n-1))²)"
                ),
                Certificate::TheoremCase { branch } => {
                    let side = match branch {
                        TheoremBranch::AboveTwoRootQ => "P > 2√Q",
                        TheoremBranch::BelowMinusTwoRootQ => "P < -2√Q",
                    };
                    write!(f, "∞-log-concave (theorem case, Q ≥ 0 and {side}: L(U)_n = Q^(n-1))")
                }
            },
            VerdictKind::NotOneFold { index, value } => write!(
                f,
                "not 1-fold log-concave (witness n = {index}: U_n² - U_(n-1)U_(n+1) = {value})"
            ),
            VerdictKind::OutsideScope { reason } => write!(f, "outside scope ({reason})"),
        }?;
        if self.outside_hypothesis {
            write!(f, " [outside hypothesis: P or Q is zero]")?;
        }
        Ok(())
    }
}

/// Witness search bound for `Q < 0`; the first negative entry is always at 2.
const WITNESS_SEARCH: usize = 64;

pub fn classify(params: &LucasParams, mode: Mode) -> ConcavityVerdict {
    let zero_param = params.p.is_zero() || params.q.is_zero();
    let scoped = |reason: &str| ConcavityVerdict {
        kind: VerdictKind::OutsideScope {
            reason: reason.to_string(),
        },
        outside_hypothesis: false,
    };
    if params.d.is_negative() {
        return scoped("negative discriminant");
    }
    if zero_param && mode == Mode::Strict {
        return scoped("requires non-zero P and Q");
    }
    let kind = if params.d.is_zero() {
        let (s, rem) = params.p.div_rem(&Integer::from(2));
        debug_assert!(rem.is_zero() && &s * &s == params.q);
        VerdictKind::InfinitelyLogConcave {
            certificate: Certificate::DZeroCase { s },
        }
    } else if !params.q.is_negative() {
        // D > 0 and Q ≥ 0 force P² > 4Q ≥ 0, so P ≠ 0
        let branch = if params.p.is_positive() {
            TheoremBranch::AboveTwoRootQ
        } else {
            TheoremBranch::BelowMinusTwoRootQ
        };
        VerdictKind::InfinitelyLogConcave {
            certificate: Certificate::TheoremCase { branch },
        }
    } else {
        let src = SeqSource::lucas(params.p.clone(), params.q.clone(), Mode::Extended)
            .expect("D ≥ 0 was checked");
        let u = src.prefix(WITNESS_SEARCH + 2);
        let (index, value) = (1..=WITNESS_SEARCH)
            .map(|n| (n, &u[n] * &u[n] - &u[n - 1] * &u[n + 1]))
            .find(|(_, v)| v.is_negative())
            .expect("Q < 0 gives L(U)_2 = Q < 0");
        VerdictKind::NotOneFold { index, value }
    };
    ConcavityVerdict {
        kind,
        outside_hypothesis: zero_param,
    }
}

/// `F_{n-1}F_{n+1} - F_n² = (-1)ⁿ` for `1 ≤ n ≤ horizon`.
pub fn cassini_check(horizon: usize) -> bool {
    let fib = SeqSource::lucas(1, -1, Mode::Strict)
        .expect("valid parameters")
        .prefix(horizon + 2);
    (1..=horizon).all(|n| {
        let lhs = &fib[n - 1] * &fib[n + 1] - &fib[n] * &fib[n];
        let rhs = if n % 2 == 0 { Integer::one() } else { -Integer::one() };
        lhs == rhs
    })
}

/// Named Lucas sequences `(name, P, Q)`.
pub const NAMED_SEQUENCES: [(&str, i64, i64); 4] = [
    ("Fibonacci", 1, -1),
    ("Pell", 2, -1),
    ("Jacobsthal", 1, -2),
    ("Mersenne", 3, 2),
];
