//! The log-operator `L(a)_n = a_n² - a_{n-1}·a_{n+1}`, its iterates, and
//! finite-horizon k-fold log-concavity verdicts.
//!
//! A [`FoldKind::Failure`] is a disproof: the witness is an exact negative
//! entry of some iterate. [`FoldKind::NonnegativeUpTo`] only says that no
//! negative entry exists on the inspected range.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{Integer, Rational};
use crate::seqcore::{RightPolicy, SeqSource, SeqWindow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogError {
    #[error("cannot apply the log-operator to an empty window")]
    EmptyWindow,
    #[error("log depth must be at least 1")]
    ZeroDepth,
    #[error("window exhausted after {reached} of {requested} log applications")]
    Exhausted { reached: usize, requested: usize },
}

/// One truncating step: `b_n` for every `n` whose right neighbour is known,
/// i.e. the output is one entry shorter than the input. `a_{-1}` is 0.
pub fn log_step(values: &[Integer]) -> Vec<Integer> {
    (0..values.len().saturating_sub(1))
        .map(|n| {
            let left = if n == 0 { Integer::zero() } else { values[n - 1].clone() };
            &values[n] * &values[n] - left * &values[n + 1]
        })
        .collect()
}

/// Levels `L^0..=L^depth` of `src`, each exact on indices `0..=horizon`.
pub fn iterate_source(src: &SeqSource, depth: usize, horizon: usize) -> Vec<Vec<Integer>> {
    let mut levels = untruncated_levels(src, depth, horizon);
    for level in &mut levels {
        level.truncate(horizon + 1);
    }
    levels
}

/// Level `d` keeps `depth - d` extra entries past `horizon`, enough to
/// compute every deeper level on `0..=horizon`.
fn untruncated_levels(src: &SeqSource, depth: usize, horizon: usize) -> Vec<Vec<Integer>> {
    let mut levels = Vec::with_capacity(depth + 1);
    levels.push(src.prefix(horizon + 1 + depth));
    for _ in 0..depth {
        let next = log_step(levels.last().expect("non-empty"));
        levels.push(next);
    }
    levels
}

/// `L` applied to a window. A truncating window loses its last index; an
/// extendable one keeps its length by pulling one more value from the source.
pub fn apply_log(w: &SeqWindow) -> Result<SeqWindow, LogError> {
    if w.is_empty() {
        return Err(LogError::EmptyWindow);
    }
    let depth = w.depth() + 1;
    match w.right_policy() {
        RightPolicy::Truncate => {
            if w.len() < 2 {
                return Err(LogError::Exhausted { reached: 0, requested: 1 });
            }
            Ok(SeqWindow::from_parts(
                log_step(w.values()),
                w.source().clone(),
                depth,
                RightPolicy::Truncate,
            ))
        }
        RightPolicy::Extendable => {
            let mut extended = w.values().to_vec();
            extended.push(w.get(w.len() as i64).expect("extendable window"));
            Ok(SeqWindow::from_parts(
                log_step(&extended),
                w.source().clone(),
                depth,
                RightPolicy::Extendable,
            ))
        }
    }
}

/// `L^i` applied to a window.
pub fn apply_log_k(w: &SeqWindow, i: usize) -> Result<SeqWindow, LogError> {
    if i == 0 {
        return Err(LogError::ZeroDepth);
    }
    if w.is_empty() {
        return Err(LogError::EmptyWindow);
    }
    match w.right_policy() {
        RightPolicy::Truncate => {
            if w.len() < i + 1 {
                return Err(LogError::Exhausted {
                    reached: w.len() - 1,
                    requested: i,
                });
            }
            let mut level = w.values().to_vec();
            for _ in 0..i {
                level = log_step(&level);
            }
            Ok(SeqWindow::from_parts(
                level,
                w.source().clone(),
                w.depth() + i,
                RightPolicy::Truncate,
            ))
        }
        RightPolicy::Extendable => {
            let depth = w.depth() + i;
            let levels = iterate_source(w.source(), depth, w.len() - 1);
            let values = levels.into_iter().last().unwrap_or_default();
            Ok(SeqWindow::from_parts(values, w.source().clone(), depth, RightPolicy::Extendable))
        }
    }
}

/// `L^depth(src)` at a single index, evaluated straight from the definition
/// by recursion on the depth. Exponential in `depth`; meant for re-checking
/// individual entries.
pub fn log_iterate_at(src: &SeqSource, depth: usize, n: i64) -> Integer {
    if n < 0 {
        return Integer::zero();
    }
    if depth == 0 {
        return src.value_at(n);
    }
    let center = log_iterate_at(src, depth - 1, n);
    let left = log_iterate_at(src, depth - 1, n - 1);
    let right = log_iterate_at(src, depth - 1, n + 1);
    &center * &center - left * right
}

/// The three entries of `L^(depth-1)` producing a failing entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "crate::decimal")]
    pub left: Integer,
    #[serde(with = "crate::decimal")]
    pub center: Integer,
    #[serde(with = "crate::decimal")]
    pub right: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FoldKind {
    NonnegativeUpTo {
        depth: usize,
        horizon: usize,
    },
    Failure {
        depth: usize,
        index: usize,
        #[serde(with = "crate::decimal")]
        value: Integer,
        witness: Witness,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldVerdict {
    pub kind: FoldKind,
    /// Last evaluable index at each inspected depth, starting at depth 1.
    pub horizons: Vec<usize>,
}

impl FoldVerdict {
    pub fn is_failure(&self) -> bool {
        matches!(self.kind, FoldKind::Failure { .. })
    }

    /// Recomputes a failure entry pointwise from raw source values. Always
    /// true for non-failures.
    pub fn reverify(&self, src: &SeqSource) -> bool {
        match &self.kind {
            FoldKind::NonnegativeUpTo { .. } => true,
            FoldKind::Failure { depth, index, value, .. } => {
                value.is_negative() && log_iterate_at(src, *depth, *index as i64) == *value
            }
        }
    }
}

impl fmt::Display for FoldVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FoldKind::NonnegativeUpTo { depth, horizon } => {
                write!(f, "nonnegative up to depth {depth} on 0..={horizon} (empirical)")
            }
            FoldKind::Failure { depth, index, value, .. } => {
                write!(f, "fails at depth {depth}: L^{depth}(a)_{index} = {value}")
            }
        }
    }
}

/// Depth-major, index-major scan of `levels[1..]`, looking at most at
/// indices `0..limit`. Each level must be at least one entry shorter than the
/// one before it or longer than `limit`.
fn first_negative(levels: &[Vec<Integer>], limit: usize) -> Option<FoldKind> {
    for depth in 1..levels.len() {
        let prev = &levels[depth - 1];
        let scan = &levels[depth][..levels[depth].len().min(limit)];
        if let Some(index) = scan.iter().position(|v| v.is_negative()) {
            let at = |i: i64| {
                if i < 0 {
                    Integer::zero()
                } else {
                    prev[i as usize].clone()
                }
            };
            return Some(FoldKind::Failure {
                depth,
                index,
                value: levels[depth][index].clone(),
                witness: Witness {
                    left: at(index as i64 - 1),
                    center: at(index as i64),
                    right: at(index as i64 + 1),
                },
            });
        }
    }
    None
}

/// Scans `L^1..=L^k` of `src` on `0..=horizon`, depth-major then
/// index-major, and reports the shallowest leftmost negative entry. The
/// source is extended so no iterate loses indices on the right; explicit
/// lists extend with zeros.
pub fn check_k_fold(src: &SeqSource, k: usize, horizon: usize) -> Result<FoldVerdict, LogError> {
    if k == 0 {
        return Err(LogError::ZeroDepth);
    }
    let levels = untruncated_levels(src, k, horizon);
    let kind = first_negative(&levels, horizon + 1).unwrap_or(FoldKind::NonnegativeUpTo { depth: k, horizon });
    Ok(FoldVerdict {
        kind,
        horizons: vec![horizon; k],
    })
}

/// Like [`check_k_fold`] but on a window as given. Truncating windows shrink
/// by one index per depth and the verdict records the shrinking horizons.
pub fn check_k_fold_window(w: &SeqWindow, k: usize) -> Result<FoldVerdict, LogError> {
    if k == 0 {
        return Err(LogError::ZeroDepth);
    }
    if w.is_empty() {
        return Err(LogError::EmptyWindow);
    }
    if w.right_policy() == RightPolicy::Extendable {
        let mut levels = untruncated_levels(w.source(), w.depth() + k, w.len() - 1);
        let levels = levels.split_off(w.depth());
        let kind = first_negative(&levels, w.len()).unwrap_or(FoldKind::NonnegativeUpTo {
            depth: k,
            horizon: w.len() - 1,
        });
        return Ok(FoldVerdict {
            kind,
            horizons: vec![w.len() - 1; k],
        });
    }
    if w.len() < k + 1 {
        return Err(LogError::Exhausted {
            reached: w.len() - 1,
            requested: k,
        });
    }
    let mut levels = vec![w.values().to_vec()];
    for _ in 0..k {
        let next = log_step(levels.last().expect("non-empty"));
        levels.push(next);
    }
    let horizons: Vec<usize> = (1..=k).map(|d| w.len() - 1 - d).collect();
    let kind = first_negative(&levels, w.len()).unwrap_or(FoldKind::NonnegativeUpTo {
        depth: k,
        horizon: *horizons.last().expect("k >= 1"),
    });
    Ok(FoldVerdict { kind, horizons })
}

/// Shape of `L(a)` that stays nonnegative under every further application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum StationaryCertificate {
    /// `L(a)` vanishes; zero is fixed by `L`.
    AllZero,
    /// `L(a)` is `value` at `index` and zero elsewhere; `L` maps it to
    /// `value²` at the same index.
    Spike {
        index: usize,
        #[serde(with = "crate::decimal")]
        value: Integer,
    },
    /// `L(a)` is supported on `0..prefix.len()` and fixed by `L`.
    FixedPattern {
        #[serde(with = "crate::decimal::vec")]
        prefix: Vec<Integer>,
    },
    /// `L(a)` is zero before `offset` and `lead·ratioʲ` from `offset + j`
    /// on; its own image is a spike at `offset`.
    PaddedGeometric {
        offset: usize,
        #[serde(with = "crate::decimal")]
        lead: Integer,
        #[serde(with = "crate::decimal::rational")]
        ratio: Rational,
    },
}

impl StationaryCertificate {
    /// True when `L(a)` itself is a fixed point of `L`.
    pub fn is_fixed_point(&self) -> bool {
        match self {
            Self::AllZero | Self::FixedPattern { .. } => true,
            Self::Spike { value, .. } => value.is_zero() || *value == Integer::from(1),
            Self::PaddedGeometric { .. } => false,
        }
    }
}

impl fmt::Display for StationaryCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AllZero => write!(f, "L-image is identically zero (fixed point)"),
            Self::Spike { index, value } => {
                write!(f, "L-image is a single spike {value} at index {index}")
            }
            Self::FixedPattern { prefix } => write!(
                f,
                "L-image [{}, 0, …] is fixed by L",
                crate::seqcore::join(prefix)
            ),
            Self::PaddedGeometric { offset, lead, ratio } => write!(
                f,
                "L-image is {lead}·({ratio})^(n-{offset}) from index {offset}, zero before"
            ),
        }
    }
}

/// Looks for a [`StationaryCertificate`] for `L(src)` on `0..=horizon`.
/// Returns `None` if `L(src)` has a negative entry, if no shape matches, or
/// if `horizon < 2`. Shapes are verified exactly on the inspected range
/// only.
pub fn detect_stationary(src: &SeqSource, horizon: usize) -> Option<StationaryCertificate> {
    if horizon < 2 {
        return None;
    }
    let levels = iterate_source(src, 2, horizon);
    let image = &levels[1];
    if image.iter().any(|v| v.is_negative()) {
        return None;
    }
    let support: Vec<usize> = (0..image.len()).filter(|&i| !image[i].is_zero()).collect();
    match support.as_slice() {
        [] => return Some(StationaryCertificate::AllZero),
        [index] => {
            return Some(StationaryCertificate::Spike {
                index: *index,
                value: image[*index].clone(),
            })
        }
        _ => {}
    }
    if levels[2] == *image {
        let last = *support.last().expect("non-empty support");
        return Some(StationaryCertificate::FixedPattern {
            prefix: image[..=last].to_vec(),
        });
    }
    let offset = support[0];
    let tail = &image[offset..];
    if tail.iter().all(|v| !v.is_zero())
        && tail
            .windows(2)
            .all(|w| &w[1] * &tail[0] == &w[0] * &tail[1])
    {
        return Some(StationaryCertificate::PaddedGeometric {
            offset,
            lead: tail[0].clone(),
            ratio: Rational::new(tail[1].clone(), tail[0].clone()),
        });
    }
    None
}
