//! Sequence sources, finite windows and the zero-extension convention.
//!
//! Every sequence is indexed from 0 and reads as 0 at negative indices.
//! A [`SeqSource`] describes how to produce values; a [`SeqWindow`] is a
//! finite slice `a_0..=a_N` of a source, possibly after `i` applications of
//! the log-operator.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{int_pow, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SourceError {
    #[error("Lucas parameters need P² - 4Q ≥ 0, got D = {0}")]
    NegativeDiscriminant(Integer),
    #[error("Lucas parameters need non-zero P and Q (use extended mode to relax)")]
    ZeroParameter,
    #[error("geometric sequence needs non-zero k and b")]
    ZeroGeometric,
    #[error("n·S^(n-1) needs non-zero S (use extended mode to relax)")]
    ZeroBase,
    #[error("recurrence needs as many initial values as coefficients (got {coeffs} coefficients, {init} initial values)")]
    RecurrenceShape { coeffs: usize, init: usize },
    #[error("recurrence order must be at least 1")]
    EmptyRecurrence,
}

/// Whether constructors enforce the Lucas hypothesis (non-zero `P`, `Q`,
/// non-zero `S`) or accept boundary inputs for exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mode {
    #[default]
    Strict,
    Extended,
}

/// Order-`m` linear recurrence `a_n = k_1 a_{n-1} + … + k_m a_{n-m}` with
/// initial values `a_0..a_{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    #[serde(with = "crate::decimal::vec")]
    coeffs: Vec<Integer>,
    #[serde(with = "crate::decimal::vec")]
    init: Vec<Integer>,
}

impl RecurrenceSpec {
    pub fn new(coeffs: Vec<Integer>, init: Vec<Integer>) -> Result<Self, SourceError> {
        if coeffs.is_empty() {
            return Err(SourceError::EmptyRecurrence);
        }
        if coeffs.len() != init.len() {
            return Err(SourceError::RecurrenceShape {
                coeffs: coeffs.len(),
                init: init.len(),
            });
        }
        Ok(Self { coeffs, init })
    }

    pub fn from_i64(coeffs: &[i64], init: &[i64]) -> Result<Self, SourceError> {
        Self::new(
            coeffs.iter().copied().map(Integer::from).collect(),
            init.iter().copied().map(Integer::from).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn init(&self) -> &[Integer] {
        &self.init
    }

    fn prefix(&self, len: usize) -> Vec<Integer> {
        let m = self.order();
        let mut out: Vec<Integer> = self.init.iter().take(len).cloned().collect();
        while out.len() < len {
            let n = out.len();
            let next = self
                .coeffs
                .iter()
                .enumerate()
                .fold(Integer::zero(), |acc, (j, k)| acc + k * &out[n - 1 - j]);
            out.push(next);
        }
        debug_assert!(len < m || out.len() == len);
        out
    }
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Recurrence(k=[{}], init=[{}])", join(&self.coeffs), join(&self.init))
    }
}

pub(crate) fn join(values: &[Integer]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// The shape of a generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SourceKind {
    /// `a_n = k`.
    Constant(Integer),
    /// `a_n = k·bⁿ`.
    Geometric { k: Integer, b: Integer },
    /// Lucas sequence of the first kind `U_n(P, Q)`.
    Lucas { p: Integer, q: Integer },
    /// `a_n = n·S^(n-1)`, the repeated-root Lucas form.
    PolyGeo(Integer),
    /// A finite list, zero beyond its end.
    Explicit(Vec<Integer>),
    /// General linear recurrence.
    Recurrence(RecurrenceSpec),
}

/// A validated sequence generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeqSource {
    kind: SourceKind,
    outside_hypothesis: bool,
}

impl SeqSource {
    pub fn constant(k: impl Into<Integer>) -> Self {
        Self::plain(SourceKind::Constant(k.into()))
    }

    pub fn geometric(k: impl Into<Integer>, b: impl Into<Integer>) -> Result<Self, SourceError> {
        let (k, b) = (k.into(), b.into());
        if k.is_zero() || b.is_zero() {
            return Err(SourceError::ZeroGeometric);
        }
        Ok(Self::plain(SourceKind::Geometric { k, b }))
    }

    pub fn lucas(p: impl Into<Integer>, q: impl Into<Integer>, mode: Mode) -> Result<Self, SourceError> {
        let (p, q) = (p.into(), q.into());
        let d = &p * &p - Integer::from(4) * &q;
        if d.is_negative() {
            return Err(SourceError::NegativeDiscriminant(d));
        }
        let zero_param = p.is_zero() || q.is_zero();
        if zero_param && mode == Mode::Strict {
            return Err(SourceError::ZeroParameter);
        }
        Ok(Self {
            kind: SourceKind::Lucas { p, q },
            outside_hypothesis: zero_param,
        })
    }

    pub fn poly_geo(s: impl Into<Integer>, mode: Mode) -> Result<Self, SourceError> {
        let s = s.into();
        if s.is_zero() && mode == Mode::Strict {
            return Err(SourceError::ZeroBase);
        }
        let outside_hypothesis = s.is_zero();
        Ok(Self {
            kind: SourceKind::PolyGeo(s),
            outside_hypothesis,
        })
    }

    pub fn explicit(values: Vec<Integer>) -> Self {
        Self::plain(SourceKind::Explicit(values))
    }

    pub fn recurrence(spec: RecurrenceSpec) -> Self {
        Self::plain(SourceKind::Recurrence(spec))
    }

    fn plain(kind: SourceKind) -> Self {
        Self {
            kind,
            outside_hypothesis: false,
        }
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    /// True for Lucas / `n·S^(n-1)` sources built in extended mode with a
    /// zero parameter.
    pub fn outside_hypothesis(&self) -> bool {
        self.outside_hypothesis
    }

    /// Sources backed by a generator continue past any window; explicit
    /// lists do not.
    pub fn is_generator(&self) -> bool {
        !matches!(self.kind, SourceKind::Explicit(_))
    }

    /// Exact value at index `n`; zero for `n < 0` and past the end of an
    /// explicit list. Lucas and recurrence values come from forward
    /// iteration.
    pub fn value_at(&self, n: i64) -> Integer {
        if n < 0 {
            return Integer::zero();
        }
        let n = n as usize;
        match &self.kind {
            SourceKind::Constant(k) => k.clone(),
            SourceKind::Geometric { k, b } => k * int_pow(b, n as u64),
            SourceKind::PolyGeo(s) => poly_geo_value(s, n),
            SourceKind::Explicit(values) => values.get(n).cloned().unwrap_or_default(),
            SourceKind::Lucas { .. } | SourceKind::Recurrence(_) => {
                self.prefix(n + 1).pop().unwrap_or_default()
            }
        }
    }

    /// Values at indices `0..len`.
    pub fn prefix(&self, len: usize) -> Vec<Integer> {
        match &self.kind {
            SourceKind::Lucas { p, q } => {
                let mut out = Vec::with_capacity(len);
                let (mut prev, mut cur) = (Integer::zero(), Integer::one());
                for i in 0..len {
                    if i == 0 {
                        out.push(Integer::zero());
                        continue;
                    }
                    out.push(cur.clone());
                    let next = p * &cur - q * &prev;
                    prev = std::mem::replace(&mut cur, next);
                }
                out
            }
            SourceKind::Recurrence(spec) => spec.prefix(len),
            SourceKind::Geometric { k, b } => {
                let mut out = Vec::with_capacity(len);
                let mut cur = k.clone();
                for _ in 0..len {
                    let next = &cur * b;
                    out.push(std::mem::replace(&mut cur, next));
                }
                out
            }
            _ => (0..len as i64).map(|n| self.value_at(n)).collect(),
        }
    }

    /// Window over indices `0..=n_max`. Explicit lists are zero-filled up to
    /// `n_max` and do not extend further.
    pub fn generate(&self, n_max: usize) -> SeqWindow {
        let right = if self.is_generator() {
            RightPolicy::Extendable
        } else {
            RightPolicy::Truncate
        };
        SeqWindow {
            values: self.prefix(n_max + 1),
            source: self.clone(),
            depth: 0,
            right,
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<Integer>, String> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("invalid integer `{t}`")))
        .collect()
}

impl SeqSource {
    /// Parses a generator description: `const:K`, `geom:K,B`, `lucas:P,Q`,
    /// `polygeo:S` or `rec:K1,..,Km/A0,..,Am-1`.
    pub fn parse_spec(text: &str, mode: Mode) -> Result<Self, String> {
        let (kind, args) = text
            .split_once(':')
            .ok_or_else(|| format!("source `{text}` must look like kind:args"))?;
        let nums = |n: usize| -> Result<Vec<Integer>, String> {
            let v = parse_list(args)?;
            if v.len() != n {
                return Err(format!("`{kind}` takes {n} value(s), got {}", v.len()));
            }
            Ok(v)
        };
        let text_err = |e: SourceError| e.to_string();
        match kind {
            "const" => Ok(Self::constant(nums(1)?.swap_remove(0))),
            "geom" => {
                let v = nums(2)?;
                Self::geometric(v[0].clone(), v[1].clone()).map_err(text_err)
            }
            "lucas" => {
                let v = nums(2)?;
                Self::lucas(v[0].clone(), v[1].clone(), mode).map_err(text_err)
            }
            "polygeo" => Self::poly_geo(nums(1)?.swap_remove(0), mode).map_err(text_err),
            "rec" => {
                let (k, init) = args
                    .split_once('/')
                    .ok_or_else(|| format!("rec source needs `coeffs/init`, got `{args}`"))?;
                RecurrenceSpec::new(parse_list(k)?, parse_list(init)?)
                    .map(Self::recurrence)
                    .map_err(text_err)
            }
            other => Err(format!("unknown source kind `{other}`")),
        }
    }
}

fn poly_geo_value(s: &Integer, n: usize) -> Integer {
    if n == 0 {
        return Integer::zero();
    }
    Integer::from(n) * int_pow(s, n as u64 - 1)
}

impl fmt::Display for SeqSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SourceKind::Constant(k) => write!(f, "Constant({k})"),
            SourceKind::Geometric { k, b } => write!(f, "Geometric({k},{b})"),
            SourceKind::Lucas { p, q } => write!(f, "Lucas({p},{q})"),
            SourceKind::PolyGeo(s) => write!(f, "PolyGeo({s})"),
            SourceKind::Explicit(v) => write!(f, "Explicit({} values)", v.len()),
            SourceKind::Recurrence(spec) => spec.fmt(f),
        }
    }
}

/// Behaviour of a window past its last stored index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RightPolicy {
    /// Not evaluable past the end; each log step drops one index.
    Truncate,
    /// The backing source supplies further values.
    Extendable,
}

/// Finite slice `0..=N` of `L^depth(source)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqWindow {
    values: Vec<Integer>,
    source: SeqSource,
    depth: usize,
    right: RightPolicy,
}

impl SeqWindow {
    pub(crate) fn from_parts(
        values: Vec<Integer>,
        source: SeqSource,
        depth: usize,
        right: RightPolicy,
    ) -> Self {
        Self {
            values,
            source,
            depth,
            right,
        }
    }

    /// A standalone truncating window, e.g. parsed from a file.
    pub fn truncating(values: Vec<Integer>) -> Self {
        Self {
            source: SeqSource::explicit(values.clone()),
            values,
            depth: 0,
            right: RightPolicy::Truncate,
        }
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Integer> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> &SeqSource {
        &self.source
    }

    /// Number of log-operator applications between the source and this window.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn right_policy(&self) -> RightPolicy {
        self.right
    }

    /// Value at index `n`: zero for negative `n`, `None` past the end of a
    /// truncating window.
    pub fn get(&self, n: i64) -> Option<Integer> {
        if n < 0 {
            return Some(Integer::zero());
        }
        if let Some(v) = self.values.get(n as usize) {
            return Some(v.clone());
        }
        match self.right {
            RightPolicy::Truncate => None,
            RightPolicy::Extendable => {
                let base = self.source.prefix(n as usize + 1 + self.depth);
                let mut level = base;
                for _ in 0..self.depth {
                    level = crate::logop::log_step(&level);
                }
                level.get(n as usize).cloned()
            }
        }
    }

    pub fn provenance(&self) -> String {
        if self.depth == 0 {
            self.source.to_string()
        } else {
            format!("derived by L^{} from {}", self.depth, self.source)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().copied().map(Integer::from).collect()
    }

    fn lucas(p: i64, q: i64) -> SeqSource {
        SeqSource::lucas(p, q, Mode::Strict).unwrap()
    }

    #[test]
    fn fibonacci_and_mersenne_prefixes() {
        let fib: Vec<_> = (0..=6).map(|n| lucas(1, -1).value_at(n)).collect();
        assert_eq!(fib, ints(&[0, 1, 1, 2, 3, 5, 8]));
        let mersenne: Vec<_> = (0..=5).map(|n| lucas(3, 2).value_at(n)).collect();
        assert_eq!(mersenne, ints(&[0, 1, 3, 7, 15, 31]));
    }

    #[test]
    fn negative_indices_read_zero() {
        let sources = [
            SeqSource::constant(4),
            SeqSource::geometric(2, 3).unwrap(),
            lucas(1, -1),
            SeqSource::poly_geo(2, Mode::Strict).unwrap(),
            SeqSource::explicit(ints(&[5, 6])),
            SeqSource::recurrence(RecurrenceSpec::from_i64(&[1, 1], &[2, 3]).unwrap()),
        ];
        for s in &sources {
            assert_eq!(s.value_at(-3), Integer::zero(), "{s}");
            assert_eq!(s.generate(3).get(-1), Some(Integer::zero()));
        }
    }

    #[test]
    fn poly_geo_values() {
        let s = SeqSource::poly_geo(2, Mode::Strict).unwrap();
        assert_eq!(s.prefix(5), ints(&[0, 1, 4, 12, 32]));
    }

    #[test]
    fn generate_windows() {
        assert_eq!(SeqSource::constant(3).generate(4).values(), &ints(&[3; 5])[..]);
        let pell = lucas(2, -1).generate(5);
        assert_eq!(pell.values(), &ints(&[0, 1, 2, 5, 12, 29])[..]);
        assert_eq!(pell.right_policy(), RightPolicy::Extendable);
        let e = SeqSource::explicit(ints(&[0, 1, 1])).generate(5);
        assert_eq!(e.values(), &ints(&[0, 1, 1, 0, 0, 0])[..]);
        assert_eq!(e.right_policy(), RightPolicy::Truncate);
        assert_eq!(e.get(6), None);
        assert_eq!(pell.get(8), Some(Integer::from(408)));
    }

    #[test]
    fn lucas_constructor_checks_hypothesis() {
        assert_eq!(
            SeqSource::lucas(1, 1, Mode::Strict),
            Err(SourceError::NegativeDiscriminant(Integer::from(-3)))
        );
        assert_eq!(SeqSource::lucas(0, -1, Mode::Strict), Err(SourceError::ZeroParameter));
        assert_eq!(SeqSource::lucas(3, 0, Mode::Strict), Err(SourceError::ZeroParameter));
        let relaxed = SeqSource::lucas(3, 0, Mode::Extended).unwrap();
        assert!(relaxed.outside_hypothesis());
        assert_eq!(relaxed.prefix(4), ints(&[0, 1, 3, 9]));
        assert!(!lucas(3, 2).outside_hypothesis());
        assert!(SeqSource::lucas(1, 1, Mode::Extended).is_err());
        assert!(SeqSource::geometric(0, 2).is_err());
        assert!(SeqSource::poly_geo(0, Mode::Strict).is_err());
    }

    #[test]
    fn recurrence_shape_is_checked() {
        assert!(matches!(
            RecurrenceSpec::from_i64(&[1, 1], &[0]),
            Err(SourceError::RecurrenceShape { .. })
        ));
        assert_eq!(RecurrenceSpec::from_i64(&[], &[]), Err(SourceError::EmptyRecurrence));
    }

    #[test]
    fn lucas_initial_values() {
        for p in -10i64..=10 {
            for q in -10i64..=10 {
                if let Ok(s) = SeqSource::lucas(p, q, Mode::Strict) {
                    assert_eq!(s.prefix(3), ints(&[0, 1, p]));
                }
            }
        }
    }

    #[test]
    fn repeated_root_lucas_matches_poly_geo() {
        for s in (-10i64..=10).filter(|&s| s != 0) {
            let l = SeqSource::lucas(2 * s, s * s, Mode::Strict).unwrap();
            let pg = SeqSource::poly_geo(s, Mode::Strict).unwrap();
            assert_eq!(l.prefix(201), pg.prefix(201), "S = {s}");
        }
    }

    #[test]
    fn value_at_agrees_with_prefix() {
        let s = lucas(3, 2);
        let p = s.prefix(30);
        for (n, v) in p.iter().enumerate() {
            assert_eq!(&s.value_at(n as i64), v);
            assert_eq!(&s.value_at(n as i64), v);
        }
    }

    #[test]
    fn provenance_text() {
        let w = lucas(1, -1).generate(3);
        assert_eq!(w.provenance(), "Lucas(1,-1)");
    }
}
