//! Canonical nonnegative rational step functions.
//!
//! A [`StepFn`] is a finite sorted list of half-open pieces `[left, right)`
//! carrying positive values. Everything the maximal and frequency functions
//! see is insensitive to null sets, so one fixed endpoint convention is
//! enough; half-open pieces make [`StepFn::one_sided`] and merging
//! unambiguous.
//!
//! Text format, one piece per line:
//!
//! ```text
//! # comment
//! -1 1 1
//! 3/2 2 1/4
//! ```

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::enclosure::Enclosure;
use crate::rat::{common_denominator, parse_rat, ParseRatError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Piece {
    pub left: Rat,
    pub right: Rat,
    pub value: Rat,
}

impl Piece {
    pub fn new(left: Rat, right: Rat, value: Rat) -> Self {
        Piece { left, right, value }
    }

    pub fn len(&self) -> Rat {
        &self.right - &self.left
    }

    pub fn mass(&self) -> Rat {
        &self.value * self.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepFnError {
    #[error("line {line}: input is not valid UTF-8")]
    NotUtf8 { line: usize },
    #[error("line {line}: expected `<left> <right> <value>`, found {found} field(s)")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: {source}")]
    Rational {
        line: usize,
        #[source]
        source: ParseRatError,
    },
    #[error("line {line}: left endpoint must be below right endpoint")]
    EmptyInterval { line: usize },
    #[error("line {line}: negative value")]
    NegativeValue { line: usize },
    #[error("line {line}: interval overlaps the one from line {other}")]
    Overlap { line: usize, other: usize },
    #[error("integration bounds reversed")]
    ReversedBounds,
    #[error("scale factor must be positive")]
    NonPositiveScale,
}

/// Canonical nonnegative step function with finitely many pieces.
///
/// Invariants: pieces sorted and pairwise disjoint, every value positive,
/// no two abutting pieces with equal values.
///
/// Cumulative masses are kept as integers over one common denominator
/// rather than as reduced fractions: when piece values carry many distinct
/// large denominators, reducing every partial sum would dominate the cost
/// of everything else. Exact integrals then need a single reduction each.
#[derive(Clone)]
pub struct StepFn {
    pieces: Vec<Piece>,
    /// `prefix[i] / prefix_den` is the mass of the first `i` pieces.
    prefix: Vec<BigInt>,
    prefix_den: BigInt,
    mass: Rat,
    enclosure: OnceLock<Enclosure>,
}

impl PartialEq for StepFn {
    fn eq(&self, other: &Self) -> bool {
        self.pieces == other.pieces
    }
}

impl Eq for StepFn {}

impl Hash for StepFn {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.pieces.hash(state);
    }
}

impl fmt::Debug for StepFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.pieces
                    .iter()
                    .map(|p| (p.left.to_string(), p.right.to_string(), p.value.to_string())),
            )
            .finish()
    }
}

impl Default for StepFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl StepFn {
    pub fn zero() -> Self {
        Self::from_canonical(Vec::new())
    }

    /// Validates and canonicalizes an arbitrary list of pieces. Error line
    /// numbers are 1-based positions in `pieces`.
    pub fn new(pieces: Vec<Piece>) -> Result<Self, StepFnError> {
        Self::from_numbered(
            pieces
                .into_iter()
                .enumerate()
                .map(|(i, p)| (i + 1, p))
                .collect(),
        )
    }

    /// The indicator of `[left, right)` scaled by `value`.
    pub fn indicator(left: Rat, right: Rat, value: Rat) -> Result<Self, StepFnError> {
        Self::new(vec![Piece::new(left, right, value)])
    }

    fn from_numbered(mut entries: Vec<(usize, Piece)>) -> Result<Self, StepFnError> {
        for (line, p) in &entries {
            if p.left >= p.right {
                return Err(StepFnError::EmptyInterval { line: *line });
            }
            if p.value.is_negative() {
                return Err(StepFnError::NegativeValue { line: *line });
            }
        }
        entries.sort_by(|a, b| a.1.left.cmp(&b.1.left).then(a.0.cmp(&b.0)));
        for w in entries.windows(2) {
            if w[0].1.right > w[1].1.left {
                let (a, b) = (w[0].0.min(w[1].0), w[0].0.max(w[1].0));
                return Err(StepFnError::Overlap { line: b, other: a });
            }
        }
        let mut pieces: Vec<Piece> = Vec::with_capacity(entries.len());
        for (_, p) in entries {
            if p.value.is_zero() {
                continue;
            }
            match pieces.last_mut() {
                Some(last) if last.right == p.left && last.value == p.value => last.right = p.right,
                _ => pieces.push(p),
            }
        }
        Ok(Self::from_canonical(pieces))
    }

    /// Caller guarantees the canonical invariants.
    pub(crate) fn from_canonical(pieces: Vec<Piece>) -> Self {
        let masses: Vec<Rat> = pieces.iter().map(Piece::mass).collect();
        let prefix_den = common_denominator(&masses);
        let mut prefix = Vec::with_capacity(pieces.len() + 1);
        let mut acc = BigInt::zero();
        prefix.push(acc.clone());
        for m in &masses {
            acc += m.numer() * (&prefix_den / m.denom());
            prefix.push(acc.clone());
        }
        let mass = Rat::new(acc, prefix_den.clone());
        StepFn {
            pieces,
            prefix,
            prefix_den,
            mass,
            enclosure: OnceLock::new(),
        }
    }

    /// Integer bounds used to discard radii cheaply; built on first use.
    pub(crate) fn enclosure(&self) -> &Enclosure {
        self.enclosure.get_or_init(|| Enclosure::new(&self.pieces))
    }

    /// `∫_{-∞}^t f` split as `prefix[i] / prefix_den + rest`, where `rest`
    /// only involves the piece containing `t`.
    fn split_primitive(&self, t: &Rat) -> (&BigInt, Rat) {
        let idx = self.pieces.partition_point(|p| &p.left <= t);
        if idx == 0 {
            return (&self.prefix[0], Rat::zero());
        }
        let p = &self.pieces[idx - 1];
        if t >= &p.right {
            (&self.prefix[idx], Rat::zero())
        } else {
            (&self.prefix[idx - 1], &p.value * (t - &p.left))
        }
    }

    /// `whole / prefix_den + rest` with a single reduction.
    fn combine(&self, whole: BigInt, rest: Rat) -> Rat {
        if self.prefix_den.is_one() {
            return Rat::from_integer(whole) + rest;
        }
        let (n, d) = (rest.numer(), rest.denom());
        Rat::new(whole * d + n * &self.prefix_den, &self.prefix_den * d)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `‖f‖₁`.
    pub fn mass(&self) -> Rat {
        self.mass.clone()
    }

    /// Largest value taken, 0 for the zero function.
    pub fn sup(&self) -> Rat {
        self.pieces
            .iter()
            .map(|p| &p.value)
            .max()
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Convex hull of the support.
    pub fn support(&self) -> Option<(Rat, Rat)> {
        let first = self.pieces.first()?;
        let last = self.pieces.last()?;
        Some((first.left.clone(), last.right.clone()))
    }

    /// All piece endpoints, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::with_capacity(2 * self.pieces.len());
        for p in &self.pieces {
            if out.last() != Some(&p.left) {
                out.push(p.left.clone());
            }
            out.push(p.right.clone());
        }
        out
    }

    /// Breakpoints where the one-sided values differ.
    pub fn jump_points(&self) -> Vec<Rat> {
        self.breakpoints()
            .into_iter()
            .filter(|b| {
                let (l, r) = self.one_sided(b);
                l != r
            })
            .collect()
    }

    /// `∫_{-∞}^t f`.
    pub fn primitive(&self, t: &Rat) -> Rat {
        let (whole, rest) = self.split_primitive(t);
        self.combine(whole.clone(), rest)
    }

    /// `∫_a^b f`, exactly.
    pub fn integrate(&self, a: &Rat, b: &Rat) -> Result<Rat, StepFnError> {
        if a > b {
            return Err(StepFnError::ReversedBounds);
        }
        let (wa, ra) = self.split_primitive(a);
        let (wb, rb) = self.split_primitive(b);
        Ok(self.combine(wb - wa, rb - ra))
    }

    /// Value on `[t, t + δ)` for small δ.
    pub fn value_at(&self, t: &Rat) -> Rat {
        let idx = self.pieces.partition_point(|p| &p.left <= t);
        match idx.checked_sub(1).map(|i| &self.pieces[i]) {
            Some(p) if t < &p.right => p.value.clone(),
            _ => Rat::zero(),
        }
    }

    /// Values of `f` on `(x − δ, x)` and `(x, x + δ)` for all small δ.
    pub fn one_sided(&self, x: &Rat) -> (Rat, Rat) {
        let idx = self.pieces.partition_point(|p| &p.left < x);
        let left = match idx.checked_sub(1).map(|i| &self.pieces[i]) {
            Some(p) if x <= &p.right => p.value.clone(),
            _ => Rat::zero(),
        };
        (left, self.value_at(x))
    }

    pub fn scale(&self, c: &Rat) -> Result<StepFn, StepFnError> {
        if !c.is_positive() {
            return Err(StepFnError::NonPositiveScale);
        }
        Ok(Self::from_canonical(
            self.pieces
                .iter()
                .map(|p| Piece::new(p.left.clone(), p.right.clone(), &p.value * c))
                .collect(),
        ))
    }

    pub fn translate(&self, t: &Rat) -> StepFn {
        Self::from_canonical(
            self.pieces
                .iter()
                .map(|p| Piece::new(&p.left + t, &p.right + t, p.value.clone()))
                .collect(),
        )
    }

    /// `x ↦ f(−x)`, up to the endpoint convention.
    pub fn reflect(&self) -> StepFn {
        Self::from_canonical(
            self.pieces
                .iter()
                .rev()
                .map(|p| Piece::new(-&p.right, -&p.left, p.value.clone()))
                .collect(),
        )
    }

    /// Canonical text rendering; `parse_stepfn(f.to_text()) == f`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.pieces {
            out.push_str(&format!("{} {} {}\n", p.left, p.right, p.value));
        }
        out
    }
}

/// Parses the step-function text format. Pieces may come in any order but
/// must not overlap.
pub fn parse_stepfn(text: &[u8]) -> Result<StepFn, StepFnError> {
    let text = std::str::from_utf8(text).map_err(|e| {
        let line = text[..e.valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count()
            + 1;
        StepFnError::NotUtf8 { line }
    })?;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(StepFnError::FieldCount {
                line,
                found: fields.len(),
            });
        }
        let mut vals = fields
            .iter()
            .map(|s| parse_rat(s).map_err(|source| StepFnError::Rational { line, source }));
        let left = vals.next().unwrap()?;
        let right = vals.next().unwrap()?;
        let value = vals.next().unwrap()?;
        entries.push((line, Piece::new(left, right, value)));
    }
    StepFn::from_numbered(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn f2() -> StepFn {
        StepFn::indicator(int(-1), int(1), int(1)).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = parse_stepfn(b"-1/1 1/1 1/1").unwrap();
        assert_eq!(f, f2());
        assert!(parse_stepfn(b"").unwrap().is_zero());
        let merged = parse_stepfn(b"0 1 2\n1 2 2").unwrap();
        assert_eq!(merged.pieces(), &[Piece::new(int(0), int(2), int(2))]);
    }

    #[test]
    fn parse_comments_unsorted_and_zero_pieces() {
        let f = parse_stepfn(b"# header\n\n3 4 1/2  # tail\n0 1 0\n1 2 5\n").unwrap();
        assert_eq!(f.pieces().len(), 2);
        assert_eq!(f.to_text(), "1 2 5\n3 4 1/2\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_stepfn(b"0 1 1\n\n0 x 1"),
            Err(StepFnError::Rational {
                line: 3,
                source: ParseRatError::Malformed("x".into())
            })
        );
        assert_eq!(
            parse_stepfn(b"0 1 1\n1/2 3 1"),
            Err(StepFnError::Overlap { line: 2, other: 1 })
        );
        assert_eq!(
            parse_stepfn(b"5 3 1"),
            Err(StepFnError::EmptyInterval { line: 1 })
        );
        assert_eq!(
            parse_stepfn(b"2 2 1"),
            Err(StepFnError::EmptyInterval { line: 1 })
        );
        assert_eq!(
            parse_stepfn(b"0 1 -1/2"),
            Err(StepFnError::NegativeValue { line: 1 })
        );
        assert_eq!(
            parse_stepfn(b"0 1"),
            Err(StepFnError::FieldCount { line: 1, found: 2 })
        );
        assert_eq!(
            parse_stepfn(b"0 1 1\n\xff"),
            Err(StepFnError::NotUtf8 { line: 2 })
        );
    }

    #[test]
    fn overlap_with_zero_piece_is_still_an_error() {
        assert!(matches!(
            parse_stepfn(b"0 2 0\n1 3 1"),
            Err(StepFnError::Overlap { .. })
        ));
    }

    #[test]
    fn integrate_examples() {
        let f = f2();
        assert_eq!(f.integrate(&int(-1), &int(1)).unwrap(), int(2));
        assert_eq!(f.integrate(&rat(1, 2), &rat(5, 2)).unwrap(), rat(1, 2));
        assert_eq!(StepFn::zero().integrate(&int(-5), &int(5)).unwrap(), int(0));
        assert_eq!(
            f.integrate(&int(2), &int(1)),
            Err(StepFnError::ReversedBounds)
        );
    }

    #[test]
    fn one_sided_examples() {
        let f = f2();
        assert_eq!(f.one_sided(&int(1)), (int(1), int(0)));
        assert_eq!(f.one_sided(&int(0)), (int(1), int(1)));
        assert_eq!(f.one_sided(&int(7)), (int(0), int(0)));
        assert_eq!(f.one_sided(&int(-1)), (int(0), int(1)));
    }

    #[test]
    fn mass_breakpoints_and_transforms() {
        let f = f2();
        assert_eq!(f.mass(), int(2));
        assert_eq!(f.breakpoints(), vec![int(-1), int(1)]);
        let f4 = f.scale(&rat(1, 4)).unwrap();
        assert_eq!(f4.mass(), rat(1, 2));
        assert_eq!(f.scale(&int(0)), Err(StepFnError::NonPositiveScale));
        assert_eq!(f.translate(&int(3)).breakpoints(), vec![int(2), int(4)]);
        let g = parse_stepfn(b"0 1 1\n2 3 5").unwrap();
        assert_eq!(g.reflect().to_text(), "-3 -2 5\n-1 0 1\n");
        assert_eq!(g.reflect().reflect(), g);
    }

    #[test]
    fn jump_points_skip_continuous_breakpoints() {
        // 1 on [0,1), 2 on [1,2): every endpoint is a jump.
        let g = parse_stepfn(b"0 1 1\n1 2 2").unwrap();
        assert_eq!(g.jump_points(), vec![int(0), int(1), int(2)]);
        assert_eq!(StepFn::zero().jump_points(), Vec::<Rat>::new());
    }
}
