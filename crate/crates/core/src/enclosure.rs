//! Integer enclosures of window integrals.
//!
//! Every value `v` is bracketed by `floor(v·2^B)` and `ceil(v·2^B)`, and
//! every breakpoint is put on the lattice `ℤ/D` with `D` the common
//! denominator of the breakpoints. Window integrals of the two bracketing
//! functions are then plain integer sums, and since
//! `∫ lo ≤ 2^B ∫ f ≤ ∫ hi` holds for every window, comparisons that the
//! brackets decide are decided exactly.
//!
//! The maximal-function search uses this to discard radii whose average
//! provably falls short, leaving only near-ties for exact rational
//! evaluation. With thousands of pieces whose values have unrelated large
//! denominators this is the difference between microseconds and seconds
//! per radius.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rat::{common_denominator, lcm, Rat};
use crate::stepfn::Piece;

/// Significant bits kept for the smallest value.
const PRECISION_BITS: u64 = 64;

#[derive(Debug, Clone)]
pub(crate) struct Enclosure {
    shift: u64,
    den: BigInt,
    lefts: Vec<BigInt>,
    rights: Vec<BigInt>,
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
    prefix_lo: Vec<BigInt>,
    prefix_hi: Vec<BigInt>,
    breakpoints: Vec<BigInt>,
}

/// Floor division by a positive integer.
fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

impl Enclosure {
    pub(crate) fn new(pieces: &[Piece]) -> Self {
        let shift = PRECISION_BITS
            + pieces
                .iter()
                .map(|p| {
                    p.value
                        .denom()
                        .bits()
                        .saturating_sub(p.value.numer().bits())
                })
                .max()
                .unwrap_or(0);
        let den = common_denominator(pieces.iter().flat_map(|p| [&p.left, &p.right]));
        let on_lattice = |r: &Rat| r.numer() * (&den / r.denom());
        let lefts: Vec<BigInt> = pieces.iter().map(|p| on_lattice(&p.left)).collect();
        let rights: Vec<BigInt> = pieces.iter().map(|p| on_lattice(&p.right)).collect();
        let mut lo = Vec::with_capacity(pieces.len());
        let mut hi = Vec::with_capacity(pieces.len());
        for p in pieces {
            let scaled = p.value.numer() << shift;
            let (q, r) = scaled.div_rem(p.value.denom());
            hi.push(if r.is_zero() { q.clone() } else { &q + 1 });
            lo.push(q);
        }
        let running = |w: &[BigInt]| {
            let mut acc = BigInt::zero();
            let mut out = vec![acc.clone()];
            for i in 0..w.len() {
                acc += &w[i] * (&rights[i] - &lefts[i]);
                out.push(acc.clone());
            }
            out
        };
        let prefix_lo = running(&lo);
        let prefix_hi = running(&hi);
        let mut breakpoints: Vec<BigInt> = Vec::with_capacity(2 * pieces.len());
        for (l, r) in lefts.iter().zip(&rights) {
            if breakpoints.last() != Some(l) {
                breakpoints.push(l.clone());
            }
            breakpoints.push(r.clone());
        }
        Enclosure {
            shift,
            den,
            lefts,
            rights,
            lo,
            hi,
            prefix_lo,
            prefix_hi,
            breakpoints,
        }
    }

    /// Working frame for windows centered at `x`.
    pub(crate) fn frame(&self, x: &Rat) -> Frame<'_> {
        let unit = lcm(&self.den, x.denom());
        let k = &unit / &self.den;
        let center = x.numer() * (&unit / x.denom());
        Frame {
            enc: self,
            k,
            unit,
            center,
        }
    }
}

/// Coordinates in units of `1/unit`, where `unit` is a multiple of both the
/// breakpoint denominator and the center's denominator. Integrals come out
/// in units of `2^{−B}/unit`.
pub(crate) struct Frame<'a> {
    enc: &'a Enclosure,
    k: BigInt,
    unit: BigInt,
    center: BigInt,
}

impl Frame<'_> {
    /// Bracketing primitives `(∫_{−∞}^t lo, ∫_{−∞}^t hi)` at lattice point `t`.
    fn primitive(&self, t: &BigInt) -> (BigInt, BigInt) {
        let e = self.enc;
        // For integer L and R: L ≤ t/k ⇔ L ≤ ⌊t/k⌋ and t/k < R ⇔ ⌊t/k⌋ < R.
        let tf = floor_div(t, &self.k);
        let idx = e.lefts.partition_point(|l| l <= &tf);
        if idx == 0 {
            return (BigInt::zero(), BigInt::zero());
        }
        let i = idx - 1;
        if tf < e.rights[i] {
            let part = t - &e.lefts[i] * &self.k;
            (
                &e.prefix_lo[i] * &self.k + &e.lo[i] * &part,
                &e.prefix_hi[i] * &self.k + &e.hi[i] * &part,
            )
        } else {
            (&e.prefix_lo[idx] * &self.k, &e.prefix_hi[idx] * &self.k)
        }
    }

    /// Bracketing integrals over `[center − d, center + d]`.
    pub(crate) fn window(&self, d: &BigInt) -> (BigInt, BigInt) {
        let (al, ah) = self.primitive(&(&self.center - d));
        let (bl, bh) = self.primitive(&(&self.center + d));
        (bl - al, bh - ah)
    }

    /// Upper bracket of the total mass.
    pub(crate) fn mass_hi(&self) -> BigInt {
        self.enc.prefix_hi.last().expect("prefix is never empty") * &self.k
    }

    /// Distinct positive distances from the center to breakpoints,
    /// ascending, in lattice units.
    pub(crate) fn cuts(&self) -> Vec<BigInt> {
        let scaled: Vec<BigInt> = self.enc.breakpoints.iter().map(|b| b * &self.k).collect();
        let split = scaled.partition_point(|b| b < &self.center);
        let mut left = scaled[..split]
            .iter()
            .rev()
            .map(|b| &self.center - b)
            .peekable();
        let mut right = scaled[split..]
            .iter()
            .filter(|b| *b > &self.center)
            .map(|b| b - &self.center)
            .peekable();
        let mut out: Vec<BigInt> = Vec::with_capacity(scaled.len());
        loop {
            let next = match (left.peek(), right.peek()) {
                (Some(l), Some(r)) if l <= r => left.next(),
                (Some(_), Some(_)) | (None, Some(_)) => right.next(),
                (Some(_), None) => left.next(),
                (None, None) => break,
            };
            let d = next.expect("one side is nonempty");
            if out.last() != Some(&d) {
                out.push(d);
            }
        }
        out
    }

    /// The lattice distance `d` as a rational radius.
    pub(crate) fn radius(&self, d: &BigInt) -> Rat {
        Rat::new(d.clone(), self.unit.clone())
    }

    /// `2^{B+1}·c` as a fraction, comparable with `window(d) / d`.
    pub(crate) fn scale_average(&self, c: &Rat) -> Fraction {
        Fraction {
            num: c.numer() << (self.enc.shift + 1),
            den: c.denom().clone(),
        }
    }
}

/// A nonnegative fraction with positive denominator, never reduced.
#[derive(Debug, Clone)]
pub(crate) struct Fraction {
    pub num: BigInt,
    pub den: BigInt,
}

impl Fraction {
    pub(crate) fn new(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        Fraction { num, den }
    }

    pub(crate) fn lt(&self, other: &Fraction) -> bool {
        &self.num * &other.den < &other.num * &self.den
    }
}
