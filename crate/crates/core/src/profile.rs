//! The average profile `r ↦ A_r f(x)` at a fixed center.
//!
//! Between consecutive distances from `x` to breakpoints of `f`, the window
//! `[x − r, x + r]` only grows inside fixed pieces, so the window integral is
//! affine in `r`: `∫_{x−r}^{x+r} f = alpha + beta·r`. A [`Profile`] stores one
//! `(alpha, beta)` pair per radius segment.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rat::Rat;
use crate::stepfn::StepFn;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("radius must be positive")]
    NonPositiveRadius,
}

/// Window integral `alpha + beta·r` on one radius segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub alpha: Rat,
    pub beta: Rat,
}

impl Segment {
    pub fn integral(&self, r: &Rat) -> Rat {
        &self.alpha + &self.beta * r
    }

    pub fn average(&self, r: &Rat) -> Rat {
        self.integral(r) / (r * Rat::from_integer(2.into()))
    }

    /// `A_r = beta/2 + alpha/(2r)`: the sign of `alpha` decides the trend.
    pub fn trend(&self) -> Trend {
        if self.alpha.is_zero() {
            Trend::Constant
        } else if self.alpha.is_negative() {
            Trend::Increasing
        } else {
            Trend::Decreasing
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
}

/// Exact piecewise form of `r ↦ A_r f(x)`.
///
/// `segments[0]` covers `(0, cuts[0]]`, `segments[i]` covers
/// `[cuts[i-1], cuts[i]]` and the last one covers `[cuts[n-1], ∞)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub center: Rat,
    pub cuts: Vec<Rat>,
    pub segments: Vec<Segment>,
    pub tail_mass: Rat,
}

/// Distinct positive distances from `x` to the breakpoints of `f`, ascending.
pub fn cut_radii(f: &StepFn, x: &Rat) -> Vec<Rat> {
    let bps = f.breakpoints();
    let split = bps.partition_point(|b| b < x);
    let mut left = bps[..split].iter().rev().map(|b| x - b).peekable();
    let mut right = bps[split..]
        .iter()
        .filter(|b| *b > x)
        .map(|b| b - x)
        .peekable();
    let mut out: Vec<Rat> = Vec::with_capacity(bps.len());
    loop {
        let next = match (left.peek(), right.peek()) {
            (Some(l), Some(r)) if l <= r => left.next(),
            (Some(_), Some(_)) => right.next(),
            (Some(_), None) => left.next(),
            (None, Some(_)) => right.next(),
            (None, None) => break,
        };
        let d = next.unwrap();
        if out.last() != Some(&d) {
            out.push(d);
        }
    }
    out
}

/// `∫_{x−r}^{x+r} f`.
pub fn window_integral(f: &StepFn, x: &Rat, r: &Rat) -> Rat {
    f.integrate(&(x - r), &(x + r))
        .expect("radius is nonnegative")
}

pub fn build_profile(f: &StepFn, x: &Rat) -> Profile {
    let cuts = cut_radii(f, x);
    let integrals: Vec<Rat> = cuts.iter().map(|d| window_integral(f, x, d)).collect();
    let mut segments = Vec::with_capacity(cuts.len() + 1);
    match cuts.first() {
        None => segments.push(Segment {
            alpha: Rat::zero(),
            beta: Rat::zero(),
        }),
        Some(d1) => segments.push(Segment {
            alpha: Rat::zero(),
            beta: &integrals[0] / d1,
        }),
    }
    for i in 1..cuts.len() {
        let beta = (&integrals[i] - &integrals[i - 1]) / (&cuts[i] - &cuts[i - 1]);
        let alpha = &integrals[i - 1] - &beta * &cuts[i - 1];
        segments.push(Segment { alpha, beta });
    }
    if let Some(last) = integrals.last() {
        segments.push(Segment {
            alpha: last.clone(),
            beta: Rat::zero(),
        });
    }
    Profile {
        center: x.clone(),
        cuts,
        segments,
        tail_mass: f.mass(),
    }
}

impl Profile {
    /// Index of a segment containing `r` (`r > 0`).
    pub fn segment_index(&self, r: &Rat) -> usize {
        self.cuts.partition_point(|d| d < r)
    }

    /// Radius range of segment `i`; `None` stands for `+∞`.
    pub fn segment_range(&self, i: usize) -> (Rat, Option<Rat>) {
        let lo = if i == 0 {
            Rat::zero()
        } else {
            self.cuts[i - 1].clone()
        };
        (lo, self.cuts.get(i).cloned())
    }

    /// Exact `A_r f(x)`.
    pub fn eval_average(&self, r: &Rat) -> Result<Rat, ProfileError> {
        if !r.is_positive() {
            return Err(ProfileError::NonPositiveRadius);
        }
        Ok(self.segments[self.segment_index(r)].average(r))
    }

    /// `lim_{r→0⁺} A_r f(x)`, the mean of the one-sided values.
    pub fn local_limit(&self) -> Rat {
        &self.segments[0].beta / Rat::from_integer(2.into())
    }

    /// `A_d` at every cut, in cut order.
    pub fn cut_averages(&self) -> Vec<Rat> {
        self.cuts
            .iter()
            .enumerate()
            .map(|(i, d)| self.segments[i].average(d))
            .collect()
    }
}
