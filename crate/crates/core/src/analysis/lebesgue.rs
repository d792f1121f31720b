//! Lebesgue points and discontinuities of the maximal function.
//!
//! For a step function the non-Lebesgue points are exactly the jump
//! breakpoints. Discontinuities of `𝓜f` are read off breakpoints: if one
//! side of `b` carries a value `v > 𝓜f(b)`, every point just inside that
//! piece has local limit `v`, so `𝓜f` jumps down at `b`. Since `𝓜f` is
//! lower semicontinuous this is the only way it can be discontinuous;
//! [`completeness_violations`] tests that claim on a refined grid.

use num_traits::Signed;
use rayon::prelude::*;

use crate::freq::maximal;
use crate::rat::{int, pow2, Rat};
use crate::stepfn::StepFn;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Shrinking averages of `|f − c|` vanish for this `c`.
    Lebesgue(Rat),
    NonLebesgue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LebesgueClass {
    pub point: Rat,
    pub verdict: Verdict,
}

pub fn lebesgue_classify(f: &StepFn, x: &Rat) -> LebesgueClass {
    let (l, r) = f.one_sided(x);
    let verdict = if l == r {
        Verdict::Lebesgue(l)
    } else {
        Verdict::NonLebesgue
    };
    LebesgueClass {
        point: x.clone(),
        verdict,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Left => -1,
            Side::Right => 1,
        }
    }
}

/// `side_value > maximal_at` at a breakpoint, so `𝓜f` drops at `point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscontinuityCertificate {
    pub point: Rat,
    pub maximal_at: Rat,
    pub side_value: Rat,
    pub jump_lower_bound: Rat,
    /// The side carrying `side_value` (the right side on ties).
    pub high_side: Side,
}

/// Certificate at `b`, if `max(f(b−), f(b+)) > 𝓜f(b)`.
pub fn certify(f: &StepFn, b: &Rat) -> Option<DiscontinuityCertificate> {
    let (l, r) = f.one_sided(b);
    let (side_value, high_side) = if l > r {
        (l, Side::Left)
    } else {
        (r, Side::Right)
    };
    let m = maximal(f, b);
    (side_value > m).then(|| DiscontinuityCertificate {
        point: b.clone(),
        jump_lower_bound: &side_value - &m,
        maximal_at: m,
        side_value,
        high_side,
    })
}

/// Every certified discontinuity of `𝓜f`, in increasing order.
pub fn discontinuities(f: &StepFn) -> Vec<DiscontinuityCertificate> {
    f.breakpoints()
        .par_iter()
        .filter_map(|b| certify(f, b))
        .collect()
}

/// `(j, 𝓜f(b ± 2^{−j}))` on the high side, for every `j ≥ 4` up to
/// whichever is larger of 20 and eight levels past the first sample that
/// lands inside the adjacent piece. The returned flag says whether every
/// sample from that first inside level onward exceeds
/// `𝓜f(b) + jump/2`.
pub fn high_side_samples(f: &StepFn, cert: &DiscontinuityCertificate) -> (Vec<(u32, Rat)>, bool) {
    let b = &cert.point;
    let sign = int(cert.high_side.sign());
    let gap = f
        .breakpoints()
        .into_iter()
        .filter(|p| p != b)
        .map(|p| (p - b).abs())
        .min();
    let inside = match &gap {
        None => 4,
        Some(g) => (1u32..).find(|j| &pow2(-(*j as i32)) < g).unwrap().max(4),
    };
    let last = (inside + 8).max(20);
    let threshold = &cert.maximal_at + &cert.jump_lower_bound / int(2);
    let samples: Vec<(u32, Rat)> = (4..=last)
        .map(|j| (j, maximal(f, &(b + &sign * pow2(-(j as i32))))))
        .collect();
    let ok = samples
        .iter()
        .filter(|(j, _)| *j >= inside)
        .all(|(_, m)| m > &threshold);
    (samples, ok)
}

/// Grid pairs on `[lo, hi]` across which `𝓜f` changes by more than
/// `threshold` with no certified point in between, after bisecting each
/// offending pair up to `depth` times. Continuity, however steep, makes the
/// change shrink under bisection; a surviving pair is a counterexample to
/// completeness of [`discontinuities`].
pub fn completeness_violations(
    f: &StepFn,
    lo: &Rat,
    hi: &Rat,
    step: &Rat,
    threshold: &Rat,
    depth: u32,
) -> Vec<(Rat, Rat)> {
    let certs: Vec<Rat> = discontinuities(f).into_iter().map(|c| c.point).collect();
    let straddles = |a: &Rat, b: &Rat| certs.iter().any(|c| c >= a && c <= b);
    let mut xs = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        xs.push(x.clone());
        x += step;
    }
    let ms: Vec<Rat> = xs.par_iter().map(|x| maximal(f, x)).collect();
    let pairs: Vec<usize> = (1..xs.len())
        .filter(|&i| (&ms[i] - &ms[i - 1]).abs() > *threshold && !straddles(&xs[i - 1], &xs[i]))
        .collect();
    pairs
        .into_par_iter()
        .filter_map(|i| {
            let mut stack = vec![(
                xs[i - 1].clone(),
                ms[i - 1].clone(),
                xs[i].clone(),
                ms[i].clone(),
                0u32,
            )];
            while let Some((a, ma, b, mb, level)) = stack.pop() {
                if (&mb - &ma).abs() <= *threshold || straddles(&a, &b) {
                    continue;
                }
                if level == depth {
                    return Some((a, b));
                }
                let mid = (&a + &b) / int(2);
                let mm = maximal(f, &mid);
                stack.push((a, ma, mid.clone(), mm.clone(), level + 1));
                stack.push((mid, mm, b, mb, level + 1));
            }
            None
        })
        .collect()
}
