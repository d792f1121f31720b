//! Maximal function, frequency function and the auxiliary approximants.
//!
//! On each profile segment `A_r = beta/2 + alpha/(2r)` is monotone or
//! constant, and the first segment `(0, d₁]` is constant at the local limit
//! `c₀`. Hence the supremum over all radii is the largest of the averages at
//! the cut radii (`A_{d₁} = c₀`), and the infimum of the maximizing set is 0
//! when `c₀` already attains it, otherwise the smallest maximizing cut.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::enclosure::Fraction;
use crate::profile::{build_profile, window_integral, Profile, Trend};
use crate::rat::{pow2, Rat};
use crate::stepfn::StepFn;

/// How the infimum of the maximizing radii came about.
///
/// The maximizing set is never empty for a step function (the constant first
/// segment is a candidate), so there is no variant for "no maximizing
/// radius"; both zero cases are an infimum equal to 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    ZeroFunction,
    /// `c₀(x)` equals the supremum: every radius in `(0, d₁]` maximizes.
    ZeroByLocalLimit,
    /// The smallest maximizing radius is this positive cut.
    AttainedAt(Rat),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::ZeroFunction => "zero_function",
            Status::ZeroByLocalLimit => "zero_by_local_limit",
            Status::AttainedAt(_) => "attained",
        }
    }

    pub fn witness(&self) -> Option<&Rat> {
        match self {
            Status::AttainedAt(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreqResult {
    pub maximal: Rat,
    pub frequency: Rat,
    pub local_limit: Rat,
    pub status: Status,
    /// Every cut radius whose average equals `maximal`.
    pub argmax_cuts: Vec<Rat>,
}

fn two() -> Rat {
    Rat::from_integer(2.into())
}

/// `𝓜f(x)`.
pub fn maximal(f: &StepFn, x: &Rat) -> Rat {
    frequency(f, x).maximal
}

/// `𝓜f(x)`, `𝒯f(x)` and the maximizing cuts.
///
/// Two passes over the cuts in increasing order. The first brackets every
/// cut average between integer bounds and keeps the best lower bound,
/// stopping once `‖f‖₁/(2d)` falls strictly below it since no later cut
/// can catch up. The second evaluates exactly only the cuts whose upper
/// bound still reaches that lower bound; every other cut is certified to
/// fall short of the maximum.
pub fn frequency(f: &StepFn, x: &Rat) -> FreqResult {
    if f.is_zero() {
        return FreqResult {
            maximal: Rat::zero(),
            frequency: Rat::zero(),
            local_limit: Rat::zero(),
            status: Status::ZeroFunction,
            argmax_cuts: Vec::new(),
        };
    }
    let (left, right) = f.one_sided(x);
    let c0 = (left + right) / two();

    let frame = f.enclosure().frame(x);
    let mass_hi = frame.mass_hi();
    let mut floor = frame.scale_average(&c0);
    let mut upper: Vec<(BigInt, BigInt)> = Vec::new();
    for d in frame.cuts() {
        if Fraction::new(mass_hi.clone(), d.clone()).lt(&floor) {
            break;
        }
        let (lo, hi) = frame.window(&d);
        let candidate = Fraction::new(lo, d.clone());
        if floor.lt(&candidate) {
            floor = candidate;
        }
        upper.push((d, hi));
    }

    let mut best = c0.clone();
    let mut argmax: Vec<Rat> = Vec::new();
    for (d, hi) in upper {
        if Fraction::new(hi, d.clone()).lt(&floor) {
            continue;
        }
        let r = frame.radius(&d);
        let avg = window_integral(f, x, &r) / (&r * two());
        if avg > best {
            best = avg;
            argmax.clear();
            argmax.push(r);
        } else if avg == best {
            argmax.push(r);
        }
    }
    let (frequency, status) = if c0 == best {
        (Rat::zero(), Status::ZeroByLocalLimit)
    } else {
        let w = argmax[0].clone();
        (w.clone(), Status::AttainedAt(w))
    };
    FreqResult {
        maximal: best,
        frequency,
        local_limit: c0,
        status,
        argmax_cuts: argmax,
    }
}

/// Infimum over rational `r ≥ 2^{−l}` with `A_r f(x) + 2^{−k} ≥ 𝓜f(x)`, or 0
/// when no such radius exists.
///
/// Per segment the condition is `alpha + (beta − 2θ)·r ≥ 0` with
/// `θ = 𝓜f(x) − 2^{−k}`; its solution set there is a closed interval with
/// rational endpoints, so the rational and real infima agree.
pub fn aux_frequency(f: &StepFn, x: &Rat, k: u32, l: u32) -> Rat {
    let floor = pow2(-(l as i32));
    let theta = maximal(f, x) - pow2(-(k as i32));
    if !theta.is_positive() {
        return floor;
    }
    let profile = build_profile(f, x);
    let twice_theta = &theta * two();
    for (i, seg) in profile.segments.iter().enumerate() {
        let (lo, hi) = profile.segment_range(i);
        let start = if lo > floor { lo } else { floor.clone() };
        if hi.as_ref().is_some_and(|h| &start > h) {
            continue;
        }
        let slope = &seg.beta - &twice_theta;
        if !(&seg.alpha + &slope * &start).is_negative() {
            return start;
        }
        if slope.is_positive() {
            let root = -&seg.alpha / &slope;
            if hi.as_ref().is_none_or(|h| &root <= h) {
                return root;
            }
        }
    }
    Rat::zero()
}

/// A connected piece of the maximizing set `E_{f,x}`. `hi = None` means `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusInterval {
    pub lo: Rat,
    pub hi: Option<Rat>,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl RadiusInterval {
    fn point(r: Rat) -> Self {
        RadiusInterval {
            lo: r.clone(),
            hi: Some(r),
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_point(&self) -> bool {
        self.hi.as_ref() == Some(&self.lo)
    }

    pub fn contains(&self, r: &Rat) -> bool {
        let above = if self.lo_closed {
            r >= &self.lo
        } else {
            r > &self.lo
        };
        let below = match &self.hi {
            None => true,
            Some(h) if self.hi_closed => r <= h,
            Some(h) => r < h,
        };
        above && below
    }
}

/// The exact set `{r > 0 : A_r f(x) = 𝓜f(x)}` as sorted disjoint pieces.
pub fn e_set(f: &StepFn, x: &Rat) -> Vec<RadiusInterval> {
    let profile = build_profile(f, x);
    let max = maximal(f, x);
    let mut parts = Vec::new();
    for (i, seg) in profile.segments.iter().enumerate() {
        let (lo, hi) = profile.segment_range(i);
        if seg.trend() == Trend::Constant && &seg.beta / two() == max {
            parts.push(RadiusInterval {
                lo_closed: lo.is_positive(),
                hi_closed: hi.is_some(),
                lo,
                hi,
            });
            continue;
        }
        if lo.is_positive() && seg.average(&lo) == max {
            parts.push(RadiusInterval::point(lo));
        }
        if let Some(h) = hi {
            if seg.average(&h) == max {
                parts.push(RadiusInterval::point(h));
            }
        }
    }
    merge_intervals(parts)
}

fn merge_intervals(mut parts: Vec<RadiusInterval>) -> Vec<RadiusInterval> {
    parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    let mut out: Vec<RadiusInterval> = Vec::new();
    for p in parts {
        if let Some(cur) = out.last_mut() {
            let touches = match &cur.hi {
                None => true,
                Some(h) => p.lo < *h || (p.lo == *h && (cur.hi_closed || p.lo_closed)),
            };
            if touches {
                let extend = match (&cur.hi, &p.hi) {
                    (None, _) => false,
                    (_, None) => true,
                    (Some(a), Some(b)) => b > a || (b == a && p.hi_closed && !cur.hi_closed),
                };
                if extend {
                    cur.hi = p.hi;
                    cur.hi_closed = p.hi_closed;
                }
                if p.lo == cur.lo {
                    cur.lo_closed |= p.lo_closed;
                }
                continue;
            }
        }
        out.push(p);
    }
    out
}

/// Convenience for callers that already hold a profile: the maximum over
/// the local limit and every cut average.
pub fn profile_maximum(p: &Profile) -> Rat {
    p.cut_averages()
        .into_iter()
        .fold(p.local_limit(), |m, a| if a > m { a } else { m })
}
