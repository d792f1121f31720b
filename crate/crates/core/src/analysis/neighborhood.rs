//! Searches near a certified discontinuity `b` of `𝓜f`: points with
//! `𝒯f = 0`, non-Lebesgue points, and sequences with large `𝓜f` whose
//! frequencies must go to 0.

use num_traits::Zero;

use super::lebesgue::{certify, DiscontinuityCertificate};
use super::AnalysisError;
use crate::freq::frequency;
use crate::rat::{int, pow2, Rat};
use crate::sample::strictly_between;
use crate::stepfn::StepFn;

/// Deepest dyadic level probed by the zero-frequency search.
const SEARCH_DEPTH: i32 = 64;

/// Result of a search at one radius; `witness` is `None` when nothing was
/// found, which callers treat as a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusWitness {
    pub radius: Rat,
    pub witness: Option<Rat>,
}

fn require_certified(f: &StepFn, b: &Rat) -> Result<DiscontinuityCertificate, AnalysisError> {
    certify(f, b).ok_or_else(|| AnalysisError::NotCertified(b.clone()))
}

/// For each radius `r`, a point `y ∈ (b − r, b + r)` with `𝒯f(y) = 0`.
///
/// Candidates are `b − r/2^i` then `b + r/2^i` for `i = 1, 2, …`: a dyadic
/// sub-grid accumulating at `b`, which reaches into the adjacent piece on
/// the high side however narrow it is.
pub fn neighborhood_check_thm5(
    f: &StepFn,
    b: &Rat,
    radii: &[Rat],
) -> Result<Vec<RadiusWitness>, AnalysisError> {
    require_certified(f, b)?;
    Ok(radii
        .iter()
        .map(|r| {
            let witness = (1..=SEARCH_DEPTH)
                .flat_map(|i| {
                    let off = r * pow2(-i);
                    [b - &off, b + off]
                })
                .find(|y| frequency(f, y).frequency.is_zero());
            RadiusWitness {
                radius: r.clone(),
                witness,
            }
        })
        .collect())
}

/// For each radius, the jump breakpoint of `f` in `(b − r, b + r)` closest
/// to `b` (ties to the left). A step function has finitely many
/// non-Lebesgue points, so shrinking radii force `b` itself to be one.
pub fn neighborhood_check_thm6(
    f: &StepFn,
    b: &Rat,
    radii: &[Rat],
) -> Result<Vec<RadiusWitness>, AnalysisError> {
    require_certified(f, b)?;
    let jumps = f.jump_points();
    Ok(radii
        .iter()
        .map(|r| {
            let (lo, hi) = (b - r, b + r);
            let witness = jumps
                .iter()
                .filter(|j| strictly_between(j, &lo, &hi))
                .min_by(|a, c| {
                    let (da, dc) = (num_traits::abs(*a - b), num_traits::abs(*c - b));
                    da.cmp(&dc).then(a.cmp(c))
                })
                .cloned();
            RadiusWitness {
                radius: r.clone(),
                witness,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3Point {
    pub x: Rat,
    pub maximal: Rat,
    pub frequency: Rat,
}

/// Half the certified jump at `b`.
pub fn lemma3_default_eps(cert: &DiscontinuityCertificate) -> Rat {
    &cert.jump_lower_bound / int(2)
}

/// `x_n = b ± 2^{−n}` on the high side of the certified discontinuity `b`,
/// `n = 1..=n_max`, keeping the points with `𝓜f(x_n) ≥ 𝓜f(b) + eps`.
///
/// Fails when the closest point `x_{n_max}` does not meet the bound: the
/// precondition cannot then be verified at this `eps`.
pub fn lemma3_check(
    f: &StepFn,
    b: &Rat,
    eps: &Rat,
    n_max: u32,
) -> Result<Vec<Lemma3Point>, AnalysisError> {
    let cert = require_certified(f, b)?;
    let sign = int(cert.high_side.sign());
    let points: Vec<Rat> = (1..=n_max as i32).map(|n| b + &sign * pow2(-n)).collect();
    let kept = lemma3_check_points(f, b, eps, &points)?;
    if kept.last().map(|p| &p.x) != points.last() {
        return Err(AnalysisError::Precondition(format!(
            "M f(x) >= M f(b) + {eps} fails at the closest point"
        )));
    }
    Ok(kept)
}

/// Same as [`lemma3_check`] for an explicit sequence, which need not
/// approach a breakpoint (accumulation points of infinitely many pieces
/// only exist as limits of truncations). Points failing the bound are
/// dropped; an empty result is an error.
pub fn lemma3_check_points(
    f: &StepFn,
    b: &Rat,
    eps: &Rat,
    points: &[Rat],
) -> Result<Vec<Lemma3Point>, AnalysisError> {
    if eps <= &Rat::zero() {
        return Err(super::invalid("eps must be positive"));
    }
    let target = frequency(f, b).maximal + eps;
    let kept: Vec<Lemma3Point> = points
        .iter()
        .filter_map(|x| {
            let r = frequency(f, x);
            (r.maximal >= target).then(|| Lemma3Point {
                x: x.clone(),
                maximal: r.maximal,
                frequency: r.frequency,
            })
        })
        .collect();
    if kept.is_empty() {
        return Err(AnalysisError::Precondition(format!(
            "no point reaches M f(b) + {eps}"
        )));
    }
    Ok(kept)
}

/// `min_{m ≥ n} 𝒯f(x_m)` for each `n`.
pub fn suffix_minima(points: &[Lemma3Point]) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(points.len());
    for p in points.iter().rev() {
        let m = match out.last() {
            Some(prev) if prev < &p.frequency => prev.clone(),
            _ => p.frequency.clone(),
        };
        out.push(m);
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::stepfn::parse_stepfn;

    fn f2() -> StepFn {
        StepFn::indicator(int(-1), int(1), int(1)).unwrap()
    }

    fn f7() -> StepFn {
        parse_stepfn(b"-1 0 1\n1 2 100").unwrap()
    }

    #[test]
    fn thm5_examples() {
        let radii = [rat(1, 2), rat(1, 8), rat(1, 64)];
        for w in neighborhood_check_thm5(&f2(), &int(1), &radii).unwrap() {
            assert_eq!(w.witness, Some(int(1) - &w.radius / int(2)));
        }
        for w in neighborhood_check_thm5(&f7(), &int(1), &radii[..2]).unwrap() {
            let y = w.witness.unwrap();
            assert!(y > int(1) && y < int(1) + &w.radius);
        }
        for w in neighborhood_check_thm5(&f7(), &int(2), &radii[..2]).unwrap() {
            let y = w.witness.unwrap();
            assert!(y < int(2) && y > int(2) - &w.radius);
        }
        assert_eq!(
            neighborhood_check_thm5(&f7(), &int(0), &radii),
            Err(AnalysisError::NotCertified(int(0)))
        );
    }

    #[test]
    fn thm6_examples() {
        let radii = [rat(1, 2), rat(1, 1 << 20)];
        for w in neighborhood_check_thm6(&f2(), &int(1), &radii).unwrap() {
            assert_eq!(w.witness, Some(int(1)));
        }
        for w in neighborhood_check_thm6(&f7(), &int(2), &radii).unwrap() {
            assert_eq!(w.witness, Some(int(2)));
        }
        assert!(neighborhood_check_thm6(&StepFn::zero(), &int(0), &radii).is_err());
    }

    #[test]
    fn lemma3_examples() {
        let pts = lemma3_check(&f2(), &int(1), &rat(1, 4), 20).unwrap();
        assert_eq!(pts.len(), 20);
        assert_eq!(pts[0].x, rat(1, 2));
        assert!(pts.iter().all(|p| p.frequency.is_zero()));
        let pts = lemma3_check(&f7(), &int(1), &int(10), 20).unwrap();
        assert_eq!(pts[0].x, rat(3, 2));
        assert!(pts.iter().all(|p| p.frequency.is_zero()));
        assert!(lemma3_check(&f7(), &int(1), &int(60), 20).is_err());
    }

    #[test]
    fn suffix_minima_are_monotone() {
        let mk = |f: i64| Lemma3Point {
            x: int(0),
            maximal: int(0),
            frequency: int(f),
        };
        let pts = [mk(3), mk(1), mk(4), mk(2)];
        assert_eq!(suffix_minima(&pts), vec![int(1), int(1), int(2), int(2)]);
    }
}
