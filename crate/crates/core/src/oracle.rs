//! Brute-force reference values for `𝓜f(x)` and `𝒯f(x)`.
//!
//! The oracle samples `A_r f(x)` on the radius grid `r_j = j·r_max/G` and
//! knows nothing about profiles or cut radii. It walks the window outward
//! one grid step at a time, adding the mass of the two new slivers, all in
//! integer units so that no reduction happens inside the loop.
//!
//! Between grid radii the average cannot exceed what the slivers allow:
//! for `r ∈ [r_j, r_{j+1}]`,
//!
//! ```text
//! A_r ≤ (I_j + (s_L + s_R)(r − r_j)) / (2r)
//! ```
//!
//! where `I_j` is the window integral at `r_j` and `s_L`, `s_R` are the
//! largest values of `f` on the left and right slivers. The right-hand side
//! is monotone in `r`, so its maximum sits at an endpoint. Past `r_max`,
//! `A_r ≤ ‖f‖₁/(2 r_max)`. The largest of these bounds minus the grid
//! maximum is the certified `error_bound`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rat::{common_denominator, int, Rat};
use crate::stepfn::StepFn;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("r_max must be positive")]
    NonPositiveRadius,
    #[error("grid_count must be at least 2")]
    GridTooSmall,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Largest of `c₀(x)` and the grid averages; never above `𝓜f(x)`.
    pub approx_maximal: Rat,
    /// 0 when `c₀(x)` is within `error_bound` of `approx_maximal`, else the
    /// least grid radius that is.
    pub approx_frequency: Rat,
    pub r_max: Rat,
    pub grid_count: u64,
    /// `𝓜f(x) ≤ approx_maximal + error_bound`.
    pub error_bound: Rat,
}

/// Twice the largest distance from `x` to a breakpoint, and at least 1.
pub fn default_r_max(f: &StepFn, x: &Rat) -> Rat {
    let far = f
        .support()
        .map(|(a, b)| {
            let (da, db) = ((x - a).abs(), (b - x).abs());
            if da > db {
                da
            } else {
                db
            }
        })
        .unwrap_or_else(Rat::zero);
    let r = far * int(2);
    if r < int(1) {
        int(1)
    } else {
        r
    }
}

/// One-directional walk over consecutive slivers `[pos, pos + step]`.
struct Sweep<'a> {
    lefts: &'a [BigInt],
    rights: &'a [BigInt],
    weights: &'a [BigInt],
    idx: usize,
    pos: BigInt,
}

impl Sweep<'_> {
    /// Integral and supremum of the weights over the next sliver.
    fn advance(&mut self, step: &BigInt) -> (BigInt, BigInt) {
        let end = &self.pos + step;
        let mut mass = BigInt::zero();
        let mut sup = BigInt::zero();
        while self.idx < self.lefts.len() && self.lefts[self.idx] < end {
            let i = self.idx;
            let a = if self.lefts[i] > self.pos {
                &self.lefts[i]
            } else {
                &self.pos
            };
            let b = if self.rights[i] < end {
                &self.rights[i]
            } else {
                &end
            };
            if b > a {
                mass += &self.weights[i] * (b - a);
                if self.weights[i] > sup {
                    sup = self.weights[i].clone();
                }
            }
            if self.rights[i] <= end {
                self.idx += 1;
            } else {
                break;
            }
        }
        self.pos = end;
        (mass, sup)
    }
}

/// `a/b < c/d` for positive denominators.
fn frac_lt(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> bool {
    a * d < c * b
}

pub fn oracle_eval(
    f: &StepFn,
    x: &Rat,
    r_max: &Rat,
    grid_count: u64,
) -> Result<OracleResult, OracleError> {
    if !r_max.is_positive() {
        return Err(OracleError::NonPositiveRadius);
    }
    if grid_count < 2 {
        return Err(OracleError::GridTooSmall);
    }
    let step = r_max / int(grid_count as i64);
    let pieces = f.pieces();

    // Positions in units of 1/unit, values in units of 1/vden.
    let unit = common_denominator(
        pieces
            .iter()
            .flat_map(|p| [&p.left, &p.right])
            .chain([x, &step]),
    );
    let vden = common_denominator(pieces.iter().map(|p| &p.value));
    let lattice = |r: &Rat| r.numer() * (&unit / r.denom());
    let lefts: Vec<BigInt> = pieces.iter().map(|p| lattice(&p.left)).collect();
    let rights: Vec<BigInt> = pieces.iter().map(|p| lattice(&p.right)).collect();
    let weights: Vec<BigInt> = pieces
        .iter()
        .map(|p| p.value.numer() * (&vden / p.value.denom()))
        .collect();
    let center = lattice(x);
    let h = lattice(&step);

    // The left walk runs on the mirrored function.
    let m_lefts: Vec<BigInt> = rights.iter().rev().map(|r| -r).collect();
    let m_rights: Vec<BigInt> = lefts.iter().rev().map(|l| -l).collect();
    let m_weights: Vec<BigInt> = weights.iter().rev().cloned().collect();
    let mut right = Sweep {
        idx: rights.partition_point(|r| r <= &center),
        lefts: &lefts,
        rights: &rights,
        weights: &weights,
        pos: center.clone(),
    };
    let neg_center = -&center;
    let mut left = Sweep {
        idx: m_rights.partition_point(|r| r <= &neg_center),
        lefts: &m_lefts,
        rights: &m_rights,
        weights: &m_weights,
        pos: neg_center,
    };

    // Scores are `2·vden·A`: `S/(jH)` on the grid, `w_L + w_R` for c₀.
    let (c_left, c_right) = f.one_sided(x);
    let c0 = (c_left + c_right) / int(2);
    let c0_score = (&c0 * Rat::from_integer(&vden * 2)).to_integer();
    let one = BigInt::from(1);
    let (mut best_num, mut best_den) = (c0_score.clone(), one.clone());
    let (mut up_num, mut up_den) = (c0_score.clone(), one.clone());
    let mut integrals: Vec<BigInt> = Vec::with_capacity(grid_count as usize);
    let mut s = BigInt::zero();
    for j in 0..grid_count {
        let (ml, sl) = left.advance(&h);
        let (mr, sr) = right.advance(&h);
        let rise = (sl + sr) * &h;
        let next_den = &h * (j + 1);
        // Bound on (r_j, r_{j+1}]; the r_j endpoint is itself a grid value.
        let cand = &s + &rise;
        if frac_lt(&up_num, &up_den, &cand, &next_den) {
            up_num = cand;
            up_den = next_den.clone();
        }
        s += ml + mr;
        if frac_lt(&best_num, &best_den, &s, &next_den) {
            best_num = s.clone();
            best_den = next_den;
        }
        integrals.push(s.clone());
    }
    let tail_den = &h * grid_count;
    if frac_lt(&up_num, &up_den, &s, &tail_den) {
        up_num = s.clone();
        up_den = tail_den;
    }
    if frac_lt(&up_num, &up_den, &best_num, &best_den) {
        up_num = best_num.clone();
        up_den = best_den.clone();
    }

    let scale = &vden * 2;
    let approx = Rat::new(best_num, &best_den * &scale);
    let upper = Rat::new(up_num, &up_den * &scale);
    let error_bound = &upper - &approx;
    let threshold = &approx - &error_bound;
    let approx_frequency = if c0 >= threshold {
        Rat::zero()
    } else {
        let t = &threshold * Rat::from_integer(scale);
        let (tn, td) = (t.numer(), t.denom());
        integrals
            .iter()
            .enumerate()
            .find(|(j, s)| *s * td >= tn * (&h * (*j as u64 + 1)))
            .map(|(j, _)| &step * int(j as i64 + 1))
            .expect("the grid maximum meets its own threshold")
    };
    Ok(OracleResult {
        approx_maximal: approx,
        approx_frequency,
        r_max: r_max.clone(),
        grid_count,
        error_bound,
    })
}
