//! Shared generators and brute-force references for the integration tests.

#![allow(dead_code)]

use freqfn::profile::build_profile;
use freqfn::rat::{int, rat};
use freqfn::{Piece, Rat, StepFn};
use num_traits::Zero;
use proptest::prelude::*;

/// Small nonnegative step functions on a lattice `ℤ/q`, possibly with gaps,
/// zero-valued pieces and abutting equal values (which canonicalization
/// must merge).
pub fn stepfn() -> impl Strategy<Value = StepFn> {
    let piece = (0i64..6, 1i64..10, 0i64..12, 1i64..6);
    (
        prop::sample::select(vec![1i64, 2, 3, 4, 7, 8]),
        -24i64..24,
        prop::collection::vec(piece, 0..6),
    )
        .prop_map(|(q, start, raw)| {
            let mut pos = start;
            let mut pieces = Vec::new();
            for (gap, len, num, den) in raw {
                pos += gap;
                pieces.push(Piece::new(rat(pos, q), rat(pos + len, q), rat(num, den)));
                pos += len;
            }
            StepFn::new(pieces).expect("generator builds disjoint nonnegative pieces")
        })
}

pub fn nonzero_stepfn() -> impl Strategy<Value = StepFn> {
    stepfn().prop_filter("not a.e. zero", |f| !f.is_zero())
}

/// Rationals in `[-lim, lim]` with denominator below `max_den`.
pub fn small_rat(lim: i64, max_den: i64) -> impl Strategy<Value = Rat> {
    (1i64..max_den).prop_flat_map(move |d| (-lim * d..=lim * d).prop_map(move |n| rat(n, d)))
}

/// A center near the interesting part of `f`: a generic rational, a
/// breakpoint, or a breakpoint shifted by a tiny dyadic amount.
pub fn center_for(f: &StepFn) -> BoxedStrategy<Rat> {
    let bps = f.breakpoints();
    let generic = small_rat(8, 24);
    if bps.is_empty() {
        return generic.boxed();
    }
    let on = prop::sample::select(bps.clone());
    let near = (prop::sample::select(bps), 1i32..30, any::<bool>()).prop_map(|(b, e, up)| {
        if up {
            &b + freqfn::rat::pow2(-e)
        } else {
            &b - freqfn::rat::pow2(-e)
        }
    });
    prop_oneof![2 => generic, 1 => on, 1 => near].boxed()
}

/// A function together with a center suited to it.
pub fn fn_and_center() -> impl Strategy<Value = (StepFn, Rat)> {
    stepfn().prop_flat_map(|f| {
        let x = center_for(&f);
        (Just(f), x)
    })
}

/// `(𝓜f(x), 𝒯f(x))` by evaluating every cut average exactly from the
/// profile, with no bracketing or early exit.
pub fn naive_maximal_frequency(f: &StepFn, x: &Rat) -> (Rat, Rat) {
    if f.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let p = build_profile(f, x);
    let c0 = p.local_limit();
    let avgs = p.cut_averages();
    let best = avgs
        .iter()
        .fold(c0.clone(), |m, a| if a > &m { a.clone() } else { m });
    if best == c0 {
        return (best, Rat::zero());
    }
    let at = avgs.iter().position(|a| a == &best).unwrap();
    (best, p.cuts[at].clone())
}

/// `A_r f(x)` straight from the definition.
pub fn average(f: &StepFn, x: &Rat, r: &Rat) -> Rat {
    f.integrate(&(x - r), &(x + r)).unwrap() / (r * int(2))
}
