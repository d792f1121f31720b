//! Properties of the maximal and frequency functions, checked against a
//! brute-force reference and the radius-grid oracle.

mod common;

use common::{
    average, center_for, fn_and_center, naive_maximal_frequency, nonzero_stepfn, small_rat,
};
use freqfn::oracle::{default_r_max, oracle_eval};
use freqfn::rat::{int, pow2, rat};
use freqfn::{aux_frequency, build_profile, e_set, frequency, maximal, Rat, Status, StepFn};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn nonzero_fn_and_center() -> impl Strategy<Value = (StepFn, Rat)> {
    nonzero_stepfn().prop_flat_map(|f| {
        let x = center_for(&f);
        (Just(f), x)
    })
}

proptest! {
    #[test]
    fn agrees_with_all_cuts_reference((f, x) in fn_and_center()) {
        let r = frequency(&f, &x);
        let (m, t) = naive_maximal_frequency(&f, &x);
        prop_assert_eq!(&r.maximal, &m);
        prop_assert_eq!(&r.frequency, &t);
        let p = build_profile(&f, &x);
        let avgs = p.cut_averages();
        let expected: Vec<Rat> = if f.is_zero() {
            Vec::new()
        } else {
            p.cuts.iter().zip(&avgs).filter(|(_, a)| **a == m).map(|(d, _)| d.clone()).collect()
        };
        prop_assert_eq!(&r.argmax_cuts, &expected);
        prop_assert!(r.maximal >= r.local_limit);
        prop_assert!(avgs.iter().all(|a| a <= &r.maximal));
    }

    #[test]
    fn status_invariants((f, x) in fn_and_center()) {
        let r = frequency(&f, &x);
        match &r.status {
            Status::ZeroFunction => {
                prop_assert!(f.is_zero());
                prop_assert!(r.maximal.is_zero() && r.frequency.is_zero());
            }
            Status::ZeroByLocalLimit => {
                prop_assert!(r.frequency.is_zero());
                prop_assert_eq!(&r.local_limit, &r.maximal);
            }
            Status::AttainedAt(w) => {
                prop_assert!(w.is_positive());
                prop_assert_eq!(w, &r.frequency);
                prop_assert!(r.local_limit < r.maximal);
            }
        }
    }

    /// A positive frequency is itself a maximizing radius.
    #[test]
    fn positive_frequency_is_attained((f, x) in fn_and_center()) {
        let r = frequency(&f, &x);
        if r.frequency.is_positive() {
            prop_assert_eq!(average(&f, &x, &r.frequency), r.maximal.clone());
            prop_assert_eq!(build_profile(&f, &x).eval_average(&r.frequency).unwrap(), r.maximal);
        }
    }

    /// Zero frequency of a nonzero function comes from the small-radius limit.
    #[test]
    fn zero_frequency_means_local_limit((f, x) in nonzero_fn_and_center()) {
        let r = frequency(&f, &x);
        if r.frequency.is_zero() {
            prop_assert_eq!(&r.local_limit, &r.maximal);
            let p = build_profile(&f, &x);
            for k in 1..=8 {
                let rn = &p.cuts[0] * pow2(-k);
                prop_assert_eq!(average(&f, &x, &rn), r.maximal.clone());
            }
        }
    }

    #[test]
    fn no_radius_beats_the_maximum((f, x) in fn_and_center(), probes in prop::collection::vec((1i64..400, 1i64..17), 1..12)) {
        let m = maximal(&f, &x);
        for (n, d) in probes {
            prop_assert!(average(&f, &x, &rat(n, d)) <= m);
        }
    }

    #[test]
    fn scale_invariance((f, x) in fn_and_center(), c in (1i64..50, 1i64..13).prop_map(|(n, d)| rat(n, d))) {
        let base = frequency(&f, &x);
        let scaled = frequency(&f.scale(&c).unwrap(), &x);
        prop_assert_eq!(scaled.maximal, &base.maximal * &c);
        prop_assert_eq!(scaled.frequency, base.frequency);
    }

    #[test]
    fn translation_and_reflection((f, x) in fn_and_center(), t in small_rat(20, 9)) {
        let base = frequency(&f, &x);
        let moved = frequency(&f.translate(&t), &(&x + &t));
        prop_assert_eq!(&moved.maximal, &base.maximal);
        prop_assert_eq!(&moved.frequency, &base.frequency);
        let mirrored = frequency(&f.reflect(), &-&x);
        prop_assert_eq!(&mirrored.maximal, &base.maximal);
        prop_assert_eq!(&mirrored.frequency, &base.frequency);
    }

    #[test]
    fn maximal_lower_bound((f, x) in nonzero_fn_and_center()) {
        let (lo, hi) = f.support().unwrap();
        let reach = if lo.abs() > hi.abs() { lo.abs() } else { hi.abs() };
        let bound = f.mass() / (int(2) * (x.abs() + reach));
        prop_assert!(maximal(&f, &x) >= bound);
    }

    #[test]
    fn aux_chain_and_limit((f, x) in fn_and_center(), l in 1u32..12) {
        let t = frequency(&f, &x).frequency;
        let chain: Vec<Rat> = (1..=24).map(|k| aux_frequency(&f, &x, k, l)).collect();
        prop_assert!(chain.iter().all(|v| v >= &pow2(-(l as i32)) || v.is_zero()));
        if chain.iter().all(|v| !v.is_zero()) {
            prop_assert!(chain.windows(2).all(|w| w[0] <= w[1]));
        }
        if t >= pow2(-(l as i32)) {
            prop_assert!(chain.iter().all(|v| v <= &t));
        }
        let deep = aux_frequency(&f, &x, 64, 64);
        prop_assert!((deep - &t).abs() <= pow2(-24), "aux(64,64) far from frequency {}", t);
    }

    #[test]
    fn e_set_is_consistent((f, x) in fn_and_center()) {
        let r = frequency(&f, &x);
        let set = e_set(&f, &x);
        prop_assert!(!set.is_empty());
        prop_assert_eq!(&set[0].lo, &r.frequency);
        for iv in &set {
            let mut probes = vec![];
            if iv.lo_closed {
                probes.push(iv.lo.clone());
            }
            match &iv.hi {
                Some(hi) => {
                    probes.push((&iv.lo + hi) / int(2));
                    if iv.hi_closed {
                        probes.push(hi.clone());
                    }
                }
                None => probes.push(&iv.lo + int(3)),
            }
            for p in probes.into_iter().filter(|p| p.is_positive()) {
                prop_assert!(iv.contains(&p));
                prop_assert_eq!(average(&f, &x, &p), r.maximal.clone());
            }
        }
        for w in &r.argmax_cuts {
            prop_assert!(set.iter().any(|iv| iv.contains(w)));
        }
    }

    #[test]
    fn oracle_brackets_the_exact_maximum((f, x) in fn_and_center(), g in 2u64..300) {
        let o = oracle_eval(&f, &x, &default_r_max(&f, &x), g).unwrap();
        let m = maximal(&f, &x);
        prop_assert!(o.approx_maximal <= m);
        prop_assert!(m <= &o.approx_maximal + &o.error_bound);
        prop_assert!(!o.error_bound.is_negative());
    }
}

#[test]
fn oracle_refinement_shrinks_the_error() {
    let f = freqfn::parse_stepfn(b"-3 -1 2\n0 1/2 5\n2 7/3 1").unwrap();
    for x in [rat(-5, 2), int(0), rat(7, 4), int(6)] {
        let r_max = default_r_max(&f, &x);
        let coarse = oracle_eval(&f, &x, &r_max, 1 << 8).unwrap();
        let fine = oracle_eval(&f, &x, &r_max, 1 << 10).unwrap();
        assert!(fine.error_bound <= coarse.error_bound, "x = {x}");
        if coarse.error_bound.is_positive() {
            assert!(fine.error_bound < coarse.error_bound, "x = {x}");
        }
        let exact = frequency(&f, &x);
        if exact.argmax_cuts.len() == 1 {
            let step = &r_max / int(1 << 10);
            assert!(
                (&fine.approx_frequency - &exact.frequency).abs() <= step * int(64),
                "x = {x}"
            );
        }
    }
}

#[test]
fn every_piece_count_matches_reference_on_dense_centers() {
    let f = freqfn::parse_stepfn(b"-7/2 -3 3\n-1 0 1\n1/3 1 7/2\n4 9 1/4").unwrap();
    let mut x = int(-12);
    while x <= int(12) {
        let r = frequency(&f, &x);
        let (m, t) = naive_maximal_frequency(&f, &x);
        assert_eq!((r.maximal, r.frequency), (m, t), "x = {x}");
        x += rat(1, 12);
    }
}
