//! Deterministic rational sampling for the randomized check suites.
//!
//! Everything is driven by a seeded ChaCha8 stream, so a `(seed, count)`
//! pair always reproduces the same points on every platform.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rat::{int, pow2, Rat};
use crate::stepfn::StepFn;

pub struct RatSampler {
    rng: ChaCha8Rng,
}

impl RatSampler {
    pub fn new(seed: u64) -> Self {
        RatSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A rational in `[lo, hi]` whose denominator is drawn uniformly from
    /// `1..=max_den`.
    ///
    /// Panics if `lo > hi` or the scaled bounds leave the `i128` range.
    pub fn uniform(&mut self, lo: &Rat, hi: &Rat, max_den: u32) -> Rat {
        assert!(lo <= hi, "empty sampling range");
        let q: i64 = self.rng.gen_range(1..=max_den.max(1) as i64);
        let qr = int(q);
        let a = (lo * &qr)
            .ceil()
            .to_integer()
            .to_i128()
            .expect("range fits i128");
        let b = (hi * &qr)
            .floor()
            .to_integer()
            .to_i128()
            .expect("range fits i128");
        if a > b {
            // No multiple of 1/q inside; fall back to the midpoint.
            return (lo + hi) / int(2);
        }
        let p = self.rng.gen_range(a..=b);
        Rat::new(BigInt::from(p), BigInt::from(q))
    }

    /// `b ± 2^{−e}` with `e` uniform in `1..=max_exp`.
    pub fn near(&mut self, b: &Rat, max_exp: u32) -> Rat {
        let e = self.rng.gen_range(1..=max_exp.max(1)) as i32;
        if self.rng.gen_bool(0.5) {
            b + pow2(-e)
        } else {
            b - pow2(-e)
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> Option<&'a T> {
        items.choose(&mut self.rng)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

/// The interval the suites draw centers from: the support widened by a
/// quarter of its length on each side (at least 1), or `[−1, 1]` for the
/// zero function.
pub fn sampling_window(f: &StepFn) -> (Rat, Rat) {
    match f.support() {
        None => (int(-1), int(1)),
        Some((a, b)) => {
            let quarter = (&b - &a) / int(4);
            let w = if quarter > int(1) { quarter } else { int(1) };
            (a - &w, b + w)
        }
    }
}

/// `n` centers for `f`: mostly uniform over [`sampling_window`], with a
/// share placed exactly on or dyadically close to breakpoints, where the
/// interesting behaviour lives.
pub fn sample_points(f: &StepFn, n: usize, seed: u64) -> Vec<Rat> {
    let mut s = RatSampler::new(seed);
    let (lo, hi) = sampling_window(f);
    let bps = f.breakpoints();
    (0..n)
        .map(|_| {
            let roll = s.below(16);
            match s.pick(&bps) {
                Some(b) if roll == 0 => b.clone(),
                Some(b) if roll < 5 => {
                    let b = b.clone();
                    s.near(&b, 24)
                }
                _ => s.uniform(&lo, &hi, 64),
            }
        })
        .collect()
}

/// Is `x` strictly between `a` and `b` (in either order)?
pub fn strictly_between(x: &Rat, a: &Rat, b: &Rat) -> bool {
    let (l, r) = if a <= b { (a, b) } else { (b, a) };
    x > l && x < r
}
