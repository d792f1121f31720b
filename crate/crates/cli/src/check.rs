//! Sampled and exhaustive invariant suites behind `freqfn check`.
//!
//! Sampled suites draw centers with [`freqfn::sample::sample_points`], so
//! `(seed, samples)` fixes the exact set of points on every platform.

use freqfn::analysis::{
    discontinuities, high_side_samples, neighborhood_check_thm5, neighborhood_check_thm6,
};
use freqfn::oracle::{default_r_max, oracle_eval};
use freqfn::rat::{int, pow2, rat};
use freqfn::sample::sample_points;
use freqfn::{aux_frequency, frequency, Rat, StepFn};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    /// A positive frequency is a maximizing radius.
    Prop1,
    /// Zero frequency of a nonzero function means `c₀ = 𝓜f`.
    Prop2,
    /// Scaling, translation and reflection leave `𝒯f` unchanged.
    Equivariance,
    /// Auxiliary approximants increase in `k` and converge to `𝒯f`.
    Aux,
    /// The radius-grid oracle brackets the exact maximum.
    Oracle,
    /// Every certificate sits on a jump and samples confirm the drop.
    Discont,
    /// Zero-frequency points near every certified discontinuity.
    Thm5,
    /// Non-Lebesgue points near every certified discontinuity.
    Thm6,
}

impl SuiteName {
    fn label(self) -> &'static str {
        match self {
            SuiteName::Prop1 => "prop1",
            SuiteName::Prop2 => "prop2",
            SuiteName::Equivariance => "equivariance",
            SuiteName::Aux => "aux",
            SuiteName::Oracle => "oracle",
            SuiteName::Discont => "discont",
            SuiteName::Thm5 => "thm5",
            SuiteName::Thm6 => "thm6",
        }
    }

    fn verb(self) -> &'static str {
        match self {
            SuiteName::Prop1 | SuiteName::Prop2 | SuiteName::Equivariance => "exact",
            SuiteName::Aux => "consistent",
            SuiteName::Oracle => "contained",
            SuiteName::Discont => "sound",
            SuiteName::Thm5 | SuiteName::Thm6 => "found",
        }
    }
}

/// One evaluated case: the point (or certificate) and an optional
/// description of what went wrong.
pub struct Case {
    pub at: Rat,
    pub failure: Option<String>,
}

pub struct SuiteReport {
    pub name: SuiteName,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.failure.is_none()).count()
    }

    pub fn ok(&self) -> bool {
        self.passed() == self.cases.len()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {}/{} {}",
            self.name.label(),
            self.passed(),
            self.cases.len(),
            self.name.verb()
        )
    }
}

fn case(at: &Rat, ok: bool, why: impl FnOnce() -> String) -> Case {
    Case {
        at: at.clone(),
        failure: (!ok).then(why),
    }
}

fn average(f: &StepFn, x: &Rat, r: &Rat) -> Rat {
    f.integrate(&(x - r), &(x + r)).expect("positive radius") / (r * int(2))
}

fn radii() -> Vec<Rat> {
    (1..=20).map(|j| pow2(-j)).collect()
}

pub fn run_suite(name: SuiteName, f: &StepFn, samples: usize, seed: u64) -> SuiteReport {
    let points = || sample_points(f, samples, seed);
    let cases = match name {
        SuiteName::Prop1 => points()
            .iter()
            .map(|x| {
                let r = frequency(f, x);
                let ok = !r.frequency.is_positive() || average(f, x, &r.frequency) == r.maximal;
                case(x, ok, || {
                    format!("A at {} differs from {}", r.frequency, r.maximal)
                })
            })
            .collect(),
        SuiteName::Prop2 => points()
            .iter()
            .map(|x| {
                let r = frequency(f, x);
                let ok = f.is_zero() || !r.frequency.is_zero() || r.local_limit == r.maximal;
                case(x, ok, || {
                    format!("local limit {} below {}", r.local_limit, r.maximal)
                })
            })
            .collect(),
        SuiteName::Equivariance => {
            let (c, t) = (rat(7, 3), rat(-5, 2));
            let scaled = f.scale(&c).expect("positive factor");
            let (moved, mirrored) = (f.translate(&t), f.reflect());
            points()
                .iter()
                .map(|x| {
                    let base = frequency(f, x);
                    let s = frequency(&scaled, x);
                    let m = frequency(&moved, &(x + &t));
                    let r = frequency(&mirrored, &-x);
                    let ok = s.frequency == base.frequency
                        && s.maximal == &base.maximal * &c
                        && (m.maximal, m.frequency)
                            == (base.maximal.clone(), base.frequency.clone())
                        && (r.maximal, r.frequency) == (base.maximal, base.frequency);
                    case(x, ok, || "transformed function disagrees".to_string())
                })
                .collect()
        }
        SuiteName::Aux => points()
            .iter()
            .map(|x| {
                let t = frequency(f, x).frequency;
                let chain: Vec<Rat> = (1..=16).map(|k| aux_frequency(f, x, k, 8)).collect();
                let monotone =
                    chain.contains(&Rat::zero()) || chain.windows(2).all(|w| w[0] <= w[1]);
                let deep = aux_frequency(f, x, 48, 48);
                let close = (&deep - &t).abs() <= pow2(-20);
                case(x, monotone && close, || {
                    format!("chain monotone {monotone}, aux(48,48) = {deep} vs {t}")
                })
            })
            .collect(),
        SuiteName::Oracle => points()
            .iter()
            .map(|x| {
                let m = frequency(f, x).maximal;
                let o = oracle_eval(f, x, &default_r_max(f, x), 1 << 12).expect("valid grid");
                let ok = o.approx_maximal <= m && m <= &o.approx_maximal + &o.error_bound;
                case(x, ok, || {
                    format!("{m} outside [{}, +{}]", o.approx_maximal, o.error_bound)
                })
            })
            .collect(),
        SuiteName::Discont => {
            let jumps = f.jump_points();
            discontinuities(f)
                .iter()
                .map(|cert| {
                    let (_, stays_high) = high_side_samples(f, cert);
                    let on_jump = jumps.contains(&cert.point);
                    case(&cert.point, stays_high && on_jump, || {
                        format!("on jump {on_jump}, samples high {stays_high}")
                    })
                })
                .collect()
        }
        SuiteName::Thm5 => discontinuities(f)
            .iter()
            .map(|cert| {
                let found = neighborhood_check_thm5(f, &cert.point, &radii()).expect("certified");
                let missing = found
                    .iter()
                    .find(|w| w.witness.is_none())
                    .map(|w| w.radius.clone());
                case(&cert.point, missing.is_none(), || {
                    format!("no zero-frequency point at radius {}", missing.unwrap())
                })
            })
            .collect(),
        SuiteName::Thm6 => discontinuities(f)
            .iter()
            .map(|cert| {
                let found = neighborhood_check_thm6(f, &cert.point, &radii()).expect("certified");
                let missing = found
                    .iter()
                    .find(|w| w.witness.is_none())
                    .map(|w| w.radius.clone());
                case(&cert.point, missing.is_none(), || {
                    format!("no jump point at radius {}", missing.unwrap())
                })
            })
            .collect(),
    };
    SuiteReport { name, cases }
}

#[cfg(test)]
mod tests {
    use super::*;
    use freqfn::parse_stepfn;

    #[test]
    fn f7_suites_pass() {
        let f = parse_stepfn(b"-1 0 1\n1 2 100").unwrap();
        for name in [
            SuiteName::Prop1,
            SuiteName::Prop2,
            SuiteName::Equivariance,
            SuiteName::Discont,
            SuiteName::Thm6,
        ] {
            let r = run_suite(name, &f, 40, 7);
            assert!(r.ok(), "{}", r.summary());
        }
        assert_eq!(
            run_suite(SuiteName::Prop1, &f, 40, 7).summary(),
            "prop1: 40/40 exact"
        );
        assert_eq!(
            run_suite(SuiteName::Thm5, &f, 0, 0).summary(),
            "thm5: 2/2 found"
        );
    }
}
