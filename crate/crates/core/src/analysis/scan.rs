//! Grid scans of `𝓜f` and `𝒯f` over `[−N, N]`.
//!
//! The grid is every multiple of `step` in `[−N, N]`, so `0` is always on
//! it and the grid is symmetric. Measures are `step × (qualifying count)`.
//! Points are evaluated in parallel and reassembled in grid order, so a
//! report never depends on scheduling.

use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{invalid, AnalysisError};
use crate::freq::frequency;
use crate::rat::{int, Rat};
use crate::stepfn::StepFn;

/// Refuse grids larger than this many points.
pub const MAX_GRID_POINTS: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanEntry {
    pub x: Rat,
    pub maximal: Rat,
    pub frequency: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub domain_bound: Rat,
    pub grid_step: Rat,
    /// Sorted by `x`.
    pub entries: Vec<ScanEntry>,
    pub aggregates: BTreeMap<String, Rat>,
}

impl ScanReport {
    pub fn aggregate(&self, key: &str) -> Option<&Rat> {
        self.aggregates.get(key)
    }

    fn set(&mut self, key: &str, value: Rat) {
        self.aggregates.insert(key.to_string(), value);
    }
}

/// Every multiple of `step` in `[−n, n]`, ascending.
pub fn grid_points(n: &Rat, step: &Rat) -> Result<Vec<Rat>, AnalysisError> {
    if !n.is_positive() {
        return Err(invalid("N must be positive"));
    }
    if !step.is_positive() {
        return Err(invalid("step must be positive"));
    }
    let half = (n / step).floor().to_integer();
    let count = half
        .to_u64()
        .map(|h| 2 * h + 1)
        .filter(|c| *c <= MAX_GRID_POINTS);
    if count.is_none() {
        return Err(invalid(format!("grid exceeds {MAX_GRID_POINTS} points")));
    }
    let mut out = Vec::with_capacity(count.unwrap_or(0) as usize);
    let mut i = -half.clone();
    while i <= half {
        out.push(Rat::from_integer(i.clone()) * step);
        i += 1;
    }
    Ok(out)
}

fn evaluate(f: &StepFn, xs: Vec<Rat>) -> Vec<ScanEntry> {
    xs.into_par_iter()
        .map(|x| {
            let r = frequency(f, &x);
            ScanEntry {
                x,
                maximal: r.maximal,
                frequency: r.frequency,
            }
        })
        .collect()
}

/// `𝓜f` and `𝒯f` at every grid point.
pub fn scan(f: &StepFn, n: &Rat, step: &Rat) -> Result<ScanReport, AnalysisError> {
    let xs = grid_points(n, step)?;
    Ok(ScanReport {
        domain_bound: n.clone(),
        grid_step: step.clone(),
        entries: evaluate(f, xs),
        aggregates: BTreeMap::new(),
    })
}

fn count_where(report: &ScanReport, pred: impl Fn(&ScanEntry) -> bool) -> Rat {
    Rat::from_integer(BigInt::from(
        report.entries.iter().filter(|e| pred(e)).count(),
    ))
}

fn check_c(c: &Rat) -> Result<(), AnalysisError> {
    if c <= &int(1) {
        return Err(invalid("C must exceed 1"));
    }
    Ok(())
}

/// Points with `|x|/(2C) ≤ 𝒯f(x) ≤ |x|/C`. Aggregates: `band_count` and
/// `band_extent`, the largest `|x|` in the band (0 when the band is empty).
pub fn band_extent(f: &StepFn, c: &Rat, n: &Rat, step: &Rat) -> Result<ScanReport, AnalysisError> {
    check_c(c)?;
    let mut report = scan(f, n, step)?;
    let in_band = |e: &ScanEntry| {
        let ax = e.x.abs();
        let upper = &ax / c;
        let lower = &upper / int(2);
        e.frequency >= lower && e.frequency <= upper
    };
    let count = count_where(&report, in_band);
    let extent = report
        .entries
        .iter()
        .filter(|e| in_band(e))
        .map(|e| e.x.abs())
        .max()
        .unwrap_or_else(Rat::zero);
    report.set("band_count", count);
    report.set("band_extent", extent);
    Ok(report)
}

/// Grid estimate of `|{|x| ≤ N : 𝒯f(x) ≤ |x|/C}|`. Aggregates: `count`,
/// `measure` and `density = measure/N`.
pub fn level_density(
    f: &StepFn,
    c: &Rat,
    n: &Rat,
    step: &Rat,
) -> Result<ScanReport, AnalysisError> {
    check_c(c)?;
    let mut report = scan(f, n, step)?;
    let count = count_where(&report, |e| e.frequency <= e.x.abs() / c);
    let measure = &count * step;
    report.set("density", &measure / n);
    report.set("measure", measure);
    report.set("count", count);
    Ok(report)
}

pub fn level_density_series(
    f: &StepFn,
    c: &Rat,
    ns: &[Rat],
    step: &Rat,
) -> Result<Vec<ScanReport>, AnalysisError> {
    ns.iter().map(|n| level_density(f, c, n, step)).collect()
}

/// Whether each density is at most the previous one plus `step/N_prev`
/// (one grid step of measure at the previous scale).
pub fn densities_non_increasing(series: &[ScanReport]) -> bool {
    series.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        let slack = &a.grid_step / &a.domain_bound;
        b.aggregates["density"] <= &a.aggregates["density"] + slack
    })
}

/// Grid estimate of `|{|x| ≤ N : 𝒯f(x) = 0}|`. Aggregates: `zero_count`,
/// `zero_measure` and `zero_fraction = zero_measure/(2N)`.
pub fn zero_set_fraction(f: &StepFn, n: &Rat, step: &Rat) -> Result<ScanReport, AnalysisError> {
    let mut report = scan(f, n, step)?;
    let count = count_where(&report, |e| e.frequency.is_zero());
    let measure = &count * step;
    report.set("zero_fraction", &measure / (n * int(2)));
    report.set("zero_measure", measure);
    report.set("zero_count", count);
    Ok(report)
}

/// `𝒯f` at the multiples of `step` strictly inside the pieces with index
/// in `pieces`. Aggregates: `interior_count`, `interior_zero_count`,
/// `interior_zero_fraction`, and `logged_count`/`logged_fraction` for
/// points where `𝒯f ≠ 0`.
///
/// For sparse functions on huge domains this measures the zero-set
/// mechanism where it lives without paying for the empty space between
/// pieces. `domain_bound` is the largest endpoint magnitude scanned.
pub fn interior_zero_scan(
    f: &StepFn,
    step: &Rat,
    pieces: Range<usize>,
) -> Result<ScanReport, AnalysisError> {
    if !step.is_positive() {
        return Err(invalid("step must be positive"));
    }
    let selected = f
        .pieces()
        .get(pieces)
        .ok_or_else(|| invalid("piece range out of bounds"))?;
    let mut xs = Vec::new();
    let mut bound = Rat::zero();
    for p in selected {
        let mut i: BigInt = (&p.left / step).floor().to_integer() + 1;
        loop {
            let x = Rat::from_integer(i.clone()) * step;
            if x >= p.right {
                break;
            }
            xs.push(x);
            i += 1;
        }
        for e in [p.left.abs(), p.right.abs()] {
            if e > bound {
                bound = e;
            }
        }
    }
    let mut report = ScanReport {
        domain_bound: bound,
        grid_step: step.clone(),
        entries: evaluate(f, xs),
        aggregates: BTreeMap::new(),
    };
    let total = int(report.entries.len() as i64);
    let zeros = count_where(&report, |e| e.frequency.is_zero());
    let logged = &total - &zeros;
    if !total.is_zero() {
        report.set("interior_zero_fraction", &zeros / &total);
        report.set("logged_fraction", &logged / &total);
    }
    report.set("interior_count", total);
    report.set("interior_zero_count", zeros);
    report.set("logged_count", logged);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakTypeReport {
    /// `step × #{grid x : 𝓜f(x) > λ}`.
    pub estimated_measure: Rat,
    /// `3‖f‖₁/λ + 2·step·crossings`.
    pub bound: Rat,
    /// Adjacent grid pairs on which `𝓜f > λ` switches.
    pub crossings: u64,
    pub holds: bool,
}

pub fn weak_type_check(
    f: &StepFn,
    lambda: &Rat,
    n: &Rat,
    step: &Rat,
) -> Result<WeakTypeReport, AnalysisError> {
    if !lambda.is_positive() {
        return Err(invalid("lambda must be positive"));
    }
    let report = scan(f, n, step)?;
    let above: Vec<bool> = report.entries.iter().map(|e| &e.maximal > lambda).collect();
    let crossings = above.windows(2).filter(|w| w[0] != w[1]).count() as u64;
    let estimated_measure = int(above.iter().filter(|a| **a).count() as i64) * step;
    let bound = int(3) * f.mass() / lambda + int(2) * step * int(crossings as i64);
    Ok(WeakTypeReport {
        holds: estimated_measure <= bound,
        estimated_measure,
        bound,
        crossings,
    })
}
