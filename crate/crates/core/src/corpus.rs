//! Generators for the example functions, truncated to finitely many pieces.
//!
//! Infinite sums are cut after their first `levels` terms; every output is
//! an ordinary canonical [`StepFn`] and later computations treat it as the
//! ground truth.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rat::{int, pow2, rat, Rat};
use crate::stepfn::{Piece, StepFn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus id `{0}`")]
    UnknownId(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("{0} has no closed form")]
    NoClosedForm(&'static str),
}

/// Denominator exponent used when rounding the irrational bump positions of
/// the sparse construction.
pub const THM4_DENOM_BITS: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSpec {
    /// The zero function.
    F1,
    /// `χ_[-1,1)`.
    F2,
    /// `1/n²` on `[2ⁿ, 2ⁿ+1)` for `n_min ≤ n ≤ levels`.
    F3 { levels: u32, n_min: u32 },
    /// `(1/k)·χ_[-1,1)`.
    F4 { k: u32 },
    /// `χ_(−1,0)` plus the bumps `(2^{−n+1} − 2^{−n−1}, 2^{−n+1})`, `n ≤ levels`.
    F5 { levels: u32 },
    /// `χ_(−1,0) + 100·χ_(1,2)`.
    F7,
    /// Bumps `(2^{−k} − 2^{−2k−1}, 2^{−k})`, `k ≤ levels`.
    F8 { levels: u32 },
    /// Right halves of `(a_k, a_{k+1})` for `k ≤ levels` plus `χ_(a*, a*+1)`,
    /// with `a* = a_{levels+1}`.
    F9 { levels: u32 },
    /// `1/m′` on `(m″, m″+1)` for `10 ≤ m ≤ m_max`, with
    /// `m′ = m·ln^{1+ε/2} m` and `m″ = m·ln^{1+ε} m`.
    Thm4 { eps: Rat, m_max: u32 },
}

/// Optional parameters as they arrive from a command line.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub levels: Option<u32>,
    pub k: Option<u32>,
    pub n_min: Option<u32>,
    pub eps: Option<Rat>,
    pub m_max: Option<u32>,
}

impl CorpusSpec {
    pub const IDS: [&'static str; 9] = ["f1", "f2", "f3", "f4", "f5", "f7", "f8", "f9", "thm4"];

    /// Builds a spec from an id, filling unspecified parameters with the
    /// defaults used throughout the test suites.
    pub fn from_id(id: &str, p: &Params) -> Result<Self, CorpusError> {
        let spec = match id {
            "f1" => CorpusSpec::F1,
            "f2" => CorpusSpec::F2,
            "f3" => CorpusSpec::F3 {
                levels: p.levels.unwrap_or(16),
                n_min: p.n_min.unwrap_or(1),
            },
            "f4" => CorpusSpec::F4 {
                k: p.k.unwrap_or(1),
            },
            "f5" => CorpusSpec::F5 {
                levels: p.levels.unwrap_or(12),
            },
            "f7" => CorpusSpec::F7,
            "f8" => CorpusSpec::F8 {
                levels: p.levels.unwrap_or(12),
            },
            "f9" => CorpusSpec::F9 {
                levels: p.levels.unwrap_or(8),
            },
            "thm4" => CorpusSpec::Thm4 {
                eps: p.eps.clone().unwrap_or_else(|| rat(1, 2)),
                m_max: p.m_max.unwrap_or(2000),
            },
            other => return Err(CorpusError::UnknownId(other.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn id(&self) -> &'static str {
        match self {
            CorpusSpec::F1 => "f1",
            CorpusSpec::F2 => "f2",
            CorpusSpec::F3 { .. } => "f3",
            CorpusSpec::F4 { .. } => "f4",
            CorpusSpec::F5 { .. } => "f5",
            CorpusSpec::F7 => "f7",
            CorpusSpec::F8 { .. } => "f8",
            CorpusSpec::F9 { .. } => "f9",
            CorpusSpec::Thm4 { .. } => "thm4",
        }
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let bad = |m: &str| Err(CorpusError::InvalidParam(m.to_string()));
        match self {
            CorpusSpec::F3 { levels, n_min } => {
                if *n_min < 1 || levels < n_min {
                    return bad("f3 needs 1 <= n_min <= K");
                }
            }
            CorpusSpec::F4 { k } if *k < 1 => return bad("f4 needs k >= 1"),
            CorpusSpec::F5 { levels } | CorpusSpec::F8 { levels } | CorpusSpec::F9 { levels }
                if *levels < 1 =>
            {
                return bad("truncation level K must be >= 1")
            }
            CorpusSpec::Thm4 { eps, m_max } => {
                if !eps.is_positive() || eps >= &Rat::one() {
                    return bad("thm4 needs 0 < eps < 1");
                }
                if *m_max < 10 {
                    return bad("thm4 needs M_max >= 10");
                }
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::F3 { levels, n_min } if *n_min == 1 => write!(f, "f3(K={levels})"),
            CorpusSpec::F3 { levels, n_min } => write!(f, "f3(K={levels},n_min={n_min})"),
            CorpusSpec::F4 { k } => write!(f, "f4(k={k})"),
            CorpusSpec::F5 { levels } => write!(f, "f5(K={levels})"),
            CorpusSpec::F8 { levels } => write!(f, "f8(K={levels})"),
            CorpusSpec::F9 { levels } => write!(f, "f9(K={levels})"),
            CorpusSpec::Thm4 { eps, m_max } => write!(f, "thm4(eps={eps},M_max={m_max})"),
            other => f.write_str(other.id()),
        }
    }
}

fn piece(left: Rat, right: Rat, value: Rat) -> Piece {
    Piece::new(left, right, value)
}

pub fn generate(spec: &CorpusSpec) -> Result<StepFn, CorpusError> {
    spec.validate()?;
    let pieces = match spec {
        CorpusSpec::F1 => Vec::new(),
        CorpusSpec::F2 => vec![piece(int(-1), int(1), int(1))],
        CorpusSpec::F3 { levels, n_min } => (*n_min..=*levels)
            .map(|n| {
                let start = pow2(n as i32);
                let n = n as i64;
                piece(start.clone(), start + int(1), rat(1, n * n))
            })
            .collect(),
        CorpusSpec::F4 { k } => vec![piece(int(-1), int(1), rat(1, *k as i64))],
        CorpusSpec::F5 { levels } => {
            let mut v = vec![piece(int(-1), int(0), int(1))];
            v.extend((1..=*levels as i32).map(|n| {
                let right = pow2(1 - n);
                piece(&right - pow2(-n - 1), right, int(1))
            }));
            v
        }
        CorpusSpec::F7 => vec![
            piece(int(-1), int(0), int(1)),
            piece(int(1), int(2), int(100)),
        ],
        CorpusSpec::F8 { levels } => (1..=*levels as i32)
            .map(|k| {
                let right = pow2(-k);
                piece(&right - pow2(-2 * k - 1), right, int(1))
            })
            .collect(),
        CorpusSpec::F9 { levels } => {
            let a = f9_sequence(*levels + 1);
            let mut v: Vec<Piece> = (0..=*levels as usize)
                .map(|k| piece(f9_midpoint(&a, k), a[k + 1].clone(), int(1)))
                .collect();
            let limit = a[*levels as usize + 1].clone();
            v.push(piece(limit.clone(), limit + int(1), int(1)));
            v
        }
        CorpusSpec::Thm4 { eps, m_max } => thm4_pieces(eps, *m_max),
    };
    StepFn::new(pieces).map_err(|e| CorpusError::InvalidParam(e.to_string()))
}

/// `a_0 = 0, a_1 = 1, a_{k+1} = a_k + 2^{−k(k+1)/2}`, returned for
/// `k = 0..=last`.
pub fn f9_sequence(last: u32) -> Vec<Rat> {
    let mut a = vec![int(0), int(1)];
    for k in 1..last as i64 {
        let next = &a[k as usize] + pow2(-(k * (k + 1) / 2) as i32);
        a.push(next);
    }
    a.truncate(last as usize + 1);
    a
}

/// `b_k = (a_k + a_{k+1})/2`.
pub fn f9_midpoint(a: &[Rat], k: usize) -> Rat {
    (&a[k] + &a[k + 1]) / int(2)
}

/// Rounds a positive double half-to-even onto the grid `2^{−40}ℤ`.
fn dyadic_round(v: f64) -> Rat {
    let scaled = (v * 2f64.powi(THM4_DENOM_BITS as i32)).round_ties_even();
    let n = BigInt::from_f64(scaled).expect("finite bump position");
    Rat::new(n, BigInt::one() << THM4_DENOM_BITS)
}

/// `(m′, m″)` for one index of the sparse construction, rounded.
pub fn thm4_scales(eps: &Rat, m: u32) -> (Rat, Rat) {
    let e = eps.to_f64().expect("eps in (0,1)");
    let mf = m as f64;
    let ln = mf.ln();
    (
        dyadic_round(mf * ln.powf(1.0 + e / 2.0)),
        dyadic_round(mf * ln.powf(1.0 + e)),
    )
}

fn thm4_pieces(eps: &Rat, m_max: u32) -> Vec<Piece> {
    (10..=m_max)
        .map(|m| {
            let (m1, m2) = thm4_scales(eps, m);
            piece(m2.clone(), m2 + int(1), m1.recip())
        })
        .collect()
}

/// `𝓜f` from the displayed closed forms (f2 and f4 only).
pub fn closed_form_maximal(spec: &CorpusSpec, x: &Rat) -> Result<Rat, CorpusError> {
    let k = match spec {
        CorpusSpec::F2 => 1,
        CorpusSpec::F4 { k } => *k as i64,
        _ => return Err(CorpusError::NoClosedForm(spec.id())),
    };
    let ax = x.abs();
    let one = int(1);
    Ok(if ax < one {
        rat(1, k)
    } else {
        (int(k) * (ax + one)).recip()
    })
}

/// `𝒯f` from the displayed closed forms. For f5 the value is only known at
/// `x = 2^{−n+1} − 2^{−n−1} = 3·2^{−n−1}`, `n ≥ 2`; elsewhere `None`.
pub fn closed_form_frequency(spec: &CorpusSpec, x: &Rat) -> Result<Option<Rat>, CorpusError> {
    match spec {
        CorpusSpec::F2 | CorpusSpec::F4 { .. } => {
            let ax = x.abs();
            Ok(Some(if ax <= int(1) {
                Rat::zero()
            } else {
                ax + int(1)
            }))
        }
        CorpusSpec::F5 { .. } => Ok(f5_special_index(x).map(|_| int(1) - x)),
        _ => Err(CorpusError::NoClosedForm(spec.id())),
    }
}

/// `n` such that `x = 3·2^{−n−1}` with `n ≥ 2`.
pub fn f5_special_index(x: &Rat) -> Option<u32> {
    if x.numer() != &BigInt::from(3) {
        return None;
    }
    let d = x.denom();
    let bits = d.bits();
    if bits < 4 || d != &(BigInt::one() << (bits - 1)) {
        return None;
    }
    // d = 2^{n+1}
    Some(bits as u32 - 2)
}

/// The special point `3·2^{−n−1}` of f5.
pub fn f5_special_point(n: u32) -> Rat {
    int(3) * pow2(-(n as i32) - 1)
}

/// Corpus used by the sampled suites: every generator at a desk-scale
/// truncation.
pub fn standard_corpus() -> Vec<CorpusSpec> {
    vec![
        CorpusSpec::F1,
        CorpusSpec::F2,
        CorpusSpec::F3 {
            levels: 16,
            n_min: 1,
        },
        CorpusSpec::F4 { k: 5 },
        CorpusSpec::F5 { levels: 12 },
        CorpusSpec::F7,
        CorpusSpec::F8 { levels: 12 },
        CorpusSpec::F9 { levels: 8 },
        CorpusSpec::Thm4 {
            eps: rat(1, 2),
            m_max: 100,
        },
    ]
}
