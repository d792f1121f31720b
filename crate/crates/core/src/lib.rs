//! Exact maximal and frequency functions of nonnegative rational step
//! functions.
//!
//! For a step function `f` and a rational center `x`, the average
//! `A_r f(x)` over `[x − r, x + r]` is piecewise of the form
//! `(alpha + beta·r)/(2r)` in the radius. That structure makes the
//! Hardy–Littlewood maximal function `𝓜f(x)` and the frequency function
//! `𝒯f(x)` (the least radius attaining it) computable exactly.

pub mod analysis;
pub mod corpus;
mod enclosure;
pub mod freq;
pub mod oracle;
pub mod profile;
pub mod rat;
pub mod sample;
pub mod stepfn;

pub use freq::{aux_frequency, e_set, frequency, maximal, FreqResult, RadiusInterval, Status};
pub use profile::{build_profile, Profile, Segment};
pub use rat::{parse_rat, Rat};
pub use stepfn::{parse_stepfn, Piece, StepFn, StepFnError};
