//! Congruence data behind the modular arguments: Goldbach/Chen splittings
//! of powers of two, Frey curves, traces of Frobenius, Q-curves over `ℚ(i)`
//! and lower bounds on coefficient-field degrees.

mod bounds;
mod chen;
mod curve;
mod gaussian;

pub use bounds::{degree_lower_bound, eisenstein_level_search, ogg_numerator, EisensteinLevel};
pub use chen::{chen_search, ChenDecomposition};
pub use curve::{frey_invariants, trace_of_frobenius, CurveQ, FreyRecord, MAX_TRACE_PRIME};
pub use gaussian::{qcurve_construct, quartic_solution_search, GaussianInt, QCurveRecord, QuarticSolution};

use num_bigint::BigInt;

fn big_str<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn i128_str<S: serde::Serializer>(v: &i128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
