//! Desk-scale laboratory for primes of the form `(a² + b⁴)/c`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] – sieves, factorization, μ, φ, τ, τ₅, Λ, χ₄ and the
//!   `d = d1·d3²·d4⁴` split of a modulus.
//! * [`density`] – the local solution counts `ρ(b; d)`.
//! * [`series`] – exact values of the multiplicative densities `g`, `h`,
//!   the constants `G(c)`, `H(c)`, `κ` and the main-term coefficient.
//! * [`sequence`] – the weighted representation counts `a(c)_n`, their
//!   congruence sums, the model `M_d`, prime sums and hypothesis audits.
//! * [`congruence`] – Goldbach/Chen decompositions, Frey curves, traces of
//!   Frobenius, Q-curves over `ℚ(i)` and coefficient-field degree bounds.
//! * [`verify`] – the invariant suites run by `quartic verify`.

pub mod arith;
pub mod congruence;
pub mod density;
mod error;
pub mod rational;
pub mod sequence;
pub mod series;
pub mod verify;

pub use error::{LabError, Result};
pub use rational::ExactRational;

/// Crate version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
