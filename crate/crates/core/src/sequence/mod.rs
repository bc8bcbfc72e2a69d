//! The weighted representation sequence `a(c)_n`, its congruence sums
//! `A_d(x; c)`, the lattice model `M_d(x; c)`, Λ-weighted prime sums and
//! numeric audits of the sieve hypotheses.

mod audit;
mod model;
mod primesum;
mod tally;

pub use audit::{
    beta_coefficient, bilinear_diagnostic, hypothesis_audit, AuditEntry, AuditReport,
    AuditCalibration, AuditStatus, BilinearDiagnostic, SieveParams, L_EXPONENT,
    MERTENS_DRIFT_TOLERANCE, MERTENS_SAMPLE_POINTS,
};
pub use model::{
    model_count, model_count_with, remainder_profile, remainder_profile_from, RemainderProfile,
    RemainderRow,
};
pub use primesum::{
    convention_bridge, lambda_sum_positive, lambda_sum_positive_with, lambda_sum_weighted,
    ConventionBridge,
};
pub use tally::{
    congruence_sum, sequence_primes, tally, tally_window, tally_with, EnumerationConfig,
    SequenceTally, DEFAULT_ENUMERATION_BOUND,
};

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
