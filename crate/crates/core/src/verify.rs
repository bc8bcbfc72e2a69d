//! Invariant suites behind `quartic verify`.
//!
//! Every check is stated literally; a check that fails records the first
//! counterexample in its detail string instead of being relaxed.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{build_tables, factorize, gcd, is_prime, primes_up_to};
use crate::congruence::{
    chen_search, degree_lower_bound, frey_invariants, ogg_numerator, qcurve_construct,
    quartic_solution_search, trace_of_frobenius, CurveQ,
};
use crate::density::{rho_mult, rho_pair, rho_pair_oracle};
use crate::error::{LabError, Result};
use crate::rational::ExactRational;
use crate::sequence::{
    congruence_sum, convention_bridge, model_count, remainder_profile_from, tally,
};
use crate::series::{
    big_g_mobius, big_g_product, g_closed, g_prime_power, g_sum, h_sum, kappa, kappa_gamma,
    sieve_constant_partial, KAPPA_TOLERANCE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Rho,
    #[serde(rename = "g")]
    SmallG,
    #[serde(rename = "G")]
    BigG,
    Sequence,
    Sieve,
    Congruence,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["rho", "g", "G", "sequence", "sieve", "congruence", "all"];

    fn parts(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Rho, SmallG, BigG, Sequence, Sieve, Congruence],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = LabError;

    /// Exact, case-sensitive names: `g` and `G` are different suites.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rho" => Suite::Rho,
            "g" => Suite::SmallG,
            "G" => Suite::BigG,
            "sequence" => Suite::Sequence,
            "sieve" => Suite::Sieve,
            "congruence" => Suite::Congruence,
            "all" => Suite::All,
            _ => {
                return Err(LabError::pre(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::Rho,
            Suite::SmallG,
            Suite::BigG,
            Suite::Sequence,
            Suite::Sieve,
            Suite::Congruence,
            Suite::All,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Collects checks; the first failing case of a sweep goes into the detail.
struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite.to_string(),
            name,
            passed,
            detail: detail.into(),
        });
    }

    /// Records a sweep: `Ok(None)` passes, `Ok(Some(msg))` fails with a
    /// counterexample, and `Err` fails with the error.
    fn sweep(&mut self, name: &'static str, scope: &str, f: impl FnOnce() -> Result<Option<String>>) {
        match f() {
            Ok(None) => self.push(name, true, scope),
            Ok(Some(why)) => self.push(name, false, format!("{scope}: {why}")),
            Err(e) => self.push(name, false, format!("{scope}: error: {e}")),
        }
    }
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    let mut out = Vec::new();
    for part in suite.parts() {
        let mut r = Recorder {
            suite: part,
            checks: Vec::new(),
        };
        match part {
            Suite::Rho => rho_suite(&mut r),
            Suite::SmallG => small_g_suite(&mut r),
            Suite::BigG => big_g_suite(&mut r),
            Suite::Sequence => sequence_suite(&mut r),
            Suite::Sieve => sieve_suite(&mut r),
            Suite::Congruence => congruence_suite(&mut r),
            Suite::All => unreachable!(),
        }
        out.extend(r.checks);
    }
    out
}

fn rho_suite(r: &mut Recorder) {
    r.sweep("oracle_equivalence", "0 <= b <= 200, 1 <= d <= 400", || {
        for d in 1..=400u64 {
            for b in 0..=200i64 {
                let (f, o) = (rho_pair(b, d)?, rho_pair_oracle(b, d)?);
                if f != o {
                    return Ok(Some(format!("rho({b}; {d}) = {f}, oracle {o}")));
                }
            }
        }
        Ok(None)
    });
    r.sweep("periodicity", "0 <= b <= 1000, 1 <= d <= 100", || {
        for d in 1..=100u64 {
            for b in 0..=1000i64 {
                if rho_pair(b, d)? != rho_pair(b % d as i64, d)? || rho_pair(-b, d)? != rho_pair(b, d)? {
                    return Ok(Some(format!("b = {b}, d = {d}")));
                }
            }
        }
        Ok(None)
    });
    r.sweep("multiplicative_in_d", "coprime d, d' <= 100, b <= 50", || {
        for d in 1..=100u64 {
            for e in (1..=100u64).filter(|&e| gcd(d, e) == 1) {
                for b in 0..=50i64 {
                    if rho_pair(b, d * e)? != rho_pair(b, d)? * rho_pair(b, e)? {
                        return Ok(Some(format!("b = {b}, d = {d}, d' = {e}")));
                    }
                }
            }
        }
        Ok(None)
    });
    r.sweep("rho_mult_examples", "rho(1, 25, 9, 4, 50)", || {
        let got = [1u64, 25, 9, 4, 50].map(|m| rho_mult(m).unwrap());
        Ok((got != [1, 2, 0, 0, 2]).then(|| format!("{got:?}")))
    });
}

fn small_g_suite(r: &mut Recorder) {
    r.sweep("g_sum_equals_closed", "d <= 5000", || {
        for d in 1..=5000u64 {
            let (s, c) = (g_sum(d)?, g_closed(d)?);
            if s != c {
                return Ok(Some(format!("g({d}): sum {s}, closed {c}")));
            }
        }
        Ok(None)
    });
    r.sweep("g_h_multiplicative", "coprime m, n <= 200", || {
        for m in 1..=200u64 {
            for n in (m..=200u64).filter(|&n| gcd(m, n) == 1) {
                if g_sum(m * n)? != g_sum(m)? * g_sum(n)? {
                    return Ok(Some(format!("g at m = {m}, n = {n}")));
                }
                if h_sum(m * n)? != h_sum(m)? * h_sum(n)? {
                    return Ok(Some(format!("h at m = {m}, n = {n}")));
                }
            }
        }
        Ok(None)
    });
    r.sweep("local_density_hypotheses", "primes p <= 10^4", || {
        let (two, three) = (ExactRational::from_int(2), ExactRational::from_int(3));
        for p in primes_up_to(10_000) {
            let (g1, g2) = (g_prime_power(p, 1), g_prime_power(p, 2));
            let ok = ExactRational::ZERO <= g2
                && g2 <= g1
                && g1 < ExactRational::ONE
                && g1 * ExactRational::from(p) <= two
                && g2 * ExactRational::from(p * p) <= three;
            if !ok {
                return Ok(Some(format!("p = {p}: g(p) = {g1}, g(p^2) = {g2}")));
            }
        }
        Ok(None)
    });
}

/// `G(c) = 0` iff some `p ≡ 3 mod 4` has odd `v_p(c)` or `v₂(c) ≡ 3 mod 4`.
pub fn predicted_zero(c: u64) -> Result<bool> {
    Ok(factorize(c)?
        .factors()
        .iter()
        .any(|&(p, e)| (p % 4 == 3 && e % 2 == 1) || (p == 2 && e % 4 == 3)))
}

/// Literal `h(p) p = 1 + 2ρ(p)` and `h(p²) p² = p + 2ρ(p)`; returns the
/// first prime where either fails.
pub fn h_prime_law_failures(limit: u64) -> Result<Vec<u64>> {
    let mut bad = Vec::new();
    for p in primes_up_to(limit) {
        let rho = rho_mult(p)? as i128;
        let pi = p as i128;
        let first = h_sum(p)? * ExactRational::from(p) == ExactRational::from_int(1 + 2 * rho);
        let second = h_sum(p * p)? * ExactRational::from(p * p) == ExactRational::from_int(pi + 2 * rho);
        if !(first && second) {
            bad.push(p);
        }
    }
    Ok(bad)
}

/// `G ≤ c^{−3/4}` decided exactly as `num⁴ c³ ≤ den⁴`.
pub fn within_upper_bound(g: &ExactRational, c: u64) -> bool {
    let n = BigInt::from(g.numerator());
    let d = BigInt::from(g.denominator());
    n.pow(4) * BigInt::from(c).pow(3) <= d.pow(4)
}

fn big_g_suite(r: &mut Recorder) {
    r.sweep("h_prime_laws", "primes p <= 1000", || {
        let bad = h_prime_law_failures(1000)?;
        Ok((!bad.is_empty()).then(|| {
            format!(
                "fails at p in {bad:?}: h(2) = {}, h(4) = {}",
                h_sum(2).unwrap(),
                h_sum(4).unwrap()
            )
        }))
    });
    let mut values = Vec::with_capacity(10_000);
    r.sweep("mobius_equals_product", "c <= 10^4", || {
        for c in 1..=10_000u64 {
            let (m, p) = (big_g_mobius(c)?, big_g_product(c)?);
            if m != p {
                return Ok(Some(format!("G({c}): {m} vs {p}")));
            }
            values.push(p);
        }
        Ok(None)
    });
    if values.len() != 10_000 {
        return;
    }
    r.sweep("zero_locus", "c <= 10^4", || {
        for (i, g) in values.iter().enumerate() {
            let c = i as u64 + 1;
            if g.is_zero() != predicted_zero(c)? {
                return Ok(Some(format!("c = {c}, G = {g}")));
            }
        }
        Ok(None)
    });
    r.sweep("upper_bound", "G(c) <= c^(-3/4) for nonzero G(c), c <= 10^4", || {
        let worst = values
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, g)| (g.to_f64() * ((i + 1) as f64).powf(0.75), i + 1))
            .fold((0.0f64, 0usize), |a, b| if b.0 > a.0 { b } else { a });
        let bad: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(i, g)| !g.is_zero() && !within_upper_bound(g, (*i + 1) as u64))
            .map(|(i, _)| i + 1)
            .collect();
        Ok((!bad.is_empty()).then(|| {
            format!(
                "violated at c in {bad:?}; max G(c) c^(3/4) = {:.6} at c = {}",
                worst.0, worst.1
            )
        }))
    });
    r.sweep("relaxed_lower_bound", "c G(c) >= 1/4 for nonzero G(c), c <= 10^4", || {
        let (min, at) = values
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, g)| (*g * ExactRational::from((i + 1) as u64), i + 1))
            .min_by(|a, b| a.0.cmp(&b.0))
            .unwrap();
        Ok((min < crate::rational::q(1, 4)).then(|| format!("min c G(c) = {min} at c = {at}")))
    });
}

fn sequence_suite(r: &mut Recorder) {
    r.sweep("mobius_identity", "c <= 20, d <= 20, x = 1000", || {
        let x = 1000;
        for c in 1..=20u64 {
            let t = tally(c, x)?;
            let base = tally(1, c * x)?;
            let kf = factorize(c)?.squarefree_divisors();
            for d in (1..=20u64).filter(|&d| gcd(d, c) == 1) {
                let lhs = congruence_sum(&t, d, x)? as i128;
                let mut rhs = 0i128;
                for &(k, mu) in &kf {
                    rhs += mu as i128 * congruence_sum(&base, c * k * d, c * x)? as i128;
                }
                if lhs != rhs {
                    return Ok(Some(format!("c = {c}, d = {d}: {lhs} vs {rhs}")));
                }
            }
        }
        Ok(None)
    });
    r.sweep("first_remainder_vanishes", "c = 1, x in {10, 100, 10^4, 10^5}", || {
        for x in [10u64, 100, 10_000, 100_000] {
            let t = tally(1, x)?;
            if model_count(x, 1, 1)? != ExactRational::from(t.total()) {
                return Ok(Some(format!("x = {x}")));
            }
            if remainder_profile_from(&t, 1)?.total != 0.0 {
                return Ok(Some(format!("profile at x = {x}")));
            }
        }
        Ok(None)
    });
    r.sweep("main_term", "x = 10^6, c in {1, 2, 5, 10, 25}", || {
        let k = kappa(KAPPA_TOLERANCE)?;
        let mut ratios = Vec::new();
        for (c, tol) in [(1u64, 0.05), (2, 0.10), (5, 0.10), (10, 0.10), (25, 0.10)] {
            let g = crate::series::big_g(c)?;
            let a = tally(c, 1_000_000)?.total() as f64;
            let ratio = a / (4.0 * k * g.to_f64() * (c as f64 * 1e6).powf(0.75));
            ratios.push(format!("c = {c}: {ratio:.5}"));
            if (ratio - 1.0).abs() > tol {
                return Ok(Some(ratios.join(", ")));
            }
        }
        Ok(None)
    });
    r.sweep("convention_bridge", "x = 10^4, c in {1, 2, 5, 10, 13, 25}", || {
        let tables = build_tables(10_000)?;
        for c in [1u64, 2, 5, 10, 13, 25] {
            let b = convention_bridge(&tally(c, 10_000)?, &tables)?;
            if !(b.exact_per_n && b.within_bound) {
                return Ok(Some(format!("c = {c}")));
            }
        }
        Ok(None)
    });
    r.sweep("obstructed_moduli", "c in {3, 7, 21}, x = 10^4", || {
        for c in [3u64, 7, 21] {
            let total = tally(c, 10_000)?.total();
            if total != 0 {
                return Ok(Some(format!("c = {c}: A = {total}")));
            }
        }
        Ok(None)
    });
}

fn sieve_suite(r: &mut Recorder) {
    r.sweep("tables_match_factorization", "n <= 10^5", || {
        let t = build_tables(100_000)?;
        for n in 2..=100_000u64 {
            let f = factorize(n)?;
            let mu = if f.is_squarefree() {
                if f.factors().len() % 2 == 0 { 1 } else { -1 }
            } else {
                0
            };
            if t.smallest_prime_factor(n) != f.factors()[0].0 || t.mobius(n) != mu || t.is_prime(n) != is_prime(n) {
                return Ok(Some(format!("n = {n}")));
            }
        }
        Ok(None)
    });
    r.sweep("sieve_constant", "|prod_(p <= 10^6) - 4/pi| <= 0.01", || {
        let v = sieve_constant_partial(1_000_000)?;
        Ok(((v - 4.0 / PI).abs() > 0.01).then(|| format!("partial product {v:.6}")))
    });
    r.sweep("kappa_two_ways", "quadrature vs Gamma(1/4)^2 / (6 sqrt(2 pi))", || {
        let (q, g) = (kappa(1e-10)?, kappa_gamma());
        Ok(((q - g).abs() > 1e-8).then(|| format!("{q} vs {g}")))
    });
}

fn congruence_suite(r: &mut Recorder) {
    r.sweep("goldbach_to_12", "1 <= ell <= 12", || {
        for ell in 1..=12 {
            let d = chen_search(ell, false)?;
            if !(d.verify() && d.is_goldbach()) {
                return Ok(Some(format!("ell = {ell}")));
            }
        }
        Ok(None)
    });
    r.sweep("frey_invariants", "Goldbach splittings, 1 <= ell <= 40", || {
        for ell in 1..=40 {
            let d = chen_search(ell, false)?;
            let f = frey_invariants(d.p, d.cofactor[0], ell)?;
            if f.v2_disc != 2 * ell || f.conductor != 2 * d.p as u128 * d.cofactor[0] as u128 || !f.v2_divisible_by_ell {
                return Ok(Some(format!("ell = {ell}")));
            }
        }
        Ok(None)
    });
    r.sweep("hasse_bound", "curves with |a_i| <= 6, primes 5 <= p <= 1000", || {
        let primes: Vec<u64> = primes_up_to(1000).into_iter().filter(|&p| p >= 5).collect();
        let mut done = 0;
        let mut i = 0usize;
        while done < 200 {
            // deterministic walk over small coefficient triples
            let (a2, a4, a6) = ((i % 13) as i128 - 6, ((i / 13) % 13) as i128 - 6, ((i / 169) % 13) as i128 - 6);
            let p = primes[(i * 37) % primes.len()];
            i += 1;
            let c = CurveQ { a2, a4, a6 };
            match trace_of_frobenius(&c, p) {
                Ok(a) if (a * a) as u64 > 4 * p => return Ok(Some(format!("{c:?}, p = {p}, a_p = {a}"))),
                Ok(_) => done += 1,
                Err(_) => {}
            }
        }
        Ok(None)
    });
    r.sweep("cm_curve", "y^2 = x^3 - x, p = 3 mod 4, p <= 1000", || {
        let c = CurveQ::new(0, -1, 0)?;
        for p in primes_up_to(1000).into_iter().filter(|p| p % 4 == 3) {
            if trace_of_frobenius(&c, p)? != 0 {
                return Ok(Some(format!("p = {p}")));
            }
        }
        Ok(None)
    });
    r.sweep("degree_and_ogg", "anchored values", || {
        let got = (
            degree_lower_bound(11, 2)?,
            degree_lower_bound(5, 2)?,
            degree_lower_bound(1009, 5)?,
            ogg_numerator(11, 13)?,
        );
        Ok((got != (2, 1, 3, 35)).then(|| format!("{got:?}")))
    });
    r.sweep("qcurves", "quartic solutions ell <= 3, bound 500", || {
        for ell in 0..=3 {
            for s in quartic_solution_search(ell, 500)? {
                if !qcurve_construct(s.a, s.b, ell, s.p)?.norm_identity() {
                    return Ok(Some(format!("{s:?}")));
                }
            }
        }
        let s1 = quartic_solution_search(1, 100)?;
        let s2 = quartic_solution_search(2, 400)?;
        let found = s1.iter().any(|s| (s.a, s.b, s.p) == (3, 2, 17)) && s2.iter().any(|s| (s.a, s.b, s.p) == (1, 18, 13));
        Ok((!found).then(|| "anchor solutions missing".to_string()))
    });
}
