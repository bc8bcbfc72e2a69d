//! Exact singular-series data: the densities `g` and `h`, the twisted
//! constants `G(c)` and `H(c)`, `κ = ∫₀¹ (1 − t⁴)^{1/2} dt`, the sieve
//! constant `∏ (1 − g(p)) (1 − 1/p)⁻¹` and the main-term coefficient
//! `4π⁻¹ κ G(c) c^{3/4}`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::{chi4, factorize, gcd, primes_up_to, quartic_split, Factorization};
use crate::error::{LabError, Result};
use crate::rational::ExactRational;

/// Quadrature tolerance used when `κ` is needed as an input elsewhere.
pub const KAPPA_TOLERANCE: f64 = 1e-12;

const QUADRATURE_MAX_DEPTH: u32 = 60;

/// Factorization of a divisor of `n` over `n`'s primes.
fn factor_over(mut m: u64, primes: &[u64]) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for &p in primes {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    debug_assert_eq!(m, 1);
    out
}

fn divisors_over(m: u64, primes: &[u64]) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_over(m, primes) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out
}

/// Data of `δ(ν₁, ν₃, ν₄)` needed by the summands of `g` and `h`.
struct DeltaTerm {
    /// `ν₄² · ν₃`
    nu_weight: i128,
    /// `(ν₃, d1*)`
    nu3_gcd: i128,
    rho_sq: i128,
    phi: i128,
    tau: i128,
}

/// Runs the triple divisor sum shared by `g` and `h`.
fn delta_terms(f: &Factorization) -> (crate::arith::QuarticDecomposition, Vec<DeltaTerm>) {
    let split = quartic_split(f);
    let primes: Vec<u64> = f.primes().collect();
    let (d1s, d3, d4) = (split.d1star, split.d3, split.d4);
    let mut terms = Vec::new();
    for nu4 in divisors_over(d4, &primes) {
        for nu3 in divisors_over(d3, &primes) {
            if gcd(nu3, d4 / nu4) != 1 {
                continue;
            }
            let g3 = gcd(nu3, d1s);
            let coprime_to = d3 * d4 / (nu3 * nu4);
            for nu1 in divisors_over(d1s / g3, &primes) {
                if gcd(nu1, coprime_to) != 1 {
                    continue;
                }
                let delta = d1s * d3 * d4 / (g3 * nu1 * nu3 * nu4);
                let (mut rho_sq, mut phi, mut tau) = (1i128, 1i128, 1i128);
                for (p, e) in factor_over(delta, &primes) {
                    // ρ(δ²): 4 | δ² as soon as δ is even
                    rho_sq *= if p == 2 { 0 } else { (1 + chi4(p as i64)) as i128 };
                    phi *= ((p - 1) * p.pow(e - 1)) as i128;
                    tau *= e as i128 + 1;
                }
                terms.push(DeltaTerm {
                    nu_weight: (nu4 * nu4 * nu3) as i128,
                    nu3_gcd: g3 as i128,
                    rho_sq,
                    phi,
                    tau,
                });
            }
        }
    }
    (split, terms)
}

/// `g(d)` by the defining triple divisor sum over `ν₄ | d4`, `ν₃ | d3`,
/// `ν₁ | d1*/(ν₃, d1*)`.
pub fn g_sum(d: u64) -> Result<ExactRational> {
    let f = factorize(d)?;
    let (split, terms) = delta_terms(&f);
    let s: i128 = terms
        .iter()
        .map(|t| t.nu_weight * t.nu3_gcd * t.rho_sq * t.phi)
        .sum();
    let den = d as i128 * (split.d1star * split.d3 * split.d4) as i128;
    Ok(ExactRational::new(s, den).expect("positive denominator"))
}

/// `h(d)`: same sum as [`g_sum`] with summand `ν₄² ν₃ ρ(δ²) τ(δ)`.
pub fn h_sum(d: u64) -> Result<ExactRational> {
    let f = factorize(d)?;
    let (_, terms) = delta_terms(&f);
    let s: i128 = terms.iter().map(|t| t.nu_weight * t.rho_sq * t.tau).sum();
    Ok(ExactRational::new(s, d as i128).expect("positive denominator"))
}

/// `g(p^e)` from the prime-power closed forms.
pub fn g_prime_power(p: u64, e: u32) -> ExactRational {
    if e == 0 {
        return ExactRational::ONE;
    }
    let (alpha, r) = (e / 4, e % 4);
    let p_i = p as i128;
    if p == 2 {
        return ExactRational::recip_int(1i128 << (3 * alpha + r));
    }
    let chi = chi4(p as i64) as i128;
    let one_minus = ExactRational::new(p_i - 1, p_i).unwrap();
    // (1 + χ)(1 − 1/p)(p^α − 1)/(p − 1) / p^e
    let first = ExactRational::from_int(1 + chi)
        * one_minus
        * ExactRational::new(p_i.pow(alpha) - 1, p_i - 1).unwrap()
        / ExactRational::from_int(p_i.pow(e));
    let g_r = match r {
        0 => ExactRational::ONE,
        1 => ExactRational::ONE + ExactRational::from_int(chi) * one_minus,
        _ => ExactRational::ONE + ExactRational::from_int(1 + chi) * one_minus,
    };
    first + g_r / ExactRational::from_int(p_i.pow(3 * alpha + r))
}

/// `g(d)` as a product of prime-power closed forms.
pub fn g_closed(d: u64) -> Result<ExactRational> {
    Ok(g_closed_factored(&factorize(d)?))
}

pub fn g_closed_factored(f: &Factorization) -> ExactRational {
    f.factors().iter().map(|&(p, e)| g_prime_power(p, e)).product()
}

/// `G(c) = Σ_{k | c} μ(k) g(ck)`.
pub fn big_g_mobius(c: u64) -> Result<ExactRational> {
    let f = factorize(c)?;
    Ok(f.squarefree_divisors()
        .into_iter()
        .map(|(k, mu)| {
            let gck: ExactRational = f
                .factors()
                .iter()
                .map(|&(p, e)| g_prime_power(p, e + u32::from(k % p == 0)))
                .product();
            if mu > 0 {
                gck
            } else {
                -gck
            }
        })
        .sum())
}

/// `G(c) = ∏_{p | c} (g(p^{v}) − g(p^{v+1}))`, `v = v_p(c)`.
pub fn big_g_product(c: u64) -> Result<ExactRational> {
    let f = factorize(c)?;
    Ok(f.factors()
        .iter()
        .map(|&(p, e)| g_prime_power(p, e) - g_prime_power(p, e + 1))
        .product())
}

/// `G(c)`, evaluated by both the Möbius sum and the Euler product; the two
/// must coincide.
pub fn big_g(c: u64) -> Result<ExactRational> {
    let by_sum = big_g_mobius(c)?;
    let by_product = big_g_product(c)?;
    if by_sum != by_product {
        return Err(LabError::pre(format!(
            "G({c}): Möbius form {by_sum} differs from product form {by_product}"
        )));
    }
    Ok(by_product)
}

/// `H(c) = √c · Σ_{k | c} h(ck)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BigH {
    pub c: u64,
    /// `Σ_{k | c} h(ck)`
    pub divisor_sum: ExactRational,
    pub value: f64,
}

pub fn big_h(c: u64) -> Result<BigH> {
    let f = factorize(c)?;
    let mut divisor_sum = ExactRational::ZERO;
    for k in f.divisors() {
        let ck = c.checked_mul(k).ok_or(LabError::Overflow("c·k in H(c)"))?;
        divisor_sum = divisor_sum + h_sum(ck)?;
    }
    Ok(BigH {
        c,
        divisor_sum,
        value: (c as f64).sqrt() * divisor_sum.to_f64(),
    })
}

pub fn kappa_integrand(t: f64) -> f64 {
    (1.0 - t.powi(4)).max(0.0).sqrt()
}

/// `κ` by adaptive Simpson after `t = 1 − s²`, which removes the
/// square-root behaviour at `t = 1`.
pub fn kappa(tolerance: f64) -> Result<f64> {
    if tolerance.is_nan() || tolerance < 1e-12 {
        return Err(LabError::pre(format!(
            "kappa tolerance {tolerance:e} below 1e-12"
        )));
    }
    // t = 1 − u with u = s²: 1 − t⁴ = u (4 − 6u + 4u² − u³)
    let f = |s: f64| {
        let u = s * s;
        2.0 * s * (u * (4.0 - 6.0 * u + 4.0 * u * u - u * u * u)).max(0.0).sqrt()
    };
    adaptive_simpson(&f, 0.0, 1.0, tolerance)
}

/// `Γ(1/4)² / (6 √(2π))`.
pub fn kappa_gamma() -> f64 {
    let g = libm::tgamma(0.25);
    g * g / (6.0 * (2.0 * PI).sqrt())
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Option<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Some(left + right + delta / 15.0);
        }
        if depth == 0 {
            return None;
        }
        Some(
            recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
                + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?,
        )
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, QUADRATURE_MAX_DEPTH).ok_or(LabError::Quadrature {
        tolerance: tol,
        max_depth: QUADRATURE_MAX_DEPTH,
    })
}

/// `∏_{p ≤ y} (1 − g(p)) (1 − 1/p)⁻¹`; tends to `L(1, χ₄)⁻¹ = 4/π`.
pub fn sieve_constant_partial(y: u64) -> Result<f64> {
    if y < 2 {
        return Err(LabError::pre(format!("sieve constant needs y ≥ 2, got {y}")));
    }
    Ok(primes_up_to(y)
        .into_iter()
        .map(|p| {
            let g = g_prime_power(p, 1).to_f64();
            (1.0 - g) * p as f64 / (p as f64 - 1.0)
        })
        .product())
}

/// Main term `4π⁻¹ κ G(c) (c x)^{3/4}` of the prime sum over positive pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MainTermModel {
    pub c: u64,
    #[serde(rename = "G")]
    pub g_c: ExactRational,
    pub kappa: f64,
    /// `4π⁻¹ κ G(c) c^{3/4}`
    pub coefficient: f64,
}

impl MainTermModel {
    /// Predicted prime sum up to `x`.
    pub fn main_term(&self, x: f64) -> f64 {
        self.coefficient * x.powf(0.75)
    }

    /// Predicted `A(x; c) = 4 κ G(c) (c x)^{3/4}`.
    pub fn sequence_mass(&self, x: f64) -> f64 {
        4.0 * self.kappa * self.g_c.to_f64() * (self.c as f64 * x).powf(0.75)
    }
}

pub fn main_term_coefficient(c: u64) -> Result<MainTermModel> {
    let g_c = big_g(c)?;
    let kappa = kappa(KAPPA_TOLERANCE)?;
    let coefficient = if g_c.is_zero() {
        0.0
    } else {
        4.0 / PI * kappa * g_c.to_f64() * (c as f64).powf(0.75)
    };
    Ok(MainTermModel {
        c,
        g_c,
        kappa,
        coefficient,
    })
}
