//! Scalar special functions: Pochhammer products, deformed numbers, the
//! deformed exponential, finite deformed hypergeometric sums, and the
//! (p,q)-binomial check.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{classify_regime, DeformationParams, Regime, ZERO_TOL};

/// Default per-term stopping tolerance for series evaluation.
pub const DEFAULT_SERIES_TOL: f64 = 1e-14;
/// Default term budget for series evaluation.
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// A partial-sum result with convergence bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Magnitude of the first omitted term.
    pub truncation_estimate: f64,
}

/// Complex-argument variant of [`SeriesResult`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResultComplex {
    pub value: Complex64,
    pub terms_used: usize,
    pub truncation_estimate: f64,
}

/// q-Pochhammer product (a; q)_n = prod_{k=0}^{n-1} (1 - a q^k).
pub fn pochhammer(a: Complex64, q: f64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut qk = 1.0;
    for _ in 0..n {
        acc *= Complex64::new(1.0, 0.0) - a * qk;
        qk *= q;
    }
    acc
}

/// Real-argument convenience wrapper around [`pochhammer`].
pub fn pochhammer_real(a: f64, q: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    let mut qk = 1.0;
    for _ in 0..n {
        acc *= 1.0 - a * qk;
        qk *= q;
    }
    acc
}

/// Double-base Pochhammer ((a,b); (p,q))_n = prod_{k=0}^{n-1} (a p^k - b q^k).
pub fn double_pochhammer(a: f64, b: f64, p: f64, q: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    let mut pk = 1.0;
    let mut qk = 1.0;
    for _ in 0..n {
        acc *= a * pk - b * qk;
        pk *= p;
        qk *= q;
    }
    acc
}

/// The deformed number at real exponent x:
/// [x] = (phi1 p^{-x} - phi2 q^x) / (p^{-nu} - q^nu).
///
/// The a^dagger a eigenvalue on level n is [alpha chi0 + n nu].
pub fn deformed_number(x: f64, params: &DeformationParams) -> Result<f64> {
    let denom = params.p.powf(-params.nu) - params.q.powf(params.nu);
    if denom.abs() <= ZERO_TOL {
        return Err(Error::DegenerateDeformation);
    }
    Ok((params.phi1 * params.p.powf(-x) - params.phi2 * params.q.powf(x)) / denom)
}

/// The scalar tau of the declared regime:
/// regime A: phi1 p^{-alpha chi0 - nu} / (p^{-nu} - q^nu);
/// regime B: phi2 q^{alpha chi0 + nu} / (q^nu - p^{-nu}).
///
/// Strictly positive in the declared regime.
pub fn tau(params: &DeformationParams) -> Result<f64> {
    let regime = classify_regime(params)?;
    let a = params.alpha * params.chi0;
    let denom = params.p.powf(-params.nu) - params.q.powf(params.nu);
    if denom.abs() <= ZERO_TOL {
        return Err(Error::DegenerateDeformation);
    }
    Ok(match regime {
        Regime::A => params.phi1 * params.p.powf(-a - params.nu) / denom,
        Regime::B => params.phi2 * params.q.powf(a + params.nu) / -denom,
    })
}

/// Term ratio of the deformed-exponential series at index n:
/// c_{n+1}/c_n with the argument factored out.
fn nexp_coeff_ratio(params: &DeformationParams, regime: Regime, n: usize) -> f64 {
    let pq = params.p * params.q;
    let nu = params.nu;
    let r = params.structure_ratio(regime);
    match regime {
        Regime::A => {
            params.p.powf(nu * n as f64) * (1.0 - pq.powf(nu)) / params.phi1
                / (1.0 - r * pq.powf((n + 1) as f64 * nu))
        }
        Regime::B => {
            params.q.powf(-nu * n as f64) * (1.0 - pq.powf(-nu)) / params.phi2
                / (1.0 - r * pq.powf(-((n + 1) as f64) * nu))
        }
    }
}

/// Deformed exponential N_nu at a complex argument, by direct summation with
/// a next-term stopping rule.
///
/// Regime A: sum_n p^{nu n(n-1)/2} ((1-(pq)^nu) x / phi1)^n / (r (pq)^nu; (pq)^nu)_n
/// with r = phi2/phi1; regime B mirrors with base (pq)^{-nu} and phi2.
/// Requires the chi0 = 0 convention.
pub fn deformed_exponential_complex(
    x: Complex64,
    params: &DeformationParams,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResultComplex> {
    if params.chi0 != 0.0 {
        return Err(Error::ConventionViolation(format!(
            "deformed exponential requires chi0 = 0, got {}",
            params.chi0
        )));
    }
    let regime = classify_regime(params)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut used = 0;
    for n in 0..max_terms {
        sum += term;
        used = n + 1;
        term *= x * nexp_coeff_ratio(params, regime, n);
        if term.norm() < tol {
            return Ok(SeriesResultComplex { value: sum, terms_used: used, truncation_estimate: term.norm() });
        }
    }
    Err(Error::NonConvergence { terms: used, estimate: term.norm(), tol })
}

/// Deformed exponential N_nu(x) for real x >= 0.
pub fn deformed_exponential(
    x: f64,
    params: &DeformationParams,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult> {
    let r = deformed_exponential_complex(Complex64::new(x, 0.0), params, tol, max_terms)?;
    Ok(SeriesResult { value: r.value.re, terms_used: r.terms_used, truncation_estimate: r.truncation_estimate })
}

/// Finite deformed hypergeometric sum
/// L_m[(lambda, sigma); (p, q); z] = sum_{n=0}^{m} ((lambda,sigma);(p,q))_n / ((p,q);(p,q))_n z^n.
pub fn deformed_hypergeometric_l(
    lambda: f64,
    sigma: f64,
    p: f64,
    q: f64,
    z: f64,
    m: usize,
) -> Result<f64> {
    // ((p,q);(p,q))_n has factors p^{k+1} - q^{k+1}, k = 0..n-1.
    for k in 0..m {
        if (p.powi(k as i32 + 1) - q.powi(k as i32 + 1)).abs() <= ZERO_TOL {
            return Err(Error::VanishingDenominator { k });
        }
    }
    let mut sum = 0.0;
    for n in 0..=m {
        let num = double_pochhammer(lambda, sigma, p, q, n);
        let den = double_pochhammer(p, q, p, q, n);
        sum += num / den * z.powi(n as i32);
    }
    Ok(sum)
}

/// Numerical check of the (p,q)-binomial theorem: relative residual between
/// the truncated series sum_n ((a,b);(p,q))_n / ((p,q);(p,q))_n z^n and the
/// product ratio ((p,bz);(p,q))_K / ((p,az);(p,q))_K.
///
/// Requires |q/p| < 1 and a numerically convergent partial sum (the last 10
/// terms must be nonincreasing in magnitude).
pub fn check_pq_binomial(
    a: f64,
    b: f64,
    p: f64,
    q: f64,
    z: f64,
    sum_terms: usize,
    product_terms: usize,
) -> Result<f64> {
    if (q / p).abs() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "(p,q)-binomial check requires |q/p| < 1, got {}",
            (q / p).abs()
        )));
    }
    let mut lhs = 0.0;
    let mut magnitudes = Vec::with_capacity(sum_terms);
    for n in 0..sum_terms {
        if (p.powi(n as i32) * p - q.powi(n as i32) * q).abs() <= ZERO_TOL && n < sum_terms {
            return Err(Error::VanishingDenominator { k: n });
        }
        let term = double_pochhammer(a, b, p, q, n) / double_pochhammer(p, q, p, q, n)
            * z.powi(n as i32);
        lhs += term;
        magnitudes.push(term.abs());
    }
    let tail = magnitudes.len().saturating_sub(10);
    if magnitudes[tail..].windows(2).any(|w| w[1] > w[0] && w[1] > 1e-300) {
        return Err(Error::NonConvergence {
            terms: sum_terms,
            estimate: *magnitudes.last().unwrap_or(&f64::NAN),
            tol: 0.0,
        });
    }
    let rhs = double_pochhammer(p, b * z, p, q, product_terms)
        / double_pochhammer(p, a * z, p, q, product_terms);
    Ok((lhs - rhs).abs() / rhs.abs())
}
