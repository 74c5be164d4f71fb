//! Casimir-type specialization: structure functions
//! phi1 = (1 + 2 gamma w2) p^{-beta}, phi2 = (1 + 2 gamma w2) q^{beta},
//! its two equivalent closed-form energy expressions, and the associated
//! deformed factorial.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{DeformationParams, ZERO_TOL};
use crate::qseries::double_pochhammer;

/// Parameters of the Casimir-type oscillator.  The lowest-weight convention
/// chi0 = 0, alpha = nu is implied.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CasimirParams {
    pub p: f64,
    pub q: f64,
    pub nu: f64,
    pub beta: f64,
    pub gamma: f64,
    /// The frequency-squared coupling w^2 multiplying gamma.
    pub omega2: f64,
}

impl CasimirParams {
    /// The common scale 1 + 2 gamma w^2 of both structure functions.
    pub fn scale(&self) -> f64 {
        1.0 + 2.0 * self.gamma * self.omega2
    }
}

/// The deformation parameter set realizing this Casimir oscillator.
pub fn effective_params(cp: &CasimirParams) -> Result<DeformationParams> {
    let c = cp.scale();
    if c <= 0.0 {
        return Err(Error::NonPositiveStructureFunction(c));
    }
    let params = DeformationParams::new(
        cp.p,
        cp.q,
        cp.nu,
        cp.nu,
        c * cp.p.powf(-cp.beta),
        c * cp.q.powf(cp.beta),
        0.0,
    );
    params.check_fields()?;
    Ok(params)
}

/// Unit-structure-function deformed number (p^{-y} - q^y)/(p^{-nu} - q^nu).
fn unit_number(cp: &CasimirParams, y: f64) -> Result<f64> {
    let denom = cp.p.powf(-cp.nu) - cp.q.powf(cp.nu);
    if denom.abs() <= ZERO_TOL {
        return Err(Error::DegenerateDeformation);
    }
    Ok((cp.p.powf(-y) - cp.q.powf(y)) / denom)
}

/// The two closed forms of the level-n energy.  Both are exact rewritings of
/// E_n = [beta + n nu] + [beta + (n+1) nu] scaled by (1 + 2 gamma w^2):
/// form a uses q^y + (1 + p^{-nu})[y], form b uses p^{-y} + (1 + q^nu)[y]
/// with y = beta + n nu.
pub fn casimir_energy(cp: &CasimirParams, n: usize) -> Result<(f64, f64)> {
    let c = cp.scale();
    if c <= 0.0 {
        return Err(Error::NonPositiveStructureFunction(c));
    }
    let y = cp.beta + n as f64 * cp.nu;
    let num = unit_number(cp, y)?;
    let form_a = c * (cp.q.powf(y) + (1.0 + cp.p.powf(-cp.nu)) * num);
    let form_b = c * (cp.p.powf(-y) + (1.0 + cp.q.powf(cp.nu)) * num);
    Ok((form_a, form_b))
}

/// Energies of the first `levels` levels (form a).
pub fn casimir_spectrum(cp: &CasimirParams, levels: usize) -> Result<Vec<f64>> {
    (0..levels).map(|n| casimir_energy(cp, n).map(|(a, _)| a)).collect()
}

/// Deformed factorial [n]! = (1 + 2 gamma w^2)^n
/// prod_{k=1}^{n} (p^{-k nu} - q^{k nu}) / (p^{-nu} - q^nu)^n, written via
/// the double Pochhammer product with bases p^{-nu} and q^{nu}.
pub fn deformed_factorial(cp: &CasimirParams, n: usize) -> Result<f64> {
    let c = cp.scale();
    if c <= 0.0 {
        return Err(Error::NonPositiveStructureFunction(c));
    }
    let denom = cp.p.powf(-cp.nu) - cp.q.powf(cp.nu);
    if denom.abs() <= ZERO_TOL {
        return Err(Error::DegenerateDeformation);
    }
    let pb = cp.p.powf(-cp.nu);
    let qb = cp.q.powf(cp.nu);
    // Shift the k = 0 factor out: prod_{k=1}^{n} (pb^k - qb^k)
    // = double_pochhammer(pb, qb, pb, qb, n).
    Ok(c.powi(n as i32) * double_pochhammer(pb, qb, pb, qb, n) / denom.powi(n as i32))
}

/// Residual of the sign identity relating the order-(m+1) factorial ratio to
/// the unit deformed number: [m+1]!/[m]! = (1 + 2 gamma w^2) [ (m+1) nu ].
pub fn check_factorial_sign_identity(cp: &CasimirParams, m: usize) -> Result<f64> {
    let ratio = deformed_factorial(cp, m + 1)? / deformed_factorial(cp, m)?;
    let expected = cp.scale() * unit_number(cp, (m + 1) as f64 * cp.nu)?;
    Ok((ratio - expected).abs())
}

/// Residual suite for the Casimir specialization: both closed energy forms
/// against the generic two-number energy over a (beta, gamma) grid, the
/// factorial sign identity, and the reduction at gamma = 0, beta = 0.
pub fn casimir_suite(cp: &CasimirParams, tol: f64) -> Result<crate::report::VerificationReport> {
    let mut report = crate::report::VerificationReport::new(tol);

    // Form agreement over a parameter grid around the supplied point.
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    for beta_shift in [-0.3, 0.0, 0.3] {
        for gamma_scale in [0.0, 0.5, 1.0] {
            let grid = CasimirParams {
                beta: cp.beta + beta_shift,
                gamma: cp.gamma * gamma_scale,
                ..*cp
            };
            let params = effective_params(&grid)?;
            for n in 0..=50usize {
                let (a, b) = casimir_energy(&grid, n)?;
                let generic = crate::fockrep::energy(&params, n)?;
                let scale = generic.abs().max(1.0);
                for v in [a, b] {
                    max_abs = max_abs.max((v - generic).abs());
                    max_rel = max_rel.max((v - generic).abs() / scale);
                }
            }
        }
    }
    report.push_scalar_check(
        "casimir closed energy forms vs two-number energy",
        max_abs,
        max_rel,
        "n<=50, 3x3 (beta, gamma) grid",
    );

    // Factorial sign identity.
    let mut max_abs = 0.0f64;
    for m in 0..=8usize {
        max_abs = max_abs.max(check_factorial_sign_identity(cp, m)?);
    }
    report.push_scalar_check("casimir factorial sign identity", max_abs, max_abs, "m<=8");

    // gamma = 0, beta = 0 reduces to the phi1 = phi2 = 1 oscillator.
    let plain = CasimirParams { beta: 0.0, gamma: 0.0, ..*cp };
    let unit = DeformationParams::new(cp.p, cp.q, cp.nu, cp.nu, 1.0, 1.0, 0.0);
    let mut max_abs = 0.0f64;
    for n in 0..=30usize {
        let (a, _) = casimir_energy(&plain, n)?;
        max_abs = max_abs.max((a - crate::fockrep::energy(&unit, n)?).abs());
    }
    report.push_scalar_check("casimir reduction at beta = gamma = 0", max_abs, max_abs, "n<=30");

    // Energies scale linearly in (1 + 2 gamma w^2).
    let doubled = CasimirParams { gamma: 2.0 * cp.gamma, ..*cp };
    let mut max_abs = 0.0f64;
    for n in 0..=30usize {
        let (a, _) = casimir_energy(cp, n)?;
        let (a2, _) = casimir_energy(&doubled, n)?;
        let predicted = a / cp.scale() * doubled.scale();
        max_abs = max_abs.max((a2 - predicted).abs());
    }
    report.push_scalar_check(
        "casimir energy linear in structure-function scale",
        max_abs,
        max_abs,
        "n<=30",
    );

    Ok(report)
}
