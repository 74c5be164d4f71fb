//! Deformation parameter space: validation, regime classification, and the
//! duality transform.
//!
//! The tuple (p, q, alpha, nu, phi1, phi2, chi0) is the single source of
//! truth for every formula in the crate.  Two branches are admissible:
//!
//! * regime A: pq < 1 and phi2 <= phi1,
//! * regime B: pq > 1 and phi1 <= phi2.
//!
//! The strict inequalities are relaxed to admit phi1 = phi2 so the
//! undeformed and single-parameter limits stay reachable; validation checks
//! radicand positivity directly instead of trusting the inequality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries;

/// Absolute tolerance for "equals zero" comparisons (degeneracy checks).
pub const ZERO_TOL: f64 = 1e-12;

/// The admissible parameter branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// pq < 1, phi2 <= phi1.
    A,
    /// pq > 1, phi1 <= phi2.
    B,
}

/// The full deformation parameter tuple.
///
/// phi1 and phi2 are the structure functions evaluated at (p, q); they enter
/// every formula only through their values, never symbolically.  chi0 is the
/// N-eigenvalue of the vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationParams {
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub nu: f64,
    pub phi1: f64,
    pub phi2: f64,
    #[serde(default)]
    pub chi0: f64,
}

/// Outcome of [`validate`]: the regime tag plus the two quantities that
/// decide whether a truncated representation can be built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    pub regime: Regime,
    /// Minimum over levels 1..=max_level of the square-root argument in the
    /// ladder coefficients.  Must stay strictly positive.
    pub radicand_floor: f64,
    /// |lambda_0|, the a^dagger a eigenvalue on the vacuum.  Zero exactly
    /// when chi0 equals the vacuum-consistent value.
    pub vacuum_defect: f64,
}

impl DeformationParams {
    pub fn new(p: f64, q: f64, alpha: f64, nu: f64, phi1: f64, phi2: f64, chi0: f64) -> Self {
        Self { p, q, alpha, nu, phi1, phi2, chi0 }
    }

    /// Basic positivity and finiteness of each field.
    pub fn check_fields(&self) -> Result<()> {
        let pos = [
            (self.p, "p"),
            (self.q, "q"),
            (self.alpha, "alpha"),
            (self.nu, "nu"),
            (self.phi1, "phi1"),
            (self.phi2, "phi2"),
        ];
        for (v, name) in pos {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !self.chi0.is_finite() {
            return Err(Error::InvalidParameter(format!("chi0 must be finite, got {}", self.chi0)));
        }
        Ok(())
    }

    /// The ratio of structure functions used in the Pochhammer arguments:
    /// phi2/phi1 in regime A, phi1/phi2 in regime B.
    pub fn structure_ratio(&self, regime: Regime) -> f64 {
        match regime {
            Regime::A => self.phi2 / self.phi1,
            Regime::B => self.phi1 / self.phi2,
        }
    }
}

/// Classify the parameter set into regime A or B.
pub fn classify_regime(params: &DeformationParams) -> Result<Regime> {
    params.check_fields()?;
    let pq = params.p * params.q;
    if ((pq).powf(params.nu) - 1.0).abs() <= ZERO_TOL {
        return Err(Error::DegenerateDeformation);
    }
    if pq < 1.0 && params.phi2 <= params.phi1 {
        Ok(Regime::A)
    } else if pq > 1.0 && params.phi1 <= params.phi2 {
        Ok(Regime::B)
    } else {
        Err(Error::NoAdmissibleRegime)
    }
}

/// Radicand of the ladder coefficient at level n (the square-root argument).
///
/// Regime A: 1 - (phi2/phi1) (pq)^{alpha chi0 + n nu};
/// regime B: 1 - (phi1/phi2) (pq)^{-alpha chi0 - n nu}.
pub fn ladder_radicand(params: &DeformationParams, regime: Regime, n: usize) -> f64 {
    let pq = params.p * params.q;
    let x = params.alpha * params.chi0 + n as f64 * params.nu;
    match regime {
        Regime::A => 1.0 - params.structure_ratio(Regime::A) * pq.powf(x),
        Regime::B => 1.0 - params.structure_ratio(Regime::B) * pq.powf(-x),
    }
}

/// Validate a parameter set for construction of a representation with
/// `max_level` ladder steps.
pub fn validate(params: &DeformationParams, max_level: usize) -> Result<ValidationReport> {
    let regime = classify_regime(params)?;
    let mut floor = f64::INFINITY;
    let mut floor_level = 0;
    for n in 1..=max_level {
        let r = ladder_radicand(params, regime, n);
        if r < floor {
            floor = r;
            floor_level = n;
        }
    }
    if max_level >= 1 && floor <= 0.0 {
        return Err(Error::NegativeRadicand { level: floor_level, value: floor });
    }
    let vacuum_defect = qseries::deformed_number(params.alpha * params.chi0, params)?.abs();
    Ok(ValidationReport {
        regime,
        radicand_floor: if max_level == 0 { f64::INFINITY } else { floor },
        vacuum_defect,
    })
}

/// The duality map p -> 1/q, q -> 1/p, phi1 <-> phi2.
///
/// An involution on valid parameter sets; swaps regimes A and B and leaves
/// the spectrum invariant.
pub fn dual(params: &DeformationParams) -> DeformationParams {
    DeformationParams {
        p: 1.0 / params.q,
        q: 1.0 / params.p,
        alpha: params.alpha,
        nu: params.nu,
        phi1: params.phi2,
        phi2: params.phi1,
        chi0: params.chi0,
    }
}

/// The unique chi0 making the a^dagger a eigenvalue on the vacuum exactly
/// zero: chi0* = ln(phi1/phi2) / (alpha ln(pq)).
pub fn vacuum_consistent_chi0(params: &DeformationParams) -> Result<f64> {
    params.check_fields()?;
    if params.phi1 == params.phi2 {
        return Ok(0.0);
    }
    let pq = params.p * params.q;
    if (pq - 1.0).abs() <= ZERO_TOL {
        return Err(Error::DegenerateDeformation);
    }
    Ok((params.phi1 / params.phi2).ln() / (params.alpha * pq.ln()))
}
