//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by parameter validation, series evaluation, and
/// representation construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// (pq)^nu = 1 within machine tolerance; the deformed-number
    /// denominator p^{-nu} - q^nu vanishes.
    #[error("degenerate deformation: (pq)^nu = 1, deformed-number denominator vanishes")]
    DegenerateDeformation,

    /// Neither branch condition (pq < 1 with phi2 <= phi1, or pq > 1 with
    /// phi1 <= phi2) holds.
    #[error("no admissible regime: need pq < 1 with phi2 <= phi1, or pq > 1 with phi1 <= phi2")]
    NoAdmissibleRegime,

    /// A ladder radicand is nonpositive; no representation of the requested
    /// dimension exists.
    #[error("negative radicand at level {level}: value {value:.6e}, representation impossible")]
    NegativeRadicand { level: usize, value: f64 },

    /// Series did not reach the requested tolerance within the term budget.
    #[error("series did not converge: {terms} terms, last term magnitude {estimate:.6e} >= tol {tol:.6e}")]
    NonConvergence { terms: usize, estimate: f64, tol: f64 },

    /// ((p,q);(p,q))_k vanishes for some k below the requested order.
    #[error("vanishing denominator: p^{{k+1}} = q^{{k+1}} at k = {k}")]
    VanishingDenominator { k: usize },

    /// An identity check would touch truncation-corrupted top levels.
    #[error("guard band exceeded: identity needs {needed} levels but only {available} are guarded")]
    GuardBandExceeded { needed: usize, available: usize },

    /// An operation restricted to the chi0 = 0, nu = alpha convention was
    /// called with other values.
    #[error("convention violation: {0}")]
    ConventionViolation(String),

    /// 1 + 2*gamma*omega2 <= 0; the Casimir-modulated structure functions
    /// are not positive.
    #[error("nonpositive structure function: 1 + 2*gamma*omega2 = {0:.6e}")]
    NonPositiveStructureFunction(f64),

    /// A parameter failed its positivity constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
