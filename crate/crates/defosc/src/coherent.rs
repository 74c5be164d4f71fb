//! Deformed coherent states: construction, eigenstate residual, overlap,
//! continuity, and the resolution-of-unity target moments.
//!
//! Everything here uses the chi0 = 0, nu = alpha convention of the coherent
//! state construction; other values raise `ConventionViolation`.  The weight
//! solving the moment problem is not computed, only its target moments.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fockrep::{normalization_constant, FockRep};
use crate::params::{classify_regime, DeformationParams, Regime};
use crate::qseries::{self, deformed_exponential_complex};

/// Truncated coefficient vector of |z> with its normalization.
#[derive(Debug, Clone)]
pub struct CoherentState {
    pub z: Complex64,
    /// Number of retained coefficients.
    pub terms: usize,
    /// c_n = C_n z^n, before normalization; coefficients[0] = 1.
    pub coefficients: Vec<Complex64>,
    /// Partial sum of N_nu(|z|^2).
    pub normalization: f64,
    /// Magnitude of the first omitted |c_n|^2 term.
    pub truncation_estimate: f64,
    pub params: DeformationParams,
}

fn require_convention(params: &DeformationParams) -> Result<()> {
    if params.chi0 != 0.0 || params.nu != params.alpha {
        return Err(Error::ConventionViolation(format!(
            "coherent states require chi0 = 0 and nu = alpha, got chi0 = {}, nu = {}, alpha = {}",
            params.chi0, params.nu, params.alpha
        )));
    }
    Ok(())
}

/// Build the truncated coherent state |z>.
///
/// The retained length is the smaller of `terms` and the level where the
/// term magnitude |C_n z^n|^2 drops below 1e-16 relative to the running sum.
pub fn coherent_state(
    params: &DeformationParams,
    z: Complex64,
    terms: usize,
    tol: f64,
) -> Result<CoherentState> {
    require_convention(params)?;
    classify_regime(params)?;
    if terms == 0 {
        return Err(Error::InvalidParameter("coherent state needs at least one term".into()));
    }
    let mut coefficients = Vec::with_capacity(terms);
    let mut sum_sq = 0.0;
    let mut tail = 0.0;
    for n in 0..terms {
        let cn = normalization_constant(params, n)?;
        let coeff = z.powu(n as u32) * cn;
        let mag_sq = coeff.norm_sqr();
        if n > 0 && mag_sq < 1e-16 * sum_sq {
            tail = mag_sq;
            break;
        }
        coefficients.push(coeff);
        sum_sq += mag_sq;
    }
    let norm = deformed_exponential_complex(
        Complex64::new(z.norm_sqr(), 0.0),
        params,
        tol,
        qseries::DEFAULT_MAX_TERMS,
    )?;
    Ok(CoherentState {
        z,
        terms: coefficients.len(),
        coefficients,
        normalization: norm.value.re,
        truncation_estimate: tail.max(norm.truncation_estimate),
        params: *params,
    })
}

impl CoherentState {
    /// Normalized coefficient vector v with ||v|| = 1 up to truncation.
    pub fn normalized_coefficients(&self) -> Vec<Complex64> {
        let scale = 1.0 / self.normalization.sqrt();
        self.coefficients.iter().map(|c| c * scale).collect()
    }
}

/// ||a v - z v|| / ||v|| on the truncated space, excluding the top retained
/// component (guard band 1), where v is the normalized coefficient vector.
pub fn eigen_residual(rep: &FockRep, state: &CoherentState) -> Result<f64> {
    if state.terms > rep.dim - 1 {
        return Err(Error::GuardBandExceeded { needed: state.terms, available: rep.dim - 1 });
    }
    let v = &state.coefficients;
    let mut norm_sq = 0.0;
    let mut res_sq = 0.0;
    for n in 0..v.len() {
        norm_sq += v[n].norm_sqr();
        // (a v)_n = down(n+1) v_{n+1}; the top retained component feeds from
        // a truncated coefficient and is excluded.
        if n + 1 < v.len() {
            let w = v[n + 1] * rep.ladder.down(n + 1) - state.z * v[n];
            res_sq += w.norm_sqr();
        }
    }
    Ok((res_sq / norm_sq).sqrt())
}

/// Overlap <z2|z1> = N_nu(z1 conj(z2)) / sqrt(N_nu(|z1|^2) N_nu(|z2|^2)),
/// by series evaluation with a complex argument.
pub fn overlap(
    params: &DeformationParams,
    z1: Complex64,
    z2: Complex64,
    tol: f64,
) -> Result<Complex64> {
    require_convention(params)?;
    let max = qseries::DEFAULT_MAX_TERMS;
    let cross = deformed_exponential_complex(z1 * z2.conj(), params, tol, max)?.value;
    let n1 = deformed_exponential_complex(Complex64::new(z1.norm_sqr(), 0.0), params, tol, max)?
        .value
        .re;
    let n2 = deformed_exponential_complex(Complex64::new(z2.norm_sqr(), 0.0), params, tol, max)?
        .value
        .re;
    Ok(cross / (n1 * n2).sqrt())
}

/// Overlap by direct inner product of truncated coefficient vectors; oracle
/// for [`overlap`].
pub fn overlap_via_vectors(
    params: &DeformationParams,
    z1: Complex64,
    z2: Complex64,
    terms: usize,
    tol: f64,
) -> Result<Complex64> {
    let s1 = coherent_state(params, z1, terms, tol)?;
    let s2 = coherent_state(params, z2, terms, tol)?;
    let v1 = s1.normalized_coefficients();
    let v2 = s2.normalized_coefficients();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..v1.len().min(v2.len()) {
        acc += v2[n].conj() * v1[n];
    }
    Ok(acc)
}

/// The distance ||(z + dz)> - |z>|| computed two ways.
#[derive(Debug, Clone, Copy)]
pub struct ContinuityCheck {
    /// Direct truncated-vector difference.
    pub modulus_vector: f64,
    /// sqrt(2 (1 - Re <z'|z>)) from the overlap formula.
    pub modulus_overlap: f64,
}

/// Continuity modulus at z for a displacement dz.
pub fn continuity_modulus(
    params: &DeformationParams,
    z: Complex64,
    dz: Complex64,
    terms: usize,
    tol: f64,
) -> Result<ContinuityCheck> {
    let s1 = coherent_state(params, z, terms, tol)?;
    let s2 = coherent_state(params, z + dz, terms, tol)?;
    let v1 = s1.normalized_coefficients();
    let v2 = s2.normalized_coefficients();
    let mut diff_sq = 0.0;
    for n in 0..v1.len().max(v2.len()) {
        let a = v1.get(n).copied().unwrap_or_default();
        let b = v2.get(n).copied().unwrap_or_default();
        diff_sq += (b - a).norm_sqr();
    }
    let ov = overlap(params, z + dz, z, tol)?;
    let modulus_overlap = (2.0 * (1.0 - ov.re)).max(0.0).sqrt();
    Ok(ContinuityCheck { modulus_vector: diff_sq.sqrt(), modulus_overlap })
}

/// Residual suite for coherent states: eigenvector residuals and overlap
/// series-vs-vector agreement over a z grid, and moment/normalization
/// reciprocity.
pub fn coherent_suite(
    params: &DeformationParams,
    dim: usize,
    tol: f64,
) -> Result<crate::report::VerificationReport> {
    let mut report = crate::report::VerificationReport::new(tol);
    let rep = crate::fockrep::build_rep(params, dim)?;
    let terms = dim - 1;
    let series_tol = 1e-15;

    let grid: Vec<Complex64> = (0..5)
        .flat_map(|i| (0..5).map(move |j| (i, j)))
        .map(|(i, j)| Complex64::new(-0.8 + 0.4 * i as f64, -0.8 + 0.4 * j as f64))
        .collect();

    let mut max_eigen = 0.0f64;
    let mut max_overlap = 0.0f64;
    for &z in &grid {
        let state = coherent_state(params, z, terms, series_tol)?;
        max_eigen = max_eigen.max(eigen_residual(&rep, &state)?);
        let series = overlap(params, z, Complex64::new(0.3, -0.2), series_tol)?;
        let vectors = overlap_via_vectors(params, z, Complex64::new(0.3, -0.2), terms, series_tol)?;
        max_overlap = max_overlap.max((series - vectors).norm());
    }
    report.push_scalar_check(
        "coherent eigenvector residual ||a|z> - z|z>||",
        max_eigen,
        max_eigen,
        "5x5 z grid, |z| <= 1.2",
    );
    report.push_scalar_check(
        "coherent overlap series vs truncated vectors",
        max_overlap,
        max_overlap,
        "5x5 z grid vs z = 0.3-0.2i",
    );

    // Moments are reciprocal normalization constants: moment_n * C_n^2 = 1.
    let mut max_abs = 0.0f64;
    for n in 0..=20usize {
        let c = crate::fockrep::normalization_constant(params, n)?;
        max_abs = max_abs.max((target_moments(params, n)? * c * c - 1.0).abs());
    }
    report.push_scalar_check(
        "weight moments reciprocal to squared normalization constants",
        max_abs,
        max_abs,
        "n<=20",
    );

    // Continuity: halving the displacement roughly halves both distance
    // measures, and the two measures agree.
    let z = Complex64::new(0.5, 0.2);
    let dz = Complex64::new(0.02, -0.01);
    let full = continuity_modulus(params, z, dz, terms, series_tol)?;
    let half = continuity_modulus(params, z, dz * 0.5, terms, series_tol)?;
    let agree = (full.modulus_vector - full.modulus_overlap).abs();
    report.push_scalar_check(
        "continuity distance: vector vs overlap formula",
        agree,
        agree / full.modulus_vector.max(f64::MIN_POSITIVE),
        "z = 0.5+0.2i, |dz| ~ 0.02",
    );
    let ratio = half.modulus_vector / full.modulus_vector.max(f64::MIN_POSITIVE);
    report.push_info(
        "continuity modulus halving ratio",
        (ratio - 0.5).abs(),
        (ratio - 0.5).abs(),
        "z = 0.5+0.2i",
        format!("distance ratio under dz -> dz/2 is {ratio:.6} (expected near 0.5)"),
    );

    Ok(report)
}

/// Target moment of the resolution-of-unity weight:
/// regime A: p^{-nu n(n-1)/2} (r (pq)^nu; (pq)^nu)_n (phi1/(1-(pq)^nu))^n;
/// regime B mirrors.  Equals 1/C_n^2.
pub fn target_moments(params: &DeformationParams, n: usize) -> Result<f64> {
    require_convention(params)?;
    let regime = classify_regime(params)?;
    let nu = params.nu;
    let pq = params.p * params.q;
    let r = params.structure_ratio(regime);
    let half = n as f64 * (n as f64 - 1.0) / 2.0;
    Ok(match regime {
        Regime::A => {
            params.p.powf(-nu * half)
                * qseries::pochhammer_real(r * pq.powf(nu), pq.powf(nu), n)
                * (params.phi1 / (1.0 - pq.powf(nu))).powi(n as i32)
        }
        Regime::B => {
            params.q.powf(nu * half)
                * qseries::pochhammer_real(r * pq.powf(-nu), pq.powf(-nu), n)
                * (params.phi2 / (1.0 - pq.powf(-nu))).powi(n as i32)
        }
    })
}
