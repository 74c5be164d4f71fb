//! Closed-form matrix elements of normal (a+^m a^n) and antinormal
//! (a^n a+^m) operator products, coherent-state expectations, and the dense
//! matrix oracle they are checked against.
//!
//! The closed forms follow the chi0 = 0, nu = alpha convention.  Regime B is
//! evaluated by applying the regime-A forms to the dual parameter set, which
//! reproduces the printed regime-B displays exactly for n <= m.  The printed
//! n > m displays are kept as separate functions for erratum measurement:
//! they disagree with the matrix oracle, and the extension of the n <= m
//! forms (equivalently, hermitian transposition) is the resolved variant.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::coherent_state;
use crate::error::{Error, Result};
use crate::fockrep::{normalization_constant, FockRep};
use crate::params::{classify_regime, dual, DeformationParams, Regime};
use crate::qseries::pochhammer_real;

/// Operator ordering of the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorOrdering {
    /// a+^m a^n.
    Normal,
    /// a^n a+^m.
    Antinormal,
}

/// A matrix-element request <r| . |s> for exponents (m, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixElementQuery {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub ordering: OperatorOrdering,
}

impl MatrixElementQuery {
    /// Kronecker-delta selector: nonzero elements require r + n = s + m.
    pub fn delta_satisfied(&self) -> bool {
        self.r + self.n == self.s + self.m
    }
}

fn require_convention(params: &DeformationParams) -> Result<()> {
    if params.chi0 != 0.0 || params.nu != params.alpha {
        return Err(Error::ConventionViolation(format!(
            "matrix elements require chi0 = 0 and nu = alpha, got chi0 = {}, nu = {}, alpha = {}",
            params.chi0, params.nu, params.alpha
        )));
    }
    Ok(())
}

/// Regime-A normal-form scalar <s+m-n| a+^m a^n |s> for s >= n.
fn normal_form_a(p: &DeformationParams, m: usize, n: usize, s: usize) -> Result<f64> {
    let nu = p.nu;
    let pq = p.p * p.q;
    let r = p.phi2 / p.phi1;
    let cs = normalization_constant(p, s)?;
    let ct = normalization_constant(p, m + s - n)?;
    let binom = n as f64 * (n as f64 - 1.0) / 2.0;
    Ok(cs / ct
        * p.p.powf(nu * binom)
        * (p.phi1 * p.p.powf((1.0 - s as f64) * nu) / (1.0 - pq.powf(nu))).powi(n as i32)
        * pochhammer_real(r * pq.powf(s as f64 * nu), pq.powf(-nu), n))
}

/// Regime-A antinormal-form scalar <s+m-n| a^n a+^m |s> for s + m >= n.
fn antinormal_form_a(p: &DeformationParams, m: usize, n: usize, s: usize) -> Result<f64> {
    let nu = p.nu;
    let pq = p.p * p.q;
    let r = p.phi2 / p.phi1;
    let cs = normalization_constant(p, s)?;
    let ct = normalization_constant(p, m + s - n)?;
    let binom = n as f64 * (n as f64 - 1.0) / 2.0;
    Ok(cs / ct
        * p.p.powf(nu * binom)
        * (p.phi1 * p.p.powf((1.0 - (s + m) as f64) * nu) / (1.0 - pq.powf(nu))).powi(n as i32)
        * pochhammer_real(r * pq.powf((s + m) as f64 * nu), pq.powf(-nu), n))
}

/// Closed-form matrix element (resolved variants, valid for all m, n).
///
/// Returns zero when the Kronecker delta is unsatisfied or the lowering
/// chain crosses the vacuum.
pub fn matrix_element(params: &DeformationParams, query: &MatrixElementQuery) -> Result<f64> {
    require_convention(params)?;
    let regime = classify_regime(params)?;
    if !query.delta_satisfied() {
        return Ok(0.0);
    }
    let p = match regime {
        Regime::A => *params,
        Regime::B => dual(params),
    };
    match query.ordering {
        OperatorOrdering::Normal => {
            if query.s < query.n {
                Ok(0.0)
            } else {
                normal_form_a(&p, query.m, query.n, query.s)
            }
        }
        OperatorOrdering::Antinormal => {
            if query.s + query.m < query.n {
                Ok(0.0)
            } else {
                antinormal_form_a(&p, query.m, query.n, query.s)
            }
        }
    }
}

/// Printed n > m closed forms, exactly as displayed, for erratum
/// measurement.  Regime A normal: C_r / C_{r+n-m} p^{-nu binom(m,2)}
/// (phi1 p^{(n-s)nu}/(1-(pq)^nu))^n (r (pq)^{(s-m+1)nu}; (pq)^nu)_m; the
/// other three branches mirror per their displays.
pub fn matrix_element_printed_high_n(
    params: &DeformationParams,
    query: &MatrixElementQuery,
) -> Result<f64> {
    require_convention(params)?;
    let regime = classify_regime(params)?;
    if query.n <= query.m {
        return Err(Error::ConventionViolation("printed variant covers n > m only".into()));
    }
    if !query.delta_satisfied() {
        return Ok(0.0);
    }
    let (m, n, r_idx, s) = (query.m, query.n, query.r, query.s);
    let nu = params.nu;
    let pq = params.p * params.q;
    let binom_m = m as f64 * (m as f64 - 1.0) / 2.0;
    match (regime, query.ordering) {
        (Regime::A, OperatorOrdering::Normal) => {
            let ratio = params.phi2 / params.phi1;
            let cr = normalization_constant(params, r_idx)?;
            let ct = normalization_constant(params, r_idx + n - m)?;
            Ok(cr / ct
                * params.p.powf(-nu * binom_m)
                * (params.phi1 * params.p.powf((n as f64 - s as f64) * nu) / (1.0 - pq.powf(nu)))
                    .powi(n as i32)
                * pochhammer_real(
                    ratio * pq.powf((s as f64 - m as f64 + 1.0) * nu),
                    pq.powf(nu),
                    m,
                ))
        }
        (Regime::A, OperatorOrdering::Antinormal) => {
            let ratio = params.phi2 / params.phi1;
            let cs = normalization_constant(params, s)?;
            let ct = normalization_constant(params, r_idx + n - m)?;
            Ok(cs / ct
                * params.p.powf(-nu * binom_m)
                * (params.phi1 * params.p.powf(-(s as f64) * nu) / (1.0 - pq.powf(nu)))
                    .powi(n as i32)
                * pochhammer_real(ratio * pq.powf((s as f64 + 1.0) * nu), pq.powf(nu), m))
        }
        (Regime::B, OperatorOrdering::Normal) => {
            let ratio = params.phi1 / params.phi2;
            let d = dual(params);
            let cr = normalization_constant(&d, r_idx)?;
            let ct = normalization_constant(&d, r_idx + n - m)?;
            Ok(cr / ct
                * params.q.powf(nu * binom_m)
                * (params.phi2 * params.q.powf((s as f64 - n as f64) * nu)
                    / (1.0 - pq.powf(-nu)))
                .powi(n as i32)
                * pochhammer_real(
                    ratio * pq.powf((n as f64 - s as f64 - 1.0) * nu),
                    pq.powf(-nu),
                    m,
                ))
        }
        (Regime::B, OperatorOrdering::Antinormal) => {
            let ratio = params.phi1 / params.phi2;
            let d = dual(params);
            let cs = normalization_constant(&d, s)?;
            let ct = normalization_constant(&d, r_idx + n - m)?;
            Ok(cs / ct
                * params.q.powf(nu * binom_m)
                * (params.phi2 * params.q.powf(s as f64 * nu) / (1.0 - pq.powf(-nu)))
                    .powi(n as i32)
                * pochhammer_real(ratio * pq.powf(-(s as f64 + 1.0) * nu), pq.powf(-nu), m))
        }
    }
}

/// Brute-force <r| . |s> by dense matrix products on a truncated
/// representation.
pub fn oracle_matrix_element(rep: &FockRep, query: &MatrixElementQuery) -> Result<f64> {
    let needed = query.m + query.n + query.r.max(query.s);
    if needed > rep.dim - 1 {
        return Err(Error::GuardBandExceeded { needed, available: rep.dim - 1 });
    }
    let up = FockRep::matrix_power(&rep.raising, query.m);
    let dn = FockRep::matrix_power(&rep.lowering, query.n);
    let product = match query.ordering {
        OperatorOrdering::Normal => &up * &dn,
        OperatorOrdering::Antinormal => &dn * &up,
    };
    Ok(product[(query.r, query.s)])
}

/// Coherent-state expectation <z| a+^m a^n |z> (normal) or <z| a^n a+^m |z>
/// (antinormal), evaluated as the quadratic form of the closed-form element
/// band over the truncated coherent coefficient vector.
pub fn expectation(
    params: &DeformationParams,
    z: Complex64,
    m: usize,
    n: usize,
    ordering: OperatorOrdering,
    terms: usize,
) -> Result<Complex64> {
    let state = coherent_state(params, z, terms, 1e-15)?;
    let v = state.normalized_coefficients();
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..v.len() {
        let r = s + m;
        let r = match r.checked_sub(n) {
            Some(r) => r,
            None => continue,
        };
        if r >= v.len() {
            continue;
        }
        let elem = matrix_element(params, &MatrixElementQuery { m, n, r, s, ordering })?;
        acc += v[r].conj() * v[s] * elem;
    }
    Ok(acc)
}

/// Residual suite: closed-form elements against the dense oracle over a
/// sweep of exponents and indices, printed n > m branches as erratum
/// measurements, and normal-ordered coherent expectations against
/// conj(z)^m z^n.
pub fn correlator_suite(
    params: &DeformationParams,
    dim: usize,
    tol: f64,
) -> Result<crate::report::VerificationReport> {
    let mut report = crate::report::VerificationReport::new(tol);
    let rep = crate::fockrep::build_rep(params, dim)?;
    let index_cap = (dim.saturating_sub(8)).min(10);

    for ordering in [OperatorOrdering::Normal, OperatorOrdering::Antinormal] {
        let mut max_abs = 0.0f64;
        let mut max_rel = 0.0f64;
        for m in 0..=6usize {
            for n in 0..=6 - m {
                for s in 0..=index_cap {
                    let r = match (s + m).checked_sub(n) {
                        Some(r) if r <= index_cap => r,
                        _ => continue,
                    };
                    let q = MatrixElementQuery { m, n, r, s, ordering };
                    let closed = matrix_element(params, &q)?;
                    let oracle = oracle_matrix_element(&rep, &q)?;
                    let abs = (closed - oracle).abs();
                    max_abs = max_abs.max(abs);
                    max_rel = max_rel.max(abs / oracle.abs().max(1.0));
                }
            }
        }
        let name = match ordering {
            OperatorOrdering::Normal => "matrix-elements normal closed vs oracle",
            OperatorOrdering::Antinormal => "matrix-elements antinormal closed vs oracle",
        };
        report.push_scalar_check(name, max_abs, max_rel, "m+n<=6, indices<=10");
    }

    // Printed n > m branches: measured against the oracle and flagged.
    for ordering in [OperatorOrdering::Normal, OperatorOrdering::Antinormal] {
        let mut max_rel = 0.0f64;
        let mut max_abs = 0.0f64;
        for s in 2..=index_cap.min(6) {
            let q = MatrixElementQuery { m: 1, n: 2, r: s - 1, s, ordering };
            let printed = matrix_element_printed_high_n(params, &q)?;
            let oracle = oracle_matrix_element(&rep, &q)?;
            let abs = (printed - oracle).abs();
            max_abs = max_abs.max(abs);
            max_rel = max_rel.max(abs / oracle.abs().max(1.0));
        }
        let name = match ordering {
            OperatorOrdering::Normal => "matrix-elements normal printed high-n form",
            OperatorOrdering::Antinormal => "matrix-elements antinormal printed high-n form",
        };
        report.push_scalar_check(name, max_abs, max_rel, "m=1, n=2, indices<=6");
        if max_rel > tol {
            report.flag_erratum(
                "printed n>m display disagrees with the matrix oracle; best-fit \
                 variant: extend the n<=m closed form (equivalently take the \
                 hermitian transpose), as matrix_element does",
            );
        }
    }

    // Normal-ordered expectations factorize on eigenstates of a.
    let mut max_abs = 0.0f64;
    let z = Complex64::new(0.4, 0.3);
    for (m, n) in [(1, 0), (1, 1), (2, 1), (2, 3), (3, 3)] {
        let e = expectation(params, z, m, n, OperatorOrdering::Normal, dim.saturating_sub(8))?;
        let expect = z.conj().powu(m as u32) * z.powu(n as u32);
        max_abs = max_abs.max((e - expect).norm());
    }
    report.push_scalar_check(
        "coherent normal-ordered expectation factorization",
        max_abs,
        max_abs,
        "z = 0.4+0.3i, m+n<=6",
    );

    Ok(report)
}
