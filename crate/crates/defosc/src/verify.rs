//! Numerical verification of the operator identities on a truncated
//! representation: defining relations, number commutators, twisted
//! commutators, and the closed-form ordering formulas.
//!
//! Operator-valued right sides are evaluated by substituting the diagonal of
//! N into scalar functions; shift operators are absorbed into shifted
//! exponents.  Printed closed forms that fail the matrix oracle are reported
//! as erratum candidates with the measured residual, never silently
//! corrected.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::fockrep::{self, FockRep};
use crate::params::{DeformationParams, Regime};
use crate::report::VerificationReport;

fn binom2(k: usize) -> f64 {
    (k as f64) * (k as f64 - 1.0) / 2.0
}

/// Defining relations aa^dagger - q^nu a^dagger a = phi1 p^{-alpha N} and
/// aa^dagger - p^{-nu} a^dagger a = phi2 q^{alpha N}, checked on the guarded
/// off-vacuum subspace; the vacuum-column defect is reported separately.
pub fn verify_defining_relations(rep: &FockRep, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new(tol);
    let p = rep.params;
    let aad = &rep.lowering * &rep.raising;
    let ada = &rep.raising * &rep.lowering;
    let d = rep.dim;

    type RhsFn = Box<dyn Fn(f64) -> f64>;
    let checks: [(&str, f64, RhsFn); 2] = [
        (
            "defining-relation-1: a a+ - q^nu a+ a = phi1 p^{-alpha N}",
            p.q.powf(p.nu),
            Box::new(move |x| p.phi1 * p.p.powf(-p.alpha * x)),
        ),
        (
            "defining-relation-2: a a+ - p^{-nu} a+ a = phi2 q^{alpha N}",
            p.p.powf(-p.nu),
            Box::new(move |x| p.phi2 * p.q.powf(p.alpha * x)),
        ),
    ];
    for (name, coeff, rhs_fn) in checks {
        let lhs = &aad - &(ada.clone() * coeff);
        let rhs = rep.diagonal_fn(&rhs_fn);
        // The subtraction can cancel many digits when the right side decays
        // while both products grow; take the backward error with respect to
        // the operand magnitudes on the checked columns.
        let operand_scale = (1..d - 1)
            .map(|j| aad[(j, j)].abs().max((ada[(j, j)] * coeff).abs()))
            .fold(0.0f64, f64::max);
        report.push_matrix_check_scaled(
            name,
            &lhs,
            &rhs,
            1..d - 1,
            1,
            "off-vacuum span{|1>..|D-2>}",
            operand_scale,
        );
        let defect = (lhs[(0, 0)] - rhs[(0, 0)]).abs();
        let scale = rhs[(0, 0)].abs().max(lhs[(0, 0)].abs());
        report.push_info(
            format!("{name} (vacuum column)"),
            defect,
            if scale > 0.0 { defect / scale } else { defect },
            "vacuum",
            "lowest-weight defect; vanishes when chi0 equals the vacuum-consistent value",
        );
    }
    report
}

/// Number commutators [N, a^dagger] = (nu/alpha) a^dagger and
/// [N, a] = -(nu/alpha) a; exact by construction of the diagonal N.
pub fn verify_number_relations(rep: &FockRep, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new(tol);
    let step = rep.params.nu / rep.params.alpha;
    let comm_up = &rep.number * &rep.raising - &rep.raising * &rep.number;
    let comm_dn = &rep.number * &rep.lowering - &rep.lowering * &rep.number;
    report.push_matrix_check(
        "number-relation: [N, a+] = (nu/alpha) a+",
        &comm_up,
        &(rep.raising.clone() * step),
        0..rep.dim,
        0,
        "full",
    );
    report.push_matrix_check(
        "number-relation: [N, a] = -(nu/alpha) a",
        &comm_dn,
        &(rep.lowering.clone() * -step),
        0..rep.dim,
        0,
        "full",
    );
    report
}

/// Twisted commutators [a, a+^{m+1}]_{q^nu} and [a, a+^{m+1}]_{p^{-nu}}
/// against the explicit a+^m-times-diagonal right sides, for each m in
/// 0..=m_max.
pub fn verify_twisted_commutators(rep: &FockRep, m_max: usize, tol: f64) -> Result<VerificationReport> {
    let d = rep.dim;
    if m_max + 2 > d - 1 {
        return Err(Error::GuardBandExceeded { needed: m_max + 2, available: d - 1 });
    }
    let p = rep.params;
    let mut report = VerificationReport::new(tol);
    let denom = p.p.powf(-p.nu) - p.q.powf(p.nu);
    for m in 0..=m_max {
        let apow = FockRep::matrix_power(&rep.raising, m + 1);
        let apow_m = FockRep::matrix_power(&rep.raising, m);
        for (twist_name, twist) in [("q^nu", p.q.powf(p.nu)), ("p^-nu", p.p.powf(-p.nu))] {
            let lhs = &rep.lowering * &apow - (&apow * &rep.lowering) * twist;
            let mshift = (m + 1) as f64 * p.nu;
            let rhs_diag = rep.diagonal_fn(|x| {
                (p.phi1 * p.p.powf(-p.alpha * x) * (p.p.powf(-mshift) - twist)
                    - p.phi2 * p.q.powf(p.alpha * x) * (p.q.powf(mshift) - twist))
                    / denom
            });
            let rhs = &apow_m * &rhs_diag;
            // Backward-error scale: the commutator subtracts two growing
            // products to a possibly small remainder.
            let term1 = &rep.lowering * &apow;
            let operand_scale = (1..d - 1 - m)
                .flat_map(|j| (0..d).map(move |i| (i, j)))
                .map(|(i, j)| term1[(i, j)].abs())
                .fold(0.0f64, f64::max);
            report.push_matrix_check_scaled(
                format!("twisted-commutator [a, a+^{}]_{{{twist_name}}}", m + 1),
                &lhs,
                &rhs,
                1..d - 1 - m,
                m + 2,
                "off-vacuum",
                operand_scale,
            );
        }
    }
    Ok(report)
}

/// Diagonal scalar factor of the regime-A ordering formulas: the n-th power
/// of the vacuum-shifted tau times the Pochhammer chain, at exponent x.
struct OrderingForms<'a> {
    rep: &'a FockRep,
}

impl<'a> OrderingForms<'a> {
    /// x-value entering the exponents at level k: alpha N_k = alpha chi0 + k nu.
    fn diag(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let p = &self.rep.params;
        self.rep.diagonal_fn(|nk| f(p.alpha * nk))
    }

    /// Regime A: prod_{k=0}^{count-1} (1 - r (pq)^{x + start + k step}).
    /// Regime B: prod (1 - r (pq)^{-(x + start + k step)}).
    fn poch(&self, x: f64, start: f64, step: f64, count: usize) -> f64 {
        let p = &self.rep.params;
        let pq = p.p * p.q;
        let r = p.structure_ratio(self.rep.regime);
        let mut acc = 1.0;
        for k in 0..count {
            let e = x + start + k as f64 * step;
            acc *= match self.rep.regime {
                Regime::A => 1.0 - r * pq.powf(e),
                Regime::B => 1.0 - r * pq.powf(-e),
            };
        }
        acc
    }

    /// tau-like factor at exponent x: regime A phi1 p^{-x-nu}/(p^{-nu}-q^nu),
    /// regime B phi2 q^{x+nu}/(q^nu - p^{-nu}).
    fn tau_at(&self, x: f64) -> f64 {
        let p = &self.rep.params;
        let denom = p.p.powf(-p.nu) - p.q.powf(p.nu);
        match self.rep.regime {
            Regime::A => p.phi1 * p.p.powf(-x - p.nu) / denom,
            Regime::B => p.phi2 * p.q.powf(x + p.nu) / -denom,
        }
    }

    fn prefactor(&self, sign: f64, k: usize) -> f64 {
        let p = &self.rep.params;
        match self.rep.regime {
            Regime::A => p.p.powf(sign * p.nu * binom2(k)),
            Regime::B => p.q.powf(-sign * p.nu * binom2(k)),
        }
    }

    /// Closed form for a^n a+^m with n <= m:
    /// prefactor * diag[tau(x)^n poch(x + nu .. step nu)_n] * a+^{m-n}.
    fn normal_low(&self, n: usize, m: usize) -> DMatrix<f64> {
        let nu = self.rep.params.nu;
        let diag = self.diag(|x| self.tau_at(x).powi(n as i32) * self.poch(x, nu, nu, n));
        let up = FockRep::matrix_power(&self.rep.raising, m - n);
        (&diag * &up) * self.prefactor(-1.0, n)
    }

    /// Closed form for a+^m a^n with n <= m: the same diagonal with every
    /// exponent shifted by -m nu (full-scope shift), times a+^{m-n}.
    /// `shift_poch` = false reproduces the printed narrow scope, where the
    /// shift touches only the tau factor.
    fn antinormal_low(&self, n: usize, m: usize, shift_poch: bool) -> DMatrix<f64> {
        let nu = self.rep.params.nu;
        let mshift = m as f64 * nu;
        let diag = self.diag(|x| {
            let px = if shift_poch { x - mshift } else { x };
            self.tau_at(x - mshift).powi(n as i32) * self.poch(px, nu, nu, n)
        });
        let up = FockRep::matrix_power(&self.rep.raising, m - n);
        (&diag * &up) * self.prefactor(-1.0, n)
    }

    /// Closed form for a^n a+^m with n >= m:
    /// prefactor * diag[(tau(x + n nu - nu))^m... ] * a^{n-m}; exponents carry
    /// the +n nu shift of the leading translation operator.
    fn normal_high(&self, n: usize, m: usize) -> DMatrix<f64> {
        let nu = self.rep.params.nu;
        let nshift = n as f64 * nu;
        let diag = self.diag(|x| {
            // tau factor reduced by the S^{-1} shift: phi1 p^{-x'}/(denom) at x' = x + n nu.
            self.tau_at(x + nshift - nu).powi(m as i32)
                * self.poch(x, nshift, -nu, m)
        });
        let dn = FockRep::matrix_power(&self.rep.lowering, n - m);
        (&diag * &dn) * self.prefactor(1.0, m)
    }

    /// Closed form for a+^m a^n with n >= m:
    /// prefactor * diag[(phi1 p^{-x}/denom)^m poch(x, 0, -nu)_m] * a^{n-m}.
    fn antinormal_high(&self, n: usize, m: usize) -> DMatrix<f64> {
        let nu = self.rep.params.nu;
        let diag = self.diag(|x| self.tau_at(x - nu).powi(m as i32) * self.poch(x, 0.0, -nu, m));
        let dn = FockRep::matrix_power(&self.rep.lowering, n - m);
        (&diag * &dn) * self.prefactor(1.0, m)
    }
}

/// Verify the closed forms for a^n a+^m and a+^m a^n against dense matrix
/// products, covering the n < m, n > m, and n = m cases.
pub fn verify_ordering_formulas(rep: &FockRep, n: usize, m: usize, tol: f64) -> Result<VerificationReport> {
    let d = rep.dim;
    if n + m > d - 1 {
        return Err(Error::GuardBandExceeded { needed: n + m, available: d - 1 });
    }
    let mut report = VerificationReport::new(tol);
    let forms = OrderingForms { rep };
    let lhs_na = FockRep::matrix_power(&rep.lowering, n) * FockRep::matrix_power(&rep.raising, m);
    let lhs_an = FockRep::matrix_power(&rep.raising, m) * FockRep::matrix_power(&rep.lowering, n);
    let guard = n + m;

    // a^n a+^m: columns s with s + m <= D - 1.
    let cols_na = 0..d - m;
    if n <= m {
        let rhs = forms.normal_low(n, m);
        report.push_matrix_check(
            format!("ordering a^{n} a+^{m} (n<=m closed form)"),
            &lhs_na,
            &rhs,
            cols_na.clone(),
            guard,
            "guarded",
        );
    }
    if n >= m {
        let rhs = forms.normal_high(n, m);
        report.push_matrix_check(
            format!("ordering a^{n} a+^{m} (n>=m closed form)"),
            &lhs_na,
            &rhs,
            cols_na,
            guard,
            "guarded",
        );
    }

    // a+^m a^n: columns s >= n (the lowering chain must not cross the
    // vacuum) and s - n + m <= D - 1.
    let hi = (d + n).saturating_sub(m).min(d);
    let cols_an = n..hi;
    if n <= m {
        let rhs = forms.antinormal_low(n, m, true);
        report.push_matrix_check(
            format!("ordering a+^{m} a^{n} (n<=m, full-scope shift)"),
            &lhs_an,
            &rhs,
            cols_an.clone(),
            guard,
            "off-vacuum guarded",
        );
        if m > n {
            // Printed scoping: the translation operator applied to the
            // tau factor only.  Measured, and flagged when it fails.
            let rhs_printed = forms.antinormal_low(n, m, false);
            report.push_matrix_check(
                format!("ordering a+^{m} a^{n} (n<=m, printed narrow-scope shift)"),
                &lhs_an,
                &rhs_printed,
                cols_an.clone(),
                guard,
                "off-vacuum guarded",
            );
            if !report.entries.last().unwrap().pass {
                report.flag_erratum(
                    "shift-operator scope ambiguity; the full-scope variant passes the matrix oracle",
                );
            }
        }
    }
    if n >= m {
        let rhs = forms.antinormal_high(n, m);
        report.push_matrix_check(
            format!("ordering a+^{m} a^{n} (n>=m closed form)"),
            &lhs_an,
            &rhs,
            cols_an,
            guard,
            "off-vacuum guarded",
        );
    }
    Ok(report)
}

/// The composed algebra suite for one parameter set: defining relations,
/// number relations, twisted commutators up to m = 5, ordering formulas on a
/// representative index set, and the regime-B printed-spectrum erratum
/// measurement.
pub fn algebra_suite(params: &DeformationParams, dim: usize, tol: f64) -> Result<VerificationReport> {
    let rep = fockrep::build_rep(params, dim)?;
    let mut report = verify_defining_relations(&rep, tol);
    report.merge(verify_number_relations(&rep, tol));
    report.merge(verify_twisted_commutators(&rep, 5, tol)?);
    for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2)] {
        report.merge(verify_ordering_formulas(&rep, n, m, tol)?);
    }
    if rep.regime == Regime::B {
        // Printed regime-B spectrum with the positive exponent, against the
        // product-eigenvalue truth.
        let mut max_abs = 0.0f64;
        let mut scale = 0.0f64;
        for n in 0..10 {
            let printed = fockrep::energy_regime_b_printed(params, n)?;
            let truth = fockrep::energy(params, n)?;
            max_abs = max_abs.max((printed - truth).abs());
            scale = scale.max(truth.abs());
        }
        report.push_scalar_check(
            "spectrum regime-B printed exponent sign",
            max_abs,
            max_abs / scale,
            "levels 0..9",
        );
        if !report.entries.last().unwrap().pass {
            report.flag_erratum(
                "printed (pq)^{+alpha chi0 + n nu} fails the matrix oracle; the negative-exponent variant passes",
            );
        }
    }
    Ok(report)
}
