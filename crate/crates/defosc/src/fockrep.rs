//! Truncated Fock-space matrix representations of a, a^dagger, N, their
//! spectra, and normalization constants.
//!
//! Conventions:
//!
//! * Lowest weight: a|0> = 0.  When chi0 differs from the vacuum-consistent
//!   value the formal a^dagger a eigenvalue on |0> is nonzero; the matrix
//!   annihilates the vacuum anyway and the defect is measured, not hidden.
//! * N|n> = (chi0 + n nu/alpha)|n>, so that p^{-alpha N}|n> = p^{-alpha chi0 - n nu}|n>
//!   and [N, a^dagger] = (nu/alpha) a^dagger hold exactly on the truncated
//!   space.
//! * Guard band: an identity involving g ladder steps in total is checked
//!   only on basis indices n with n + g <= D - 1.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{classify_regime, ladder_radicand, validate, DeformationParams, Regime};
use crate::qseries::{self, deformed_number, tau};

/// Per-level ladder coefficients of a truncated representation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderCoefficients {
    /// Coefficient of |n-1> in a|n>, for n = 1..=max_level.
    /// `down[0]` corresponds to n = 1.
    pub down: Vec<f64>,
}

impl LadderCoefficients {
    /// Coefficient of |n-1> in a|n>.
    pub fn down(&self, n: usize) -> f64 {
        assert!(n >= 1, "a|0> = 0 has no ladder coefficient");
        self.down[n - 1]
    }

    /// Coefficient of |n+1> in a^dagger|n>; equals down(n+1) by hermiticity.
    pub fn up(&self, n: usize) -> f64 {
        self.down(n + 1)
    }
}

/// Dense truncated representation on dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockRep {
    pub dim: usize,
    /// a: nonzero only on the first superdiagonal.
    pub lowering: DMatrix<f64>,
    /// a^dagger = transpose(a).
    pub raising: DMatrix<f64>,
    /// N = diag(chi0 + n nu/alpha).
    pub number: DMatrix<f64>,
    pub params: DeformationParams,
    pub regime: Regime,
    pub ladder: LadderCoefficients,
}

/// Compute the ladder coefficients for levels 1..=max_level from the
/// regime-appropriate branch.
///
/// Regime A: a|n> = sqrt(tau) p^{-(n-1)nu/2} sqrt(1 - (phi2/phi1)(pq)^{alpha chi0 + n nu}) |n-1>;
/// regime B mirrors with q^{(n-1)nu/2} and the inverse ratio.  In both
/// branches down(n)^2 equals the deformed number at alpha chi0 + n nu.
pub fn ladder_coefficients(params: &DeformationParams, max_level: usize) -> Result<LadderCoefficients> {
    let report = validate(params, max_level)?;
    let regime = report.regime;
    let t = tau(params)?;
    let mut down = Vec::with_capacity(max_level);
    for n in 1..=max_level {
        let radicand = ladder_radicand(params, regime, n);
        if radicand <= 0.0 {
            return Err(Error::NegativeRadicand { level: n, value: radicand });
        }
        let prefactor = match regime {
            Regime::A => params.p.powf(-((n - 1) as f64) * params.nu / 2.0),
            Regime::B => params.q.powf((n - 1) as f64 * params.nu / 2.0),
        };
        down.push(t.sqrt() * prefactor * radicand.sqrt());
    }
    Ok(LadderCoefficients { down })
}

/// Build the dense truncated representation of dimension `dim`.
pub fn build_rep(params: &DeformationParams, dim: usize) -> Result<FockRep> {
    if dim < 1 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    let regime = classify_regime(params)?;
    let ladder = ladder_coefficients(params, dim.saturating_sub(1))?;
    let mut lowering = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        lowering[(n - 1, n)] = ladder.down(n);
    }
    let raising = lowering.transpose();
    let step = params.nu / params.alpha;
    let number = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        (0..dim).map(|n| params.chi0 + n as f64 * step),
    ));
    Ok(FockRep { dim, lowering, raising, number, params: *params, regime, ladder })
}

impl FockRep {
    /// Diagonal matrix f(N) for a scalar function of the number operator.
    pub fn diagonal_fn(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dim,
            (0..self.dim).map(|n| f(self.number[(n, n)])),
        ))
    }

    /// Integer matrix power by repeated multiplication.
    pub fn matrix_power(m: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
        let dim = m.nrows();
        let mut acc = DMatrix::identity(dim, dim);
        for _ in 0..k {
            acc = &acc * m;
        }
        acc
    }
}

/// Energy of level n for H = a^dagger a + a a^dagger:
/// E_n = [alpha chi0 + n nu] + [alpha chi0 + (n+1) nu].
pub fn energy(params: &DeformationParams, n: usize) -> Result<f64> {
    let x = params.alpha * params.chi0 + n as f64 * params.nu;
    Ok(deformed_number(x, params)? + deformed_number(x + params.nu, params)?)
}

/// Closed-form energy per the regime branch; equals [`energy`] algebraically.
///
/// Regime A: tau p^{-(n-1)nu} {1 + p^{-nu} - (phi2/phi1)(pq)^{alpha chi0 + n nu}(1 + q^nu)};
/// regime B: tau q^{(n-1)nu} {1 + q^nu - (phi1/phi2)(pq)^{-(alpha chi0 + n nu)}(1 + p^{-nu})}.
/// The regime-B exponent carries the sign that passes the matrix oracle; the
/// variant with a positive exponent is measured by the verification suite as
/// an erratum candidate.
pub fn energy_closed_form(params: &DeformationParams, n: usize) -> Result<f64> {
    let regime = classify_regime(params)?;
    let t = tau(params)?;
    let nu = params.nu;
    let pq = params.p * params.q;
    let x = params.alpha * params.chi0 + n as f64 * nu;
    Ok(match regime {
        Regime::A => {
            t * params.p.powf(-((n as f64) - 1.0) * nu)
                * (1.0 + params.p.powf(-nu)
                    - params.structure_ratio(Regime::A) * pq.powf(x) * (1.0 + params.q.powf(nu)))
        }
        Regime::B => {
            t * params.q.powf(((n as f64) - 1.0) * nu)
                * (1.0 + params.q.powf(nu)
                    - params.structure_ratio(Regime::B) * pq.powf(-x) * (1.0 + params.p.powf(-nu)))
        }
    })
}

/// Regime-B closed form with the printed positive exponent (pq)^{+alpha chi0 + n nu}.
/// Kept for erratum measurement only.
pub fn energy_regime_b_printed(params: &DeformationParams, n: usize) -> Result<f64> {
    let regime = classify_regime(params)?;
    if regime != Regime::B {
        return Err(Error::ConventionViolation("printed variant is a regime-B form".into()));
    }
    let t = tau(params)?;
    let nu = params.nu;
    let x = params.alpha * params.chi0 + n as f64 * nu;
    Ok(t * params.q.powf(((n as f64) - 1.0) * nu)
        * (1.0 + params.q.powf(nu)
            - params.structure_ratio(Regime::B) * (params.p * params.q).powf(x)
                * (1.0 + params.p.powf(-nu))))
}

/// First `levels` energies.
pub fn spectrum(params: &DeformationParams, levels: usize) -> Result<Vec<f64>> {
    (0..levels).map(|n| energy(params, n)).collect()
}

/// Normalization constant C_n with |n> = C_n a^dagger^n |0>.
///
/// Regime A (chi0 = 0): C_n^2 = p^{nu n(n-1)/2} ((1-(pq)^nu)/phi1)^n / (r (pq)^nu; (pq)^nu)_n;
/// regime B mirrors with q^{-nu n(n-1)/2} and phi2.  Equals 1/prod down(k).
pub fn normalization_constant(params: &DeformationParams, n: usize) -> Result<f64> {
    if params.chi0 != 0.0 {
        return Err(Error::ConventionViolation(format!(
            "normalization constants use the chi0 = 0 convention, got {}",
            params.chi0
        )));
    }
    let regime = classify_regime(params)?;
    let nu = params.nu;
    let pq = params.p * params.q;
    let r = params.structure_ratio(regime);
    let half = n as f64 * (n as f64 - 1.0) / 2.0;
    let c2 = match regime {
        Regime::A => {
            params.p.powf(nu * half) * ((1.0 - pq.powf(nu)) / params.phi1).powi(n as i32)
                / qseries::pochhammer_real(r * pq.powf(nu), pq.powf(nu), n)
        }
        Regime::B => {
            params.q.powf(-nu * half) * ((1.0 - pq.powf(-nu)) / params.phi2).powi(n as i32)
                / qseries::pochhammer_real(r * pq.powf(-nu), pq.powf(-nu), n)
        }
    };
    if c2 <= 0.0 || c2.is_nan() {
        return Err(Error::NegativeRadicand { level: n, value: c2 });
    }
    Ok(c2.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::dual;

    fn standard_a() -> DeformationParams {
        DeformationParams::new(0.9, 0.8, 1.0, 1.0, 1.0, 0.5, 0.0)
    }

    #[test]
    fn ladder_squares_to_deformed_number() {
        for params in [standard_a(), dual(&standard_a())] {
            let lad = ladder_coefficients(&params, 40).unwrap();
            for n in 1..=40 {
                let x = params.alpha * params.chi0 + n as f64 * params.nu;
                let oracle = deformed_number(x, &params).unwrap();
                let got = lad.down(n) * lad.down(n);
                assert!(
                    (got - oracle).abs() <= 1e-12 * oracle.abs().max(1.0),
                    "n = {n}: {got} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn ladder_standard_first_coefficient() {
        let lad = ladder_coefficients(&standard_a(), 5).unwrap();
        // down(1)^2 = [1] = 16/7.
        assert!((lad.down(1) - (16.0f64 / 7.0).sqrt()).abs() < 1e-13);
        assert!((lad.down(1) - 1.5118578920369088).abs() < 1e-5);
    }

    #[test]
    fn ladder_classical_q_oscillator_reduction() {
        let params = DeformationParams::new(1.0, 0.5, 1.0, 1.0, 1.0, 1.0, 0.0);
        let lad = ladder_coefficients(&params, 10).unwrap();
        for n in 1..=10 {
            let classical = ((1.0 - 0.5f64.powi(n as i32)) / 0.5).sqrt();
            assert!((lad.down(n) - classical).abs() < 1e-13);
        }
        assert!((lad.down(2) - 1.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rep_shape_and_hermiticity() {
        let rep = build_rep(&standard_a(), 2).unwrap();
        let mut nonzero = 0;
        for i in 0..2 {
            for j in 0..2 {
                if rep.lowering[(i, j)] != 0.0 {
                    nonzero += 1;
                    assert_eq!((i, j), (0, 1));
                }
            }
        }
        assert_eq!(nonzero, 1);
        assert_eq!(rep.raising, rep.lowering.transpose());
    }

    #[test]
    fn product_eigenvalues_match_oracle() {
        let rep = build_rep(&standard_a(), 16).unwrap();
        let ada = &rep.raising * &rep.lowering;
        let aad = &rep.lowering * &rep.raising;
        let p = rep.params;
        for n in 0..rep.dim - 1 {
            let x = p.alpha * p.chi0 + n as f64 * p.nu;
            let o1 = deformed_number(x, &p).unwrap();
            // a^dagger a eigenvalue: exact for all n >= 1, zero by convention on the vacuum.
            let expect = if n == 0 { 0.0 } else { o1 };
            assert!((ada[(n, n)] - expect).abs() < 1e-12 * expect.abs().max(1.0));
            if n < rep.dim - 1 {
                let o2 = deformed_number(x + p.nu, &p).unwrap();
                assert!((aad[(n, n)] - o2).abs() < 1e-12 * o2.abs().max(1.0));
            }
        }
    }

    #[test]
    fn energy_standard_first_level() {
        // E_0 = [0] + [1] = 45/28 + 16/7 = 109/28.
        let e0 = energy(&standard_a(), 0).unwrap();
        assert!((e0 - 109.0 / 28.0).abs() < 1e-13);
        assert!((e0 - 3.892857142857143).abs() < 1e-12);
    }

    #[test]
    fn energy_closed_form_matches_sum() {
        for params in [standard_a(), dual(&standard_a())] {
            for n in 0..30 {
                let a = energy(&params, n).unwrap();
                let b = energy_closed_form(&params, n).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "n = {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn energy_regime_b_printed_fails_oracle() {
        // The printed positive-exponent variant must disagree; the corrected
        // form is the one matching the spectrum.
        let b = dual(&standard_a());
        let printed = energy_regime_b_printed(&b, 2).unwrap();
        let truth = energy(&b, 2).unwrap();
        assert!((printed - truth).abs() > 1e-3 * truth.abs());
    }

    #[test]
    fn energy_duality() {
        let a = standard_a();
        let b = dual(&a);
        for n in 0..=10 {
            let ea = energy(&a, n).unwrap();
            let eb = energy(&b, n).unwrap();
            assert!((ea - eb).abs() <= 1e-12 * ea.abs());
        }
    }

    #[test]
    fn energy_classical_limit() {
        let p = DeformationParams::new(0.999, 0.999, 1.0, 1.0, 1.0, 1.0, 0.0);
        for n in 0..=5 {
            let e = energy(&p, n).unwrap();
            assert!((e - (2.0 * n as f64 + 1.0)).abs() < 1e-2, "n = {n}: {e}");
        }
    }

    #[test]
    fn spectrum_matches_dense_eigenvalues() {
        // On the truncated space a+a annihilates the vacuum, so the matrix
        // Hamiltonian's n = 0 eigenvalue misses the vacuum term [alpha chi0]
        // unless chi0 is the vacuum-consistent value.  Run the comparison
        // there, where every level below the guard band must match.
        for base in [standard_a(), dual(&standard_a())] {
            let params = DeformationParams {
                chi0: crate::params::vacuum_consistent_chi0(&base).unwrap(),
                ..base
            };
            let dim = 24;
            let rep = build_rep(&params, dim).unwrap();
            let h = &rep.raising * &rep.lowering + &rep.lowering * &rep.raising;
            let eig = nalgebra::SymmetricEigen::new(h.clone());
            let spec = spectrum(&params, dim - 1).unwrap();
            let scale = spec.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for (n, &e) in spec.iter().enumerate().take(dim - 1) {
                // Guard band 1: the top level is truncation-corrupted.
                let nearest = eig
                    .eigenvalues
                    .iter()
                    .fold(f64::INFINITY, |m, &l| m.min((l - e).abs()));
                assert!(nearest <= 1e-10 * scale, "n = {n}: gap {nearest}");
            }
        }

        // At chi0 = 0 the n = 0 eigenvalue is shifted by exactly the vacuum
        // defect; higher levels still match.
        let params = standard_a();
        let dim = 24;
        let rep = build_rep(&params, dim).unwrap();
        let h = &rep.raising * &rep.lowering + &rep.lowering * &rep.raising;
        let eig = nalgebra::SymmetricEigen::new(h.clone());
        // The truncation-corrupted top diagonal entry sorts into the middle
        // of the spectrum, so match by nearest eigenvalue rather than index.
        let nearest = |e: f64| {
            eig.eigenvalues
                .iter()
                .fold(f64::INFINITY, |m, &l| m.min((l - e).abs()))
        };
        let spec = spectrum(&params, dim - 1).unwrap();
        let defect = deformed_number(params.alpha * params.chi0, &params).unwrap();
        assert!(nearest(spec[0] - defect) < 1e-12);
        for (n, &e) in spec.iter().enumerate().skip(1) {
            assert!(nearest(e) < 1e-10 * e.abs().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn spectrum_empty_and_monotone() {
        assert!(spectrum(&standard_a(), 0).unwrap().is_empty());
        let spec = spectrum(&standard_a(), 20).unwrap();
        for w in spec.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn number_operator_step() {
        let mut p = standard_a();
        p.alpha = 2.0;
        p.nu = 1.0;
        let rep = build_rep(&p, 8).unwrap();
        let comm = &rep.number * &rep.raising - &rep.raising * &rep.number;
        let expect = &rep.raising * (p.nu / p.alpha);
        assert!((&comm - &expect).norm() < 1e-14 * expect.norm().max(1.0));
    }

    #[test]
    fn normalization_constants() {
        let p = standard_a();
        assert_eq!(normalization_constant(&p, 0).unwrap(), 1.0);
        // C_1 = sqrt(0.28 / (1 - 0.36)) = sqrt(0.4375).
        let c1 = normalization_constant(&p, 1).unwrap();
        assert!((c1 - 0.4375f64.sqrt()).abs() < 1e-14);
        assert!((c1 - 0.6614378277661477).abs() < 1e-5);

        // C_n = 1 / prod_{k<=n} down(k) in both regimes.
        for params in [p, dual(&p)] {
            let lad = ladder_coefficients(&params, 20).unwrap();
            let mut prod = 1.0;
            for n in 1..=20 {
                prod *= lad.down(n);
                let cn = normalization_constant(&params, n).unwrap();
                assert!((cn - 1.0 / prod).abs() <= 1e-11 * cn, "n = {n}");
            }
        }
    }

    #[test]
    fn negative_radicand_detected() {
        // Strongly negative chi0 pushes the regime-A radicand below zero at n = 1.
        let mut p = standard_a();
        p.chi0 = -5.0;
        match ladder_coefficients(&p, 10) {
            Err(Error::NegativeRadicand { .. }) => {}
            other => panic!("expected NegativeRadicand, got {other:?}"),
        }
    }
}
