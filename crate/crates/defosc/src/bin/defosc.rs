//! Command-line interface: spectra, residual verification suites, coherent
//! states, matrix elements, the Casimir specialization, and the underlying
//! special-function series.
//!
//! Exit codes: 0 on success (and every non-erratum identity passing for
//! `verify`), 1 when a verification suite fails, 2 on usage or parameter
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use defosc::casimir::{self, CasimirParams};
use defosc::coherent;
use defosc::correlators::{self, MatrixElementQuery, OperatorOrdering};
use defosc::fockrep;
use defosc::params::{validate, DeformationParams};
use defosc::qseries;
use defosc::report::{to_canonical_json, VerificationReport};
use defosc::verify;

#[derive(Parser)]
#[command(name = "defosc", version, about = "Deformed oscillator numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format for data written to stdout.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

/// Deformation parameters, resolved from an optional JSON config file with
/// individual flags taking precedence.
#[derive(Args)]
struct ParamArgs {
    /// JSON file holding the parameter set; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    phi1: Option<f64>,
    #[arg(long)]
    phi2: Option<f64>,
    #[arg(long)]
    chi0: Option<f64>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<DeformationParams, String> {
        let mut params = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
                serde_json::from_str::<DeformationParams>(&text)
                    .map_err(|e| format!("cannot parse config {}: {e}", path.display()))?
            }
            None => DeformationParams::new(0.9, 0.8, 1.0, 1.0, 1.0, 0.5, 0.0),
        };
        if let Some(v) = self.p {
            params.p = v;
        }
        if let Some(v) = self.q {
            params.q = v;
        }
        if let Some(v) = self.alpha {
            params.alpha = v;
        }
        if let Some(v) = self.nu {
            params.nu = v;
        }
        if let Some(v) = self.phi1 {
            params.phi1 = v;
        }
        if let Some(v) = self.phi2 {
            params.phi2 = v;
        }
        if let Some(v) = self.chi0 {
            params.chi0 = v;
        }
        params.check_fields().map_err(|e| e.to_string())?;
        Ok(params)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Algebra,
    Coherent,
    Correlators,
    Casimir,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Energy eigenvalues of the first levels, with the closed form.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Number of levels to print.
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Run residual verification suites; exit 1 when any non-erratum
    /// identity fails.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Truncated representation dimension.
        #[arg(long, default_value_t = 32)]
        dim: usize,
        /// Pass/fail tolerance on relative residuals.
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
    },
    /// Coherent state at z: coefficients, normalization, eigenvalue
    /// residual.
    Coherent {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 0.5)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0)]
        z_im: f64,
        /// Maximum retained Fock components.
        #[arg(long, default_value_t = 64)]
        terms: usize,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
    /// A single matrix element <r| a+^m a^n |s> (or antinormal), closed form
    /// against the dense oracle.
    Correlator {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = CliOrdering::Normal)]
        ordering: CliOrdering,
    },
    /// Spectrum of the Casimir-type specialization, both closed forms.
    CasimirSpectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        omega2: f64,
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Evaluate the underlying special functions and series.
    Series {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(subcommand)]
        which: SeriesCommand,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliOrdering {
    Normal,
    Antinormal,
}

impl From<CliOrdering> for OperatorOrdering {
    fn from(o: CliOrdering) -> Self {
        match o {
            CliOrdering::Normal => OperatorOrdering::Normal,
            CliOrdering::Antinormal => OperatorOrdering::Antinormal,
        }
    }
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// q-Pochhammer (a; q)_n.
    Poch {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        base: f64,
        #[arg(long)]
        n: usize,
    },
    /// Double Pochhammer prod (a p^k - b q^k).
    Dpoch {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        base_p: f64,
        #[arg(long)]
        base_q: f64,
        #[arg(long)]
        n: usize,
    },
    /// Deformed number [x] for the resolved parameter set.
    Number {
        #[arg(long)]
        x: f64,
    },
    /// The regime scalar tau for the resolved parameter set.
    Tau,
    /// Deformed exponential N_nu(x) for the resolved parameter set.
    Nexp {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
    /// Deformed hypergeometric-type sum L(lambda, sigma; z) truncated at m.
    HyperL {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        base_p: f64,
        #[arg(long)]
        base_q: f64,
        #[arg(long)]
        z: f64,
        #[arg(long)]
        m: usize,
    },
    /// Residual of the (p, q)-binomial sum against its product form.
    Binomial {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        base_p: f64,
        #[arg(long)]
        base_q: f64,
        #[arg(long)]
        z: f64,
        #[arg(long, default_value_t = 60)]
        sum_terms: usize,
        #[arg(long, default_value_t = 60)]
        product_terms: usize,
    },
}

fn float_cell(v: f64) -> String {
    format!("{v:.16e}")
}

/// Emit rows with a header in the selected format; JSON output is an array
/// of objects with deterministic key order and float rendering.
fn emit_rows(format: Format, header: &[&str], rows: &[Vec<serde_json::Value>]) {
    match format {
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let map: serde_json::Map<String, serde_json::Value> = header
                        .iter()
                        .zip(row.iter())
                        .map(|(k, v)| (k.to_string(), v.clone()))
                        .collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            println!("{}", to_canonical_json(&objects));
        }
        Format::Csv => {
            println!("{}", header.join(","));
            for row in rows {
                let cells: Vec<String> = row.iter().map(cell_text).collect();
                println!("{}", cells.join(","));
            }
        }
        Format::Table => {
            println!("{}", header.join("\t"));
            for row in rows {
                let cells: Vec<String> = row.iter().map(cell_text).collect();
                println!("{}", cells.join("\t"));
            }
        }
    }
}

fn cell_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Number(n) if n.is_f64() => float_cell(n.as_f64().unwrap()),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit_report(format: Format, report: &VerificationReport) {
    match format {
        Format::Json => println!("{}", to_canonical_json(report)),
        Format::Csv | Format::Table => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            println!(
                "{}",
                ["status", "identity", "max_abs", "max_rel", "subspace"].join(sep)
            );
            for e in &report.entries {
                let status = if e.erratum_candidate {
                    "ERRATUM"
                } else if e.pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                println!(
                    "{status}{sep}{}{sep}{}{sep}{}{sep}{}",
                    e.identity_name,
                    float_cell(e.max_abs_residual),
                    float_cell(e.max_rel_residual),
                    e.subspace
                );
                if let Some(note) = &e.note {
                    eprintln!("note [{}]: {note}", e.identity_name);
                }
            }
        }
    }
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Spectrum { params, output, levels } => {
            let params = params.resolve()?;
            let report = validate(&params, levels.max(1)).map_err(|e| e.to_string())?;
            eprintln!("regime: {:?}", report.regime);
            let mut rows = Vec::new();
            for n in 0..levels {
                let e = fockrep::energy(&params, n).map_err(|e| e.to_string())?;
                let closed = fockrep::energy_closed_form(&params, n).map_err(|e| e.to_string())?;
                rows.push(vec![json!(n), json!(e), json!(closed)]);
            }
            emit_rows(output.format, &["level", "energy", "energy_closed_form"], &rows);
            Ok(0)
        }
        Command::Verify { params, output, suite, dim, tol } => {
            let params = params.resolve()?;
            let mut report = VerificationReport::new(tol);
            if matches!(suite, Suite::Algebra | Suite::All) {
                report.merge(verify::algebra_suite(&params, dim, tol).map_err(|e| e.to_string())?);
            }
            if matches!(suite, Suite::Coherent | Suite::All) {
                let d = dim.max(64);
                report.merge(
                    coherent::coherent_suite(&params, d, tol.max(1e-9))
                        .map_err(|e| e.to_string())?,
                );
            }
            if matches!(suite, Suite::Correlators | Suite::All) {
                report.merge(
                    correlators::correlator_suite(&params, dim.max(24), tol.max(1e-9))
                        .map_err(|e| e.to_string())?,
                );
            }
            if matches!(suite, Suite::Casimir | Suite::All) {
                let cp = CasimirParams {
                    p: params.p,
                    q: params.q,
                    nu: params.nu,
                    beta: 0.4,
                    gamma: 0.3,
                    omega2: 1.0,
                };
                report.merge(casimir::casimir_suite(&cp, tol).map_err(|e| e.to_string())?);
            }
            emit_report(output.format, &report);
            if report.all_pass() {
                eprintln!("all {} identities pass", report.entries.len());
                Ok(0)
            } else {
                eprintln!("verification failed");
                Ok(1)
            }
        }
        Command::Coherent { params, output, z_re, z_im, terms, tol } => {
            let params = params.resolve()?;
            let z = Complex64::new(z_re, z_im);
            let state =
                coherent::coherent_state(&params, z, terms, tol).map_err(|e| e.to_string())?;
            let rep =
                fockrep::build_rep(&params, state.terms + 1).map_err(|e| e.to_string())?;
            let residual = coherent::eigen_residual(&rep, &state).map_err(|e| e.to_string())?;
            eprintln!(
                "terms: {}, normalization: {}, eigen residual: {residual:.3e}",
                state.terms, state.normalization
            );
            let v = state.normalized_coefficients();
            let rows: Vec<Vec<serde_json::Value>> = v
                .iter()
                .enumerate()
                .map(|(n, c)| vec![json!(n), json!(c.re), json!(c.im)])
                .collect();
            emit_rows(output.format, &["level", "coefficient_re", "coefficient_im"], &rows);
            Ok(0)
        }
        Command::Correlator { params, output, m, n, r, s, ordering } => {
            let params = params.resolve()?;
            let query = MatrixElementQuery { m, n, r, s, ordering: ordering.into() };
            let closed = correlators::matrix_element(&params, &query).map_err(|e| e.to_string())?;
            let dim = m + n + r.max(s) + 2;
            let rep = fockrep::build_rep(&params, dim).map_err(|e| e.to_string())?;
            let oracle =
                correlators::oracle_matrix_element(&rep, &query).map_err(|e| e.to_string())?;
            let rows = vec![vec![
                json!(m),
                json!(n),
                json!(r),
                json!(s),
                json!(closed),
                json!(oracle),
                json!((closed - oracle).abs()),
            ]];
            emit_rows(
                output.format,
                &["m", "n", "r", "s", "closed_form", "oracle", "abs_residual"],
                &rows,
            );
            Ok(0)
        }
        Command::CasimirSpectrum { params, output, beta, gamma, omega2, levels } => {
            let params = params.resolve()?;
            let cp = CasimirParams { p: params.p, q: params.q, nu: params.nu, beta, gamma, omega2 };
            let mut rows = Vec::new();
            for n in 0..levels {
                let (a, b) = casimir::casimir_energy(&cp, n).map_err(|e| e.to_string())?;
                rows.push(vec![json!(n), json!(a), json!(b)]);
            }
            emit_rows(output.format, &["level", "energy_form_a", "energy_form_b"], &rows);
            Ok(0)
        }
        Command::Series { params, output, which } => {
            let value = match which {
                SeriesCommand::Poch { a, base, n } => qseries::pochhammer_real(a, base, n),
                SeriesCommand::Dpoch { a, b, base_p, base_q, n } => {
                    qseries::double_pochhammer(a, b, base_p, base_q, n)
                }
                SeriesCommand::Number { x } => {
                    let p = params.resolve()?;
                    qseries::deformed_number(x, &p).map_err(|e| e.to_string())?
                }
                SeriesCommand::Tau => {
                    let p = params.resolve()?;
                    qseries::tau(&p).map_err(|e| e.to_string())?
                }
                SeriesCommand::Nexp { x, tol } => {
                    let p = params.resolve()?;
                    let r = qseries::deformed_exponential(x, &p, tol, qseries::DEFAULT_MAX_TERMS)
                        .map_err(|e| e.to_string())?;
                    eprintln!(
                        "terms: {}, truncation estimate: {:.3e}",
                        r.terms_used, r.truncation_estimate
                    );
                    r.value
                }
                SeriesCommand::HyperL { lambda, sigma, base_p, base_q, z, m } => {
                    qseries::deformed_hypergeometric_l(lambda, sigma, base_p, base_q, z, m)
                        .map_err(|e| e.to_string())?
                }
                SeriesCommand::Binomial { a, b, base_p, base_q, z, sum_terms, product_terms } => {
                    qseries::check_pq_binomial(a, b, base_p, base_q, z, sum_terms, product_terms)
                        .map_err(|e| e.to_string())?
                }
            };
            emit_rows(output.format, &["value"], &[vec![json!(value)]]);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
