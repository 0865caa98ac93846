// Copyright 2026 The phasecov Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or failed check, 2 malformed input
//! or I/O error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{self, EquivDecision, EquivFailure, OrderDecision, PhaseMatrix, StructureMatrix};
use crate::density::{self, DensityEstimator, IdentityCheckConfig, Subsequence};
use crate::error::Error;
use crate::fock::FockState;
use crate::observables::{self, PhaseObservable};
use crate::operations::{self, SchurOperation};
use crate::spec::{BorelSpec, Context, MatrixSpec, Pair, StateSpec};
use crate::tolerance::Tolerances;

#[derive(Debug, Parser)]
#[command(name = "phasecov", version, about = "Covariant phase observables on truncated Fock spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Dimension used by specs that omit `dim`.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of grid points for densities.
    #[arg(long, global = true, default_value_t = 1024)]
    pub grid: usize,
    /// Tolerance override, repeatable.
    #[arg(long = "tol", global = true, value_name = "KEY=VAL", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Read input angles in degrees.
    #[arg(long, global = true)]
    pub degrees: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Spec arguments accept a file path or inline JSON.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the phase-matrix invariants of a matrix spec.
    Validate { matrix: String },
    /// Build an observable and report its explicit matrix and factorizations.
    Build { observable: String },
    /// Probability of a Borel set in a state.
    Prob {
        observable: String,
        state: String,
        borel: String,
    },
    /// Density of the phase distribution on a uniform grid.
    Density {
        observable: String,
        state: String,
        #[arg(long, value_enum, default_value_t = EstimatorArg::Exact)]
        estimator: EstimatorArg,
        /// Kernel parameter.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Explicit partial-sum cutoffs, comma separated.
        #[arg(long, value_delimiter = ',')]
        cutoffs: Vec<usize>,
        /// Append the derivative-identity report.
        #[arg(long)]
        check: bool,
    },
    /// Classify the associated covariant operation.
    Classify {
        observable: String,
        /// Also compare against this matrix by equivalence and order.
        #[arg(long)]
        against: Option<String>,
    },
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Decide `D <= E` in the divisibility order.
    Order { d: String, e: String },
    /// Decide phase equivalence `C ~ D` and recover the phases.
    Equiv { c: String, d: String },
    /// Randomized phase-shift covariance check.
    CovarianceCheck {
        observable: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Diagonal Kraus operators of the associated operation.
    Kraus { observable: String },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCommand {
    Product { a: String, b: String },
    Involution { a: String },
    Inverse { a: String },
    Norm { a: String },
    Convex {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
        #[arg(required = true)]
        parts: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Exact,
    Partial,
    Kernel1,
    Kernel2,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (key, value) = s.split_once('=').ok_or("expected KEY=VAL")?;
    let value: f64 = value.parse().map_err(|e| format!("{value}: {e}"))?;
    Ok((key.trim().to_string(), value))
}

#[derive(Debug)]
enum Failure {
    /// Exit 1.
    Invalid(String),
    /// Exit 2.
    Malformed(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Malformed(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Malformed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_) | Error::InvalidTolerance { .. } | Error::NotSquare { .. } => {
                Failure::Malformed(e.to_string())
            }
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type CmdResult = Result<Output, Failure>;

/// Primary output plus the exit code it should produce.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn json(value: &impl Serialize) -> Self {
        Self::json_with_code(value, 0)
    }

    fn json_with_code(value: &impl Serialize, code: i32) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("serializable output");
        text.push('\n');
        Self { text, code }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.global.out {
                Some(path) => fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => out.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    2
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

struct Env {
    ctx: Context,
    global: GlobalArgs,
}

impl Env {
    fn new(global: &GlobalArgs) -> Result<Self, Failure> {
        let mut tol = Tolerances::default();
        for (key, value) in &global.tol {
            tol.set(key, *value)?;
        }
        Ok(Self {
            ctx: Context {
                dim: global.dim,
                degrees: global.degrees,
                tol,
            },
            global: global.clone(),
        })
    }

    fn tol(&self) -> &Tolerances {
        &self.ctx.tol
    }

    fn json_only(&self) -> Result<(), Failure> {
        match self.global.format {
            Some(Format::Csv) => Err(Failure::Malformed(
                "csv output is only available for `density`".into(),
            )),
            _ => Ok(()),
        }
    }

    fn matrix(&self, arg: &str) -> Result<(MatrixSpec, StructureMatrix<f64>), Failure> {
        let spec: MatrixSpec = load(arg)?;
        let m = spec.build(&self.ctx).map_err(malformed_build)?;
        Ok((spec, m))
    }

    fn phase(&self, arg: &str) -> Result<(MatrixSpec, PhaseMatrix<f64>), Failure> {
        let (spec, m) = self.matrix(arg)?;
        Ok((spec, PhaseMatrix::validate_with(m, self.tol())?))
    }

    fn observable(&self, arg: &str) -> Result<PhaseObservable<f64>, Failure> {
        let (spec, m) = self.phase(arg)?;
        let e = PhaseObservable::new(m);
        Ok(match spec.label() {
            Some(label) => e.with_label(label),
            None => e,
        })
    }

    /// States fall back to the observable's dimension when neither the
    /// spec nor `--dim` gives one.
    fn state(&self, arg: &str, dim: usize) -> Result<FockState<f64>, Failure> {
        let spec: StateSpec = load(arg)?;
        let ctx = Context {
            dim: Some(self.ctx.dim.unwrap_or(dim)),
            ..self.ctx.clone()
        };
        spec.build(&ctx).map_err(malformed_build)
    }
}

/// Build errors that stem from an inconsistent spec are malformed input.
fn malformed_build(e: Error) -> Failure {
    match e {
        Error::EmptyDimension | Error::DimensionMismatch { .. } => Failure::Malformed(e.to_string()),
        other => other.into(),
    }
}

fn load<D: DeserializeOwned>(arg: &str) -> Result<D, Failure> {
    let (text, origin) = if arg.trim_start().starts_with('{') {
        (arg.to_string(), "inline JSON".to_string())
    } else {
        let text = fs::read_to_string(arg).map_err(|e| Failure::Malformed(format!("{arg}: {e}")))?;
        (text, arg.to_string())
    };
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{origin}: {e}")))
}

fn execute(cli: &Cli) -> CmdResult {
    let env = Env::new(&cli.global)?;
    if !matches!(cli.command, Command::Density { .. }) {
        env.json_only()?;
    }
    match &cli.command {
        Command::Validate { matrix } => cmd_validate(&env, matrix),
        Command::Build { observable } => cmd_build(&env, observable),
        Command::Prob {
            observable,
            state,
            borel,
        } => cmd_prob(&env, observable, state, borel),
        Command::Density {
            observable,
            state,
            estimator,
            epsilon,
            cutoffs,
            check,
        } => {
            let est = estimator_from(*estimator, *epsilon, cutoffs)?;
            cmd_density(&env, observable, state, &est, *check)
        }
        Command::Classify { observable, against } => cmd_classify(&env, observable, against.as_deref()),
        Command::Algebra(op) => cmd_algebra(&env, op),
        Command::Order { d, e } => {
            let (_, d) = env.matrix(d)?;
            let (_, e) = env.matrix(e)?;
            Ok(Output::json(&order_json(&algebra::order_leq_with(&d, &e, env.tol())?)))
        }
        Command::Equiv { c, d } => {
            let (_, c) = env.phase(c)?;
            let (_, d) = env.phase(d)?;
            Ok(Output::json(&equiv_json(&algebra::equiv_phase_with(&c, &d, env.tol())?)))
        }
        Command::CovarianceCheck { observable, trials } => {
            let (_, m) = env.matrix(observable)?;
            let report = observables::check_covariance(&m, *trials, env.global.seed);
            let code = if report.passed { 0 } else { 1 };
            Ok(Output::json_with_code(&report, code))
        }
        Command::Kraus { observable } => {
            let (_, c) = env.phase(observable)?;
            let family = SchurOperation::new(c).kraus()?;
            let operators: Vec<Vec<Pair>> = (0..family.len())
                .map(|k| family.diagonals[k].iter().map(|z| [z.re, z.im]).collect())
                .collect();
            Ok(Output::json(&json!({
                "count": family.len(),
                "diagonals": operators,
                "resolution_deviation": family.resolution_deviation(),
            })))
        }
    }
}

fn estimator_from(
    arg: EstimatorArg,
    epsilon: Option<f64>,
    cutoffs: &[usize],
) -> Result<DensityEstimator<f64>, Failure> {
    let need_eps = || {
        epsilon.ok_or_else(|| Failure::Malformed("--epsilon is required for kernel estimators".into()))
    };
    Ok(match arg {
        EstimatorArg::Exact => DensityEstimator::exact(),
        EstimatorArg::Partial => DensityEstimator::PartialSum {
            subsequence: if cutoffs.is_empty() {
                Subsequence::Dyadic
            } else {
                Subsequence::Explicit(cutoffs.to_vec())
            },
        },
        EstimatorArg::Kernel1 => DensityEstimator::Kernel1 { epsilon: need_eps()? },
        EstimatorArg::Kernel2 => DensityEstimator::Kernel2 { epsilon: need_eps()? },
    })
}

fn cmd_validate(env: &Env, arg: &str) -> CmdResult {
    let (_, m) = env.matrix(arg)?;
    let diagnosis = algebra::diagnose(&m, env.tol());
    let problems: Vec<String> = diagnosis.failures.iter().map(|f| f.to_string()).collect();
    let code = if diagnosis.is_valid() { 0 } else { 1 };
    Ok(Output::json_with_code(
        &json!({
            "valid": diagnosis.is_valid(),
            "dim": m.dim(),
            "diagnosis": diagnosis,
            "problems": problems,
        }),
        code,
    ))
}

fn vectors_json(vs: &[crate::linalg::CVector<f64>]) -> Vec<Vec<Pair>> {
    vs.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn cmd_build(env: &Env, arg: &str) -> CmdResult {
    let (spec, m) = env.matrix(arg)?;
    let diagnosis = algebra::diagnose(&m, env.tol());
    let mut report = json!({
        "dim": m.dim(),
        "label": spec.label(),
        "matrix": MatrixSpec::explicit(&m),
        "valid": diagnosis.is_valid(),
        "diagnosis": diagnosis,
        "sup_norm": m.sup_norm(),
    });
    if !diagnosis.is_valid() {
        return Ok(Output::json_with_code(&report, 1));
    }
    let c = PhaseMatrix::validate_with(m, env.tol())?;
    let gram = algebra::gram_factorize_with(&c, env.tol())?;
    let family = algebra::phase_state_factorize_with(&c, env.tol())?;
    report["canonical_ue"] = json!(algebra::is_canonical_ue_with(&c, env.tol()));
    report["gram"] = json!({ "rank": gram.rank(), "vectors": vectors_json(&gram.vectors) });
    report["phase_states"] = json!({ "count": family.len(), "members": vectors_json(family.members()) });
    Ok(Output::json(&report))
}

fn cmd_prob(env: &Env, obs: &str, state: &str, borel: &str) -> CmdResult {
    let e = env.observable(obs)?;
    let t = env.state(state, e.matrix.dim())?;
    let x = load::<BorelSpec>(borel)?.build(&env.ctx)?;
    let p = observables::probability_with(&e, &t, &x, env.tol())?;
    Ok(Output::json(&json!({ "value": p.value, "raw": p.raw })))
}

fn cmd_density(env: &Env, obs: &str, state: &str, est: &DensityEstimator<f64>, check: bool) -> CmdResult {
    let e = env.observable(obs)?;
    let t = env.state(state, e.matrix.dim())?;
    let curve = density::estimate_density(&e, &t, est, env.global.grid)?;
    let report = if check {
        Some(density::derivative_identity_check(
            &e,
            &t,
            &curve.thetas,
            &IdentityCheckConfig::default(),
        )?)
    } else {
        None
    };
    match env.global.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            curve.write_csv(&mut buf).expect("in-memory write");
            if let Some(r) = &report {
                writeln!(buf, "# {}", serde_json::to_string(r).expect("serializable")).expect("in-memory write");
            }
            Ok(Output {
                text: String::from_utf8(buf).expect("ascii"),
                code: 0,
            })
        }
        Format::Json => {
            let integral = curve.integral();
            Ok(Output::json(&json!({
                "estimator": est,
                "theta": curve.thetas,
                "re": curve.values.iter().map(|z| z.re).collect::<Vec<_>>(),
                "im": curve.values.iter().map(|z| z.im).collect::<Vec<_>>(),
                "integral": [integral.re, integral.im],
                "check": report,
            })))
        }
    }
}

fn cmd_classify(env: &Env, obs: &str, against: Option<&str>) -> CmdResult {
    let (_, c) = env.phase(obs)?;
    let op = SchurOperation::new(c.clone());
    let class = operations::classify_with(&op, env.tol())?;
    let w = &class.witnesses;
    let mut report = json!({
        "flags": class.flags(),
        "canonical_ue": algebra::is_canonical_ue_with(&c, env.tol()),
        "witnesses": {
            "zero_entry": w.zero_entry,
            "unreachable_state": w.unreachable_state.as_ref().map(|(n, m, s)| json!({
                "n": n, "m": m, "state": StateSpec::density(s),
            })),
            "non_pure_image": w.non_pure_image.as_ref().map(|(v, defect)| json!({
                "state": StateSpec::vector(v), "defect": defect,
            })),
        },
    });
    if let Some(other) = against {
        let (_, d) = env.phase(other)?;
        let equiv = algebra::equiv_phase_with(&c, &d, env.tol())?;
        let leq = algebra::order_leq_with(c.structure(), d.structure(), env.tol())?;
        let geq = algebra::order_leq_with(d.structure(), c.structure(), env.tol())?;
        report["against"] = json!({
            "equiv": equiv_json(&equiv),
            "order": { "leq": order_json(&leq), "geq": order_json(&geq) },
        });
    }
    Ok(Output::json(&report))
}

fn cmd_algebra(env: &Env, op: &AlgebraCommand) -> CmdResult {
    let spec = |m: &StructureMatrix<f64>| Output::json(&MatrixSpec::explicit(m));
    match op {
        AlgebraCommand::Product { a, b } => {
            let (_, a) = env.matrix(a)?;
            let (_, b) = env.matrix(b)?;
            Ok(spec(&algebra::hadamard_product(&a, &b)?))
        }
        AlgebraCommand::Involution { a } => Ok(spec(&env.matrix(a)?.1.involution())),
        AlgebraCommand::Inverse { a } => Ok(spec(&env.matrix(a)?.1.hadamard_inverse_with(env.tol())?)),
        AlgebraCommand::Norm { a } => {
            let (_, a) = env.matrix(a)?;
            Ok(Output::json(&json!({
                "sup_norm": a.sup_norm(),
                "abs_sum": a.abs_sum(),
                "trace_summable": a.is_trace_summable(),
            })))
        }
        AlgebraCommand::Convex { weights, parts } => {
            let parts = parts
                .iter()
                .map(|p| env.phase(p).map(|x| x.1))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(spec(algebra::convex_combine_with(&parts, weights, env.tol())?.structure()))
        }
    }
}

fn order_json(d: &OrderDecision<f64>) -> Value {
    match d {
        OrderDecision::Yes { witness, witness_norm } => json!({
            "status": "yes",
            "witness": MatrixSpec::explicit(witness),
            "witness_norm": witness_norm,
        }),
        OrderDecision::No { position, modulus } => json!({
            "status": "no",
            "position": position,
            "modulus": modulus,
        }),
        OrderDecision::Undetermined { positions } => json!({
            "status": "undetermined",
            "positions": positions,
        }),
    }
}

fn equiv_json(d: &EquivDecision<f64>) -> Value {
    match d {
        EquivDecision::Yes { upsilon } => json!({ "status": "equivalent", "upsilon": upsilon }),
        EquivDecision::No(EquivFailure::ModulusMismatch { position, deviation }) => json!({
            "status": "not_equivalent",
            "reason": "modulus_mismatch",
            "position": position,
            "deviation": deviation,
        }),
        EquivDecision::No(EquivFailure::InconsistentCycle { position, deviation }) => json!({
            "status": "not_equivalent",
            "reason": "inconsistent_cycle",
            "position": position,
            "deviation": deviation,
        }),
        EquivDecision::Undecidable { components } => json!({
            "status": "undecidable",
            "components": components
                .iter()
                .map(|c| json!({ "nodes": c.nodes, "upsilon": c.upsilon }))
                .collect::<Vec<_>>(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["phasecov"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn validate_exit_codes() {
        assert_eq!(call(&["validate", r#"{"type":"canonical","dim":3}"#]).0, 0);
        let (code, out, _) = call(&[
            "validate",
            r#"{"type":"explicit","dim":2,"entries":[[0.9,0],[0,0],[0,0],[1,0]]}"#,
        ]);
        assert_eq!(code, 1);
        assert!(out.contains("unit diagonal"));
        assert_eq!(call(&["validate", r#"{"type":"canonical","dim":3"#]).0, 2);
        assert_eq!(call(&["validate", "/nonexistent/file.json"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
    }

    #[test]
    fn prob_examples() {
        let (code, out, err) = call(&[
            "prob",
            r#"{"type":"named","name":"canonical","dim":2}"#,
            r#"{"type":"vector","coeffs":[[1,0],[1,0]]}"#,
            r#"{"intervals":[[0,1.5707963267948966]]}"#,
        ]);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        let p = v["value"].as_f64().unwrap();
        assert!((p - (0.25 + 1.0 / (2.0 * std::f64::consts::PI))).abs() < 1e-15);
        let (code, _, _) = call(&[
            "prob",
            r#"{"type":"canonical","dim":3}"#,
            r#"{"type":"number","n":0,"dim":2}"#,
            r#"{"intervals":[[0,1]]}"#,
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn degrees_flag_converts_input() {
        let (_, rad, _) = call(&[
            "prob",
            r#"{"type":"canonical","dim":2}"#,
            r#"{"type":"vector","coeffs":[[1,0],[0,1]]}"#,
            r#"{"intervals":[[0,1.5707963267948966]]}"#,
        ]);
        let (_, deg, _) = call(&[
            "--degrees",
            "prob",
            r#"{"type":"canonical","dim":2}"#,
            r#"{"type":"vector","coeffs":[[1,0],[0,1]]}"#,
            r#"{"intervals":[[0,90]]}"#,
        ]);
        let a: Value = serde_json::from_str(&rad).unwrap();
        let b: Value = serde_json::from_str(&deg).unwrap();
        assert!((a["value"].as_f64().unwrap() - b["value"].as_f64().unwrap()).abs() < 1e-15);
    }

    #[test]
    fn estimator_flags() {
        let base = [
            "density",
            r#"{"type":"canonical","dim":2}"#,
            r#"{"type":"number","n":0}"#,
            "--grid",
            "8",
        ];
        let mut args = base.to_vec();
        args.extend(["--estimator", "kernel2", "--epsilon", "1.5"]);
        assert_eq!(call(&args).0, 1);
        let mut args = base.to_vec();
        args.extend(["--estimator", "kernel1"]);
        assert_eq!(call(&args).0, 2);
        let mut args = base.to_vec();
        args.extend(["--format", "json"]);
        let (code, out, _) = call(&args);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["re"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn tolerance_override() {
        let m = r#"{"type":"explicit","dim":2,"entries":[[1.000001,0],[0,0],[0,0],[1,0]]}"#;
        assert_eq!(call(&["validate", m]).0, 1);
        assert_eq!(call(&["--tol", "unit_diagonal=1e-5", "validate", m]).0, 0);
        assert_eq!(call(&["--tol", "nonsense=1", "validate", m]).0, 2);
    }
}
