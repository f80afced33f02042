//! Command-line front end. Every invocation reads at most one JSON document
//! and writes one JSON envelope.

pub mod output;
pub mod records;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::bilinears::{bilinears, dirac_bilinears, transformed_bilinears, SEED_FPK_TOL};
use crate::classify::{extended_class, lounesto_class, zero_pattern, ClassLabel, ZeroPolicy};
use crate::clifford::{matrix_of, multivector_of};
use crate::error::Error;
use crate::fpk::check_fpk;
use crate::reconstruction::invert;
use crate::representatives::{representative_with, verify_representative, SearchOptions, DEFAULT_SEARCH_SEED};
use crate::tensor::max_abs_matrix;

use records::{BilinearRecord, ClassifyRecord, MatrixRecord, MultivectorRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONTRACT: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "spinordual", version, about = "Generalized spinor duals, bilinears and their classes")]
pub struct Cli {
    /// Absolute zero floor for classification.
    #[arg(long, global = true)]
    pub policy_abs: Option<f64>,
    /// Relative zero factor for classification.
    #[arg(long, global = true)]
    pub policy_rel: Option<f64>,
    /// Seed for the representative search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_SEED)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bilinears and classes of a spinor, optionally under a generalized dual.
    Classify {
        /// JSON document, or `-` for stdin.
        input: PathBuf,
    },
    /// Convert between a 4×4 matrix and its 16 multivector coefficients.
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Direction::ToMultivector)]
        direction: Direction,
    },
    /// Build a (seed, dual) pair for a class label.
    Representative { label: String },
    /// Check the Fierz–Pauli–Kofink identities on a bilinear set.
    Fpk {
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Recover a spinor from its Dirac bilinears.
    Invert { input: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    ToMultivector,
    ToMatrix,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Contract(String),
    /// A diagnosed infeasibility; the envelope is still emitted.
    Infeasible(Value),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::FierzViolation { .. } | Error::Conventions(_) => CliError::Contract(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn read_document<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        CliError::Input(format!(
            "{}: line {} column {}: field '{}': {}",
            path.display(),
            inner.line(),
            inner.column(),
            e.path(),
            inner
        ))
    })
}

impl Cli {
    fn policy(&self, document: Option<ZeroPolicy>) -> Result<ZeroPolicy, CliError> {
        let base = document.unwrap_or_default();
        ZeroPolicy::new(self.policy_abs.unwrap_or(base.abs_floor), self.policy_rel.unwrap_or(base.rel_factor))
            .map_err(CliError::from)
    }

    /// Runs the command and returns the envelope.
    pub fn execute(&self) -> Result<Value, CliError> {
        match &self.command {
            Command::Classify { input } => self.classify(input),
            Command::Decompose { input, direction } => decompose(input, *direction),
            Command::Representative { label } => self.representative(label),
            Command::Fpk { input, tol } => fpk(input, *tol),
            Command::Invert { input } => invert_cmd(input),
        }
    }

    fn classify(&self, input: &Path) -> Result<Value, CliError> {
        let record: ClassifyRecord = read_document(input)?;
        let psi = record.spinor().map_err(CliError::Input)?;
        let policy = self.policy(record.policy().map_err(CliError::Input)?)?;
        let dirac = dirac_bilinears(&psi);
        let report = check_fpk(&dirac, SEED_FPK_TOL);
        let standard = lounesto_class(&dirac, &policy);
        let mut payload = json!({
            "spinor": output::spinor(&psi),
            "dirac": {
                "bilinears": output::bilinears(&dirac),
                "standard_class": label(standard),
                "extended_class": label(extended_class(&dirac, &policy)),
                "zero_pattern": zero_pattern(&dirac, &policy).flags(),
            },
            "fpk": output::fpk(&report),
            "policy": {"abs_floor": policy.abs_floor, "rel_factor": policy.rel_factor},
        });
        let mut residuals = json!({"fpk_max": output::num(report.max_residual)});
        let effective = match &record.dual {
            Some(dual_record) => {
                let coeffs = dual_record.to_coefficients().map_err(CliError::Input)?;
                let closed = transformed_bilinears(&dirac, &coeffs)?;
                let direct = bilinears(&psi, &coeffs.to_multivector());
                let deviation = closed.max_deviation(&direct);
                payload["dual"] = output::dual(&coeffs);
                payload["generalized"] = json!({
                    "closed_form": output::bilinears(&closed),
                    "first_principles": output::bilinears(&direct),
                    "max_deviation": output::num(deviation),
                    "zero_pattern": zero_pattern(&direct, &policy).flags(),
                });
                residuals["path_deviation"] = output::num(deviation);
                direct
            }
            None => dirac,
        };
        payload["standard_class"] = label(standard);
        payload["extended_class"] = label(extended_class(&effective, &policy));
        Ok(output::envelope("classify", payload, residuals))
    }

    fn representative(&self, text: &str) -> Result<Value, CliError> {
        let target: ClassLabel = text.parse().map_err(CliError::from)?;
        let policy = self.policy(None)?;
        let opts = SearchOptions { seed: self.seed, policy, ..SearchOptions::default() };
        match representative_with(target, &opts) {
            Ok(r) => {
                let check = verify_representative(&r, &policy);
                if !check.verified {
                    return Err(CliError::Contract(format!("representative for {target} failed verification")));
                }
                let b = r.bilinears();
                let payload = json!({
                    "target": target.as_str(),
                    "achieved": r.achieved.as_str(),
                    "notes": r.notes,
                    "relaxations": r.relaxations.iter().map(|x| x.as_str()).collect::<Vec<_>>(),
                    "seed": output::spinor(&r.seed),
                    "seed_class": label(lounesto_class(&dirac_bilinears(&r.seed), &policy)),
                    "dual": output::dual(&r.dual),
                    "bilinears": output::bilinears(&b),
                    "dirac_bilinears": output::bilinears(&dirac_bilinears(&r.seed)),
                    "zero_pattern": zero_pattern(&b, &policy).flags(),
                    "seed_fpk": output::fpk(&check.seed_fpk),
                });
                let residuals = json!({"seed_fpk_max": output::num(check.seed_fpk.max_residual)});
                Ok(output::envelope("representative", payload, residuals))
            }
            Err(inf) => {
                let trail: Vec<Value> =
                    inf.trail.iter().map(|t| json!({"stage": t.stage, "residual": output::num(t.residual)})).collect();
                let payload = json!({
                    "target": target.as_str(),
                    "infeasible": true,
                    "recipe": inf.recipe,
                    "seed_class": inf.seed_class.as_str(),
                    "best_seed": output::spinor(&inf.best_seed),
                    "achieved": label(inf.achieved),
                    "obstruction": inf.obstruction,
                    "trail": trail,
                });
                let residuals = json!({"best_constraint_residual": output::num(inf.best_residual)});
                Err(CliError::Infeasible(output::envelope("representative", payload, residuals)))
            }
        }
    }
}

fn label(l: Option<ClassLabel>) -> Value {
    l.map_or(Value::Null, |l| Value::String(l.as_str().to_string()))
}

fn decompose(input: &Path, direction: Direction) -> Result<Value, CliError> {
    const REAL_TOL: f64 = 1e-12;
    match direction {
        Direction::ToMultivector => {
            let record: MatrixRecord = read_document(input)?;
            let d = record.to_matrix().map_err(CliError::Input)?;
            let mv = multivector_of(&d);
            let round_trip = max_abs_matrix(&(matrix_of(&mv) - d));
            let real = mv.is_real(REAL_TOL * mv.max_abs().max(1.0));
            let warnings: Vec<&str> = if real { vec![] } else { vec!["non-real"] };
            let payload = json!({"multivector": output::multivector(&mv), "real": real, "warnings": warnings});
            Ok(output::envelope("decompose", payload, json!({"round_trip": output::num(round_trip)})))
        }
        Direction::ToMatrix => {
            let record: MultivectorRecord = read_document(input)?;
            let mv = record.to_multivector().map_err(CliError::Input)?;
            let d = matrix_of(&mv);
            let back = multivector_of(&d);
            let round_trip =
                mv.coefficients().iter().zip(back.coefficients()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            let payload = json!({"matrix": output::matrix(&d), "real": mv.is_real(REAL_TOL)});
            Ok(output::envelope("decompose", payload, json!({"round_trip": output::num(round_trip)})))
        }
    }
}

fn fpk(input: &Path, tol: f64) -> Result<Value, CliError> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(CliError::Input(format!("--tol must be finite and nonnegative, got {tol}")));
    }
    let record: BilinearRecord = read_document(input)?;
    let b = record.to_bilinears().map_err(CliError::Input)?;
    let report = check_fpk(&b, tol);
    Ok(output::envelope("fpk", output::fpk(&report), json!({"max": output::num(report.max_residual)})))
}

fn invert_cmd(input: &Path) -> Result<Value, CliError> {
    let record: BilinearRecord = read_document(input)?;
    let b = record.to_bilinears().map_err(CliError::Input)?;
    let psi = invert(&b)?;
    let back = dirac_bilinears(&psi);
    let deviation = back.max_deviation(&b);
    let payload = json!({"spinor": output::spinor(&psi), "bilinears": output::bilinears(&back)});
    Ok(output::envelope("invert", payload, json!({"max_deviation": output::num(deviation)})))
}

fn emit(cli: &Cli, value: &Value) -> Result<(), String> {
    let mut text = output::to_string(value);
    text.push('\n');
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (value, code) = match cli.execute() {
        Ok(v) => (v, EXIT_OK),
        Err(CliError::Infeasible(v)) => (v, EXIT_INFEASIBLE),
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            return EXIT_INPUT;
        }
        Err(CliError::Contract(msg)) => {
            eprintln!("contract violation: {msg}");
            return EXIT_CONTRACT;
        }
    };
    match emit(&cli, &value) {
        Ok(()) => code,
        Err(msg) => {
            eprintln!("output error: {msg}");
            EXIT_INPUT
        }
    }
}
