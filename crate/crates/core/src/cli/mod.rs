//! Command-line front end: argument parsing, command execution, run reports
//! and the enumeration catalog. The `quandlekit` binary is a thin wrapper
//! around [`run`].

mod catalog;
mod commands;
pub mod golden;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;

pub use catalog::{append_catalog, read_catalog, CatalogEntry, CATALOG_ENV};
pub use golden::{golden_suite, CheckResult, CheckStatus, Fault};

pub const EXIT_SUCCESS: i32 = 0;
/// `verify-paper` finished and at least one check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_PARAMS: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_AXIOM: i32 = 4;
pub const EXIT_CAPACITY: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "quandlekit", version, about = "Finite quandles and their quandle rings")]
pub struct Cli {
    /// Print a single JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timing in JSON reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Trivial,
    Dihedral,
    Alexander,
    Conj,
    Core,
    Union,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    AllBracketings,
    LeftNormed,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a quandle: `trivial N`, `dihedral N`, `alexander N T`,
    /// `conj G`, `core G` (G = `Z<n>`, `S<m>` or a Cayley-table file),
    /// `union A.json B.json`, `table FILE`.
    Make {
        family: Family,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate a table and summarize its invariants.
    Check {
        file: PathBuf,
        /// Witnesses reported per violated axiom.
        #[arg(long, default_value_t = 5)]
        witnesses: usize,
    },
    /// Enumerate quandles of order N up to isomorphism.
    Enumerate {
        n: usize,
        /// JSONL catalog to append to (default: $QUANDLEKIT_CATALOG).
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Largest order accepted.
        #[arg(long, default_value_t = crate::symmetry::DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
    },
    /// Search for a violation of power associativity.
    PowerAssoc {
        file: PathBuf,
        #[arg(long, default_value = "Q")]
        domain: String,
        /// Coefficients range over {−r..r} ∖ {0}.
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Every coefficient pair in F_p (prime fields only).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Quotients Δ^k/Δ^{k+1} of the augmentation-ideal filtration over Z.
    Delta {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        dihedral: Option<usize>,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
    },
    /// Compare two quandles and their rings.
    Iso {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, default_value = "Q")]
        ring_domain: String,
        /// Candidate-column budget for the exhaustive search over F_p.
        #[arg(long, default_value_t = crate::ring::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        /// Integer matrix (JSON rows, column c = image of basis element c) to verify.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Decompose a quandle ring into orbit summands and test simplicity.
    Decompose {
        file: Option<PathBuf>,
        #[arg(long, default_value = "Q")]
        domain: String,
        /// Numeric check of C[R_n] instead of a file.
        #[arg(long, conflicts_with = "file")]
        complex_dihedral: Option<usize>,
        #[arg(long, default_value_t = crate::dihedral::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = crate::lattice::DEFAULT_SPIN_BUDGET)]
        spin_budget: u64,
    },
    /// Run the golden suite of published examples.
    VerifyPaper {
        /// Corrupt one expectation to exercise the suite.
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    pub detail: Option<Value>,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into(), detail: None }
    }

    pub fn params(message: impl Into<String>) -> Self {
        Self::new(EXIT_BAD_PARAMS, message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_PARSE,
            Error::AxiomViolation(_) => EXIT_AXIOM,
            Error::Capacity(_) => EXIT_CAPACITY,
            _ => EXIT_BAD_PARAMS,
        };
        Self::new(code, e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a command produced: a JSON value for reports and a text rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub outputs: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(outputs: Value, text: String) -> Self {
        Self { outputs, text, code: EXIT_SUCCESS }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub exit_code: i32,
    pub tool_version: String,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Make { .. } => "make",
            Command::Check { .. } => "check",
            Command::Enumerate { .. } => "enumerate",
            Command::PowerAssoc { .. } => "power-assoc",
            Command::Delta { .. } => "delta",
            Command::Iso { .. } => "iso",
            Command::Decompose { .. } => "decompose",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }

    fn inputs(&self) -> Value {
        let p = |p: &PathBuf| p.display().to_string();
        match self {
            Command::Make { family, params, output } => json!({
                "family": format!("{family:?}").to_lowercase(),
                "params": params,
                "output": output.as_ref().map(p),
            }),
            Command::Check { file, witnesses } => json!({"file": p(file), "witnesses": witnesses}),
            Command::Enumerate { n, catalog, bound } => {
                json!({"n": n, "catalog": catalog.as_ref().map(p), "bound": bound})
            }
            Command::PowerAssoc { file, domain, radius, exhaustive } => {
                json!({"file": p(file), "domain": domain, "radius": radius, "exhaustive": exhaustive})
            }
            Command::Delta { file, dihedral, kmax, variant } => json!({
                "file": file.as_ref().map(p),
                "dihedral": dihedral,
                "kmax": kmax,
                "variant": format!("{variant:?}"),
            }),
            Command::Iso { x, y, ring_domain, budget, matrix } => json!({
                "x": p(x),
                "y": p(y),
                "ring_domain": ring_domain,
                "budget": budget,
                "matrix": matrix.as_ref().map(p),
            }),
            Command::Decompose { file, domain, complex_dihedral, tol, spin_budget } => json!({
                "file": file.as_ref().map(p),
                "domain": domain,
                "complex_dihedral": complex_dihedral,
                "tol": tol,
                "spin_budget": spin_budget,
            }),
            Command::VerifyPaper { inject_fault } => {
                json!({"inject_fault": inject_fault.map(|f| f.name())})
            }
        }
    }
}

/// Runs a parsed command line. Returns the exit code and the text for stdout;
/// with `--json` the text is a serialized [`RunReport`].
pub fn run(cli: &Cli) -> (i32, String) {
    let start = Instant::now();
    let result = commands::execute(&cli.command);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let (code, outputs, text) = match result {
        Ok(o) => (o.code, o.outputs, o.text),
        Err(e) => {
            let mut v = json!({"error": e.message});
            if let Some(d) = &e.detail {
                v["detail"] = d.clone();
            }
            (e.code, v, format!("error: {}", e.message))
        }
    };
    if cli.json {
        let report = RunReport {
            command: cli.command.name().to_string(),
            inputs: cli.command.inputs(),
            outputs,
            exit_code: code,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: None,
            timing_ms: cli.timing.then_some(elapsed),
        };
        (code, serde_json::to_string_pretty(&report).expect("report serializes"))
    } else {
        (code, text)
    }
}
