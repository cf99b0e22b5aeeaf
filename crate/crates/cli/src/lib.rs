//! Command-line front end: argument parsing, JSON and text reports and
//! the reproduction harness for the worked examples.

pub mod commands;
pub mod reproduce;
pub mod schema;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::Value;
use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Library(ratlin::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ratlin::Error> for CliError {
    fn from(e: ratlin::Error) -> Self {
        match e {
            ratlin::Error::Parse(m) => CliError::Parse(m),
            other => CliError::Library(other),
        }
    }
}

impl CliError {
    /// 1 for I/O and parse errors, 2 for precondition and certification
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Library(_) => 2,
        }
    }
}

/// A report plus the name of the failed condition, if any (exit code 2).
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub failure: Option<String>,
    /// Replaces the generic text rendering when set.
    pub table: Option<String>,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, failure: None, table: None }
    }

    pub fn render(&self, format: Format) -> String {
        match (&self.table, format) {
            (Some(t), Format::Text) => t.clone(),
            _ => render(&self.report, format),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

impl SideArg {
    pub fn sides(self) -> Vec<ratlin::minbases::Side> {
        use ratlin::minbases::Side;
        match self {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::Both => vec![Side::Right, Side::Left],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    BlockKronecker,
    Sbmb,
    M1,
    ExtendedM1,
    M2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RecurrenceArg {
    Monomial,
    Chebyshev,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Fp,
    ProperGfp,
    Fpr,
    Gfpr,
}

#[derive(Debug, Parser)]
#[command(name = "ratlin", version, about = "Exact structure of rational matrices and their strong linearizations")]
pub struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for generated fixtures.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smith–McMillan form, structure at infinity, minimal indices, ν, μ, d.
    Analyze {
        #[arg(long, required_unless_present = "psm")]
        matrix: Option<PathBuf>,
        /// Analyze the transfer function of a system matrix instead.
        #[arg(long, conflicts_with = "matrix")]
        psm: Option<PathBuf>,
    },
    /// Minimal polynomial bases.
    Minbases {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// Transfer function D + CA⁻¹B of a system matrix.
    Transfer {
        #[arg(long)]
        psm: PathBuf,
    },
    CheckMinimal {
        #[arg(long)]
        psm: PathBuf,
    },
    CheckProperness {
        #[arg(long)]
        psm: PathBuf,
    },
    CheckStrongIrreducibility {
        #[arg(long)]
        psm: PathBuf,
    },
    /// Strong linearization of a rational matrix.
    Linearize {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "block-kronecker")]
        kind: KindArg,
        #[arg(long)]
        eps: Option<usize>,
        #[arg(long)]
        eta: Option<usize>,
        #[arg(long, value_enum, default_value = "monomial")]
        recurrence: RecurrenceArg,
        /// Recurrence coefficients and vectors for the M families.
        #[arg(long)]
        basis_file: Option<PathBuf>,
    },
    /// Minimal basis of G from one of a linearization.
    Recover {
        #[arg(long)]
        linearization: PathBuf,
        /// Basis of the pencil; computed when omitted.
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Fiedler-like pencil of a square rational matrix.
    Fiedler {
        #[arg(long)]
        tuples: PathBuf,
        #[arg(long)]
        assignments: Option<PathBuf>,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Also reduce to an extended block Kronecker linearization.
        #[arg(long)]
        permute: bool,
    },
    /// Strong linearization check with structural reports of both sides.
    Verify {
        #[arg(long)]
        linearization: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Minimal indices by degree-by-degree search.
    Oracle {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// Runs the worked examples and prints a pass/fail table.
    ReproducePaper,
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    commands::dispatch(cli)
}

/// The report as pretty JSON or indented text, newline-terminated.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text_lines(report, 0, &mut out);
            out
        }
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(is_scalar) => {
            format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_scalar),
        other => is_scalar(other),
    }
}

fn text_lines(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text_lines(x, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    text_lines(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}
