//! Command-line front end. [`run`] does all the work so that tests can drive
//! it without spawning a process.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use torimax::certifier::{self, CertificateOutcome, CertifyError, FamilyReport, LemmaSearchReport};
use torimax::gauss_fiber::{self, FamilyParameter, ScanSummary, UnivariateCheck};
use torimax::invariants::{self, InvariantReport};
use torimax::topology::{self, ComponentBudget};
use torimax::{parse, Error, Int, LatticePoint, LatticePolytope};

/// Longest list of example simplices written by `lemma-search`.
pub const MAX_LISTED_EXAMPLES: usize = 100;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "torimax",
    version,
    about = "Lattice polytope invariants and toric maximality obstructions"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Volume, facet areas, edge lengths, perimeters and smoothness.
    Invariants { file: PathBuf },
    /// Run the obstruction chain on a polytope.
    Certify {
        file: PathBuf,
        /// Reject polytopes that are not full-dimensional instead of reporting them.
        #[arg(long)]
        dim_check: bool,
    },
    /// Exhaustive check of the unimodularity lemma on small simplices.
    LemmaSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: i64,
    },
    /// The tetrahedron conv{0, e1, e2, (1, p, q)}.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Reality of the Gauss-map fibers of a z3^2 + z3 + z2 + z1 + 1.
    FiberScan {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = 10.0)]
        extent: f64,
    },
    /// Whether all roots in C* of c0 + c1 z + ... are simple and real.
    Univariate {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsDoc {
    pub invariants: InvariantReport,
    #[serde(with = "torimax::report::int")]
    pub gauss_degree: Int,
    /// Only for full-dimensional polytopes in three-space.
    #[serde(with = "torimax::report::opt_int")]
    pub khovanskii_betti: Option<Int>,
    pub component_budget: Option<ComponentBudget>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyDoc {
    pub vertices: Vec<LatticePoint>,
    pub certificate: CertificateOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaSearchDoc {
    /// The search result with `nonsmooth_examples` cut to the first
    /// [`MAX_LISTED_EXAMPLES`].
    pub search: LemmaSearchReport,
    pub nonsmooth_examples_total: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnivariateDoc {
    pub coefficients: Vec<String>,
    pub check: UnivariateCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDoc {
    pub error: String,
    pub message: String,
}

/// Every document the tool prints, tagged by command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Invariants(InvariantsDoc),
    Certify(CertifyDoc),
    LemmaSearch(LemmaSearchDoc),
    Family(FamilyReport),
    FiberScan(ScanSummary),
    Univariate(UnivariateDoc),
    Error(ErrorDoc),
}

/// A failure with its exit code and module-qualified name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub name: String,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_DOMAIN
            },
            name: e.qualified_name(),
            message: e.to_string(),
        }
    }
}

macro_rules! impl_from_module_error {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}

impl_from_module_error!(
    torimax::LatticeError,
    torimax::InvariantError,
    torimax::TopologyError,
    CertifyError,
    torimax::FiberError
);

fn load(path: &PathBuf) -> Result<LatticePolytope, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        name: "cli::Io".into(),
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(parse::parse_polytope_json(&text)?)
}

pub fn execute(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Invariants { file } => {
            let poly = load(file)?;
            let inv = invariants::invariant_report(&poly)?;
            let three = poly.ambient_dim() == 3;
            Ok(Report::Invariants(InvariantsDoc {
                gauss_degree: topology::gauss_degree(&poly)?,
                khovanskii_betti: three
                    .then(|| topology::khovanskii_betti3(&poly))
                    .transpose()?,
                component_budget: three
                    .then(|| topology::real_component_budget(&poly))
                    .transpose()?,
                invariants: inv,
            }))
        }
        Command::Certify { file, dim_check } => {
            let poly = load(file)?;
            if *dim_check && !poly.is_full_dimensional() {
                return Err(CertifyError::BadDimension(format!(
                    "polytope has dimension {} in ambient dimension {}",
                    poly.dim(),
                    poly.ambient_dim()
                ))
                .into());
            }
            let certificate = certifier::certify_recursive(&poly)?;
            Ok(Report::Certify(CertifyDoc {
                vertices: poly.vertices().to_vec(),
                certificate,
            }))
        }
        Command::LemmaSearch { n, bound } => {
            let mut search = certifier::brute_force_lemma_oracle(*bound, *n)?;
            let total = search.nonsmooth_examples.len() as u64;
            search.nonsmooth_examples.truncate(MAX_LISTED_EXAMPLES);
            Ok(Report::LemmaSearch(LemmaSearchDoc {
                search,
                nonsmooth_examples_total: total,
            }))
        }
        Command::Family { p, q } => Ok(Report::Family(certifier::counterexample_family(*p, *q)?)),
        Command::FiberScan { a, grid, extent } => {
            let a = FamilyParameter::new(*a)?;
            Ok(Report::FiberScan(gauss_fiber::total_reality_scan(
                a, *grid, *extent,
            )?))
        }
        Command::Univariate { coeffs } => {
            let c = parse::parse_coefficients(coeffs)?;
            let check = gauss_fiber::univariate_harnack_check(&c)?;
            Ok(Report::Univariate(UnivariateDoc {
                coefficients: c.iter().map(parse::format_rational).collect(),
                check,
            }))
        }
    }
}

pub fn render(report: &Report, format: Format) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(&value, 0, &mut out);
            out
        }
    }
}

/// One-line form of scalars and of arrays without objects inside.
fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => items
            .iter()
            .map(scalar)
            .collect::<Option<Vec<_>>>()
            .map(|xs| format!("[{}]", xs.join(", "))),
        Value::Object(_) => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: EXIT_OK,
            stdout: render(&report, cli.format),
            stderr: String::new(),
        },
        Err(f) => {
            let stderr = format!("error: {}: {}\n", f.name, f.message);
            let stdout = match cli.format {
                Format::Json => render(
                    &Report::Error(ErrorDoc {
                        error: f.name,
                        message: f.message,
                    }),
                    Format::Json,
                ),
                Format::Text => String::new(),
            };
            Outcome {
                code: f.code,
                stdout,
                stderr,
            }
        }
    }
}
