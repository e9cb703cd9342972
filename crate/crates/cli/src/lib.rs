//! `quasiprob` command-line front end.
//!
//! Every command writes its document to the output stream and diagnostics to the
//! error stream. Exit codes: 0 success, 1 failed verification, 2 usage error,
//! 3 malformed input file.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use quasiprob_core::numfmt::{format_sig, snap};
use quasiprob_core::pauli::qubit_count;
use quasiprob_core::scenario::eta_expansions;
use quasiprob_core::{
    decompose, eta_basis, mh_joint, pauli_expand, verify_paradox_with, Complex64, ComplexMatrix,
    EtaBasis, InputPair, Ket, MeasurementBasis, PauliExpansion,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BAD_INPUT: i32 = 3;

const PRETTY_DIGITS: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "quasiprob",
    version,
    about = "Sub-ensemble decompositions and joint quasi-probabilities"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Pretty)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The four entangled outcome projectors, their kets and excluded inputs.
    Eta,
    /// Outcome probabilities for one product input.
    Prob {
        /// Input preparation: 00, 0+, +0 or ++.
        #[arg(long, value_parser = parse_input)]
        input: InputPair,
    },
    /// Per-sub-ensemble contributions to each outcome for one input.
    Table {
        #[arg(long, value_parser = parse_input)]
        input: InputPair,
    },
    /// Check every scenario invariant; exits 1 if any fails.
    Verify {
        /// JSON array of four Pauli expansions replacing the shipped outcomes.
        #[arg(long)]
        eta: Option<PathBuf>,
    },
    /// Decompose a state into sub-ensembles over a basis.
    Decompose {
        /// Density matrix or ket as JSON.
        #[arg(long)]
        state: PathBuf,
        /// Basis name (Z, X, products like ZX, or eta) or a JSON ket-list file.
        #[arg(long)]
        basis: String,
    },
    /// Margenau–Hill joint quasi-probabilities over two bases.
    Mh {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        basis_a: String,
        #[arg(long)]
        basis_b: String,
    },
}

fn parse_input(s: &str) -> Result<InputPair, String> {
    s.parse().map_err(|e: quasiprob_core::Error| e.to_string())
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn bad_input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_BAD_INPUT,
            message: message.into(),
        }
    }
}

/// A rendered document plus the exit code to report after writing it.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok(output) => {
            if let Err(e) = out
                .write_all(output.text.as_bytes())
                .and_then(|_| out.flush())
            {
                let _ = writeln!(err, "error: writing output: {e}");
                return EXIT_BAD_INPUT;
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// Runs against the process streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Eta => {
            let basis = shipped_basis()?;
            Ok(Output::ok(render_eta(&basis, format)))
        }
        Command::Prob { input } => {
            let basis = shipped_basis()?;
            Ok(Output::ok(render_prob(&basis, *input, format)))
        }
        Command::Table { input } => {
            let table = shipped_basis()?.contribution_table(*input);
            let text = match format {
                Format::Json => to_json(&table),
                Format::Csv => {
                    let mut s = String::new();
                    for row in &table.rows {
                        let cells: Vec<String> = row.entries.iter().map(|&x| csv_num(x)).collect();
                        let _ = writeln!(s, "{}", cells.join(","));
                    }
                    s
                }
                Format::Pretty => table.render(),
            };
            Ok(Output::ok(text))
        }
        Command::Verify { eta } => {
            let expansions = match eta {
                Some(path) => load_expansions(path)?,
                None => eta_expansions(),
            };
            let report = verify_paradox_with(&expansions);
            let text = match format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut s = String::from(
                        "input,excluded_outcome,born_probability,negative_contributors\n",
                    );
                    for r in &report.inputs {
                        let neg: Vec<String> = r
                            .negative_contributors
                            .iter()
                            .map(|l| l.to_string())
                            .collect();
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            r.input,
                            r.excluded_outcome
                                .map(|k| k.to_string())
                                .unwrap_or_default(),
                            r.born_probability.map(csv_num).unwrap_or_default(),
                            neg.join(" ")
                        );
                    }
                    s
                }
                Format::Pretty => report.render(),
            };
            let code = if report.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            };
            Ok(Output { text, code })
        }
        Command::Decompose { state, basis } => {
            let rho = load_state(state)?;
            let basis = resolve_basis(basis)?;
            let parts = decompose(&rho, &basis).map_err(|e| CliError::bad_input(e.to_string()))?;
            Ok(Output::ok(render_decomposition(&basis, &parts, format)))
        }
        Command::Mh {
            state,
            basis_a,
            basis_b,
        } => {
            let rho = load_state(state)?;
            let a = resolve_basis(basis_a)?;
            let b = resolve_basis(basis_b)?;
            let d = mh_joint(&rho, &a, &b).map_err(|e| CliError::bad_input(e.to_string()))?;
            let text = match format {
                Format::Json => to_json(&d),
                Format::Csv => d.to_csv(),
                Format::Pretty => {
                    let mut s = String::new();
                    let width = 12;
                    let _ = write!(s, "{:<width$}", "a\\b");
                    for l in d.basis_b.labels() {
                        let _ = write!(s, "{l:>width$}");
                    }
                    s.push('\n');
                    for (l, row) in d.basis_a.labels().iter().zip(&d.q) {
                        let _ = write!(s, "{l:<width$}");
                        for &x in row {
                            let _ = write!(s, "{:>width$}", format_sig(x, PRETTY_DIGITS));
                        }
                        s.push('\n');
                    }
                    let _ = writeln!(
                        s,
                        "negativity {}",
                        format_sig(d.negativity(), PRETTY_DIGITS)
                    );
                    s
                }
            };
            Ok(Output::ok(text))
        }
    }
}

fn shipped_basis() -> Result<EtaBasis, CliError> {
    eta_basis().map_err(|e| CliError {
        code: EXIT_VERIFY_FAILED,
        message: e.to_string(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

/// Shortest round-trip decimal, without a negative zero.
fn csv_num(x: f64) -> String {
    format!("{}", x + 0.0)
}

fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::bad_input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::bad_input(format!("{}: {e}", path.display())))
}

/// A density matrix, or a ket taken as the pure state `|ψ⟩⟨ψ|`.
pub fn parse_state(value: serde_json::Value) -> Result<ComplexMatrix, String> {
    let matrix_err = match serde_json::from_value::<ComplexMatrix>(value.clone()) {
        Ok(m) => return Ok(m),
        Err(e) => e,
    };
    match serde_json::from_value::<Ket>(value) {
        Ok(k) if k.is_normalized() => Ok(k.projector()),
        Ok(k) => Err(format!("ket has squared norm {}, expected 1", k.norm_sqr())),
        Err(_) => Err(format!("expected a matrix or a ket: {matrix_err}")),
    }
}

fn load_state(path: &Path) -> Result<ComplexMatrix, CliError> {
    parse_state(read_json(path)?)
        .map_err(|e| CliError::bad_input(format!("{}: {e}", path.display())))
}

fn load_expansions(path: &Path) -> Result<[PauliExpansion; 4], CliError> {
    let v: Vec<PauliExpansion> = serde_json::from_value(read_json(path)?)
        .map_err(|e| CliError::bad_input(format!("{}: {e}", path.display())))?;
    v.try_into().map_err(|v: Vec<_>| {
        CliError::bad_input(format!(
            "{}: expected 4 expansions, found {}",
            path.display(),
            v.len()
        ))
    })
}

fn is_basis_name(s: &str) -> bool {
    s == "eta" || (!s.is_empty() && s.chars().all(|c| c == 'Z' || c == 'X'))
}

fn resolve_basis(spec: &str) -> Result<MeasurementBasis, CliError> {
    if spec == "eta" {
        return Ok(shipped_basis()?.measurement_basis());
    }
    if is_basis_name(spec) {
        return MeasurementBasis::named(spec).map_err(|e| CliError {
            code: EXIT_USAGE,
            message: e.to_string(),
        });
    }
    let path = Path::new(spec);
    let kets: Vec<Ket> = serde_json::from_value(read_json(path)?)
        .map_err(|e| CliError::bad_input(format!("{}: {e}", path.display())))?;
    MeasurementBasis::new(kets).map_err(|e| CliError::bad_input(format!("{}: {e}", path.display())))
}

fn render_eta(basis: &EtaBasis, format: Format) -> String {
    #[derive(Serialize)]
    struct Outcome<'a> {
        index: usize,
        excluded_input: InputPair,
        expansion: &'a PauliExpansion,
        ket: &'a Ket,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        outcomes: Vec<Outcome<'a>>,
    }

    let outcomes: Vec<Outcome> = (1..=4)
        .map(|i| Outcome {
            index: i,
            excluded_input: basis.excluded_input(i).expect("index in range"),
            expansion: basis.expansion(i).expect("index in range"),
            ket: basis.ket(i).expect("index in range"),
        })
        .collect();
    match format {
        Format::Json => to_json(&Doc { outcomes }),
        Format::Csv => {
            let mut s = String::from("outcome,excluded_input,pauli,coefficient\n");
            for o in &outcomes {
                for (p, c) in o.expansion.coeffs() {
                    let _ = writeln!(s, "{},{},{p},{}", o.index, o.excluded_input, csv_num(*c));
                }
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for o in &outcomes {
                let _ = writeln!(
                    s,
                    "eta={}  excludes {}  {}",
                    o.index,
                    o.excluded_input,
                    pretty_expansion(o.expansion)
                );
                let _ = writeln!(s, "       ket ({})", pretty_ket(o.ket));
            }
            s
        }
    }
}

fn render_prob(basis: &EtaBasis, input: InputPair, format: Format) -> String {
    #[derive(Serialize)]
    struct Doc {
        input: InputPair,
        probabilities: [f64; 4],
    }
    let probabilities = basis.outcome_probabilities(input);
    match format {
        Format::Json => to_json(&Doc {
            input,
            probabilities,
        }),
        Format::Csv => {
            let mut s = String::from("outcome,probability\n");
            for (i, p) in probabilities.iter().enumerate() {
                let _ = writeln!(s, "{},{}", i + 1, csv_num(*p));
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("input {input}\n");
            for (i, p) in probabilities.iter().enumerate() {
                let _ = writeln!(s, "eta={}  {}", i + 1, format_sig(*p, PRETTY_DIGITS));
            }
            s
        }
    }
}

fn render_decomposition(
    basis: &MeasurementBasis,
    parts: &[quasiprob_core::SubensembleOperator],
    format: Format,
) -> String {
    #[derive(Serialize)]
    struct Part<'a> {
        outcome: &'a str,
        weight: f64,
        operator: &'a ComplexMatrix,
        #[serde(skip_serializing_if = "Option::is_none")]
        pauli: Option<PauliExpansion>,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        basis: &'a MeasurementBasis,
        subensembles: Vec<Part<'a>>,
    }

    let expansion = |m: &ComplexMatrix| qubit_count(m.dim()).and_then(|n| pauli_expand(m, n).ok());
    match format {
        Format::Json => to_json(&Doc {
            basis,
            subensembles: parts
                .iter()
                .map(|p| Part {
                    outcome: &p.label,
                    weight: p.weight,
                    operator: &p.operator,
                    pauli: expansion(&p.operator),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut s = String::from("outcome,weight\n");
            for p in parts {
                let _ = writeln!(s, "{},{}", p.label, csv_num(p.weight));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for p in parts {
                let _ = writeln!(
                    s,
                    "outcome {}  weight {}",
                    p.label,
                    format_sig(p.weight, PRETTY_DIGITS)
                );
                match expansion(&p.operator) {
                    Some(e) => {
                        let _ = writeln!(s, "  R = {}", pretty_expansion(&e));
                    }
                    None => {
                        for r in 0..p.operator.dim() {
                            let cells: Vec<String> = p
                                .operator
                                .row(r)
                                .iter()
                                .map(|&z| pretty_complex(z))
                                .collect();
                            let _ = writeln!(s, "  [{}]", cells.join(", "));
                        }
                    }
                }
            }
            s
        }
    }
}

fn pretty_expansion(e: &PauliExpansion) -> String {
    if e.coeffs().is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (p, &c)) in e.coeffs().iter().enumerate() {
        let c = snap(c);
        match (i, c < 0.0) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        let _ = write!(s, "{} {p}", format_sig(c.abs(), PRETTY_DIGITS));
    }
    s
}

fn pretty_complex(z: Complex64) -> String {
    let (re, im) = (snap(z.re), snap(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format_sig(re, PRETTY_DIGITS),
        (true, false) => format!("{}i", format_sig(im, PRETTY_DIGITS)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!(
                "{}{sign}{}i",
                format_sig(re, PRETTY_DIGITS),
                format_sig(im.abs(), PRETTY_DIGITS)
            )
        }
    }
}

fn pretty_ket(k: &Ket) -> String {
    let cells: Vec<String> = k.amplitudes().iter().map(|&z| pretty_complex(z)).collect();
    cells.join(", ")
}
