//! `crossbraid`: construct, verify and enumerate structures on pointed and
//! Tambara–Yamagami fusion categories.
//!
//! Exit status: 0 when every verification passed (or an enumeration
//! completed), 1 when a verification failed, 2 on invalid input.

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod instance;
mod verbs;

use instance::Instance;
use verbs::Report;

#[derive(Parser)]
#[command(name = "crossbraid", version, about = "Exact coherence checks and classifications for small fusion categories")]
#[command(after_help = "EXAMPLES
  crossbraid pentagon --ty --group 2 --chi '[[1/2]]' --tau +
  crossbraid braidings --ty --group 2,2 --chi '[[1/2,0],[0,1/2]]' --tau - --brute-force
  crossbraid obstruction --pointed --group 4 --omega omega.json --json
  crossbraid ising-report --json -o ising.json

EXIT STATUS
  0  verifications passed / enumeration completed
  1  a verification failed (a witness is printed)
  2  invalid input")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the pentagon identity on every admissible index set
    Pentagon(Common),
    /// Enumerate ordinary braidings
    Braidings(Common),
    /// Enumerate ℤ/2-crossed braidings (TY) or verify the canonical one (pointed)
    CrossedBraidings(Common),
    /// Enumerate braidings relative to the trivial component (TY only)
    RelativeBraidings(Common),
    /// Enumerate ribbon twists of every crossed braiding (TY only)
    Ribbons(Common),
    /// Compute the trivialization obstruction class
    Obstruction(Common),
    /// Enumerate trivializations of the grading action
    Trivializations(Common),
    /// Full report on the two Ising categories
    IsingReport(Output),
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Use the exhaustive search instead of the closed formulas
    #[arg(long)]
    brute_force: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct InstanceArgs {
    /// Tambara–Yamagami instance: needs --group, --chi, --tau
    #[arg(long)]
    ty: bool,
    /// Pointed instance Vec_A^ω: needs --group, --omega
    #[arg(long)]
    pointed: bool,
    /// Invariant factors, e.g. "2,2"
    #[arg(long)]
    group: Option<String>,
    /// Bicharacter on generators as rational turns, e.g. "[[1/2]]"
    #[arg(long)]
    chi: Option<String>,
    /// Sign of τ
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// JSON cochain file holding ω
    #[arg(long)]
    omega: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Write the report to a file instead of stdout
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

pub enum Failure {
    Input(String),
    Verification(String),
}

impl Failure {
    pub fn input(e: impl Display) -> Self {
        Failure::Input(e.to_string())
    }
}

fn missing(flag: &str, kind: &str) -> Failure {
    Failure::Input(format!("{kind} instances need {flag}"))
}

impl InstanceArgs {
    fn build(&self) -> Result<Instance, Failure> {
        let group = || self.group.as_deref().ok_or_else(|| missing("--group", "all"));
        match (self.ty, self.pointed) {
            (true, false) => {
                let chi = self.chi.as_deref().ok_or_else(|| missing("--chi", "TY"))?;
                let tau = self.tau.as_deref().ok_or_else(|| missing("--tau", "TY"))?;
                if self.omega.is_some() {
                    return Err(Failure::Input("--omega applies to pointed instances".into()));
                }
                Ok(Instance::Ty(instance::ty(group()?, chi, tau)?))
            }
            (false, true) => {
                let omega = self.omega.as_deref().ok_or_else(|| missing("--omega", "pointed"))?;
                if self.chi.is_some() || self.tau.is_some() {
                    return Err(Failure::Input("--chi and --tau apply to TY instances".into()));
                }
                Ok(Instance::Pointed(instance::pointed(group()?, omega)?))
            }
            _ => Err(Failure::Input("exactly one of --ty and --pointed is required".into())),
        }
    }
}

fn run(verb: &Verb) -> Result<Report, Failure> {
    let (c, f): (&Common, fn(&Instance, bool) -> Result<Report, Failure>) = match verb {
        Verb::IsingReport(_) => return verbs::ising_report(),
        Verb::Pentagon(c) => (c, |i, _| verbs::pentagon(i)),
        Verb::Braidings(c) => (c, verbs::braidings),
        Verb::CrossedBraidings(c) => (c, verbs::crossed_braidings),
        Verb::RelativeBraidings(c) => (c, verbs::relative_braidings),
        Verb::Ribbons(c) => (c, verbs::ribbons),
        Verb::Obstruction(c) => (c, verbs::obstruction),
        Verb::Trivializations(c) => (c, verbs::trivializations),
    };
    let inst = c.instance.build()?;
    f(&inst, c.brute_force)
}

fn output(verb: &Verb) -> &Output {
    match verb {
        Verb::IsingReport(o) => o,
        Verb::Pentagon(c)
        | Verb::Braidings(c)
        | Verb::CrossedBraidings(c)
        | Verb::RelativeBraidings(c)
        | Verb::Ribbons(c)
        | Verb::Obstruction(c)
        | Verb::Trivializations(c) => &c.output,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = output(&cli.verb);
    let report = match run(&cli.verb) {
        Ok(r) => r,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let body = if out.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        report.text()
    };
    match &out.output {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        if let Some(w) = &report.witness {
            eprintln!("verification failed: {w}");
        }
        ExitCode::from(1)
    }
}
