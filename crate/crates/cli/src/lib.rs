//! Command-line front-end: argument handling, model files and report output.

pub mod commands;
pub mod error;
pub mod modelfile;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use equichern::charclass::{CliffordSign, RelativeConvention};
use equichern::gca::Rational;
use equichern::report::Report;

use commands::{Options, Target};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "equichern", version, about = "Exact checks for equivariant Chern–Weil models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Model file (TOML).
    #[arg(long, global = true, conflicts_with = "builtin")]
    pub model: Option<PathBuf>,
    /// Built-in target; see `equichern list`.
    #[arg(long, global = true)]
    pub builtin: Option<String>,
    /// Truncation cap.
    #[arg(long, global = true)]
    pub cap: Option<u32>,
    /// Time parameter, a positive rational such as `4` or `9/4`.
    #[arg(long, global = true)]
    pub t: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Sign::Neg)]
    pub clifford_sign: Sign,
    #[arg(long, global = true, value_enum, default_value_t = Convention::Paper)]
    pub relative_ch_convention: Convention,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Tolerance for the numeric Volterra comparison.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Degree of the twisting line bundle for `index`.
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub degree: i64,
    /// Monomial length bound for `basic` on models with functions.
    #[arg(long, global = true)]
    pub max_length: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan-calculus axioms and Lie-algebra validation.
    Axioms,
    /// Basis of the basic subspace in degree k.
    Basic { k: u32 },
    /// Equivariant curvature, Bianchi identity, Θ_Q/Ω_Q and pullback checks.
    Curvature,
    /// Â, ch and relative ch under both conventions.
    Charclass { cap: Option<u32> },
    /// Superconnection Chern character, transgression, scaling, Volterra.
    Superconn { t: Option<String>, cap: Option<u32> },
    /// Fiber-integrated index density against its oracle.
    Index { cap: Option<u32> },
    /// Localization on the rotating sphere.
    Dh { order: Option<u32> },
    /// Built-in targets per command.
    List,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Sign {
    Pos,
    Neg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Convention {
    Paper,
    Standard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Axioms => "axioms",
            Command::Basic { .. } => "basic",
            Command::Curvature => "curvature",
            Command::Charclass { .. } => "charclass",
            Command::Superconn { .. } => "superconn",
            Command::Index { .. } => "index",
            Command::Dh { .. } => "dh",
            Command::List => "list",
        }
    }
}

fn parse_t(s: &str) -> Result<Rational, CliError> {
    let t: Rational = s.parse().map_err(|_| CliError::Input(format!("--t `{s}` is not a rational")))?;
    if t <= Rational::from_integer(0.into()) {
        return Err(CliError::Input(format!("--t `{s}` must be positive")));
    }
    Ok(t)
}

fn default_builtin(command: &Command) -> &'static str {
    match command {
        Command::Axioms | Command::Basic { .. } => "su2",
        Command::Curvature | Command::Charclass { .. } => "u1-weight",
        Command::Superconn { .. } => "torus-22",
        Command::Index { .. } => "s2",
        Command::Dh { .. } | Command::List => "s2rot",
    }
}

/// Runs one command and renders its output; returns `(stdout, exit code)`.
pub fn execute(cli: &Cli) -> (String, i32) {
    if let Command::List = cli.command {
        let mut out = String::new();
        for c in ["axioms", "basic", "curvature", "charclass", "superconn", "index", "dh"] {
            out.push_str(&format!("{c}: {}\n", commands::builtins_for(c).join(" ")));
        }
        return (out, 0);
    }
    match run(cli) {
        Ok((target, report)) => {
            let name = cli.command.name();
            let text = match cli.format {
                Format::Text => output::text(name, &target, &report),
                Format::Machine => output::machine(name, &target, &report),
            };
            (text, if report.passed() { 0 } else { 1 })
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}

pub fn run(cli: &Cli) -> Result<(String, Report), CliError> {
    let target = match (&cli.model, &cli.builtin) {
        (Some(path), _) => Target::File(Box::new(modelfile::load(path)?)),
        (None, Some(name)) => Target::Builtin(name.clone()),
        (None, None) => Target::Builtin(default_builtin(&cli.command).to_string()),
    };
    let opts = Options {
        cap: cli.cap,
        t: cli.t.as_deref().map(parse_t).transpose()?,
        sign: match cli.clifford_sign {
            Sign::Pos => CliffordSign::Positive,
            Sign::Neg => CliffordSign::Negative,
        },
        convention: match cli.relative_ch_convention {
            Convention::Paper => RelativeConvention::Paper,
            Convention::Standard => RelativeConvention::Alternate,
        },
        tol: cli.tol,
        degree: cli.degree,
        max_length: cli.max_length,
    };
    let report = match &cli.command {
        Command::Axioms => commands::axioms(&target, &opts)?,
        Command::Basic { k } => commands::basic(&target, *k, &opts)?,
        Command::Curvature => commands::curvature(&target)?,
        Command::Charclass { cap } => commands::charclass(&target, cap.or(opts.cap).unwrap_or(6), &opts)?,
        Command::Superconn { t, cap } => {
            let t = match t {
                Some(s) => parse_t(s)?,
                None => opts.t.clone().unwrap_or_else(|| Rational::from_integer(1.into())),
            };
            commands::superconn(&target, &t, cap.or(opts.cap).unwrap_or(6), &opts)?
        }
        Command::Index { cap } => commands::index(&target, cap.or(opts.cap), &opts)?,
        Command::Dh { order } => commands::dh(&target, order.unwrap_or(10))?,
        Command::List => unreachable!("handled in execute"),
    };
    Ok((target.label(), report))
}
