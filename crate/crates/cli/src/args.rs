use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qgenocchi",
    version,
    about = "Modified q-Genocchi numbers, polynomials and zeta functions"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Decimal digits in rendered values.
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=50), global = true)]
    pub precision: u32,
    /// Absolute tolerance for numeric series.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Ceiling on summed terms (also settable through QGENOCCHI_MAX_TERMS).
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Series,
    Integral,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Symbolic,
    Numeric,
    Integral,
    Zeta,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of Genocchi numbers, Bernoulli numbers and zeta(1-n) for n <= NMAX.
    Classical { nmax: usize },
    /// Coefficients of G_{n,q}(x) as exact rational functions of q.
    Qpoly { n: usize },
    /// Evaluate G_{n+1,q}(x)/(n+1) symbolically, by series, or by the fermionic sum.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Prime and depth exponent "p,N" for the fermionic sum.
        #[arg(long)]
        depth: Option<String>,
    },
    /// Evaluate zeta_q(s, x), or the partial function H_q(s, x : a, F).
    Zeta {
        /// Complex argument written "a+bi".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Residue class "a,F" with odd F.
        #[arg(long)]
        partial: Option<String>,
        /// Recompute the value by an independent route and report the residual.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run the identity-verification suite.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}
