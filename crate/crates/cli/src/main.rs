use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cauchy_lu::{Fault, Rational};

mod commands;

/// Exact determinant and LU factors of M(s, t)[i][l] = 1/((2l)^2 - t^2 (2i-1)^2).
#[derive(Debug, Parser)]
#[command(name = "cauchy-lu", version)]
struct Cli {
    /// Emit JSON on standard output instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    /// Corrupt one formula constant (test harness only).
    #[arg(long, global = true, hide = true, value_parser = parse_fault)]
    inject_fault: Option<Fault>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Determinant D_s as the product of the closed-form U diagonal.
    Det {
        #[command(flatten)]
        target: Target,
        /// Largest s for which the elimination oracle also runs
        /// (default 12 numeric, 5 symbolic).
        #[arg(long)]
        oracle_cap: Option<usize>,
    },
    /// Closed-form L and U factors.
    Lu {
        #[command(flatten)]
        target: Target,
        /// Also run Doolittle elimination and compare the factors.
        #[arg(long)]
        compare: bool,
    },
    /// The six t = 1 determinant expressions for s = 1..=S.
    Chain {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
    },
    /// Run every verification suite.
    Verify(VerifyArgs),
    /// Time the closed form against elimination at t = 1.
    Bench {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
    },
}

#[derive(Debug, Args)]
struct Target {
    /// Matrix size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    s: u64,
    /// Numeric t as an exact fraction "p/q".
    #[arg(long, value_parser = parse_rational, conflicts_with = "symbolic")]
    t: Option<Rational>,
    /// Keep t as an indeterminate.
    #[arg(long)]
    symbolic: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Seed for the random t samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    s_max_symbolic: usize,
    #[arg(long, default_value_t = 12)]
    s_max_numeric: usize,
    /// Number of random t samples in numeric mode.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Bound for i, j and l in the product identities.
    #[arg(long, default_value_t = 8)]
    gamma_max: usize,
    #[arg(long, default_value_t = 20)]
    chain_s_max: usize,
    /// Largest s for the elimination cross-check in the chain suite.
    #[arg(long, default_value_t = 12)]
    elimination_cap: usize,
    /// Include wall-clock times in JSON output (makes it non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: cauchy_lu::ParseError| e.to_string())
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        json: cli.json,
        fault: cli.inject_fault,
    };
    let result = match cli.command {
        Command::Det { target, oracle_cap } => {
            commands::det(&ctx, target.s as usize, mode(&target, false), oracle_cap)
        }
        Command::Lu { target, compare } => commands::lu(&ctx, target.s as usize, mode(&target, true), compare),
        Command::Chain { s } => commands::chain(&ctx, s as usize),
        Command::Verify(args) => commands::verify(
            &ctx,
            &cauchy_lu::VerifyConfig {
                s_max_symbolic: args.s_max_symbolic,
                s_max_numeric: args.s_max_numeric,
                t_sample_count: args.samples,
                seed: args.seed,
                gamma_i_max: args.gamma_max,
                gamma_j_max: args.gamma_max,
                gamma_l_max: args.gamma_max,
                chain_s_max: args.chain_s_max,
                elimination_cap: args.elimination_cap,
                fault: cli.inject_fault,
            },
            args.timings,
        ),
        Command::Bench { s } => commands::bench(&ctx, s as usize),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

/// `det` defaults to t = 1, `lu` to symbolic t.
fn mode(target: &Target, symbolic_by_default: bool) -> commands::TMode {
    match (&target.t, target.symbolic) {
        (Some(t), _) => commands::TMode::Numeric(t.clone()),
        (None, true) => commands::TMode::Symbolic,
        (None, false) if symbolic_by_default => commands::TMode::Symbolic,
        (None, false) => commands::TMode::Numeric(Rational::one()),
    }
}
