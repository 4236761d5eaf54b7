use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use monograde::cli::{self, CliError, Command, Overrides, BUDGET_ENV};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Output {
    Json,
}

/// Affine monoids, divisorial ideals and graded hulls of polynomial ideals.
#[derive(Parser, Debug)]
#[command(name = "monograde", version)]
struct Args {
    /// hilbert-basis, canonical, class-group, gorenstein, normalize,
    /// graded-hull or analyze-prime
    command: String,

    /// Job file; standard input when absent or "-".
    #[arg(long)]
    input: Option<String>,

    /// List canonical module members with coordinates in [-N, N].
    #[arg(long = "box", value_name = "N")]
    box_bound: Option<u32>,

    /// Degree up to which graded-hull maximality is checked.
    #[arg(long, value_name = "D")]
    trunc: Option<u32>,

    /// Step budget for Gröbner computations.
    #[arg(long, value_name = "S")]
    budget: Option<u64>,

    #[arg(long, value_enum, default_value = "json")]
    output: Output,

    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json_line());
    ExitCode::from(e.code as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = write!(io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            return fail(&CliError::usage(first.trim_start_matches("error: ")));
        }
    };
    let Output::Json = args.output;
    if Command::from_name(&args.command).is_none() {
        return fail(&CliError::usage(format!("unknown command '{}'", args.command)));
    }

    let text = match args.input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s)
        }
        Some(path) => std::fs::read_to_string(path),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return fail(&CliError::usage(format!("cannot read input: {e}"))),
    };

    let overrides = Overrides {
        box_bound: args.box_bound,
        trunc: args.trunc,
        budget: args.budget,
        env_budget: std::env::var(BUDGET_ENV).ok(),
        timing: args.timing,
    };
    match cli::run(&text, Some(&args.command), &overrides) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
