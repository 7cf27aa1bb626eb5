use clap::{Parser, ValueEnum};
use qheun::normalform::registry::{catalog, ClaimSet};
use qheun::runner::{run_suite, write_report, Format, Mode, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Specialized,
    Symbolic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClaimsArg {
    Literal,
    Corrected,
}

/// Reconstructs q-Heun type equations from q-Painleve Lax pairs and checks them against the claimed normal forms.
#[derive(Debug, Parser)]
#[command(name = "qheun", version)]
struct Args {
    /// Glob over case ids, e.g. "D5:*" or "E7:f=*".
    #[arg(long, default_value = "*")]
    cases: String,
    #[arg(long, value_enum, default_value = "specialized")]
    mode: ModeArg,
    /// Random bindings per case (specialized mode).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    seeds: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the case registry and exit.
    #[arg(long)]
    list: bool,
    /// Check the printed parameters or the repaired ones.
    #[arg(long, value_enum, default_value = "literal")]
    claims: ClaimsArg,
    /// Highest eps power kept in the E8 expansion.
    #[arg(long, default_value_t = 3)]
    truncation: i64,
    /// Leave timings out so reports are byte-identical between runs.
    #[arg(long)]
    no_timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let claims = match args.claims {
        ClaimsArg::Literal => ClaimSet::Literal,
        ClaimsArg::Corrected => ClaimSet::Corrected,
    };
    if args.list {
        print!("{}", catalog(claims));
        return ExitCode::SUCCESS;
    }
    let cfg = RunConfig {
        cases: args.cases,
        mode: match args.mode {
            ModeArg::Specialized => Mode::Specialized,
            ModeArg::Symbolic => Mode::Symbolic,
        },
        seeds: args.seeds as usize,
        seed: args.seed,
        claims,
        truncation: args.truncation,
        timing: !args.no_timing,
    };
    let format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Md => Format::Markdown,
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qheun: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write_report(&report, format, args.out.as_deref()) {
        eprintln!("qheun: {e}");
        return ExitCode::from(2);
    }
    if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
