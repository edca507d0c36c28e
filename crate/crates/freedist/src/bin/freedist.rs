use clap::Parser;
use freedist::report::{emit_report, run_suite, Format, NRange, Params, Report, DEFAULT_SEED};
use std::path::PathBuf;
use std::process::ExitCode;

/// Runs the verification suites and prints or writes a report.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Args {
    /// algebra, kostant, models, tractor, octonion, inclusions or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Range of n, e.g. 2..5
    #[arg(long, default_value = "2..5")]
    n: NRange,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include expensive checks (Kostant homology for n ≥ 5)
    #[arg(long)]
    deep: bool,
    /// Omit elapsed times and the generation timestamp
    #[arg(long)]
    no_timestamp: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let params = Params { n: args.n, seed: args.seed, deep: args.deep, timing: !args.no_timestamp };
    let checks = match run_suite(&args.suite, &params) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = Report::new(&args.suite, &params, checks);
    match emit_report(&report, args.format, args.out.as_deref()) {
        Ok(s) if args.out.is_none() => print!("{s}"),
        Ok(_) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if report.any_failed() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
