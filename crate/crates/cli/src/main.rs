use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use verifier::{render, run, Suite, SuiteConfig, DEFAULT_RETRIES};

/// Run verification suites and write a JSON certificate.
#[derive(Parser, Debug)]
#[command(name = "verifier", version)]
struct Args {
    /// lattice, mukai, hilbert, scroll, geometry or all
    #[arg(value_parser = Suite::NAMES, required_unless_present = "suite_flag")]
    suite: Option<String>,
    #[arg(long = "suite", value_parser = Suite::NAMES, conflicts_with = "suite")]
    suite_flag: Option<String>,
    /// Prime for the finite-field suites
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 picks the number of cores
    #[arg(long, env = "VERIFIER_THREADS", default_value_t = 0)]
    threads: usize,
    /// Retries when a random choice is degenerate
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    retries: usize,
    /// Certificate path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the text table to standard error
    #[arg(long)]
    table: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let name = args.suite.or(args.suite_flag).expect("clap requires a suite");
    let suite: Suite = match name.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let config = SuiteConfig {
        suite,
        prime: args.prime,
        seed: args.seed,
        threads: args.threads,
        retries: args.retries,
        out: args.out,
    };
    let cert = match run(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = cert.to_json();
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    if args.table {
        eprint!("{}", render(&cert));
    }
    ExitCode::from(cert.exit_code() as u8)
}
