use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hpdcalc_core::catalog::{self, CASES};
use hpdcalc_core::checks::run_all;
use hpdcalc_core::dsl::{load, ValidateOptions};
use hpdcalc_core::engine::JPrimeBound;
use hpdcalc_core::prop::{self, PropConfig};
use hpdcalc_core::{CheckConfig, Integer, Report};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hpdcalc",
    version,
    about = "Invariant calculus for Lefschetz categories, joins and HPD"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check statement of a .hpd file.
    Check {
        file: PathBuf,
        /// Write the JSON report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Accept non-moderate categories for operations that do not need HPD.
        #[arg(long)]
        allow_nonmoderate: bool,
    },
    /// Run built-in example cases against their stored golden reports.
    Catalog {
        name: Option<String>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write fresh golden reports into DIR instead of comparing.
        #[arg(long, value_name = "DIR")]
        regenerate: Option<PathBuf>,
        /// Negative control: use the N-2 bound for the reduced join pieces.
        #[arg(long)]
        mutate_join_bound: bool,
    },
    /// Run the seeded randomized property suites.
    Prop {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 5)]
        max_length: usize,
        #[arg(long, default_value_t = 9)]
        max_rank_v: usize,
        #[arg(long, default_value_t = 2)]
        max_symbols: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Negative control: use the N-2 bound for the reduced join pieces.
        #[arg(long)]
        mutate_join_bound: bool,
    },
}

fn bound(mutate: bool) -> JPrimeBound {
    if mutate {
        JPrimeBound::Printed
    } else {
        JPrimeBound::Orthogonal
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("hpdcalc: {msg}");
    ExitCode::from(code)
}

fn finish(report: &Report<Integer>, json: Option<&Path>) -> ExitCode {
    print!("{}", report.summary());
    if let Some(path) = json {
        if let Err(e) = fs::write(path, report.to_json()) {
            return fail(EXIT_IO, format!("{}: {e}", path.display()));
        }
    }
    ExitCode::from(report.status().code() as u8)
}

fn cmd_check(file: &Path, json: Option<&Path>, allow_nonmoderate: bool) -> ExitCode {
    let bytes = match fs::read(file) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_IO, format!("{}: {e}", file.display())),
    };
    let Ok(src) = String::from_utf8(bytes.clone()) else {
        return fail(EXIT_IO, format!("{}: not valid UTF-8", file.display()));
    };
    let opts = ValidateOptions { allow_nonmoderate };
    let ws = match load::<Integer>(&src, opts) {
        Ok(ws) => ws,
        Err(e) => return fail(EXIT_USAGE, format!("{}:{e}", file.display())),
    };
    match run_all(&ws, &CheckConfig::default()) {
        Ok(outcomes) => finish(
            &Report::from_outcomes(&bytes, outcomes, ws.warnings()),
            json,
        ),
        Err(e) => fail(EXIT_USAGE, format!("{}: {e}", file.display())),
    }
}

fn cmd_catalog(
    name: Option<&str>,
    json: Option<&Path>,
    regenerate: Option<&Path>,
    mutate: bool,
) -> ExitCode {
    let cfg = CheckConfig {
        bound: bound(mutate),
    };
    if let Some(dir) = regenerate {
        let cases: Vec<_> = match name {
            Some(n) => match catalog::case(n) {
                Some(c) => vec![c],
                None => return fail(EXIT_USAGE, format!("unknown catalog case `{n}`")),
            },
            None => CASES.iter().collect(),
        };
        for case in cases {
            let report = match catalog::case_report(case, &cfg) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_USAGE, e),
            };
            let path = dir.join(format!("{}.golden.json", case.name));
            if let Err(e) = fs::write(&path, report.to_json()) {
                return fail(EXIT_IO, format!("{}: {e}", path.display()));
            }
            println!("wrote {}", path.display());
        }
        return ExitCode::SUCCESS;
    }
    match catalog::run_catalog(name, &cfg) {
        Ok((report, runs)) => {
            for run in &runs {
                println!("{run}");
            }
            finish(&report, json)
        }
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check {
            file,
            json,
            allow_nonmoderate,
        } => cmd_check(&file, json.as_deref(), allow_nonmoderate),
        Command::Catalog {
            name,
            json,
            regenerate,
            mutate_join_bound,
        } => cmd_catalog(
            name.as_deref(),
            json.as_deref(),
            regenerate.as_deref(),
            mutate_join_bound,
        ),
        Command::Prop {
            seed,
            cases,
            max_length,
            max_rank_v,
            max_symbols,
            json,
            mutate_join_bound,
        } => {
            let cfg = PropConfig {
                seed,
                cases,
                max_length,
                max_rank_v,
                max_symbols,
                bound: bound(mutate_join_bound),
            };
            match prop::run(&cfg) {
                Ok(report) => finish(&report, json.as_deref()),
                Err(e) => fail(EXIT_USAGE, e),
            }
        }
    }
}
