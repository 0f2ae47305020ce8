//! Library side of the `widthlab` command: argument grammar, subcommands,
//! report rendering and the acceptance suites.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod reproduce;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::args::{AuctionCommand, Cli, Command};
use crate::error::{CliError, CliResult};
use crate::output::Report;
use widthlab::auctions::Mechanism;

/// Seed used when neither `--seed` nor `WIDTHLAB_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_240_611;

/// Resolved run settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub format: args::Format,
    pub seed: u64,
    pub verbose: u8,
}

fn env_seed() -> CliResult<Option<u64>> {
    match std::env::var("WIDTHLAB_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::usage(format!("WIDTHLAB_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn configure_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("WIDTHLAB_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::usage(format!("WIDTHLAB_THREADS={v:?} is not a positive integer")))?;
        // a pool that is already initialized keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> CliResult<Report> {
    match &cli.command {
        Command::Widths(a) => commands::widths(&a.file, a.max_d),
        Command::Maximize(m) => commands::maximize(m),
        Command::Instance(a) => commands::instance(&a.kind, a.output.as_deref(), cfg.seed),
        Command::Approx(a) => commands::approx(&a.file, a.d, &a.mode, a.target_set.as_deref()),
        Command::Auction(AuctionCommand::SingleBid(a)) => commands::auction(Mechanism::SingleBid, a, cfg.seed),
        Command::Auction(AuctionCommand::Sia(a)) => commands::auction(Mechanism::Sia, a, cfg.seed),
        Command::Reproduce(a) => {
            let r = reproduce::run_suite(a.suite, cfg.seed)?;
            let instances = r
                .criteria
                .iter()
                .map(|c| (format!("criterion-{}", c.id), serde_json::json!(c)))
                .collect();
            let code = if r.failed == 0 { 0 } else { 1 };
            if cfg.verbose > 0 && r.failed > 0 {
                eprintln!("{}", CliError::Mismatch { failed: r.failed, total: r.criteria.len() });
            }
            Ok(Report {
                value: serde_json::json!(r),
                instances,
                text: Some(r.text()),
                code,
            })
        }
    }
}

/// Parses `argv`, runs the subcommand and writes the report to `out`
/// (errors go to `err` as JSON). Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", CliError::usage(e.to_string().trim().to_string()).to_json());
            return 2;
        }
    };
    let result = (|| {
        configure_threads()?;
        let seed = match cli.seed {
            Some(s) => s,
            None => env_seed()?.unwrap_or(DEFAULT_SEED),
        };
        let format = match &cli.command {
            Command::Widths(a) => a.report.unwrap_or(cli.format),
            _ => cli.format,
        };
        let cfg = RunConfig {
            format,
            seed,
            verbose: cli.verbose,
        };
        let report = dispatch(&cli, &cfg)?;
        Ok::<_, CliError>((report.render(cfg.format)?, report.code))
    })();
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code()
        }
    }
}
