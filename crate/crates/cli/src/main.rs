mod args;
mod commands;
mod config;
mod table;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use threegap::metric::SampleSpec;

use args::{Cli, SampleArgs, Verb};
use config::FileConfig;
use table::{Format, Manifest, Precision};

/// Errors that map to exit code 2.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// The error chain, skipping causes already spelled out by their parent.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn sample_spec(args: &SampleArgs, file: &FileConfig, min_index: usize) -> SampleSpec {
    SampleSpec {
        seed: args.seed.or(file.seed).unwrap_or(0),
        count: args.count.or(file.count).unwrap_or(500),
        precision_bits: args.bits.or(file.bits).unwrap_or(256),
        max_index: args.max_index.or(file.max_index).unwrap_or(25).max(min_index),
    }
}

fn run(cli: Cli, argv: &[String]) -> Result<()> {
    let file = match &cli.output.config {
        Some(path) => FileConfig::load(path).map_err(UsageError)?,
        None => FileConfig::default(),
    };
    let format = cli.output.format.or(file.format).unwrap_or(Format::Csv);
    let digits = cli.output.digits.or(file.digits).unwrap_or(10);

    let mut spec_used = None;
    let table = match &cli.verb {
        Verb::Expand { alpha, n } => commands::expand(&alpha.alpha, *n)?,
        Verb::Convergents { alpha, n } => commands::convergent_table(&alpha.alpha, *n)?,
        Verb::Gaps { alpha, n, refine } => commands::gaps(&alpha.alpha, *n, *refine, digits)?,
        Verb::Predict { alpha, n, nmax } => match (n, nmax) {
            (Some(n), _) => commands::predictions(&alpha.alpha, [*n])?,
            (None, Some(m)) => commands::predictions(&alpha.alpha, 1..=*m)?,
            (None, None) => unreachable!("clap requires one of --n, --nmax"),
        },
        Verb::Twogaps { alpha, nmax } => commands::twogaps(&alpha.alpha, *nmax)?,
        Verb::Freq { alpha, checkpoints } => commands::freq(&alpha.alpha, checkpoints, digits)?,
        Verb::ClosedForm { alpha, nmax } => commands::closed_form(&alpha.alpha, *nmax)?,
        Verb::McLevy { sample, n } => {
            let spec = sample_spec(sample, &file, *n);
            let samples = commands::draw(&spec)?;
            spec_used = Some(spec);
            commands::mc_levy(&samples, *n)?
        }
        Verb::McCensus {
            sample,
            statistic,
            range,
            k,
        } => {
            let spec = sample_spec(sample, &file, *range.0.end());
            let samples = commands::draw(&spec)?;
            spec_used = Some(spec);
            commands::mc_census(&samples, *statistic, range, *k)?
        }
        Verb::McFreq { sample, checkpoints } => {
            let spec = sample_spec(sample, &file, 0);
            let samples = commands::draw(&spec)?;
            spec_used = Some(spec);
            commands::mc_freq(&samples, checkpoints)?
        }
    };

    let manifest = (!cli.output.no_manifest).then(|| {
        Manifest::new(
            argv,
            spec_used.as_ref().map(|s| s.seed),
            Precision {
                digits,
                bits: spec_used.as_ref().map(|s| s.precision_bits),
            },
        )
    });
    let text = table.render(format, digits, manifest.as_ref());
    match &cli.output.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
