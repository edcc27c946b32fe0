use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use threegap::{AlphaSource, CfExpansion};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "threegap", version, about = "Gap structure of {kα} from the continued fraction of α")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format [default: csv]
    #[arg(long, global = true, env = "THREEGAP_FORMAT")]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Decimal places for rendered decimals [default: 10]
    #[arg(long, global = true, env = "THREEGAP_DIGITS")]
    pub digits: Option<usize>,
    /// Omit the run manifest
    #[arg(long, global = true)]
    pub no_manifest: bool,
    /// TOML file with defaults for seed, count, bits, digits, format, max_index
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Continued-fraction digits of α
    Expand {
        #[command(flatten)]
        alpha: AlphaArg,
        /// Number of digits to list [default: one full cycle]
        #[arg(long)]
        n: Option<usize>,
    },
    /// Convergents p_m/q_m for 0 ≤ m ≤ n
    Convergents {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Exact gap lengths and multiplicities of the first N points
    Gaps {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Use a surrogate this many convergents past the minimal one;
        /// sharpens gap values, never changes the gap pattern
        #[arg(long, default_value_t = 0)]
        refine: usize,
    },
    /// Predicted u_2, u_N and two-gap status, for one N or every N ≤ nmax
    Predict {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), required_unless_present = "nmax", conflicts_with = "nmax")]
        n: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: Option<u64>,
    },
    /// Every N ≤ nmax with exactly two distinct gaps
    Twogaps {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        nmax: u64,
    },
    /// Two-gap counts and frequency bounds at checkpoints
    Freq {
        #[command(flatten)]
        alpha: AlphaArg,
        /// Comma-separated ascending list, e.g. 100,1000,10000
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
        checkpoints: Vec<u64>,
    },
    /// Denominator closed form against the recurrence (periodic α only)
    ClosedForm {
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
    },
    /// Per-sample ln(q_n)/n over random α
    McLevy {
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, default_value_t = 25)]
        n: usize,
    },
    /// Digit census over random α
    McCensus {
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, value_enum, default_value_t = Statistic::Bb)]
        statistic: Statistic,
        /// Index range lo..hi (inclusive) for bb and digit-sum
        #[arg(long, value_parser = parse_range, default_value = "2..10")]
        range: IndexRange,
        /// Largest first digit k for first-digit
        #[arg(long, default_value_t = 3)]
        k: u64,
    },
    /// Two-gap frequency over random α at checkpoints
    McFreq {
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000", value_parser = clap::value_parser!(u64).range(1..))]
        checkpoints: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Statistic {
    /// Fraction of samples with some a_n ≥ n², n from lo to hi
    Bb,
    /// P(a_1 = k) against 1/(k(k+1))
    FirstDigit,
    /// Mean of (a_1 + … + a_n)/q_{n−1}
    DigitSum,
}

#[derive(Debug, Args)]
pub struct AlphaArg {
    /// α as p/q, (P+sqrt D)/Q, or [0;a1,a2,…] with optional period(…)
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
    pub alpha: Alpha,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Base seed [default: 0]
    #[arg(long, env = "THREEGAP_SEED")]
    pub seed: Option<u64>,
    /// Number of samples [default: 500]
    #[arg(long, env = "THREEGAP_COUNT")]
    pub count: Option<usize>,
    /// Random bits per sample [default: 256]
    #[arg(long, env = "THREEGAP_BITS")]
    pub bits: Option<u32>,
    /// Digits each sample must carry [default: 25]
    #[arg(long)]
    pub max_index: Option<usize>,
}

/// A parsed α together with its expansion.
#[derive(Debug, Clone)]
pub struct Alpha {
    pub source: AlphaSource,
    pub cf: CfExpansion,
}

fn parse_alpha(s: &str) -> Result<Alpha, String> {
    let source: AlphaSource = s.parse().map_err(|e| format!("{e}"))?;
    let cf = source.expansion().map_err(|e| e.to_string())?;
    Ok(Alpha { source, cf })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRange(pub RangeInclusive<usize>);

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.0.start(), self.0.end())
    }
}

fn parse_range(s: &str) -> Result<IndexRange, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|e| format!("lower bound: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("upper bound: {e}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("need 1 ≤ lo ≤ hi, got {lo}..{hi}"));
    }
    Ok(IndexRange(lo..=hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(argv: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("threegap").chain(argv.iter().copied()))
    }

    #[test]
    fn verify_cli() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn surd_spellings_agree() {
        let a = parse(&["twogaps", "--alpha", "(0+sqrt 5 -1)/2", "--nmax", "13"]).unwrap();
        let b = parse(&["twogaps", "--alpha", "(-1+√5)/2", "--nmax", "13"]).unwrap();
        let (Verb::Twogaps { alpha: a, .. }, Verb::Twogaps { alpha: b, .. }) = (a.verb, b.verb) else {
            panic!("wrong verb");
        };
        assert_eq!(a.alpha.source, b.alpha.source);
    }

    #[test]
    fn rational_and_cf_forms() {
        let c = parse(&["gaps", "--alpha", "7/24", "--n", "3"]).unwrap();
        let Verb::Gaps { alpha, n, .. } = c.verb else { panic!() };
        assert_eq!(n, 3);
        assert_eq!(alpha.alpha.source.to_string(), "7/24");
        let c = parse(&["freq", "--alpha", "[0;1,period(1)]", "--checkpoints", "100,10000"]).unwrap();
        let Verb::Freq { checkpoints, .. } = c.verb else { panic!() };
        assert_eq!(checkpoints, [100, 10000]);
    }

    #[test]
    fn usage_errors() {
        for argv in [
            &["gaps", "--alpha", "7/", "--n", "3"][..],
            &["gaps", "--alpha", "7/24", "--n", "x"],
            &["gaps", "--alpha", "3/2", "--n", "3"],
            &["frobnicate"],
            &["predict", "--alpha", "7/24"],
        ] {
            let err = parse(argv).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{argv:?}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..10").unwrap(), IndexRange(2..=10));
        assert_eq!(parse_range("3..=3").unwrap(), IndexRange(3..=3));
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("5..3").is_err());
    }
}
