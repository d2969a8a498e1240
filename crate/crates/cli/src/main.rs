//! `decim`: command-line front end for the decimation period engines.
//!
//! Every subcommand prints JSON on stdout. Domain errors exit with status 1,
//! usage errors with status 2; diagnostics go to stderr.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use decim::lfsr::{self, Gf2Poly};
use decim::moments::{
    brute_force, closed_form, monte_carlo, ExactEngine, MomentReport,
    MonteCarloConfig, Probability, StepProbability, CSV_HEADER,
};
use decim::wordclass::{self, CyclicPart};
use decim::{lambda_mu, simulate_orbit, Error, StepWord};

#[derive(Parser, Debug)]
#[command(name = "decim", version, about = "Preperiod and period of self-decimated generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

/// Modulus selection: a single `--t` or an inclusive `--t-from/--t-to` sweep.
#[derive(clap::Args, Debug)]
struct ModulusRange {
    /// Modulus T
    #[arg(long = "t", short = 't', conflicts_with_all = ["t_from", "t_to"], required_unless_present_all = ["t_from", "t_to"])]
    t: Option<u64>,
    #[arg(long, requires = "t_to")]
    t_from: Option<u64>,
    #[arg(long, requires = "t_from")]
    t_to: Option<u64>,
    /// Output format; csv emits a header and one row per T
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

impl ModulusRange {
    fn bounds(&self) -> (u64, u64) {
        match self.t {
            Some(t) => (t, t),
            None => (self.t_from.unwrap_or(1), self.t_to.unwrap_or(1)),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Preperiod and period of a step word modulo T
    LambdaMu {
        #[arg(long)]
        word: StepWord,
        #[arg(long)]
        modulus: u64,
    },
    /// State orbit of the self-decimated generator
    Orbit {
        #[arg(long)]
        word: StepWord,
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
    /// Class, admissible moduli and prefix sets of a cyclic part
    Classify {
        #[arg(long)]
        word: CyclicPart,
    },
    /// Admissible prefixes of a cyclic part
    Prefixes {
        #[arg(long)]
        cyclic_part: CyclicPart,
        #[arg(long)]
        modulus: u64,
    },
    /// Brute-force configuration count g(n1, n2, m1, m2, t)
    Count {
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        #[arg(long, default_value_t = 0)]
        m1: u32,
        #[arg(long, default_value_t = 0)]
        m2: u32,
        #[arg(long = "t", short = 't')]
        t: u64,
    },
    /// Exact moments by coefficient extraction
    Exact {
        /// Probability of step 2, as "a/b" or an integer
        #[arg(long)]
        p: String,
        #[command(flatten)]
        range: ModulusRange,
    },
    /// Leading asymptotic moments
    Closed {
        /// Probability of step 2, as "a/b" or an integer
        #[arg(long)]
        p: String,
        #[command(flatten)]
        range: ModulusRange,
    },
    /// Exact moments by trajectory enumeration (T <= 14)
    Brute {
        /// Probability of step 2, as "a/b" or an integer
        #[arg(long)]
        p: String,
        #[command(flatten)]
        range: ModulusRange,
    },
    /// Monte Carlo moments
    Mc {
        /// Probability of step 2, as "a/b" or a float
        #[arg(long)]
        p: String,
        #[command(flatten)]
        range: ModulusRange,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0 = all cores); output does not depend on it
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Period of the LFSR-driven step word modulo 2^k - 1
    Rueppel {
        /// Characteristic polynomial as a bitmask (0b…, 0x… or decimal)
        #[arg(long, value_parser = parse_mask)]
        poly: u32,
        /// Nonzero initial fill, bit i = σ_i
        #[arg(long, value_parser = parse_mask)]
        fill: u32,
    },
    /// Check [z^T] G(π, π, z) = 1 for T = 1..=t-max
    NormalizeCheck {
        /// Probability of step 2, as "a/b" or an integer
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 200)]
        t_max: u64,
    },
}

fn parse_mask(s: &str) -> Result<u32, String> {
    let s = s.trim();
    let (digits, radix) = if let Some(b) = s.strip_prefix("0b") {
        (b, 2)
    } else if let Some(h) = s.strip_prefix("0x") {
        (h, 16)
    } else {
        (s, 10)
    };
    u32::from_str_radix(&digits.replace('_', ""), radix).map_err(|e| e.to_string())
}

/// Where rows go; JSON reports stream one object per line.
struct Sink<W: Write> {
    out: W,
    format: Format,
    header_written: bool,
}

impl<W: Write> Sink<W> {
    fn new(out: W, format: Format) -> Self {
        Self { out, format, header_written: false }
    }

    fn report(&mut self, r: &MomentReport) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", r.to_json()),
            Format::Csv => {
                if !self.header_written {
                    writeln!(self.out, "{CSV_HEADER}")?;
                    self.header_written = true;
                }
                writeln!(self.out, "{}", r.csv_row())
            }
        }
    }
}

fn emit(out: &mut impl Write, value: Value) -> io::Result<()> {
    writeln!(out, "{value}")
}

enum Failure {
    Domain(Error),
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Probabilities are parsed here rather than by clap so that a bad value is
/// reported as a domain error.
fn parse_p<P: std::str::FromStr<Err = Error>>(p: &str) -> Result<P, Failure> {
    Ok(p.parse()?)
}

fn check_range(range: &ModulusRange) -> Result<(u64, u64), Failure> {
    let (lo, hi) = range.bounds();
    if lo > hi {
        return Err(Failure::Usage(format!("--t-from {lo} exceeds --t-to {hi}")));
    }
    Ok((lo, hi))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::LambdaMu { word, modulus } => {
            let pair = lambda_mu(&word, modulus)?;
            emit(out, json!({ "lambda": pair.lambda, "mu": pair.mu }))?;
        }
        Command::Orbit { word, modulus, start } => {
            let run = simulate_orbit(modulus, start, &word)?;
            emit(
                out,
                json!({
                    "T": run.modulus,
                    "start": run.initial_state,
                    "states": run.states,
                    "lambda": run.period_pair.lambda,
                    "mu": run.period_pair.mu,
                }),
            )?;
        }
        Command::Classify { word } => {
            let moduli = wordclass::admissible_moduli(&word);
            let prefixes: serde_json::Map<String, Value> = moduli
                .iter()
                .map(|&t| {
                    let set = wordclass::prefix_set(&word, t).expect("modulus is admissible");
                    (t.to_string(), json!(set.iter().map(ToString::to_string).collect::<Vec<_>>()))
                })
                .collect();
            emit(
                out,
                json!({
                    "word": word.to_string(),
                    "class": wordclass::classify(&word).name(),
                    "moduli": moduli,
                    "prefixes": prefixes,
                }),
            )?;
        }
        Command::Prefixes { cyclic_part, modulus } => {
            let set = wordclass::prefix_set(&cyclic_part, modulus)?;
            emit(out, json!(set.iter().map(ToString::to_string).collect::<Vec<_>>()))?;
        }
        Command::Count { n1, n2, m1, m2, t } => {
            let c = wordclass::count_configs(n1, n2, m1, m2, t);
            emit(out, json!({ "n1": c.n1, "n2": c.n2, "m1": c.m1, "m2": c.m2, "t": c.t, "count": c.count }))?;
        }
        Command::Exact { p, range } => {
            let p: StepProbability = parse_p(&p)?;
            let (lo, hi) = check_range(&range)?;
            if lo == 0 {
                return Err(Error::ZeroModulus.into());
            }
            let engine = ExactEngine::new(&p)?;
            let mut sink = Sink::new(out, range.format);
            for r in engine.sweep().skip(lo as usize - 1).take((hi - lo + 1) as usize) {
                sink.report(&r)?;
            }
        }
        Command::Closed { p, range } => {
            let p: StepProbability = parse_p(&p)?;
            let (lo, hi) = check_range(&range)?;
            let mut sink = Sink::new(out, range.format);
            for t in lo..=hi {
                sink.report(&closed_form(&p, t)?)?;
            }
        }
        Command::Brute { p, range } => {
            let p: StepProbability = parse_p(&p)?;
            let (lo, hi) = check_range(&range)?;
            let mut sink = Sink::new(out, range.format);
            for t in lo..=hi {
                sink.report(&brute_force(&p, t)?)?;
            }
        }
        Command::Mc { p, range, samples, seed, workers } => {
            let p: Probability = parse_p(&p)?;
            let (lo, hi) = check_range(&range)?;
            let config = MonteCarloConfig::new(samples, seed).with_workers(workers);
            let mut sink = Sink::new(out, range.format);
            for t in lo..=hi {
                sink.report(&monte_carlo(&p, t, &config)?)?;
            }
        }
        Command::Rueppel { poly, fill } => {
            let poly = Gf2Poly::new(poly)?;
            let report = lfsr::rueppel_mu(poly, fill)?;
            emit(out, serde_json::to_value(report).expect("report serializes"))?;
        }
        Command::NormalizeCheck { p, t_max } => {
            let p: StepProbability = parse_p(&p)?;
            let engine = ExactEngine::new(&p)?;
            let failures: Vec<u64> = engine
                .total_series()
                .stream()
                .enumerate()
                .skip(1)
                .take(t_max as usize)
                .filter(|(_, c)| *c != num_rational::BigRational::from_integer(1.into()))
                .map(|(t, _)| t as u64)
                .collect();
            emit(
                out,
                json!({ "p": p.to_string(), "t_max": t_max, "ok": failures.is_empty(), "failures": failures }),
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
