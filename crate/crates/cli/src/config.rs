use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use toral::asymptotics::FitMethod;
use toral::io::{matrix_to_json, parse_automorphism_json, parse_matrix_json};
use toral::{Automorphism, BlockSpec, Error, Result};

#[derive(Parser, Debug)]
#[command(name = "toral", version, about = "Periodic orbits and Mertens asymptotics of toral automorphisms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spectrum, entropy and ergodicity class.
    Classify(CommonArgs),
    /// Fixed-point counts, orbit counts and Mertens sums for n = 1..max-n.
    Count(CommonArgs),
    /// The resonance set, its signed counts and the coefficient m.
    Resonance(CommonArgs),
    /// m for the block constructions A ⊕ A² ⊕ … ⊕ A^t, t = 1..max-t.
    Sequence(SequenceArgs),
    /// Fit M(N) ≈ m·log N + C and inspect the remainder.
    Fit(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    TwoPoint,
    LeastSquares,
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// File holding a matrix or block JSON document.
    pub input: Option<PathBuf>,
    /// Inline matrix JSON, e.g. '[[2,1],[1,1]]'.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Block construction BASE:POWERS; BASE is a file or inline matrix JSON.
    #[arg(long)]
    pub block: Option<String>,
    #[arg(long, default_value_t = 60)]
    pub precision: u32,
    #[arg(long, default_value_t = 60)]
    pub working_digits: u32,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Fit window LO:HI (default N/4:N).
    #[arg(long)]
    pub window: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::TwoPoint)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SequenceArgs {
    #[arg(long)]
    pub max_t: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

/// Validated settings for one command run.
#[derive(Debug)]
pub struct RunConfig {
    pub automorphism: Automorphism,
    /// Canonical JSON of the input, hashed into every report.
    pub input_json: Value,
    pub precision: u32,
    pub working_digits: u32,
    pub max_n: Option<usize>,
    pub window: Option<(usize, usize)>,
    pub method: FitMethod,
    pub format: Format,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))
}

fn parse_block_arg(arg: &str) -> Result<Automorphism> {
    let (base, powers) = arg
        .rsplit_once(':')
        .ok_or_else(|| malformed("--block expects BASE:POWERS, e.g. a.json:1,2,3"))?;
    let powers = powers
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| malformed(format!("bad block power {p:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let base_text = match base.trim_start().chars().next() {
        Some('[') | Some('{') => base.to_string(),
        _ => read_file(Path::new(base))?,
    };
    Automorphism::from_block(BlockSpec::new(parse_matrix_json(&base_text)?, powers)?)
}

pub fn parse_window(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = text.split_once(':').ok_or_else(|| malformed("--window expects LO:HI"))?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| malformed(format!("bad window bound {s:?}")));
    Ok((num(lo)?, num(hi)?))
}

pub fn canonical_input(aut: &Automorphism) -> Value {
    match aut.block() {
        Some(b) => json!({ "base": matrix_to_json(b.base()), "powers": b.powers() }),
        None => json!({ "matrix": matrix_to_json(&aut.matrix()) }),
    }
}

pub fn input_hash(input: &Value) -> String {
    format!("{:x}", Sha256::digest(input.to_string().as_bytes()))
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<RunConfig> {
        let given = [args.input.is_some(), args.matrix.is_some(), args.block.is_some()]
            .iter()
            .filter(|x| **x)
            .count();
        if given != 1 {
            return Err(malformed("give exactly one of INPUT, --matrix or --block"));
        }
        let automorphism = if let Some(path) = &args.input {
            parse_automorphism_json(&read_file(path)?)?
        } else if let Some(m) = &args.matrix {
            parse_automorphism_json(m)?
        } else {
            parse_block_arg(args.block.as_deref().expect("checked above"))?
        };
        if args.precision < 30 {
            return Err(Error::InvalidArgument(format!("--precision must be at least 30, got {}", args.precision)));
        }
        if args.max_n == Some(0) {
            return Err(Error::InvalidArgument("--max-n must be at least 1".into()));
        }
        let window = args.window.as_deref().map(parse_window).transpose()?;
        if let (Some((lo, hi)), Some(n)) = (window, args.max_n) {
            if hi > n || lo > hi {
                return Err(Error::InvalidWindow {
                    lo,
                    hi,
                    reason: format!("window must lie within 1..={n}"),
                });
            }
        }
        let input_json = canonical_input(&automorphism);
        Ok(RunConfig {
            automorphism,
            input_json,
            precision: args.precision,
            working_digits: args.working_digits,
            max_n: args.max_n,
            window,
            method: match args.method {
                MethodArg::TwoPoint => FitMethod::TwoPoint,
                MethodArg::LeastSquares => FitMethod::LeastSquares,
            },
            format: args.format,
        })
    }

    pub fn require_max_n(&self) -> Result<usize> {
        self.max_n
            .ok_or_else(|| Error::InvalidArgument("--max-n is required for this command".into()))
    }

    /// Reproducibility header shared by every report.
    pub fn provenance(&self) -> Value {
        json!({
            "input": self.input_json,
            "input_sha256": input_hash(&self.input_json),
            "precision_digits": self.precision,
            "working_digits": self.working_digits,
        })
    }
}

/// Exit status for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Malformed(_) | Error::InvalidArgument(_) | Error::InvalidWindow { .. } | Error::TooManyPairs(..) => 1,
        Error::NotUnimodular { .. } => 2,
        Error::NonErgodic(_) => 3,
        Error::PrecisionAmbiguity(_) | Error::NoConvergence { .. } => 4,
        Error::Internal(_) => 5,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_argument_with_inline_base() {
        let aut = parse_block_arg("[[2,1],[1,1]]:1,2").unwrap();
        assert_eq!(aut.block().unwrap().powers(), &[1, 2]);
        assert_eq!(aut.dim(), 4);
    }

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("500:2000").unwrap(), (500, 2000));
        assert!(parse_window("500-2000").is_err());
    }

    #[test]
    fn hash_is_stable() {
        let v = json!({"matrix": [[2, 1], [1, 1]]});
        assert_eq!(input_hash(&v), input_hash(&v.clone()));
        assert_eq!(input_hash(&v).len(), 64);
    }
}
