use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "rtreelab", version, about = "Checks and probes for amalgam towers, their Bass-Serre trees and folding maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run (P1) and (P2) for each level in --i
    VerifyPsystem(Common),
    /// Vertex and edge images, single-edge isometry and the fold-count bound
    VerifyFolds(Common),
    /// Transport of edge stabilizers and the intersection law
    VerifyEdgeStab(Common),
    /// Stage-by-stage distances between points of T_1
    ProbeDistance(ProbeArgs),
    /// Arc stabilizer descriptor and membership checks
    ArcStab(ProbeArgs),
    /// Breadth-first ball in the tree of a finite system
    Ball(Common),
    /// Normal-subgroup condition on a finite chain
    Condition51(Common),
    /// Search for a (P4) violation
    P4Search(Common),
    /// Intersection scan and order probe in the HNN demonstration group
    BrittonDemo(Common),
    /// The full acceptance matrix
    VerifyAll(Common),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemName {
    Thompson,
    Sym6,
    AltChain,
    UtChain,
    C2c4,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    #[arg(long, value_enum, default_value = "thompson")]
    pub system: SystemName,
    /// Level or inclusive range of levels, e.g. `2` or `1..4`
    #[arg(long = "i", default_value = "1..3", value_parser = parse_range)]
    #[serde(serialize_with = "ser_range")]
    pub levels: RangeInclusive<usize>,
    /// Last stage pushed to by stage maps
    #[arg(long, default_value_t = 6)]
    pub j_max: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Samples per sampled check (search budget for p4-search)
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub radius: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write here instead of stdout (default directory: $RTREELAB_OUT_DIR)
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ProbeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Point of T_1 as JSON `{"rep": <word>, "t": [n, k]}`
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    /// Random point pairs probed in addition to the built-in examples
    #[arg(long, default_value_t = 4)]
    pub pairs: usize,
    /// Equal consecutive values required for a heuristic stabilization
    #[arg(long, default_value_t = 3)]
    pub window: usize,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|n| n..=n),
    }
}

fn ser_range<S: serde::Serializer>(r: &RangeInclusive<usize>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format!("{}..{}", r.start(), r.end()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..4").unwrap(), 1..=4);
        assert_eq!(parse_range("1..=2").unwrap(), 1..=2);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("x").is_err());
    }
}
