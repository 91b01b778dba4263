mod args;
mod output;
mod run;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use run::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::VerifyPsystem(c) => ("verify-psystem", c),
        Command::VerifyFolds(c) => ("verify-folds", c),
        Command::VerifyEdgeStab(c) => ("verify-edge-stab", c),
        Command::ProbeDistance(p) => ("probe-distance", &p.common),
        Command::ArcStab(p) => ("arc-stab", &p.common),
        Command::Ball(c) => ("ball", c),
        Command::Condition51(c) => ("condition51", c),
        Command::P4Search(c) => ("p4-search", c),
        Command::BrittonDemo(c) => ("britton-demo", c),
        Command::VerifyAll(c) => ("verify-all", c),
    };
    let result = match &cli.command {
        Command::VerifyPsystem(c) => run::verify_psystem(c),
        Command::VerifyFolds(c) => run::verify_folds(c),
        Command::VerifyEdgeStab(c) => run::verify_edge_stab(c),
        Command::ProbeDistance(p) => run::probe_distance(p),
        Command::ArcStab(p) => run::arc_stab(p),
        Command::Ball(c) => run::ball_cmd(c),
        Command::Condition51(c) => run::condition51_cmd(c),
        Command::P4Search(c) => run::p4_search(c),
        Command::BrittonDemo(c) => run::britton_demo(c),
        Command::VerifyAll(c) => run::verify_all(c),
    };
    let config = match &cli.command {
        Command::ProbeDistance(p) | Command::ArcStab(p) => serde_json::to_value(p),
        _ => serde_json::to_value(common),
    }
    .expect("config serializes");
    let emitted = result.and_then(|outcome| output::emit(name, common, config, outcome));
    match emitted {
        Ok(failed) => ExitCode::from(u8::from(failed)),
        Err(e) => {
            eprintln!("rtreelab {name}: {e}");
            ExitCode::from(2)
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("cannot write output: {e}"))
    }
}
