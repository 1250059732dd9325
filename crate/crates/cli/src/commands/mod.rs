mod census;
mod count;
mod experiment;
mod extremal;
mod find;
mod group;
mod verify;

use std::process::ExitCode;

use roth_core::config::Policy;
use roth_core::group::{FiniteGroup, Subgroup};

use crate::args::{Cli, Command, Instance};
use crate::error::CliResult;
use crate::inputs::{load_group, SubgroupChoice};

/// Group, subgroup and policy shared by the instance-based commands.
pub struct Ctx {
    pub g: FiniteGroup,
    pub h: Subgroup,
    pub choice: SubgroupChoice,
    pub policy: Policy,
}

impl Ctx {
    pub fn new(inst: &Instance) -> CliResult<Self> {
        let g = load_group(&inst.source)?;
        let choice = SubgroupChoice::parse(&inst.subgroup)?;
        let h = choice.resolve(&g)?;
        Ok(Ctx {
            g,
            h,
            choice,
            policy: inst.policy.policy(),
        })
    }
}

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    let format = cli.format;
    match &cli.command {
        Command::Group(cmd) => group::run(cmd, format).map(|()| ExitCode::SUCCESS),
        Command::Find(args) => find::run(args, format),
        Command::Count(args) => count::run(args, format).map(|()| ExitCode::SUCCESS),
        Command::Census(args) => census::run(args, format).map(|()| ExitCode::SUCCESS),
        Command::Extremal(args) => extremal::run(args, format).map(|()| ExitCode::SUCCESS),
        Command::Experiment(args) => experiment::run(args, format).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => verify::run(args, format),
    }
}
