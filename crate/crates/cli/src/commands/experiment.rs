use roth_core::extremal::{density_experiment, ExperimentReport, Instance};
use serde::Serialize;

use super::Ctx;
use crate::args::{ExperimentArgs, Format};
use crate::error::CliResult;
use crate::output::{emit, Report};

#[derive(Serialize)]
struct ExperimentOutput {
    command: &'static str,
    #[serde(flatten)]
    report: ExperimentReport,
}

impl Report for ExperimentOutput {
    fn csv(&self) -> CliResult<String> {
        Ok(self.report.to_csv()?)
    }

    fn text(&self) -> String {
        let r = &self.report;
        let mut out = format!(
            "{} on {}, {} trials per density, seed {}\n",
            r.kind, r.group, r.trials, r.seed
        );
        for i in 0..r.densities.len() {
            out += &format!(
                "density {:.3} (size {}): {}/{} hits, fraction {:.3}\n",
                r.densities[i], r.set_sizes[i], r.hits[i], r.trials, r.hit_fraction[i]
            );
        }
        out
    }
}

pub fn run(args: &ExperimentArgs, format: Format) -> CliResult<()> {
    let ctx = Ctx::new(&args.instance)?;
    let inst = Instance::new(&ctx.g, &ctx.h, args.kind.into())
        .with_policy(ctx.policy)
        .with_dim(args.dim);
    let report = density_experiment(&inst, &args.densities, args.trials, args.seed)?;
    emit(
        &ExperimentOutput {
            command: "experiment",
            report,
        },
        format,
    )
}
