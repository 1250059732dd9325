use std::time::Duration;

use roth_core::extremal::{
    max_free_exact, max_free_heuristic, ExtremalError, Instance, SearchBudget, SearchMode,
    SearchResult,
};
use serde::Serialize;

use super::Ctx;
use crate::args::{ExtremalArgs, Format, Mode};
use crate::error::{CliError, CliResult};
use crate::output::{emit, points_text, Report};

#[derive(Serialize)]
struct ExtremalReport {
    command: &'static str,
    #[serde(flatten)]
    result: SearchResult,
}

impl Report for ExtremalReport {
    fn csv(&self) -> CliResult<String> {
        Ok(self.result.to_csv()?)
    }

    fn text(&self) -> String {
        let r = &self.result;
        format!(
            "{} {}-free set of size {} out of {}{} after {} nodes\n{}",
            if r.optimal {
                "maximum"
            } else {
                "largest found"
            },
            r.kind,
            r.size,
            r.ground_size,
            if r.optimal { " (proved optimal)" } else { "" },
            r.nodes,
            points_text(&r.set)
        )
    }
}

pub fn run(args: &ExtremalArgs, format: Format) -> CliResult<()> {
    let ctx = Ctx::new(&args.instance)?;
    let inst = Instance::new(&ctx.g, &ctx.h, args.kind.into())
        .with_policy(ctx.policy)
        .with_dim(args.dim);
    let result = match args.mode {
        Mode::Exact => {
            if !(args.time_cap.is_finite() && args.time_cap > 0.0) {
                return Err(CliError::usage(
                    "--time-cap must be a positive number of seconds",
                ));
            }
            let budget = SearchBudget {
                node_cap: args.node_cap,
                time_cap: Duration::from_secs_f64(args.time_cap),
                mode: SearchMode::Exact,
            };
            match max_free_exact(&inst, &budget) {
                Err(ExtremalError::BudgetExceeded { best }) => {
                    eprintln!(
                        "warning: search budget exhausted; reporting the best set found (size {})",
                        best.size
                    );
                    *best
                }
                other => other?,
            }
        }
        Mode::Heuristic => max_free_heuristic(&inst, args.iterations, args.seed)?,
    };
    emit(
        &ExtremalReport {
            command: "extremal",
            result,
        },
        format,
    )
}
