use std::process::ExitCode;

use roth_core::config::{find_config, validate_witness, ConfigKind, ConfigWitness};
use roth_core::encodings::{
    find_corner_via_hypergraph, find_elso_via_graph, harmadik_pipeline, BlockPolicy, HSelect,
    PipelineOutcome, PipelineTrace, ScopePolicy,
};
use roth_core::group::Elem;
use serde::Serialize;

use super::Ctx;
use crate::args::{BlocksArg, FindArgs, Format, Method, ScopeArg};
use crate::error::{CliError, CliResult};
use crate::inputs::{load_set, AnySet, SubgroupChoice};
use crate::output::{emit, points_text, rows_to_csv, Report, SCHEMA_VERSION};

#[derive(Serialize)]
struct FindReport {
    schema_version: u32,
    command: &'static str,
    group: String,
    subgroup: Vec<Elem>,
    kind: ConfigKind,
    method: &'static str,
    set_size: usize,
    found: bool,
    witness: Option<ConfigWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<PipelineTrace>,
}

impl Report for FindReport {
    fn csv(&self) -> CliResult<String> {
        let (param, points) = match &self.witness {
            Some(w) => (
                w.parameter.map(|p| p.to_string()).unwrap_or_default(),
                points_text(&w.points),
            ),
            None => (String::new(), String::new()),
        };
        rows_to_csv(&[
            ["group", "kind", "method", "found", "parameter", "points"]
                .map(String::from)
                .to_vec(),
            vec![
                self.group.clone(),
                self.kind.to_string(),
                self.method.to_string(),
                self.found.to_string(),
                param,
                points,
            ],
        ])
    }

    fn text(&self) -> String {
        match &self.witness {
            Some(w) => {
                let param = w
                    .parameter
                    .map(|p| format!(" with d = {p}"))
                    .unwrap_or_default();
                format!("found {}{param}: {}", self.kind, points_text(&w.points))
            }
            None => format!("no {} configuration found", self.kind),
        }
    }
}

pub fn scope_policy(s: ScopeArg) -> ScopePolicy {
    match s {
        ScopeArg::Pigeonhole => ScopePolicy::Pigeonhole,
        ScopeArg::AllCosetPairs => ScopePolicy::AllCosetPairs,
        ScopeArg::Full => ScopePolicy::Full,
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Brute => "brute",
        Method::Graph => "graph",
        Method::Pipeline => "pipeline",
    }
}

pub fn run(args: &FindArgs, format: Format) -> CliResult<ExitCode> {
    let ctx = Ctx::new(&args.instance)?;
    let kind: ConfigKind = args.kind.into();
    let set = load_set(&args.set, kind.ground(), ctx.g.order())?;
    let (witness, trace) = match args.method {
        Method::Brute => (
            find_config(kind, &ctx.g, set.as_ref(), &ctx.h, &ctx.policy)?,
            None,
        ),
        m => {
            let out = encoded(&ctx, kind, m, &set, args)?;
            (out.witness, Some(out.trace))
        }
    };
    let subgroup = trace
        .as_ref()
        .map(|t| t.subgroup.clone())
        .unwrap_or_else(|| ctx.h.elements().to_vec());
    if let Some(w) = &witness {
        let h = roth_core::group::Subgroup::from_elements(&ctx.g, subgroup.iter().copied())?;
        let v = validate_witness(&ctx.g, set.as_ref(), &h, w, &ctx.policy)?;
        if !v.valid {
            return Err(CliError::Invariant(format!(
                "returned witness fails validation: {}",
                v.reason.unwrap_or_default()
            )));
        }
    }
    let found = witness.is_some();
    emit(
        &FindReport {
            schema_version: SCHEMA_VERSION,
            command: "find",
            group: ctx.g.name().to_string(),
            subgroup,
            kind,
            method: method_name(args.method),
            set_size: set.size(),
            found,
            witness,
            trace,
        },
        format,
    )?;
    Ok(if args.require && !found {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn encoded(
    ctx: &Ctx,
    kind: ConfigKind,
    method: Method,
    set: &AnySet,
    args: &FindArgs,
) -> CliResult<PipelineOutcome> {
    Ok(match (kind, set) {
        (ConfigKind::Elso, AnySet::Pairs(s)) => {
            find_elso_via_graph(&ctx.g, s, &ctx.h, scope_policy(args.scope), &ctx.policy)?
        }
        (ConfigKind::Corner, AnySet::Grid(s)) => {
            let blocks = match args.blocks {
                BlocksArg::Pigeonhole => BlockPolicy::Pigeonhole,
                BlocksArg::All => BlockPolicy::AllBlocks,
            };
            find_corner_via_hypergraph(&ctx.g, s, &ctx.h, blocks, &ctx.policy)?
        }
        (ConfigKind::Harmadik, AnySet::Pairs(s)) if method == Method::Pipeline => {
            let select = match ctx.choice {
                SubgroupChoice::Auto => HSelect::Auto,
                _ => HSelect::Given(ctx.h.clone()),
            };
            harmadik_pipeline(&ctx.g, s, &select, &ctx.policy)?
        }
        _ => {
            return Err(CliError::usage(format!(
                "--method {}: supports {}, not {kind}",
                method_name(method),
                if method == Method::Graph {
                    "elso and corner"
                } else {
                    "elso, harmadik and corner"
                }
            )))
        }
    })
}
