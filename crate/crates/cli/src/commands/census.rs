use roth_core::config::{count_corners, count_elso, ConfigKind, GridSet, PairSet, Policy};
use roth_core::encodings::{
    build_corner_hypergraph, build_stage1_graph, coset_scopes, pigeonhole_block,
    pigeonhole_coset_pair, CensusReport, Scope,
};
use roth_core::group::{cosets, Elem, FiniteGroup, Side, Subgroup};
use serde::Serialize;

use super::Ctx;
use crate::args::{CensusArgs, Format, ScopeArg};
use crate::error::{CliError, CliResult};
use crate::inputs::{load_set, AnySet};
use crate::output::{emit, join, rows_to_csv, Report, SCHEMA_VERSION};

#[derive(Serialize)]
struct BlockCensus {
    /// Coset representatives; empty for the full scope.
    reps: Vec<Elem>,
    #[serde(flatten)]
    census: CensusReport,
    /// Brute-force configuration count on the same block.
    brute_count: u64,
}

#[derive(Serialize)]
struct Totals {
    generator_count: u64,
    total_count: u64,
    non_generator_count: u64,
    brute_count: u64,
}

#[derive(Serialize)]
struct CensusOutput {
    schema_version: u32,
    command: &'static str,
    group: String,
    subgroup: Vec<Elem>,
    kind: ConfigKind,
    scope: &'static str,
    set_size: usize,
    blocks: Vec<BlockCensus>,
    totals: Totals,
}

impl Report for CensusOutput {
    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![[
            "reps",
            "generator_count",
            "total_count",
            "non_generator_count",
            "edge_disjoint",
            "brute_count",
        ]
        .map(String::from)
        .to_vec()];
        rows.extend(self.blocks.iter().map(|b| {
            vec![
                join(&b.reps, " "),
                b.census.generator_count.to_string(),
                b.census.total_count.to_string(),
                b.census.non_generator_count.to_string(),
                b.census.edge_disjoint.to_string(),
                b.brute_count.to_string(),
            ]
        }));
        rows_to_csv(&rows)
    }

    fn text(&self) -> String {
        let t = &self.totals;
        let unit = if self.kind == ConfigKind::Corner {
            "cliques"
        } else {
            "triangles"
        };
        let mut out = format!(
            "{} census over {} block(s): {} {unit}, {} from generators, {} others (brute count {})\n",
            self.kind,
            self.blocks.len(),
            t.total_count,
            t.generator_count,
            t.non_generator_count,
            t.brute_count
        );
        for b in self
            .blocks
            .iter()
            .filter(|b| b.census.non_generator_count > 0)
        {
            out += &format!(
                "  block ({}): {} others\n",
                join(&b.reps, ","),
                b.census.non_generator_count
            );
        }
        out
    }
}

fn scope_name(s: ScopeArg) -> &'static str {
    match s {
        ScopeArg::Pigeonhole => "pigeonhole",
        ScopeArg::AllCosetPairs => "all_coset_pairs",
        ScopeArg::Full => "full",
    }
}

/// Members of `s` whose coordinates lie in the cosets `reps[i]·H`.
fn restrict_grid(g: &FiniteGroup, s: &GridSet, h: &Subgroup, reps: &[Elem]) -> CliResult<GridSet> {
    let inside = |p: &Vec<Elem>| {
        p.iter()
            .zip(reps)
            .all(|(&x, &r)| h.contains(g.left_div(r, x)))
    };
    Ok(GridSet::from_points(
        g.order(),
        s.dim(),
        s.iter().filter(inside),
    )?)
}

fn elso_blocks(ctx: &Ctx, s: &PairSet, scope: ScopeArg) -> CliResult<Vec<BlockCensus>> {
    let (g, h) = (&ctx.g, &ctx.h);
    // the census counts nondegenerate triangles whatever the policy flags say
    let policy = Policy::default();
    if scope == ScopeArg::Full {
        let census = build_stage1_graph(g, s, &Scope::Full)?.census();
        let brute_count = count_elso(g, s, &Subgroup::whole(g), &policy);
        return Ok(vec![BlockCensus {
            reps: Vec::new(),
            census,
            brute_count,
        }]);
    }
    let scopes = if scope == ScopeArg::Pigeonhole {
        let p = pigeonhole_coset_pair(g, s, h)?;
        vec![Scope::Coset {
            l: p.l,
            r: p.r,
            h: h.clone(),
        }]
    } else {
        coset_scopes(g, h)?
    };
    scopes
        .iter()
        .map(|sc| {
            let Scope::Coset { l, r, .. } = sc else {
                unreachable!("coset scopes only")
            };
            let rows: Vec<bool> = g
                .elements()
                .map(|a| h.contains(g.left_div(*l, a)))
                .collect();
            let cols: Vec<bool> = g
                .elements()
                .map(|b| h.contains(g.right_div(b, *r)))
                .collect();
            Ok(BlockCensus {
                reps: vec![*l, *r],
                census: build_stage1_graph(g, s, sc)?.census(),
                brute_count: count_elso(g, &s.restrict(&rows, &cols), h, &policy),
            })
        })
        .collect()
}

fn corner_blocks(ctx: &Ctx, s: &GridSet, scope: ScopeArg) -> CliResult<Vec<BlockCensus>> {
    let (g, h) = (&ctx.g, &ctx.h);
    let policy = Policy::default();
    let all_reps: Vec<Vec<Elem>> =
        match scope {
            ScopeArg::Pigeonhole => vec![pigeonhole_block(g, s, h)?.reps],
            ScopeArg::AllCosetPairs => {
                let reps = cosets(g, h, Side::Left)?.representatives;
                let mut out = vec![Vec::new()];
                for _ in 0..s.dim() {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<Elem>| {
                            reps.iter().map(move |&r| {
                                let mut v = prefix.clone();
                                v.push(r);
                                v
                            })
                        })
                        .collect();
                }
                out
            }
            ScopeArg::Full => return Err(CliError::usage(
                "--scope full: corner censuses run per block; use pigeonhole or all-coset-pairs",
            )),
        };
    all_reps
        .into_iter()
        .map(|reps| {
            let census = build_corner_hypergraph(g, s, &reps, h)?.census();
            let brute_count = count_corners(g, &restrict_grid(g, s, h, &reps)?, h, &policy)?;
            Ok(BlockCensus {
                reps,
                census,
                brute_count,
            })
        })
        .collect()
}

pub fn run(args: &CensusArgs, format: Format) -> CliResult<()> {
    let ctx = Ctx::new(&args.instance)?;
    let kind: ConfigKind = args.kind.into();
    let set = load_set(&args.set, kind.ground(), ctx.g.order())?;
    let blocks = match (kind, &set) {
        (ConfigKind::Elso, AnySet::Pairs(s)) => elso_blocks(&ctx, s, args.scope)?,
        (ConfigKind::Corner, AnySet::Grid(s)) => corner_blocks(&ctx, s, args.scope)?,
        _ => {
            return Err(CliError::usage(format!(
                "--kind {kind}: census supports elso and corner"
            )))
        }
    };
    for b in &blocks {
        if b.census.non_generator_count != b.brute_count {
            return Err(CliError::Invariant(format!(
                "block ({}) has {} non-generator triangles but {} configurations",
                join(&b.reps, ","),
                b.census.non_generator_count,
                b.brute_count
            )));
        }
    }
    let sum = |f: fn(&BlockCensus) -> u64| blocks.iter().map(f).sum();
    let totals = Totals {
        generator_count: sum(|b| b.census.generator_count),
        total_count: sum(|b| b.census.total_count),
        non_generator_count: sum(|b| b.census.non_generator_count),
        brute_count: sum(|b| b.brute_count),
    };
    emit(
        &CensusOutput {
            schema_version: SCHEMA_VERSION,
            command: "census",
            group: ctx.g.name().to_string(),
            subgroup: ctx.h.elements().to_vec(),
            kind,
            scope: scope_name(args.scope),
            set_size: set.size(),
            blocks,
            totals,
        },
        format,
    )
}
