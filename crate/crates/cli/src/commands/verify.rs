use std::path::Path;
use std::process::ExitCode;

use roth_core::config::{
    count_elso, count_ksv, find_ap3, find_config, find_corner, validate_witness, ConfigKind,
    ConfigWitness, ElementSet, GridSet, PairSet, Policy, SetRef,
};
use roth_core::encodings::{
    build_stage1_graph, coset_scopes, find_corner_via_hypergraph, find_elso_via_graph,
    harmadik_pipeline, pigeonhole_coset_pair, BlockPolicy, HSelect, Scope, ScopePolicy,
};
use roth_core::group::{
    all_subgroups, cosets, group_facts, max_abelian_subgroup, sylow_subgroup, Elem, Side, Subgroup,
    DEFAULT_SUBGROUP_CAP,
};
use serde::Serialize;
use serde_json::Value;

use super::Ctx;
use crate::args::{Format, SetArgs, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::inputs::load_set;
use crate::output::{emit, rows_to_csv, Report, SCHEMA_VERSION};

/// Above this order the cubic checks are skipped.
const CUBIC_CHECK_CAP: usize = 128;

#[derive(Serialize)]
struct WitnessCheck {
    schema_version: u32,
    command: &'static str,
    mode: &'static str,
    group: String,
    subgroup: Vec<Elem>,
    kind: ConfigKind,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl Report for WitnessCheck {
    fn csv(&self) -> CliResult<String> {
        rows_to_csv(&[
            ["kind", "valid", "reason"].map(String::from).to_vec(),
            vec![
                self.kind.to_string(),
                self.valid.to_string(),
                self.reason.clone().unwrap_or_default(),
            ],
        ])
    }

    fn text(&self) -> String {
        match &self.reason {
            None => format!("valid {} witness", self.kind),
            Some(r) => format!("invalid {} witness: {r}", self.kind),
        }
    }
}

fn read_witness(path: &Path) -> CliResult<ConfigWitness> {
    let name = path.display();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("--witness {name}: {e}")))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("--witness {name}: {e}")))?;
    let inner = match value.get("witness") {
        Some(Value::Null) => {
            return Err(CliError::usage(format!(
                "--witness {name}: the report holds no witness"
            )))
        }
        Some(w) => w.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| CliError::usage(format!("--witness {name}: {e}")))
}

fn check_witness(ctx: &Ctx, args: &VerifyArgs, path: &Path, format: Format) -> CliResult<ExitCode> {
    let w = read_witness(path)?;
    let mut set_args: SetArgs = args.set.clone();
    if w.kind == ConfigKind::Corner {
        if let Some(p) = w.points.first() {
            set_args.dim = p.len();
        }
    }
    let set = load_set(&set_args, w.kind.ground(), ctx.g.order())?;
    let v = validate_witness(&ctx.g, set.as_ref(), &ctx.h, &w, &ctx.policy)?;
    emit(
        &WitnessCheck {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            mode: "witness",
            group: ctx.g.name().to_string(),
            subgroup: ctx.h.elements().to_vec(),
            kind: w.kind,
            valid: v.valid,
            reason: v.reason,
        },
        format,
    )?;
    Ok(if v.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Debug, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Serialize)]
struct Property {
    name: &'static str,
    status: Status,
    detail: String,
}

#[derive(Serialize)]
struct SuiteReport {
    schema_version: u32,
    command: &'static str,
    mode: &'static str,
    group: String,
    subgroup: Vec<Elem>,
    set_size: usize,
    properties: Vec<Property>,
    passed: bool,
}

impl Report for SuiteReport {
    fn csv(&self) -> CliResult<String> {
        let mut rows = vec![["property", "status", "detail"].map(String::from).to_vec()];
        rows.extend(self.properties.iter().map(|p| {
            vec![
                p.name.to_string(),
                format!("{:?}", p.status).to_lowercase(),
                p.detail.clone(),
            ]
        }));
        rows_to_csv(&rows)
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            let tag = match p.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out += &format!("{tag} {}: {}\n", p.name, p.detail);
        }
        out
    }
}

/// `Ok(None)` means skipped.
type Check = Result<Option<String>, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

struct Suite<'a> {
    ctx: &'a Ctx,
    s: &'a PairSet,
}

impl Suite<'_> {
    fn axioms(&self) -> Check {
        let g = &self.ctx.g;
        if g.order() > CUBIC_CHECK_CAP {
            return Ok(None);
        }
        g.check_axioms().map_err(err)?;
        Ok(Some(format!("order {}", g.order())))
    }

    fn lagrange(&self) -> Check {
        let (g, h) = (&self.ctx.g, &self.ctx.h);
        ensure(g.order() % h.order() == 0, || {
            format!("|H| = {} does not divide {}", h.order(), g.order())
        })?;
        if g.order() > DEFAULT_SUBGROUP_CAP {
            return Ok(Some("H only".into()));
        }
        let subs = all_subgroups(g).map_err(err)?;
        for k in &subs {
            ensure(g.order() % k.order() == 0, || {
                format!("subgroup of order {}", k.order())
            })?;
        }
        Ok(Some(format!("{} subgroups", subs.len())))
    }

    fn sylow(&self) -> Check {
        let g = &self.ctx.g;
        if g.order() > DEFAULT_SUBGROUP_CAP {
            return Ok(None);
        }
        let mut m = g.order();
        let mut p = 2;
        let mut parts = Vec::new();
        while m > 1 {
            if m.is_multiple_of(p) {
                let mut part = 1;
                while m.is_multiple_of(p) {
                    m /= p;
                    part *= p;
                }
                let order = sylow_subgroup(g, p).map_err(err)?.order();
                ensure(order == part, || {
                    format!("Sylow {p}-subgroup of order {order}, expected {part}")
                })?;
                parts.push(format!("{p}:{part}"));
            }
            p += 1;
        }
        Ok(Some(parts.join(" ")))
    }

    fn abelian_bound(&self) -> Check {
        let g = &self.ctx.g;
        if g.order() > DEFAULT_SUBGROUP_CAP || g.order() < 2 {
            return Ok(None);
        }
        let a = max_abelian_subgroup(g).map_err(err)?;
        let bound = (g.order() as f64).ln();
        ensure(a.is_abelian(g) && a.order() as f64 >= bound, || {
            format!("largest abelian subgroup has order {}", a.order())
        })?;
        Ok(Some(format!("order {} ≥ ln|G| = {bound:.2}", a.order())))
    }

    fn coset_partition(&self) -> Check {
        let (g, h) = (&self.ctx.g, &self.ctx.h);
        for side in [Side::Left, Side::Right] {
            let part = cosets(g, h, side).map_err(err)?;
            let mut seen = vec![false; g.order()];
            for block in &part.blocks {
                ensure(block.len() == h.order(), || {
                    format!("{side:?} coset of size {}", block.len())
                })?;
                for &x in block {
                    ensure(!seen[x], || format!("{x} in two {side:?} cosets"))?;
                    seen[x] = true;
                }
            }
            ensure(seen.iter().all(|&b| b), || {
                format!("{side:?} cosets miss an element")
            })?;
        }
        Ok(Some(format!("index {}", h.index())))
    }

    fn ksv_identity(&self) -> Check {
        let g = &self.ctx.g;
        let n = g.order() as u64;
        let c = count_ksv(g, &ElementSet::full(g.order()));
        ensure(c == n * n, || format!("{c} solutions, expected {}", n * n))?;
        Ok(Some(format!("{c} solutions of xz = y²")))
    }

    fn elso_full_count(&self) -> Check {
        let (g, h) = (&self.ctx.g, &self.ctx.h);
        if g.order() > DEFAULT_SUBGROUP_CAP {
            return Ok(None);
        }
        let n = g.order() as u64;
        let expected = n * n * (h.order() as u64 - 1);
        let c = count_elso(g, &PairSet::full(g.order()), h, &Policy::default());
        ensure(c == expected, || {
            format!("{c} triples, expected {expected}")
        })?;
        Ok(Some(format!("{c} triples in G×G")))
    }

    fn pigeonhole(&self) -> Check {
        let (g, h) = (&self.ctx.g, &self.ctx.h);
        let p = pigeonhole_coset_pair(g, self.s, h).map_err(err)?;
        let bound = self.s.size().div_ceil(h.index() * h.index());
        ensure(p.count >= bound, || {
            format!("count {} below bound {bound}", p.count)
        })?;
        Ok(Some(format!(
            "block ({},{}) holds {} ≥ {bound}",
            p.l, p.r, p.count
        )))
    }

    fn census_identity(&self) -> Check {
        let (g, h, s) = (&self.ctx.g, &self.ctx.h, self.s);
        let policy = Policy::default();
        let mut total = 0;
        for scope in coset_scopes(g, h).map_err(err)? {
            let Scope::Coset { l, r, .. } = &scope else {
                return Err("unexpected full scope".into());
            };
            let rows: Vec<bool> = g
                .elements()
                .map(|a| h.contains(g.left_div(*l, a)))
                .collect();
            let cols: Vec<bool> = g
                .elements()
                .map(|b| h.contains(g.right_div(b, *r)))
                .collect();
            let census = build_stage1_graph(g, s, &scope).map_err(err)?.census();
            let brute = count_elso(g, &s.restrict(&rows, &cols), h, &policy);
            ensure(census.non_generator_count == brute, || {
                format!(
                    "block ({l},{r}): {} triangles vs {brute} triples",
                    census.non_generator_count
                )
            })?;
            ensure(census.edge_disjoint, || {
                format!("block ({l},{r}): generators share an edge")
            })?;
            total += census.non_generator_count;
        }
        let whole = count_elso(g, s, h, &policy);
        ensure(total == whole, || {
            format!("blocks sum to {total}, set has {whole}")
        })?;
        Ok(Some(format!(
            "{total} non-generator triangles = {whole} triples"
        )))
    }

    fn graph_agreement(&self) -> Check {
        let (g, h, p) = (&self.ctx.g, &self.ctx.h, &self.ctx.policy);
        let graph =
            find_elso_via_graph(g, self.s, h, ScopePolicy::AllCosetPairs, p).map_err(err)?;
        let brute = find_config(ConfigKind::Elso, g, SetRef::Pairs(self.s), h, p).map_err(err)?;
        ensure(graph.witness.is_some() == brute.is_some(), || {
            format!(
                "graph {} vs brute force {}",
                graph.witness.is_some(),
                brute.is_some()
            )
        })?;
        Ok(Some(format!(
            "both {}",
            if brute.is_some() { "found" } else { "empty" }
        )))
    }

    fn witness_soundness(&self) -> Check {
        let (g, h, p, s) = (&self.ctx.g, &self.ctx.h, &self.ctx.policy, self.s);
        let diagonal =
            ElementSet::from_elements(g.order(), g.elements().filter(|&a| s.contains(a, a)))
                .map_err(err)?;
        let plane =
            GridSet::from_points(g.order(), 2, s.iter().map(|(a, b)| vec![a, b])).map_err(err)?;
        let mut found: Vec<(ConfigWitness, SetRef<'_>, Subgroup)> = Vec::new();
        for kind in [
            ConfigKind::Elso,
            ConfigKind::Harmadik,
            ConfigKind::Quadruple,
            ConfigKind::Corollary,
        ] {
            if let Some(w) = find_config(kind, g, SetRef::Pairs(s), h, p).map_err(err)? {
                found.push((w, SetRef::Pairs(s), h.clone()));
            }
        }
        for kind in [ConfigKind::Ap3, ConfigKind::Ksv] {
            if let Some(w) = find_config(kind, g, SetRef::Elements(&diagonal), h, p).map_err(err)? {
                found.push((w, SetRef::Elements(&diagonal), h.clone()));
            }
        }
        for sp in [
            ScopePolicy::Pigeonhole,
            ScopePolicy::AllCosetPairs,
            ScopePolicy::Full,
        ] {
            if let Some(w) = find_elso_via_graph(g, s, h, sp, p).map_err(err)?.witness {
                found.push((w, SetRef::Pairs(s), h.clone()));
            }
        }
        let select = if h.is_abelian(g) {
            HSelect::Given(h.clone())
        } else {
            HSelect::Auto
        };
        let out = harmadik_pipeline(g, s, &select, p).map_err(err)?;
        if let Some(w) = out.witness {
            let used =
                Subgroup::from_elements(g, out.trace.subgroup.iter().copied()).map_err(err)?;
            found.push((w, SetRef::Pairs(s), used));
        }
        if g.is_abelian() {
            if let Some(w) = find_corner(g, &plane, h, p).map_err(err)? {
                found.push((w, SetRef::Grid(&plane), h.clone()));
            }
            for bp in [BlockPolicy::Pigeonhole, BlockPolicy::AllBlocks] {
                if let Some(w) = find_corner_via_hypergraph(g, &plane, h, bp, p)
                    .map_err(err)?
                    .witness
                {
                    found.push((w, SetRef::Grid(&plane), h.clone()));
                }
            }
        }
        for (w, set, hh) in &found {
            let v = validate_witness(g, *set, hh, w, p).map_err(err)?;
            ensure(v.valid, || {
                format!("{w:?} rejected: {}", v.reason.clone().unwrap_or_default())
            })?;
        }
        Ok(Some(format!("{} witnesses validated", found.len())))
    }

    fn corner_agreement(&self) -> Check {
        let (g, h, p) = (&self.ctx.g, &self.ctx.h, &self.ctx.policy);
        if !g.is_abelian() {
            return Ok(None);
        }
        let plane = GridSet::from_points(g.order(), 2, self.s.iter().map(|(a, b)| vec![a, b]))
            .map_err(err)?;
        let brute = find_corner(g, &plane, h, p).map_err(err)?;
        let hyper =
            find_corner_via_hypergraph(g, &plane, h, BlockPolicy::AllBlocks, p).map_err(err)?;
        ensure(hyper.witness.is_some() == brute.is_some(), || {
            format!(
                "hypergraph {} vs brute force {}",
                hyper.witness.is_some(),
                brute.is_some()
            )
        })?;
        if let Some(d) = hyper.witness.and_then(|w| w.parameter) {
            ensure(h.contains(d) && d != 0, || format!("δ = {d}"))?;
        }
        Ok(Some(format!(
            "both {}",
            if brute.is_some() { "found" } else { "empty" }
        )))
    }

    fn boolean_obstruction(&self) -> Check {
        let g = &self.ctx.g;
        if group_facts(g).exponent > 2 {
            return Ok(None);
        }
        let found = find_ap3(
            g,
            &ElementSet::full(g.order()),
            &Subgroup::whole(g),
            &Policy::default(),
        );
        ensure(found.is_none(), || {
            format!("progression {found:?} in a group of exponent 2")
        })?;
        Ok(Some("no progression in G".into()))
    }
}

fn run_suite(ctx: &Ctx, args: &VerifyArgs, format: Format) -> CliResult<ExitCode> {
    let set = load_set(&args.set, roth_core::config::Ground::Pairs, ctx.g.order())?;
    let crate::inputs::AnySet::Pairs(s) = &set else {
        unreachable!("pair ground requested")
    };
    let suite = Suite { ctx, s };
    let checks: [(&'static str, Check); 13] = [
        ("group_axioms", suite.axioms()),
        ("lagrange", suite.lagrange()),
        ("sylow_orders", suite.sylow()),
        ("abelian_subgroup_bound", suite.abelian_bound()),
        ("coset_partition", suite.coset_partition()),
        ("ksv_identity", suite.ksv_identity()),
        ("elso_full_count", suite.elso_full_count()),
        ("pigeonhole_bound", suite.pigeonhole()),
        ("census_identity", suite.census_identity()),
        ("graph_finder_agreement", suite.graph_agreement()),
        ("witness_soundness", suite.witness_soundness()),
        ("corner_agreement", suite.corner_agreement()),
        ("boolean_obstruction", suite.boolean_obstruction()),
    ];
    let properties: Vec<Property> = checks
        .into_iter()
        .map(|(name, check)| {
            let (status, detail) = match check {
                Ok(Some(d)) => (Status::Pass, d),
                Ok(None) => (Status::Skip, "not applicable".into()),
                Err(d) => (Status::Fail, d),
            };
            Property {
                name,
                status,
                detail,
            }
        })
        .collect();
    let passed = properties.iter().all(|p| p.status != Status::Fail);
    emit(
        &SuiteReport {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            mode: "suite",
            group: ctx.g.name().to_string(),
            subgroup: ctx.h.elements().to_vec(),
            set_size: s.size(),
            properties,
            passed,
        },
        format,
    )?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

pub fn run(args: &VerifyArgs, format: Format) -> CliResult<ExitCode> {
    let ctx = Ctx::new(&args.instance)?;
    match &args.witness {
        Some(path) => check_witness(&ctx, args, path, format),
        None => run_suite(&ctx, args, format),
    }
}
