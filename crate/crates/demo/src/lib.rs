//! Browser bindings for roth-core.
//!
//! Each exported function takes plain strings and numbers and returns a JSON
//! string. The `*_json` functions hold the logic and run natively too; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use roth_core::config::{
    find_config, ConfigKind, ConfigWitness, ElementSet, GridSet, Ground, PairSet, Policy, SetRef,
};
use roth_core::encodings::{
    find_corner_via_hypergraph, find_elso_via_graph, harmadik_pipeline, BlockPolicy, HSelect,
    PipelineTrace, ScopePolicy,
};
use roth_core::extremal::{density_experiment, Instance};
use roth_core::group::{
    all_subgroups, group_facts, make_named_group, Elem, FiniteGroup, GroupSpec, Subgroup,
    DEFAULT_SUBGROUP_CAP,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest group the page will build; keeps the drawn grid readable.
pub const DEMO_ORDER_CAP: usize = 64;

fn load(spec: &str) -> Result<FiniteGroup, String> {
    let parsed: GroupSpec = spec.trim().parse().map_err(|e| format!("{spec}: {e}"))?;
    if parsed.order().is_none_or(|n| n > DEMO_ORDER_CAP) {
        return Err(format!(
            "{spec}: the demo handles groups of order at most {DEMO_ORDER_CAP}"
        ));
    }
    make_named_group(&parsed).map_err(|e| format!("{spec}: {e}"))
}

/// `""` or `"whole"` is the whole group; otherwise a comma-separated element
/// list.
fn subgroup(g: &FiniteGroup, text: &str) -> Result<Subgroup, String> {
    let text = text.trim();
    if text.is_empty() || text == "whole" {
        return Ok(Subgroup::whole(g));
    }
    let elems = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<Elem>()
                .map_err(|_| format!("bad element {t:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(x) = elems.iter().find(|&&x| x >= g.order()) {
        return Err(format!("element {x} is outside the group"));
    }
    Subgroup::from_elements(g, elems).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SubgroupRow {
    order: usize,
    abelian: bool,
    elements: Vec<Elem>,
}

#[derive(Serialize)]
struct Summary {
    name: String,
    order: usize,
    abelian: bool,
    exponent: usize,
    center_size: usize,
    element_orders: Vec<usize>,
    subgroups: Vec<SubgroupRow>,
}

pub fn group_summary_json(spec: &str) -> Result<String, String> {
    let g = load(spec)?;
    let f = group_facts(&g);
    let subgroups = if g.order() <= DEFAULT_SUBGROUP_CAP {
        all_subgroups(&g)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|h| SubgroupRow {
                order: h.order(),
                abelian: h.is_abelian(&g),
                elements: h.elements().to_vec(),
            })
            .collect()
    } else {
        Vec::new()
    };
    let s = Summary {
        name: f.name,
        order: f.order,
        abelian: f.is_abelian,
        exponent: f.exponent,
        center_size: f.center_size,
        element_orders: f.element_orders,
        subgroups,
    };
    serde_json::to_string(&s).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Search {
    order: usize,
    kind: ConfigKind,
    subgroup: Vec<Elem>,
    /// Members of the random set, as points.
    members: Vec<Vec<Elem>>,
    found: bool,
    witness: Option<ConfigWitness>,
    trace: Option<PipelineTrace>,
}

/// Samples a random set of the kind's ground shape and searches it, by brute
/// force (`method = "brute"`) or through the kind's encoding
/// (`"encoding"`: elso, harmadik and corner only).
pub fn find_json(
    spec: &str,
    subgroup_text: &str,
    kind: &str,
    method: &str,
    density: f64,
    seed: u64,
) -> Result<String, String> {
    let g = load(spec)?;
    let h = subgroup(&g, subgroup_text)?;
    let kind: ConfigKind = kind.parse()?;
    if !(0.0..=1.0).contains(&density) {
        return Err("density must lie in [0, 1]".into());
    }
    let policy = Policy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let (members, witness, trace) = match kind.ground() {
        Ground::Pairs => {
            let s = PairSet::random(n, density, &mut rng);
            let members = s.iter().map(|(a, b)| vec![a, b]).collect();
            let (w, t) = match (method, kind) {
                ("brute", _) => (
                    find_config(kind, &g, SetRef::Pairs(&s), &h, &policy).map_err(|e| err(&e))?,
                    None,
                ),
                ("encoding", ConfigKind::Elso) => {
                    let out = find_elso_via_graph(&g, &s, &h, ScopePolicy::AllCosetPairs, &policy)
                        .map_err(|e| err(&e))?;
                    (out.witness, Some(out.trace))
                }
                ("encoding", ConfigKind::Harmadik) => {
                    let select = if h.is_abelian(&g) {
                        HSelect::Given(h.clone())
                    } else {
                        HSelect::Auto
                    };
                    let out = harmadik_pipeline(&g, &s, &select, &policy).map_err(|e| err(&e))?;
                    (out.witness, Some(out.trace))
                }
                _ => return Err(format!("no {method} search for {kind}")),
            };
            (members, w, t)
        }
        Ground::Elements => {
            if method != "brute" {
                return Err(format!("no {method} search for {kind}"));
            }
            let a = ElementSet::random(n, density, &mut rng);
            let members = a.iter().map(|x| vec![x]).collect();
            (
                members,
                find_config(kind, &g, SetRef::Elements(&a), &h, &policy).map_err(|e| err(&e))?,
                None,
            )
        }
        Ground::Grid => {
            if !g.is_abelian() {
                return Err("corners need an abelian group".into());
            }
            let s = GridSet::random(n, 2, density, &mut rng).map_err(|e| err(&e))?;
            let members = s.iter().collect();
            match method {
                "brute" => (
                    members,
                    find_config(kind, &g, SetRef::Grid(&s), &h, &policy).map_err(|e| err(&e))?,
                    None,
                ),
                "encoding" => {
                    let out =
                        find_corner_via_hypergraph(&g, &s, &h, BlockPolicy::AllBlocks, &policy)
                            .map_err(|e| err(&e))?;
                    (members, out.witness, Some(out.trace))
                }
                _ => return Err(format!("unknown method {method:?}")),
            }
        }
    };
    let subgroup = trace
        .as_ref()
        .map_or_else(|| h.elements().to_vec(), |t| t.subgroup.clone());
    let s = Search {
        order: n,
        kind,
        subgroup,
        members,
        found: witness.is_some(),
        witness,
        trace,
    };
    serde_json::to_string(&s).map_err(|e| e.to_string())
}

/// Hit fraction per density; `densities` is comma-separated.
pub fn experiment_json(
    spec: &str,
    subgroup_text: &str,
    kind: &str,
    densities: &str,
    trials: usize,
    seed: u64,
) -> Result<String, String> {
    let g = load(spec)?;
    let h = subgroup(&g, subgroup_text)?;
    let kind: ConfigKind = kind.parse()?;
    let densities = densities
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad density {t:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let inst = Instance::new(&g, &h, kind);
    let report = density_experiment(&inst, &densities, trials, seed).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn group_summary(spec: &str) -> Result<String, JsError> {
    group_summary_json(spec).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn find(
    spec: &str,
    subgroup: &str,
    kind: &str,
    method: &str,
    density: f64,
    seed: u32,
) -> Result<String, JsError> {
    find_json(spec, subgroup, kind, method, density, seed.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn experiment(
    spec: &str,
    subgroup: &str,
    kind: &str,
    densities: &str,
    trials: u32,
    seed: u32,
) -> Result<String, JsError> {
    experiment_json(
        spec,
        subgroup,
        kind,
        densities,
        trials as usize,
        seed.into(),
    )
    .map_err(|e| JsError::new(&e))
}
