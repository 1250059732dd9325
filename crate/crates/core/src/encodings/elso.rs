use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{
    build_stage1_graph, coset_pair_counts, pigeonhole_coset_pair, EncodingError, PipelineOutcome,
    PipelineTrace, Scope,
};
use crate::config::{elso_witness, ConfigWitness, PairSet, Policy};
use crate::group::{cosets, Elem, FiniteGroup, Side, Subgroup};

/// Which stage-1 graphs the graph-based finder searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScopePolicy {
    /// Only the densest block `ℓH × Hr`.
    Pigeonhole,
    /// Every block, in lexicographic order of `(ℓ, r)`.
    AllCosetPairs,
    /// One graph on three copies of `G`, keeping triangles with `d ∈ H`.
    Full,
}

/// Every coset scope `(ℓ, r)` of `h`, in lexicographic order.
pub fn coset_scopes(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Scope>, EncodingError> {
    let left = cosets(g, h, Side::Left)?;
    let right = cosets(g, h, Side::Right)?;
    Ok(left
        .representatives
        .iter()
        .flat_map(|&l| {
            right
                .representatives
                .iter()
                .map(move |&r| Scope::Coset { l, r, h: h.clone() })
        })
        .collect())
}

/// The configuration carried by a triangle `(a, b, c)`: `(a,b)`,
/// `(cb⁻¹,b)`, `(a,a⁻¹c)` with `d = a⁻¹cb⁻¹`.
pub fn elso_from_triangle(g: &FiniteGroup, [a, b, c]: [Elem; 3]) -> ConfigWitness {
    let d = g.right_div(g.left_div(a, c), b);
    elso_witness(g, a, b, d)
}

/// First non-generator triangle of one scope whose extracted configuration
/// satisfies `policy` (and has `d ∈ H`).
fn search_scope(
    g: &FiniteGroup,
    s: &PairSet,
    h: &Subgroup,
    scope: &Scope,
    policy: &Policy,
) -> Result<(u64, u64, Option<ConfigWitness>), EncodingError> {
    let graph = build_stage1_graph(g, s, scope)?;
    let found = graph.visit_triangles(|t| {
        if t.is_generator() {
            return ControlFlow::Continue(());
        }
        let w = elso_from_triangle(g, t.vertices);
        let d = w.parameter.expect("elso has a parameter");
        if h.contains(d) && policy.parameter_ok(g, d) {
            ControlFlow::Break(w)
        } else {
            ControlFlow::Continue(())
        }
    });
    let witness = match found {
        ControlFlow::Break(w) => Some(w),
        ControlFlow::Continue(()) => None,
    };
    Ok((
        graph.generators().len() as u64,
        graph.non_generator_count(),
        witness,
    ))
}

/// Finds a Roth triple by building the stage-1 graph(s) selected by
/// `scope_policy` and extracting the first qualifying non-generator triangle.
pub fn find_elso_via_graph(
    g: &FiniteGroup,
    s: &PairSet,
    h: &Subgroup,
    scope_policy: ScopePolicy,
    policy: &Policy,
) -> Result<PipelineOutcome, EncodingError> {
    h.check_closed(g)?;
    let mut trace = PipelineTrace::new("elso_graph", g.name(), h.elements());
    match scope_policy {
        ScopePolicy::Full => {
            let (gens, non_gen, w) = search_scope(g, s, h, &Scope::Full, policy)?;
            trace.stage("stage1_graph", gens, Some("full scope".into()));
            trace.stage("non_generator_triangles", non_gen, None);
            Ok(trace.finish("extraction", w))
        }
        ScopePolicy::Pigeonhole => {
            let p = pigeonhole_coset_pair(g, s, h)?;
            trace.l = Some(p.l);
            trace.r = Some(p.r);
            trace.stage(
                "pigeonhole",
                p.count as u64,
                Some(format!("bound {}", p.bound)),
            );
            if p.count == 0 {
                trace.warnings.push("scope contains no member of S".into());
                return Ok(trace.finish("pigeonhole", None));
            }
            let scope = Scope::Coset {
                l: p.l,
                r: p.r,
                h: h.clone(),
            };
            let (gens, non_gen, w) = search_scope(g, s, h, &scope, policy)?;
            trace.stage("stage1_graph", gens, None);
            trace.stage("non_generator_triangles", non_gen, None);
            Ok(trace.finish("extraction", w))
        }
        ScopePolicy::AllCosetPairs => {
            let mut searched = 0;
            let mut gens_total = 0;
            for (l, r, count) in coset_pair_counts(g, s, h)? {
                if count == 0 {
                    continue;
                }
                searched += 1;
                let scope = Scope::Coset { l, r, h: h.clone() };
                let (gens, _, w) = search_scope(g, s, h, &scope, policy)?;
                gens_total += gens;
                if w.is_some() {
                    trace.l = Some(l);
                    trace.r = Some(r);
                    trace.stage("coset_pairs", searched, None);
                    trace.stage("stage1_graph", gens_total, None);
                    return Ok(trace.finish("extraction", w));
                }
            }
            trace.stage("coset_pairs", searched, None);
            trace.stage("stage1_graph", gens_total, None);
            Ok(trace.finish("extraction", None))
        }
    }
}
