use std::collections::BTreeMap;
use std::ops::ControlFlow;

use super::{
    build_stage1_graph, pigeonhole_coset_pair, EncodingError, PipelineOutcome, PipelineTrace,
    Scope, TripartiteGraph,
};
use crate::config::{validate_witness, ConfigKind, ConfigWitness, PairSet, Policy, SetRef};
use crate::group::{left_coset, max_abelian_subgroup, Elem, FiniteGroup, Subgroup};

/// How the harmadik pipeline chooses its abelian subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HSelect {
    Given(Subgroup),
    /// A maximum abelian subgroup.
    Auto,
}

/// A stage-1 non-generator triangle `(aᵢ, bᵢ, cᵢ)` with `x = cᵢbᵢ⁻¹`.
#[derive(Debug, Clone, Copy)]
struct Triple {
    a: Elem,
    b: Elem,
    c: Elem,
}

/// Two-stage search for `(a,b), (a,c), (e,f)` with `ab = ec`, `ac = ef`.
///
/// Stage 1 is the coset-restricted triangle graph. Its non-generator
/// triangles are grouped by `x = cb⁻¹` and the most frequent `x` is kept.
/// Stage 2 is the tripartite graph on `ℓH`, `ℓHr` (products `aᵢbᵢ`) and
/// `ℓHr` (apexes `cᵢ`) spanned by the triangles `(aᵢ, aᵢbᵢ, cᵢ)`; a
/// non-generator triangle there yields the configuration.
pub fn harmadik_pipeline(
    g: &FiniteGroup,
    s: &PairSet,
    select: &HSelect,
    policy: &Policy,
) -> Result<PipelineOutcome, EncodingError> {
    let h = match select {
        HSelect::Given(h) => {
            h.check_closed(g)?;
            if !h.is_abelian(g) {
                return Err(EncodingError::NotAbelianSubgroup(h.to_string()));
            }
            h.clone()
        }
        HSelect::Auto => max_abelian_subgroup(g)?,
    };
    let mut trace = PipelineTrace::new("harmadik", g.name(), h.elements());

    let p = pigeonhole_coset_pair(g, s, &h)?;
    trace.l = Some(p.l);
    trace.r = Some(p.r);
    trace.stage(
        "pigeonhole",
        p.count as u64,
        Some(format!("bound {}", p.bound)),
    );
    if p.count == 0 {
        trace.warnings.push("scope contains no member of S".into());
        return Ok(trace.finish("stage1", None));
    }

    let scope = Scope::Coset {
        l: p.l,
        r: p.r,
        h: h.clone(),
    };
    let stage1 = build_stage1_graph(g, s, &scope)?;
    let triples: Vec<Triple> = stage1
        .non_generator_triangles()
        .into_iter()
        .map(|t| Triple {
            a: t.vertices[0],
            b: t.vertices[1],
            c: t.vertices[2],
        })
        .collect();
    trace.stage(
        "stage1",
        triples.len() as u64,
        Some(format!("{} generators", stage1.generators().len())),
    );
    if triples.is_empty() {
        return Ok(trace.finish("stage1", None));
    }

    let mut by_x: BTreeMap<Elem, Vec<Triple>> = BTreeMap::new();
    for t in triples {
        by_x.entry(g.right_div(t.c, t.b)).or_default().push(t);
    }
    // most triples, least x on ties
    let (x, chosen) = by_x
        .into_iter()
        .fold(None::<(Elem, Vec<Triple>)>, |best, cur| match best {
            Some(b) if b.1.len() >= cur.1.len() => Some(b),
            _ => Some(cur),
        })
        .expect("nonempty");
    trace.x = Some(x);
    trace.stage("fix_x", chosen.len() as u64, None);

    let lh = left_coset(g, &h, p.l);
    let mut lhr: Vec<Elem> = lh.iter().map(|&y| g.mul(y, p.r)).collect();
    lhr.sort_unstable();
    let generators: Vec<[Elem; 3]> = chosen.iter().map(|t| [t.a, g.mul(t.a, t.b), t.c]).collect();
    let stage2 = TripartiteGraph::from_generators(g.order(), [lh, lhr.clone(), lhr], generators)?;
    if !stage2.generators_edge_disjoint() {
        return Err(EncodingError::InvariantViolation(
            "stage-2 triangles for a fixed x share an edge".into(),
        ));
    }
    trace.stage("stage2", stage2.generators().len() as u64, None);

    let mut rejected = 0;
    let mut invalid = None;
    let found = stage2.visit_triangles(|t| {
        if t.is_generator() {
            return ControlFlow::Continue(());
        }
        // owners of AB, BC, AC are the triples i, j, k
        let [i, j, k] = t.owners;
        if i == j || j == k || i == k {
            rejected += 1;
            return ControlFlow::Continue(());
        }
        let (ti, tj, tk) = (chosen[i], chosen[j], chosen[k]);
        let w = ConfigWitness::new(
            ConfigKind::Harmadik,
            vec![
                vec![ti.a, g.left_div(ti.a, ti.c)],
                vec![tk.a, g.left_div(tk.a, tk.c)],
                vec![tj.a, g.left_div(tj.a, tj.c)],
            ],
            None,
        );
        match validate_witness(g, SetRef::Pairs(s), &h, &w, policy) {
            Ok(v) if v.valid => ControlFlow::Break(w),
            Ok(v)
                if v.reason
                    .as_deref()
                    .is_some_and(|r| r.starts_with("degenerate")) =>
            {
                ControlFlow::Continue(())
            }
            Ok(v) => {
                invalid = Some(format!("{w:?}: {}", v.reason.unwrap_or_default()));
                ControlFlow::Continue(())
            }
            Err(e) => {
                invalid = Some(e.to_string());
                ControlFlow::Continue(())
            }
        }
    });
    trace.rejected_degenerate = rejected;
    if let Some(msg) = invalid {
        return Err(EncodingError::InvariantViolation(format!(
            "stage-2 extraction failed validation: {msg}"
        )));
    }
    let witness = match found {
        ControlFlow::Break(w) => Some(w),
        ControlFlow::Continue(()) => None,
    };
    Ok(trace.finish("stage2", witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_named_group;

    fn group(s: &str) -> FiniteGroup {
        make_named_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn full_z3() {
        let g = group("cyclic:3");
        let h = Subgroup::whole(&g);
        let s = PairSet::full(3);
        let out =
            harmadik_pipeline(&g, &s, &HSelect::Given(h.clone()), &Policy::default()).unwrap();
        let w = out.witness.expect("dense case");
        let v = validate_witness(&g, SetRef::Pairs(&s), &h, &w, &Policy::default()).unwrap();
        assert!(v.valid);
        assert_eq!(out.trace.outcome.stage, "stage2");
        assert_eq!(out.trace.rejected_degenerate, 0);
    }

    #[test]
    fn empty_set_stops_at_stage1() {
        let g = group("cyclic:5");
        let out =
            harmadik_pipeline(&g, &PairSet::empty(5), &HSelect::Auto, &Policy::default()).unwrap();
        assert!(out.witness.is_none());
        assert_eq!(out.trace.outcome.stage, "stage1");
    }

    #[test]
    fn rejects_non_abelian_subgroup() {
        let g = group("symmetric:3");
        let h = Subgroup::whole(&g);
        let err = harmadik_pipeline(
            &g,
            &PairSet::full(6),
            &HSelect::Given(h),
            &Policy::default(),
        )
        .unwrap_err();
        assert!(matches!(err, EncodingError::NotAbelianSubgroup(_)));
    }

    #[test]
    fn auto_subgroup_in_a_non_abelian_group() {
        let g = group("dihedral:4");
        let s = PairSet::full(8);
        let out = harmadik_pipeline(&g, &s, &HSelect::Auto, &Policy::default()).unwrap();
        assert_eq!(out.trace.subgroup.len(), 4);
        let w = out.witness.expect("dense case");
        let h = Subgroup::from_elements(&g, out.trace.subgroup.iter().copied()).unwrap();
        assert!(
            validate_witness(&g, SetRef::Pairs(&s), &h, &w, &Policy::default())
                .unwrap()
                .valid
        );
    }
}
