use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{CensusReport, EncodingError, PipelineOutcome, PipelineTrace};
use crate::config::{
    corner_witness, validate_witness, ConfigError, ConfigWitness, GridSet, Policy, SetRef,
};
use crate::group::{cosets, left_coset, Elem, FiniteGroup, Side, Subgroup};

const NO_OWNER: u32 = u32::MAX;

/// A block `(a₁+H) × … × (a_d+H)` of `Gᵈ` and how much of the set it holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBlock {
    pub reps: Vec<Elem>,
    pub count: usize,
    /// `⌈|S| / [G:H]ᵈ⌉`.
    pub bound: usize,
}

/// Which blocks the corner pipeline searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockPolicy {
    /// Only the densest block.
    Pigeonhole,
    /// Every block, in lexicographic order of representatives.
    AllBlocks,
}

/// A `(d+1)`-partite `d`-uniform hypergraph that is the union of generator
/// cliques. An edge is a `d`-tuple taking one vertex from each class but
/// one; edges are grouped into `d+1` families by the omitted class.
#[derive(Debug, Clone)]
pub struct KPartiteHypergraph {
    dim: usize,
    side: usize,
    classes: Vec<Vec<Elem>>,
    position: Vec<Vec<u32>>,
    owners: Vec<Vec<u32>>,
    generators: Vec<Vec<Elem>>,
    edge_disjoint: bool,
}

/// A clique `w₁, …, w_{d+1}` and the owners of its edges; `owners[f]` owns
/// the edge omitting class `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clique {
    pub vertices: Vec<Elem>,
    pub owners: Vec<usize>,
}

impl Clique {
    pub fn is_generator(&self) -> bool {
        self.owners.windows(2).all(|w| w[0] == w[1])
    }
}

impl KPartiteHypergraph {
    /// Builds the union of `generators`, each a `(d+1)`-tuple with entry `i`
    /// in class `i`. All classes must have the same size.
    pub fn from_generators(
        universe: usize,
        classes: Vec<Vec<Elem>>,
        generators: Vec<Vec<Elem>>,
    ) -> Result<Self, EncodingError> {
        let parts = classes.len();
        if parts < 2 {
            return Err(EncodingError::InvariantViolation(
                "a hypergraph needs at least two classes".into(),
            ));
        }
        let side = classes[0].len();
        if classes.iter().any(|c| c.len() != side) {
            return Err(EncodingError::InvariantViolation(
                "hypergraph classes must have equal sizes".into(),
            ));
        }
        let dim = parts - 1;
        let mut position = vec![vec![u32::MAX; universe]; parts];
        for (pos, class) in position.iter_mut().zip(&classes) {
            for (i, &x) in class.iter().enumerate() {
                pos[x] = i as u32;
            }
        }
        let family_size = side
            .checked_pow(dim as u32)
            .ok_or_else(|| EncodingError::InvariantViolation("hypergraph too large".into()))?;
        let mut graph = KPartiteHypergraph {
            dim,
            side,
            classes,
            position,
            owners: vec![vec![NO_OWNER; family_size]; parts],
            generators: Vec::with_capacity(generators.len()),
            edge_disjoint: true,
        };
        for (t, clique) in generators.into_iter().enumerate() {
            let local = graph.locate(&clique).ok_or_else(|| {
                EncodingError::InvariantViolation(format!(
                    "generator {clique:?} does not respect the vertex classes"
                ))
            })?;
            for f in 0..parts {
                let idx = graph.edge_index(&local, f);
                let slot = &mut graph.owners[f][idx];
                if *slot == NO_OWNER {
                    *slot = t as u32;
                } else {
                    graph.edge_disjoint = false;
                }
            }
            graph.generators.push(clique);
        }
        Ok(graph)
    }

    fn locate(&self, vertices: &[Elem]) -> Option<Vec<usize>> {
        if vertices.len() != self.classes.len() {
            return None;
        }
        vertices
            .iter()
            .zip(&self.position)
            .map(|(&v, pos)| match pos.get(v) {
                Some(&p) if p != u32::MAX => Some(p as usize),
                _ => None,
            })
            .collect()
    }

    fn edge_index(&self, local: &[usize], omit: usize) -> usize {
        local
            .iter()
            .enumerate()
            .filter(|&(c, _)| c != omit)
            .fold(0, |acc, (_, &p)| acc * self.side + p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn generators(&self) -> &[Vec<Elem>] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators_edge_disjoint(&self) -> bool {
        self.edge_disjoint
    }

    pub fn edge_count(&self) -> u64 {
        self.owners
            .iter()
            .map(|fam| fam.iter().filter(|&&o| o != NO_OWNER).count() as u64)
            .sum()
    }

    /// Visits every clique in lexicographic order of its vertices. Candidate
    /// cliques are grown from the edges omitting the last class, and each
    /// remaining edge is checked as soon as its vertices are fixed.
    pub fn visit_cliques<B>(&self, mut f: impl FnMut(&Clique) -> ControlFlow<B>) -> ControlFlow<B> {
        let d = self.dim;
        let mut local = vec![0usize; d + 1];
        let mut idx = vec![0usize; d + 1];
        for (base_idx, &base_owner) in self.owners[d].iter().enumerate() {
            if base_owner == NO_OWNER {
                continue;
            }
            let mut rest = base_idx;
            for c in (0..d).rev() {
                local[c] = rest % self.side;
                rest /= self.side;
            }
            for apex in 0..self.side {
                local[d] = apex;
                let mut present = true;
                for (fam, slot) in idx.iter_mut().enumerate().take(d) {
                    *slot = self.edge_index(&local, fam);
                    if self.owners[fam][*slot] == NO_OWNER {
                        present = false;
                        break;
                    }
                }
                if !present {
                    continue;
                }
                let mut owners: Vec<usize> = (0..d)
                    .map(|fam| self.owners[fam][idx[fam]] as usize)
                    .collect();
                owners.push(base_owner as usize);
                let clique = Clique {
                    vertices: (0..=d).map(|c| self.classes[c][local[c]]).collect(),
                    owners,
                };
                f(&clique)?;
            }
        }
        ControlFlow::Continue(())
    }

    pub fn first_non_generator_clique(&self) -> Option<Clique> {
        match self.visit_cliques(|c| {
            if c.is_generator() {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(c.clone())
            }
        }) {
            ControlFlow::Break(c) => Some(c),
            ControlFlow::Continue(()) => None,
        }
    }

    /// Exact clique counts and the two removal-lemma hypotheses.
    pub fn census(&self) -> CensusReport {
        let parts = self.dim + 1;
        let mut cover: Vec<Vec<u32>> = self.owners.iter().map(|f| vec![0; f.len()]).collect();
        let mut total = 0u64;
        let mut local = vec![0usize; parts];
        let _ = self.visit_cliques::<()>(|c| {
            total += 1;
            for (slot, (&v, pos)) in local.iter_mut().zip(c.vertices.iter().zip(&self.position)) {
                *slot = pos[v] as usize;
            }
            for (fam, counts) in cover.iter_mut().enumerate() {
                counts[self.edge_index(&local, fam)] += 1;
            }
            ControlFlow::Continue(())
        });
        let owned = self
            .generators
            .iter()
            .enumerate()
            .filter(|(t, clique)| {
                let local = self.locate(clique).expect("located at construction");
                (0..parts).all(|fam| self.owners[fam][self.edge_index(&local, fam)] == *t as u32)
            })
            .count() as u64;
        let unique = self.owners.iter().zip(&cover).all(|(fam, counts)| {
            fam.iter()
                .zip(counts)
                .all(|(&o, &n)| o == NO_OWNER || n == 1)
        });
        CensusReport {
            generator_count: self.generators.len() as u64,
            total_count: total,
            non_generator_count: total - owned,
            edge_disjoint: self.edge_disjoint,
            unique_clique_cover: unique,
        }
    }
}

fn check_grid(g: &FiniteGroup, s: &GridSet, h: &Subgroup) -> Result<(), EncodingError> {
    if s.order() != g.order() {
        return Err(EncodingError::OrderMismatch {
            set: s.order(),
            group: g.order(),
        });
    }
    if !g.is_abelian() {
        return Err(ConfigError::NotAbelian(g.name().to_string()).into());
    }
    h.check_closed(g)?;
    Ok(())
}

/// Sum of a tuple in an abelian group.
fn sum(g: &FiniteGroup, xs: &[Elem]) -> Elem {
    xs.iter().fold(g.identity(), |acc, &x| g.mul(acc, x))
}

/// The hypergraph of the block with representatives `reps`: classes
/// `aᵢ + H` and `Σaᵢ + H`, and one clique `(v₁, …, v_d, Σvᵢ)` for every
/// member of `S` in the block.
pub fn build_corner_hypergraph(
    g: &FiniteGroup,
    s: &GridSet,
    reps: &[Elem],
    h: &Subgroup,
) -> Result<KPartiteHypergraph, EncodingError> {
    check_grid(g, s, h)?;
    if reps.len() != s.dim() {
        return Err(EncodingError::InvariantViolation(format!(
            "block has {} representatives for a grid of dimension {}",
            reps.len(),
            s.dim()
        )));
    }
    if let Some(&bad) = reps.iter().find(|&&a| a >= g.order()) {
        return Err(EncodingError::InvariantViolation(format!(
            "representative {bad} is outside the group"
        )));
    }
    let mut classes: Vec<Vec<Elem>> = reps.iter().map(|&a| left_coset(g, h, a)).collect();
    classes.push(left_coset(g, h, sum(g, reps)));
    let members: Vec<Vec<bool>> = classes[..reps.len()]
        .iter()
        .map(|c| {
            let mut m = vec![false; g.order()];
            c.iter().for_each(|&x| m[x] = true);
            m
        })
        .collect();
    let generators: Vec<Vec<Elem>> = s
        .iter()
        .filter(|p| p.iter().zip(&members).all(|(&x, m)| m[x]))
        .map(|mut p| {
            p.push(sum(g, &p));
            p
        })
        .collect();
    KPartiteHypergraph::from_generators(g.order(), classes, generators)
}

/// Member counts of every block, in lexicographic order of representatives.
fn block_counts(
    g: &FiniteGroup,
    s: &GridSet,
    h: &Subgroup,
) -> Result<Vec<(Vec<Elem>, usize)>, EncodingError> {
    check_grid(g, s, h)?;
    let part = cosets(g, h, Side::Left)?;
    let k = part.len();
    let d = s.dim();
    let blocks = k.pow(d as u32);
    let mut counts = vec![0usize; blocks];
    for p in s.iter() {
        let idx = p.iter().fold(0, |acc, &x| acc * k + part.block_index(x));
        counts[idx] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(mut idx, n)| {
            let mut reps = vec![0; d];
            for c in (0..d).rev() {
                reps[c] = part.representatives[idx % k];
                idx /= k;
            }
            (reps, n)
        })
        .collect())
}

/// The densest block, least representatives among ties.
pub fn pigeonhole_block(
    g: &FiniteGroup,
    s: &GridSet,
    h: &Subgroup,
) -> Result<GridBlock, EncodingError> {
    let (reps, count) = block_counts(g, s, h)?
        .into_iter()
        .fold(None::<(Vec<Elem>, usize)>, |best, cur| match best {
            Some(b) if b.1 >= cur.1 => Some(b),
            _ => Some(cur),
        })
        .expect("at least one block");
    let blocks = h.index().pow(s.dim() as u32);
    Ok(GridBlock {
        reps,
        count,
        bound: s.size().div_ceil(blocks),
    })
}

fn search_block(
    g: &FiniteGroup,
    s: &GridSet,
    h: &Subgroup,
    reps: &[Elem],
    policy: &Policy,
) -> Result<(u64, Option<ConfigWitness>), EncodingError> {
    let hyper = build_corner_hypergraph(g, s, reps, h)?;
    let d = hyper.dim();
    let mut invalid = None;
    let found = hyper.visit_cliques(|c| {
        if c.is_generator() {
            return ControlFlow::Continue(());
        }
        let base = &c.vertices[..d];
        let delta = g.right_div(c.vertices[d], sum(g, base));
        if !policy.parameter_ok(g, delta) {
            return ControlFlow::Continue(());
        }
        let w = corner_witness(g, base, delta);
        match validate_witness(g, SetRef::Grid(s), h, &w, policy) {
            Ok(v) if v.valid => ControlFlow::Break(w),
            Ok(v) => {
                invalid = Some(format!("{w:?}: {}", v.reason.unwrap_or_default()));
                ControlFlow::Break(w)
            }
            Err(e) => {
                invalid = Some(e.to_string());
                ControlFlow::Break(w)
            }
        }
    });
    if let Some(msg) = invalid {
        return Err(EncodingError::InvariantViolation(format!(
            "clique extraction failed validation: {msg}"
        )));
    }
    Ok((
        hyper.generators().len() as u64,
        match found {
            ControlFlow::Break(w) => Some(w),
            ControlFlow::Continue(()) => None,
        },
    ))
}

/// Finds a corner by extracting `δ = w_{d+1} − Σwᵢ` from a non-generator
/// clique of the block hypergraph(s).
pub fn find_corner_via_hypergraph(
    g: &FiniteGroup,
    s: &GridSet,
    h: &Subgroup,
    block_policy: BlockPolicy,
    policy: &Policy,
) -> Result<PipelineOutcome, EncodingError> {
    let mut trace = PipelineTrace::new("corner_hypergraph", g.name(), h.elements());
    match block_policy {
        BlockPolicy::Pigeonhole => {
            let block = pigeonhole_block(g, s, h)?;
            trace.stage(
                "pigeonhole",
                block.count as u64,
                Some(format!("block {:?}, bound {}", block.reps, block.bound)),
            );
            if block.count == 0 {
                trace.warnings.push("block contains no member of S".into());
                return Ok(trace.finish("pigeonhole", None));
            }
            let (gens, w) = search_block(g, s, h, &block.reps, policy)?;
            trace.stage("hypergraph", gens, None);
            Ok(trace.finish("extraction", w))
        }
        BlockPolicy::AllBlocks => {
            let mut searched = 0;
            let mut gens_total = 0;
            for (reps, count) in block_counts(g, s, h)? {
                if count == 0 {
                    continue;
                }
                searched += 1;
                let (gens, w) = search_block(g, s, h, &reps, policy)?;
                gens_total += gens;
                if w.is_some() {
                    trace.stage("blocks", searched, Some(format!("block {reps:?}")));
                    trace.stage("hypergraph", gens_total, None);
                    return Ok(trace.finish("extraction", w));
                }
            }
            trace.stage("blocks", searched, None);
            trace.stage("hypergraph", gens_total, None);
            Ok(trace.finish("extraction", None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::find_corner;
    use crate::encodings::{build_stage1_graph, Scope};
    use crate::group::make_named_group;

    fn group(s: &str) -> FiniteGroup {
        make_named_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn full_z5_square() {
        let g = group("cyclic:5");
        let h = Subgroup::whole(&g);
        let s = GridSet::full(5, 2).unwrap();
        let hyper = build_corner_hypergraph(&g, &s, &[0, 0], &h).unwrap();
        assert_eq!(hyper.generators().len(), 25);
        assert!(hyper.generators_edge_disjoint());
        let out =
            find_corner_via_hypergraph(&g, &s, &h, BlockPolicy::Pigeonhole, &Policy::default())
                .unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.points[0], vec![0, 0]);
        assert_eq!(w.parameter, Some(1));
    }

    #[test]
    fn antidiagonal_has_no_corner() {
        let g = group("cyclic:5");
        let h = Subgroup::whole(&g);
        let s = GridSet::from_fn(5, 2, |p| (p[0] + p[1]) % 5 == 0).unwrap();
        let out =
            find_corner_via_hypergraph(&g, &s, &h, BlockPolicy::AllBlocks, &Policy::default())
                .unwrap();
        assert!(out.witness.is_none());
    }

    #[test]
    fn empty_grid_gives_empty_hypergraph() {
        let g = group("cyclic:3");
        let h = Subgroup::whole(&g);
        let s = GridSet::empty(3, 3).unwrap();
        let hyper = build_corner_hypergraph(&g, &s, &[0, 0, 0], &h).unwrap();
        assert!(hyper.is_empty());
        assert_eq!(hyper.census().total_count, 0);
    }

    #[test]
    fn three_dimensional_full_grid() {
        let g = group("cyclic:3");
        let h = Subgroup::whole(&g);
        let s = GridSet::full(3, 3).unwrap();
        let out =
            find_corner_via_hypergraph(&g, &s, &h, BlockPolicy::Pigeonhole, &Policy::default())
                .unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.parameter, Some(1));
        assert_eq!(
            find_corner(&g, &s, &h, &Policy::default()).unwrap(),
            Some(w)
        );
    }

    #[test]
    fn plane_census_matches_the_triangle_graph() {
        let g = group("cyclic:6");
        let h = Subgroup::from_elements(&g, [0, 2, 4]).unwrap();
        let s = GridSet::from_fn(6, 2, |p| (p[0] * 5 + p[1] * 3) % 7 < 4).unwrap();
        let pairs = s.to_pair_set().unwrap();
        for (a1, a2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let hyper = build_corner_hypergraph(&g, &s, &[a1, a2], &h).unwrap();
            let tri = build_stage1_graph(
                &g,
                &pairs,
                &Scope::Coset {
                    l: a1,
                    r: a2,
                    h: h.clone(),
                },
            )
            .unwrap();
            assert_eq!(hyper.census(), tri.census());
        }
    }

    #[test]
    fn non_abelian_groups_are_rejected() {
        let g = group("dihedral:3");
        let s = GridSet::full(6, 2).unwrap();
        let err = build_corner_hypergraph(&g, &s, &[0, 0], &Subgroup::whole(&g)).unwrap_err();
        assert!(matches!(
            err,
            EncodingError::Config(ConfigError::NotAbelian(_))
        ));
    }
}
