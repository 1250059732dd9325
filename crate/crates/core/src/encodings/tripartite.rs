use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{CensusReport, EncodingError};
use crate::bits::{and_count, and_ones, BitMatrix};
use crate::config::PairSet;
use crate::group::{left_coset, right_coset, Elem, FiniteGroup, Subgroup};

const NO_OWNER: u32 = u32::MAX;

/// Vertex classes of the first-stage graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scope {
    /// Three copies of `G`.
    Full,
    /// `ℓH`, `Hr` and `ℓHr`.
    Coset { l: Elem, r: Elem, h: Subgroup },
}

/// A tripartite graph that is the union of a family of tagged generator
/// triangles. Every edge remembers the first generator that created it, so a
/// triangle is a generator triangle exactly when its three edges share one
/// owner.
#[derive(Debug, Clone)]
pub struct TripartiteGraph {
    classes: [Vec<Elem>; 3],
    position: [Vec<u32>; 3],
    e12: BitMatrix,
    e23: BitMatrix,
    e13: BitMatrix,
    owner12: Vec<u32>,
    owner23: Vec<u32>,
    owner13: Vec<u32>,
    generators: Vec<[Elem; 3]>,
    edge_disjoint: bool,
}

/// A triangle together with the generators owning its three edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [Elem; 3],
    /// Owners of the edges `{1,2}`, `{2,3}`, `{1,3}`.
    pub owners: [usize; 3],
}

impl Triangle {
    pub fn is_generator(&self) -> bool {
        self.owners[0] == self.owners[1] && self.owners[1] == self.owners[2]
    }
}

impl TripartiteGraph {
    /// Builds the union of `generators`, each a triangle `(v₁, v₂, v₃)` with
    /// `vᵢ` in class `i`. The universe size bounds element indices.
    pub fn from_generators(
        universe: usize,
        classes: [Vec<Elem>; 3],
        generators: Vec<[Elem; 3]>,
    ) -> Result<Self, EncodingError> {
        let mut position = [
            vec![u32::MAX; universe],
            vec![u32::MAX; universe],
            vec![u32::MAX; universe],
        ];
        for (pos, class) in position.iter_mut().zip(&classes) {
            for (i, &x) in class.iter().enumerate() {
                pos[x] = i as u32;
            }
        }
        let [n1, n2, n3] = [classes[0].len(), classes[1].len(), classes[2].len()];
        let mut graph = TripartiteGraph {
            e12: BitMatrix::new(n1, n2),
            e23: BitMatrix::new(n2, n3),
            e13: BitMatrix::new(n1, n3),
            owner12: vec![NO_OWNER; n1 * n2],
            owner23: vec![NO_OWNER; n2 * n3],
            owner13: vec![NO_OWNER; n1 * n3],
            classes,
            position,
            generators: Vec::with_capacity(generators.len()),
            edge_disjoint: true,
        };
        for (t, tri) in generators.into_iter().enumerate() {
            let [i, j, k] = graph.locate(tri).ok_or_else(|| {
                EncodingError::InvariantViolation(format!(
                    "generator {tri:?} does not respect the vertex classes"
                ))
            })?;
            let t = t as u32;
            graph.edge_disjoint &= claim(&mut graph.owner12[i * n2 + j], t);
            graph.edge_disjoint &= claim(&mut graph.owner23[j * n3 + k], t);
            graph.edge_disjoint &= claim(&mut graph.owner13[i * n3 + k], t);
            graph.e12.set(i, j);
            graph.e23.set(j, k);
            graph.e13.set(i, k);
            graph.generators.push(tri);
        }
        Ok(graph)
    }

    fn locate(&self, tri: [Elem; 3]) -> Option<[usize; 3]> {
        let mut out = [0; 3];
        for c in 0..3 {
            let p = *self.position[c].get(tri[c])?;
            if p == u32::MAX {
                return None;
            }
            out[c] = p as usize;
        }
        Some(out)
    }

    pub fn classes(&self) -> &[Vec<Elem>; 3] {
        &self.classes
    }

    pub fn generators(&self) -> &[[Elem; 3]] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn edge_count(&self) -> u64 {
        self.e12.count_ones() + self.e23.count_ones() + self.e13.count_ones()
    }

    /// Whether generator triangles share no edge.
    pub fn generators_edge_disjoint(&self) -> bool {
        self.edge_disjoint
    }

    pub fn has_edge(&self, from: usize, to: usize, u: Elem, v: Elem) -> bool {
        let lookup = |c: usize, x: Elem| {
            self.position[c]
                .get(x)
                .copied()
                .filter(|&p| p != u32::MAX)
                .map(|p| p as usize)
        };
        let (Some(i), Some(j)) = (lookup(from, u), lookup(to, v)) else {
            return false;
        };
        match (from, to) {
            (0, 1) => self.e12.get(i, j),
            (1, 2) => self.e23.get(i, j),
            (0, 2) => self.e13.get(i, j),
            _ => false,
        }
    }

    /// Visits every triangle in lexicographic order of its local vertex
    /// indices, which is element order within each class.
    pub fn visit_triangles<B>(
        &self,
        mut f: impl FnMut(Triangle) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let n2 = self.classes[1].len();
        let n3 = self.classes[2].len();
        for (i, j) in self.e12.iter_ones() {
            for k in and_ones(self.e13.row(i), self.e23.row(j)) {
                let tri = Triangle {
                    vertices: [self.classes[0][i], self.classes[1][j], self.classes[2][k]],
                    owners: [
                        self.owner12[i * n2 + j] as usize,
                        self.owner23[j * n3 + k] as usize,
                        self.owner13[i * n3 + k] as usize,
                    ],
                };
                f(tri)?;
            }
        }
        ControlFlow::Continue(())
    }

    pub fn non_generator_triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        let _ = self.visit_triangles::<()>(|t| {
            if !t.is_generator() {
                out.push(t);
            }
            ControlFlow::Continue(())
        });
        out
    }

    pub fn first_non_generator_triangle(&self) -> Option<Triangle> {
        match self.visit_triangles(|t| {
            if t.is_generator() {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(t)
            }
        }) {
            ControlFlow::Break(t) => Some(t),
            ControlFlow::Continue(()) => None,
        }
    }

    /// Number of triangles, by word-parallel neighbourhood intersection.
    pub fn triangle_count(&self) -> u64 {
        self.e12
            .iter_ones()
            .map(|(i, j)| and_count(self.e13.row(i), self.e23.row(j)))
            .sum()
    }

    /// Generators whose three edges all kept them as owner.
    fn owned_generator_count(&self) -> u64 {
        let (n2, n3) = (self.classes[1].len(), self.classes[2].len());
        self.generators
            .iter()
            .enumerate()
            .filter(|&(t, &tri)| {
                let [i, j, k] = self.locate(tri).expect("located at construction");
                let t = t as u32;
                self.owner12[i * n2 + j] == t
                    && self.owner23[j * n3 + k] == t
                    && self.owner13[i * n3 + k] == t
            })
            .count() as u64
    }

    /// Triangles that are not generator triangles.
    pub fn non_generator_count(&self) -> u64 {
        self.triangle_count() - self.owned_generator_count()
    }

    /// Exact triangle counts together with the two removal-lemma hypotheses.
    pub fn census(&self) -> CensusReport {
        let total = self.triangle_count();
        let owned = self.owned_generator_count();
        let generator_count = self.generators.len() as u64;

        // every edge must lie in exactly one triangle
        let t12 = self.e12.transpose();
        let t23 = self.e23.transpose();
        let t13 = self.e13.transpose();
        let unique_cover = self
            .e12
            .iter_ones()
            .all(|(i, j)| and_count(self.e13.row(i), self.e23.row(j)) == 1)
            && self
                .e23
                .iter_ones()
                .all(|(j, k)| and_count(t13.row(k), t12.row(j)) == 1)
            && self
                .e13
                .iter_ones()
                .all(|(i, k)| and_count(self.e12.row(i), t23.row(k)) == 1);

        CensusReport {
            generator_count,
            total_count: total,
            non_generator_count: total - owned,
            edge_disjoint: self.edge_disjoint,
            unique_clique_cover: unique_cover,
        }
    }
}

fn claim(slot: &mut u32, owner: u32) -> bool {
    if *slot == NO_OWNER {
        *slot = owner;
        true
    } else {
        false
    }
}

/// The first-stage graph: each `(g₁, g₂) ∈ S` inside the scope spans the
/// triangle `(g₁, g₂, g₁g₂)`.
pub fn build_stage1_graph(
    g: &FiniteGroup,
    s: &PairSet,
    scope: &Scope,
) -> Result<TripartiteGraph, EncodingError> {
    if s.order() != g.order() {
        return Err(EncodingError::OrderMismatch {
            set: s.order(),
            group: g.order(),
        });
    }
    let classes = match scope {
        Scope::Full => [
            g.elements().collect(),
            g.elements().collect(),
            g.elements().collect(),
        ],
        Scope::Coset { l, r, h } => {
            h.check_closed(g)?;
            if *l >= g.order() || *r >= g.order() {
                return Err(EncodingError::InvariantViolation(format!(
                    "coset representatives ({l}, {r}) are outside the group"
                )));
            }
            let lh = left_coset(g, h, *l);
            let hr = right_coset(g, h, *r);
            let mut lhr: Vec<Elem> = lh.iter().map(|&x| g.mul(x, *r)).collect();
            lhr.sort_unstable();
            [lh, hr, lhr]
        }
    };
    let mut in1 = vec![false; g.order()];
    let mut in2 = vec![false; g.order()];
    classes[0].iter().for_each(|&x| in1[x] = true);
    classes[1].iter().for_each(|&x| in2[x] = true);
    let generators: Vec<[Elem; 3]> = s
        .iter()
        .filter(|&(a, b)| in1[a] && in2[b])
        .map(|(a, b)| [a, b, g.mul(a, b)])
        .collect();
    TripartiteGraph::from_generators(g.order(), classes, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_named_group;

    fn group(s: &str) -> FiniteGroup {
        make_named_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn full_set_over_z4_is_complete_tripartite() {
        let g = group("cyclic:4");
        let graph = build_stage1_graph(&g, &PairSet::full(4), &Scope::Full).unwrap();
        assert_eq!(graph.generators().len(), 16);
        assert_eq!(graph.edge_count(), 48);
        let c = graph.census();
        assert_eq!(
            c,
            CensusReport {
                generator_count: 16,
                total_count: 64,
                non_generator_count: 48,
                edge_disjoint: true,
                unique_clique_cover: false,
            }
        );
    }

    #[test]
    fn single_pair_gives_one_triangle() {
        let g = group("cyclic:2");
        let s = PairSet::from_pairs(2, [(0, 0)]).unwrap();
        let c = build_stage1_graph(&g, &s, &Scope::Full).unwrap().census();
        assert_eq!(c.total_count, 1);
        assert_eq!(c.non_generator_count, 0);
        assert!(c.unique_clique_cover);
    }

    #[test]
    fn coset_scope_in_z6() {
        let g = group("cyclic:6");
        let h = Subgroup::from_elements(&g, [0, 2, 4]).unwrap();
        let s = PairSet::from_pairs(6, [(1, 1), (0, 1)]).unwrap();
        let graph = build_stage1_graph(&g, &s, &Scope::Coset { l: 1, r: 1, h }).unwrap();
        assert_eq!(graph.classes()[0], vec![1, 3, 5]);
        assert_eq!(graph.classes()[1], vec![1, 3, 5]);
        assert_eq!(graph.classes()[2], vec![0, 2, 4]);
        assert_eq!(graph.generators(), &[[1, 1, 2]]);
    }

    #[test]
    fn triangle_extraction_order() {
        let g = group("cyclic:4");
        let graph = build_stage1_graph(&g, &PairSet::full(4), &Scope::Full).unwrap();
        let t = graph.first_non_generator_triangle().unwrap();
        assert_eq!(t.vertices, [0, 0, 1]);
        assert_eq!(graph.non_generator_triangles().len(), 48);
    }

    #[test]
    fn overlapping_generators_are_detected() {
        let tri = TripartiteGraph::from_generators(
            3,
            [vec![0, 1], vec![0, 1], vec![0, 1, 2]],
            vec![[0, 0, 0], [0, 0, 1]],
        )
        .unwrap();
        assert!(!tri.generators_edge_disjoint());
        assert!(
            TripartiteGraph::from_generators(3, [vec![0], vec![0], vec![0]], vec![[1, 0, 0]])
                .is_err()
        );
    }
}
