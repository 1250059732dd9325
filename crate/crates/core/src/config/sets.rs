//! Dense subsets of `G`, `G×G` and `Gᵈ`, plus their text file format.
//!
//! ```text
//! # comment
//! pairset            | elementset | gridset 3
//! 0 1                | 4          | 0 1 2
//! 2 3                | 5          | 1 1 0
//! ```

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ConfigError;
use crate::group::Elem;

/// Default caps on grid sets: dimension and total number of cells.
pub const MAX_GRID_DIM: usize = 4;
pub const MAX_GRID_CELLS: usize = 1 << 20;

fn sample_indices(rng: &mut impl Rng, universe: usize, density: f64) -> Vec<usize> {
    let m = ((density.clamp(0.0, 1.0) * universe as f64).floor() as usize).min(universe);
    let mut idx = rand::seq::index::sample(rng, universe, m).into_vec();
    idx.sort_unstable();
    idx
}

/// A subset `S ⊆ G×G` stored as an `n×n` membership table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairSet {
    order: usize,
    members: Vec<bool>,
    size: usize,
}

impl std::fmt::Debug for PairSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PairSet")
            .field("order", &self.order)
            .field("members", &self.iter().collect::<Vec<_>>())
            .finish()
    }
}

impl PairSet {
    pub fn empty(order: usize) -> Self {
        PairSet {
            order,
            members: vec![false; order * order],
            size: 0,
        }
    }

    pub fn full(order: usize) -> Self {
        PairSet {
            order,
            members: vec![true; order * order],
            size: order * order,
        }
    }

    pub fn from_pairs(
        order: usize,
        pairs: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self, ConfigError> {
        let mut s = Self::empty(order);
        for (a, b) in pairs {
            if a >= order || b >= order {
                return Err(ConfigError::OutOfRange {
                    point: vec![a, b],
                    order,
                });
            }
            s.insert(a, b);
        }
        Ok(s)
    }

    /// Builds the set from the membership predicate over all pairs.
    pub fn from_fn(order: usize, f: impl Fn(Elem, Elem) -> bool) -> Self {
        let mut s = Self::empty(order);
        for a in 0..order {
            for b in 0..order {
                if f(a, b) {
                    s.insert(a, b);
                }
            }
        }
        s
    }

    /// A uniformly random set of exactly `⌊density·n²⌋` pairs.
    pub fn random(order: usize, density: f64, rng: &mut impl Rng) -> Self {
        let mut s = Self::empty(order);
        for i in sample_indices(rng, order * order, density) {
            s.members[i] = true;
        }
        s.size = s.members.iter().filter(|&&m| m).count();
        s
    }

    /// Builds a set from the indices `a·n + b` of its members.
    pub fn from_indices(order: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(order);
        for i in indices {
            s.insert(i / order, i % order);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn density(&self) -> f64 {
        self.size as f64 / (self.order * self.order) as f64
    }

    #[inline]
    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        a < self.order && b < self.order && self.members[a * self.order + b]
    }

    pub fn insert(&mut self, a: Elem, b: Elem) -> bool {
        let i = a * self.order + b;
        let fresh = !self.members[i];
        if fresh {
            self.members[i] = true;
            self.size += 1;
        }
        fresh
    }

    pub fn remove(&mut self, a: Elem, b: Elem) -> bool {
        let i = a * self.order + b;
        let present = self.members[i];
        if present {
            self.members[i] = false;
            self.size -= 1;
        }
        present
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(move |(i, _)| (i / self.order, i % self.order))
    }

    /// `S ∩ (rows × cols)` for membership masks over `G`.
    pub fn restrict(&self, rows: &[bool], cols: &[bool]) -> Self {
        Self::from_fn(self.order, |a, b| rows[a] && cols[b] && self.contains(a, b))
    }

    pub fn is_subset_of(&self, other: &PairSet) -> bool {
        self.iter().all(|(a, b)| other.contains(a, b))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("pairset\n");
        for (a, b) in self.iter() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

/// A subset `A ⊆ G`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementSet {
    order: usize,
    members: Vec<bool>,
    size: usize,
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ElementSet{:?}", self.iter().collect::<Vec<_>>())
    }
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet {
            order,
            members: vec![false; order],
            size: 0,
        }
    }

    pub fn full(order: usize) -> Self {
        ElementSet {
            order,
            members: vec![true; order],
            size: order,
        }
    }

    pub fn from_elements(
        order: usize,
        elems: impl IntoIterator<Item = Elem>,
    ) -> Result<Self, ConfigError> {
        let mut s = Self::empty(order);
        for a in elems {
            if a >= order {
                return Err(ConfigError::OutOfRange {
                    point: vec![a],
                    order,
                });
            }
            s.insert(a);
        }
        Ok(s)
    }

    /// The set whose members are the set bits of `mask`.
    pub fn from_mask(order: usize, mask: u64) -> Self {
        let mut s = Self::empty(order);
        for a in (0..order).filter(|&a| mask >> a & 1 == 1) {
            s.insert(a);
        }
        s
    }

    pub fn random(order: usize, density: f64, rng: &mut impl Rng) -> Self {
        let mut s = Self::empty(order);
        for i in sample_indices(rng, order, density) {
            s.insert(i);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        a < self.order && self.members[a]
    }

    pub fn insert(&mut self, a: Elem) -> bool {
        let fresh = !self.members[a];
        if fresh {
            self.members[a] = true;
            self.size += 1;
        }
        fresh
    }

    pub fn remove(&mut self, a: Elem) -> bool {
        let present = self.members[a];
        if present {
            self.members[a] = false;
            self.size -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("elementset\n");
        for a in self.iter() {
            out.push_str(&format!("{a}\n"));
        }
        out
    }
}

/// A subset of `Gᵈ`. Points are indexed with the first coordinate most
/// significant, so index order is lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSet {
    order: usize,
    dim: usize,
    members: Vec<bool>,
    size: usize,
}

impl std::fmt::Debug for GridSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GridSet")
            .field("order", &self.order)
            .field("dim", &self.dim)
            .field("size", &self.size)
            .finish()
    }
}

impl GridSet {
    pub fn empty(order: usize, dim: usize) -> Result<Self, ConfigError> {
        Self::empty_with_caps(order, dim, MAX_GRID_DIM, MAX_GRID_CELLS)
    }

    pub fn empty_with_caps(
        order: usize,
        dim: usize,
        max_dim: usize,
        max_cells: usize,
    ) -> Result<Self, ConfigError> {
        if dim == 0 || dim > max_dim {
            return Err(ConfigError::DimensionCap { dim, cap: max_dim });
        }
        let cells = order
            .checked_pow(dim as u32)
            .filter(|&c| c <= max_cells)
            .ok_or(ConfigError::GridTooLarge {
                order,
                dim,
                cap: max_cells,
            })?;
        Ok(GridSet {
            order,
            dim,
            members: vec![false; cells],
            size: 0,
        })
    }

    pub fn full(order: usize, dim: usize) -> Result<Self, ConfigError> {
        let mut s = Self::empty(order, dim)?;
        s.members.iter_mut().for_each(|m| *m = true);
        s.size = s.members.len();
        Ok(s)
    }

    pub fn from_points(
        order: usize,
        dim: usize,
        points: impl IntoIterator<Item = Vec<Elem>>,
    ) -> Result<Self, ConfigError> {
        let mut s = Self::empty(order, dim)?;
        for p in points {
            if p.len() != dim || p.iter().any(|&x| x >= order) {
                return Err(ConfigError::OutOfRange { point: p, order });
            }
            s.insert(&p);
        }
        Ok(s)
    }

    pub fn from_fn(
        order: usize,
        dim: usize,
        f: impl Fn(&[Elem]) -> bool,
    ) -> Result<Self, ConfigError> {
        let mut s = Self::empty(order, dim)?;
        for i in 0..s.members.len() {
            if f(&s.point(i)) {
                s.members[i] = true;
                s.size += 1;
            }
        }
        Ok(s)
    }

    pub fn random(
        order: usize,
        dim: usize,
        density: f64,
        rng: &mut impl Rng,
    ) -> Result<Self, ConfigError> {
        let mut s = Self::empty(order, dim)?;
        for i in sample_indices(rng, s.members.len(), density) {
            s.members[i] = true;
            s.size += 1;
        }
        Ok(s)
    }

    pub fn from_indices(
        order: usize,
        dim: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, ConfigError> {
        let mut s = Self::empty(order, dim)?;
        for i in indices {
            if !s.members[i] {
                s.members[i] = true;
                s.size += 1;
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn cells(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self, point: &[Elem]) -> usize {
        point.iter().fold(0, |acc, &x| acc * self.order + x)
    }

    pub fn point(&self, mut index: usize) -> Vec<Elem> {
        let mut p = vec![0; self.dim];
        for slot in p.iter_mut().rev() {
            *slot = index % self.order;
            index /= self.order;
        }
        p
    }

    #[inline]
    pub fn contains(&self, point: &[Elem]) -> bool {
        point.len() == self.dim
            && point.iter().all(|&x| x < self.order)
            && self.members[self.index(point)]
    }

    #[inline]
    pub fn contains_index(&self, index: usize) -> bool {
        self.members[index]
    }

    pub fn insert(&mut self, point: &[Elem]) -> bool {
        let i = self.index(point);
        let fresh = !self.members[i];
        if fresh {
            self.members[i] = true;
            self.size += 1;
        }
        fresh
    }

    pub fn remove(&mut self, point: &[Elem]) -> bool {
        let i = self.index(point);
        let present = self.members[i];
        if present {
            self.members[i] = false;
            self.size -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.point(i))
    }

    /// The same set viewed as a [`PairSet`]; only for `dim == 2`.
    pub fn to_pair_set(&self) -> Option<PairSet> {
        (self.dim == 2).then(|| PairSet::from_fn(self.order, |a, b| self.contains(&[a, b])))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gridset {}\n", self.dim);
        for p in self.iter() {
            let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Any of the three set shapes, as read from a set file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetFile {
    Pairs(PairSet),
    Elements(ElementSet),
    Grid(GridSet),
}

impl SetFile {
    pub fn to_text(&self) -> String {
        match self {
            SetFile::Pairs(s) => s.to_text(),
            SetFile::Elements(s) => s.to_text(),
            SetFile::Grid(s) => s.to_text(),
        }
    }
}

/// Parses a set file for a group of the given order.
pub fn parse_set_file(text: &str, order: usize) -> Result<SetFile, ConfigError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, header) = lines.next().ok_or(ConfigError::Parse {
        line: 1,
        message: "missing set header".into(),
    })?;
    let mut head = header.split_whitespace();
    let (arity, mut out) = match (head.next(), head.next()) {
        (Some("pairset"), None) => (2, SetFile::Pairs(PairSet::empty(order))),
        (Some("elementset"), None) => (1, SetFile::Elements(ElementSet::empty(order))),
        (Some("gridset"), Some(d)) => {
            let d: usize = d.parse().map_err(|_| ConfigError::Parse {
                line: line_no,
                message: format!("bad grid dimension {d:?}"),
            })?;
            (d, SetFile::Grid(GridSet::empty(order, d)?))
        }
        _ => {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("unknown set header {header:?}"),
            })
        }
    };
    for (line_no, line) in lines {
        let tuple = line
            .split_whitespace()
            .map(|t| {
                t.parse::<Elem>().map_err(|_| ConfigError::Parse {
                    line: line_no,
                    message: format!("bad element {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if tuple.len() != arity {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("expected {arity} coordinates, found {}", tuple.len()),
            });
        }
        if tuple.iter().any(|&x| x >= order) {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("element out of range for a group of order {order}"),
            });
        }
        match &mut out {
            SetFile::Pairs(s) => {
                s.insert(tuple[0], tuple[1]);
            }
            SetFile::Elements(s) => {
                s.insert(tuple[0]);
            }
            SetFile::Grid(s) => {
                s.insert(&tuple);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_set_bookkeeping() {
        let mut s = PairSet::empty(3);
        assert!(s.insert(1, 2));
        assert!(!s.insert(1, 2));
        assert!(s.insert(0, 0));
        assert_eq!(s.size(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![(0, 0), (1, 2)]);
        assert!(s.remove(0, 0));
        assert_eq!(s.size(), 1);
        assert!(PairSet::from_pairs(3, [(3, 0)]).is_err());
    }

    #[test]
    fn random_sets_have_floor_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(PairSet::random(6, 0.5, &mut rng).size(), 18);
        assert_eq!(PairSet::random(5, 0.3, &mut rng).size(), 7);
        assert_eq!(ElementSet::random(8, 0.99, &mut rng).size(), 7);
        assert_eq!(GridSet::random(4, 2, 1.0, &mut rng).unwrap().size(), 16);
    }

    #[test]
    fn grid_indexing_is_lexicographic() {
        let g = GridSet::empty(5, 3).unwrap();
        assert_eq!(g.index(&[0, 0, 1]), 1);
        assert_eq!(g.index(&[1, 0, 0]), 25);
        assert_eq!(g.point(37), vec![1, 2, 2]);
    }

    #[test]
    fn grid_caps() {
        assert!(matches!(
            GridSet::empty(3, 5),
            Err(ConfigError::DimensionCap { dim: 5, cap: 4 })
        ));
        assert!(matches!(
            GridSet::empty(64, 4),
            Err(ConfigError::GridTooLarge { .. })
        ));
        assert!(GridSet::empty(32, 4).is_ok());
    }

    #[test]
    fn parses_all_three_headers() {
        let SetFile::Pairs(p) = parse_set_file("# s\npairset\n0 1\n2 2\n", 3).unwrap() else {
            panic!()
        };
        assert_eq!(p.size(), 2);
        let SetFile::Elements(e) = parse_set_file("elementset\n4\n", 5).unwrap() else {
            panic!()
        };
        assert!(e.contains(4));
        let SetFile::Grid(g) = parse_set_file("gridset 3\n0 1 2\n", 3).unwrap() else {
            panic!()
        };
        assert!(g.contains(&[0, 1, 2]));
        assert!(parse_set_file("pairset\n0\n", 3).is_err());
        assert!(parse_set_file("pairset\n0 3\n", 3).is_err());
        assert!(parse_set_file("triples\n", 3).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = SetFile::Grid(GridSet::random(3, 3, 0.4, &mut rng).unwrap());
        assert_eq!(parse_set_file(&s.to_text(), 3).unwrap(), s);
        let s = SetFile::Pairs(PairSet::random(4, 0.4, &mut rng));
        assert_eq!(parse_set_file(&s.to_text(), 4).unwrap(), s);
    }
}
