//! Host graphs and their edge-colorings.
//!
//! A host is either the complete multipartite graph with `m` parts of size
//! `n` (vertices are numbered part-major, so part `i` is the interval
//! `[i*n, (i+1)*n)`) or the complete `r`-uniform hypergraph on `[0, n)`.
//! Edges are sorted vertex tuples; the canonical edge order is lexicographic
//! on those tuples. Colors are stored densely in a flat vector indexed by the
//! colexicographic rank of the tuple, so lookups during embedding are O(r).
//!
//! Color identifiers are normalized on ingest: the distinct raw color keys
//! are sorted and relabeled to `0..numColors` preserving their value order,
//! which makes colorings with already-dense labels round-trip unchanged.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combin::{binomial, colex_rank, next_subset};
use crate::error::{Error, Result};

/// Host vertex identifier.
pub type Vertex = u32;
/// Dense color identifier.
pub type ColorId = u32;

const NO_COLOR: ColorId = ColorId::MAX;

/// Hard cap on the dense color table, as number of `C(N, r)` slots.
const STORAGE_LIMIT: u64 = 1 << 26;

/// Shape of a host: complete multipartite graph or complete uniform
/// hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HostShape {
    /// Complete multipartite graph with `m` parts of size `n` each.
    Multipartite { m: u32, n: u32 },
    /// Complete `r`-uniform hypergraph on `n` vertices.
    Hypergraph { n: u32, r: u32 },
}

impl HostShape {
    /// Checks the structural preconditions of the shape.
    pub fn validate(&self) -> Result<()> {
        match *self {
            HostShape::Multipartite { m, n } => {
                if m < 2 {
                    return Err(Error::InvalidShape(format!(
                        "multipartite host needs m >= 2 parts, got m={m}"
                    )));
                }
                if n < 1 {
                    return Err(Error::InvalidShape("part size n must be >= 1".into()));
                }
                Ok(())
            }
            HostShape::Hypergraph { n, r } => {
                if r < 2 {
                    return Err(Error::InvalidShape(format!(
                        "hypergraph uniformity must be >= 2, got r={r}"
                    )));
                }
                if n < r {
                    return Err(Error::InvalidShape(format!(
                        "hypergraph needs n >= r, got n={n}, r={r}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Total number of vertices.
    pub fn vertex_count(&self) -> u32 {
        match *self {
            HostShape::Multipartite { m, n } => m * n,
            HostShape::Hypergraph { n, .. } => n,
        }
    }

    /// Edge arity: 2 for multipartite graphs, `r` for hypergraphs.
    pub fn uniformity(&self) -> u32 {
        match *self {
            HostShape::Multipartite { .. } => 2,
            HostShape::Hypergraph { r, .. } => r,
        }
    }

    /// Number of vertex parts (1 for hypergraphs).
    pub fn part_count(&self) -> u32 {
        match *self {
            HostShape::Multipartite { m, .. } => m,
            HostShape::Hypergraph { .. } => 1,
        }
    }

    /// Size of each part (`n` in both shapes).
    pub fn part_size(&self) -> u32 {
        match *self {
            HostShape::Multipartite { n, .. } => n,
            HostShape::Hypergraph { n, .. } => n,
        }
    }

    /// Part index of a vertex (always 0 for hypergraphs).
    pub fn part_of(&self, v: Vertex) -> u32 {
        match *self {
            HostShape::Multipartite { n, .. } => v / n,
            HostShape::Hypergraph { .. } => 0,
        }
    }

    /// The vertices of part `i` as a range.
    pub fn part_vertices(&self, i: u32) -> std::ops::Range<Vertex> {
        let n = self.part_size();
        i * n..(i + 1) * n
    }

    /// Number of edges of the host.
    pub fn edge_count(&self) -> u64 {
        match *self {
            HostShape::Multipartite { m, n } => binomial(m as u64, 2) * (n as u64) * (n as u64),
            HostShape::Hypergraph { n, r } => binomial(n as u64, r as u64),
        }
    }

    /// Whether a strictly increasing vertex tuple is an edge of the host.
    pub fn is_edge(&self, t: &[Vertex]) -> bool {
        if t.len() != self.uniformity() as usize
            || !t.windows(2).all(|w| w[0] < w[1])
            || t.last().is_some_and(|&v| v >= self.vertex_count())
        {
            return false;
        }
        match *self {
            HostShape::Multipartite { .. } => self.part_of(t[0]) != self.part_of(t[1]),
            HostShape::Hypergraph { .. } => true,
        }
    }

    /// Calls `f` on every edge (as a sorted tuple) in lexicographic order.
    pub fn for_each_edge(&self, mut f: impl FnMut(&[Vertex])) {
        let r = self.uniformity() as usize;
        let nv = self.vertex_count();
        if (nv as usize) < r {
            return;
        }
        let mut t: Vec<Vertex> = (0..r as u32).collect();
        loop {
            if self.is_edge(&t) {
                f(&t);
            }
            if !next_subset(&mut t, nv) {
                return;
            }
        }
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Vec<Vertex>> {
        let mut out = Vec::with_capacity(self.edge_count() as usize);
        self.for_each_edge(|t| out.push(t.to_vec()));
        out
    }

    /// Number of slots in the dense colex-indexed color table.
    fn storage_slots(&self) -> u64 {
        binomial(self.vertex_count() as u64, self.uniformity() as u64)
    }
}

/// How `random_bounded` interprets its target bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// Bound the number of same-colored edges at every vertex.
    Local,
    /// Bound the size of every color class.
    Global,
}

/// Measured boundedness of a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundednessReport {
    /// Maximum, over vertices and colors, of the number of edges of that
    /// color containing the vertex.
    pub k_local: u64,
    /// Maximum color class size.
    pub k_global: u64,
    /// Size of each color class, indexed by dense color id.
    pub per_color_sizes: Vec<u64>,
}

/// An edge-colored host graph or hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredHost {
    shape: HostShape,
    /// Color per edge, indexed by colex rank of the sorted tuple; `NO_COLOR`
    /// in slots whose tuple is not an edge.
    colors: Vec<ColorId>,
    num_colors: u32,
}

impl ColoredHost {
    /// Builds a coloring by evaluating `key` on every edge. Raw keys are
    /// normalized to dense ids preserving their value order.
    pub fn from_fn(shape: HostShape, mut key: impl FnMut(&[Vertex]) -> u64) -> Result<Self> {
        shape.validate()?;
        let slots = shape.storage_slots();
        if slots > STORAGE_LIMIT {
            return Err(Error::TooLarge(format!(
                "color table needs {slots} slots (limit {STORAGE_LIMIT})"
            )));
        }
        let mut raw = vec![u64::MAX; slots as usize];
        shape.for_each_edge(|t| {
            let k = key(t);
            assert!(k != u64::MAX, "color key u64::MAX is reserved");
            raw[colex_rank(t) as usize] = k;
        });
        Ok(Self::normalize(shape, raw))
    }

    /// Builds a coloring from an explicit edge list. Every host edge must
    /// appear exactly once; vertex tuples may be given in any order.
    pub fn from_edge_list(shape: HostShape, edges: &[(Vec<Vertex>, u64)]) -> Result<Self> {
        shape.validate()?;
        let slots = shape.storage_slots();
        if slots > STORAGE_LIMIT {
            return Err(Error::TooLarge(format!(
                "color table needs {slots} slots (limit {STORAGE_LIMIT})"
            )));
        }
        let mut raw = vec![u64::MAX; slots as usize];
        let mut seen: u64 = 0;
        for (verts, key) in edges {
            let mut t = verts.clone();
            t.sort_unstable();
            if !shape.is_edge(&t) {
                return Err(Error::InvalidShape(format!(
                    "tuple {verts:?} is not an edge of the host"
                )));
            }
            if *key == u64::MAX {
                return Err(Error::Parse("color key u64::MAX is reserved".into()));
            }
            let slot = &mut raw[colex_rank(&t) as usize];
            if *slot != u64::MAX {
                return Err(Error::InvalidShape(format!("edge {t:?} listed twice")));
            }
            *slot = *key;
            seen += 1;
        }
        if seen != shape.edge_count() {
            return Err(Error::InvalidShape(format!(
                "coloring covers {seen} of {} edges",
                shape.edge_count()
            )));
        }
        Ok(Self::normalize(shape, raw))
    }

    fn normalize(shape: HostShape, raw: Vec<u64>) -> Self {
        let mut distinct: Vec<u64> = raw.iter().copied().filter(|&k| k != u64::MAX).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let dense: HashMap<u64, ColorId> = distinct
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as ColorId))
            .collect();
        let colors = raw
            .into_iter()
            .map(|k| if k == u64::MAX { NO_COLOR } else { dense[&k] })
            .collect();
        ColoredHost {
            shape,
            colors,
            num_colors: distinct.len() as u32,
        }
    }

    /// All edges colored pairwise distinctly.
    pub fn rainbow(shape: HostShape) -> Result<Self> {
        let mut next = 0u64;
        Self::from_fn(shape, |_| {
            let c = next;
            next += 1;
            c
        })
    }

    /// All edges the same color.
    pub fn monochromatic(shape: HostShape) -> Result<Self> {
        Self::from_fn(shape, |_| 0)
    }

    /// Random coloring meeting the target bound, seeded and reproducible.
    ///
    /// In `Global` mode the canonical edge list is shuffled and cut into
    /// classes of `target_k` consecutive edges, so every class has size at
    /// most `target_k`. In `Local` mode edges are visited in shuffled order
    /// and each takes the smallest color that keeps every endpoint's count
    /// for that color below `target_k`; the global class sizes may exceed
    /// the target.
    pub fn random_bounded(
        shape: HostShape,
        target_k: u64,
        mode: BoundMode,
        seed: u64,
    ) -> Result<Self> {
        shape.validate()?;
        if target_k == 0 {
            return Err(Error::InvalidShape("target bound k must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = shape.edges();
        edges.shuffle(&mut rng);
        match mode {
            BoundMode::Global => {
                let assign: Vec<(Vec<Vertex>, u64)> = edges
                    .into_iter()
                    .enumerate()
                    .map(|(i, e)| (e, i as u64 / target_k))
                    .collect();
                Self::from_edge_list(shape, &assign)
            }
            BoundMode::Local => {
                // counts[v] maps color -> edges of that color at v.
                let mut counts: Vec<HashMap<u64, u64>> =
                    vec![HashMap::new(); shape.vertex_count() as usize];
                let mut assign = Vec::with_capacity(edges.len());
                for e in edges {
                    let mut c = 0u64;
                    loop {
                        if e.iter()
                            .all(|&v| counts[v as usize].get(&c).copied().unwrap_or(0) < target_k)
                        {
                            break;
                        }
                        c += 1;
                    }
                    for &v in &e {
                        *counts[v as usize].entry(c).or_insert(0) += 1;
                    }
                    assign.push((e, c));
                }
                Self::from_edge_list(shape, &assign)
            }
        }
    }

    pub fn shape(&self) -> HostShape {
        self.shape
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    /// Color of an edge given as a strictly increasing tuple.
    ///
    /// Panics if the tuple is not an edge of the host; use [`Self::try_color`]
    /// for fallible lookup.
    pub fn color(&self, t: &[Vertex]) -> ColorId {
        self.try_color(t)
            .unwrap_or_else(|| panic!("{t:?} is not an edge of {:?}", self.shape))
    }

    /// Color of an edge, or `None` if the sorted tuple is not an edge.
    pub fn try_color(&self, t: &[Vertex]) -> Option<ColorId> {
        if !self.shape.is_edge(t) {
            return None;
        }
        let c = self.colors[colex_rank(t) as usize];
        (c != NO_COLOR).then_some(c)
    }

    /// Color of the pair `{a, b}` in a 2-uniform host.
    pub fn color_pair(&self, a: Vertex, b: Vertex) -> ColorId {
        if a < b {
            self.color(&[a, b])
        } else {
            self.color(&[b, a])
        }
    }

    /// Edges in canonical order (delegates to the shape).
    pub fn edges(&self) -> Vec<Vec<Vertex>> {
        self.shape.edges()
    }

    /// Measures local and global boundedness of the coloring.
    pub fn measure_boundedness(&self) -> BoundednessReport {
        let mut per_color = vec![0u64; self.num_colors as usize];
        let mut local: HashMap<(Vertex, ColorId), u64> = HashMap::new();
        self.shape.for_each_edge(|t| {
            let c = self.colors[colex_rank(t) as usize];
            per_color[c as usize] += 1;
            for &v in t {
                *local.entry((v, c)).or_insert(0) += 1;
            }
        });
        BoundednessReport {
            k_local: local.values().copied().max().unwrap_or(0),
            k_global: per_color.iter().copied().max().unwrap_or(0),
            per_color_sizes: per_color,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(m: u32, n: u32) -> HostShape {
        HostShape::Multipartite { m, n }
    }

    fn hg(n: u32, r: u32) -> HostShape {
        HostShape::Hypergraph { n, r }
    }

    #[test]
    fn shape_validation() {
        assert!(mp(2, 1).validate().is_ok());
        assert!(mp(1, 5).validate().is_err());
        assert!(mp(3, 0).validate().is_err());
        assert!(hg(5, 2).validate().is_ok());
        assert!(hg(3, 4).validate().is_err());
        assert!(hg(4, 1).validate().is_err());
    }

    #[test]
    fn edge_counts() {
        assert_eq!(mp(3, 2).edge_count(), 12);
        assert_eq!(mp(2, 4).edge_count(), 16);
        assert_eq!(hg(5, 2).edge_count(), 10);
        assert_eq!(hg(6, 3).edge_count(), 20);
    }

    #[test]
    fn edges_are_lex_sorted_and_legal() {
        for shape in [mp(3, 2), hg(6, 3)] {
            let edges = shape.edges();
            assert_eq!(edges.len() as u64, shape.edge_count());
            for w in edges.windows(2) {
                assert!(w[0] < w[1], "not lex sorted: {w:?}");
            }
            for e in &edges {
                assert!(shape.is_edge(e));
            }
        }
    }

    #[test]
    fn multipartite_skips_intra_part_pairs() {
        let shape = mp(2, 3);
        assert!(!shape.is_edge(&[0, 1]));
        assert!(!shape.is_edge(&[4, 5]));
        assert!(shape.is_edge(&[2, 3]));
        assert_eq!(shape.part_of(2), 0);
        assert_eq!(shape.part_of(3), 1);
    }

    #[test]
    fn rainbow_and_monochromatic_measure() {
        let r = ColoredHost::rainbow(mp(2, 3)).unwrap();
        assert_eq!(r.num_colors(), 9);
        let m = r.measure_boundedness();
        assert_eq!((m.k_local, m.k_global), (1, 1));
        assert_eq!(m.per_color_sizes, vec![1; 9]);

        let mono = ColoredHost::monochromatic(hg(5, 3)).unwrap();
        assert_eq!(mono.num_colors(), 1);
        let m = mono.measure_boundedness();
        assert_eq!(m.k_global, 10);
        // Each vertex lies in C(4,2) = 6 triples.
        assert_eq!(m.k_local, 6);
    }

    #[test]
    fn normalization_preserves_value_order() {
        // Keys 10 and 5 on a 2-edge host must map to colors 1 and 0.
        let shape = mp(2, 1);
        assert_eq!(shape.edge_count(), 1);
        let shape = hg(3, 2);
        let host = ColoredHost::from_fn(shape, |t| if t == [0, 1] { 10 } else { 5 }).unwrap();
        assert_eq!(host.color(&[0, 1]), 1);
        assert_eq!(host.color(&[0, 2]), 0);
        assert_eq!(host.color(&[1, 2]), 0);
        assert_eq!(host.num_colors(), 2);
    }

    #[test]
    fn dense_colorings_roundtrip_unchanged() {
        let shape = mp(2, 2);
        let host = ColoredHost::from_fn(shape, |t| (t[0] + t[1]) as u64 % 3).unwrap();
        for e in shape.edges() {
            assert_eq!(host.color(&e) as u64, (e[0] + e[1]) as u64 % 3);
        }
    }

    #[test]
    fn from_edge_list_validates_coverage() {
        let shape = hg(3, 2);
        // Missing one edge.
        let partial = vec![(vec![0, 1], 0), (vec![0, 2], 1)];
        assert!(matches!(
            ColoredHost::from_edge_list(shape, &partial),
            Err(Error::InvalidShape(_))
        ));
        // Duplicate edge (unsorted spelling still refers to the same edge).
        let dup = vec![
            (vec![0, 1], 0),
            (vec![1, 0], 1),
            (vec![0, 2], 1),
            (vec![1, 2], 2),
        ];
        assert!(ColoredHost::from_edge_list(shape, &dup).is_err());
        // Illegal edge.
        let bad = vec![(vec![0, 3], 0)];
        assert!(ColoredHost::from_edge_list(shape, &bad).is_err());
    }

    #[test]
    fn random_global_bound_holds_and_is_deterministic() {
        let shape = hg(4, 2);
        let a = ColoredHost::random_bounded(shape, 2, BoundMode::Global, 7).unwrap();
        let b = ColoredHost::random_bounded(shape, 2, BoundMode::Global, 7).unwrap();
        assert_eq!(a, b);
        let m = a.measure_boundedness();
        assert!(m.k_global <= 2);
        // 6 edges in classes of size <= 2 needs at least 3 classes.
        assert!(a.num_colors() >= 3);
        let c = ColoredHost::random_bounded(shape, 2, BoundMode::Global, 8).unwrap();
        assert!(c == a || c.measure_boundedness().k_global <= 2);
    }

    #[test]
    fn random_local_bound_holds() {
        for seed in 0..5 {
            let host =
                ColoredHost::random_bounded(mp(3, 6), 2, BoundMode::Local, seed).unwrap();
            let m = host.measure_boundedness();
            assert!(m.k_local <= 2, "seed {seed}: kLocal = {}", m.k_local);
            assert!(m.k_global >= m.k_local);
        }
    }

    #[test]
    fn bound_target_zero_rejected() {
        assert!(ColoredHost::random_bounded(mp(2, 2), 0, BoundMode::Global, 0).is_err());
    }

    #[test]
    fn color_lookup_rejects_non_edges() {
        let host = ColoredHost::rainbow(mp(2, 2)).unwrap();
        assert!(host.try_color(&[0, 1]).is_none()); // same part
        assert!(host.try_color(&[0, 2]).is_some());
        assert!(host.try_color(&[2, 0]).is_none()); // not sorted
    }
}
