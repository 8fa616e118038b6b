//! Patterns: the small (hyper)graphs we look for inside a colored host.
//!
//! A pattern is an `r`-uniform edge set on vertices `0..vertexCount`, with an
//! optional partition into independent parts for the multipartite setting
//! (part `i` of the pattern maps into part `i` of the host). Vertices carry
//! the fixed total order of their integer index; edges are sorted tuples kept
//! in lexicographic order.
//!
//! The analysis operations enumerate the combinatorial structures whose
//! images drive bad events: cherries (paths of length two), quadruples
//! (disjoint edge pairs), overlap-`i` edge pairs, and the maximum `i`-degrees
//! `delta_i` = max number of edges containing a fixed `i`-set.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::combin::subsets;
use crate::error::{Error, Result};
use crate::host::{HostShape, Vertex};

/// A path of length two: edges `{u1, u2}` and `{u2, u3}` with center `u2`
/// and `u1 < u3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cherry {
    pub u1: Vertex,
    pub u2: Vertex,
    pub u3: Vertex,
}

/// Two disjoint edges `{u1, u2}` and `{u3, u4}` with `u1 < u2`, `u3 < u4`,
/// `u1 < u3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Quadruple {
    pub u1: Vertex,
    pub u2: Vertex,
    pub u3: Vertex,
    pub u4: Vertex,
}

/// Maximum `i`-degrees of a pattern: `deltas[i]` is the maximum number of
/// edges containing a fixed `i`-set of vertices, for `0 <= i <= r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub deltas: Vec<u64>,
}

impl DegreeProfile {
    /// `delta_i`; zero for `i` beyond the uniformity.
    pub fn delta_i(&self, i: u32) -> u64 {
        self.deltas.get(i as usize).copied().unwrap_or(0)
    }

    /// Maximum vertex degree `delta_1`.
    pub fn delta(&self) -> u64 {
        self.delta_i(1)
    }

    /// Number of edges (`delta_0`).
    pub fn edge_count(&self) -> u64 {
        self.delta_i(0)
    }
}

/// An `r`-uniform pattern with an optional independent partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    vertex_count: u32,
    uniformity: u32,
    /// Sorted vertex tuples in lexicographic order, no duplicates.
    edges: Vec<Vec<Vertex>>,
    /// Part id per vertex; only meaningful for 2-uniform patterns.
    parts: Option<Vec<u32>>,
}

impl Pattern {
    /// A 2-uniform pattern from an unordered pair list.
    pub fn graph(vertex_count: u32, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let edges = pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        Self::hypergraph(vertex_count, 2, edges)
    }

    /// An `r`-uniform pattern; tuples may be given in any vertex order.
    pub fn hypergraph(vertex_count: u32, r: u32, tuples: Vec<Vec<Vertex>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidShape(format!(
                "pattern uniformity must be >= 2, got {r}"
            )));
        }
        let mut edges = Vec::with_capacity(tuples.len());
        for t in tuples {
            let mut e = t.clone();
            e.sort_unstable();
            if e.len() != r as usize || e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidShape(format!(
                    "tuple {t:?} is not a set of {r} distinct vertices"
                )));
            }
            if e[e.len() - 1] >= vertex_count {
                return Err(Error::InvalidShape(format!(
                    "tuple {t:?} exceeds vertex count {vertex_count}"
                )));
            }
            edges.push(e);
        }
        edges.sort();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidShape("duplicate edge in pattern".into()));
        }
        Ok(Pattern {
            vertex_count,
            uniformity: r,
            edges,
            parts: None,
        })
    }

    /// Attaches a partition: `parts[v]` is the host part vertex `v` must map
    /// into. Every part must be independent (no edge inside one part).
    pub fn with_parts(mut self, parts: Vec<u32>) -> Result<Self> {
        if self.uniformity != 2 {
            return Err(Error::InvalidShape(
                "partitions apply to 2-uniform patterns only".into(),
            ));
        }
        if parts.len() != self.vertex_count as usize {
            return Err(Error::InvalidShape(format!(
                "{} part labels for {} vertices",
                parts.len(),
                self.vertex_count
            )));
        }
        for e in &self.edges {
            if parts[e[0] as usize] == parts[e[1] as usize] {
                return Err(Error::InvalidShape(format!(
                    "edge {e:?} lies inside part {}",
                    parts[e[0] as usize]
                )));
            }
        }
        self.parts = Some(parts);
        Ok(self)
    }

    /// Drops the partition.
    pub fn without_parts(mut self) -> Self {
        self.parts = None;
        self
    }

    /// Greedily partitions the vertices into at most `m` independent parts,
    /// preferring the least-loaded valid part to keep sizes balanced.
    pub fn greedy_partition(self, m: u32) -> Result<Self> {
        if self.uniformity != 2 {
            return Err(Error::InvalidShape(
                "partitions apply to 2-uniform patterns only".into(),
            ));
        }
        let v = self.vertex_count as usize;
        let mut parts = vec![u32::MAX; v];
        let mut sizes = vec![0u32; m as usize];
        let adj = self.adjacency();
        for u in 0..v {
            let mut best: Option<u32> = None;
            for p in 0..m {
                if adj[u].iter().any(|&w| parts[w as usize] == p) {
                    continue;
                }
                if best.is_none_or(|b| sizes[p as usize] < sizes[b as usize]) {
                    best = Some(p);
                }
            }
            let Some(p) = best else {
                return Err(Error::InvalidShape(format!(
                    "greedy partition into {m} parts stuck at vertex {u}"
                )));
            };
            parts[u] = p;
            sizes[p as usize] += 1;
        }
        self.with_parts(parts)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn uniformity(&self) -> u32 {
        self.uniformity
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn parts(&self) -> Option<&[u32]> {
        self.parts.as_deref()
    }

    /// Number of parts (max part id + 1), if a partition is attached.
    pub fn part_count(&self) -> Option<u32> {
        self.parts
            .as_ref()
            .map(|p| p.iter().copied().max().map_or(0, |x| x + 1))
    }

    /// Vertices of each part, indexed by part id.
    pub fn part_members(&self) -> Option<Vec<Vec<Vertex>>> {
        let parts = self.parts.as_ref()?;
        let m = self.part_count()? as usize;
        let mut members = vec![Vec::new(); m];
        for (v, &p) in parts.iter().enumerate() {
            members[p as usize].push(v as Vertex);
        }
        Some(members)
    }

    fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.vertex_count as usize];
        for e in &self.edges {
            for &a in e {
                for &b in e {
                    if a != b {
                        adj[a as usize].push(b);
                    }
                }
            }
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        adj
    }

    /// Maximum `i`-degrees for `0 <= i <= r`, by exhausting the `i`-subsets
    /// of every edge.
    #[allow(clippy::needless_range_loop)] // `i` is the subset size, not just an index
    pub fn degree_profile(&self) -> DegreeProfile {
        let r = self.uniformity as usize;
        let mut deltas = vec![0u64; r + 1];
        deltas[0] = self.edges.len() as u64;
        for i in 1..=r {
            let mut counts: HashMap<Vec<Vertex>, u64> = HashMap::new();
            for e in &self.edges {
                for idx in subsets(r as u32, i as u32) {
                    let key: Vec<Vertex> = idx.iter().map(|&j| e[j as usize]).collect();
                    *counts.entry(key).or_insert(0) += 1;
                }
            }
            deltas[i] = counts.values().copied().max().unwrap_or(0);
        }
        DegreeProfile { deltas }
    }

    /// All cherries of a 2-uniform pattern.
    pub fn cherries(&self) -> Vec<Cherry> {
        assert_eq!(self.uniformity, 2, "cherries need a 2-uniform pattern");
        let adj = self.adjacency();
        let mut out = Vec::new();
        for (u2, neigh) in adj.iter().enumerate() {
            for (a, &u1) in neigh.iter().enumerate() {
                for &u3 in &neigh[a + 1..] {
                    out.push(Cherry {
                        u1,
                        u2: u2 as Vertex,
                        u3,
                    });
                }
            }
        }
        out
    }

    /// All quadruples (unordered pairs of disjoint edges) of a 2-uniform
    /// pattern.
    pub fn quadruples(&self) -> Vec<Quadruple> {
        assert_eq!(self.uniformity, 2, "quadruples need a 2-uniform pattern");
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for f in &self.edges[i + 1..] {
                if e.iter().all(|v| !f.contains(v)) {
                    // Edges are in lex order, so e[0] < f[0] already holds.
                    out.push(Quadruple {
                        u1: e[0],
                        u2: e[1],
                        u3: f[0],
                        u4: f[1],
                    });
                }
            }
        }
        out
    }

    /// Ordered pairs of edge indices `(e1, e2)`, `e1 < e2` in the lex edge
    /// order, whose edges share exactly `overlap` vertices.
    pub fn overlap_pairs(&self, overlap: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for (dj, f) in self.edges[i + 1..].iter().enumerate() {
                let shared = e.iter().filter(|v| f.contains(v)).count() as u32;
                if shared == overlap {
                    out.push((i, i + 1 + dj));
                }
            }
        }
        out
    }

    /// Whether every `(ell+1)`-set of vertices lies in at most one edge,
    /// i.e. no two distinct edges share more than `ell` vertices.
    pub fn is_linear(&self, ell: u32) -> bool {
        for (i, e) in self.edges.iter().enumerate() {
            for f in &self.edges[i + 1..] {
                let shared = e.iter().filter(|v| f.contains(v)).count() as u32;
                if shared > ell {
                    return false;
                }
            }
        }
        true
    }

    /// The subpattern induced on a strictly increasing vertex subset,
    /// relabeled to `0..keep.len()` preserving order. Edges fully inside the
    /// subset are kept; part labels are carried over.
    pub fn induced(&self, keep: &[Vertex]) -> Result<Pattern> {
        if !keep.windows(2).all(|w| w[0] < w[1])
            || keep.last().is_some_and(|&v| v >= self.vertex_count)
        {
            return Err(Error::InvalidShape(
                "induced subset must be strictly increasing and in range".into(),
            ));
        }
        let relabel: HashMap<Vertex, Vertex> = keep
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as Vertex))
            .collect();
        let edges: Vec<Vec<Vertex>> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| relabel.contains_key(v)))
            .map(|e| e.iter().map(|v| relabel[v]).collect())
            .collect();
        let mut p = Pattern::hypergraph(keep.len() as u32, self.uniformity, edges)?;
        if let Some(parts) = &self.parts {
            p = p.with_parts(keep.iter().map(|&v| parts[v as usize]).collect())?;
        }
        Ok(p)
    }

    /// Validates that the pattern can be embedded part-respectingly into the
    /// host shape: matching uniformity, and every pattern part (or the whole
    /// vertex set, for hypergraph hosts) fits inside its host part.
    pub fn fits_host(&self, shape: &HostShape) -> Result<()> {
        if self.uniformity != shape.uniformity() {
            return Err(Error::InvalidShape(format!(
                "pattern is {}-uniform but host is {}-uniform",
                self.uniformity,
                shape.uniformity()
            )));
        }
        match *shape {
            HostShape::Multipartite { m, n } => {
                let Some(members) = self.part_members() else {
                    return Err(Error::InvalidShape(
                        "multipartite host needs a partitioned pattern".into(),
                    ));
                };
                if members.len() as u32 > m {
                    return Err(Error::PartOverflow(format!(
                        "pattern uses {} parts but host has {m}",
                        members.len()
                    )));
                }
                for (i, mem) in members.iter().enumerate() {
                    if mem.len() as u32 > n {
                        return Err(Error::PartOverflow(format!(
                            "pattern part {i} has {} vertices but host parts have {n}",
                            mem.len()
                        )));
                    }
                }
                Ok(())
            }
            HostShape::Hypergraph { n, .. } => {
                if self.vertex_count > n {
                    return Err(Error::PartOverflow(format!(
                        "pattern has {} vertices but host has {n}",
                        self.vertex_count
                    )));
                }
                Ok(())
            }
        }
    }

    // ----- stock pattern generators -------------------------------------

    /// The path on `k` vertices `0-1-...-(k-1)`.
    pub fn path(k: u32) -> Result<Self> {
        let pairs: Vec<(Vertex, Vertex)> = (0..k.saturating_sub(1)).map(|v| (v, v + 1)).collect();
        Self::graph(k, &pairs)
    }

    /// The cycle on `k >= 3` vertices.
    pub fn cycle(k: u32) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidShape("cycle needs >= 3 vertices".into()));
        }
        let pairs: Vec<(Vertex, Vertex)> = (0..k).map(|v| (v, (v + 1) % k)).collect();
        Self::graph(k, &pairs)
    }

    /// The complete graph on `k` vertices.
    pub fn complete(k: u32) -> Result<Self> {
        let mut pairs = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                pairs.push((a, b));
            }
        }
        Self::graph(k, &pairs)
    }

    /// A perfect matching with `t` edges `{2i, 2i+1}`.
    pub fn matching(t: u32) -> Result<Self> {
        let pairs: Vec<(Vertex, Vertex)> = (0..t).map(|i| (2 * i, 2 * i + 1)).collect();
        Self::graph(2 * t, &pairs)
    }

    /// The complete `r`-uniform hypergraph on `k` vertices.
    pub fn complete_uniform(k: u32, r: u32) -> Result<Self> {
        let tuples = subsets(k, r);
        Self::hypergraph(k, r, tuples)
    }

    /// The overlapping cycle `C_n^{(r)}(ell)`: vertices `0..n` in cyclic
    /// order, edges are windows of `r` consecutive vertices advancing by
    /// `r - ell`, so consecutive edges share `ell` vertices. Requires
    /// `(r - ell) | n`.
    pub fn overlapping_cycle(n: u32, r: u32, ell: u32) -> Result<Self> {
        if ell >= r {
            return Err(Error::InvalidShape(format!(
                "overlap ell={ell} must be < r={r}"
            )));
        }
        let step = r - ell;
        if !n.is_multiple_of(step) {
            return Err(Error::Divisibility(format!(
                "overlapping cycle needs (r - ell) = {step} to divide n = {n}"
            )));
        }
        if n < 2 * r - ell {
            return Err(Error::InvalidShape(format!(
                "overlapping cycle needs n >= 2r - ell = {}",
                2 * r - ell
            )));
        }
        let tuples: Vec<Vec<Vertex>> = (0..n / step)
            .map(|i| (0..r).map(|j| (i * step + j) % n).collect())
            .collect();
        Self::hypergraph(n, r, tuples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binomial;

    #[test]
    fn constructors_validate() {
        assert!(Pattern::graph(3, &[(0, 1), (1, 2)]).is_ok());
        assert!(Pattern::graph(2, &[(0, 0)]).is_err());
        assert!(Pattern::graph(2, &[(0, 2)]).is_err());
        assert!(Pattern::graph(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Pattern::hypergraph(4, 3, vec![vec![0, 1, 2], vec![2, 1, 3]]).is_ok());
        assert!(Pattern::hypergraph(4, 3, vec![vec![0, 1, 1]]).is_err());
    }

    #[test]
    fn parts_must_be_independent() {
        let p = Pattern::path(3).unwrap();
        assert!(p.clone().with_parts(vec![0, 1, 0]).is_ok());
        assert!(p.clone().with_parts(vec![0, 0, 1]).is_err());
        assert!(p.with_parts(vec![0, 1]).is_err());
    }

    #[test]
    fn greedy_partition_alternates_on_even_cycles() {
        let c8 = Pattern::cycle(8).unwrap().greedy_partition(2).unwrap();
        assert_eq!(c8.parts().unwrap(), &[0, 1, 0, 1, 0, 1, 0, 1]);
        // K_4 is not bipartite.
        assert!(Pattern::complete(4).unwrap().greedy_partition(2).is_err());
        assert!(Pattern::complete(4).unwrap().greedy_partition(4).is_ok());
    }

    #[test]
    fn degree_profile_graph() {
        let star = Pattern::graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let d = star.degree_profile();
        assert_eq!(d.deltas, vec![4, 4, 1]);
        assert_eq!(d.delta(), 4);

        let c8 = Pattern::cycle(8).unwrap();
        assert_eq!(c8.degree_profile().deltas, vec![8, 2, 1]);
    }

    #[test]
    fn degree_profile_satisfies_cascade() {
        // delta_{i-1} <= (v - i + 1) * delta_i for every pattern.
        for p in [
            Pattern::complete_uniform(6, 3).unwrap(),
            Pattern::overlapping_cycle(12, 4, 2).unwrap(),
            Pattern::hypergraph(5, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![2, 3, 4]]).unwrap(),
        ] {
            let d = p.degree_profile();
            let v = p.vertex_count() as u64;
            for i in 1..d.deltas.len() as u64 {
                assert!(
                    d.deltas[(i - 1) as usize] <= (v - i + 1) * d.deltas[i as usize],
                    "cascade fails at i={i} for {d:?}"
                );
            }
        }
    }

    #[test]
    fn cherry_count_matches_degree_formula() {
        for p in [
            Pattern::cycle(8).unwrap(),
            Pattern::complete(5).unwrap(),
            Pattern::graph(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (4, 5)]).unwrap(),
        ] {
            let by_enum = p.cherries().len() as u64;
            let by_formula: u64 = {
                let mut deg = vec![0u64; p.vertex_count() as usize];
                for e in p.edges() {
                    deg[e[0] as usize] += 1;
                    deg[e[1] as usize] += 1;
                }
                deg.iter().map(|&d| binomial(d, 2)).sum()
            };
            assert_eq!(by_enum, by_formula);
            for c in p.cherries() {
                assert!(c.u1 < c.u3);
                assert!(c.u1 != c.u2 && c.u2 != c.u3);
            }
        }
    }

    #[test]
    fn quadruple_count_complements_intersecting_pairs() {
        for p in [
            Pattern::cycle(8).unwrap(),
            Pattern::complete(5).unwrap(),
            Pattern::matching(4).unwrap(),
        ] {
            let e = p.edges().len() as u64;
            let intersecting = p.overlap_pairs(1).len() as u64 + p.overlap_pairs(2).len() as u64;
            assert_eq!(p.quadruples().len() as u64, binomial(e, 2) - intersecting);
            for q in p.quadruples() {
                assert!(q.u1 < q.u2 && q.u3 < q.u4 && q.u1 < q.u3);
            }
        }
        assert_eq!(Pattern::matching(3).unwrap().quadruples().len(), 3);
        assert!(Pattern::matching(3).unwrap().cherries().is_empty());
    }

    #[test]
    fn overlapping_cycle_structure() {
        // Tight cycle: n edges, every vertex in r of them, every (r-1)-window
        // shared by exactly two edges.
        let tight = Pattern::overlapping_cycle(7, 3, 2).unwrap();
        let d = tight.degree_profile();
        assert_eq!(d.deltas, vec![7, 3, 2, 1]);
        assert!(tight.is_linear(2));
        assert!(!tight.is_linear(1));

        let loose = Pattern::overlapping_cycle(12, 4, 2).unwrap();
        assert_eq!(loose.edges().len(), 6);
        assert_eq!(loose.degree_profile().delta(), 2);
        assert_eq!(loose.overlap_pairs(2).len(), 6);

        assert!(matches!(
            Pattern::overlapping_cycle(9, 3, 1),
            Err(Error::Divisibility(_))
        ));
    }

    #[test]
    fn linearity_detects_heavy_overlap() {
        let p = Pattern::hypergraph(5, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 4]]).unwrap();
        assert!(p.is_linear(2));
        // Edges {0,1,2} and {0,1,3} share two vertices.
        assert!(!p.is_linear(1));
        assert!(Pattern::complete_uniform(5, 3).unwrap().is_linear(2));
    }

    #[test]
    fn induced_subpattern_relabels() {
        let p = Pattern::cycle(5)
            .unwrap()
            .with_parts(vec![0, 1, 0, 1, 2])
            .unwrap();
        let q = p.induced(&[0, 1, 2, 4]).unwrap();
        assert_eq!(q.vertex_count(), 4);
        // Kept edges: {0,1}, {1,2}, {4,0} -> {3,0}.
        assert_eq!(q.edges(), &[vec![0, 1], vec![0, 3], vec![1, 2]]);
        assert_eq!(q.parts().unwrap(), &[0, 1, 0, 2]);
        assert!(p.induced(&[1, 0]).is_err());
        assert!(p.induced(&[0, 9]).is_err());
    }

    #[test]
    fn fits_host_checks_parts_and_sizes() {
        let c8 = Pattern::cycle(8).unwrap().greedy_partition(2).unwrap();
        assert!(c8.fits_host(&HostShape::Multipartite { m: 2, n: 4 }).is_ok());
        assert!(matches!(
            c8.fits_host(&HostShape::Multipartite { m: 2, n: 3 }),
            Err(Error::PartOverflow(_))
        ));
        let bare = Pattern::cycle(8).unwrap();
        assert!(bare
            .fits_host(&HostShape::Multipartite { m: 2, n: 4 })
            .is_err());
        // 2-uniform hypergraph host takes unpartitioned graphs.
        assert!(bare.fits_host(&HostShape::Hypergraph { n: 8, r: 2 }).is_ok());
        assert!(bare.fits_host(&HostShape::Hypergraph { n: 7, r: 2 }).is_err());
        let k4 = Pattern::complete_uniform(4, 3).unwrap();
        assert!(k4.fits_host(&HostShape::Hypergraph { n: 6, r: 3 }).is_ok());
        assert!(k4.fits_host(&HostShape::Hypergraph { n: 6, r: 2 }).is_err());
    }
}
