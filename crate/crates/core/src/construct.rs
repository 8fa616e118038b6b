//! Extremal lower-bound instances.
//!
//! Generators for the structured patterns and colorings that show the
//! threshold bounds are tight up to constants:
//!
//! * a projective plane `PG(2, q)` over a prime field, the chained
//!   plane pattern built from its points and lines, and the *fan coloring*
//!   of `K_{m⊗n}` that admits no properly colored copy of that pattern;
//! * the *first-ℓ* coloring of `K_n^(r)` (the color of an edge is its ℓ
//!   smallest vertices) paired with designs `D^(r)_ℓ(m)` in which every
//!   `(ℓ+1)`-set spans exactly one edge;
//! * the two-level tree pattern and the *block coloring* (color = multiset of
//!   block indices) that defeats it.
//!
//! Every generator is deterministic; colorings come out dense-normalized via
//! the standard host constructors.

use serde::{Deserialize, Serialize};

use crate::combin::{binomial, colex_rank, subsets};
use crate::error::{Error, Result};
use crate::host::{ColoredHost, HostShape, Vertex};
use crate::pattern::Pattern;

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The projective plane `PG(2, q)` for a prime `q`: `q²+q+1` points and as
/// many lines of `q+1` points each, any two points on exactly one common
/// line, any two lines meeting in exactly one point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProjectivePlane {
    pub q: u32,
    /// Normalized homogeneous coordinates of each point.
    pub points: Vec<[u32; 3]>,
    /// Normalized homogeneous coordinates of each line.
    pub lines: Vec<[u32; 3]>,
    /// For each line, the sorted ids of its incident points.
    pub line_points: Vec<Vec<u32>>,
}

impl ProjectivePlane {
    /// Number of points (= number of lines), `q²+q+1`.
    pub fn size(&self) -> u32 {
        self.points.len() as u32
    }

    /// Whether point `p` lies on line `l`.
    pub fn incident(&self, p: u32, l: u32) -> bool {
        self.line_points[l as usize].binary_search(&p).is_ok()
    }

    /// Sorted ids of the lines through a point.
    pub fn lines_through(&self, p: u32) -> Vec<u32> {
        (0..self.size()).filter(|&l| self.incident(p, l)).collect()
    }

    /// 0/1 incidence matrix as CSV: one row per point, one column per line.
    pub fn incidence_csv(&self) -> String {
        let mut out = String::new();
        for p in 0..self.size() {
            let row: Vec<&str> = (0..self.size())
                .map(|l| if self.incident(p, l) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Builds `PG(2, q)` by normalized homogeneous coordinates over the prime
/// field of order `q`: representatives `(1,y,z)`, `(0,1,z)`, `(0,0,1)`, with
/// point `(x,y,z)` on line `[a,b,c]` iff `ax+by+cz ≡ 0 (mod q)`.
pub fn projective_plane(q: u32) -> Result<ProjectivePlane> {
    if !is_prime(q as u64) {
        return Err(Error::NotPrime(q as u64));
    }
    let mut coords: Vec<[u32; 3]> = Vec::new();
    for y in 0..q {
        for z in 0..q {
            coords.push([1, y, z]);
        }
    }
    for z in 0..q {
        coords.push([0, 1, z]);
    }
    coords.push([0, 0, 1]);
    debug_assert_eq!(coords.len() as u32, q * q + q + 1);

    let dot = |p: &[u32; 3], l: &[u32; 3]| -> u32 {
        (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q
    };
    let line_points: Vec<Vec<u32>> = coords
        .iter()
        .map(|line| {
            let pts: Vec<u32> = coords
                .iter()
                .enumerate()
                .filter(|(_, point)| dot(point, line) == 0)
                .map(|(i, _)| i as u32)
                .collect();
            debug_assert_eq!(pts.len() as u32, q + 1);
            pts
        })
        .collect();
    Ok(ProjectivePlane { q, points: coords.clone(), lines: coords, line_points })
}

/// The chained plane pattern together with the ids of its point and line
/// vertices inside the pattern.
#[derive(Debug, Clone)]
pub struct PlanePattern {
    /// The `m`-partitioned graph pattern.
    pub pattern: Pattern,
    /// Pattern ids of the point vertices `p_0, …, p_{q²+q}`.
    pub points: Vec<u32>,
    /// Pattern ids of the line vertices `ℓ_0, …, ℓ_{q²+q}`.
    pub lines: Vec<u32>,
    /// The underlying plane.
    pub plane: ProjectivePlane,
}

impl PlanePattern {
    /// Size of the largest pattern part. The construction places the points
    /// plus one vertex of every `S`-clique into one part (and dually for
    /// lines), so this is `2(q²+q)+1` for `m = 2` — strictly below the
    /// `2(q²+q+1)` worst case but above `3q²` when `q = 2`.
    pub fn max_part_size(&self) -> u32 {
        self.pattern
            .part_members()
            .expect("plane pattern is partitioned")
            .iter()
            .map(|p| p.len() as u32)
            .max()
            .unwrap_or(0)
    }
}

/// Builds the plane pattern: points `P`, lines `L`, and for each chain index
/// `i ∈ [q²+q]` two cliques `T_i`, `S_i` of order `m−1`; `p_{i−1}` and `p_i`
/// join every vertex of `T_i`, `ℓ_{i−1}` and `ℓ_i` every vertex of `S_i`,
/// and `p_a ~ ℓ_b` exactly when the point lies on the line. The partition
/// puts `P` in part 0 and `L` in part 1, spreading each clique across the
/// remaining parts. Maximum degree is `(q+1) + (2m−2)`.
pub fn plane_pattern(q: u32, m: u32) -> Result<PlanePattern> {
    if m < 2 {
        return Err(Error::UnsupportedParameters(format!(
            "plane pattern needs m >= 2 parts, got {m}"
        )));
    }
    let plane = projective_plane(q)?;
    let chains = q * q + q; // number of cliques per side
    let pc = chains + 1; // points (and lines) count
    let point_id = |p: u32| p;
    let line_id = |l: u32| pc + l;
    let t_id = |i: u32, t: u32| 2 * pc + (i - 1) * (m - 1) + t; // i in 1..=chains
    let s_id = |i: u32, t: u32| 2 * pc + chains * (m - 1) + (i - 1) * (m - 1) + t;
    let vertex_count = 2 * pc + 2 * chains * (m - 1);

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 1..=chains {
        for t in 0..m - 1 {
            // Cliques T_i and S_i.
            for t2 in t + 1..m - 1 {
                edges.push((t_id(i, t), t_id(i, t2)));
                edges.push((s_id(i, t), s_id(i, t2)));
            }
            // Chain anchors.
            edges.push((point_id(i - 1), t_id(i, t)));
            edges.push((point_id(i), t_id(i, t)));
            edges.push((line_id(i - 1), s_id(i, t)));
            edges.push((line_id(i), s_id(i, t)));
        }
    }
    for l in 0..plane.size() {
        for &p in &plane.line_points[l as usize] {
            edges.push((point_id(p), line_id(l)));
        }
    }

    let mut parts = vec![0u32; vertex_count as usize];
    for p in 0..pc {
        parts[point_id(p) as usize] = 0;
        parts[line_id(p) as usize] = 1;
    }
    for i in 1..=chains {
        for t in 0..m - 1 {
            // T_i spreads over parts {1, …, m−1}; S_i over {0, 2, …, m−1}.
            parts[t_id(i, t) as usize] = t + 1;
            parts[s_id(i, t) as usize] = if t == 0 { 0 } else { t + 1 };
        }
    }

    let pattern = Pattern::graph(vertex_count, &edges)?.with_parts(parts)?;
    let points = (0..pc).map(point_id).collect();
    let lines = (0..pc).map(line_id).collect();
    Ok(PlanePattern { pattern, points, lines, plane })
}

/// The bipartite point–line incidence pattern of `PG(2, q)` alone: points in
/// part 0, lines in part 1, one edge per incidence. This is the subpattern
/// that carries the pigeonhole argument, and it fits hosts too small for the
/// full chained pattern.
pub fn plane_incidence_pattern(q: u32) -> Result<Pattern> {
    let plane = projective_plane(q)?;
    let pc = plane.size();
    let mut edges = Vec::new();
    for l in 0..pc {
        for &p in &plane.line_points[l as usize] {
            edges.push((p, pc + l));
        }
    }
    let mut parts = vec![0u32; 2 * pc as usize];
    for l in 0..pc {
        parts[(pc + l) as usize] = 1;
    }
    Pattern::graph(2 * pc, &edges)?.with_parts(parts)
}

/// A coloring of `K_{m⊗n}` together with the cluster structure that defines
/// it.
#[derive(Debug, Clone)]
pub struct ClusteredColoring {
    pub host: ColoredHost,
    /// Number of clusters each part is split into (`q²+q`).
    pub clusters_per_part: u32,
    /// Cluster index (within its part) of every host vertex, part-major.
    pub cluster_of: Vec<u32>,
}

impl ClusteredColoring {
    /// Sizes of the clusters of one part; they differ by at most one.
    pub fn cluster_sizes(&self, part: u32) -> Vec<u32> {
        let shape = self.host.shape();
        let mut sizes = vec![0u32; self.clusters_per_part as usize];
        for v in shape.part_vertices(part) {
            sizes[self.cluster_of[v as usize] as usize] += 1;
        }
        sizes
    }
}

/// Builds the fan coloring of `K_{m⊗n}`: split every part into `q²+q`
/// clusters as evenly as possible (the first `n mod (q²+q)` clusters get the
/// extra vertex); the edge `xy` with `x` in a strictly lower part than `y`
/// gets the color `(x, cluster of y)`. Each color class is one downward fan,
/// so the coloring is globally `⌈n/(q²+q)⌉`-bounded.
pub fn fan_coloring(q: u32, m: u32, n: u32) -> Result<ClusteredColoring> {
    if m < 2 {
        return Err(Error::UnsupportedParameters(format!(
            "fan coloring needs m >= 2 parts, got {m}"
        )));
    }
    let clusters = q * q + q;
    if clusters == 0 || n < clusters {
        return Err(Error::UnsupportedParameters(format!(
            "fan coloring needs n >= q²+q = {clusters} so every cluster is nonempty, got n = {n}"
        )));
    }
    let shape = HostShape::Multipartite { m, n };
    let small = n / clusters;
    let extras = n % clusters; // first `extras` clusters have size small+1
    let cluster_of_offset = |o: u32| -> u32 {
        let big = small + 1;
        if o < extras * big {
            o / big
        } else {
            extras + (o - extras * big) / small
        }
    };
    let cluster_of: Vec<u32> =
        (0..m * n).map(|v| cluster_of_offset(v % n)).collect();
    let host = ColoredHost::from_fn(shape, |edge| {
        let (x, y) = (edge[0], edge[1]);
        let upper_part = y / n;
        let cluster = cluster_of_offset(y % n);
        x as u64 * (m as u64 * clusters as u64) + (upper_part as u64 * clusters as u64 + cluster as u64)
    })?;
    Ok(ClusteredColoring { host, clusters_per_part: clusters, cluster_of })
}

/// Builds the first-ℓ coloring of `K_n^(r)`: the color of the sorted edge
/// `v_1 < … < v_r` is the set `{v_1, …, v_ℓ}`. Globally `n^{r−ℓ}`-bounded.
pub fn first_ell_coloring(n: u32, r: u32, ell: u32) -> Result<ColoredHost> {
    if !(1 <= ell && ell < r && r <= n) {
        return Err(Error::UnsupportedParameters(format!(
            "first-ℓ coloring needs 1 <= ℓ < r <= n, got n={n}, r={r}, ℓ={ell}"
        )));
    }
    ColoredHost::from_fn(HostShape::Hypergraph { n, r }, |edge| colex_rank(&edge[..ell as usize]))
}

/// An `r`-uniform design `D^(r)_ℓ(m)`: every `(ℓ+1)`-subset of the `m`
/// vertices lies in exactly one edge (hence every `ℓ`-subset lies in exactly
/// `(m−ℓ)/(r−ℓ)` edges).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DesignHypergraph {
    pub r: u32,
    pub ell: u32,
    pub m: u32,
    /// Sorted `r`-sets, lexicographic.
    pub edges: Vec<Vec<u32>>,
}

impl DesignHypergraph {
    /// The design as an embeddable pattern.
    pub fn pattern(&self) -> Result<Pattern> {
        if self.r == 2 {
            let pairs: Vec<(Vertex, Vertex)> =
                self.edges.iter().map(|e| (e[0], e[1])).collect();
            Pattern::graph(self.m, &pairs)
        } else {
            Pattern::hypergraph(self.m, self.r, self.edges.clone())
        }
    }

    /// 0/1 incidence matrix as CSV: one row per vertex, one column per edge.
    pub fn incidence_csv(&self) -> String {
        let mut out = String::new();
        for v in 0..self.m {
            let row: Vec<&str> = self
                .edges
                .iter()
                .map(|e| if e.contains(&v) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Builds a supported design `D^(r)_ℓ(m)`.
///
/// Supported: `(r=2, ℓ=1)` for any `m ≥ 3` — the complete graph `K_m` — and
/// `(r=3, ℓ=1)` for `m ≡ 3 (mod 6)` — the Steiner triple system from the
/// Bose construction over `Z_s × {0,1,2}`, `m = 3s`. Everything else errors
/// with `unsupported-parameters`.
pub fn design(r: u32, ell: u32, m: u32) -> Result<DesignHypergraph> {
    match (r, ell) {
        (2, 1) => {
            if m < 3 {
                return Err(Error::UnsupportedParameters(format!(
                    "complete-graph design needs m >= 3, got {m}"
                )));
            }
            let edges = subsets(m, 2);
            Ok(DesignHypergraph { r, ell, m, edges })
        }
        (3, 1) => {
            if m % 6 != 3 {
                return Err(Error::UnsupportedParameters(format!(
                    "Bose construction needs m ≡ 3 (mod 6), got {m}"
                )));
            }
            let s = m / 3; // odd by the congruence
            let id = |x: u32, j: u32| 3 * x + j;
            let half = s.div_ceil(2); // inverse of 2 modulo odd s
            let mut edges: Vec<Vec<u32>> = Vec::new();
            for x in 0..s {
                edges.push(vec![id(x, 0), id(x, 1), id(x, 2)]);
            }
            for x in 0..s {
                for y in x + 1..s {
                    let z = ((x + y) * half) % s;
                    for j in 0..3 {
                        let mut e = vec![id(x, j), id(y, j), id(z, (j + 1) % 3)];
                        e.sort_unstable();
                        edges.push(e);
                    }
                }
            }
            edges.sort_unstable();
            let design = DesignHypergraph { r, ell, m, edges };
            if !design_pair_coverage_ok(&design) {
                return Err(Error::InvalidShape(
                    "generated triple system fails pair coverage".into(),
                ));
            }
            Ok(design)
        }
        _ => Err(Error::UnsupportedParameters(format!(
            "no generator for (r={r}, ℓ={ell}); supported: (2,1) and (3,1)"
        ))),
    }
}

fn design_pair_coverage_ok(d: &DesignHypergraph) -> bool {
    // Every (ℓ+1)=2-subset in exactly one edge.
    let mut count = std::collections::HashMap::new();
    for e in &d.edges {
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                *count.entry((e[i], e[j])).or_insert(0u32) += 1;
            }
        }
    }
    (0..d.m).all(|a| (a + 1..d.m).all(|b| count.get(&(a, b)) == Some(&1)))
}

/// Builds the full two-level tree pattern: a root `v`, a first level `L_1`
/// of `n1` vertices — every `(r−1)`-subset of `L_1` forms an edge with the
/// root — and, for each such subset, `n1` private children in `L_2`. Vertex
/// count `1 + n1 + C(n1, r−1)·n1`.
pub fn tree_pattern(r: u32, n1: u32) -> Result<Pattern> {
    let full = full_tree_vertex_count(r, n1)?;
    truncated_tree_pattern(r, n1, full)
}

/// Vertex count of the full tree, `1 + n1 + C(n1, r−1)·n1`.
pub fn full_tree_vertex_count(r: u32, n1: u32) -> Result<u32> {
    if r < 2 || n1 < r - 1 {
        return Err(Error::UnsupportedParameters(format!(
            "tree pattern needs r >= 2 and n1 >= r−1, got r={r}, n1={n1}"
        )));
    }
    let total = 1 + n1 as u64 + binomial(n1 as u64, r as u64 - 1) * n1 as u64;
    if total > 1_000_000 {
        return Err(Error::TooLarge(format!(
            "tree pattern on {total} vertices exceeds the generator limit"
        )));
    }
    Ok(total as u32)
}

/// The tree pattern truncated to its first `total_vertices` vertices: all
/// root edges are kept, and children (with their defining edges) are
/// generated subset-major until the budget is reached. `total_vertices`
/// must cover the root and the whole first level.
pub fn truncated_tree_pattern(r: u32, n1: u32, total_vertices: u32) -> Result<Pattern> {
    let full = full_tree_vertex_count(r, n1)?;
    if total_vertices < 1 + n1 || total_vertices > full {
        return Err(Error::UnsupportedParameters(format!(
            "truncated tree needs 1+n1 <= total <= {full}, got {total_vertices}"
        )));
    }
    let tuples = subsets(n1, r - 1); // over L_1 indices 0..n1
    let mut edges: Vec<Vec<u32>> = Vec::new();
    for tuple in &tuples {
        let mut e: Vec<u32> = tuple.iter().map(|&x| x + 1).collect();
        e.push(0); // the root
        e.sort_unstable();
        edges.push(e);
    }
    let mut next_child = 1 + n1;
    'outer: for tuple in &tuples {
        for _ in 0..n1 {
            if next_child == total_vertices {
                break 'outer;
            }
            let mut e: Vec<u32> = tuple.iter().map(|&x| x + 1).collect();
            e.push(next_child);
            e.sort_unstable();
            edges.push(e);
            next_child += 1;
        }
    }
    Pattern::hypergraph(total_vertices, r, edges)
}

/// Builds the block coloring of `K_n^(r)`: the vertices split into
/// `n/(r+1)` blocks of size `r+1`, and the color of an edge is the multiset
/// of its vertices' block indices. Globally `(r+1)^r`-bounded.
pub fn block_coloring(n: u32, r: u32) -> Result<ColoredHost> {
    if r < 2 {
        return Err(Error::UnsupportedParameters(format!(
            "block coloring needs r >= 2, got {r}"
        )));
    }
    if n == 0 || !n.is_multiple_of(r + 1) {
        return Err(Error::Divisibility(format!(
            "block coloring needs (r+1) = {} to divide n = {n}",
            r + 1
        )));
    }
    let blocks = (n / (r + 1)) as u64;
    // Mixed-radix encoding of the sorted block-index multiset.
    let mut radix_check: u64 = 1;
    for _ in 0..r {
        radix_check = radix_check.checked_mul(blocks).ok_or_else(|| {
            Error::TooLarge(format!("block color keys overflow for n={n}, r={r}"))
        })?;
    }
    ColoredHost::from_fn(HostShape::Hypergraph { n, r }, |edge| {
        let mut key = 0u64;
        for &v in edge {
            key = key * blocks + (v / (r + 1)) as u64;
        }
        key
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::ColorMode;
    use crate::embed::{find_violation, sample_injection_with, ViolationKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn projective_plane_invariants_hold_exhaustively() {
        for q in [2u32, 3, 5, 7] {
            let plane = projective_plane(q).unwrap();
            let size = q * q + q + 1;
            assert_eq!(plane.size(), size);
            for line in &plane.line_points {
                assert_eq!(line.len() as u32, q + 1);
            }
            // Every point pair on exactly one common line.
            for a in 0..size {
                for b in a + 1..size {
                    let common = (0..size)
                        .filter(|&l| plane.incident(a, l) && plane.incident(b, l))
                        .count();
                    assert_eq!(common, 1, "points {a},{b} of PG(2,{q})");
                }
            }
            // Every line pair meets in exactly one point.
            for a in 0..size as usize {
                for b in a + 1..size as usize {
                    let meet = plane.line_points[a]
                        .iter()
                        .filter(|p| plane.line_points[b].contains(p))
                        .count();
                    assert_eq!(meet, 1, "lines {a},{b} of PG(2,{q})");
                }
            }
            // Point degree: q+1 lines through every point.
            assert!(
                (0..size).all(|p| plane.lines_through(p).len() as u32 == q + 1)
            );
        }
        assert_eq!(projective_plane(4).unwrap_err().code(), "not-prime");
        assert_eq!(projective_plane(6).unwrap_err().code(), "not-prime");
    }

    #[test]
    fn plane_pattern_degrees_and_parts() {
        let pp = plane_pattern(2, 2).unwrap();
        // 2·7 points+lines, 2·6 singleton cliques.
        assert_eq!(pp.pattern.vertex_count(), 26);
        assert_eq!(pp.pattern.degree_profile().delta(), 5); // (q+1)+(2m−2)
        assert_eq!(pp.max_part_size(), 13); // 2(q²+q)+1
        let pp3 = plane_pattern(3, 3).unwrap();
        assert_eq!(pp3.pattern.degree_profile().delta(), 4 + 4);
        let sizes: Vec<u32> = pp3
            .pattern
            .part_members()
            .unwrap()
            .iter()
            .map(|p| p.len() as u32)
            .collect();
        assert_eq!(sizes, vec![25, 25, 24]);
        assert!(sizes.iter().all(|&s| s <= 3 * 9));
        // Incidence edges present exactly for plane incidences.
        let edges = pp.pattern.edges();
        for p in 0..7u32 {
            for l in 0..7u32 {
                let present = edges.contains(&vec![pp.points[p as usize], pp.lines[l as usize]]);
                assert_eq!(present, pp.plane.incident(p, l));
            }
        }
    }

    #[test]
    fn fan_coloring_is_cluster_bounded() {
        let fan = fan_coloring(2, 2, 12).unwrap();
        let report = fan.host.measure_boundedness();
        assert_eq!(report.k_global, 2);
        assert!(report.k_local <= report.k_global);
        assert!(fan.cluster_sizes(0).iter().all(|&s| s == 2));

        let uneven = fan_coloring(2, 2, 13).unwrap();
        assert_eq!(uneven.host.measure_boundedness().k_global, 3);
        let sizes = uneven.cluster_sizes(1);
        assert_eq!(sizes.iter().sum::<u32>(), 13);
        assert!(sizes.iter().all(|&s| s == 2 || s == 3));

        assert!(fan_coloring(2, 2, 5).is_err());
        assert!(fan_coloring(2, 1, 12).is_err());
    }

    #[test]
    fn fan_coloring_defeats_the_plane_pattern() {
        // Smallest host the full q=2, m=2 pattern fits: parts of 13.
        let pp = plane_pattern(2, 2).unwrap();
        let fan = fan_coloring(2, 2, 13).unwrap();
        let shape = fan.host.shape();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let e = sample_injection_with(&pp.pattern, &shape, &mut rng).unwrap();
            let v = find_violation(&e, &pp.pattern, &fan.host, ColorMode::Proper)
                .unwrap()
                .expect("every embedding of the plane pattern has a monochromatic cherry");
            assert_eq!(v.kind, ViolationKind::MonochromeCherry);
        }
    }

    #[test]
    fn first_ell_coloring_classes() {
        let host = first_ell_coloring(5, 3, 1).unwrap();
        // Color of {1,3,4} is determined by vertex 1: class {1,a,b}, a,b > 1.
        let c = host.try_color(&[1, 3, 4]).unwrap();
        let class_size = host
            .edges()
            .iter()
            .filter(|e| host.try_color(e) == Some(c))
            .count();
        assert_eq!(class_size, 3); // C(3,2)
        assert_ne!(host.try_color(&[0, 1, 2]), Some(c));

        let host = first_ell_coloring(5, 3, 2).unwrap();
        let report = host.measure_boundedness();
        assert_eq!(report.k_global, 3); // n−2, attained by the pair {0,1}
        assert!(report.k_global <= 5u64.pow(1));

        assert!(first_ell_coloring(5, 3, 0).is_err());
        assert!(first_ell_coloring(5, 3, 3).is_err());
        assert!(first_ell_coloring(2, 3, 1).is_err());
    }

    #[test]
    fn designs_cover_every_pair_once() {
        let k4 = design(2, 1, 4).unwrap();
        assert_eq!(k4.edges.len(), 6);
        assert_eq!(k4.pattern().unwrap().degree_profile().delta_i(1), 3); // (m−ℓ)/(r−ℓ)

        let sts9 = design(3, 1, 9).unwrap();
        assert_eq!(sts9.edges.len(), 12);
        let mut pair_count = std::collections::HashMap::new();
        for e in &sts9.edges {
            for i in 0..3 {
                for j in i + 1..3 {
                    *pair_count.entry((e[i], e[j])).or_insert(0) += 1;
                }
            }
        }
        for a in 0..9u32 {
            for b in a + 1..9 {
                assert_eq!(pair_count.get(&(a, b)), Some(&1));
            }
        }
        // Every vertex (ℓ-set) lies in (m−ℓ)/(r−ℓ) = 4 triples.
        assert_eq!(sts9.pattern().unwrap().degree_profile().delta_i(1), 4);

        let sts3 = design(3, 1, 3).unwrap();
        assert_eq!(sts3.edges, vec![vec![0, 1, 2]]);

        assert_eq!(design(3, 1, 8).unwrap_err().code(), "unsupported-parameters");
        assert_eq!(design(3, 1, 7).unwrap_err().code(), "unsupported-parameters");
        assert_eq!(design(4, 2, 10).unwrap_err().code(), "unsupported-parameters");
        assert_eq!(design(2, 1, 2).unwrap_err().code(), "unsupported-parameters");
    }

    #[test]
    fn tree_pattern_structure() {
        let tree = tree_pattern(3, 3).unwrap();
        assert_eq!(tree.vertex_count(), 13); // 1 + 3 + C(3,2)·3
        assert_eq!(tree.edges().len(), 3 + 9);
        let profile = tree.degree_profile();
        // Root degree C(3,2) = 3; first-level vertices reach C(2,1)·(3+1) = 8.
        assert_eq!(profile.delta_i(1), 8);
        // Each (r−1)-tuple of L_1 lies in its n1 child edges plus the root
        // edge, so Δ_{r−1} is exactly n1 + 1 — one more than the child
        // count alone would suggest.
        assert_eq!(profile.delta_i(2), 4);

        let truncated = truncated_tree_pattern(3, 3, 8).unwrap();
        assert_eq!(truncated.vertex_count(), 8);
        assert_eq!(truncated.edges().len(), 3 + 4);
        assert!(truncated_tree_pattern(3, 3, 3).is_err());
        assert!(truncated_tree_pattern(3, 3, 14).is_err());
        assert!(tree_pattern(3, 1).is_err());
    }

    #[test]
    fn block_coloring_is_block_bounded() {
        let host = block_coloring(8, 3).unwrap();
        let report = host.measure_boundedness();
        assert_eq!(report.k_global, 24); // {1,1,2}-type classes: C(4,2)·C(4,1)
        assert!(report.k_global <= 4u64.pow(3));
        // The all-in-one-block class has C(4,3) = 4 edges.
        let c = host.try_color(&[0, 1, 2]).unwrap();
        let class = host.edges().iter().filter(|e| host.try_color(e) == Some(c)).count();
        assert_eq!(class, 4);
        assert_eq!(block_coloring(9, 3).unwrap_err().code(), "divisibility");
    }

    #[test]
    fn block_coloring_defeats_the_truncated_tree() {
        let tree = truncated_tree_pattern(3, 3, 8).unwrap();
        let host = block_coloring(8, 3).unwrap();
        let shape = host.shape();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let e = sample_injection_with(&tree, &shape, &mut rng).unwrap();
            let v = find_violation(&e, &tree, &host, ColorMode::Proper).unwrap();
            assert!(v.is_some(), "every bijection must repeat a color on overlapping edges");
        }
    }
}
