//! Randomized embedding search by sample-and-resample.
//!
//! The algorithmic counterpart of the lopsided local lemma on injection
//! spaces: draw a uniformly random part-respecting injection of the pattern
//! into the host, scan for a violated bad event — two pattern edges whose
//! images carry the same color and overlap (proper mode) or merely share the
//! color (rainbow mode) — and, while one exists, resample the support of the
//! violated event by uniform random swaps. Swaps are transpositions of the
//! current injection, so injectivity and part-respect are preserved by
//! construction, and the walk stays inside the original probability space.
//!
//! All randomness flows through a seeded [`ChaCha8Rng`]; restarts use the
//! same seed on separate streams, so every run is reproducible from
//! `(seed, config)` alone.

use std::collections::HashMap;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certify::ColorMode;
use crate::error::{Error, Result};
use crate::events::part_ranges;
use crate::host::{ColorId, ColoredHost, HostShape, Vertex};
use crate::pattern::Pattern;

/// A part-respecting injection of pattern vertices into host vertices.
///
/// Keeps the inverse map alongside the forward images so that swap
/// resampling runs in constant time per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    images: Vec<Vertex>,
    inverse: HashMap<Vertex, u32>,
}

impl Embedding {
    /// Wraps a forward image list, rejecting repeated images.
    pub fn new(images: Vec<Vertex>) -> Result<Self> {
        let mut inverse = HashMap::with_capacity(images.len());
        for (u, &w) in images.iter().enumerate() {
            if inverse.insert(w, u as u32).is_some() {
                return Err(Error::InvalidShape(format!(
                    "not injective: host vertex {w} is the image of two pattern vertices"
                )));
            }
        }
        Ok(Embedding { images, inverse })
    }

    /// Image of pattern vertex `u`.
    pub fn image(&self, u: u32) -> Vertex {
        self.images[u as usize]
    }

    /// All images, indexed by pattern vertex.
    pub fn images(&self) -> &[Vertex] {
        &self.images
    }

    /// Number of embedded pattern vertices.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// Whether the pattern side is empty.
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Pattern vertex currently mapped to host vertex `w`, if any.
    pub fn preimage(&self, w: Vertex) -> Option<u32> {
        self.inverse.get(&w).copied()
    }

    /// Sorted image of a pattern edge.
    pub fn edge_image(&self, edge: &[u32]) -> Vec<Vertex> {
        let mut img: Vec<Vertex> = edge.iter().map(|&u| self.image(u)).collect();
        img.sort_unstable();
        img
    }

    /// Moves `u` onto host vertex `w`; if `w` is occupied by another pattern
    /// vertex, that vertex receives `u`'s old image (a transposition). The
    /// embedding stays injective, and part-respecting whenever `w` lies in
    /// `u`'s permitted part.
    pub fn swap_to(&mut self, u: u32, w: Vertex) {
        let old = self.images[u as usize];
        if old == w {
            return;
        }
        match self.inverse.get(&w).copied() {
            Some(v) => {
                self.images[v as usize] = old;
                self.inverse.insert(old, v);
            }
            None => {
                self.inverse.remove(&old);
            }
        }
        self.images[u as usize] = w;
        self.inverse.insert(w, u);
    }
}

/// How the violation scanner picks among simultaneous violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ScanOrder {
    /// Deterministic: the first violation in canonical scan order
    /// (overlapping pairs before disjoint pairs, then lexicographic by edge
    /// index).
    #[default]
    FirstFound,
    /// A uniformly random violation among all current ones.
    Random,
}

/// Classification of a violated bad event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ViolationKind {
    /// Two incident graph edges with the same image color.
    MonochromeCherry,
    /// Two disjoint edges with the same image color (rainbow mode only).
    RepeatedColorPair,
    /// Two `r`-uniform edges sharing `≥ 1` vertices with the same color.
    OverlapPair,
}

/// A witnessed violation: two pattern edges whose images carry equal colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub kind: ViolationKind,
    /// Indices of the two offending pattern edges, smaller first.
    pub edges: (usize, usize),
    /// Number of shared pattern vertices of the two edges.
    pub overlap: u32,
    /// Sorted union of the two edges' pattern vertices.
    pub support: Vec<u32>,
    /// Host images of `support`, aligned entrywise.
    pub images: Vec<Vertex>,
    /// The repeated color.
    pub color: ColorId,
}

/// Parameters of an [`embed`] run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EmbedConfig {
    pub mode: ColorMode,
    /// Resample budget per attempt; `None` picks [`default_budget`].
    pub max_resamples: Option<u64>,
    /// Total sampling attempts (fresh injection each), at least 1.
    pub restarts: u32,
    pub seed: u64,
    pub scan_order: ScanOrder,
}

impl EmbedConfig {
    /// Default configuration: automatic budget, 10 attempts, deterministic
    /// first-found scanning.
    pub fn new(mode: ColorMode, seed: u64) -> Self {
        EmbedConfig { mode, max_resamples: None, restarts: 10, seed, scan_order: ScanOrder::FirstFound }
    }
}

/// Default per-attempt resample budget: `100 · (|V(G)| + |E(G)|)`, at least
/// 100.
pub fn default_budget(pattern: &Pattern) -> u64 {
    100 * (pattern.vertex_count() as u64 + pattern.edges().len() as u64).max(1)
}

/// Counters echoed with every outcome; identical seeds and configs yield
/// identical stats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EmbedStats {
    pub seed: u64,
    /// Sampling attempts consumed (1-based; equals `restarts` on failure).
    pub attempts: u32,
    /// Total resample steps across all attempts.
    pub resamples: u64,
    /// The resolved per-attempt budget.
    pub max_resamples: u64,
    pub restarts: u32,
}

/// Result of an [`embed`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedOutcome {
    /// A violation-free embedding was reached.
    Success { embedding: Embedding, stats: EmbedStats },
    /// Every attempt exhausted its budget; the last violation seen stands as
    /// the witness that the walk was still blocked.
    Failure { stats: EmbedStats, last_violation: Violation },
}

impl EmbedOutcome {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            EmbedOutcome::Success { embedding, .. } => Some(embedding),
            EmbedOutcome::Failure { .. } => None,
        }
    }

    pub fn stats(&self) -> &EmbedStats {
        match self {
            EmbedOutcome::Success { stats, .. } | EmbedOutcome::Failure { stats, .. } => stats,
        }
    }
}

/// Draws a uniformly random part-respecting injection using a fresh
/// generator seeded with `seed`.
pub fn sample_injection(pattern: &Pattern, shape: &HostShape, seed: u64) -> Result<Embedding> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_injection_with(pattern, shape, &mut rng)
}

/// Draws a uniformly random part-respecting injection from the caller's
/// generator: an independent partial Fisher–Yates shuffle per part.
pub fn sample_injection_with(
    pattern: &Pattern,
    shape: &HostShape,
    rng: &mut impl Rng,
) -> Result<Embedding> {
    let ranges = part_ranges(pattern, shape)?;
    // Group pattern vertices by their permitted host range; each group draws
    // an ordered selection of distinct host vertices.
    let mut groups: HashMap<Vertex, Vec<u32>> = HashMap::new();
    let mut group_order: Vec<Vertex> = Vec::new();
    for u in 0..pattern.vertex_count() {
        let start = ranges[u as usize].start;
        groups.entry(start).or_insert_with(|| {
            group_order.push(start);
            Vec::new()
        }).push(u);
    }
    let mut images = vec![0 as Vertex; pattern.vertex_count() as usize];
    for start in group_order {
        let members = &groups[&start];
        let range = ranges[members[0] as usize].clone();
        let mut pool: Vec<Vertex> = range.collect();
        for (j, &u) in members.iter().enumerate() {
            let pick = rng.random_range(j..pool.len());
            pool.swap(j, pick);
            images[u as usize] = pool[j];
        }
    }
    Embedding::new(images)
}

/// Colors of all pattern edge images under `e`. Fails if some image is not a
/// host edge (the embedding is not part-respecting).
fn image_colors(e: &Embedding, pattern: &Pattern, host: &ColoredHost) -> Result<Vec<ColorId>> {
    pattern
        .edges()
        .iter()
        .map(|edge| {
            let img = e.edge_image(edge);
            host.try_color(&img).ok_or_else(|| {
                Error::InvalidShape(format!(
                    "image {img:?} of pattern edge {edge:?} is not a host edge"
                ))
            })
        })
        .collect()
}

fn shared_vertices(a: &[u32], b: &[u32]) -> u32 {
    a.iter().filter(|u| b.contains(u)).count() as u32
}

fn make_violation(
    pattern: &Pattern,
    e: &Embedding,
    e1: usize,
    e2: usize,
    color: ColorId,
) -> Violation {
    let (a, b) = (&pattern.edges()[e1], &pattern.edges()[e2]);
    let overlap = shared_vertices(a, b);
    let mut support: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
    support.sort_unstable();
    support.dedup();
    let images = support.iter().map(|&u| e.image(u)).collect();
    let kind = if overlap == 0 {
        ViolationKind::RepeatedColorPair
    } else if pattern.uniformity() == 2 {
        ViolationKind::MonochromeCherry
    } else {
        ViolationKind::OverlapPair
    };
    Violation { kind, edges: (e1, e2), overlap, support, images, color }
}

/// Scans pattern edge pairs through a color index. Phase one visits pairs
/// with a shared vertex, phase two (rainbow mode only) disjoint pairs; both
/// phases run in lexicographic order of (later edge, earlier edge), so the
/// first entry of the returned list is the canonical first-found violation.
fn collect_violations(
    e: &Embedding,
    pattern: &Pattern,
    host: &ColoredHost,
    mode: ColorMode,
    first_only: bool,
) -> Result<Vec<Violation>> {
    let colors = image_colors(e, pattern, host)?;
    let edges = pattern.edges();
    let mut found = Vec::new();
    let phases: &[bool] = match mode {
        ColorMode::Proper => &[true],
        ColorMode::Rainbow => &[true, false],
    };
    for &overlapping in phases {
        let mut by_color: HashMap<ColorId, Vec<usize>> = HashMap::new();
        for e2 in 0..edges.len() {
            if let Some(bucket) = by_color.get(&colors[e2]) {
                for &e1 in bucket {
                    let meets = shared_vertices(&edges[e1], &edges[e2]) > 0;
                    if meets == overlapping {
                        found.push(make_violation(pattern, e, e1, e2, colors[e2]));
                        if first_only {
                            return Ok(found);
                        }
                    }
                }
            }
            by_color.entry(colors[e2]).or_default().push(e2);
        }
    }
    Ok(found)
}

/// Every violation of `e` in canonical scan order (overlapping pairs first,
/// then — in rainbow mode — disjoint pairs).
pub fn all_violations(
    e: &Embedding,
    pattern: &Pattern,
    host: &ColoredHost,
    mode: ColorMode,
) -> Result<Vec<Violation>> {
    collect_violations(e, pattern, host, mode, false)
}

/// Returns the canonical first violation of `e`, or `None` when the image is
/// properly colored (proper mode) / rainbow (rainbow mode).
pub fn find_violation(
    e: &Embedding,
    pattern: &Pattern,
    host: &ColoredHost,
    mode: ColorMode,
) -> Result<Option<Violation>> {
    Ok(collect_violations(e, pattern, host, mode, true)?.into_iter().next())
}

/// Like [`find_violation`] but honoring a scan order: `Random` draws
/// uniformly among all current violations.
pub fn find_violation_with(
    e: &Embedding,
    pattern: &Pattern,
    host: &ColoredHost,
    mode: ColorMode,
    order: ScanOrder,
    rng: &mut impl Rng,
) -> Result<Option<Violation>> {
    match order {
        ScanOrder::FirstFound => find_violation(e, pattern, host, mode),
        ScanOrder::Random => {
            let mut all = collect_violations(e, pattern, host, mode, false)?;
            if all.is_empty() {
                Ok(None)
            } else {
                let pick = rng.random_range(0..all.len());
                Ok(Some(all.swap_remove(pick)))
            }
        }
    }
}

/// One resampling step: every support vertex, in increasing order, receives
/// a uniformly random host vertex from its permitted range via [`Embedding::swap_to`].
pub fn resample(
    e: &mut Embedding,
    support: &[u32],
    ranges: &[Range<Vertex>],
    rng: &mut impl Rng,
) {
    for &u in support {
        let range = ranges[u as usize].clone();
        let w = rng.random_range(range);
        e.swap_to(u, w);
    }
}

/// Runs the full sample-and-resample loop.
///
/// Each attempt draws a fresh uniform injection (same seed, distinct
/// ChaCha stream per attempt) and performs up to `max_resamples` resampling
/// steps. Success returns the first violation-free embedding; failure
/// reports the budget spent and the last violation seen.
fn validated_budget(pattern: &Pattern, config: &EmbedConfig) -> Result<u64> {
    if config.restarts == 0 {
        return Err(Error::UnsupportedParameters("restarts must be at least 1".into()));
    }
    let budget = config.max_resamples.unwrap_or_else(|| default_budget(pattern));
    if budget == 0 {
        return Err(Error::UnsupportedParameters("maxResamples must be at least 1".into()));
    }
    Ok(budget)
}

/// Outcome of a single restart attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttemptOutcome {
    /// The embedding, when this attempt converged within budget.
    pub embedding: Option<Embedding>,
    /// Resampling steps this attempt consumed (exactly the budget on
    /// failure).
    pub resamples: u64,
    /// The violation standing when the budget ran out (`None` on success).
    pub last_violation: Option<Violation>,
}

/// Runs one restart attempt. The attempt index selects an independent RNG
/// stream under the configured seed, so attempts may be evaluated in any
/// order — or concurrently — and combined by lowest successful index to
/// reproduce [`embed`]'s answer exactly.
pub fn embed_attempt(
    pattern: &Pattern,
    host: &ColoredHost,
    config: &EmbedConfig,
    attempt: u32,
) -> Result<AttemptOutcome> {
    let budget = validated_budget(pattern, config)?;
    let shape = host.shape();
    let ranges = part_ranges(pattern, &shape)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(attempt as u64);
    let mut e = sample_injection_with(pattern, &shape, &mut rng)?;
    let mut steps = 0u64;
    loop {
        match find_violation_with(&e, pattern, host, config.mode, config.scan_order, &mut rng)? {
            None => {
                return Ok(AttemptOutcome {
                    embedding: Some(e),
                    resamples: steps,
                    last_violation: None,
                });
            }
            Some(v) => {
                if steps == budget {
                    return Ok(AttemptOutcome {
                        embedding: None,
                        resamples: steps,
                        last_violation: Some(v),
                    });
                }
                resample(&mut e, &v.support, &ranges, &mut rng);
                steps += 1;
            }
        }
    }
}

pub fn embed(pattern: &Pattern, host: &ColoredHost, config: &EmbedConfig) -> Result<EmbedOutcome> {
    let budget = validated_budget(pattern, config)?;
    let mut total_resamples = 0u64;
    let mut last_violation: Option<Violation> = None;

    for attempt in 0..config.restarts {
        let outcome = embed_attempt(pattern, host, config, attempt)?;
        total_resamples += outcome.resamples;
        if let Some(embedding) = outcome.embedding {
            return Ok(EmbedOutcome::Success {
                embedding,
                stats: EmbedStats {
                    seed: config.seed,
                    attempts: attempt + 1,
                    resamples: total_resamples,
                    max_resamples: budget,
                    restarts: config.restarts,
                },
            });
        }
        last_violation = outcome.last_violation;
    }

    Ok(EmbedOutcome::Failure {
        stats: EmbedStats {
            seed: config.seed,
            attempts: config.restarts,
            resamples: total_resamples,
            max_resamples: budget,
            restarts: config.restarts,
        },
        last_violation: last_violation.expect("failure implies a violation was observed"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::host::BoundMode;

    fn bipartite_host(n: u32) -> HostShape {
        HostShape::Multipartite { m: 2, n }
    }

    fn cycle_in_two_parts(k: u32) -> Pattern {
        Pattern::cycle(k).unwrap().greedy_partition(2).unwrap()
    }

    #[test]
    fn sampled_injections_are_valid() {
        let pattern = cycle_in_two_parts(6);
        let shape = bipartite_host(5);
        for seed in 0..20 {
            let e = sample_injection(&pattern, &shape, seed).unwrap();
            assert_eq!(e.len(), 6);
            let parts = pattern.parts().unwrap();
            for u in 0..6u32 {
                assert_eq!(shape.part_of(e.image(u)), parts[u as usize]);
                assert_eq!(e.preimage(e.image(u)), Some(u));
            }
        }
        let hyper = Pattern::complete_uniform(4, 3).unwrap();
        let shape = HostShape::Hypergraph { n: 7, r: 3 };
        let e = sample_injection(&hyper, &shape, 11).unwrap();
        let mut imgs: Vec<Vertex> = e.images().to_vec();
        imgs.sort_unstable();
        imgs.dedup();
        assert_eq!(imgs.len(), 4);
        assert!(imgs.iter().all(|&w| w < 7));
    }

    #[test]
    fn tiny_space_sampling_hits_every_outcome() {
        // m=2, one pattern vertex per part, n=2: four equally likely
        // injections.
        let pattern = Pattern::graph(2, &[(0, 1)]).unwrap().with_parts(vec![0, 1]).unwrap();
        let shape = bipartite_host(2);
        let mut counts = [0u32; 4];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let trials = 4000;
        for _ in 0..trials {
            let e = sample_injection_with(&pattern, &shape, &mut rng).unwrap();
            let idx = (e.image(0) as usize) * 2 + (e.image(1) as usize - 2);
            counts[idx] += 1;
        }
        for &c in &counts {
            assert!(c > 800, "outcome should appear ~1000 times, got {c}");
        }
    }

    #[test]
    fn empty_pattern_embeds_empty() {
        let pattern = Pattern::graph(0, &[]).unwrap().with_parts(vec![]).unwrap();
        let e = sample_injection(&pattern, &bipartite_host(3), 0).unwrap();
        assert!(e.is_empty());
    }

    #[test]
    fn oversized_parts_are_rejected() {
        let pattern = Pattern::matching(4).unwrap().greedy_partition(2).unwrap();
        let err = sample_injection(&pattern, &bipartite_host(3), 0).unwrap_err();
        assert_eq!(err.code(), "part-overflow");
    }

    #[test]
    fn swap_to_is_a_transposition() {
        let mut e = Embedding::new(vec![0, 1, 5]).unwrap();
        e.swap_to(0, 0); // self-swap: unchanged
        assert_eq!(e.images(), &[0, 1, 5]);
        e.swap_to(0, 1); // occupied target: exchange with vertex 1
        assert_eq!(e.images(), &[1, 0, 5]);
        e.swap_to(2, 3); // free target: plain move
        assert_eq!(e.images(), &[1, 0, 3]);
        assert_eq!(e.preimage(5), None);
        assert_eq!(e.preimage(3), Some(2));
        assert!(Embedding::new(vec![2, 2]).is_err());
    }

    #[test]
    fn resampling_preserves_injectivity() {
        let pattern = cycle_in_two_parts(6);
        let shape = bipartite_host(4);
        let ranges = part_ranges(&pattern, &shape).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut e = sample_injection_with(&pattern, &shape, &mut rng).unwrap();
        for _ in 0..10_000 {
            let support = [
                rng.random_range(0..6u32),
                rng.random_range(0..6u32),
                rng.random_range(0..6u32),
            ];
            resample(&mut e, &support, &ranges, &mut rng);
            let mut seen = std::collections::HashSet::new();
            for u in 0..6u32 {
                let w = e.image(u);
                assert!(seen.insert(w));
                assert_eq!(shape.part_of(w), pattern.parts().unwrap()[u as usize]);
                assert_eq!(e.preimage(w), Some(u));
            }
        }
    }

    #[test]
    fn violation_scan_matches_coloring_structure() {
        let pattern = cycle_in_two_parts(6);
        let rainbow = ColoredHost::rainbow(bipartite_host(3)).unwrap();
        let mono = ColoredHost::monochromatic(bipartite_host(3)).unwrap();
        let e = sample_injection(&pattern, &bipartite_host(3), 3).unwrap();
        assert!(find_violation(&e, &pattern, &rainbow, ColorMode::Proper).unwrap().is_none());
        assert!(find_violation(&e, &pattern, &rainbow, ColorMode::Rainbow).unwrap().is_none());
        let v = find_violation(&e, &pattern, &mono, ColorMode::Proper).unwrap().unwrap();
        assert_eq!(v.kind, ViolationKind::MonochromeCherry);
        assert_eq!(v.overlap, 1);
        assert_eq!(v.support.len(), 3);
        // The witnessed host edges genuinely carry equal colors.
        let (a, b) = v.edges;
        let ca = mono.try_color(&e.edge_image(&pattern.edges()[a])).unwrap();
        let cb = mono.try_color(&e.edge_image(&pattern.edges()[b])).unwrap();
        assert_eq!(ca, cb);
        assert_eq!(ca, v.color);

        // A perfect matching has no cherries: proper mode is clean even on a
        // monochromatic host, rainbow mode reports a disjoint repeat.
        let matching = Pattern::matching(3).unwrap().greedy_partition(2).unwrap();
        let e = sample_injection(&matching, &bipartite_host(3), 4).unwrap();
        assert!(find_violation(&e, &matching, &mono, ColorMode::Proper).unwrap().is_none());
        let v = find_violation(&e, &matching, &mono, ColorMode::Rainbow).unwrap().unwrap();
        assert_eq!(v.kind, ViolationKind::RepeatedColorPair);
        assert_eq!(v.overlap, 0);
        assert_eq!(v.support.len(), 4);
    }

    #[test]
    fn hypergraph_violations_report_overlap() {
        let pattern = Pattern::complete_uniform(4, 3).unwrap();
        let shape = HostShape::Hypergraph { n: 6, r: 3 };
        let mono = ColoredHost::monochromatic(shape).unwrap();
        let e = sample_injection(&pattern, &shape, 1).unwrap();
        let v = find_violation(&e, &pattern, &mono, ColorMode::Proper).unwrap().unwrap();
        assert_eq!(v.kind, ViolationKind::OverlapPair);
        assert_eq!(v.overlap, 2); // any two edges of K_4^(3) share two vertices
    }

    #[test]
    fn embed_succeeds_immediately_without_bad_events() {
        // Rainbow host: no two host edges share a color at all.
        let pattern = cycle_in_two_parts(8);
        let host = ColoredHost::rainbow(bipartite_host(5)).unwrap();
        let config = EmbedConfig::new(ColorMode::Rainbow, 7);
        match embed(&pattern, &host, &config).unwrap() {
            EmbedOutcome::Success { stats, .. } => {
                assert_eq!(stats.attempts, 1);
                assert_eq!(stats.resamples, 0);
            }
            EmbedOutcome::Failure { .. } => panic!("rainbow host must embed on first sample"),
        }

        // Locally 1-bounded coloring: no vertex sees a repeated color, so no
        // monochromatic cherry exists under any embedding.
        let latin = crate::latin::LatinSquare::cyclic(4).unwrap().to_coloring();
        let c8 = cycle_in_two_parts(8);
        match embed(&c8, &latin, &EmbedConfig::new(ColorMode::Proper, 0)).unwrap() {
            EmbedOutcome::Success { embedding, stats } => {
                assert_eq!(stats.resamples, 0);
                assert!(find_violation(&embedding, &c8, &latin, ColorMode::Proper)
                    .unwrap()
                    .is_none());
            }
            EmbedOutcome::Failure { .. } => panic!("locally 1-bounded host must embed"),
        }
    }

    #[test]
    fn embed_fails_honestly_when_no_copy_exists() {
        // Triangle into a monochromatic host with parts of size 1: every
        // embedding makes all three edges the same color.
        let triangle = Pattern::complete(3).unwrap().greedy_partition(3).unwrap();
        let host = ColoredHost::monochromatic(HostShape::Multipartite { m: 3, n: 1 }).unwrap();
        let mut config = EmbedConfig::new(ColorMode::Proper, 1);
        config.max_resamples = Some(50);
        config.restarts = 3;
        match embed(&triangle, &host, &config).unwrap() {
            EmbedOutcome::Failure { stats, last_violation } => {
                assert_eq!(stats.attempts, 3);
                assert_eq!(stats.resamples, 150);
                assert_eq!(last_violation.kind, ViolationKind::MonochromeCherry);
            }
            EmbedOutcome::Success { .. } => panic!("no properly colored triangle exists"),
        }
    }

    #[test]
    fn identical_configs_reproduce_identical_outcomes() {
        let pattern = cycle_in_two_parts(6);
        let host = ColoredHost::random_bounded(
            bipartite_host(6),
            3,
            BoundMode::Global,
            42,
        )
        .unwrap();
        let config = EmbedConfig { max_resamples: Some(25), ..EmbedConfig::new(ColorMode::Rainbow, 13) };
        let a = embed(&pattern, &host, &config).unwrap();
        let b = embed(&pattern, &host, &config).unwrap();
        assert_eq!(a, b);
        let mut random_order = config.clone();
        random_order.scan_order = ScanOrder::Random;
        let c = embed(&pattern, &host, &random_order).unwrap();
        let d = embed(&pattern, &host, &random_order).unwrap();
        assert_eq!(c, d);
    }
}
