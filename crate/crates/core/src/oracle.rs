//! Brute-force ground truth.
//!
//! Everything here is deliberately exhaustive and independent of the
//! randomized machinery: [`validate`] re-derives every property of a finished
//! embedding by full scans, [`exists_colored_copy`] decides existence of a
//! properly colored / rainbow copy by backtracking over all part-respecting
//! injections (with color-conflict pruning, refusing instances whose raw
//! search space is too large), and [`cross_check`] runs the randomized
//! embedder against the oracle over a seed sweep and reports any
//! disagreement. These are the functions the rest of the crate is tested
//! against.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::certify::ColorMode;
use crate::embed::{all_violations, embed, EmbedConfig, EmbedOutcome, Embedding, Violation};
use crate::error::{Error, Result};
use crate::events::part_ranges;
use crate::host::{ColorId, ColoredHost, Vertex};
use crate::pattern::Pattern;

/// Raw-search-space ceiling for [`exists_colored_copy`].
pub const MAX_SEARCH_SPACE: u128 = 100_000_000;

/// Full re-derivation of an embedding's properties.
///
/// The color flags and witness list are computed only when the embedding is
/// structurally sound (injective, part-respecting, total); a structurally
/// broken embedding reports `properlyColored = rainbow = false` with no
/// witnesses, since edge images are not well-defined host edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    /// No two pattern vertices share an image, and the embedding is total.
    pub injective: bool,
    /// Every image lies in the host range its pattern vertex must map into.
    pub part_respecting: bool,
    /// No two overlapping pattern edges have equal image colors.
    pub properly_colored: bool,
    /// No two pattern edges at all have equal image colors.
    pub rainbow: bool,
    /// Every equal-color pair, overlapping pairs first.
    pub witnesses: Vec<Violation>,
}

impl ValidationReport {
    /// The flag relevant to a color mode (structure flags must hold too).
    pub fn accepted(&self, mode: ColorMode) -> bool {
        self.injective
            && self.part_respecting
            && match mode {
                ColorMode::Proper => self.properly_colored,
                ColorMode::Rainbow => self.rainbow,
            }
    }
}

/// Recomputes every property of `e` from scratch by full scans.
pub fn validate(e: &Embedding, pattern: &Pattern, host: &ColoredHost) -> ValidationReport {
    validate_images(e.images(), pattern, host)
}

/// [`validate`] on a raw image list, so that candidate embeddings read from
/// the outside — possibly partial or non-injective — can be reported on
/// instead of rejected.
pub fn validate_images(
    images: &[Vertex],
    pattern: &Pattern,
    host: &ColoredHost,
) -> ValidationReport {
    let total = images.len() == pattern.vertex_count() as usize;
    let mut seen = std::collections::HashSet::new();
    let injective = total && images.iter().all(|&w| seen.insert(w));

    let shape = host.shape();
    let part_respecting = total
        && match part_ranges(pattern, &shape) {
            Ok(ranges) => images
                .iter()
                .enumerate()
                .all(|(u, w)| ranges[u].contains(w)),
            Err(_) => false,
        };

    if !(injective && part_respecting) {
        return ValidationReport {
            injective,
            part_respecting,
            properly_colored: false,
            rainbow: false,
            witnesses: Vec::new(),
        };
    }

    let e = Embedding::new(images.to_vec()).expect("injectivity was just checked");
    let witnesses = all_violations(&e, pattern, host, ColorMode::Rainbow)
        .expect("images of a part-respecting injective embedding are host edges");
    let properly_colored = witnesses.iter().all(|v| v.overlap == 0);
    let rainbow = witnesses.is_empty();
    ValidationReport { injective, part_respecting, properly_colored, rainbow, witnesses }
}

/// Exact existence decision by backtracking.
///
/// Pattern vertices are assigned in descending-degree order; every branch is
/// pruned as soon as a completed pattern edge repeats the color of an
/// overlapping (proper mode) or arbitrary (rainbow mode) completed edge.
/// Returns a witness embedding when a colored copy exists. Refuses instances
/// whose raw part-respecting injection count exceeds [`MAX_SEARCH_SPACE`].
pub fn exists_colored_copy(
    pattern: &Pattern,
    host: &ColoredHost,
    mode: ColorMode,
) -> Result<Option<Embedding>> {
    let shape = host.shape();
    let ranges = part_ranges(pattern, &shape)?;
    let v = pattern.vertex_count() as usize;

    // Raw search-space estimate: a falling factorial per vertex group.
    let mut group_used: HashMap<Vertex, u128> = HashMap::new();
    let mut estimate: u128 = 1;
    for r in &ranges {
        let used = group_used.entry(r.start).or_insert(0);
        estimate = estimate.saturating_mul((r.end - r.start) as u128 - *used);
        *used += 1;
    }
    if estimate > MAX_SEARCH_SPACE {
        return Err(Error::TooLarge(format!(
            "~{estimate} part-respecting injections exceed the search limit {MAX_SEARCH_SPACE}"
        )));
    }

    // Descending pattern degree, ties by vertex index.
    let mut degree = vec![0u32; v];
    for edge in pattern.edges() {
        for &u in edge {
            degree[u as usize] += 1;
        }
    }
    let mut order: Vec<u32> = (0..v as u32).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(degree[u as usize]), u));
    let mut position = vec![0usize; v];
    for (step, &u) in order.iter().enumerate() {
        position[u as usize] = step;
    }
    // Each pattern edge is checked at the step assigning its last vertex.
    let mut completed_at: Vec<Vec<usize>> = vec![Vec::new(); v];
    for (idx, edge) in pattern.edges().iter().enumerate() {
        let last = edge.iter().map(|&u| position[u as usize]).max().expect("edges are nonempty");
        completed_at[last].push(idx);
    }

    struct Search<'a> {
        pattern: &'a Pattern,
        host: &'a ColoredHost,
        mode: ColorMode,
        order: &'a [u32],
        ranges: &'a [std::ops::Range<Vertex>],
        completed_at: &'a [Vec<usize>],
        images: Vec<Vertex>,
        used: Vec<bool>,
        by_color: HashMap<ColorId, Vec<usize>>,
    }

    impl Search<'_> {
        fn dfs(&mut self, step: usize) -> bool {
            if step == self.order.len() {
                return true;
            }
            let u = self.order[step];
            for w in self.ranges[u as usize].clone() {
                if self.used[w as usize] {
                    continue;
                }
                self.images[u as usize] = w;
                self.used[w as usize] = true;
                let mut placed: Vec<(ColorId, usize)> = Vec::new();
                let mut conflict = false;
                for &idx in &self.completed_at[step] {
                    let mut img: Vec<Vertex> = self.pattern.edges()[idx]
                        .iter()
                        .map(|&x| self.images[x as usize])
                        .collect();
                    img.sort_unstable();
                    let c = self.host.try_color(&img).expect("image of a pattern edge");
                    let clash = self.by_color.get(&c).is_some_and(|bucket| {
                        bucket.iter().any(|&j| match self.mode {
                            ColorMode::Rainbow => true,
                            ColorMode::Proper => self.pattern.edges()[idx]
                                .iter()
                                .any(|x| self.pattern.edges()[j].contains(x)),
                        })
                    });
                    if clash {
                        conflict = true;
                        break;
                    }
                    self.by_color.entry(c).or_default().push(idx);
                    placed.push((c, idx));
                }
                if !conflict && self.dfs(step + 1) {
                    return true;
                }
                for (c, idx) in placed.into_iter().rev() {
                    let bucket = self.by_color.get_mut(&c).expect("just placed");
                    debug_assert_eq!(bucket.last(), Some(&idx));
                    bucket.pop();
                    if bucket.is_empty() {
                        self.by_color.remove(&c);
                    }
                }
                self.used[w as usize] = false;
            }
            false
        }
    }

    let mut search = Search {
        pattern,
        host,
        mode,
        order: &order,
        ranges: &ranges,
        completed_at: &completed_at,
        images: vec![0; v],
        used: vec![false; shape.vertex_count() as usize],
        by_color: HashMap::new(),
    };
    if search.dfs(0) {
        let witness = Embedding::new(search.images)?;
        debug_assert!(validate(&witness, pattern, host).accepted(mode));
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

/// Consistency sweep of the randomized embedder against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossCheckReport {
    /// The oracle's exact existence decision.
    pub oracle_exists: bool,
    /// Seeds swept, in order.
    pub seeds: Vec<u64>,
    /// Embedder successes (each re-validated) across the sweep.
    pub successes: u32,
    /// Embedder failures across the sweep.
    pub failures: u32,
    /// False iff some embedder success contradicted the oracle or failed
    /// validation.
    pub consistent: bool,
}

/// Runs `embed` once per seed (the config's own seed is ignored) and checks
/// the soundness direction: embedder success implies oracle existence and a
/// valid embedding. Embedder failures are never contradictions — the search
/// is incomplete by design.
pub fn cross_check(
    pattern: &Pattern,
    host: &ColoredHost,
    config: &EmbedConfig,
    seeds: &[u64],
) -> Result<CrossCheckReport> {
    let oracle_exists = exists_colored_copy(pattern, host, config.mode)?.is_some();
    let mut successes = 0;
    let mut failures = 0;
    let mut consistent = true;
    for &seed in seeds {
        let mut run = config.clone();
        run.seed = seed;
        match embed(pattern, host, &run)? {
            EmbedOutcome::Success { embedding, .. } => {
                successes += 1;
                if !oracle_exists || !validate(&embedding, pattern, host).accepted(config.mode) {
                    consistent = false;
                }
            }
            EmbedOutcome::Failure { .. } => failures += 1,
        }
    }
    Ok(CrossCheckReport { oracle_exists, seeds: seeds.to_vec(), successes, failures, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{sample_injection, ViolationKind};
    use crate::host::HostShape;
    use crate::latin::LatinSquare;

    fn two_parts(n: u32) -> HostShape {
        HostShape::Multipartite { m: 2, n }
    }

    #[test]
    fn validate_accepts_clean_embeddings() {
        let matching = Pattern::matching(3).unwrap().greedy_partition(2).unwrap();
        let host = ColoredHost::rainbow(two_parts(4)).unwrap();
        let e = sample_injection(&matching, &two_parts(4), 2).unwrap();
        let report = validate(&e, &matching, &host);
        assert!(report.injective && report.part_respecting);
        assert!(report.properly_colored && report.rainbow);
        assert!(report.witnesses.is_empty());
        assert!(report.accepted(ColorMode::Proper) && report.accepted(ColorMode::Rainbow));
    }

    #[test]
    fn validate_flags_color_repeats_with_witnesses() {
        let matching = Pattern::matching(2).unwrap().greedy_partition(2).unwrap();
        let host = ColoredHost::monochromatic(two_parts(3)).unwrap();
        let e = sample_injection(&matching, &two_parts(3), 0).unwrap();
        let report = validate(&e, &matching, &host);
        // Disjoint edges on a monochromatic host: proper holds, rainbow fails.
        assert!(report.properly_colored);
        assert!(!report.rainbow);
        assert_eq!(report.witnesses.len(), 1);
        assert_eq!(report.witnesses[0].kind, ViolationKind::RepeatedColorPair);
        assert!(report.accepted(ColorMode::Proper));
        assert!(!report.accepted(ColorMode::Rainbow));
    }

    #[test]
    fn validate_matches_hand_computed_c4_report() {
        // K_{2⊗2} with colors: {0,2}→0, {0,3}→1, {1,2}→1, {1,3}→0.
        let shape = two_parts(2);
        let host = ColoredHost::from_edge_list(
            shape,
            &[
                (vec![0, 2], 0),
                (vec![0, 3], 1),
                (vec![1, 2], 1),
                (vec![1, 3], 0),
            ],
        )
        .unwrap();
        let c4 = Pattern::cycle(4).unwrap().with_parts(vec![0, 1, 0, 1]).unwrap();
        // 0→0, 1→2, 2→1, 3→3: image edge colors alternate 0,1,0,1 around the
        // cycle, so consecutive edges always differ but opposite edges repeat.
        let e = Embedding::new(vec![0, 2, 1, 3]).unwrap();
        let report = validate(&e, &c4, &host);
        assert!(report.injective && report.part_respecting);
        assert!(report.properly_colored);
        assert!(!report.rainbow);
        assert_eq!(report.witnesses.len(), 2);
        for w in &report.witnesses {
            assert_eq!(w.kind, ViolationKind::RepeatedColorPair);
            assert_eq!(w.overlap, 0);
        }
    }

    #[test]
    fn validate_reports_structural_failures() {
        let matching = Pattern::matching(2).unwrap().greedy_partition(2).unwrap();
        let host = ColoredHost::rainbow(two_parts(3)).unwrap();
        // Vertex 1 belongs to pattern part 1 but is sent into host part 0.
        let wrong_part = Embedding::new(vec![0, 1, 2, 4]).unwrap();
        let report = validate(&wrong_part, &matching, &host);
        assert!(report.injective);
        assert!(!report.part_respecting);
        assert!(!report.properly_colored && !report.rainbow);
        assert!(report.witnesses.is_empty());
        // Too few images: not total.
        let short = Embedding::new(vec![0, 3]).unwrap();
        assert!(!validate(&short, &matching, &host).injective);
    }

    #[test]
    fn oracle_decides_triangle_and_cycle_instances() {
        // Monochromatic host with singleton parts: every triangle cherry is
        // monochromatic, so no properly colored copy exists.
        let triangle = Pattern::complete(3).unwrap().greedy_partition(3).unwrap();
        let mono = ColoredHost::monochromatic(HostShape::Multipartite { m: 3, n: 1 }).unwrap();
        assert!(exists_colored_copy(&triangle, &mono, ColorMode::Proper).unwrap().is_none());

        // A Latin-square coloring is locally 1-bounded: properly colored
        // copies of C_8 exist, and the witness validates.
        let latin = LatinSquare::cyclic(4).unwrap().to_coloring();
        let c8 = Pattern::cycle(8).unwrap().greedy_partition(2).unwrap();
        let witness = exists_colored_copy(&c8, &latin, ColorMode::Proper).unwrap().unwrap();
        assert!(validate(&witness, &c8, &latin).accepted(ColorMode::Proper));
    }

    #[test]
    fn oracle_decides_latin_transversals() {
        // A rainbow perfect matching of the K_{2⊗n} coloring is exactly a
        // transversal: Z_4 has none, Z_5 has one.
        let m4 = Pattern::matching(4).unwrap().greedy_partition(2).unwrap();
        let z4 = LatinSquare::cyclic(4).unwrap().to_coloring();
        assert!(exists_colored_copy(&m4, &z4, ColorMode::Rainbow).unwrap().is_none());

        let m5 = Pattern::matching(5).unwrap().greedy_partition(2).unwrap();
        let z5 = LatinSquare::cyclic(5).unwrap().to_coloring();
        let witness = exists_colored_copy(&m5, &z5, ColorMode::Rainbow).unwrap().unwrap();
        assert!(validate(&witness, &m5, &z5).accepted(ColorMode::Rainbow));
    }

    #[test]
    fn rainbow_hosts_always_admit_fitting_patterns() {
        let host = ColoredHost::rainbow(two_parts(4)).unwrap();
        for pattern in [
            Pattern::cycle(8).unwrap().greedy_partition(2).unwrap(),
            Pattern::path(5).unwrap().greedy_partition(2).unwrap(),
            Pattern::matching(4).unwrap().greedy_partition(2).unwrap(),
        ] {
            assert!(exists_colored_copy(&pattern, &host, ColorMode::Rainbow).unwrap().is_some());
        }
    }

    #[test]
    fn oversized_searches_are_refused() {
        let pattern = Pattern::complete(12).unwrap().greedy_partition(12).unwrap();
        let host = ColoredHost::rainbow(HostShape::Multipartite { m: 12, n: 50 }).unwrap();
        let err = exists_colored_copy(&pattern, &host, ColorMode::Proper).unwrap_err();
        assert_eq!(err.code(), "too-large");
    }

    #[test]
    fn cross_check_agrees_on_decided_instances() {
        let seeds: Vec<u64> = (0..10).collect();

        // Both negative: monochromatic triangle.
        let triangle = Pattern::complete(3).unwrap().greedy_partition(3).unwrap();
        let mono = ColoredHost::monochromatic(HostShape::Multipartite { m: 3, n: 1 }).unwrap();
        let mut config = EmbedConfig::new(ColorMode::Proper, 0);
        config.max_resamples = Some(30);
        config.restarts = 2;
        let report = cross_check(&triangle, &mono, &config, &seeds).unwrap();
        assert!(!report.oracle_exists);
        assert_eq!(report.successes, 0);
        assert!(report.consistent);

        // Both positive: Latin coloring with C_8.
        let latin = LatinSquare::cyclic(4).unwrap().to_coloring();
        let c8 = Pattern::cycle(8).unwrap().greedy_partition(2).unwrap();
        let report =
            cross_check(&c8, &latin, &EmbedConfig::new(ColorMode::Proper, 0), &seeds).unwrap();
        assert!(report.oracle_exists);
        assert_eq!(report.successes, 10);
        assert!(report.consistent);
    }
}
