//! Canonical bad events over a concrete pattern/host instance.
//!
//! The probability space is the set of part-respecting injections from the
//! pattern's vertices into the host. A *canonical event* pins down the
//! images of a small support: for proper colorings the support is a cherry
//! whose two edge images share a color; rainbow colorings add disjoint edge
//! pairs (quadruples); `r`-uniform hosts have one class per overlap size.
//! This module enumerates those events exactly, computes their exact
//! probabilities (products of inverse falling factorials per host part), and
//! counts, for a fixed event, how many events intersect it on the pattern
//! side (domain) or the host side (image). These exact counts are what the
//! certificate's closed-form class bounds must dominate.
//!
//! Following the counting convention of the certificate, an event is
//! considered to intersect itself (its domain meets its own domain), and
//! image-intersection is only recorded for pairs that do not already
//! domain-intersect, so the two buckets partition the neighborhood.

use std::collections::HashMap;
use std::ops::Range;

use num::{BigInt, BigRational, One};

use crate::certify::{ClassLabel, ColorMode};
use crate::combin::falling;
use crate::error::{Error, Result};
use crate::host::{ColorId, ColoredHost, HostShape, Vertex};
use crate::pattern::Pattern;

/// Classifies a bad event by its support structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventClass {
    Cherry,
    Quadruple,
    /// Edge pair sharing exactly `i` vertices in an `r`-uniform pattern.
    Overlap(u32),
}

/// A canonical bad event: the parallel arrays fix `image[j]` as the image of
/// pattern vertex `domain[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadEvent {
    pub class: EventClass,
    pub domain: Vec<Vertex>,
    pub image: Vec<Vertex>,
}

/// The full family of bad events of an instance.
#[derive(Debug, Clone)]
pub struct EventFamily {
    pub shape: HostShape,
    pub mode: ColorMode,
    pub events: Vec<BadEvent>,
}

/// Exact neighbor statistics of one event, per class and side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborCount {
    pub label: ClassLabel,
    pub count: u64,
    /// Exact sum of the neighbors' probabilities.
    pub prob_sum: BigRational,
}

/// Host vertex range each pattern vertex may map into. Multipartite hosts
/// use the pattern's partition (part `i` of the pattern maps into part `i`
/// of the host); hypergraph hosts use the whole vertex set.
pub fn part_ranges(pattern: &Pattern, shape: &HostShape) -> Result<Vec<Range<Vertex>>> {
    pattern.fits_host(shape)?;
    let v = pattern.vertex_count() as usize;
    match shape {
        HostShape::Multipartite { .. } => {
            let parts = pattern.parts().expect("fits_host checked the partition");
            Ok(parts.iter().map(|&p| shape.part_vertices(p)).collect())
        }
        HostShape::Hypergraph { n, .. } => Ok(vec![0..*n; v]),
    }
}

/// All part-respecting injections of the pattern into the host, each as a
/// vector of images indexed by pattern vertex. Refuses spaces larger than
/// `limit`.
pub fn enumerate_injections(
    pattern: &Pattern,
    shape: &HostShape,
    limit: u64,
) -> Result<Vec<Vec<Vertex>>> {
    let ranges = part_ranges(pattern, shape)?;
    let mut space = 1u64;
    let mut by_part: HashMap<Vertex, u64> = HashMap::new();
    for r in &ranges {
        let taken = by_part.entry(r.start).or_insert(0);
        space = space.saturating_mul((r.end - r.start) as u64 - *taken);
        *taken += 1;
    }
    if space > limit {
        return Err(Error::TooLarge(format!(
            "injection space has {space} elements (limit {limit})"
        )));
    }
    let mut out = Vec::with_capacity(space as usize);
    let mut images: Vec<Vertex> = Vec::with_capacity(ranges.len());
    fn rec(ranges: &[Range<Vertex>], images: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if images.len() == ranges.len() {
            out.push(images.clone());
            return;
        }
        let r = ranges[images.len()].clone();
        for v in r {
            if !images.contains(&v) {
                images.push(v);
                rec(ranges, images, out);
                images.pop();
            }
        }
    }
    rec(&ranges, &mut images, &mut out);
    debug_assert_eq!(out.len() as u64, space);
    Ok(out)
}

/// Exact probability of a canonical event: one over the product, across host
/// parts, of the falling factorials `(n)_(t_p)` where `t_p` support vertices
/// map into part `p`.
pub fn exact_probability(event: &BadEvent, shape: &HostShape) -> BigRational {
    let n = shape.part_size() as u64;
    let mut per_part: HashMap<u32, u64> = HashMap::new();
    for &v in &event.image {
        *per_part.entry(shape.part_of(v)).or_insert(0) += 1;
    }
    let mut denom = BigInt::one();
    for &t in per_part.values() {
        denom *= BigInt::from(falling(n, t));
    }
    BigRational::new(BigInt::one(), denom)
}

/// Sorted edges of the host grouped by color.
fn edges_by_color(host: &ColoredHost) -> Vec<Vec<Vec<Vertex>>> {
    let mut index = vec![Vec::new(); host.num_colors() as usize];
    host.shape().for_each_edge(|t| {
        index[host.color(t) as usize].push(t.to_vec());
    });
    index
}

/// For each vertex of a 2-uniform host: color -> neighbors along edges of
/// that color.
fn incident_by_color(host: &ColoredHost) -> Vec<HashMap<ColorId, Vec<Vertex>>> {
    let mut index: Vec<HashMap<ColorId, Vec<Vertex>>> =
        vec![HashMap::new(); host.shape().vertex_count() as usize];
    host.shape().for_each_edge(|t| {
        let c = host.color(t);
        index[t[0] as usize].entry(c).or_default().push(t[1]);
        index[t[1] as usize].entry(c).or_default().push(t[0]);
    });
    index
}

/// Enumerates every bad event of the instance. `limit` bounds both the
/// estimated enumeration work and the family size; larger instances are
/// refused with `too-large`.
pub fn enumerate_events(
    pattern: &Pattern,
    host: &ColoredHost,
    mode: ColorMode,
    limit: u64,
) -> Result<EventFamily> {
    let shape = host.shape();
    let ranges = part_ranges(pattern, &shape)?;
    let n = shape.part_size() as u64;
    let measure = host.measure_boundedness();
    let mut events = Vec::new();

    if pattern.uniformity() == 2 {
        let cherries = pattern.cherries();
        let quads = match mode {
            ColorMode::Rainbow => pattern.quadruples(),
            ColorMode::Proper => Vec::new(),
        };
        let work = (cherries.len() as u64)
            .saturating_mul(n * n)
            .saturating_mul(measure.k_local.max(1))
            .saturating_add(
                (quads.len() as u64)
                    .saturating_mul(n * n)
                    .saturating_mul(2 * measure.k_global.max(1)),
            );
        if work > limit {
            return Err(Error::TooLarge(format!(
                "event enumeration needs ~{work} steps (limit {limit})"
            )));
        }
        let incident = incident_by_color(host);
        for ch in &cherries {
            let (r1, r2, r3) = (
                ranges[ch.u1 as usize].clone(),
                ranges[ch.u2 as usize].clone(),
                ranges[ch.u3 as usize].clone(),
            );
            for v2 in r2.clone() {
                for v1 in r1.clone() {
                    if v1 == v2 {
                        continue;
                    }
                    let c = host.color_pair(v1, v2);
                    let Some(cands) = incident[v2 as usize].get(&c) else {
                        continue;
                    };
                    for &v3 in cands {
                        if v3 != v1 && r3.contains(&v3) {
                            events.push(BadEvent {
                                class: EventClass::Cherry,
                                domain: vec![ch.u1, ch.u2, ch.u3],
                                image: vec![v1, v2, v3],
                            });
                        }
                    }
                }
            }
        }
        if !quads.is_empty() {
            let by_color = edges_by_color(host);
            for q in &quads {
                let (r1, r2, r3, r4) = (
                    ranges[q.u1 as usize].clone(),
                    ranges[q.u2 as usize].clone(),
                    ranges[q.u3 as usize].clone(),
                    ranges[q.u4 as usize].clone(),
                );
                for v1 in r1.clone() {
                    for v2 in r2.clone() {
                        if v1 == v2 {
                            continue;
                        }
                        let c = host.color_pair(v1, v2);
                        for f in &by_color[c as usize] {
                            for (v3, v4) in [(f[0], f[1]), (f[1], f[0])] {
                                if r3.contains(&v3)
                                    && r4.contains(&v4)
                                    && v3 != v1
                                    && v3 != v2
                                    && v4 != v1
                                    && v4 != v2
                                {
                                    events.push(BadEvent {
                                        class: EventClass::Quadruple,
                                        domain: vec![q.u1, q.u2, q.u3, q.u4],
                                        image: vec![v1, v2, v3, v4],
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    } else {
        let r = pattern.uniformity();
        let lo = match mode {
            ColorMode::Proper => 1,
            ColorMode::Rainbow => 0,
        };
        let by_color = edges_by_color(host);
        for i in (lo..r).rev() {
            let pairs = pattern.overlap_pairs(i);
            let work = (pairs.len() as u64)
                .saturating_mul(falling(n, r as u64).try_into().unwrap_or(u64::MAX))
                .saturating_mul(measure.k_global.max(1));
            if work > limit {
                return Err(Error::TooLarge(format!(
                    "event enumeration needs ~{work} steps (limit {limit})"
                )));
            }
            for &(a, b) in &pairs {
                let e1 = &pattern.edges()[a];
                let e2 = &pattern.edges()[b];
                let shared: Vec<Vertex> = e1.iter().copied().filter(|v| e2.contains(v)).collect();
                let only2: Vec<Vertex> = e2.iter().copied().filter(|v| !e1.contains(v)).collect();
                // Canonical domain order: e1 sorted, then e2 \ e1 sorted.
                let domain: Vec<Vertex> = e1.iter().chain(only2.iter()).copied().collect();
                enumerate_pair_events(
                    host,
                    &by_color,
                    e1,
                    &shared,
                    &only2,
                    &domain,
                    i,
                    &mut events,
                );
            }
        }
    }
    if events.len() as u64 > limit {
        return Err(Error::TooLarge(format!(
            "event family has {} events (limit {limit})",
            events.len()
        )));
    }
    Ok(EventFamily {
        shape,
        mode,
        events,
    })
}

/// Enumerates events for one overlapping pattern edge pair: every ordered
/// image of `e1`, every host edge of the same color extending the shared
/// images, and every assignment of the remaining vertices of `e2`.
#[allow(clippy::too_many_arguments)]
fn enumerate_pair_events(
    host: &ColoredHost,
    by_color: &[Vec<Vec<Vertex>>],
    e1: &[Vertex],
    shared: &[Vertex],
    only2: &[Vertex],
    domain: &[Vertex],
    overlap: u32,
    events: &mut Vec<BadEvent>,
) {
    let n = host.shape().vertex_count();
    let r = e1.len();
    // The remaining vertices of e2 (in the order `only2` appears in the
    // canonical domain) map onto the leftover of the second host edge in
    // every permutation.
    debug_assert_eq!(only2.len(), r - shared.len());
    let mut im1: Vec<Vertex> = Vec::with_capacity(r);
    fn rec(
        host: &ColoredHost,
        by_color: &[Vec<Vec<Vertex>>],
        e1: &[Vertex],
        shared: &[Vertex],
        domain: &[Vertex],
        overlap: u32,
        n: Vertex,
        im1: &mut Vec<Vertex>,
        events: &mut Vec<BadEvent>,
    ) {
        let r = e1.len();
        if im1.len() == r {
            let mut sorted1 = im1.clone();
            sorted1.sort_unstable();
            let c = host.color(&sorted1);
            let shared_imgs: Vec<Vertex> = shared
                .iter()
                .map(|u| im1[e1.iter().position(|x| x == u).unwrap()])
                .collect();
            for f in &by_color[c as usize] {
                if !shared_imgs.iter().all(|v| f.contains(v)) {
                    continue;
                }
                let rest: Vec<Vertex> = f
                    .iter()
                    .copied()
                    .filter(|v| !shared_imgs.contains(v))
                    .collect();
                if rest.iter().any(|v| im1.contains(v)) {
                    continue;
                }
                permute_assign(&rest, &mut Vec::new(), &mut |perm| {
                    let mut image = im1.clone();
                    image.extend_from_slice(perm);
                    events.push(BadEvent {
                        class: EventClass::Overlap(overlap),
                        domain: domain.to_vec(),
                        image,
                    });
                });
            }
            return;
        }
        for v in 0..n {
            if !im1.contains(&v) {
                im1.push(v);
                rec(host, by_color, e1, shared, domain, overlap, n, im1, events);
                im1.pop();
            }
        }
    }
    rec(
        host, by_color, e1, shared, domain, overlap, n, &mut im1, events,
    );
}

/// Calls `f` on every permutation of `items`.
fn permute_assign(items: &[Vertex], acc: &mut Vec<Vertex>, f: &mut impl FnMut(&[Vertex])) {
    if acc.len() == items.len() {
        f(acc);
        return;
    }
    for &v in items {
        if !acc.contains(&v) {
            acc.push(v);
            permute_assign(items, acc, f);
            acc.pop();
        }
    }
}

impl EventFamily {
    /// Exact neighbor counts of event `idx`, bucketed by the neighbor's
    /// class and by domain- vs image-intersection. The event itself lands in
    /// its domain bucket.
    pub fn count_intersecting(&self, idx: usize) -> Vec<NeighborCount> {
        let b = &self.events[idx];
        let mut buckets: Vec<(ClassLabel, u64, BigRational)> = Vec::new();
        let mut add = |label: ClassLabel, p: BigRational| {
            if let Some(e) = buckets.iter_mut().find(|(l, ..)| *l == label) {
                e.1 += 1;
                e.2 += p;
            } else {
                buckets.push((label, 1, p));
            }
        };
        for e in &self.events {
            let dom = e.domain.iter().any(|v| b.domain.contains(v));
            let img = !dom && e.image.iter().any(|v| b.image.contains(v));
            if !dom && !img {
                continue;
            }
            let label = match (e.class, dom) {
                (EventClass::Cherry, true) => ClassLabel::CherryDomain,
                (EventClass::Cherry, false) => ClassLabel::CherryImage,
                (EventClass::Quadruple, true) => ClassLabel::QuadrupleDomain,
                (EventClass::Quadruple, false) => ClassLabel::QuadrupleImage,
                (EventClass::Overlap(i), true) => ClassLabel::OverlapDomain(i as u64),
                (EventClass::Overlap(i), false) => ClassLabel::OverlapImage(i as u64),
            };
            add(label, exact_probability(e, &self.shape));
        }
        buckets
            .into_iter()
            .map(|(label, count, prob_sum)| NeighborCount {
                label,
                count,
                prob_sum,
            })
            .collect()
    }
}
