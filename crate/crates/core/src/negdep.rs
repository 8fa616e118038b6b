//! Exhaustive validation of the negative-dependency property for canonical
//! events over small spaces of part-respecting injections.
//!
//! The probability space is the uniform distribution on injections
//! `σ: X → Y` between two partitioned vertex sets with `σ(X_k) ⊆ Y_k` for
//! every part `k`. A [`CanonicalEvent`] pins finitely many domain vertices to
//! prescribed images; two such events *conflict* when they disagree on a
//! shared domain vertex or send different domain vertices to a shared image
//! vertex. Connecting exactly the conflicting pairs yields a negative
//! dependency graph: conditioning an event on the joint avoidance of any set
//! of non-conflicting events can only lower its probability,
//!
//! ```text
//! P(B_i | ∧_{j∈J} ¬B_j) ≤ P(B_i)   whenever no B_j (j ∈ J) conflicts B_i.
//! ```
//!
//! [`verify_negative_dependency`] certifies that inequality by complete
//! enumeration: it lists every injection of the space, materialises each
//! event as a bitset, and cross-multiplies exact counts for every subset `J`
//! of non-conflicting events (up to a configurable budget). Subsets whose
//! avoidance event is empty are skipped — conditioning on a null event proves
//! nothing — and tallied separately.

use serde::{Deserialize, Serialize};

use crate::combin::{inverse_falling, next_subset};
use crate::error::{Error, Result};

use num::BigRational;

/// Hard ceiling on the number of part-respecting injections enumerated.
pub const MAX_SPACE: u64 = 2_000_000;

/// Hard ceiling on the number of events validated in one call.
pub const MAX_EVENTS: usize = 4096;

/// Cap on recorded violations; counting continues after the cap.
const MAX_RECORDED_VIOLATIONS: usize = 64;

/// A two-sided partitioned ground set: domain parts `X_1, …, X_m` and image
/// parts `Y_1, …, Y_m` with `|X_k| ≤ |Y_k|`.
///
/// Domain vertices are numbered part-major: part `k` occupies the contiguous
/// range starting at the sum of the earlier part sizes. Image vertices are
/// numbered the same way, independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InjectionSpace {
    /// Sizes `|X_k|` of the domain parts.
    pub domain_sizes: Vec<u32>,
    /// Sizes `|Y_k|` of the image parts, aligned with `domain_sizes`.
    pub image_sizes: Vec<u32>,
}

impl InjectionSpace {
    /// Validates and constructs a space. Requires at least one part, aligned
    /// part lists, and `|X_k| ≤ |Y_k|` for every `k` (otherwise no injection
    /// exists).
    pub fn new(domain_sizes: Vec<u32>, image_sizes: Vec<u32>) -> Result<Self> {
        let space = InjectionSpace { domain_sizes, image_sizes };
        space.validate()?;
        Ok(space)
    }

    /// Re-checks the structural invariants (useful after deserialization).
    pub fn validate(&self) -> Result<()> {
        if self.domain_sizes.is_empty() {
            return Err(Error::InvalidShape("injection space needs at least one part".into()));
        }
        if self.domain_sizes.len() != self.image_sizes.len() {
            return Err(Error::InvalidShape(format!(
                "domain has {} parts but image has {}",
                self.domain_sizes.len(),
                self.image_sizes.len()
            )));
        }
        for (k, (&x, &y)) in self.domain_sizes.iter().zip(&self.image_sizes).enumerate() {
            if x > y {
                return Err(Error::InvalidShape(format!(
                    "part {k}: domain size {x} exceeds image size {y}; no injection exists"
                )));
            }
        }
        Ok(())
    }

    /// Number of parts `m`.
    pub fn part_count(&self) -> usize {
        self.domain_sizes.len()
    }

    /// Total number of domain vertices.
    pub fn domain_count(&self) -> usize {
        self.domain_sizes.iter().map(|&x| x as usize).sum()
    }

    /// Total number of image vertices.
    pub fn image_count(&self) -> usize {
        self.image_sizes.iter().map(|&y| y as usize).sum()
    }

    /// Part containing domain vertex `x`, or `None` if out of range.
    pub fn part_of_domain(&self, x: u32) -> Option<usize> {
        part_of(&self.domain_sizes, x)
    }

    /// Part containing image vertex `y`, or `None` if out of range.
    pub fn part_of_image(&self, y: u32) -> Option<usize> {
        part_of(&self.image_sizes, y)
    }

    /// Exact number of part-respecting injections: `Π_k (|Y_k|)_{|X_k|}`,
    /// saturating at `u128::MAX`.
    pub fn space_size(&self) -> u128 {
        let mut total: u128 = 1;
        for (&x, &y) in self.domain_sizes.iter().zip(&self.image_sizes) {
            for i in 0..x {
                total = total.saturating_mul((y - i) as u128);
            }
        }
        total
    }

    /// Enumerates every part-respecting injection in a fixed deterministic
    /// order. The callback receives the running index and the injection as a
    /// slice: entry `x` is the image vertex (global numbering) of domain
    /// vertex `x`.
    ///
    /// Refuses spaces larger than [`MAX_SPACE`].
    pub fn for_each_injection<F: FnMut(u64, &[u32])>(&self, mut f: F) -> Result<u64> {
        self.validate()?;
        let total = self.space_size();
        if total > MAX_SPACE as u128 {
            return Err(Error::TooLarge(format!(
                "{total} part-respecting injections exceed the enumeration limit {MAX_SPACE}"
            )));
        }
        let m = self.part_count();
        let arrangements: Vec<Vec<Vec<u32>>> =
            (0..m).map(|k| self.part_arrangements(k)).collect();
        let mut odometer = vec![0usize; m];
        let mut injection = vec![0u32; self.domain_count()];
        let mut index = 0u64;
        loop {
            let mut pos = 0;
            for (k, slot) in odometer.iter().enumerate() {
                let arr = &arrangements[k][*slot];
                injection[pos..pos + arr.len()].copy_from_slice(arr);
                pos += arr.len();
            }
            f(index, &injection);
            index += 1;
            // Advance the odometer, last part fastest.
            let mut k = m;
            loop {
                if k == 0 {
                    debug_assert_eq!(index as u128, total);
                    return Ok(index);
                }
                k -= 1;
                odometer[k] += 1;
                if odometer[k] < arrangements[k].len() {
                    break;
                }
                odometer[k] = 0;
            }
        }
    }

    /// All ordered selections of `|X_k|` distinct image vertices from image
    /// part `k`, in lexicographic order. A part with empty domain contributes
    /// the single empty arrangement.
    fn part_arrangements(&self, k: usize) -> Vec<Vec<u32>> {
        let want = self.domain_sizes[k] as usize;
        let offset: u32 = self.image_sizes[..k].iter().sum();
        let pool: Vec<u32> = (offset..offset + self.image_sizes[k]).collect();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(want);
        fn rec(pool: &[u32], want: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if current.len() == want {
                out.push(current.clone());
                return;
            }
            for &y in pool {
                if current.contains(&y) {
                    continue;
                }
                current.push(y);
                rec(pool, want, current, out);
                current.pop();
            }
        }
        rec(&pool, want, &mut current, &mut out);
        out
    }
}

fn part_of(sizes: &[u32], v: u32) -> Option<usize> {
    let mut start = 0u32;
    for (k, &len) in sizes.iter().enumerate() {
        if v < start + len {
            return Some(k);
        }
        start += len;
    }
    None
}

/// A canonical event `Ω(T, U, τ)`: the set of injections extending a fixed
/// part-respecting partial bijection `τ: T → U`.
///
/// Stored as the graph of `τ` — pairs `(x, y)` sorted by domain vertex with
/// distinct domain vertices and distinct image vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalEvent {
    pairs: Vec<(u32, u32)>,
}

impl CanonicalEvent {
    /// Builds an event from the graph of `τ`. Rejects repeated domain or
    /// image vertices (the partial map must be a bijection onto its image).
    /// The empty list is allowed and denotes the full space.
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Result<Self> {
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidShape(format!(
                    "domain vertex {} is constrained twice",
                    w[0].0
                )));
            }
        }
        let mut images: Vec<u32> = pairs.iter().map(|&(_, y)| y).collect();
        images.sort_unstable();
        for w in images.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidShape(format!(
                    "image vertex {} is used twice",
                    w[0]
                )));
            }
        }
        Ok(CanonicalEvent { pairs })
    }

    /// The constrained pairs `(x, τ(x))` in increasing domain order.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Checks that every pair stays inside `space` and respects its parts:
    /// `x` and `τ(x)` must lie in parts of the same index.
    pub fn validate_for(&self, space: &InjectionSpace) -> Result<()> {
        for &(x, y) in &self.pairs {
            let px = space.part_of_domain(x).ok_or_else(|| {
                Error::InvalidShape(format!("domain vertex {x} outside the space"))
            })?;
            let py = space.part_of_image(y).ok_or_else(|| {
                Error::InvalidShape(format!("image vertex {y} outside the space"))
            })?;
            if px != py {
                return Err(Error::InvalidShape(format!(
                    "pair ({x}, {y}) maps part {px} into part {py}; not part-respecting"
                )));
            }
        }
        Ok(())
    }

    /// Whether the injection (as produced by `for_each_injection`) extends τ.
    pub fn holds(&self, injection: &[u32]) -> bool {
        self.pairs.iter().all(|&(x, y)| injection[x as usize] == y)
    }

    /// Conflict test: some shared domain vertex with different images, or
    /// some shared image vertex with different preimages. Conflicting events
    /// are disjoint; agreeing overlaps do not conflict.
    pub fn conflicts(&self, other: &CanonicalEvent) -> bool {
        for &(x1, y1) in &self.pairs {
            for &(x2, y2) in &other.pairs {
                if (x1 == x2 && y1 != y2) || (y1 == y2 && x1 != x2) {
                    return true;
                }
            }
        }
        false
    }

    /// Closed-form probability `Π_k 1/(|Y_k|)_{t_k}` where `t_k` counts the
    /// constrained domain vertices in part `k`.
    pub fn probability(&self, space: &InjectionSpace) -> Result<BigRational> {
        self.validate_for(space)?;
        let mut per_part = vec![0u64; space.part_count()];
        for &(x, _) in &self.pairs {
            per_part[space.part_of_domain(x).expect("validated")] += 1;
        }
        let mut p = BigRational::from_integer(1.into());
        for (k, &t) in per_part.iter().enumerate() {
            p *= inverse_falling(space.image_sizes[k] as u64, t)?;
        }
        Ok(p)
    }
}

/// Every single-pair canonical event of the space: one event per
/// part-respecting pair `(x, y)`, ordered by domain then image vertex.
pub fn all_single_pair_events(space: &InjectionSpace) -> Vec<CanonicalEvent> {
    let mut events = Vec::new();
    let mut dom_off = 0u32;
    let mut img_off = 0u32;
    for (&dx, &dy) in space.domain_sizes.iter().zip(&space.image_sizes) {
        for x in dom_off..dom_off + dx {
            for y in img_off..img_off + dy {
                events.push(CanonicalEvent { pairs: vec![(x, y)] });
            }
        }
        dom_off += dx;
        img_off += dy;
    }
    events
}

/// One failed comparison `P(B_i | ∧_{j∈J} ¬B_j) > P(B_i)`, with the exact
/// counts that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NegDepViolation {
    /// Index of the conditioned event `B_i`.
    pub event: usize,
    /// Indices `J` of the avoided events.
    pub conditioned_on: Vec<usize>,
    /// `|B_i ∩ ∧¬B_j|`.
    pub joint_count: u64,
    /// `|∧¬B_j|`.
    pub excluded_count: u64,
    /// `|B_i|`.
    pub event_count: u64,
    /// Conditional probability as a reduced fraction string.
    pub conditional: String,
    /// Marginal probability as a reduced fraction string.
    pub marginal: String,
}

/// Outcome of [`verify_negative_dependency`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NegDepReport {
    /// Number of part-respecting injections in the space.
    pub space_size: u64,
    /// Number of events supplied.
    pub event_count: usize,
    /// Number of unordered conflicting pairs among the events.
    pub conflict_pairs: u64,
    /// Comparisons actually performed (subsets with non-null avoidance).
    pub checked_subsets: u64,
    /// Subsets skipped because `P(∧¬B_j) = 0` — nothing to prove there.
    pub skipped_null: u64,
    /// Whether every subset of non-conflicting events was visited for every
    /// event, i.e. the budget was never exhausted.
    pub exhaustive: bool,
    /// Total violations found (may exceed `violations.len()` if capped).
    pub violation_count: u64,
    /// Witnessed violations, capped at a small number.
    pub violations: Vec<NegDepViolation>,
}

/// Fixed-length bitset over the injection space.
#[derive(Clone)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn zeros(len: u64) -> Self {
        Bitset { words: vec![0; len.div_ceil(64) as usize] }
    }

    fn ones(len: u64) -> Self {
        let mut b = Bitset { words: vec![u64::MAX; len.div_ceil(64) as usize] };
        let tail = (len % 64) as u32;
        if tail != 0 {
            if let Some(last) = b.words.last_mut() {
                *last = (1u64 << tail) - 1;
            }
        }
        b
    }

    fn set(&mut self, idx: u64) {
        self.words[(idx / 64) as usize] |= 1u64 << (idx % 64);
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn and_count(&self, other: &Bitset) -> u64 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    fn and_not_assign(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

fn fraction(num: u64, den: u64) -> String {
    if den == 0 {
        return "0/0".into();
    }
    let g = num::integer::gcd(num, den).max(1);
    format!("{}/{}", num / g, den / g)
}

/// Exhaustively certifies the negative-dependency inequality on a small
/// space.
///
/// For every event `B_i` and every subset `J` of the events that do not
/// conflict with `B_i` (excluding `i` itself), the check compares exact
/// counts by cross-multiplication:
///
/// ```text
/// |B_i ∩ ∧_{j∈J} ¬B_j| · |S|  ≤  |B_i| · |∧_{j∈J} ¬B_j|
/// ```
///
/// Subsets are visited per event in increasing size, lexicographically
/// within a size. `exhaust_limit` bounds the total number of subsets visited
/// (checked or skipped); when the budget runs out the report is marked
/// non-exhaustive. Subsets with `|∧¬B_j| = 0` are skipped and tallied in
/// `skipped_null`.
///
/// Errors with `too-large` if the space exceeds [`MAX_SPACE`] injections or
/// more than [`MAX_EVENTS`] events are supplied.
pub fn verify_negative_dependency(
    space: &InjectionSpace,
    events: &[CanonicalEvent],
    exhaust_limit: u64,
) -> Result<NegDepReport> {
    space.validate()?;
    if events.len() > MAX_EVENTS {
        return Err(Error::TooLarge(format!(
            "{} events exceed the validation limit {MAX_EVENTS}",
            events.len()
        )));
    }
    for ev in events {
        ev.validate_for(space)?;
    }

    // Materialise each event as a bitset over the enumerated injections.
    let size_bound = space.space_size();
    if size_bound > MAX_SPACE as u128 {
        return Err(Error::TooLarge(format!(
            "{size_bound} part-respecting injections exceed the enumeration limit {MAX_SPACE}"
        )));
    }
    let total_hint = size_bound as u64;
    let mut bits: Vec<Bitset> = (0..events.len()).map(|_| Bitset::zeros(total_hint)).collect();
    let total = space.for_each_injection(|idx, injection| {
        for (bitset, event) in bits.iter_mut().zip(events) {
            if event.holds(injection) {
                bitset.set(idx);
            }
        }
    })?;
    let counts: Vec<u64> = bits.iter().map(Bitset::count).collect();

    // Conflict graph.
    let mut conflict_pairs = 0u64;
    let mut conflicts_with: Vec<Vec<bool>> = vec![vec![false; events.len()]; events.len()];
    for i in 0..events.len() {
        for j in i + 1..events.len() {
            if events[i].conflicts(&events[j]) {
                conflict_pairs += 1;
                conflicts_with[i][j] = true;
                conflicts_with[j][i] = true;
            }
        }
    }

    let mut checked = 0u64;
    let mut skipped = 0u64;
    let mut violation_count = 0u64;
    let mut violations = Vec::new();
    let mut exhaustive = true;

    'events: for i in 0..events.len() {
        let others: Vec<usize> = (0..events.len())
            .filter(|&j| j != i && !conflicts_with[i][j])
            .collect();
        for size in 0..=others.len() {
            let mut selector: Vec<u32> = (0..size as u32).collect();
            loop {
                if checked + skipped >= exhaust_limit {
                    exhaustive = false;
                    break 'events;
                }
                let mut avoid = Bitset::ones(total);
                for &s in &selector {
                    avoid.and_not_assign(&bits[others[s as usize]]);
                }
                let excluded = avoid.count();
                if excluded == 0 {
                    skipped += 1;
                } else {
                    checked += 1;
                    let joint = avoid.and_count(&bits[i]);
                    if joint as u128 * total as u128 > counts[i] as u128 * excluded as u128 {
                        violation_count += 1;
                        if violations.len() < MAX_RECORDED_VIOLATIONS {
                            violations.push(NegDepViolation {
                                event: i,
                                conditioned_on: selector
                                    .iter()
                                    .map(|&s| others[s as usize])
                                    .collect(),
                                joint_count: joint,
                                excluded_count: excluded,
                                event_count: counts[i],
                                conditional: fraction(joint, excluded),
                                marginal: fraction(counts[i], total),
                            });
                        }
                    }
                }
                if size == 0 || !next_subset(&mut selector, others.len() as u32) {
                    break;
                }
            }
        }
    }

    Ok(NegDepReport {
        space_size: total,
        event_count: events.len(),
        conflict_pairs,
        checked_subsets: checked,
        skipped_null: skipped,
        exhaustive,
        violation_count,
        violations,
    })
}
