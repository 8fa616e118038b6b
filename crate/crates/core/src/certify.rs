//! Local-lemma certificates in exact rational arithmetic.
//!
//! A certificate works at the level of an *event family*: an abstract
//! description (host size, color bound `k`, pattern degree statistics) of
//! the bad events whose joint avoidance turns a uniform part-respecting
//! injection into a properly colored or rainbow embedding. The asymmetric
//! local lemma applies when every event has probability at most 1/4 and the
//! probabilities over any event's neighborhood in the negative dependency
//! graph sum to at most 1/4.
//!
//! Bad events come in classes. For 2-uniform hosts these are monochromatic
//! *cherries* (paths of length two with equal edge colors) and, in rainbow
//! mode, monochromatic *quadruples* (disjoint equal-colored edge pairs); for
//! `r`-uniform hosts there is one class per overlap size `i` (edge pairs
//! sharing exactly `i` vertices, `1 <= i <= ell` in proper mode, plus `i = 0`
//! in rainbow mode). Each class splits further by whether a neighboring
//! event intersects on the pattern side ("domain") or the host side
//! ("image"). Per class the certificate records an upper bound on how many
//! neighbors an event can have and on each one's probability; their products
//! sum to `classSum`. The headline `neighborhoodSumBound` is the closed-form
//! relaxation of that sum — `12 delta^2 k / n` (proper) and
//! `55/2 delta^2 k / n` (rainbow) for graphs, and
//! `A * delta_1 * delta_ell * k / n^(r-ell)` for hypergraphs, where `A` is
//! the fully explicit constant assembled in [`relaxed_constant`] — and the
//! certificate passes exactly when the per-event bound and the headline are
//! both at most 1/4. The relaxations are only valid from a minimum host size
//! upward (`n >= 4` proper / `n >= 5` rainbow for graphs, `n >= 4r-4` /
//! `n >= 4r-2` for hypergraphs); smaller hosts are refused as degenerate.
//!
//! Boundedness thresholds are the largest `k` the headline tolerates:
//! `floor(n / (48 delta^2))` and `floor(n / (110 delta^2))` for graphs, and
//! `floor(c * n^(r-ell) / (delta_1 * delta_ell))` for hypergraphs with the
//! derived coefficient `c = 1 / (4A)` (overridable).

use std::fmt;

use num::{BigInt, BigRational, BigUint, One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::combin::{big_binomial, factorial, falling, inverse_falling};
use crate::error::{Error, Result};
use crate::host::BoundMode;

/// Target coloring discipline of the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorMode {
    /// No two edges sharing a vertex carry the same color.
    Proper,
    /// All edges carry pairwise distinct colors.
    Rainbow,
}

/// Degree statistics of a graph event family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFamily {
    /// Number of host parts (the certificate arithmetic is independent of
    /// it, but it documents the instance and is validated).
    pub m: u64,
    /// Host part size.
    pub n: u64,
    /// Maximum degree of the pattern.
    pub delta: u64,
}

/// Degree statistics of a hypergraph event family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperFamily {
    /// Host vertex count.
    pub n: u64,
    /// Uniformity.
    pub r: u64,
    /// Linearity parameter: pattern edges pairwise share at most `ell`
    /// vertices.
    pub ell: u64,
    /// Maximum vertex degree of the pattern.
    pub delta1: u64,
    /// Maximum `ell`-degree of the pattern.
    pub delta_ell: u64,
}

/// The shape half of an event family description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyShape {
    Graph(GraphFamily),
    Hypergraph(HyperFamily),
}

/// Abstract description of a bad-event family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventFamilySpec {
    pub mode: ColorMode,
    /// How the coloring is `k`-bounded. Rainbow certificates require global
    /// boundedness; proper certificates accept either (global implies
    /// local).
    pub bound: BoundMode,
    pub k: u64,
    pub family: FamilyShape,
}

impl EventFamilySpec {
    /// Structural validation of the family description.
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidShape("bound k must be >= 1".into()));
        }
        if self.mode == ColorMode::Rainbow && self.bound == BoundMode::Local {
            return Err(Error::InvalidShape(
                "rainbow certificates need a globally bounded coloring".into(),
            ));
        }
        match self.family {
            FamilyShape::Graph(GraphFamily { m, n, delta }) => {
                if m < 2 {
                    return Err(Error::InvalidShape(format!("need m >= 2 parts, got {m}")));
                }
                if n == 0 {
                    return Err(Error::InvalidShape("part size n must be >= 1".into()));
                }
                if delta == 0 {
                    return Err(Error::InvalidShape(
                        "certificates need a pattern with edges (delta >= 1)".into(),
                    ));
                }
            }
            FamilyShape::Hypergraph(HyperFamily {
                n,
                r,
                ell,
                delta1,
                delta_ell,
            }) => {
                if r < 2 || n < r {
                    return Err(Error::InvalidShape(format!(
                        "need 2 <= r <= n, got r={r}, n={n}"
                    )));
                }
                if ell == 0 || ell >= r {
                    return Err(Error::InvalidShape(format!(
                        "need 1 <= ell <= r-1, got ell={ell}, r={r}"
                    )));
                }
                if delta_ell == 0 || delta1 < delta_ell {
                    return Err(Error::InvalidShape(format!(
                        "need delta1 >= delta_ell >= 1, got {delta1}, {delta_ell}"
                    )));
                }
                if ell == 1 && delta1 != delta_ell {
                    return Err(Error::InvalidShape(
                        "ell = 1 makes delta_ell the vertex degree; it must equal delta1".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Probability classes of canonical bad events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbClass {
    /// Monochromatic cherry image in a 2-uniform host of part size `n`.
    Cherry,
    /// Monochromatic quadruple image in a 2-uniform host.
    Quadruple,
    /// Equal-colored pair of `r`-edges sharing `i` vertices in `K_n^(r)`.
    Overlap { r: u64, i: u64 },
}

/// Probability (bound) of a single canonical event under the uniform random
/// part-respecting injection.
///
/// Cherries: the three support vertices need `n * n * (n-1)` placements in
/// the worst part split (both leaves sharing a part), so the bound is
/// `1 / (n^2 (n-1))`. Quadruples: worst split is two pairs sharing parts,
/// `1 / (n^2 (n-1)^2)`. Overlap-`i` pairs fix `2r - i` images inside one
/// part, exactly `1 / (n)_(2r-i)`. Errors `degenerate-dims` when a factor
/// would be non-positive.
pub fn event_probability(class: ProbClass, n: u64) -> Result<BigRational> {
    let one_over = |d: BigUint| BigRational::new(BigInt::one(), BigInt::from(d));
    match class {
        ProbClass::Cherry => {
            if n < 2 {
                return Err(Error::DegenerateDims(format!(
                    "cherry events need n >= 2, got {n}"
                )));
            }
            Ok(one_over(BigUint::from(n * n) * BigUint::from(n - 1)))
        }
        ProbClass::Quadruple => {
            if n < 2 {
                return Err(Error::DegenerateDims(format!(
                    "quadruple events need n >= 2, got {n}"
                )));
            }
            Ok(one_over(
                BigUint::from(n * n) * BigUint::from((n - 1) * (n - 1)),
            ))
        }
        ProbClass::Overlap { r, i } => {
            if r < 2 || i >= r {
                return Err(Error::InvalidShape(format!(
                    "overlap class needs 0 <= i < r and r >= 2, got i={i}, r={r}"
                )));
            }
            inverse_falling(n, 2 * r - i)
        }
    }
}

/// Identifies a neighbor class in a certificate breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "overlap")]
pub enum ClassLabel {
    CherryDomain,
    CherryImage,
    QuadrupleDomain,
    QuadrupleImage,
    OverlapDomain(u64),
    OverlapImage(u64),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::CherryDomain => write!(f, "cherry-domain"),
            ClassLabel::CherryImage => write!(f, "cherry-image"),
            ClassLabel::QuadrupleDomain => write!(f, "quadruple-domain"),
            ClassLabel::QuadrupleImage => write!(f, "quadruple-image"),
            ClassLabel::OverlapDomain(i) => write!(f, "overlap{i}-domain"),
            ClassLabel::OverlapImage(i) => write!(f, "overlap{i}-image"),
        }
    }
}

/// Per-class neighbor bound: at most `count` neighboring events, each of
/// probability at most `prob`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassBound {
    pub label: ClassLabel,
    pub count: BigUint,
    pub prob: BigRational,
}

impl ClassBound {
    /// `count * prob`, this class's contribution to the neighborhood sum.
    pub fn contribution(&self) -> BigRational {
        BigRational::from(BigInt::from(self.count.clone())) * &self.prob
    }
}

/// Best available bound on the pattern's `i`-degree given `delta1` and
/// `delta_ell`: subset monotonicity (`delta_i <= delta_1` for `i >= 1`) and
/// the downward cascade `delta_(i-1) <= (n-i+1) delta_i` iterated from
/// `ell`.
fn delta_i_bound(i: u64, n: u64, ell: u64, delta1: u64, delta_ell: u64) -> BigUint {
    let mut casc = BigUint::from(delta_ell);
    for j in i + 1..=ell {
        casc *= BigUint::from(n - j + 1);
    }
    if i >= 1 {
        casc.min(BigUint::from(delta1))
    } else {
        casc.min(BigUint::from(delta1) * BigUint::from(n))
    }
}

/// Per-class upper bounds on the number of events intersecting a fixed bad
/// event on the pattern side (domain) and host side (image), paired with the
/// per-event probability bounds.
///
/// Graph families use the cherry counts `9/2 delta (delta-1) n^2 k` (proper;
/// `6 delta (delta-1) n^2 k` in rainbow mode, where the support has four
/// vertices instead of three) and the quadruple count `4 delta^2 n^3 k`.
/// Hypergraph families use, per overlap size `i` and side,
/// `s * delta_1 * C(r,i) * (r-i)! * delta_i * k * (n)_r`
/// where `s` bounds the support size (`2r - 1` proper, `2r` rainbow) and
/// `delta_i` is replaced by [`delta_i_bound`].
pub fn intersection_count_bounds(spec: &EventFamilySpec) -> Result<Vec<ClassBound>> {
    spec.validate()?;
    let k = BigUint::from(spec.k);
    let mut out = Vec::new();
    match spec.family {
        FamilyShape::Graph(GraphFamily { n, delta, .. }) => {
            let cherry_prob = event_probability(ProbClass::Cherry, n)?;
            // delta (delta - 1) is even, so the halved count is an integer.
            let per_vertex_cherries = BigUint::from(delta) * BigUint::from(delta - 1) * 3u32 / 2u32;
            let support = match spec.mode {
                ColorMode::Proper => 3u32,
                ColorMode::Rainbow => 4u32,
            };
            let cherry_count =
                per_vertex_cherries * support * BigUint::from(n) * BigUint::from(n) * &k;
            out.push(ClassBound {
                label: ClassLabel::CherryDomain,
                count: cherry_count.clone(),
                prob: cherry_prob.clone(),
            });
            out.push(ClassBound {
                label: ClassLabel::CherryImage,
                count: cherry_count,
                prob: cherry_prob,
            });
            if spec.mode == ColorMode::Rainbow {
                let quad_prob = event_probability(ProbClass::Quadruple, n)?;
                let quad_count = BigUint::from(4u32)
                    * BigUint::from(delta)
                    * BigUint::from(delta)
                    * BigUint::from(n).pow(3)
                    * &k;
                out.push(ClassBound {
                    label: ClassLabel::QuadrupleDomain,
                    count: quad_count.clone(),
                    prob: quad_prob.clone(),
                });
                out.push(ClassBound {
                    label: ClassLabel::QuadrupleImage,
                    count: quad_count,
                    prob: quad_prob,
                });
            }
        }
        FamilyShape::Hypergraph(HyperFamily {
            n,
            r,
            ell,
            delta1,
            delta_ell,
        }) => {
            let support = match spec.mode {
                ColorMode::Proper => 2 * r - 1,
                ColorMode::Rainbow => 2 * r,
            };
            let lo = match spec.mode {
                ColorMode::Proper => 1,
                ColorMode::Rainbow => 0,
            };
            for i in lo..=ell {
                let count = BigUint::from(support)
                    * BigUint::from(delta1)
                    * big_binomial(r, i)
                    * factorial(r - i)
                    * delta_i_bound(i, n, ell, delta1, delta_ell)
                    * &k
                    * falling(n, r);
                let prob = event_probability(ProbClass::Overlap { r, i }, n)?;
                out.push(ClassBound {
                    label: ClassLabel::OverlapDomain(i),
                    count: count.clone(),
                    prob: prob.clone(),
                });
                out.push(ClassBound {
                    label: ClassLabel::OverlapImage(i),
                    count,
                    prob,
                });
            }
        }
    }
    Ok(out)
}

/// The fully explicit constant `A` in the hypergraph headline bound
/// `A * delta_1 * delta_ell * k / n^(r-ell)`:
/// `A = sum_i 2 s C(r,i) (r-i)! 2^(2r-i)` over the mode's overlap sizes,
/// with `s = 2r - 1` (proper) or `2r` (rainbow). It arises from the class
/// counts by `delta_i <= n^(ell-i) delta_ell` (cascade), `(n)_r <= n^r`, and
/// `n^m / (n)_m <= 2^m` for `n >= 2m - 2`.
pub fn relaxed_constant(mode: ColorMode, r: u64, ell: u64) -> BigUint {
    let support = match mode {
        ColorMode::Proper => 2 * r - 1,
        ColorMode::Rainbow => 2 * r,
    };
    let lo = match mode {
        ColorMode::Proper => 1,
        ColorMode::Rainbow => 0,
    };
    let mut a = BigUint::ZERO;
    for i in lo..=ell {
        a += BigUint::from(2 * support)
            * big_binomial(r, i)
            * factorial(r - i)
            * (BigUint::one() << (2 * r - i) as usize);
    }
    a
}

/// The derived threshold coefficient `c = 1 / (4A)` for hypergraph
/// thresholds.
pub fn derived_coefficient(mode: ColorMode, r: u64, ell: u64) -> BigRational {
    BigRational::new(
        BigInt::one(),
        BigInt::from(relaxed_constant(mode, r, ell) * BigUint::from(4u32)),
    )
}

fn floor_to_u64(x: &BigRational) -> u64 {
    x.floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Largest `k` certified for graph families: `floor(n / (48 delta^2))`
/// (proper) or `floor(n / (110 delta^2))` (rainbow).
pub fn graph_threshold_k(mode: ColorMode, n: u64, delta: u64) -> Result<u64> {
    if delta == 0 {
        return Err(Error::InvalidShape("delta must be >= 1".into()));
    }
    let div = match mode {
        ColorMode::Proper => 48,
        ColorMode::Rainbow => 110,
    };
    Ok(n / (div * delta * delta))
}

/// Largest `k` certified for hypergraph families:
/// `floor(c * n^(r-ell) / (delta1 * delta_ell))`, with `c` defaulting to the
/// derived coefficient of the mode.
pub fn hyper_threshold_k(
    mode: ColorMode,
    n: u64,
    r: u64,
    ell: u64,
    delta1: u64,
    delta_ell: u64,
    coefficient: Option<&BigRational>,
) -> Result<u64> {
    if r < 2 || ell == 0 || ell >= r {
        return Err(Error::InvalidShape(format!(
            "need 2 <= r and 1 <= ell <= r-1, got r={r}, ell={ell}"
        )));
    }
    if delta1 == 0 || delta_ell == 0 {
        return Err(Error::InvalidShape("degrees must be >= 1".into()));
    }
    let c = match coefficient {
        Some(c) => c.clone(),
        None => derived_coefficient(mode, r, ell),
    };
    let num = c * BigRational::from(BigInt::from(BigUint::from(n).pow((r - ell) as u32)));
    let denom = BigRational::from(BigInt::from(delta1) * BigInt::from(delta_ell));
    Ok(floor_to_u64(&(num / denom)))
}

/// Threshold for an event family, using derived hypergraph coefficients.
pub fn threshold_k(spec: &EventFamilySpec) -> Result<u64> {
    spec.validate()?;
    match spec.family {
        FamilyShape::Graph(GraphFamily { n, delta, .. }) => {
            graph_threshold_k(spec.mode, n, delta)
        }
        FamilyShape::Hypergraph(HyperFamily {
            n,
            r,
            ell,
            delta1,
            delta_ell,
        }) => hyper_threshold_k(spec.mode, n, r, ell, delta1, delta_ell, None),
    }
}

/// A fully evaluated local-lemma certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LllCertificate {
    pub spec: EventFamilySpec,
    /// Upper bound on the probability of any single bad event.
    pub per_event_prob_bound: BigRational,
    /// Closed-form headline bound on any event's neighborhood probability
    /// sum; this is what `passes` checks against 1/4.
    pub neighborhood_sum_bound: BigRational,
    /// The tighter sum of the per-class contributions (always at most the
    /// headline; recorded for transparency).
    pub class_sum: BigRational,
    pub classes: Vec<ClassBound>,
    /// The boundedness threshold for this family (derived coefficients).
    pub threshold_k: u64,
    pub passes: bool,
}

/// Evaluates the certificate for an event family.
///
/// Errors `degenerate-dims` when the host is too small for the headline
/// relaxation to be sound: graphs need `n >= 4` (proper) or `n >= 5`
/// (rainbow); hypergraphs need `n >= 4r - 4` (proper) or `n >= 4r - 2`
/// (rainbow).
pub fn certify(spec: &EventFamilySpec) -> Result<LllCertificate> {
    spec.validate()?;
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let k = BigInt::from(spec.k);
    let (per_event, headline) = match spec.family {
        FamilyShape::Graph(GraphFamily { n, delta, .. }) => {
            let (min_n, factor) = match spec.mode {
                ColorMode::Proper => (4, BigRational::from(BigInt::from(12))),
                ColorMode::Rainbow => (5, BigRational::new(BigInt::from(55), BigInt::from(2))),
            };
            if n < min_n {
                return Err(Error::DegenerateDims(format!(
                    "headline relaxation needs n >= {min_n}, got {n}"
                )));
            }
            let headline = factor * BigRational::new(
                BigInt::from(delta * delta) * &k,
                BigInt::from(n),
            );
            (event_probability(ProbClass::Cherry, n)?, headline)
        }
        FamilyShape::Hypergraph(HyperFamily {
            n,
            r,
            ell,
            delta1,
            delta_ell,
        }) => {
            let min_n = match spec.mode {
                ColorMode::Proper => 4 * r - 4,
                ColorMode::Rainbow => 4 * r - 2,
            };
            if n < min_n.max(r) {
                return Err(Error::DegenerateDims(format!(
                    "headline relaxation needs n >= {}, got {n}",
                    min_n.max(r)
                )));
            }
            let a = relaxed_constant(spec.mode, r, ell);
            let headline = BigRational::new(
                BigInt::from(a) * BigInt::from(delta1) * BigInt::from(delta_ell) * &k,
                BigInt::from(BigUint::from(n).pow((r - ell) as u32)),
            );
            // The largest per-event probability is the heaviest overlap.
            (event_probability(ProbClass::Overlap { r, i: ell }, n)?, headline)
        }
    };
    let classes = intersection_count_bounds(spec)?;
    let class_sum: BigRational = classes
        .iter()
        .map(ClassBound::contribution)
        .fold(BigRational::from(BigInt::ZERO), |acc, c| acc + c);
    debug_assert!(
        class_sum <= headline,
        "class sum {class_sum} exceeds headline {headline}"
    );
    let passes = per_event <= quarter && headline <= quarter;
    Ok(LllCertificate {
        spec: *spec,
        per_event_prob_bound: per_event,
        neighborhood_sum_bound: headline,
        class_sum,
        classes,
        threshold_k: threshold_k(spec)?,
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_spec(mode: ColorMode, bound: BoundMode, n: u64, delta: u64, k: u64) -> EventFamilySpec {
        EventFamilySpec {
            mode,
            bound,
            k,
            family: FamilyShape::Graph(GraphFamily { m: 2, n, delta }),
        }
    }

    fn hyper_spec(mode: ColorMode, n: u64, r: u64, ell: u64, d1: u64, dl: u64, k: u64) -> EventFamilySpec {
        EventFamilySpec {
            mode,
            bound: BoundMode::Global,
            k,
            family: FamilyShape::Hypergraph(HyperFamily {
                n,
                r,
                ell,
                delta1: d1,
                delta_ell: dl,
            }),
        }
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn event_probabilities_match_closed_forms() {
        assert_eq!(event_probability(ProbClass::Cherry, 5).unwrap(), rat(1, 100));
        assert_eq!(
            event_probability(ProbClass::Quadruple, 5).unwrap(),
            rat(1, 400)
        );
        // Overlap i=2, r=3: 2r-i = 4 falling factors, 10*9*8*7.
        assert_eq!(
            event_probability(ProbClass::Overlap { r: 3, i: 2 }, 10).unwrap(),
            rat(1, 5040)
        );
        assert_eq!(
            event_probability(ProbClass::Overlap { r: 3, i: 1 }, 10).unwrap(),
            rat(1, 10 * 9 * 8 * 7 * 6)
        );
        assert!(event_probability(ProbClass::Cherry, 1).is_err());
        assert!(event_probability(ProbClass::Overlap { r: 2, i: 0 }, 3).is_err());
        assert!(event_probability(ProbClass::Overlap { r: 2, i: 2 }, 9).is_err());
    }

    #[test]
    fn graph_thresholds() {
        assert_eq!(graph_threshold_k(ColorMode::Proper, 192, 2).unwrap(), 1);
        assert_eq!(graph_threshold_k(ColorMode::Proper, 4320, 3).unwrap(), 10);
        assert_eq!(graph_threshold_k(ColorMode::Rainbow, 192, 2).unwrap(), 0);
        assert_eq!(graph_threshold_k(ColorMode::Rainbow, 1100, 1).unwrap(), 10);
        assert!(graph_threshold_k(ColorMode::Proper, 10, 0).is_err());
    }

    #[test]
    fn proper_certificate_at_exact_boundary() {
        // 12 * 4 * 1 / 192 = 1/4 exactly: passes.
        let cert = certify(&graph_spec(ColorMode::Proper, BoundMode::Local, 192, 2, 1)).unwrap();
        assert_eq!(cert.neighborhood_sum_bound, rat(1, 4));
        assert!(cert.passes);
        assert_eq!(cert.threshold_k, 1);
        // k = 50 blows past the boundary.
        let cert = certify(&graph_spec(ColorMode::Proper, BoundMode::Local, 192, 2, 50)).unwrap();
        assert_eq!(cert.neighborhood_sum_bound, rat(25, 2));
        assert!(!cert.passes);
    }

    #[test]
    fn class_sum_never_exceeds_headline() {
        for n in [4, 5, 16, 100, 383] {
            for delta in [1, 2, 5] {
                for k in [1, 3, 10] {
                    let c =
                        certify(&graph_spec(ColorMode::Proper, BoundMode::Local, n, delta, k))
                            .unwrap();
                    assert!(c.class_sum <= c.neighborhood_sum_bound);
                    if n >= 5 {
                        let c = certify(&graph_spec(
                            ColorMode::Rainbow,
                            BoundMode::Global,
                            n,
                            delta,
                            k,
                        ))
                        .unwrap();
                        assert!(c.class_sum <= c.neighborhood_sum_bound);
                    }
                }
            }
        }
        for (n, r, ell, d1, dl) in [(10, 3, 2, 4, 2), (12, 3, 1, 3, 3), (20, 4, 2, 6, 2)] {
            for mode in [ColorMode::Proper, ColorMode::Rainbow] {
                let c = certify(&hyper_spec(mode, n, r, ell, d1, dl, 2)).unwrap();
                assert!(
                    c.class_sum <= c.neighborhood_sum_bound,
                    "exceeded for {mode:?} n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn certificate_at_threshold_passes_and_is_monotone() {
        for (mode, bound, n, delta) in [
            (ColorMode::Proper, BoundMode::Local, 192, 2u64),
            (ColorMode::Proper, BoundMode::Local, 4320, 3),
            (ColorMode::Rainbow, BoundMode::Global, 1100, 1),
            (ColorMode::Rainbow, BoundMode::Global, 9000, 4),
        ] {
            let t = graph_threshold_k(mode, n, delta).unwrap();
            assert!(t >= 1, "pick parameters with a positive threshold");
            assert!(certify(&graph_spec(mode, bound, n, delta, t)).unwrap().passes);
            // Monotone decreasing in k; first failure right above threshold.
            let mut last = true;
            for k in 1..=(4 * t + 2) {
                let passes = certify(&graph_spec(mode, bound, n, delta, k)).unwrap().passes;
                assert!(!(passes && !last), "passes not monotone at k={k}");
                assert_eq!(passes, k <= t, "threshold mismatch at k={k}");
                last = passes;
            }
        }
    }

    #[test]
    fn hyper_threshold_consistent_with_certificate() {
        // r=3, ell=2 proper: A = sum over i=1,2 of 2*5*C(3,i)(3-i)! 2^(6-i)
        //   = 10*(3*2*32) + 10*(3*1*16) = 1920 + 480 = 2400.
        assert_eq!(
            relaxed_constant(ColorMode::Proper, 3, 2),
            BigUint::from(2400u32)
        );
        assert_eq!(
            derived_coefficient(ColorMode::Proper, 3, 2),
            rat(1, 9600)
        );
        // Rainbow adds i=0: 2*6*3!*2^6 = 4608 on top of support 6 classes:
        //   12*192 + 12*48 + 4608 = 2304 + 576 + 4608 = 7488.
        assert_eq!(
            relaxed_constant(ColorMode::Rainbow, 3, 2),
            BigUint::from(7488u32)
        );

        // Pick n large enough for a positive threshold, then certify at it.
        let n = 200_000u64;
        let t = hyper_threshold_k(ColorMode::Proper, n, 3, 2, 4, 2, None).unwrap();
        assert!(t >= 1);
        let cert = certify(&hyper_spec(ColorMode::Proper, n, 3, 2, 4, 2, t)).unwrap();
        assert!(cert.passes);
        assert_eq!(cert.threshold_k, t);
        let cert = certify(&hyper_spec(ColorMode::Proper, n, 3, 2, 4, 2, 4 * t + 1)).unwrap();
        assert!(!cert.passes);

        // Coefficient override scales the threshold.
        let big = hyper_threshold_k(ColorMode::Proper, n, 3, 2, 4, 2, Some(&rat(1, 100))).unwrap();
        assert!(big > t);
    }

    #[test]
    fn validation_rejects_bad_specs() {
        assert!(graph_spec(ColorMode::Rainbow, BoundMode::Local, 10, 2, 1)
            .validate()
            .is_err());
        assert!(graph_spec(ColorMode::Proper, BoundMode::Local, 10, 2, 0)
            .validate()
            .is_err());
        assert!(hyper_spec(ColorMode::Proper, 10, 3, 3, 2, 2, 1).validate().is_err());
        assert!(hyper_spec(ColorMode::Proper, 10, 3, 2, 1, 2, 1).validate().is_err());
        assert!(hyper_spec(ColorMode::Proper, 10, 3, 1, 3, 2, 1).validate().is_err());
        // Degenerate host size for the relaxation.
        assert!(matches!(
            certify(&graph_spec(ColorMode::Proper, BoundMode::Local, 3, 1, 1)),
            Err(Error::DegenerateDims(_))
        ));
        assert!(matches!(
            certify(&hyper_spec(ColorMode::Rainbow, 9, 3, 2, 2, 2, 1)),
            Err(Error::DegenerateDims(_))
        ));
    }

    #[test]
    fn proper_certificates_accept_global_bounds() {
        let local = certify(&graph_spec(ColorMode::Proper, BoundMode::Local, 192, 2, 1)).unwrap();
        let global = certify(&graph_spec(ColorMode::Proper, BoundMode::Global, 192, 2, 1)).unwrap();
        assert_eq!(local.passes, global.passes);
        assert_eq!(local.neighborhood_sum_bound, global.neighborhood_sum_bound);
    }
}
