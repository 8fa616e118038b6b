//! Interchange formats.
//!
//! One JSON document type per object kind, all derived with serde:
//!
//! * hosts: `{"shape": {"kind", …}, "edges": [[v…], …], "colors": [c…]}`
//!   with parallel `edges`/`colors` arrays (any edge order on input;
//!   canonical lexicographic order on output);
//! * patterns: `{"vertices", "r", "edges", "parts"?}`;
//! * embeddings: a bare JSON array `[hostVertex per pattern vertex]`
//!   (a wrapping `{"embedding": […]}` object is accepted on input);
//! * certificates: report DTO with every rational rendered exactly as a
//!   decimal `numerator/denominator` string (integers without the slash).
//!
//! There is also a line-oriented text format for colorings — one edge per
//! line, `v1 v2 … vr c` — and CSV for Latin squares and incidence matrices
//! (handled by their own modules).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::certify::{ClassLabel, EventFamilySpec, LllCertificate};
use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::host::{ColoredHost, HostShape, Vertex};
use crate::pattern::Pattern;

/// JSON document for an edge-colored host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HostDoc {
    pub shape: HostShape,
    pub edges: Vec<Vec<Vertex>>,
    pub colors: Vec<u64>,
}

impl HostDoc {
    /// Canonical document: edges in lexicographic order, dense color ids.
    pub fn from_host(host: &ColoredHost) -> Self {
        let edges = host.edges();
        let colors = edges
            .iter()
            .map(|e| host.try_color(e).expect("listed edges are colored") as u64)
            .collect();
        HostDoc { shape: host.shape(), edges, colors }
    }

    /// Rebuilds the host; colors are re-normalized to dense ids preserving
    /// their numeric order, so a canonical document round-trips identically.
    pub fn into_host(self) -> Result<ColoredHost> {
        if self.edges.len() != self.colors.len() {
            return Err(Error::InvalidShape(format!(
                "{} edges but {} colors; the arrays must be parallel",
                self.edges.len(),
                self.colors.len()
            )));
        }
        let pairs: Vec<(Vec<Vertex>, u64)> =
            self.edges.into_iter().zip(self.colors).collect();
        ColoredHost::from_edge_list(self.shape, &pairs)
    }
}

/// Line-oriented text rendering of a coloring: `v1 v2 … vr c` per edge.
pub fn host_to_text(host: &ColoredHost) -> String {
    let mut out = String::new();
    for edge in host.edges() {
        for v in &edge {
            out.push_str(&v.to_string());
            out.push(' ');
        }
        out.push_str(&host.try_color(&edge).expect("listed edges are colored").to_string());
        out.push('\n');
    }
    out
}

/// Parses the line-oriented format. The shape cannot be inferred from bare
/// edge lines, so it is supplied by the caller. Blank lines and `#` comments
/// are skipped.
pub fn host_from_text(shape: HostShape, text: &str) -> Result<ColoredHost> {
    let mut pairs: Vec<(Vec<Vertex>, u64)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 3 {
            return Err(Error::Parse(format!(
                "line {}: need at least two vertices and a color",
                lineno + 1
            )));
        }
        let mut numbers = Vec::with_capacity(fields.len());
        for f in &fields {
            numbers.push(f.parse::<u64>().map_err(|_| {
                Error::Parse(format!("line {}: {f:?} is not a number", lineno + 1))
            })?);
        }
        let color = numbers.pop().expect("at least three fields");
        let edge: Vec<Vertex> = numbers
            .into_iter()
            .map(|v| {
                u32::try_from(v).map_err(|_| {
                    Error::Parse(format!("line {}: vertex {v} out of range", lineno + 1))
                })
            })
            .collect::<Result<_>>()?;
        pairs.push((edge, color));
    }
    ColoredHost::from_edge_list(shape, &pairs)
}

/// JSON document for a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PatternDoc {
    pub vertices: u32,
    pub r: u32,
    pub edges: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<u32>>,
}

impl PatternDoc {
    pub fn from_pattern(pattern: &Pattern) -> Self {
        PatternDoc {
            vertices: pattern.vertex_count(),
            r: pattern.uniformity(),
            edges: pattern.edges().to_vec(),
            parts: pattern.parts().map(|p| p.to_vec()),
        }
    }

    pub fn into_pattern(self) -> Result<Pattern> {
        let pattern = if self.r == 2 {
            let pairs: Vec<(Vertex, Vertex)> = self
                .edges
                .iter()
                .map(|e| {
                    if e.len() == 2 {
                        Ok((e[0], e[1]))
                    } else {
                        Err(Error::InvalidShape(format!(
                            "graph edge {e:?} must have exactly two vertices"
                        )))
                    }
                })
                .collect::<Result<_>>()?;
            Pattern::graph(self.vertices, &pairs)?
        } else {
            Pattern::hypergraph(self.vertices, self.r, self.edges)?
        };
        match self.parts {
            Some(parts) => pattern.with_parts(parts),
            None => Ok(pattern),
        }
    }
}

/// Serializes an embedding as a bare JSON array of host vertices.
pub fn embedding_to_json(e: &Embedding) -> Value {
    Value::from(e.images().to_vec())
}

/// Parses a raw image list from a bare array or an `{"embedding": […]}`
/// object, without enforcing injectivity — candidate embeddings from the
/// outside may be broken, and validation wants to report that, not choke on
/// it.
pub fn embedding_images_from_json(value: &Value) -> Result<Vec<Vertex>> {
    let array = match value {
        Value::Array(_) => value,
        Value::Object(map) => map
            .get("embedding")
            .ok_or_else(|| Error::Parse("object form needs an \"embedding\" field".into()))?,
        _ => {
            return Err(Error::Parse(
                "an embedding is a JSON array of host vertices".into(),
            ))
        }
    };
    serde_json::from_value(array.clone())
        .map_err(|e| Error::Parse(format!("bad embedding array: {e}")))
}

/// Parses an embedding from a bare array or an `{"embedding": […]}` object.
pub fn embedding_from_json(value: &Value) -> Result<Embedding> {
    Embedding::new(embedding_images_from_json(value)?)
}

/// One certificate class line with exact decimal-string numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassBoundDoc {
    pub label: ClassLabel,
    /// Bound on the number of neighbors of this class (decimal string).
    pub count: String,
    /// Per-event probability bound, `numerator/denominator`.
    pub prob: String,
    /// `count · prob`, `numerator/denominator`.
    pub contribution: String,
}

/// Certificate report DTO: every rational exact, no floating point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateDoc {
    pub spec: EventFamilySpec,
    pub per_event_prob_bound: String,
    pub neighborhood_sum_bound: String,
    pub class_sum: String,
    pub classes: Vec<ClassBoundDoc>,
    pub threshold_k: u64,
    pub passes: bool,
}

impl CertificateDoc {
    pub fn from_certificate(c: &LllCertificate) -> Self {
        CertificateDoc {
            spec: c.spec,
            per_event_prob_bound: c.per_event_prob_bound.to_string(),
            neighborhood_sum_bound: c.neighborhood_sum_bound.to_string(),
            class_sum: c.class_sum.to_string(),
            classes: c
                .classes
                .iter()
                .map(|cb| ClassBoundDoc {
                    label: cb.label,
                    count: cb.count.to_string(),
                    prob: cb.prob.to_string(),
                    contribution: cb.contribution().to_string(),
                })
                .collect(),
            threshold_k: c.threshold_k,
            passes: c.passes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certify, ColorMode, FamilyShape, GraphFamily};
    use crate::host::BoundMode;

    #[test]
    fn host_json_round_trips() {
        for host in [
            ColoredHost::random_bounded(
                HostShape::Multipartite { m: 2, n: 4 },
                3,
                BoundMode::Global,
                7,
            )
            .unwrap(),
            ColoredHost::random_bounded(
                HostShape::Hypergraph { n: 6, r: 3 },
                5,
                BoundMode::Local,
                8,
            )
            .unwrap(),
        ] {
            let doc = HostDoc::from_host(&host);
            let json = serde_json::to_string(&doc).unwrap();
            let parsed: HostDoc = serde_json::from_str(&json).unwrap();
            assert_eq!(parsed.clone().into_host().unwrap(), host);
            // Canonical docs are stable under re-serialization.
            assert_eq!(HostDoc::from_host(&parsed.into_host().unwrap()), doc);
        }
    }

    #[test]
    fn host_doc_rejects_mismatched_arrays() {
        let host =
            ColoredHost::rainbow(HostShape::Multipartite { m: 2, n: 2 }).unwrap();
        let mut doc = HostDoc::from_host(&host);
        doc.colors.pop();
        assert!(doc.into_host().is_err());
    }

    #[test]
    fn host_text_round_trips() {
        let host = ColoredHost::random_bounded(
            HostShape::Multipartite { m: 3, n: 3 },
            4,
            BoundMode::Global,
            21,
        )
        .unwrap();
        let text = host_to_text(&host);
        let parsed = host_from_text(host.shape(), &text).unwrap();
        assert_eq!(parsed, host);
        assert!(host_from_text(host.shape(), "0 3\n").is_err());
        assert!(host_from_text(host.shape(), "0 x 1\n").is_err());
        // Comments and blank lines are tolerated.
        let commented = format!("# coloring\n\n{text}");
        assert_eq!(host_from_text(host.shape(), &commented).unwrap(), host);
    }

    #[test]
    fn pattern_json_round_trips() {
        let with_parts = Pattern::cycle(6).unwrap().greedy_partition(2).unwrap();
        let hyper = Pattern::complete_uniform(5, 3).unwrap();
        for pattern in [with_parts, hyper] {
            let doc = PatternDoc::from_pattern(&pattern);
            let json = serde_json::to_string(&doc).unwrap();
            let parsed: PatternDoc = serde_json::from_str(&json).unwrap();
            assert_eq!(parsed.into_pattern().unwrap(), pattern);
        }
        // "parts" is genuinely optional in the wire format.
        let bare: PatternDoc =
            serde_json::from_str(r#"{"vertices":3,"r":2,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert!(bare.into_pattern().unwrap().parts().is_none());
    }

    #[test]
    fn embedding_json_accepts_both_forms() {
        let e = Embedding::new(vec![4, 0, 2]).unwrap();
        let json = embedding_to_json(&e);
        assert_eq!(json, serde_json::json!([4, 0, 2]));
        assert_eq!(embedding_from_json(&json).unwrap(), e);
        let wrapped = serde_json::json!({ "embedding": [4, 0, 2] });
        assert_eq!(embedding_from_json(&wrapped).unwrap(), e);
        assert!(embedding_from_json(&serde_json::json!("nope")).is_err());
        assert!(embedding_from_json(&serde_json::json!({ "images": [1] })).is_err());
    }

    #[test]
    fn certificates_serialize_with_exact_rationals() {
        let spec = EventFamilySpec {
            mode: ColorMode::Proper,
            bound: BoundMode::Local,
            k: 1,
            family: FamilyShape::Graph(GraphFamily { m: 2, n: 192, delta: 2 }),
        };
        let cert = certify(&spec).unwrap();
        let doc = CertificateDoc::from_certificate(&cert);
        assert!(doc.passes);
        // 12·Δ²k/n = 48/192 = exactly 1/4.
        assert_eq!(doc.neighborhood_sum_bound, "1/4");
        let json = serde_json::to_string_pretty(&doc).unwrap();
        assert!(json.contains("\"neighborhoodSumBound\": \"1/4\""));
        let parsed: CertificateDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, doc);
    }
}
