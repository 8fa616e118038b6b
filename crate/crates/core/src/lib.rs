//! Bounded edge-colorings, local-lemma certificates, and seeded embedders
//! for finding properly colored or rainbow copies of small patterns inside
//! complete multipartite graphs and complete uniform hypergraphs.
//!
//! The crate is organized around one pipeline:
//!
//! 1. [`host`] builds or ingests an edge-colored host and measures how
//!    bounded its coloring is (locally per vertex, globally per class).
//! 2. [`pattern`] analyzes the pattern being embedded: degree profile,
//!    cherries, quadruples, overlapping edge pairs.
//! 3. [`certify`] evaluates the local-lemma certificate in exact rational
//!    arithmetic and produces the boundedness thresholds under which every
//!    embedding instance is feasible.
//! 4. [`embed`] runs the seeded sample/inspect/resample loop that actually
//!    produces a properly colored or rainbow embedding, and [`oracle`]
//!    cross-checks it against an exhaustive backtracking search.
//! 5. [`construct`] builds the structured colorings and patterns that show
//!    the thresholds cannot be relaxed to local boundedness or larger bounds.
//!
//! Supporting modules: [`latin`] (Latin squares as colorings of `K_{n,n}`),
//! [`events`] and [`negdep`] (the canonical bad-event machinery and the
//! exhaustive negative-dependency validator behind the certificate), and
//! [`io`] (JSON and line-oriented serialization).

pub mod combin;
pub mod construct;
pub mod embed;
pub mod error;
pub mod events;
pub mod host;
pub mod io;
pub mod certify;
pub mod latin;
pub mod negdep;
pub mod oracle;
pub mod pattern;

pub use error::{Error, Result};
pub use host::{BoundMode, BoundednessReport, ColorId, ColoredHost, HostShape, Vertex};
pub use latin::LatinSquare;
pub use pattern::{Cherry, DegreeProfile, Pattern, Quadruple};
