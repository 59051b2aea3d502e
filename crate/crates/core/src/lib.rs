//! Proximity and remoteness of strong digraphs.
//!
//! Exact distance invariants (`sigma`, proximity, remoteness, radius,
//! diameter, distance degrees), the extremal families attaining their
//! bounds, per-instance checks of the bounds and their equality cases for
//! digraphs, tournaments and bipartite tournaments, and an exhaustive
//! search engine that confirms them on every small labeled instance.

pub mod bipartite;
pub mod canon;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod format;
pub mod metrics;
pub mod rational;
pub mod search;
pub mod verify;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use constructions::ConstructionSpec;
pub use digraph::{DegreeSummary, Digraph, PartiteStructure};
pub use error::{Error, Result};
pub use metrics::{bfs_profile, proximity_remoteness, DistanceProfile, MetricsReport};
pub use rational::Rational;
pub use search::{Class, Predicate, SearchQuery, SearchResult};
pub use verify::{Check, VerificationReport};
