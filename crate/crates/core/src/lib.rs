//! Subgraph-tensor eigenvector centralities for undirected graphs.
//!
//! Classic eigenvector centrality scores a vertex by the scores of its
//! neighbors along edges. This crate generalizes the recursion to any small
//! connected pattern `F`: the occurrences of `F` in a graph define a sparse
//! symmetric order-`k` tensor whose positive H-eigenvector — when it exists —
//! scores every vertex by the pattern contexts it participates in. A mixed
//! variant blends the adjacency matrix with a pattern tensor so the measure
//! exists on every connected graph while still rewarding pattern-rich
//! neighborhoods.
//!
//! The pipeline, module by module:
//!
//! * [`graph`] — undirected simple graphs, edge-list and Pajek ingestion;
//! * [`pattern`] — connected templates (builtin catalogue or parsed);
//! * [`occurrence`] — multiplicity counting, enumeration over connected
//!   induced sets, covered edges, pattern-connectivity;
//! * [`tensor`] — sparse subgraph and mixed tensors, associated digraphs,
//!   weak irreducibility via strongly connected components;
//! * [`spectral`] — the shifted power iteration with two-sided brackets;
//! * [`centrality`] — the tensor measures with existence gating, classic
//!   measures (degree, betweenness, Estrada subgraph centrality), rankings,
//!   and correlations;
//! * [`datasets`] — bundled reference graphs.
//!
//! ```
//! use sgc_core::{f_centrality, Pattern, SpectralOptions};
//!
//! let g = sgc_core::datasets::karate();
//! let p2 = Pattern::builtin("p2").unwrap();
//! let c = f_centrality(&g, &p2, &SpectralOptions::default()).unwrap();
//! assert_eq!(c.scores.len(), 34);
//! ```

pub mod centrality;
pub mod datasets;
pub mod graph;
pub mod occurrence;
pub mod pattern;
pub mod spectral;
pub mod tensor;

pub use centrality::{
    betweenness_centrality, correlate, degree_centrality, f_centrality, mixed_centrality, ranking,
    subgraph_centrality, CentralityError, CentralityMeta, CentralityVector, CorrelationMethod,
    Ranking, TIE_TOLERANCE,
};
pub use graph::{Graph, GraphParseError, Indexing};
pub use occurrence::{
    automorphism_count, count_on_set, enumerate_occurrences, enumerate_occurrences_with_limit,
    is_f_connected, EnumerationError, FConnectivity, OccurrenceMap, DEFAULT_ORDER_LIMIT,
};
pub use pattern::{Pattern, PatternError};
pub use spectral::{
    eigenvector_centrality, residual, zqw_iterate, SpectralError, SpectralOptions, SpectralResult,
};
pub use tensor::{
    Digraph, IrreducibilityReport, MixedTensor, SubgraphTensor, Tensor, TensorBuildError,
};
