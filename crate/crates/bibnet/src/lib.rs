//! Bibliometric network analysis.
//!
//! Everything here operates on networks derived from bibliographic records:
//! directed citation graphs between articles or journals, bipartite
//! affiliation matrices (articles x cited sources, authors x papers,
//! documents x terms), and the square similarity matrices obtained by
//! projecting them.
//!
//! - [`netcore`] — graph and matrix types plus the two bipartite projections
//! - [`paths`] — reader walks, path counting, search-path-count main paths
//! - [`similarity`] — coupling/co-citation strengths, Jaccard/Salton indices,
//!   co-citation significance filtering
//! - [`journalrank`] — journal citation normalizations, influence weights,
//!   stochastic redistribution, PageRank, ego citation environments
//! - [`coauthor`] — co-authorship projection and structural metrics
//! - [`textnet`] — term-document matrices, co-word analysis, lexical
//!   coupling, latent semantic analysis via an in-house SVD
//! - [`mapping`] — thresholding, agglomerative clustering, and cluster
//!   aggregation for science maps
//! - [`io`] — edge-list/affiliation/matrix file formats and DOT/GraphML
//!   exports
//!
//! All types are immutable after construction and every operation is a pure
//! function of its inputs, so values can be shared freely across threads.

pub mod coauthor;
pub mod error;
#[cfg(test)]
pub(crate) mod testutil;
pub mod io;
pub mod journalrank;
pub mod mapping;
pub mod netcore;
pub mod paths;
pub mod similarity;
pub mod textnet;

pub use error::{Error, Result};
pub use netcore::{
    AffiliationMatrix, DenseMatrix, NodeLabel, SimilarityMatrix, TemporalDigraph, WeightVector,
};
