//! Science-map construction from similarity matrices.
//!
//! The pipeline follows the classic co-citation mapping recipe: keep only
//! sources cited often enough ([`threshold_nodes`]), group the survivors by
//! agglomerative clustering on their similarities ([`cluster_similarity`]),
//! then contract each cluster to a point and each bundle of cross-links to
//! a single edge ([`aggregate_clusters`]). Applying the same procedure to
//! the cluster network yields clusters of clusters
//! ([`recursive_aggregate`]).
//!
//! Merging works directly on similarities (higher is closer): the pair
//! with the highest linkage similarity merges first and merging stops when
//! the best candidate falls below the cut. Pairs with zero similarity are
//! never candidates, so unrelated blocks stay separate even at cut 0.
//! Layout is out of scope; cluster networks export to DOT/GraphML instead.

use crate::error::{Error, Result};
use crate::netcore::SimilarityMatrix;

const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Keep only nodes whose diagonal entry (the citation count in a
/// co-citation matrix) reaches `min_diagonal`. An empty result is valid
/// output, not an error.
pub fn threshold_nodes(c: &SimilarityMatrix, min_diagonal: u64) -> SimilarityMatrix {
    let keep: Vec<usize> =
        (0..c.n()).filter(|&i| c.get(i, i) >= min_diagonal as f64).collect();
    c.submatrix(&keep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linkage {
    /// Cluster similarity is the maximum cross-pair similarity.
    Single,
    /// Cluster similarity is the mean over all cross pairs (absent pairs
    /// count as zero).
    Average,
}

impl Linkage {
    pub fn as_str(&self) -> &'static str {
        match self {
            Linkage::Single => "single",
            Linkage::Average => "average",
        }
    }
}

/// A hard partition of the matrix nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    /// Cluster id per node; ids are contiguous from 0, numbered by each
    /// cluster's smallest member.
    pub assignment: Vec<usize>,
    /// The cut the clustering was produced at.
    pub level: f64,
    pub num_clusters: usize,
}

impl Clustering {
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters];
        for (node, &c) in self.assignment.iter().enumerate() {
            out[c].push(node);
        }
        out
    }
}

fn linkage_similarity(s: &SimilarityMatrix, a: &[usize], b: &[usize], linkage: Linkage) -> f64 {
    match linkage {
        Linkage::Single => {
            let mut best = 0.0f64;
            for &i in a {
                for &j in b {
                    best = best.max(s.get(i, j));
                }
            }
            best
        }
        Linkage::Average => {
            let mut sum = 0.0;
            for &i in a {
                for &j in b {
                    sum += s.get(i, j);
                }
            }
            sum / (a.len() * b.len()) as f64
        }
    }
}

/// Agglomerative clustering on a symmetric non-negative similarity matrix.
///
/// Repeatedly merges the most similar pair of clusters until the best
/// merge similarity drops below `cut` (or no positively similar pair is
/// left). Ties break toward the pair with the smallest member index.
pub fn cluster_similarity(
    s: &SimilarityMatrix,
    linkage: Linkage,
    cut: f64,
) -> Result<Clustering> {
    s.require_symmetric(SYMMETRY_TOLERANCE)?;
    let n = s.n();
    for i in 0..n {
        for j in 0..n {
            let v = s.get(i, j);
            if v < 0.0 {
                return Err(Error::NegativeSimilarity { row: i, col: j, value: v });
            }
        }
    }
    // Active clusters as sorted member lists keyed by smallest member.
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..clusters.len() {
            for b in (a + 1)..clusters.len() {
                let sim = linkage_similarity(s, &clusters[a], &clusters[b], linkage);
                if sim <= 0.0 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bs, ba, bb)) => {
                        sim > bs
                            || (sim == bs
                                && (clusters[a][0], clusters[b][0])
                                    < (clusters[ba][0], clusters[bb][0]))
                    }
                };
                if better {
                    best = Some((sim, a, b));
                }
            }
        }
        match best {
            Some((sim, a, b)) if sim >= cut => {
                let absorbed = clusters.remove(b);
                clusters[a].extend(absorbed);
                clusters[a].sort_unstable();
            }
            _ => break,
        }
        if clusters.len() == 1 {
            break;
        }
    }
    clusters.sort_by_key(|c| c[0]);
    let mut assignment = vec![0usize; n];
    for (id, members) in clusters.iter().enumerate() {
        for &node in members {
            assignment[node] = id;
        }
    }
    Ok(Clustering { assignment, level: cut, num_clusters: clusters.len() })
}

/// One node of an aggregated cluster network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterNode {
    pub id: usize,
    /// Indices into the consumed similarity matrix.
    pub members: Vec<usize>,
    /// Number of underlying base nodes (accumulates across recursive
    /// levels).
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterEdge {
    pub a: usize,
    pub b: usize,
    /// Mean similarity over all cross pairs of the two clusters.
    pub strength: f64,
}

/// The contracted network: one node per cluster, one edge per cluster pair
/// with positive mean cross-similarity. No self-edges.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterNetwork {
    pub nodes: Vec<ClusterNode>,
    pub edges: Vec<ClusterEdge>,
    /// Labels of the consumed matrix, for resolving members.
    pub member_labels: Vec<String>,
}

impl ClusterNetwork {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// View the network as a similarity matrix over cluster nodes
    /// (diagonal zero), ready for the next aggregation level.
    pub fn to_similarity(&self) -> SimilarityMatrix {
        let n = self.nodes.len();
        let labels = self.nodes.iter().map(|c| format!("c{}", c.id)).collect();
        let mut entries = vec![0.0; n * n];
        for e in &self.edges {
            entries[e.a * n + e.b] = e.strength;
            entries[e.b * n + e.a] = e.strength;
        }
        SimilarityMatrix::from_dense(labels, entries)
    }
}

/// Contract each cluster of `clustering` to a node and draw one edge per
/// cluster pair, weighted by the mean of all cross-pair similarities.
pub fn aggregate_clusters(s: &SimilarityMatrix, clustering: &Clustering) -> Result<ClusterNetwork> {
    aggregate_with_sizes(s, clustering, None)
}

fn aggregate_with_sizes(
    s: &SimilarityMatrix,
    clustering: &Clustering,
    sizes: Option<&[usize]>,
) -> Result<ClusterNetwork> {
    if clustering.assignment.len() != s.n() {
        return Err(Error::PartialAssignment {
            assigned: clustering.assignment.len(),
            total: s.n(),
        });
    }
    let members = clustering.members();
    let nodes: Vec<ClusterNode> = members
        .iter()
        .enumerate()
        .map(|(id, m)| ClusterNode {
            id,
            members: m.clone(),
            size: match sizes {
                Some(sz) => m.iter().map(|&i| sz[i]).sum(),
                None => m.len(),
            },
        })
        .collect();
    let k = members.len();
    let mut edges = Vec::new();
    for a in 0..k {
        for b in (a + 1)..k {
            let mut sum = 0.0;
            for &i in &members[a] {
                for &j in &members[b] {
                    sum += s.get(i, j);
                }
            }
            let strength = sum / (members[a].len() * members[b].len()) as f64;
            if strength > 0.0 {
                edges.push(ClusterEdge { a, b, strength });
            }
        }
    }
    Ok(ClusterNetwork { nodes, edges, member_labels: s.labels().to_vec() })
}

/// Cluster, contract, and repeat down a strictly decreasing cut schedule;
/// level k consumes the network produced at level k-1. Node sizes
/// accumulate so every level reports counts of base nodes.
pub fn recursive_aggregate(
    s: &SimilarityMatrix,
    linkage: Linkage,
    cut_schedule: &[f64],
) -> Result<Vec<ClusterNetwork>> {
    for w in cut_schedule.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::NonDecreasingSchedule { a: w[0], b: w[1] });
        }
    }
    let mut levels = Vec::with_capacity(cut_schedule.len());
    let mut current = s.clone();
    let mut sizes: Vec<usize> = vec![1; s.n()];
    for &cut in cut_schedule {
        let clustering = cluster_similarity(&current, linkage, cut)?;
        let network = aggregate_with_sizes(&current, &clustering, Some(&sizes))?;
        sizes = network.nodes.iter().map(|c| c.size).collect();
        current = network.to_similarity();
        levels.push(network);
    }
    Ok(levels)
}
