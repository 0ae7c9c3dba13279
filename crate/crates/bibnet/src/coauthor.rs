//! Co-authorship projection and structural network metrics.
//!
//! Projecting a binary author x paper affiliation onto its rows links two
//! authors whenever they share a paper; the link weight is the number of
//! joint papers, and the projection diagonal (kept separately) counts each
//! author's papers. The metrics below are the standard structural ones:
//! connected components and the main-component share, hop-count diameter
//! and average shortest-path length, degree distribution, and betweenness
//! centrality via Brandes accumulation. Distances ignore edge weights.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::netcore::{row_projection, AffiliationMatrix, TemporalDigraph, WeightVector};

/// Undirected graph with positive integer edge weights and no self-edges.
#[derive(Debug, Clone)]
pub struct UndirectedGraph {
    labels: Vec<String>,
    /// Sorted (neighbor, weight) lists.
    adjacency: Vec<Vec<(usize, u64)>>,
    edge_count: usize,
}

impl UndirectedGraph {
    /// Build from weighted label pairs; duplicate pairs collapse by weight
    /// summation, self-pairs are rejected.
    pub fn from_weighted_edges(edges: &[(&str, &str, u64)]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut weights: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        let intern = |l: &str, labels: &mut Vec<String>, index: &mut BTreeMap<String, usize>| {
            *index.entry(l.to_string()).or_insert_with(|| {
                labels.push(l.to_string());
                labels.len() - 1
            })
        };
        for &(a, b, w) in edges {
            if a == b {
                return Err(Error::SelfLoop(a.to_string()));
            }
            let ia = intern(a, &mut labels, &mut index);
            let ib = intern(b, &mut labels, &mut index);
            let key = (ia.min(ib), ia.max(ib));
            *weights.entry(key).or_insert(0) += w.max(1);
        }
        Ok(Self::from_parts(labels, weights))
    }

    fn from_parts(labels: Vec<String>, weights: BTreeMap<(usize, usize), u64>) -> Self {
        let mut adjacency = vec![Vec::new(); labels.len()];
        let mut edge_count = 0;
        for (&(a, b), &w) in &weights {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
            edge_count += 1;
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self { labels, adjacency, edge_count }
    }

    /// Collapse a digraph to its undirected skeleton (self-loops dropped,
    /// parallel directions merged).
    pub fn from_digraph(g: &TemporalDigraph) -> Self {
        let mut weights: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for e in g.edges() {
            if e.citing == e.cited {
                continue;
            }
            let key = (e.citing.min(e.cited), e.citing.max(e.cited));
            *weights.entry(key).or_insert(0) += 1;
        }
        Self::from_parts(g.labels().to_vec(), weights)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, u64)] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn edge_weight(&self, a: usize, b: usize) -> Option<u64> {
        self.adjacency[a]
            .binary_search_by(|&(n, _)| n.cmp(&b))
            .ok()
            .map(|k| self.adjacency[a][k].1)
    }

    /// Edges as (a, b, weight) with a < b, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (a, list) in self.adjacency.iter().enumerate() {
            for &(b, w) in list {
                if a < b {
                    out.push((a, b, w));
                }
            }
        }
        out
    }
}

/// Co-authorship network plus per-author paper counts (the projection
/// diagonal, which is not an edge).
#[derive(Debug, Clone)]
pub struct CoauthorGraph {
    pub graph: UndirectedGraph,
    pub paper_counts: WeightVector,
}

/// Project a binary author x paper affiliation onto authors. Off-diagonal
/// projection entries become weighted links; the diagonal is reported as
/// paper counts.
pub fn coauthor_graph(aff: &AffiliationMatrix) -> Result<CoauthorGraph> {
    aff.require_binary()?;
    let projection = row_projection(aff);
    let mut weights: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    projection.for_each_upper(|i, j, v| {
        if i != j && v > 0.0 {
            weights.insert((i, j), v.round() as u64);
        }
    });
    let graph = UndirectedGraph::from_parts(projection.labels().to_vec(), weights);
    let paper_counts = WeightVector::new(projection.labels().to_vec(), projection.diagonal());
    Ok(CoauthorGraph { graph, paper_counts })
}

/// Partition into connected components, largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentReport {
    /// Node-index sets, sorted by descending size then smallest member;
    /// members ascend within each component.
    pub components: Vec<Vec<usize>>,
    /// Fraction of all nodes in the largest component (0 for the empty
    /// graph).
    pub main_share: f64,
}

pub fn connected_components(g: &UndirectedGraph) -> ComponentReport {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut members = Vec::new();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            members.push(v);
            for &(w, _) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let main_share = if n == 0 {
        0.0
    } else {
        components.first().map_or(0.0, |c| c.len() as f64 / n as f64)
    };
    ComponentReport { components, main_share }
}

/// Hop distances from `source`, restricted to the induced subgraph over
/// `members` (usize::MAX marks unreachable). `position[v]` maps node ->
/// slot in `members` or usize::MAX.
fn bfs_distances(
    g: &UndirectedGraph,
    members: &[usize],
    position: &[usize],
    source_slot: usize,
) -> Vec<usize> {
    let mut dist = vec![usize::MAX; members.len()];
    dist[source_slot] = 0;
    let mut queue = VecDeque::from([source_slot]);
    while let Some(s) = queue.pop_front() {
        let v = members[s];
        for &(w, _) in g.neighbors(v) {
            let t = position[w];
            if t == usize::MAX {
                continue;
            }
            if dist[t] == usize::MAX {
                dist[t] = dist[s] + 1;
                queue.push_back(t);
            }
        }
    }
    dist
}

fn pair_distances(g: &UndirectedGraph, members: &[usize]) -> Result<(usize, u64, u64)> {
    let mut position = vec![usize::MAX; g.node_count()];
    for (slot, &v) in members.iter().enumerate() {
        position[v] = slot;
    }
    let mut max = 0usize;
    let mut total: u64 = 0;
    let mut pairs: u64 = 0;
    for s in 0..members.len() {
        let dist = bfs_distances(g, members, &position, s);
        for (t, &d) in dist.iter().enumerate().skip(s + 1) {
            if d == usize::MAX {
                return Err(Error::DisconnectedComponent {
                    a: g.labels()[members[s]].clone(),
                    b: g.labels()[members[t]].clone(),
                });
            }
            max = max.max(d);
            total += d as u64;
            pairs += 1;
        }
    }
    Ok((max, total, pairs))
}

/// Maximum shortest-path hop count between any two nodes of `members`
/// (paths confined to the induced subgraph). Disconnected input is an
/// error, not an infinite value.
pub fn diameter(g: &UndirectedGraph, members: &[usize]) -> Result<usize> {
    if members.is_empty() {
        return Err(Error::TooFewNodes(0));
    }
    let (max, _, _) = pair_distances(g, members)?;
    Ok(max)
}

/// Mean shortest-path hop count over unordered distinct pairs of `members`.
pub fn average_path_length(g: &UndirectedGraph, members: &[usize]) -> Result<f64> {
    if members.len() < 2 {
        return Err(Error::TooFewNodes(members.len()));
    }
    let (_, total, pairs) = pair_distances(g, members)?;
    Ok(total as f64 / pairs as f64)
}

/// Unweighted degree histogram with its skew statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    /// degree -> node count.
    pub histogram: BTreeMap<usize, usize>,
    pub max_degree: usize,
    pub mean_degree: f64,
}

pub fn degree_distribution(g: &UndirectedGraph) -> DegreeDistribution {
    let mut histogram = BTreeMap::new();
    let mut max_degree = 0;
    let mut total = 0usize;
    for i in 0..g.node_count() {
        let d = g.degree(i);
        *histogram.entry(d).or_insert(0) += 1;
        max_degree = max_degree.max(d);
        total += d;
    }
    let mean_degree = if g.node_count() == 0 {
        0.0
    } else {
        total as f64 / g.node_count() as f64
    };
    DegreeDistribution { histogram, max_degree, mean_degree }
}

/// Betweenness centrality: for each node, the sum over unordered pairs
/// (s, t) of the fraction of shortest s-t paths running through it.
/// Brandes single-source accumulation; each unordered pair counts once.
/// With `normalized`, scores divide by (n-1)(n-2)/2.
pub fn betweenness(g: &UndirectedGraph, normalized: bool) -> WeightVector {
    let n = g.node_count();
    let mut centrality = vec![0.0; n];
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    for s in 0..n {
        stack.clear();
        let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![-1i64; n];
        sigma[s] = 1.0;
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &(w, _) in g.neighbors(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    predecessors[w].push(v);
                }
            }
        }
        let mut delta = vec![0.0f64; n];
        while let Some(w) = stack.pop() {
            for &v in &predecessors[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    // Brandes visits each ordered pair; halve for the unordered convention.
    for c in &mut centrality {
        *c /= 2.0;
    }
    if normalized {
        let pairs = if n >= 3 { ((n - 1) * (n - 2)) as f64 / 2.0 } else { 0.0 };
        for c in &mut centrality {
            *c = if pairs > 0.0 { *c / pairs } else { 0.0 };
        }
    }
    WeightVector::new(g.labels().to_vec(), centrality)
}
