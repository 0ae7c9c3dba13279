//! Walk-based analyses on citation graphs.
//!
//! The reader model moves a mass vector backward through the graph (from a
//! citing article to its cited sources); the forward step reverses the
//! direction and finds citers. Powers of the binary adjacency matrix count
//! directed paths. Search path counts (SPC) weight each edge by the number
//! of source-to-sink traversals passing through it, after attaching a
//! virtual source to all nodes citing nothing in-network and a virtual sink
//! to all uncited nodes; the main path follows the locally heaviest edge.
//!
//! All walk operations use the binary adjacency (edge presence); weighted
//! multi-citations are not part of the walk model.

use crate::error::{Error, Result};
use crate::netcore::{TemporalDigraph, WeightVector};

/// A reader position: a labeled mass vector plus the step count.
#[derive(Debug, Clone)]
pub struct ReaderState {
    pub vector: WeightVector,
    pub step: usize,
    /// Components sum to 1.
    pub normalized: bool,
    /// The walk ran out of references; the vector is all-zero.
    pub absorbed: bool,
}

impl ReaderState {
    /// Unit mass on `start` at step 0.
    pub fn start(g: &TemporalDigraph, start: &str) -> Result<ReaderState> {
        let idx = g
            .index_of(start)
            .ok_or_else(|| Error::UnknownLabel(start.to_string()))?;
        let mut values = vec![0.0; g.node_count()];
        values[idx] = 1.0;
        Ok(ReaderState {
            vector: WeightVector::new(g.labels().to_vec(), values),
            step: 0,
            normalized: true,
            absorbed: false,
        })
    }

    fn with_values(&self, g: &TemporalDigraph, values: Vec<f64>, step: usize) -> ReaderState {
        let absorbed = values.iter().all(|&v| v == 0.0);
        ReaderState {
            vector: WeightVector::new(g.labels().to_vec(), values),
            step,
            normalized: false,
            absorbed,
        }
    }
}

/// One backward step: mass on a citing article moves onto every source it
/// cites (multiplication by the transposed binary adjacency).
pub fn reader_step(g: &TemporalDigraph, state: &ReaderState) -> Result<ReaderState> {
    let n = g.node_count();
    if state.vector.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: state.vector.len() });
    }
    let r = state.vector.values();
    let mut next = vec![0.0; n];
    for i in 0..n {
        if r[i] == 0.0 {
            continue;
        }
        for &(j, _) in g.cited_by_node(i) {
            next[j] += r[i];
        }
    }
    Ok(state.with_values(g, next, state.step + 1))
}

/// One forward step: mass on a cited source moves onto every article citing
/// it (multiplication by the un-transposed binary adjacency).
pub fn forward_navigation_step(g: &TemporalDigraph, state: &ReaderState) -> Result<ReaderState> {
    let n = g.node_count();
    if state.vector.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: state.vector.len() });
    }
    let r = state.vector.values();
    let mut next = vec![0.0; n];
    for j in 0..n {
        if r[j] == 0.0 {
            continue;
        }
        for &i in g.citers_of_node(j) {
            next[i] += r[j];
        }
    }
    Ok(state.with_values(g, next, state.step + 1))
}

/// Walk direction for the normalized random model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkDirection {
    /// Follow references backward in time.
    CitedSources,
    /// Follow citers forward in time.
    Citers,
}

/// Iterate the reader `steps` times from `start`, then scale so components
/// sum to one. If the mass vanishes (the reader hit articles citing
/// nothing), the zero vector is returned with the absorbed flag set instead
/// of dividing.
pub fn random_reader(g: &TemporalDigraph, start: &str, steps: usize) -> Result<ReaderState> {
    random_walk(g, start, steps, WalkDirection::CitedSources)
}

/// The random reader model in either direction.
pub fn random_walk(
    g: &TemporalDigraph,
    start: &str,
    steps: usize,
    direction: WalkDirection,
) -> Result<ReaderState> {
    let mut state = ReaderState::start(g, start)?;
    for _ in 0..steps {
        state = match direction {
            WalkDirection::CitedSources => reader_step(g, &state)?,
            WalkDirection::Citers => forward_navigation_step(g, &state)?,
        };
        if state.absorbed {
            return Ok(state);
        }
    }
    let total = state.vector.sum();
    if total == 0.0 {
        state.absorbed = true;
        return Ok(state);
    }
    let values: Vec<f64> = state.vector.values().iter().map(|v| v / total).collect();
    Ok(ReaderState {
        vector: WeightVector::new(g.labels().to_vec(), values),
        step: state.step,
        normalized: true,
        absorbed: false,
    })
}

/// Labeled square matrix of 64-bit path counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountMatrix {
    labels: Vec<String>,
    n: usize,
    counts: Vec<i64>,
}

impl PathCountMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, from: usize, to: usize) -> i64 {
        self.counts[from * self.n + to]
    }

    pub fn get_labeled(&self, from: &str, to: &str) -> Option<i64> {
        let i = self.labels.iter().position(|l| l == from)?;
        let j = self.labels.iter().position(|l| l == to)?;
        Some(self.get(i, j))
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.counts[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }
}

/// The k-th power of the binary adjacency matrix: entry (i, j) counts
/// directed paths of length k from i to j. By convention k = 0 yields the
/// identity (every node reaches itself by the empty path). Counts use
/// checked 64-bit arithmetic; overflow is an error.
pub fn path_count_matrix(g: &TemporalDigraph, k: usize) -> Result<PathCountMatrix> {
    let n = g.node_count();
    let mut result = vec![0i64; n * n];
    for i in 0..n {
        result[i * n + i] = 1;
    }
    let mut adjacency = vec![0i64; n * n];
    for e in g.edges() {
        adjacency[e.citing * n + e.cited] = 1;
    }
    for step in 1..=k {
        let mut next = vec![0i64; n * n];
        for i in 0..n {
            for m in 0..n {
                let a = result[i * n + m];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = adjacency[m * n + j];
                    if b == 0 {
                        continue;
                    }
                    let prod = a.checked_mul(b).ok_or(Error::PathCountOverflow { k: step })?;
                    next[i * n + j] = next[i * n + j]
                        .checked_add(prod)
                        .ok_or(Error::PathCountOverflow { k: step })?;
                }
            }
        }
        result = next;
    }
    Ok(PathCountMatrix { labels: g.labels().to_vec(), n, counts: result })
}

/// Search path counts over a citation DAG.
///
/// Counts are expressed on the original edges: `edge_counts[k]` matches
/// `g.edges()[k]`. `source_counts` lists (node, count) for the virtual
/// edges onto nodes citing nothing in-network; `sink_counts` for the
/// virtual edges leaving uncited nodes. `total_paths` is the number of
/// virtual-source-to-virtual-sink traversals.
#[derive(Debug, Clone)]
pub struct SpcWeights {
    pub edge_counts: Vec<i64>,
    pub source_counts: Vec<(usize, i64)>,
    pub sink_counts: Vec<(usize, i64)>,
    pub total_paths: i64,
    /// Per node: traversals from the virtual source reaching it / leaving
    /// it for the virtual sink.
    from_source: Vec<i64>,
    to_sink: Vec<i64>,
}

impl SpcWeights {
    pub fn paths_from_source(&self, node: usize) -> i64 {
        self.from_source[node]
    }

    pub fn paths_to_sink(&self, node: usize) -> i64 {
        self.to_sink[node]
    }
}

fn checked_sum(values: impl Iterator<Item = i64>) -> Result<i64> {
    let mut acc = 0i64;
    for v in values {
        acc = acc.checked_add(v).ok_or(Error::PathCountOverflow { k: 0 })?;
    }
    Ok(acc)
}

/// Compute SPC edge weights. The graph must be acyclic; a cycle witness is
/// returned otherwise.
pub fn spc_weights(g: &TemporalDigraph) -> Result<SpcWeights> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if let Some(cycle) = g.find_cycle() {
        let labels = cycle.iter().map(|&i| g.labels()[i].clone()).collect();
        return Err(Error::CyclicGraph(labels));
    }
    let n = g.node_count();
    // Knowledge flows from cited to citing, so traversal runs opposite to
    // the stored edge direction: flow_out[cited] lists citers.
    let is_source: Vec<bool> = (0..n).map(|i| g.cited_by_node(i).is_empty()).collect();
    let is_sink: Vec<bool> = (0..n).map(|j| g.citers_of_node(j).is_empty()).collect();

    // Topological order of the flow orientation via Kahn's algorithm; the
    // flow in-degree of a node is its out-citation count.
    let mut indegree: Vec<usize> = (0..n).map(|v| g.cited_by_node(v).len()).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        topo.push(v);
        for &w in g.citers_of_node(v) {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push(w);
            }
        }
    }
    debug_assert_eq!(topo.len(), n, "cycle detection should have caught this");

    let mut from_source = vec![0i64; n];
    for &v in &topo {
        let mut paths = if is_source[v] { 1i64 } else { 0 };
        for &(u, _) in g.cited_by_node(v) {
            paths = paths
                .checked_add(from_source[u])
                .ok_or(Error::PathCountOverflow { k: 0 })?;
        }
        from_source[v] = paths;
    }
    let mut to_sink = vec![0i64; n];
    for &v in topo.iter().rev() {
        let mut paths = if is_sink[v] { 1i64 } else { 0 };
        for &w in g.citers_of_node(v) {
            paths = paths.checked_add(to_sink[w]).ok_or(Error::PathCountOverflow { k: 0 })?;
        }
        to_sink[v] = paths;
    }

    // An original edge (citing, cited) is traversed cited -> citing.
    let mut edge_counts = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let count = from_source[e.cited]
            .checked_mul(to_sink[e.citing])
            .ok_or(Error::PathCountOverflow { k: 0 })?;
        edge_counts.push(count);
    }
    let source_counts: Vec<(usize, i64)> =
        (0..n).filter(|&v| is_source[v]).map(|v| (v, to_sink[v])).collect();
    let sink_counts: Vec<(usize, i64)> =
        (0..n).filter(|&v| is_sink[v]).map(|v| (v, from_source[v])).collect();
    let total_paths = checked_sum(source_counts.iter().map(|&(_, c)| c))?;
    debug_assert_eq!(total_paths, checked_sum(sink_counts.iter().map(|&(_, c)| c))?);
    Ok(SpcWeights { edge_counts, source_counts, sink_counts, total_paths, from_source, to_sink })
}

/// Edge weighting scheme for main-path extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    SearchPathCount,
}

impl WeightScheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeightScheme::SearchPathCount => "spc",
        }
    }
}

/// Result of a main-path extraction.
///
/// `path` lists node indices in chronological order: each consecutive pair
/// (earlier, later) corresponds to the stored edge (later cites earlier).
#[derive(Debug, Clone)]
pub struct MainPathResult {
    pub path: Vec<usize>,
    pub path_labels: Vec<String>,
    pub weights: SpcWeights,
    pub scheme: WeightScheme,
}

/// Greedy forward traversal from the virtual source, always taking the
/// outgoing edge with the highest traversal count; ties break toward the
/// smallest node index.
pub fn main_path(g: &TemporalDigraph) -> Result<MainPathResult> {
    let weights = spc_weights(g)?;
    main_path_with_weights(g, weights)
}

/// Main-path extraction over precomputed edge weights. The traversal
/// depends only on weight comparisons, so uniformly scaled weights select
/// the same path.
pub fn main_path_with_weights(g: &TemporalDigraph, weights: SpcWeights) -> Result<MainPathResult> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    // Per-edge lookup for the flow direction cited -> citing.
    let mut count_of = std::collections::HashMap::new();
    for (k, e) in g.edges().iter().enumerate() {
        count_of.insert((e.cited, e.citing), weights.edge_counts[k]);
    }
    // First hop: pick the root whose virtual edge carries the most paths.
    let mut current = {
        let mut best: Option<(i64, usize)> = None;
        for &(v, count) in &weights.source_counts {
            let better = match best {
                None => true,
                Some((bc, bv)) => count > bc || (count == bc && v < bv),
            };
            if better {
                best = Some((count, v));
            }
        }
        best.ok_or(Error::EmptyGraph)?.1
    };
    let mut path = vec![current];
    loop {
        // Flow successors of `current` are its citers.
        let mut best: Option<(i64, usize)> = None;
        for &w in g.citers_of_node(current) {
            let count = count_of[&(current, w)];
            let better = match best {
                None => true,
                Some((bc, bw)) => count > bc || (count == bc && w < bw),
            };
            if better {
                best = Some((count, w));
            }
        }
        match best {
            Some((_, w)) => {
                path.push(w);
                current = w;
            }
            None => break,
        }
    }
    let path_labels = path.iter().map(|&i| g.labels()[i].clone()).collect();
    Ok(MainPathResult { path, path_labels, weights, scheme: WeightScheme::SearchPathCount })
}
