//! Core graph and matrix types plus the bipartite projections.
//!
//! A [`TemporalDigraph`] stores a directed citation graph (citing -> cited)
//! with an optional publication order. An [`AffiliationMatrix`] stores a
//! weighted bipartite network as a sparse rectangular matrix. Projecting an
//! affiliation matrix onto its rows ([`row_projection`], the matrix product
//! of the matrix with its own transpose) or its columns ([`col_projection`])
//! yields a [`SimilarityMatrix`].

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// Projected similarity blocks are stored dense up to this dimension and
/// sparse above it; projections densify, inputs rarely do.
pub const DENSE_CUTOFF: usize = 4096;

/// A node identity: a unique label plus its dense index within one network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeLabel {
    pub label: String,
    pub index: usize,
}

/// A directed edge, by node index. `citing` references `cited`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub citing: usize,
    pub cited: usize,
    pub weight: f64,
}

/// Label arena shared by all network types: unique labels, contiguous indices.
#[derive(Debug, Clone, Default)]
pub(crate) struct LabelArena {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelArena {
    pub(crate) fn insert(&mut self, label: &str) -> Result<usize> {
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if let Some(&i) = self.index.get(label) {
            return Ok(i);
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        Ok(i)
    }

    pub(crate) fn insert_unique(&mut self, label: &str) -> Result<usize> {
        if self.index.contains_key(label) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        self.insert(label)
    }

    pub(crate) fn get(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub(crate) fn len(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Directed citation graph with optional per-node publication order.
///
/// Nodes carry contiguous indices assigned in declaration (or first
/// appearance) order. At most one edge exists per ordered pair; duplicate
/// input edges collapse by weight summation. Self-loops are rejected unless
/// the graph was built with [`DigraphBuilder::allow_self_loops`] (journal
/// graphs carry self-citations on the diagonal).
#[derive(Debug, Clone)]
pub struct TemporalDigraph {
    arena: LabelArena,
    edges: Vec<Edge>,
    /// Outgoing adjacency: `out[i]` lists (cited index, weight), sorted.
    out: Vec<Vec<(usize, f64)>>,
    /// Incoming adjacency: `incoming[j]` lists citing indices, sorted.
    incoming: Vec<Vec<usize>>,
    order: Option<Vec<i64>>,
}

impl TemporalDigraph {
    pub fn builder() -> DigraphBuilder {
        DigraphBuilder::default()
    }

    /// Unweighted graph from (citing, cited) label pairs.
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Self> {
        let mut b = Self::builder();
        for &(citing, cited) in edges {
            b = b.edge(citing, cited);
        }
        b.build()
    }

    pub fn node_count(&self) -> usize {
        self.arena.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arena.len() == 0
    }

    pub fn labels(&self) -> &[String] {
        self.arena.labels()
    }

    pub fn node(&self, index: usize) -> NodeLabel {
        NodeLabel {
            label: self.arena.labels()[index].clone(),
            index,
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.arena.get(label)
    }

    /// Edges sorted by (citing, cited).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Cited neighbors of `i` (the in-network reference list), sorted.
    pub fn cited_by_node(&self, i: usize) -> &[(usize, f64)] {
        &self.out[i]
    }

    /// Citing neighbors of `j` (in-network citers), sorted.
    pub fn citers_of_node(&self, j: usize) -> &[usize] {
        &self.incoming[j]
    }

    pub fn order(&self) -> Option<&[i64]> {
        self.order.as_deref()
    }

    pub fn has_edge(&self, citing: usize, cited: usize) -> bool {
        self.out[citing].binary_search_by(|&(c, _)| c.cmp(&cited)).is_ok()
    }

    /// Edges violating the publication order: citing must rank strictly
    /// after cited. Empty result means the adjacency matrix is strictly
    /// triangular under the order, hence the graph is acyclic and consistent
    /// with its timestamps.
    pub fn check_temporal_acyclicity(&self) -> Result<Vec<Edge>> {
        let order = self.order.as_ref().ok_or(Error::MissingOrder)?;
        Ok(self
            .edges
            .iter()
            .copied()
            .filter(|e| order[e.citing] <= order[e.cited])
            .collect())
    }

    /// Nodes citing nothing in-network.
    pub fn reference_roots(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&i| self.out[i].is_empty()).collect()
    }

    /// Nodes never cited in-network.
    pub fn uncited_nodes(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&j| self.incoming[j].is_empty()).collect()
    }

    /// A cycle witness as a node-index sequence `v0 -> v1 -> ... -> v0`,
    /// or `None` when the graph is acyclic.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        // Iterative DFS with an explicit stack; color 0 = white, 1 = on
        // stack, 2 = done.
        let n = self.node_count();
        let mut color = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if color[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < self.out[v].len() {
                    let (w, _) = self.out[v][*next];
                    *next += 1;
                    match color[w] {
                        0 => {
                            color[w] = 1;
                            parent[w] = v;
                            stack.push((w, 0));
                        }
                        1 => {
                            // Back edge v -> w closes a cycle.
                            let mut cycle = vec![w];
                            let mut cur = v;
                            while cur != w {
                                cycle.push(cur);
                                cur = parent[cur];
                            }
                            cycle.push(w);
                            cycle.reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }
}

/// Incremental construction of a [`TemporalDigraph`].
#[derive(Debug, Default)]
pub struct DigraphBuilder {
    declared: Option<Vec<String>>,
    edges: Vec<(String, String, Option<f64>)>,
    order: Vec<(String, i64)>,
    allow_self_loops: bool,
}

impl DigraphBuilder {
    /// Declare the node set up front. Edges referencing other labels are
    /// rejected, and indices follow the declared order.
    pub fn nodes<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.declared = Some(labels.into_iter().map(Into::into).collect());
        self
    }

    pub fn edge(mut self, citing: &str, cited: &str) -> Self {
        self.edges.push((citing.to_string(), cited.to_string(), None));
        self
    }

    pub fn weighted_edge(mut self, citing: &str, cited: &str, weight: f64) -> Self {
        self.edges.push((citing.to_string(), cited.to_string(), Some(weight)));
        self
    }

    /// Assign a publication rank to a node. When any rank is given, every
    /// node must receive one.
    pub fn rank(mut self, label: &str, rank: i64) -> Self {
        self.order.push((label.to_string(), rank));
        self
    }

    pub fn allow_self_loops(mut self, allow: bool) -> Self {
        self.allow_self_loops = allow;
        self
    }

    pub fn build(self) -> Result<TemporalDigraph> {
        let mut arena = LabelArena::default();
        if let Some(declared) = &self.declared {
            for label in declared {
                arena.insert_unique(label)?;
            }
        }
        // Resolve edges; collapse duplicates by weight summation. Two
        // occurrences of the same pair with differing explicit weights are
        // a conflict, not a multiset.
        let mut collapsed: BTreeMap<(usize, usize), (f64, Option<f64>)> = BTreeMap::new();
        for (citing, cited, weight) in &self.edges {
            let (ci, di) = if self.declared.is_some() {
                let ci = arena.get(citing).ok_or_else(|| Error::UndeclaredNode {
                    citing: citing.clone(),
                    cited: cited.clone(),
                })?;
                let di = arena.get(cited).ok_or_else(|| Error::UndeclaredNode {
                    citing: citing.clone(),
                    cited: cited.clone(),
                })?;
                (ci, di)
            } else {
                (arena.insert(citing)?, arena.insert(cited)?)
            };
            if ci == di && !self.allow_self_loops {
                return Err(Error::SelfLoop(citing.clone()));
            }
            if let Some(w) = weight {
                if *w < 0.0 || !w.is_finite() {
                    return Err(Error::NegativeWeight {
                        citing: citing.clone(),
                        cited: cited.clone(),
                        weight: *w,
                    });
                }
            }
            let w = weight.unwrap_or(1.0);
            match collapsed.entry((ci, di)) {
                Entry::Vacant(slot) => {
                    slot.insert((w, *weight));
                }
                Entry::Occupied(mut slot) => {
                    let (sum, explicit) = slot.get_mut();
                    if let (Some(prev), Some(new)) = (*explicit, *weight) {
                        if prev != new {
                            return Err(Error::ConflictingWeights {
                                citing: citing.clone(),
                                cited: cited.clone(),
                                first: prev,
                                second: new,
                            });
                        }
                    }
                    if explicit.is_none() {
                        *explicit = *weight;
                    }
                    *sum += w;
                }
            }
        }
        let n = arena.len();
        let mut order = None;
        if !self.order.is_empty() {
            let mut ranks = vec![None; n];
            for (label, rank) in &self.order {
                let i = arena.get(label).ok_or_else(|| Error::UnknownLabel(label.clone()))?;
                ranks[i] = Some(*rank);
            }
            let mut filled = Vec::with_capacity(n);
            for (i, rank) in ranks.into_iter().enumerate() {
                match rank {
                    Some(r) => filled.push(r),
                    None => return Err(Error::UnknownLabel(format!(
                        "node `{}` has no rank in the supplied order",
                        arena.labels()[i]
                    ))),
                }
            }
            order = Some(filled);
        }
        let edges: Vec<Edge> = collapsed
            .into_iter()
            .map(|((citing, cited), (weight, _))| Edge { citing, cited, weight })
            .collect();
        let mut out = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for e in &edges {
            out[e.citing].push((e.cited, e.weight));
            incoming[e.cited].push(e.citing);
        }
        Ok(TemporalDigraph { arena, edges, out, incoming, order })
    }
}

/// Labeled real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl WeightVector {
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Self {
        assert_eq!(labels.len(), values.len(), "labels and values must align");
        Self { labels, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.values[i])
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.labels.iter().map(String::as_str).zip(self.values.iter().copied())
    }
}

/// Weighted bipartite network as a sparse rectangular matrix.
///
/// Rows and columns are independent label namespaces (articles x cited
/// sources, authors x papers, documents x terms). All entries are
/// non-negative; `is_binary` reports whether every entry is 0 or 1.
#[derive(Debug, Clone)]
pub struct AffiliationMatrix {
    row_arena: LabelArena,
    col_arena: LabelArena,
    /// Per-row sparse entries (col, weight), sorted by column.
    rows: Vec<Vec<(usize, f64)>>,
    /// Per-column sparse entries (row, weight), sorted by row.
    cols: Vec<Vec<(usize, f64)>>,
    binary: bool,
}

impl AffiliationMatrix {
    /// Build from (row-label, col-label, weight) triples. Duplicate cells
    /// collapse by weight summation.
    pub fn from_entries(entries: &[(&str, &str, f64)]) -> Result<Self> {
        let mut row_arena = LabelArena::default();
        let mut col_arena = LabelArena::default();
        let mut cells: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for &(row, col, w) in entries {
            if w < 0.0 || !w.is_finite() {
                return Err(Error::NegativeWeight {
                    citing: row.to_string(),
                    cited: col.to_string(),
                    weight: w,
                });
            }
            let r = row_arena.insert(row)?;
            let c = col_arena.insert(col)?;
            *cells.entry((r, c)).or_insert(0.0) += w;
        }
        if cells.is_empty() {
            return Err(Error::EmptyAffiliation);
        }
        Self::from_cells(row_arena, col_arena, cells)
    }

    /// View a citation digraph as its equivalent affiliation matrix: rows
    /// are citing articles, columns are cited sources, both over the full
    /// node set of the graph.
    pub fn from_digraph(g: &TemporalDigraph) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::EmptyAffiliation);
        }
        let mut row_arena = LabelArena::default();
        let mut col_arena = LabelArena::default();
        for label in g.labels() {
            row_arena.insert(label)?;
            col_arena.insert(label)?;
        }
        let mut cells = BTreeMap::new();
        for e in g.edges() {
            cells.insert((e.citing, e.cited), e.weight);
        }
        Self::from_cells(row_arena, col_arena, cells)
    }

    pub(crate) fn from_parts(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        cells: BTreeMap<(usize, usize), f64>,
    ) -> Result<Self> {
        let mut row_arena = LabelArena::default();
        let mut col_arena = LabelArena::default();
        for l in &row_labels {
            row_arena.insert_unique(l)?;
        }
        for l in &col_labels {
            col_arena.insert_unique(l)?;
        }
        Self::from_cells(row_arena, col_arena, cells)
    }

    fn from_cells(
        row_arena: LabelArena,
        col_arena: LabelArena,
        cells: BTreeMap<(usize, usize), f64>,
    ) -> Result<Self> {
        let mut rows = vec![Vec::new(); row_arena.len()];
        let mut cols = vec![Vec::new(); col_arena.len()];
        let mut binary = true;
        for (&(r, c), &w) in &cells {
            if w == 0.0 {
                continue;
            }
            if w != 1.0 {
                binary = false;
            }
            rows[r].push((c, w));
            cols[c].push((r, w));
        }
        Ok(Self { row_arena, col_arena, rows, cols, binary })
    }

    pub fn n_rows(&self) -> usize {
        self.row_arena.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_arena.len()
    }

    pub fn row_labels(&self) -> &[String] {
        self.row_arena.labels()
    }

    pub fn col_labels(&self) -> &[String] {
        self.col_arena.labels()
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.row_arena.get(label)
    }

    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.col_arena.get(label)
    }

    /// True when every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.binary
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.rows[row]
            .binary_search_by(|&(c, _)| c.cmp(&col))
            .map(|k| self.rows[row][k].1)
            .unwrap_or(0.0)
    }

    pub fn row(&self, r: usize) -> &[(usize, f64)] {
        &self.rows[r]
    }

    pub fn col(&self, c: usize) -> &[(usize, f64)] {
        &self.cols[c]
    }

    /// Require binary entries; names the first offending cell otherwise.
    pub fn require_binary(&self) -> Result<()> {
        if self.binary {
            return Ok(());
        }
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, w) in row {
                if w != 1.0 {
                    return Err(Error::NonBinaryAffiliation {
                        row: self.row_labels()[r].clone(),
                        col: self.col_labels()[c].clone(),
                        value: w,
                    });
                }
            }
        }
        Ok(())
    }

    /// The matrix with rows and columns swapped.
    pub fn transposed(&self) -> Self {
        Self {
            row_arena: self.col_arena.clone(),
            col_arena: self.row_arena.clone(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            binary: self.binary,
        }
    }
}

#[derive(Debug, Clone)]
enum SimilarityStorage {
    /// Row-major n*n entries.
    Dense(Vec<f64>),
    /// Upper triangle including diagonal, keyed (i, j) with i <= j.
    Sparse(BTreeMap<(usize, usize), f64>),
}

/// Square symmetric labeled real matrix produced by projections and
/// similarity indices.
#[derive(Debug, Clone)]
pub struct SimilarityMatrix {
    labels: Vec<String>,
    storage: SimilarityStorage,
}

impl SimilarityMatrix {
    /// Dense construction from row-major entries; callers must supply a
    /// symmetric square matrix.
    pub fn from_dense(labels: Vec<String>, entries: Vec<f64>) -> Self {
        assert_eq!(labels.len() * labels.len(), entries.len(), "square matrix required");
        Self { labels, storage: SimilarityStorage::Dense(entries) }
    }

    pub(crate) fn from_upper_triangle(
        labels: Vec<String>,
        upper: BTreeMap<(usize, usize), f64>,
        dense_cutoff: usize,
    ) -> Self {
        let n = labels.len();
        if n <= dense_cutoff {
            let mut entries = vec![0.0; n * n];
            for (&(i, j), &v) in &upper {
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
            Self { labels, storage: SimilarityStorage::Dense(entries) }
        } else {
            Self { labels, storage: SimilarityStorage::Sparse(upper) }
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            SimilarityStorage::Dense(d) => d[i * self.n() + j],
            SimilarityStorage::Sparse(m) => {
                let key = if i <= j { (i, j) } else { (j, i) };
                m.get(&key).copied().unwrap_or(0.0)
            }
        }
    }

    /// Lookup by label pair.
    pub fn get_labeled(&self, a: &str, b: &str) -> Option<f64> {
        Some(self.get(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.get(i, i)).collect()
    }

    /// Visit every stored pair with `i <= j` and a nonzero value
    /// (dense storage visits all pairs, zero or not).
    pub fn for_each_upper(&self, mut f: impl FnMut(usize, usize, f64)) {
        match &self.storage {
            SimilarityStorage::Dense(d) => {
                let n = self.n();
                for i in 0..n {
                    for j in i..n {
                        f(i, j, d[i * n + j]);
                    }
                }
            }
            SimilarityStorage::Sparse(m) => {
                for (&(i, j), &v) in m {
                    f(i, j, v);
                }
            }
        }
    }

    /// Materialize dense rows (for reports and small-matrix callers).
    pub fn to_dense_rows(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// The same matrix with the diagonal zeroed; self-coupling counts are
    /// reported by default, this is the masked view.
    pub fn with_zeroed_diagonal(&self) -> Self {
        let n = self.n();
        match &self.storage {
            SimilarityStorage::Dense(d) => {
                let mut entries = d.clone();
                for i in 0..n {
                    entries[i * n + i] = 0.0;
                }
                Self { labels: self.labels.clone(), storage: SimilarityStorage::Dense(entries) }
            }
            SimilarityStorage::Sparse(m) => {
                let upper = m.iter().filter(|((i, j), _)| i != j).map(|(&k, &v)| (k, v)).collect();
                Self { labels: self.labels.clone(), storage: SimilarityStorage::Sparse(upper) }
            }
        }
    }

    /// Submatrix over `keep` (indices into this matrix, in order).
    pub fn submatrix(&self, keep: &[usize]) -> Self {
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let n = labels.len();
        let mut entries = vec![0.0; n * n];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                entries[a * n + b] = self.get(i, j);
            }
        }
        Self { labels, storage: SimilarityStorage::Dense(entries) }
    }

    /// Error if any off-diagonal pair differs by more than `tol`.
    pub fn require_symmetric(&self, tol: f64) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            for j in (i + 1)..n {
                let a = self.get(i, j);
                let b = self.get(j, i);
                if (a - b).abs() > tol {
                    return Err(Error::AsymmetricMatrix { row: i, col: j, a, b });
                }
            }
        }
        Ok(())
    }
}

/// Dense row-major real matrix for the numeric kernels (normalized journal
/// matrices, SVD factors).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, data: vec![0.0; nrows * ncols] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self { nrows, ncols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transposed(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "inner dimensions must agree");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.ncols {
                    out.data[i * other.ncols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Scalar products of all row pairs: the matrix product of the affiliation
/// matrix with its own transpose. For binary input the entry is the number
/// of shared columns and the diagonal is the row sum.
pub fn row_projection(aff: &AffiliationMatrix) -> SimilarityMatrix {
    row_projection_with_cutoff(aff, DENSE_CUTOFF)
}

/// Scalar products of all column pairs (transpose-side projection). For
/// binary input the diagonal counts the rows containing the column.
pub fn col_projection(aff: &AffiliationMatrix) -> SimilarityMatrix {
    col_projection_with_cutoff(aff, DENSE_CUTOFF)
}

pub fn row_projection_with_cutoff(aff: &AffiliationMatrix, cutoff: usize) -> SimilarityMatrix {
    project(&aff.cols, aff.row_labels(), cutoff)
}

pub fn col_projection_with_cutoff(aff: &AffiliationMatrix, cutoff: usize) -> SimilarityMatrix {
    project(&aff.rows, aff.col_labels(), cutoff)
}

/// Shared projection kernel. `slices` lists, per shared-axis coordinate,
/// the (item, weight) pairs incident to it; the output entry (i, j) is the
/// scalar product of items i and j. Accumulating only the upper triangle
/// and mirroring makes the result exactly symmetric.
fn project(slices: &[Vec<(usize, f64)>], labels: &[String], cutoff: usize) -> SimilarityMatrix {
    let mut upper: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for slice in slices {
        for (a, &(i, wi)) in slice.iter().enumerate() {
            for &(j, wj) in &slice[a..] {
                *upper.entry((i, j)).or_insert(0.0) += wi * wj;
            }
        }
    }
    SimilarityMatrix::from_upper_triangle(labels.to_vec(), upper, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::nrays;

    #[test]
    fn builds_nrays_lower_triangular() {
        let g = nrays();
        assert_eq!(g.node_count(), 12);
        assert_eq!(g.edge_count(), 16);
        // Strictly lower triangular: every edge cites an earlier article.
        for e in g.edges() {
            assert!(e.citing > e.cited, "edge {:?}", e);
        }
        assert!(g.check_temporal_acyclicity().unwrap().is_empty());
        assert!(g.find_cycle().is_none());
    }

    #[test]
    fn empty_edge_list_with_declared_nodes() {
        let g = TemporalDigraph::builder().nodes(["a", "b", "c"]).build().unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn star_graph_column() {
        let g = TemporalDigraph::from_edges(&[("b", "a"), ("c", "a")]).unwrap();
        assert_eq!(g.node_count(), 3);
        let a = g.index_of("a").unwrap();
        assert_eq!(g.citers_of_node(a).len(), 2);
    }

    #[test]
    fn duplicate_edges_collapse_by_summation() {
        let g = TemporalDigraph::from_edges(&[("b", "a"), ("b", "a")]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].weight, 2.0);
        let g = TemporalDigraph::builder()
            .weighted_edge("b", "a", 3.0)
            .weighted_edge("b", "a", 3.0)
            .build()
            .unwrap();
        assert_eq!(g.edges()[0].weight, 6.0);
    }

    #[test]
    fn conflicting_explicit_weights_rejected() {
        let err = TemporalDigraph::builder()
            .weighted_edge("b", "a", 3.0)
            .weighted_edge("b", "a", 4.0)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::ConflictingWeights { .. }));
    }

    #[test]
    fn undeclared_node_rejected() {
        let err = TemporalDigraph::builder()
            .nodes(["a", "b"])
            .edge("b", "z")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::UndeclaredNode { .. }));
    }

    #[test]
    fn self_loop_rejected_unless_allowed() {
        assert!(matches!(
            TemporalDigraph::from_edges(&[("a", "a")]).unwrap_err(),
            Error::SelfLoop(_)
        ));
        let g = TemporalDigraph::builder()
            .allow_self_loops(true)
            .edge("a", "a")
            .build()
            .unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn acyclicity_violations_reported() {
        let g = TemporalDigraph::builder()
            .edge("a", "b")
            .rank("a", 1)
            .rank("b", 2)
            .build()
            .unwrap();
        let violations = g.check_temporal_acyclicity().unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(
            (violations[0].citing, violations[0].cited),
            (g.index_of("a").unwrap(), g.index_of("b").unwrap())
        );

        let cycle = TemporalDigraph::builder()
            .edge("a", "b")
            .edge("b", "a")
            .rank("a", 1)
            .rank("b", 2)
            .build()
            .unwrap();
        assert!(!cycle.check_temporal_acyclicity().unwrap().is_empty());
        assert!(cycle.find_cycle().is_some());
    }

    #[test]
    fn missing_order_is_an_error_not_a_violation() {
        let g = TemporalDigraph::from_edges(&[("b", "a")]).unwrap();
        assert!(matches!(g.check_temporal_acyclicity(), Err(Error::MissingOrder)));
    }

    #[test]
    fn partial_order_rejected() {
        let err = TemporalDigraph::builder()
            .edge("b", "a")
            .rank("a", 1)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::UnknownLabel(_)));
    }

    #[test]
    fn row_projection_coupling_counts() {
        let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
        let b = row_projection(&aff);
        assert_eq!(b.get_labeled("3", "4").unwrap(), 2.0);
        assert_eq!(b.get_labeled("2", "3").unwrap(), 1.0);
        // Diagonal is the reference-list length.
        assert_eq!(b.get_labeled("12", "12").unwrap(), 3.0);
    }

    #[test]
    fn col_projection_cocitation_counts() {
        let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
        let c = col_projection(&aff);
        assert_eq!(c.get_labeled("8", "9").unwrap(), 3.0);
        assert_eq!(c.get_labeled("1", "2").unwrap(), 2.0);
        assert_eq!(c.get_labeled("8", "8").unwrap(), 4.0);
    }

    #[test]
    fn identity_affiliation_projects_to_identity() {
        let aff = AffiliationMatrix::from_entries(&[("r1", "c1", 1.0), ("r2", "c2", 1.0)]).unwrap();
        let b = row_projection(&aff);
        assert_eq!(b.to_dense_rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn duplicate_rows_share_all_references() {
        let aff = AffiliationMatrix::from_entries(&[
            ("r1", "c1", 1.0), ("r1", "c2", 1.0), ("r1", "c3", 1.0),
            ("r2", "c1", 1.0), ("r2", "c2", 1.0), ("r2", "c3", 1.0),
        ]).unwrap();
        assert_eq!(row_projection(&aff).get(0, 1), 3.0);
    }

    #[test]
    fn single_row_cocitation_is_outer_product() {
        let aff =
            AffiliationMatrix::from_entries(&[("r", "x", 1.0), ("r", "y", 1.0)]).unwrap();
        let c = col_projection(&aff);
        assert_eq!(c.to_dense_rows(), vec![vec![1.0, 1.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn all_ones_projection() {
        let mut entries = Vec::new();
        let rows = ["r1", "r2", "r3"];
        let cols = ["c1", "c2"];
        for r in rows {
            for c in cols {
                entries.push((r, c, 1.0));
            }
        }
        let aff = AffiliationMatrix::from_entries(&entries).unwrap();
        let b = row_projection(&aff);
        let c = col_projection(&aff);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b.get(i, j), 2.0);
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(c.get(i, j), 3.0);
            }
        }
    }

    #[test]
    fn col_projection_equals_row_projection_of_transpose() {
        let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
        let c = col_projection(&aff);
        let bt = row_projection(&aff.transposed());
        for i in 0..c.n() {
            for j in 0..c.n() {
                assert_eq!(c.get(i, j), bt.get(i, j));
            }
        }
    }

    #[test]
    fn zeroed_diagonal_view() {
        let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
        let b = row_projection(&aff);
        let masked = b.with_zeroed_diagonal();
        assert_eq!(masked.get(2, 2), 0.0);
        assert_eq!(masked.get(2, 3), b.get(2, 3));
    }

    #[test]
    fn sparse_storage_above_cutoff() {
        let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
        let sparse = row_projection_with_cutoff(&aff, 4);
        let dense = row_projection(&aff);
        for i in 0..12 {
            for j in 0..12 {
                assert_eq!(sparse.get(i, j), dense.get(i, j));
            }
        }
    }

    #[test]
    fn empty_labels_rejected() {
        assert!(TemporalDigraph::from_edges(&[("", "a")]).is_err());
    }
}
