//! Journal citation-network normalizations and recursive prestige measures.
//!
//! A [`JournalCitationMatrix`] holds reciprocal citation counts between
//! journals, self-citations on the diagonal. Entry (i, j) counts citations
//! of journal j by journal i; the row sum of j is its total out-reference
//! count, the column sum its total citations received.
//!
//! Two normalizations matter. Dividing each entry by the cited journal's
//! out-reference count yields the influence normalization, whose transpose
//! has principal eigenvalue 1; its fixed point is the recursive influence
//! weight, found by power iteration and rescaled so the components sum to
//! the number of journals. Dividing each row by its own sum instead yields
//! a row-stochastic transition matrix whose transpose redistributes weight
//! without changing the component sum; its stationary vector is the
//! Markov-chain variant. PageRank adds teleportation and returns a
//! probability distribution.

use crate::error::{Error, Result};
use crate::netcore::{DenseMatrix, TemporalDigraph, WeightVector};

/// Square matrix of reciprocal journal citation counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JournalCitationMatrix {
    journals: Vec<String>,
    counts: Vec<u64>,
}

impl JournalCitationMatrix {
    pub fn new(journals: Vec<String>, counts: Vec<u64>) -> Result<Self> {
        if journals.len() * journals.len() != counts.len() {
            return Err(Error::Parse {
                path: "<matrix>".into(),
                line: 0,
                message: format!(
                    "{} labels but {} cells; matrix must be square",
                    journals.len(),
                    counts.len()
                ),
            });
        }
        Ok(Self { journals, counts })
    }

    pub fn n(&self) -> usize {
        self.journals.len()
    }

    pub fn journals(&self) -> &[String] {
        &self.journals
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.journals.iter().position(|j| j == label)
    }

    /// Citations of journal `cited` by journal `citing`.
    pub fn get(&self, citing: usize, cited: usize) -> u64 {
        self.counts[citing * self.n() + cited]
    }

    /// Total out-references per journal (row sums).
    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| self.get(i, j)).sum()).collect()
    }

    /// Total citations received per journal (column sums).
    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.n()).map(|j| (0..self.n()).map(|i| self.get(i, j)).sum()).collect()
    }

    /// The same network with the self-citation diagonal removed.
    pub fn without_self_citations(&self) -> Self {
        let n = self.n();
        let mut counts = self.counts.clone();
        for i in 0..n {
            counts[i * n + i] = 0;
        }
        Self { journals: self.journals.clone(), counts }
    }

    /// Submatrix over `keep` (indices in ascending original order).
    pub fn submatrix(&self, keep: &[usize]) -> Self {
        let journals = keep.iter().map(|&i| self.journals[i].clone()).collect();
        let mut counts = Vec::with_capacity(keep.len() * keep.len());
        for &i in keep {
            for &j in keep {
                counts.push(self.get(i, j));
            }
        }
        Self { journals, counts }
    }

    fn require_positive_row_sums(&self) -> Result<Vec<u64>> {
        let sums = self.row_sums();
        for (i, &s) in sums.iter().enumerate() {
            if s == 0 {
                return Err(Error::ZeroRowSum(self.journals[i].clone()));
            }
        }
        Ok(sums)
    }

    /// Strongly connected components of the nonzero citation pattern,
    /// each listed in ascending index order.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        // Kosaraju: forward DFS finishing order, then reverse-graph sweeps.
        let n = self.n();
        let edge = |i: usize, j: usize| self.get(i, j) > 0 && i != j;
        let mut finish = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            seen[root] = true;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < n {
                    let w = *next;
                    *next += 1;
                    if edge(v, w) && !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    finish.push(v);
                    stack.pop();
                }
            }
        }
        let mut component = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for &root in finish.iter().rev() {
            if component[root] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![root];
            component[root] = id;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if edge(w, v) && component[w] == usize::MAX {
                        component[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components.sort_by_key(|c| c[0]);
        components
    }

    fn require_irreducible(&self) -> Result<()> {
        let components = self.strongly_connected_components();
        if components.len() > 1 {
            let labeled = components
                .into_iter()
                .map(|c| c.into_iter().map(|i| self.journals[i].clone()).collect())
                .collect();
            return Err(Error::ReducibleMatrix(labeled));
        }
        Ok(())
    }
}

/// Counts divided by the cited journal's total out-reference count: entry
/// (i, j) becomes `a_ij / rowsum(j)`. The transpose of this matrix has
/// principal eigenvalue 1; its positive fixed point is the influence weight.
pub fn influence_normalized(a: &JournalCitationMatrix) -> Result<DenseMatrix> {
    let sums = a.require_positive_row_sums()?;
    let n = a.n();
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a.get(i, j) as f64 / sums[j] as f64);
        }
    }
    Ok(m)
}

/// Counts divided by the citing journal's total out-reference count: entry
/// (i, j) becomes `a_ij / rowsum(i)`. Row-stochastic; its transpose
/// preserves component sums.
pub fn stochastic_normalized(a: &JournalCitationMatrix) -> Result<DenseMatrix> {
    let sums = a.require_positive_row_sums()?;
    let n = a.n();
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a.get(i, j) as f64 / sums[i] as f64);
        }
    }
    Ok(m)
}

/// Citations received over references given, per journal. These are exactly
/// the weights after one redistribution step from the uniform start.
pub fn import_export(a: &JournalCitationMatrix) -> Result<WeightVector> {
    let row = a.require_positive_row_sums()?;
    let col = a.col_sums();
    let values = col.iter().zip(&row).map(|(&c, &r)| c as f64 / r as f64).collect();
    Ok(WeightVector::new(a.journals().to_vec(), values))
}

/// How a converged weight vector is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    /// Components sum to the number of journals.
    SumN,
    /// Components sum to one.
    Probability,
}

impl Scaling {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scaling::SumN => "sum-n",
            Scaling::Probability => "probability",
        }
    }
}

/// A converged rank vector with its iteration diagnostics.
#[derive(Debug, Clone)]
pub struct RankResult {
    pub weights: WeightVector,
    pub iterations: usize,
    /// Max-norm of the fixed-point defect at the reported weights.
    pub residual: f64,
    pub scaling: Scaling,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

/// Recursive journal influence weights: the fixed point of the transposed
/// influence normalization, computed by power iteration from the all-ones
/// vector and rescaled so the components sum to the number of journals.
///
/// Requires a strongly connected citation pattern; reducible input has no
/// unique fixed point and is rejected with its component decomposition.
pub fn influence_weights(
    a: &JournalCitationMatrix,
    tolerance: f64,
    max_iterations: usize,
) -> Result<RankResult> {
    a.require_irreducible()?;
    let gamma = influence_normalized(a)?;
    let n = a.n();
    let target = n as f64;
    let mut w = vec![1.0; n];
    for iteration in 1..=max_iterations {
        let next = transpose_apply(&gamma, &w);
        let change = max_abs_diff(&next, &w);
        w = next;
        // The defect survives rescaling multiplicatively, so test it at the
        // reported scale.
        let scale = target / w.iter().sum::<f64>();
        if change * scale < tolerance {
            let scaled: Vec<f64> = w.iter().map(|v| v * scale).collect();
            let residual = max_abs_diff(&transpose_apply(&gamma, &scaled), &scaled);
            return Ok(RankResult {
                weights: WeightVector::new(a.journals().to_vec(), scaled),
                iterations: iteration,
                residual,
                scaling: Scaling::SumN,
            });
        }
    }
    let change = {
        let next = transpose_apply(&gamma, &w);
        max_abs_diff(&next, &w)
    };
    Err(Error::NoConvergence { iterations: max_iterations, residual: change })
}

/// Markov-chain journal weights: the stationary vector of the transposed
/// row-stochastic matrix. The iteration starts from the all-ones vector and
/// conserves the component sum at every step, so the result sums to the
/// number of journals without rescaling.
pub fn geller_weights(
    a: &JournalCitationMatrix,
    tolerance: f64,
    max_iterations: usize,
) -> Result<RankResult> {
    geller_weights_observed(a, tolerance, max_iterations, |_| {})
}

/// As [`geller_weights`], invoking `observe` with each new iterate (the
/// hook exists so conservation can be checked from outside).
pub fn geller_weights_observed(
    a: &JournalCitationMatrix,
    tolerance: f64,
    max_iterations: usize,
    mut observe: impl FnMut(&[f64]),
) -> Result<RankResult> {
    a.require_irreducible()?;
    let transition = stochastic_normalized(a)?;
    let n = a.n();
    let mut w = vec![1.0; n];
    let mut last_change = f64::INFINITY;
    for iteration in 1..=max_iterations {
        let next = transpose_apply(&transition, &w);
        observe(&next);
        last_change = max_abs_diff(&next, &w);
        w = next;
        if last_change < tolerance {
            let residual = max_abs_diff(&transpose_apply(&transition, &w), &w);
            return Ok(RankResult {
                weights: WeightVector::new(a.journals().to_vec(), w),
                iterations: iteration,
                residual,
                scaling: Scaling::SumN,
            });
        }
    }
    Err(Error::NoConvergence { iterations: max_iterations, residual: last_change })
}

pub const DEFAULT_DAMPING: f64 = 0.85;

/// PageRank over a journal citation matrix: transition probabilities
/// proportional to citation counts, uniform teleport, dangling rows
/// redistributed uniformly. Returns a probability distribution.
pub fn pagerank_matrix(
    a: &JournalCitationMatrix,
    damping: f64,
    tolerance: f64,
    max_iterations: usize,
) -> Result<RankResult> {
    let n = a.n();
    let mut out: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let w = a.get(i, j);
            if w > 0 {
                out[i].push((j, w as f64));
            }
        }
    }
    pagerank_core(a.journals().to_vec(), &out, damping, tolerance, max_iterations)
}

/// PageRank over a citation digraph, transition probabilities proportional
/// to edge weights.
pub fn pagerank_digraph(
    g: &TemporalDigraph,
    damping: f64,
    tolerance: f64,
    max_iterations: usize,
) -> Result<RankResult> {
    let n = g.node_count();
    let mut out: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for e in g.edges() {
        if e.weight > 0.0 {
            out[e.citing].push((e.cited, e.weight));
        }
    }
    pagerank_core(g.labels().to_vec(), &out, damping, tolerance, max_iterations)
}

fn pagerank_core(
    labels: Vec<String>,
    out: &[Vec<(usize, f64)>],
    damping: f64,
    tolerance: f64,
    max_iterations: usize,
) -> Result<RankResult> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidDamping(damping));
    }
    let n = labels.len();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let out_weight: Vec<f64> = out.iter().map(|es| es.iter().map(|&(_, w)| w).sum()).collect();
    let uniform = 1.0 / n as f64;
    let mut x = vec![uniform; n];
    let mut last_change = f64::INFINITY;
    for iteration in 1..=max_iterations {
        let mut next = vec![0.0; n];
        let mut dangling = 0.0;
        for i in 0..n {
            if out_weight[i] == 0.0 {
                dangling += x[i];
                continue;
            }
            let share = x[i] / out_weight[i];
            for &(j, w) in &out[i] {
                next[j] += share * w;
            }
        }
        let teleport = (1.0 - damping) * uniform + damping * dangling * uniform;
        for v in &mut next {
            *v = damping * *v + teleport;
        }
        last_change = max_abs_diff(&next, &x);
        x = next;
        if last_change < tolerance {
            // Kill accumulated drift so the result is a distribution.
            let total: f64 = x.iter().sum();
            for v in &mut x {
                *v /= total;
            }
            return Ok(RankResult {
                weights: WeightVector::new(labels, x),
                iterations: iteration,
                residual: last_change,
                scaling: Scaling::Probability,
            });
        }
    }
    Err(Error::NoConvergence { iterations: max_iterations, residual: last_change })
}

/// The two ego citation environments of a journal: the journals citing it
/// (citation impact environment) and the journals it cites (knowledge
/// base). The seed journal belongs to both.
#[derive(Debug, Clone)]
pub struct EgoEnvironments {
    pub seed: String,
    pub citation_impact: JournalCitationMatrix,
    pub knowledge_base: JournalCitationMatrix,
}

pub fn ego_environments(a: &JournalCitationMatrix, seed: &str) -> Result<EgoEnvironments> {
    let s = a.index_of(seed).ok_or_else(|| Error::UnknownLabel(seed.to_string()))?;
    let n = a.n();
    let impact: Vec<usize> = (0..n).filter(|&j| j == s || a.get(j, s) > 0).collect();
    let base: Vec<usize> = (0..n).filter(|&j| j == s || a.get(s, j) > 0).collect();
    Ok(EgoEnvironments {
        seed: seed.to_string(),
        citation_impact: a.submatrix(&impact),
        knowledge_base: a.submatrix(&base),
    })
}

fn transpose_apply(m: &DenseMatrix, v: &[f64]) -> Vec<f64> {
    let n = m.nrows();
    let mut out = vec![0.0; m.ncols()];
    for i in 0..n {
        let vi = v[i];
        if vi == 0.0 {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += m.get(i, j) * vi;
        }
    }
    out
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    pub(crate) fn five_journals() -> JournalCitationMatrix {
        let labels = ["IPM", "JASIST", "JDoc", "JIS", "Scientometrics"];
        let counts: Vec<u64> = vec![
            79, 65, 15, 6, 24,
            42, 182, 11, 15, 44,
            6, 22, 37, 8, 6,
            20, 26, 13, 30, 11,
            7, 48, 7, 10, 254,
        ];
        JournalCitationMatrix::new(labels.iter().map(|s| s.to_string()).collect(), counts).unwrap()
    }

    #[test]
    fn normalization_divides_by_cited_row_sum() {
        let a = five_journals();
        let gamma = influence_normalized(&a).unwrap();
        assert_relative_eq!(gamma.get(0, 1), 65.0 / 294.0, max_relative = 1e-15);
        // Column sums of the normalization are the import-export ratios.
        let ratios = import_export(&a).unwrap();
        assert_relative_eq!(ratios.values()[0], 154.0 / 189.0, max_relative = 1e-15);
        assert_relative_eq!(ratios.sum(), 4.761991693487383, max_relative = 1e-12);
    }

    #[test]
    fn identity_counts_normalize_to_identity() {
        let a = JournalCitationMatrix::new(
            vec!["a".into(), "b".into()],
            vec![1, 0, 0, 1],
        )
        .unwrap();
        let gamma = influence_normalized(&a).unwrap();
        assert_eq!(gamma.get(0, 0), 1.0);
        assert_eq!(gamma.get(0, 1), 0.0);
        assert_eq!(gamma.get(1, 1), 1.0);
    }

    #[test]
    fn equal_rows_give_equal_entries() {
        let a = JournalCitationMatrix::new(
            vec!["a".into(), "b".into()],
            vec![3, 3, 3, 3],
        )
        .unwrap();
        let gamma = influence_normalized(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(gamma.get(i, j), 0.5);
            }
        }
    }

    #[test]
    fn zero_row_sum_names_the_journal() {
        let a = JournalCitationMatrix::new(
            vec!["alive".into(), "silent".into()],
            vec![2, 1, 0, 0],
        )
        .unwrap();
        match influence_normalized(&a) {
            Err(Error::ZeroRowSum(name)) => assert_eq!(name, "silent"),
            other => panic!("expected zero row sum, got {other:?}"),
        }
    }

    #[test]
    fn balanced_trade_gives_unit_ratios() {
        let a = JournalCitationMatrix::new(
            vec!["a".into(), "b".into()],
            vec![5, 2, 2, 9],
        )
        .unwrap();
        let ratios = import_export(&a).unwrap();
        assert_eq!(ratios.values(), &[1.0, 1.0]);
    }

    #[test]
    fn influence_weights_reproduce_printed_values() {
        let a = five_journals();
        let result = influence_weights(&a, 1e-12, 10_000).unwrap();
        let expected = [0.76, 1.33, 1.03, 0.64, 1.25];
        for (got, want) in result.weights.values().iter().zip(expected) {
            assert!((got - want).abs() < 0.01, "{got} vs {want}");
        }
        assert_relative_eq!(result.weights.sum(), 5.0, epsilon = 1e-9);
        assert!(result.residual < 1e-12);
    }

    #[test]
    fn single_journal_weight_is_one() {
        let a = JournalCitationMatrix::new(vec!["solo".into()], vec![7]).unwrap();
        let result = influence_weights(&a, 1e-12, 100).unwrap();
        assert_eq!(result.weights.values(), &[1.0]);
    }

    #[test]
    fn symmetric_pair_stays_uniform() {
        let a = JournalCitationMatrix::new(
            vec!["a".into(), "b".into()],
            vec![4, 6, 6, 4],
        )
        .unwrap();
        let result = influence_weights(&a, 1e-12, 100).unwrap();
        assert_eq!(result.weights.values(), &[1.0, 1.0]);
    }

    #[test]
    fn reducible_matrix_rejected_with_components() {
        let a = JournalCitationMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            // a <-> b strongly connected, c only receives.
            vec![1, 2, 1, 3, 1, 0, 0, 0, 1],
        )
        .unwrap();
        match influence_weights(&a, 1e-10, 100) {
            Err(Error::ReducibleMatrix(components)) => {
                assert_eq!(components.len(), 2);
            }
            other => panic!("expected reducible error, got {other:?}"),
        }
    }

    #[test]
    fn row_sums_are_fixed_by_the_influence_normalization() {
        // The row-sum vector satisfies gamma * s = s, certifying principal
        // eigenvalue 1.
        let a = five_journals();
        let gamma = influence_normalized(&a).unwrap();
        let sums: Vec<f64> = a.row_sums().iter().map(|&s| s as f64).collect();
        let image = gamma.matvec(&sums);
        for (x, y) in image.iter().zip(&sums) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn geller_conserves_component_sum() {
        let a = five_journals();
        let mut sums = Vec::new();
        let result = geller_weights_observed(&a, 1e-12, 10_000, |w| {
            sums.push(w.iter().sum::<f64>());
        })
        .unwrap();
        for s in sums {
            assert!((s - 5.0).abs() < 1e-12, "sum drifted to {s}");
        }
        assert_relative_eq!(result.weights.sum(), 5.0, epsilon = 1e-9);
    }

    #[test]
    fn geller_uniform_on_all_ones() {
        let a = JournalCitationMatrix::new(
            vec!["a".into(), "b".into()],
            vec![1, 1, 1, 1],
        )
        .unwrap();
        let result = geller_weights(&a, 1e-12, 100).unwrap();
        assert_eq!(result.weights.values(), &[1.0, 1.0]);
    }

    #[test]
    fn geller_matches_dense_linear_solve() {
        // Oracle: solve (T^t - I) pi = 0 with sum(pi) = n by Gaussian
        // elimination on the augmented system.
        let a = five_journals();
        let result = geller_weights(&a, 1e-13, 10_000).unwrap();
        let t = stochastic_normalized(&a).unwrap();
        let n = a.n();
        // Build (T^t - I) with the last equation replaced by the sum
        // constraint.
        let mut m = vec![vec![0.0; n + 1]; n];
        for r in 0..n {
            for c in 0..n {
                m[r][c] = t.get(c, r) - if r == c { 1.0 } else { 0.0 };
            }
        }
        for c in 0..n {
            m[n - 1][c] = 1.0;
        }
        m[n - 1][n] = n as f64;
        // Gaussian elimination with partial pivoting.
        for col in 0..n {
            let pivot = (col..n).max_by(|&r1, &r2| {
                m[r1][col].abs().partial_cmp(&m[r2][col].abs()).unwrap()
            }).unwrap();
            m.swap(col, pivot);
            let p = m[col][col];
            assert!(p.abs() > 1e-14, "singular oracle system");
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m[r][col] / p;
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
        let oracle: Vec<f64> = (0..n).map(|r| m[r][n] / m[r][r]).collect();
        for (got, want) in result.weights.values().iter().zip(&oracle) {
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
    }

    #[test]
    fn pagerank_uniform_on_cycle() {
        let g = TemporalDigraph::builder()
            .edge("a", "b")
            .edge("b", "c")
            .edge("c", "d")
            .edge("d", "a")
            .build()
            .unwrap();
        let result = pagerank_digraph(&g, 0.85, 1e-14, 10_000).unwrap();
        for &v in result.weights.values() {
            assert!((v - 0.25).abs() < 1e-12);
        }
        assert!((result.weights.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pagerank_small_damping_approaches_uniform() {
        let a = five_journals();
        let result = pagerank_matrix(&a, 1e-6, 1e-14, 10_000).unwrap();
        for &v in result.weights.values() {
            assert!((v - 0.2).abs() < 2e-6);
        }
    }

    #[test]
    fn pagerank_handles_dangling_nodes() {
        // b cites nothing; its rank must redistribute, keeping a
        // distribution.
        let g = TemporalDigraph::from_edges(&[("a", "b")]).unwrap();
        let result = pagerank_digraph(&g, 0.85, 1e-14, 10_000).unwrap();
        assert!((result.weights.sum() - 1.0).abs() < 1e-12);
        assert!(result.weights.get("b").unwrap() > result.weights.get("a").unwrap());
    }

    #[test]
    fn invalid_damping_rejected() {
        let a = five_journals();
        assert!(matches!(
            pagerank_matrix(&a, 0.0, 1e-10, 100),
            Err(Error::InvalidDamping(_))
        ));
        assert!(matches!(
            pagerank_matrix(&a, 1.0, 1e-10, 100),
            Err(Error::InvalidDamping(_))
        ));
    }

    #[test]
    fn scale_invariance_of_rankings() {
        let a = five_journals();
        let scaled = JournalCitationMatrix::new(
            a.journals().to_vec(),
            (0..a.n() * a.n())
                .map(|k| a.counts[k] * 17)
                .collect(),
        )
        .unwrap();
        let w1 = influence_weights(&a, 1e-12, 10_000).unwrap();
        let w2 = influence_weights(&scaled, 1e-12, 10_000).unwrap();
        for (x, y) in w1.weights.values().iter().zip(w2.weights.values()) {
            assert!((x - y).abs() < 1e-9);
        }
        let g1 = geller_weights(&a, 1e-12, 10_000).unwrap();
        let g2 = geller_weights(&scaled, 1e-12, 10_000).unwrap();
        for (x, y) in g1.weights.values().iter().zip(g2.weights.values()) {
            assert!((x - y).abs() < 1e-9);
        }
        let p1 = pagerank_matrix(&a, 0.85, 1e-13, 10_000).unwrap();
        let p2 = pagerank_matrix(&scaled, 0.85, 1e-13, 10_000).unwrap();
        for (x, y) in p1.weights.values().iter().zip(p2.weights.values()) {
            assert!((x - y).abs() < 1e-9);
        }
        let r1 = import_export(&a).unwrap();
        let r2 = import_export(&scaled).unwrap();
        for (x, y) in r1.values().iter().zip(r2.values()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn ego_environments_of_the_five_journal_network() {
        let a = five_journals();
        let ego = ego_environments(&a, "Scientometrics").unwrap();
        assert_eq!(ego.citation_impact.n(), 5);
        assert_eq!(ego.knowledge_base.n(), 5);
    }

    #[test]
    fn ego_environment_extremes() {
        // b is never cited by others; its impact environment is itself.
        let a = JournalCitationMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                1, 0, 2,
                3, 1, 1,
                2, 0, 1,
            ],
        )
        .unwrap();
        let ego = ego_environments(&a, "b").unwrap();
        assert_eq!(ego.citation_impact.journals(), &["b".to_string()]);
        // b cites everyone, so its knowledge base is the full matrix.
        assert_eq!(ego.knowledge_base.n(), 3);
        assert!(matches!(
            ego_environments(&a, "zzz"),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn self_citation_exclusion_flag() {
        let a = five_journals();
        let stripped = a.without_self_citations();
        for i in 0..5 {
            assert_eq!(stripped.get(i, i), 0);
        }
        assert_eq!(stripped.get(0, 1), a.get(0, 1));
    }
}
