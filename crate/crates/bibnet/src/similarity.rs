//! Coupling and co-citation strengths plus relative similarity indices.
//!
//! Two articles are bibliographically coupled when their reference lists
//! intersect; the coupling matrix is the row projection of the binary
//! article x cited-source affiliation. Two sources are co-cited when a
//! third article cites both; the co-citation matrix is the column
//! projection. The Jaccard and Salton indices turn absolute overlap counts
//! into relative measures on reference sets, and the significance filter
//! keeps only co-citation counts that exceed what independent citation
//! processes would produce.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::netcore::{
    col_projection, row_projection, AffiliationMatrix, SimilarityMatrix, TemporalDigraph,
};

/// A reference list viewed as a set of cited sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSet {
    pub owner: String,
    pub members: BTreeSet<String>,
}

/// Per-node reference sets of a citation graph (in-network references only).
pub fn reference_sets(g: &TemporalDigraph) -> Vec<ReferenceSet> {
    (0..g.node_count())
        .map(|i| ReferenceSet {
            owner: g.labels()[i].clone(),
            members: g
                .cited_by_node(i)
                .iter()
                .map(|&(j, _)| g.labels()[j].clone())
                .collect(),
        })
        .collect()
}

/// Row sets of a binary affiliation matrix (each row as the set of columns
/// it touches).
pub fn row_reference_sets(aff: &AffiliationMatrix) -> Result<Vec<ReferenceSet>> {
    aff.require_binary()?;
    Ok((0..aff.n_rows())
        .map(|r| ReferenceSet {
            owner: aff.row_labels()[r].clone(),
            members: aff.row(r).iter().map(|&(c, _)| aff.col_labels()[c].clone()).collect(),
        })
        .collect())
}

/// Intersection over union. A pair of empty sets scores 0, so reference-free
/// documents compose safely.
pub fn jaccard_sets<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    let intersection = a.intersection(b).count();
    let union = a.len() + b.len() - intersection;
    if union == 0 {
        0.0
    } else {
        intersection as f64 / union as f64
    }
}

/// Intersection over the geometric mean of the set sizes (the cosine of the
/// corresponding binary vectors). Empty pairs score 0.
pub fn salton_sets<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let intersection = a.intersection(b).count();
    intersection as f64 / ((a.len() * b.len()) as f64).sqrt()
}

pub fn jaccard_index(a: &ReferenceSet, b: &ReferenceSet) -> f64 {
    jaccard_sets(&a.members, &b.members)
}

pub fn salton_index(a: &ReferenceSet, b: &ReferenceSet) -> f64 {
    salton_sets(&a.members, &b.members)
}

fn index_matrix(sets: &[ReferenceSet], f: impl Fn(&ReferenceSet, &ReferenceSet) -> f64) -> SimilarityMatrix {
    let n = sets.len();
    let labels = sets.iter().map(|s| s.owner.clone()).collect();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = f(&sets[i], &sets[j]);
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    SimilarityMatrix::from_dense(labels, entries)
}

/// Pairwise Jaccard indices over a collection of reference sets.
pub fn jaccard_matrix(sets: &[ReferenceSet]) -> SimilarityMatrix {
    index_matrix(sets, jaccard_index)
}

/// Pairwise Salton indices over a collection of reference sets.
pub fn salton_matrix(sets: &[ReferenceSet]) -> SimilarityMatrix {
    index_matrix(sets, salton_index)
}

/// Shared-reference counts for all article pairs. Requires binary input;
/// the diagonal is the reference-list length.
pub fn bibliographic_coupling(aff: &AffiliationMatrix) -> Result<SimilarityMatrix> {
    aff.require_binary()?;
    Ok(row_projection(aff))
}

/// Scalar products of weighted rows; the explicit opt-out from set
/// semantics for weighted affiliations.
pub fn bibliographic_coupling_weighted(aff: &AffiliationMatrix) -> SimilarityMatrix {
    row_projection(aff)
}

/// Co-citation counts for all source pairs. Requires binary input; the
/// diagonal is the citation count of the source.
pub fn cocitation(aff: &AffiliationMatrix) -> Result<SimilarityMatrix> {
    aff.require_binary()?;
    Ok(col_projection(aff))
}

/// Scalar products of weighted columns.
pub fn cocitation_weighted(aff: &AffiliationMatrix) -> SimilarityMatrix {
    col_projection(aff)
}

/// A co-citation pair whose observed count exceeds its expectation under
/// independent citation processes.
#[derive(Debug, Clone, PartialEq)]
pub struct SignificantPair {
    pub i: usize,
    pub j: usize,
    pub observed: f64,
    pub expected: f64,
    /// One-sided binomial tail P[X >= observed].
    pub p_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignificantPairs {
    pub labels: Vec<String>,
    pub pairs: Vec<SignificantPair>,
    pub citing_count: usize,
    pub alpha: f64,
}

/// Filter a co-citation matrix down to significantly co-cited pairs.
///
/// With `m` citing documents and citation counts `c_ii`, `c_jj` on the
/// diagonal, independence puts the expected co-citation count at
/// `c_ii * c_jj / m`. A pair is kept when the observed count exceeds the
/// expectation and the exact one-sided binomial tail
/// `P[X >= c_ij]`, `X ~ Binomial(m, (c_ii/m)(c_jj/m))`, falls below `alpha`.
/// Pairs are listed with `i < j` in lexicographic index order.
pub fn cocitation_significance(
    c: &SimilarityMatrix,
    citing_count: usize,
    alpha: f64,
) -> Result<SignificantPairs> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let m = citing_count as f64;
    let n = c.n();
    for i in 0..n {
        let diag = c.get(i, i);
        if diag > m {
            return Err(Error::InconsistentCitationCounts {
                label: c.labels()[i].clone(),
                diagonal: diag,
                citing: citing_count,
            });
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let observed = c.get(i, j);
            if observed <= 0.0 {
                continue;
            }
            let expected = c.get(i, i) * c.get(j, j) / m;
            if observed <= expected {
                continue;
            }
            let p = (c.get(i, i) / m) * (c.get(j, j) / m);
            let p_bound = binomial_tail(citing_count as u64, p, observed.round() as u64);
            if p_bound < alpha {
                pairs.push(SignificantPair { i, j, observed, expected, p_bound });
            }
        }
    }
    Ok(SignificantPairs { labels: c.labels().to_vec(), pairs, citing_count, alpha })
}

/// Exact one-sided binomial tail P[X >= k0] for X ~ Binomial(m, p).
///
/// The leading term is evaluated in log space; the remaining terms follow
/// from the pmf ratio recurrence, so the sum stays accurate for large m.
pub fn binomial_tail(m: u64, p: f64, k0: u64) -> f64 {
    if k0 == 0 {
        return 1.0;
    }
    if k0 > m {
        return 0.0;
    }
    if p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let q = 1.0 - p;
    // ln C(m, k0) accumulated as sum of ln((m - k0 + i) / i).
    let mut ln_pmf = k0 as f64 * p.ln() + (m - k0) as f64 * q.ln();
    for i in 1..=k0 {
        ln_pmf += ((m - k0 + i) as f64 / i as f64).ln();
    }
    let lead = ln_pmf.exp();
    if lead == 0.0 {
        return 0.0;
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let ratio_base = p / q;
    for k in k0..m {
        term *= (m - k) as f64 / (k + 1) as f64 * ratio_base;
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    (lead * sum).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::nrays;
    use proptest::prelude::*;

    fn refset(owner: &str, members: &[&str]) -> ReferenceSet {
        ReferenceSet {
            owner: owner.to_string(),
            members: members.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn coupling_counts_from_prose() {
        let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
        let b = bibliographic_coupling(&aff).unwrap();
        assert_eq!(b.get_labeled("2", "3").unwrap(), 1.0);
        assert_eq!(b.get_labeled("2", "4").unwrap(), 1.0);
        assert_eq!(b.get_labeled("3", "4").unwrap(), 2.0);
        assert_eq!(b.get_labeled("6", "7").unwrap(), 1.0);
        assert_eq!(b.get_labeled("10", "11").unwrap(), 2.0);
        assert_eq!(b.get_labeled("10", "12").unwrap(), 2.0);
        assert_eq!(b.get_labeled("11", "12").unwrap(), 2.0);
    }

    #[test]
    fn disjoint_reference_lists_do_not_couple() {
        let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
        let b = bibliographic_coupling(&aff).unwrap();
        assert_eq!(b.get_labeled("2", "6").unwrap(), 0.0);
    }

    #[test]
    fn cocitation_counts_from_prose() {
        let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
        let c = cocitation(&aff).unwrap();
        assert_eq!(c.get_labeled("1", "2").unwrap(), 2.0);
        assert_eq!(c.get_labeled("8", "9").unwrap(), 3.0);
        assert_eq!(c.get_labeled("8", "10").unwrap(), 1.0);
        assert_eq!(c.get_labeled("9", "10").unwrap(), 1.0);
        assert_eq!(c.get_labeled("8", "8").unwrap(), 4.0);
    }

    #[test]
    fn single_citer_block() {
        // A source cited exactly once is co-cited only with the other
        // references of its single citer.
        let aff = AffiliationMatrix::from_entries(&[
            ("d1", "x", 1.0),
            ("d1", "y", 1.0),
            ("d1", "z", 1.0),
            ("d2", "y", 1.0),
        ])
        .unwrap();
        let c = cocitation(&aff).unwrap();
        assert_eq!(c.get_labeled("x", "y").unwrap(), 1.0);
        assert_eq!(c.get_labeled("x", "z").unwrap(), 1.0);
        assert_eq!(c.get_labeled("x", "x").unwrap(), 1.0);
    }

    #[test]
    fn weighted_input_rejected_without_optin() {
        let aff = AffiliationMatrix::from_entries(&[("r", "c", 2.0)]).unwrap();
        assert!(matches!(
            bibliographic_coupling(&aff),
            Err(Error::NonBinaryAffiliation { .. })
        ));
        assert_eq!(bibliographic_coupling_weighted(&aff).get(0, 0), 4.0);
    }

    #[test]
    fn jaccard_and_salton_extremes() {
        let a = refset("a", &["x", "y", "z"]);
        let b = refset("b", &["x", "y", "z"]);
        let c = refset("c", &["p", "q"]);
        assert_eq!(jaccard_index(&a, &b), 1.0);
        assert_eq!(salton_index(&a, &b), 1.0);
        assert_eq!(jaccard_index(&a, &c), 0.0);
        assert_eq!(salton_index(&a, &c), 0.0);
        let empty = refset("e", &[]);
        assert_eq!(jaccard_index(&empty, &empty), 0.0);
        assert_eq!(salton_index(&empty, &empty), 0.0);
    }

    #[test]
    fn nrays_jaccard_9_12() {
        let sets = reference_sets(&nrays());
        let s9 = sets.iter().find(|s| s.owner == "9").unwrap();
        let s12 = sets.iter().find(|s| s.owner == "12").unwrap();
        assert!((jaccard_index(s9, s12) - 1.0 / 3.0).abs() < 1e-15);
        assert!((salton_index(s9, s12) - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn significance_flags_overrepresented_pair() {
        // m = 100 citing documents, both sources cited 10 times, co-cited 8.
        let labels = vec!["a".to_string(), "b".to_string()];
        let c = SimilarityMatrix::from_dense(labels, vec![10.0, 8.0, 8.0, 10.0]);
        let result = cocitation_significance(&c, 100, 0.01).unwrap();
        assert_eq!(result.pairs.len(), 1);
        let pair = &result.pairs[0];
        assert_eq!(pair.observed, 8.0);
        assert!((pair.expected - 1.0).abs() < 1e-12);
        // Oracle: Pascal-triangle binomial coefficients summed directly.
        let oracle: f64 = {
            let m = 100usize;
            let p: f64 = 0.01;
            let mut coeff = vec![1.0f64];
            for _ in 0..m {
                let mut next = vec![1.0];
                for w in coeff.windows(2) {
                    next.push(w[0] + w[1]);
                }
                next.push(1.0);
                coeff = next;
            }
            (8..=m)
                .map(|k| coeff[k] * p.powi(k as i32) * (1.0 - p).powi((m - k) as i32))
                .sum()
        };
        assert!((pair.p_bound - oracle).abs() / oracle < 1e-9);
    }

    #[test]
    fn zero_cocitation_never_significant() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let c = SimilarityMatrix::from_dense(labels, vec![10.0, 0.0, 0.0, 10.0]);
        let result = cocitation_significance(&c, 100, 0.5).unwrap();
        assert!(result.pairs.is_empty());
    }

    #[test]
    fn saturated_counts_not_significant() {
        // Everyone cites both: expected equals the maximum, nothing exceeds it.
        let labels = vec!["a".to_string(), "b".to_string()];
        let c = SimilarityMatrix::from_dense(labels, vec![100.0, 100.0, 100.0, 100.0]);
        let result = cocitation_significance(&c, 100, 0.05).unwrap();
        assert!(result.pairs.is_empty());
    }

    #[test]
    fn inconsistent_citation_counts_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let c = SimilarityMatrix::from_dense(labels, vec![10.0, 1.0, 1.0, 3.0]);
        assert!(matches!(
            cocitation_significance(&c, 5, 0.05),
            Err(Error::InconsistentCitationCounts { .. })
        ));
        let labels = vec!["a".to_string()];
        let c = SimilarityMatrix::from_dense(labels, vec![1.0]);
        assert!(matches!(
            cocitation_significance(&c, 5, 1.5),
            Err(Error::InvalidAlpha(_))
        ));
    }

    #[test]
    fn binomial_tail_monotone_in_observed_count() {
        let mut last = f64::INFINITY;
        for k in 1..=20 {
            let tail = binomial_tail(100, 0.05, k);
            assert!(tail <= last, "tail must not increase with the count");
            last = tail;
        }
    }

    proptest! {
        #[test]
        fn jaccard_salton_bounds(rows in 1usize..8, cols in 1usize..8, seed in 0u64..1000) {
            // Random binary affiliation; check 0 <= J <= S <= 1 for all pairs
            // and equality with brute-force set computation.
            let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let mut entries = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if next() % 3 == 0 {
                        entries.push((format!("r{r}"), format!("c{c}"), 1.0));
                    }
                }
            }
            prop_assume!(!entries.is_empty());
            let refs: Vec<(&str, &str, f64)> =
                entries.iter().map(|(r, c, w)| (r.as_str(), c.as_str(), *w)).collect();
            let aff = AffiliationMatrix::from_entries(&refs).unwrap();
            let sets = row_reference_sets(&aff).unwrap();
            for i in 0..sets.len() {
                for j in 0..sets.len() {
                    let jac = jaccard_index(&sets[i], &sets[j]);
                    let sal = salton_index(&sets[i], &sets[j]);
                    prop_assert!((0.0..=1.0).contains(&jac));
                    prop_assert!(jac <= sal + 1e-15);
                    prop_assert!(sal <= 1.0 + 1e-15);
                    let inter = sets[i].members.intersection(&sets[j].members).count() as f64;
                    let uni = sets[i].members.union(&sets[j].members).count() as f64;
                    let expect_j = if uni == 0.0 { 0.0 } else { inter / uni };
                    prop_assert!((jac - expect_j).abs() < 1e-15);
                    if !sets[i].members.is_empty() && !sets[j].members.is_empty() {
                        let expect_s = inter
                            / ((sets[i].members.len() * sets[j].members.len()) as f64).sqrt();
                        prop_assert!((sal - expect_s).abs() < 1e-15);
                        // Equality characterizes identical sets.
                        prop_assert_eq!(jac == 1.0, sets[i].members == sets[j].members);
                        prop_assert_eq!((sal - 1.0).abs() < 1e-12, sets[i].members == sets[j].members);
                    }
                }
            }
        }

        #[test]
        fn coupling_matches_set_intersections(seed in 0u64..500) {
            let mut state = seed.wrapping_mul(0x2545F4914F6CDD1D).wrapping_add(7);
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let rows = 2 + (next() % 9) as usize;
            let cols = 2 + (next() % 9) as usize;
            let mut entries = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if next() % 2 == 0 {
                        entries.push((format!("r{r}"), format!("c{c}"), 1.0));
                    }
                }
            }
            prop_assume!(!entries.is_empty());
            let refs: Vec<(&str, &str, f64)> =
                entries.iter().map(|(r, c, w)| (r.as_str(), c.as_str(), *w)).collect();
            let aff = AffiliationMatrix::from_entries(&refs).unwrap();
            let b = bibliographic_coupling(&aff).unwrap();
            let sets = row_reference_sets(&aff).unwrap();
            for i in 0..sets.len() {
                for j in 0..sets.len() {
                    let expected = sets[i].members.intersection(&sets[j].members).count() as f64;
                    prop_assert_eq!(b.get(i, j), expected);
                }
            }
            // The transpose identity ties both projections together.
            let c = cocitation(&aff).unwrap();
            let bt = bibliographic_coupling(&aff.transposed()).unwrap();
            for i in 0..c.n() {
                for j in 0..c.n() {
                    prop_assert_eq!(c.get(i, j), bt.get(i, j));
                }
            }
        }
    }
}
