//! Term-document networks and latent semantic analysis.
//!
//! A [`TermDocumentMatrix`] counts how often each retained term occurs in
//! each document (stop words removed, rare terms dropped). Projecting onto
//! columns relates terms through shared documents (co-word analysis);
//! projecting onto rows relates documents through shared terms (lexical
//! coupling, the text-side counterpart of bibliographic coupling). Latent
//! semantic analysis embeds documents and terms in the space spanned by
//! the leading singular triplets of the count matrix.
//!
//! The singular value decomposition is computed in-house with one-sided
//! Jacobi rotations: slower than bidiagonalization but simple to verify,
//! and deterministic down to the byte thanks to a fixed sweep order and a
//! pinned sign convention.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::netcore::{
    col_projection, row_projection, AffiliationMatrix, DenseMatrix, SimilarityMatrix,
};
use crate::similarity::{jaccard_sets, salton_sets};

/// Default relative threshold for treating a column pair as orthogonal.
pub const DEFAULT_SVD_TOLERANCE: f64 = 1e-12;
/// Jacobi sweeps allowed before giving up.
pub const MAX_SVD_SWEEPS: usize = 60;

/// Documents x terms count matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDocumentMatrix {
    documents: Vec<String>,
    terms: Vec<String>,
    /// Per-document sparse (term, count) entries, sorted by term.
    rows: Vec<Vec<(usize, u64)>>,
}

/// Lowercase and split on non-alphanumeric characters.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// The stop word list shipped with the crate.
pub fn default_stopwords() -> BTreeSet<String> {
    include_str!("../data/stopwords_en.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// Count matrix over the retained vocabulary: stop words are excluded and
/// terms whose total corpus count falls below `min_frequency` are dropped.
/// Terms are ordered lexicographically. Documents keep their position even
/// when **none** of their tokens survive.
pub fn build_term_document(
    documents: &[Vec<String>],
    labels: Option<&[String]>,
    stopwords: &BTreeSet<String>,
    min_frequency: u64,
) -> Result<TermDocumentMatrix> {
    if documents.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let doc_labels: Vec<String> = match labels {
        Some(ls) => {
            assert_eq!(ls.len(), documents.len(), "one label per document");
            ls.to_vec()
        }
        None => (1..=documents.len()).map(|i| format!("doc{i}")).collect(),
    };
    let mut totals: BTreeMap<&str, u64> = BTreeMap::new();
    for doc in documents {
        for token in doc {
            if !stopwords.contains(token.as_str()) {
                *totals.entry(token).or_insert(0) += 1;
            }
        }
    }
    let terms: Vec<String> = totals
        .iter()
        .filter(|(_, &count)| count >= min_frequency.max(1))
        .map(|(t, _)| t.to_string())
        .collect();
    let term_index: BTreeMap<&str, usize> =
        terms.iter().enumerate().map(|(i, t)| (t.as_str(), i)).collect();
    let rows = documents
        .iter()
        .map(|doc| {
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            for token in doc {
                if let Some(&t) = term_index.get(token.as_str()) {
                    *counts.entry(t).or_insert(0) += 1;
                }
            }
            counts.into_iter().collect()
        })
        .collect();
    Ok(TermDocumentMatrix { documents: doc_labels, terms, rows })
}

impl TermDocumentMatrix {
    pub fn n_documents(&self) -> usize {
        self.documents.len()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn documents(&self) -> &[String] {
        &self.documents
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn count(&self, doc: usize, term: usize) -> u64 {
        self.rows[doc]
            .binary_search_by(|&(t, _)| t.cmp(&term))
            .map(|k| self.rows[doc][k].1)
            .unwrap_or(0)
    }

    /// The counts as a bipartite affiliation matrix (documents x terms).
    pub fn to_affiliation(&self) -> Result<AffiliationMatrix> {
        let mut cells = BTreeMap::new();
        for (d, row) in self.rows.iter().enumerate() {
            for &(t, count) in row {
                cells.insert((d, t), count as f64);
            }
        }
        AffiliationMatrix::from_parts(self.documents.clone(), self.terms.clone(), cells)
    }

    fn binarized(&self) -> Result<AffiliationMatrix> {
        let mut cells = BTreeMap::new();
        for (d, row) in self.rows.iter().enumerate() {
            for &(t, _) in row {
                cells.insert((d, t), 1.0);
            }
        }
        AffiliationMatrix::from_parts(self.documents.clone(), self.terms.clone(), cells)
    }

    /// Dense counts, documents as rows.
    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n_documents(), self.n_terms());
        for (d, row) in self.rows.iter().enumerate() {
            for &(t, count) in row {
                m.set(d, t, count as f64);
            }
        }
        m
    }

    /// Term sets per document (for the set-based coupling measures).
    fn row_term_sets(&self) -> Vec<BTreeSet<usize>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(t, _)| t).collect())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CowordMode {
    /// Entry (s, t) counts documents containing both terms; the diagonal is
    /// the document frequency.
    Binary,
    /// Scalar products of raw count columns.
    Counts,
}

/// Term-term relations through shared documents (column projection).
pub fn coword_matrix(td: &TermDocumentMatrix, mode: CowordMode) -> Result<SimilarityMatrix> {
    let aff = match mode {
        CowordMode::Binary => td.binarized()?,
        CowordMode::Counts => td.to_affiliation()?,
    };
    Ok(col_projection(&aff))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingMeasure {
    /// Scalar products of raw count rows.
    Raw,
    /// Jaccard index of the binarized term sets.
    Jaccard,
    /// Salton index of the binarized term sets.
    Salton,
}

/// Document-document similarity through shared terms (row projection or a
/// relative set measure on the binarized rows).
pub fn lexical_coupling(
    td: &TermDocumentMatrix,
    measure: CouplingMeasure,
) -> Result<SimilarityMatrix> {
    match measure {
        CouplingMeasure::Raw => Ok(row_projection(&td.to_affiliation()?)),
        CouplingMeasure::Jaccard | CouplingMeasure::Salton => {
            let sets = td.row_term_sets();
            let n = sets.len();
            let mut entries = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let v = match measure {
                        CouplingMeasure::Jaccard => jaccard_sets(&sets[i], &sets[j]),
                        _ => salton_sets(&sets[i], &sets[j]),
                    };
                    entries[i * n + j] = v;
                    entries[j * n + i] = v;
                }
            }
            Ok(SimilarityMatrix::from_dense(td.documents.clone(), entries))
        }
    }
}

/// A truncated singular value decomposition. `u` is rows x k, `v` is
/// columns x k, `sigma` is non-increasing and non-negative; the columns of
/// `u` and `v` are orthonormal. Signs are pinned so that the
/// largest-magnitude component of each `v` column is positive.
#[derive(Debug, Clone)]
pub struct SvdFactorization {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub v: DenseMatrix,
}

impl SvdFactorization {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// Reconstruct `u * diag(sigma) * v^T`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let m = self.u.nrows();
        let n = self.v.nrows();
        let k = self.sigma.len();
        let mut out = DenseMatrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                let mut acc = 0.0;
                for r in 0..k {
                    acc += self.u.get(i, r) * self.sigma[r] * self.v.get(j, r);
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

/// Top-k singular value decomposition by one-sided Jacobi rotations.
///
/// `tolerance` is the relative orthogonality threshold for column pairs;
/// [`DEFAULT_SVD_TOLERANCE`] is adequate for count matrices. Requires
/// `1 <= k <= min(rows, cols)`.
pub fn svd(a: &DenseMatrix, k: usize, tolerance: f64) -> Result<SvdFactorization> {
    let max_rank = a.nrows().min(a.ncols());
    if k == 0 || k > max_rank {
        return Err(Error::RankOutOfRange { k, max: max_rank });
    }
    let (mut u, mut sigma, mut v) = if a.nrows() >= a.ncols() {
        jacobi_tall(a, tolerance)?
    } else {
        // Factor the transpose and swap the side matrices.
        let (ut, sigma, vt) = jacobi_tall(&a.transposed(), tolerance)?;
        (vt, sigma, ut)
    };
    truncate_factors(&mut u, &mut sigma, &mut v, k);
    apply_sign_convention(&mut u, &mut v);
    Ok(SvdFactorization { u, sigma, v })
}

/// One-sided Jacobi on a tall matrix (rows >= cols): returns (U m x n,
/// sigma n, V n x n) sorted by descending singular value.
fn jacobi_tall(a: &DenseMatrix, tolerance: f64) -> Result<(DenseMatrix, Vec<f64>, DenseMatrix)> {
    let m = a.nrows();
    let n = a.ncols();
    // Work on columns: b[j] is the j-th column of the evolving matrix.
    let mut b: Vec<Vec<f64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut converged = false;
    for _sweep in 0..MAX_SVD_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for i in 0..m {
                    alpha += b[p][i] * b[p][i];
                    beta += b[q][i] * b[q][i];
                    gamma += b[p][i] * b[q][i];
                }
                if gamma == 0.0 || gamma.abs() <= tolerance * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let bp = b[p][i];
                    let bq = b[q][i];
                    b[p][i] = c * bp - s * bq;
                    b[q][i] = s * bp + c * bq;
                }
                for i in 0..n {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = c * vp - s * vq;
                    v[q][i] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SvdNoConvergence(MAX_SVD_SWEEPS));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = b.iter().map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap().then(x.cmp(&y)));

    let mut u = DenseMatrix::zeros(m, n);
    let mut v_out = DenseMatrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    let mut placed: Vec<Vec<f64>> = Vec::new();
    for (slot, &j) in order.iter().enumerate() {
        let norm = norms[j];
        sigma.push(norm);
        let col = if norm > 0.0 {
            b[j].iter().map(|x| x / norm).collect()
        } else {
            // Exactly null column: extend the left basis deterministically.
            orthonormal_completion(m, &placed)
        };
        for i in 0..m {
            u.set(i, slot, col[i]);
        }
        placed.push(col);
        for i in 0..n {
            v_out.set(i, slot, v[j][i]);
        }
    }
    Ok((u, sigma, v_out))
}

/// First canonical basis vector with a substantial residual against
/// `existing`, orthonormalized.
fn orthonormal_completion(m: usize, existing: &[Vec<f64>]) -> Vec<f64> {
    for axis in 0..m {
        let mut candidate = vec![0.0; m];
        candidate[axis] = 1.0;
        for col in existing {
            let dot: f64 = candidate.iter().zip(col).map(|(a, b)| a * b).sum();
            for (c, &e) in candidate.iter_mut().zip(col) {
                *c -= dot * e;
            }
        }
        let norm: f64 = candidate.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.5 {
            for c in &mut candidate {
                *c /= norm;
            }
            return candidate;
        }
    }
    unreachable!("fewer than m orthonormal columns cannot span all of R^m");
}

fn truncate_factors(u: &mut DenseMatrix, sigma: &mut Vec<f64>, v: &mut DenseMatrix, k: usize) {
    if k == sigma.len() {
        return;
    }
    let mut new_u = DenseMatrix::zeros(u.nrows(), k);
    let mut new_v = DenseMatrix::zeros(v.nrows(), k);
    for j in 0..k {
        for i in 0..u.nrows() {
            new_u.set(i, j, u.get(i, j));
        }
        for i in 0..v.nrows() {
            new_v.set(i, j, v.get(i, j));
        }
    }
    sigma.truncate(k);
    *u = new_u;
    *v = new_v;
}

fn apply_sign_convention(u: &mut DenseMatrix, v: &mut DenseMatrix) {
    for j in 0..v.ncols() {
        let mut pivot = 0usize;
        let mut best = 0.0f64;
        for i in 0..v.nrows() {
            let mag = v.get(i, j).abs();
            if mag > best {
                best = mag;
                pivot = i;
            }
        }
        if v.get(pivot, j) < 0.0 {
            for i in 0..v.nrows() {
                v.set(i, j, -v.get(i, j));
            }
            for i in 0..u.nrows() {
                u.set(i, j, -u.get(i, j));
            }
        }
    }
}

/// Document and term coordinates in the truncated singular space:
/// documents as rows of `U * diag(sigma)`, terms as rows of
/// `V * diag(sigma)`.
#[derive(Debug, Clone)]
pub struct LsaEmbedding {
    pub document_labels: Vec<String>,
    pub document_coords: DenseMatrix,
    pub term_labels: Vec<String>,
    pub term_coords: DenseMatrix,
    pub singular_values: Vec<f64>,
}

pub fn lsa_embed(td: &TermDocumentMatrix, k: usize) -> Result<LsaEmbedding> {
    let factors = svd(&td.to_dense(), k, DEFAULT_SVD_TOLERANCE)?;
    let scale = |mat: &DenseMatrix| {
        let mut out = DenseMatrix::zeros(mat.nrows(), k);
        for i in 0..mat.nrows() {
            for j in 0..k {
                out.set(i, j, mat.get(i, j) * factors.sigma[j]);
            }
        }
        out
    };
    Ok(LsaEmbedding {
        document_labels: td.documents.clone(),
        document_coords: scale(&factors.u),
        term_labels: td.terms.clone(),
        term_coords: scale(&factors.v),
        singular_values: factors.sigma,
    })
}

/// Cosine similarity; zero vectors score 0.
pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}
