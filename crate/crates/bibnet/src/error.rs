//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node label `{0}`")]
    UnknownLabel(String),
    #[error("empty node label")]
    EmptyLabel,
    #[error("duplicate node label `{0}`")]
    DuplicateLabel(String),
    #[error("edge `{citing}` -> `{cited}` references a node missing from the declared node list")]
    UndeclaredNode { citing: String, cited: String },
    #[error("conflicting explicit weights {first} and {second} for edge `{citing}` -> `{cited}`")]
    ConflictingWeights {
        citing: String,
        cited: String,
        first: f64,
        second: f64,
    },
    #[error("self-loop `{0}` -> `{0}` not permitted (enable self-loops for journal-style graphs)")]
    SelfLoop(String),
    #[error("negative weight {weight} on edge `{citing}` -> `{cited}`")]
    NegativeWeight {
        citing: String,
        cited: String,
        weight: f64,
    },
    #[error("graph has no publication order")]
    MissingOrder,
    #[error("graph contains a citation cycle: {}", .0.join(" -> "))]
    CyclicGraph(Vec<String>),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("vector has dimension {got}, graph has {expected} nodes")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("path count overflow at length {k}: counts exceed 64-bit range")]
    PathCountOverflow { k: usize },

    #[error("affiliation matrix is empty")]
    EmptyAffiliation,
    #[error("operation requires a binary affiliation matrix (found entry {value} at `{row}` x `{col}`)")]
    NonBinaryAffiliation { row: String, col: String, value: f64 },
    #[error("label `{0}` appears in both row and column namespaces of a bipartite matrix")]
    BipartiteViolation(String),

    #[error("similarity matrix is not symmetric at ({row}, {col}): {a} vs {b}")]
    AsymmetricMatrix { row: usize, col: usize, a: f64, b: f64 },
    #[error("similarity matrix has negative entry {value} at ({row}, {col})")]
    NegativeSimilarity { row: usize, col: usize, value: f64 },
    #[error("diagonal count {diagonal} of `{label}` exceeds the number of citing documents {citing}")]
    InconsistentCitationCounts {
        label: String,
        diagonal: f64,
        citing: usize,
    },
    #[error("significance level must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("journal `{0}` has no out-references (zero row sum)")]
    ZeroRowSum(String),
    #[error("journal `{0}` is never cited (zero column sum)")]
    ZeroColumnSum(String),
    #[error("citation matrix is reducible; strongly connected components: {}", format_components(.0))]
    ReducibleMatrix(Vec<Vec<String>>),
    #[error("iteration did not converge within {iterations} steps (last residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("damping factor must lie in (0, 1), got {0}")]
    InvalidDamping(f64),

    #[error("node set is not connected (no finite distance between `{a}` and `{b}`)")]
    DisconnectedComponent { a: String, b: String },
    #[error("average path length needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),

    #[error("corpus contains no documents")]
    EmptyCorpus,
    #[error("rank k={k} out of range 1..={max}")]
    RankOutOfRange { k: usize, max: usize },
    #[error("SVD did not converge within {0} sweeps")]
    SvdNoConvergence(usize),

    #[error("clustering assigns {assigned} of {total} nodes; partition must cover all")]
    PartialAssignment { assigned: usize, total: usize },
    #[error("cut schedule must be strictly decreasing, got {a} then {b}")]
    NonDecreasingSchedule { a: f64, b: f64 },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn format_components(components: &[Vec<String>]) -> String {
    components
        .iter()
        .map(|c| format!("{{{}}}", c.join(", ")))
        .collect::<Vec<_>>()
        .join(", ")
}
