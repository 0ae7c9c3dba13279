//! Shared fixtures for unit tests.

use crate::netcore::TemporalDigraph;

/// The 12-article N-rays citation graph: nodes labeled "1".."12" in
/// publication order, ranks equal to article numbers.
pub(crate) fn nrays() -> TemporalDigraph {
    let mut b = TemporalDigraph::builder().nodes((1..=12).map(|i| i.to_string()));
    for (citing, cited) in nrays_edges() {
        b = b.edge(&citing.to_string(), &cited.to_string());
    }
    for i in 1..=12i64 {
        b = b.rank(&i.to_string(), i);
    }
    b.build().unwrap()
}

pub(crate) fn nrays_edges() -> Vec<(u32, u32)> {
    vec![
        (2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (6, 5), (7, 5), (8, 7),
        (9, 8), (10, 8), (10, 9), (11, 8), (11, 9), (12, 8), (12, 9), (12, 10),
    ]
}
