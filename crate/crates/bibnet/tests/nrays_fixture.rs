//! Regression tests over the shipped N-rays edge-list fixture, exercising
//! the file reader together with the walk, coupling, and mapping layers.

use std::path::PathBuf;

use bibnet::coauthor::{connected_components, UndirectedGraph};
use bibnet::io::read_edge_list;
use bibnet::mapping::threshold_nodes;
use bibnet::netcore::AffiliationMatrix;
use bibnet::paths::{main_path, path_count_matrix, random_reader, spc_weights, ReaderState};
use bibnet::similarity::{bibliographic_coupling, cocitation, jaccard_index, reference_sets};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn nrays() -> bibnet::TemporalDigraph {
    read_edge_list(&fixture("nrays12.tsv")).unwrap()
}

#[test]
fn fixture_shape() {
    let g = nrays();
    assert_eq!(g.node_count(), 12);
    assert_eq!(g.edge_count(), 16);
    assert_eq!(g.labels()[0], "1");
    assert_eq!(g.labels()[11], "12");
    assert!(g.check_temporal_acyclicity().unwrap().is_empty());
}

#[test]
fn reader_walk_from_the_last_article() {
    let g = nrays();
    let r0 = ReaderState::start(&g, "12").unwrap();
    let r1 = bibnet::paths::reader_step(&g, &r0).unwrap();
    let nonzero: Vec<(&str, f64)> = r1.vector.iter().filter(|(_, v)| *v != 0.0).collect();
    assert_eq!(nonzero, vec![("8", 1.0), ("9", 1.0), ("10", 1.0)]);

    let r = random_reader(&g, "12", 2).unwrap();
    assert_eq!(r.vector.get("7"), Some(0.25));
    assert_eq!(r.vector.get("8"), Some(0.5));
    assert_eq!(r.vector.get("9"), Some(0.25));
}

#[test]
fn two_length_paths() {
    let g = nrays();
    let a2 = path_count_matrix(&g, 2).unwrap();
    assert_eq!(a2.get_labeled("12", "8"), Some(2));
    // All other pairs admit at most one two-step path.
    for i in 0..12 {
        for j in 0..12 {
            let count = a2.get(i, j);
            assert!(count <= 2);
            if count == 2 {
                assert_eq!((g.labels()[i].as_str(), g.labels()[j].as_str()), ("12", "8"));
            }
        }
    }
}

#[test]
fn coupling_and_cocitation_against_prose() {
    let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
    let b = bibliographic_coupling(&aff).unwrap();
    let c = cocitation(&aff).unwrap();
    assert_eq!(b.get_labeled("2", "3"), Some(1.0));
    assert_eq!(b.get_labeled("3", "4"), Some(2.0));
    assert_eq!(b.get_labeled("6", "7"), Some(1.0));
    assert_eq!(b.get_labeled("10", "11"), Some(2.0));
    assert_eq!(c.get_labeled("1", "2"), Some(2.0));
    assert_eq!(c.get_labeled("8", "9"), Some(3.0));
    assert_eq!(c.get_labeled("8", "10"), Some(1.0));
    assert_eq!(c.get_labeled("9", "10"), Some(1.0));
}

#[test]
fn jaccard_of_articles_9_and_12() {
    let sets = reference_sets(&nrays());
    let s9 = sets.iter().find(|s| s.owner == "9").unwrap();
    let s12 = sets.iter().find(|s| s.owner == "12").unwrap();
    assert!((jaccard_index(s9, s12) - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn undirected_component_split() {
    let g = UndirectedGraph::from_digraph(&nrays());
    let report = connected_components(&g);
    let as_labels = |members: &[usize]| -> Vec<String> {
        members.iter().map(|&i| g.labels()[i].clone()).collect()
    };
    assert_eq!(report.components.len(), 2);
    assert_eq!(as_labels(&report.components[0]), ["5", "6", "7", "8", "9", "10", "11", "12"]);
    assert_eq!(as_labels(&report.components[1]), ["1", "2", "3", "4"]);
}

#[test]
fn citation_threshold_on_the_fixture() {
    let aff = AffiliationMatrix::from_digraph(&nrays()).unwrap();
    let c = cocitation(&aff).unwrap();
    let kept = threshold_nodes(&c, 2);
    assert_eq!(kept.labels(), &["1", "2", "5", "8", "9"]);
}

#[test]
fn main_path_runs_through_the_big_strand() {
    let g = nrays();
    let w = spc_weights(&g).unwrap();
    // Roots 1 and 5: the strand under 1 carries 4 traversals, the strand
    // under 5 carries 7.
    assert_eq!(w.total_paths, 11);
    let mp = main_path(&g).unwrap();
    assert_eq!(mp.path_labels, ["5", "7", "8", "9", "10", "12"]);
}
