//! Subcommand execution: read inputs, run the analysis, assemble the
//! report payload.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use bibnet::coauthor::{
    average_path_length, betweenness, coauthor_graph, connected_components, degree_distribution,
    diameter,
};
use bibnet::io::{
    self, cluster_network_to_dot, cluster_network_to_graphml, digraph_to_dot, digraph_to_graphml,
    read_affiliation, read_corpus, read_edge_list, read_graphml, read_matrix_csv, read_stopwords,
};
use bibnet::journalrank::{
    ego_environments, geller_weights, import_export, influence_weights, pagerank_digraph,
    pagerank_matrix, JournalCitationMatrix, RankResult, DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE,
};
use bibnet::mapping::{aggregate_clusters, cluster_similarity, threshold_nodes, Linkage};
use bibnet::netcore::{AffiliationMatrix, SimilarityMatrix};
use bibnet::paths::{main_path, path_count_matrix, random_walk, WalkDirection};
use bibnet::similarity::{
    bibliographic_coupling, bibliographic_coupling_weighted, cocitation, cocitation_significance,
    cocitation_weighted, jaccard_matrix, reference_sets, row_reference_sets, salton_matrix,
};
use bibnet::textnet::{
    build_term_document, coword_matrix, default_stopwords, lsa_embed, CowordMode,
};
use bibnet::WeightVector;

use crate::report::Value;
use crate::{
    Cli, CoauthorMetric, Command, CowordModeArg, ExportFormatArg, IndexKind, LinkageArg,
    MeasureArg, RankMethod,
};

pub enum Failure {
    /// Wrong invocation; maps to exit code 2.
    Usage(String),
    /// Failed computation or input; maps to exit code 1.
    Run(bibnet::Error),
}

impl From<bibnet::Error> for Failure {
    fn from(e: bibnet::Error) -> Self {
        Failure::Run(e)
    }
}

pub enum Output {
    Report {
        command: &'static str,
        inputs: Vec<String>,
        parameters: BTreeMap<String, Value>,
        result: Value,
    },
    /// Raw export document (DOT/GraphML), bypassing the report envelope.
    Document(String),
}

fn progress(cli: &Cli, message: &str) {
    if !cli.quiet {
        eprintln!("bibnet: {message}");
    }
}

fn affiliation_input(path: &Path, from_edges: bool) -> Result<AffiliationMatrix, Failure> {
    if from_edges {
        let g = read_edge_list(path)?;
        Ok(AffiliationMatrix::from_digraph(&g)?)
    } else {
        Ok(read_affiliation(path)?)
    }
}

fn similarity_result(m: &SimilarityMatrix) -> Value {
    let mut result = Value::object();
    result.insert("labels".into(), Value::from_str_slice(m.labels()));
    result.insert("matrix".into(), Value::float_matrix(&m.to_dense_rows()));
    Value::Object(result)
}

fn weight_vector_value(w: &WeightVector) -> Value {
    let mut map = Value::object();
    for (label, value) in w.iter() {
        map.insert(label.to_string(), Value::Float(value));
    }
    Value::Object(map)
}

fn journal_matrix_value(a: &JournalCitationMatrix) -> Value {
    let mut obj = Value::object();
    obj.insert("journals".into(), Value::from_str_slice(a.journals()));
    let rows: Vec<Vec<i64>> = (0..a.n())
        .map(|i| (0..a.n()).map(|j| a.get(i, j) as i64).collect())
        .collect();
    obj.insert("counts".into(), Value::int_matrix(&rows));
    Value::Object(obj)
}

fn rank_result_value(r: &RankResult) -> BTreeMap<String, Value> {
    let mut result = Value::object();
    result.insert("weights".into(), weight_vector_value(&r.weights));
    result.insert("iterations".into(), Value::Int(r.iterations as i64));
    result.insert("residual".into(), Value::Float(r.residual));
    result.insert("scaling".into(), Value::Str(r.scaling.as_str().to_string()));
    result
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Coupling(args) => {
            let aff = affiliation_input(&args.input, args.from_edges)?;
            let mut matrix = if args.weighted {
                bibliographic_coupling_weighted(&aff)
            } else {
                bibliographic_coupling(&aff)?
            };
            if args.mask_diagonal {
                matrix = matrix.with_zeroed_diagonal();
            }
            progress(cli, &format!("coupled {} articles", matrix.n()));
            let mut params = Value::object();
            params.insert("from_edges".into(), Value::Bool(args.from_edges));
            params.insert("weighted".into(), Value::Bool(args.weighted));
            params.insert("mask_diagonal".into(), Value::Bool(args.mask_diagonal));
            Ok(Output::Report {
                command: "coupling",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: similarity_result(&matrix),
            })
        }
        Command::Cocite(args) => {
            let aff = affiliation_input(&args.input, args.from_edges)?;
            let matrix = if args.weighted {
                cocitation_weighted(&aff)
            } else {
                cocitation(&aff)?
            };
            let mut result = Value::object();
            result.insert("labels".into(), Value::from_str_slice(matrix.labels()));
            result.insert("matrix".into(), Value::float_matrix(&matrix.to_dense_rows()));
            if let Some(alpha) = args.alpha {
                let significant = cocitation_significance(&matrix, aff.n_rows(), alpha)?;
                let pairs: Vec<Value> = significant
                    .pairs
                    .iter()
                    .map(|p| {
                        let mut obj = Value::object();
                        obj.insert("a".into(), Value::Str(matrix.labels()[p.i].clone()));
                        obj.insert("b".into(), Value::Str(matrix.labels()[p.j].clone()));
                        obj.insert("observed".into(), Value::Float(p.observed));
                        obj.insert("expected".into(), Value::Float(p.expected));
                        obj.insert("p_bound".into(), Value::Float(p.p_bound));
                        Value::Object(obj)
                    })
                    .collect();
                result.insert("significant_pairs".into(), Value::Array(pairs));
                result.insert("citing_documents".into(), Value::Int(aff.n_rows() as i64));
            }
            progress(cli, &format!("co-citation over {} sources", matrix.n()));
            let mut params = Value::object();
            params.insert("from_edges".into(), Value::Bool(args.from_edges));
            params.insert("weighted".into(), Value::Bool(args.weighted));
            if let Some(alpha) = args.alpha {
                params.insert("alpha".into(), Value::Float(alpha));
            }
            Ok(Output::Report {
                command: "cocite",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: Value::Object(result),
            })
        }
        Command::Similarity(args) => {
            let sets = if args.affiliation {
                let aff = read_affiliation(&args.input)?;
                row_reference_sets(&aff)?
            } else {
                let g = read_edge_list(&args.input)?;
                reference_sets(&g)
            };
            let matrix = match args.index {
                IndexKind::Jaccard => jaccard_matrix(&sets),
                IndexKind::Salton => salton_matrix(&sets),
            };
            let mut params = Value::object();
            params.insert(
                "index".into(),
                Value::Str(
                    match args.index {
                        IndexKind::Jaccard => "jaccard",
                        IndexKind::Salton => "salton",
                    }
                    .to_string(),
                ),
            );
            params.insert("affiliation".into(), Value::Bool(args.affiliation));
            Ok(Output::Report {
                command: "similarity",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: similarity_result(&matrix),
            })
        }
        Command::Reader(args) => {
            let g = read_edge_list(&args.input)?;
            progress(cli, &format!("read {} nodes, {} edges", g.node_count(), g.edge_count()));
            let direction = if args.forward {
                WalkDirection::Citers
            } else {
                WalkDirection::CitedSources
            };
            let state = random_walk(&g, &args.start, args.steps, direction)?;
            let mut probabilities = Value::object();
            for (label, value) in state.vector.iter() {
                if value != 0.0 {
                    probabilities.insert(label.to_string(), Value::Float(value));
                }
            }
            let mut result = Value::object();
            result.insert("probabilities".into(), Value::Object(probabilities));
            result.insert("absorbed".into(), Value::Bool(state.absorbed));
            result.insert("step".into(), Value::Int(state.step as i64));
            let mut params = Value::object();
            params.insert("start".into(), Value::Str(args.start.clone()));
            params.insert("steps".into(), Value::Int(args.steps as i64));
            params.insert("forward".into(), Value::Bool(args.forward));
            Ok(Output::Report {
                command: "reader",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: Value::Object(result),
            })
        }
        Command::Paths(args) => {
            let g = read_edge_list(&args.input)?;
            let counts = path_count_matrix(&g, args.k)?;
            let mut result = Value::object();
            result.insert("labels".into(), Value::from_str_slice(counts.labels()));
            result.insert("matrix".into(), Value::int_matrix(&counts.rows()));
            result.insert("k".into(), Value::Int(args.k as i64));
            let mut params = Value::object();
            params.insert("k".into(), Value::Int(args.k as i64));
            Ok(Output::Report {
                command: "paths",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: Value::Object(result),
            })
        }
        Command::Mainpath(args) => {
            let g = read_edge_list(&args.input)?;
            let mp = main_path(&g)?;
            let mut result = Value::object();
            result.insert("scheme".into(), Value::Str(mp.scheme.as_str().to_string()));
            result.insert("path".into(), Value::from_str_slice(&mp.path_labels));
            let edges: Vec<Value> = g
                .edges()
                .iter()
                .zip(&mp.weights.edge_counts)
                .map(|(e, &count)| {
                    let mut obj = Value::object();
                    obj.insert("citing".into(), Value::Str(g.labels()[e.citing].clone()));
                    obj.insert("cited".into(), Value::Str(g.labels()[e.cited].clone()));
                    obj.insert("count".into(), Value::Int(count));
                    Value::Object(obj)
                })
                .collect();
            result.insert("edge_counts".into(), Value::Array(edges));
            let virtuals = |pairs: &[(usize, i64)]| {
                let mut obj = Value::object();
                for &(node, count) in pairs {
                    obj.insert(g.labels()[node].clone(), Value::Int(count));
                }
                Value::Object(obj)
            };
            result.insert("virtual_source_counts".into(), virtuals(&mp.weights.source_counts));
            result.insert("virtual_sink_counts".into(), virtuals(&mp.weights.sink_counts));
            result.insert("total_paths".into(), Value::Int(mp.weights.total_paths));
            Ok(Output::Report {
                command: "mainpath",
                inputs: vec![args.input.display().to_string()],
                parameters: Value::object(),
                result: Value::Object(result),
            })
        }
        Command::Rank(args) => {
            let tolerance = args.tolerance.unwrap_or(DEFAULT_TOLERANCE);
            let max_iterations = args.max_iterations.unwrap_or(DEFAULT_MAX_ITERATIONS);
            let mut params = Value::object();
            params.insert(
                "method".into(),
                Value::Str(
                    match args.method {
                        RankMethod::Influence => "influence",
                        RankMethod::Geller => "geller",
                        RankMethod::Pagerank => "pagerank",
                    }
                    .to_string(),
                ),
            );
            params.insert("tolerance".into(), Value::Float(tolerance));
            params.insert("max_iterations".into(), Value::Int(max_iterations as i64));
            params.insert("no_self_citations".into(), Value::Bool(args.no_self_citations));
            let rank = if args.edges {
                if !matches!(args.method, RankMethod::Pagerank) {
                    return Err(Failure::Usage(
                        "--edges requires --method pagerank; influence and geller need a count matrix".into(),
                    ));
                }
                let g = read_edge_list(&args.input)?;
                let damping = args.damping.unwrap_or(bibnet::journalrank::DEFAULT_DAMPING);
                params.insert("damping".into(), Value::Float(damping));
                pagerank_digraph(&g, damping, tolerance, max_iterations)?
            } else {
                let mut a = read_matrix_csv(&args.input)?;
                if args.no_self_citations {
                    a = a.without_self_citations();
                }
                match args.method {
                    RankMethod::Influence => influence_weights(&a, tolerance, max_iterations)?,
                    RankMethod::Geller => geller_weights(&a, tolerance, max_iterations)?,
                    RankMethod::Pagerank => {
                        let damping =
                            args.damping.unwrap_or(bibnet::journalrank::DEFAULT_DAMPING);
                        params.insert("damping".into(), Value::Float(damping));
                        pagerank_matrix(&a, damping, tolerance, max_iterations)?
                    }
                }
            };
            progress(cli, &format!("converged in {} iterations", rank.iterations));
            Ok(Output::Report {
                command: "rank",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: Value::Object(rank_result_value(&rank)),
            })
        }
        Command::Importexport(args) => {
            let mut a = read_matrix_csv(&args.input)?;
            if args.no_self_citations {
                a = a.without_self_citations();
            }
            let ratios = import_export(&a)?;
            let mut result = Value::object();
            result.insert("ratios".into(), weight_vector_value(&ratios));
            result.insert("sum".into(), Value::Float(ratios.sum()));
            let mut params = Value::object();
            params.insert("no_self_citations".into(), Value::Bool(args.no_self_citations));
            Ok(Output::Report {
                command: "importexport",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: Value::Object(result),
            })
        }
        Command::Ego(args) => {
            let a = read_matrix_csv(&args.input)?;
            let ego = ego_environments(&a, &args.seed)?;
            let mut result = Value::object();
            result.insert("seed".into(), Value::Str(ego.seed.clone()));
            result.insert("citation_impact".into(), journal_matrix_value(&ego.citation_impact));
            result.insert("knowledge_base".into(), journal_matrix_value(&ego.knowledge_base));
            let mut params = Value::object();
            params.insert("seed".into(), Value::Str(args.seed.clone()));
            Ok(Output::Report {
                command: "ego",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: Value::Object(result),
            })
        }
        Command::Coauthor(args) => {
            let aff = read_affiliation(&args.input)?;
            let co = coauthor_graph(&aff)?;
            let graph = &co.graph;
            progress(
                cli,
                &format!("{} authors, {} links", graph.node_count(), graph.edge_count()),
            );
            let mut result = Value::object();
            result.insert("authors".into(), Value::Int(graph.node_count() as i64));
            result.insert("links".into(), Value::Int(graph.edge_count() as i64));
            match args.metric {
                CoauthorMetric::Components => {
                    let report = connected_components(graph);
                    let components: Vec<Value> = report
                        .components
                        .iter()
                        .map(|members| {
                            Value::Array(
                                members
                                    .iter()
                                    .map(|&i| Value::Str(graph.labels()[i].clone()))
                                    .collect(),
                            )
                        })
                        .collect();
                    result.insert("components".into(), Value::Array(components));
                    result.insert("main_share".into(), Value::Float(report.main_share));
                }
                CoauthorMetric::Diameter | CoauthorMetric::Avgpath => {
                    let report = connected_components(graph);
                    let main = report
                        .components
                        .first()
                        .ok_or_else(|| Failure::Run(bibnet::Error::EmptyGraph))?;
                    result.insert("component_size".into(), Value::Int(main.len() as i64));
                    if matches!(args.metric, CoauthorMetric::Diameter) {
                        result.insert("diameter".into(), Value::Int(diameter(graph, main)? as i64));
                    } else {
                        result.insert(
                            "average_path_length".into(),
                            Value::Float(average_path_length(graph, main)?),
                        );
                    }
                }
                CoauthorMetric::Degree => {
                    let dist = degree_distribution(graph);
                    let histogram: Vec<Value> = dist
                        .histogram
                        .iter()
                        .map(|(&degree, &count)| {
                            let mut obj = Value::object();
                            obj.insert("degree".into(), Value::Int(degree as i64));
                            obj.insert("count".into(), Value::Int(count as i64));
                            Value::Object(obj)
                        })
                        .collect();
                    result.insert("histogram".into(), Value::Array(histogram));
                    result.insert("max_degree".into(), Value::Int(dist.max_degree as i64));
                    result.insert("mean_degree".into(), Value::Float(dist.mean_degree));
                }
                CoauthorMetric::Betweenness => {
                    let scores = betweenness(graph, args.normalized);
                    result.insert("betweenness".into(), weight_vector_value(&scores));
                    result.insert("normalized".into(), Value::Bool(args.normalized));
                }
            }
            let mut params = Value::object();
            params.insert(
                "metric".into(),
                Value::Str(
                    match args.metric {
                        CoauthorMetric::Components => "components",
                        CoauthorMetric::Diameter => "diameter",
                        CoauthorMetric::Avgpath => "avgpath",
                        CoauthorMetric::Degree => "degree",
                        CoauthorMetric::Betweenness => "betweenness",
                    }
                    .to_string(),
                ),
            );
            params.insert("normalized".into(), Value::Bool(args.normalized));
            Ok(Output::Report {
                command: "coauthor",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: Value::Object(result),
            })
        }
        Command::Lsa(args) => {
            let documents = read_corpus(&args.input)?;
            let stopwords = match &args.stopwords {
                Some(path) => read_stopwords(path)?,
                None => default_stopwords(),
            };
            let td = build_term_document(&documents, None, &stopwords, args.min_frequency)?;
            let embedding = lsa_embed(&td, args.k)?;
            let mut result = Value::object();
            result.insert(
                "singular_values".into(),
                Value::float_row(&embedding.singular_values),
            );
            let coords = |labels: &[String], mat: &bibnet::DenseMatrix| {
                let mut obj = Value::object();
                for (i, label) in labels.iter().enumerate() {
                    obj.insert(label.clone(), Value::float_row(mat.row(i)));
                }
                Value::Object(obj)
            };
            result.insert(
                "documents".into(),
                coords(&embedding.document_labels, &embedding.document_coords),
            );
            result.insert("terms".into(), coords(&embedding.term_labels, &embedding.term_coords));
            let mut params = Value::object();
            params.insert("k".into(), Value::Int(args.k as i64));
            params.insert("min_frequency".into(), Value::Int(args.min_frequency as i64));
            if let Some(path) = &args.stopwords {
                params.insert("stopwords".into(), Value::Str(path.display().to_string()));
            }
            Ok(Output::Report {
                command: "lsa",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: Value::Object(result),
            })
        }
        Command::Coword(args) => {
            let documents = read_corpus(&args.input)?;
            let stopwords = match &args.stopwords {
                Some(path) => read_stopwords(path)?,
                None => default_stopwords(),
            };
            let td = build_term_document(&documents, None, &stopwords, args.min_frequency)?;
            let mode = match args.mode {
                CowordModeArg::Binary => CowordMode::Binary,
                CowordModeArg::Counts => CowordMode::Counts,
            };
            let matrix = coword_matrix(&td, mode)?;
            let mut params = Value::object();
            params.insert(
                "mode".into(),
                Value::Str(
                    match args.mode {
                        CowordModeArg::Binary => "binary",
                        CowordModeArg::Counts => "counts",
                    }
                    .to_string(),
                ),
            );
            params.insert("min_frequency".into(), Value::Int(args.min_frequency as i64));
            Ok(Output::Report {
                command: "coword",
                inputs: vec![args.input.display().to_string()],
                parameters: params,
                result: similarity_result(&matrix),
            })
        }
        Command::Cluster(args) => run_cluster(cli, args),
        Command::Export(args) => {
            let format = match args.format {
                ExportFormatArg::Dot => io::ExportFormat::Dot,
                ExportFormatArg::Graphml => io::ExportFormat::GraphMl,
            };
            let is_graphml_input = args
                .input
                .extension()
                .map(|e| e == "graphml" || e == "xml")
                .unwrap_or(false);
            let g = if is_graphml_input {
                read_graphml(&args.input)?
            } else {
                read_edge_list(&args.input)?
            };
            progress(
                cli,
                &format!("exporting {} nodes, {} edges", g.node_count(), g.edge_count()),
            );
            let document = match format {
                io::ExportFormat::Dot => digraph_to_dot(&g),
                io::ExportFormat::GraphMl => digraph_to_graphml(&g),
            };
            Ok(Output::Document(document))
        }
    }
}

fn run_cluster(cli: &Cli, args: &crate::ClusterArgs) -> Result<Output, Failure> {
    let aff = affiliation_input(&args.input, args.from_edges)?;
    let full = cocitation(&aff)?;
    let kept = threshold_nodes(&full, args.threshold);
    progress(
        cli,
        &format!("{} of {} sources pass the citation threshold", kept.n(), full.n()),
    );
    let measure_matrix = match args.measure {
        MeasureArg::Counts => kept.clone(),
        MeasureArg::Jaccard | MeasureArg::Salton => {
            // Relative co-citation: compare the citer sets of the kept
            // sources.
            let all_sets = row_reference_sets(&aff.transposed())?;
            let kept_sets: Vec<_> = kept
                .labels()
                .iter()
                .map(|label| {
                    all_sets
                        .iter()
                        .find(|s| &s.owner == label)
                        .expect("kept label exists in the affiliation")
                        .clone()
                })
                .collect();
            match args.measure {
                MeasureArg::Jaccard => jaccard_matrix(&kept_sets).with_zeroed_diagonal(),
                _ => salton_matrix(&kept_sets).with_zeroed_diagonal(),
            }
        }
    };
    let linkage = match args.linkage {
        LinkageArg::Single => Linkage::Single,
        LinkageArg::Average => Linkage::Average,
    };
    let clustering = cluster_similarity(&measure_matrix, linkage, args.cut)?;
    let network = aggregate_clusters(&measure_matrix, &clustering)?;
    if let Some(path) = &args.export_dot {
        std::fs::write(path, cluster_network_to_dot(&network)).map_err(bibnet::Error::from)?;
        progress(cli, &format!("wrote {}", path.display()));
    }
    if let Some(path) = &args.export_graphml {
        std::fs::write(path, cluster_network_to_graphml(&network))
            .map_err(bibnet::Error::from)?;
        progress(cli, &format!("wrote {}", path.display()));
    }
    let clusters: Vec<Value> = network
        .nodes
        .iter()
        .map(|node| {
            let mut obj = Value::object();
            obj.insert("id".into(), Value::Str(format!("c{}", node.id)));
            obj.insert(
                "members".into(),
                Value::Array(
                    node.members
                        .iter()
                        .map(|&i| Value::Str(network.member_labels[i].clone()))
                        .collect(),
                ),
            );
            obj.insert("size".into(), Value::Int(node.size as i64));
            Value::Object(obj)
        })
        .collect();
    let edges: Vec<Value> = network
        .edges
        .iter()
        .map(|e| {
            let mut obj = Value::object();
            obj.insert("a".into(), Value::Str(format!("c{}", network.nodes[e.a].id)));
            obj.insert("b".into(), Value::Str(format!("c{}", network.nodes[e.b].id)));
            obj.insert("strength".into(), Value::Float(e.strength));
            Value::Object(obj)
        })
        .collect();
    let mut result = Value::object();
    result.insert("kept_labels".into(), Value::from_str_slice(kept.labels()));
    result.insert("clusters".into(), Value::Array(clusters));
    result.insert("edges".into(), Value::Array(edges));
    result.insert("num_clusters".into(), Value::Int(clustering.num_clusters as i64));
    let mut params = Value::object();
    params.insert("threshold".into(), Value::Int(args.threshold as i64));
    params.insert("cut".into(), Value::Float(args.cut));
    params.insert("linkage".into(), Value::Str(linkage.as_str().to_string()));
    params.insert(
        "measure".into(),
        Value::Str(
            match args.measure {
                MeasureArg::Counts => "counts",
                MeasureArg::Jaccard => "jaccard",
                MeasureArg::Salton => "salton",
            }
            .to_string(),
        ),
    );
    params.insert("from_edges".into(), Value::Bool(args.from_edges));
    Ok(Output::Report {
        command: "cluster",
        inputs: vec![args.input.display().to_string()],
        parameters: params,
        result: Value::Object(result),
    })
}

/// Resolve an output path against BIBNET_OUT_DIR when relative.
pub fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os("BIBNET_OUT_DIR") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}
