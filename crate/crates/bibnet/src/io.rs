//! File formats and graph exports.
//!
//! Sparse networks travel as TSV (edge lists and affiliation lists), dense
//! labeled count matrices as CSV, text corpora as one document per line.
//! Graphs export to DOT or GraphML for external layout engines; both
//! writers emit byte-deterministic output (nodes in index order, edges
//! sorted), and the GraphML subset written here can be read back.
//!
//! Edge-list grammar: `citing<TAB>cited[<TAB>weight]` per line. Lines
//! starting with `#` are comments, except two optional headers:
//! `#nodes: a b c` declares the node set (and its index order), and
//! `#order: a=1 b=2` assigns publication ranks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::coauthor::UndirectedGraph;
use crate::error::{Error, Result};
use crate::journalrank::JournalCitationMatrix;
use crate::mapping::ClusterNetwork;
use crate::netcore::{AffiliationMatrix, TemporalDigraph};
use crate::textnet::tokenize;

/// Fixed report formatting for floats: nine significant digits in
/// scientific notation, negative zero normalized.
pub fn format_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.8e}")
}

/// Graph-attribute formatting for weights: shortest decimal form that
/// parses back to the same value.
pub fn format_weight(w: f64) -> String {
    format!("{w}")
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse { path: path.display().to_string(), line, message: message.into() }
}

/// Strip one trailing carriage return (CRLF input).
fn clean(line: &str) -> &str {
    line.strip_suffix('\r').unwrap_or(line)
}

/// Read a citation edge list. See the module docs for the grammar.
pub fn read_edge_list(path: &Path) -> Result<TemporalDigraph> {
    let text = std::fs::read_to_string(path)?;
    let mut builder = TemporalDigraph::builder();
    let mut declared: Vec<String> = Vec::new();
    let mut have_nodes = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = clean(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#nodes:") {
            for label in rest.split_whitespace() {
                declared.push(label.to_string());
            }
            have_nodes = true;
            continue;
        }
        if let Some(rest) = line.strip_prefix("#order:") {
            for item in rest.split_whitespace() {
                let (label, rank) = item.split_once('=').ok_or_else(|| {
                    parse_error(path, line_no, format!("order entry `{item}` is not label=rank"))
                })?;
                let rank: i64 = rank.parse().map_err(|_| {
                    parse_error(path, line_no, format!("rank `{rank}` is not an integer"))
                })?;
                builder = builder.rank(label, rank);
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            [citing, cited] => {
                builder = builder.edge(citing, cited);
            }
            [citing, cited, weight] => {
                let w: f64 = weight.parse().map_err(|_| {
                    parse_error(path, line_no, format!("weight `{weight}` is not a number"))
                })?;
                if !w.is_finite() || w < 0.0 {
                    return Err(parse_error(
                        path,
                        line_no,
                        format!("weight `{weight}` must be a finite non-negative number"),
                    ));
                }
                builder = builder.weighted_edge(citing, cited, w);
            }
            _ => {
                return Err(parse_error(
                    path,
                    line_no,
                    format!("expected 2 or 3 tab-separated fields, found {}", fields.len()),
                ));
            }
        }
    }
    if have_nodes {
        builder = builder.nodes(declared);
    }
    builder.build()
}

/// Read a bipartite affiliation list: `row<TAB>column[<TAB>weight]`.
/// The row and column namespaces must be disjoint.
pub fn read_affiliation(path: &Path) -> Result<AffiliationMatrix> {
    let text = std::fs::read_to_string(path)?;
    let mut entries: Vec<(String, String, f64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = clean(raw);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let (row, col, w) = match fields.as_slice() {
            [row, col] => (row, col, 1.0),
            [row, col, weight] => {
                let w: f64 = weight.parse().map_err(|_| {
                    parse_error(path, line_no, format!("weight `{weight}` is not a number"))
                })?;
                (row, col, w)
            }
            _ => {
                return Err(parse_error(
                    path,
                    line_no,
                    format!("expected 2 or 3 tab-separated fields, found {}", fields.len()),
                ));
            }
        };
        entries.push((row.to_string(), col.to_string(), w));
    }
    if entries.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let rows: BTreeSet<&str> = entries.iter().map(|(r, _, _)| r.as_str()).collect();
    for (_, c, _) in &entries {
        if rows.contains(c.as_str()) {
            return Err(Error::BipartiteViolation(c.clone()));
        }
    }
    let refs: Vec<(&str, &str, f64)> =
        entries.iter().map(|(r, c, w)| (r.as_str(), c.as_str(), *w)).collect();
    AffiliationMatrix::from_entries(&refs)
}

/// Read a labeled square count matrix from CSV. The first row holds the
/// column labels (after a corner cell), each following row starts with its
/// label; cell (i, j) counts citations of journal j by journal i. Row and
/// column label sequences must agree.
pub fn read_matrix_csv(path: &Path) -> Result<JournalCitationMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)?;
    let mut records = Vec::new();
    for record in reader.records() {
        records.push(record?);
    }
    if records.is_empty() {
        return Err(parse_error(path, 1, "empty matrix file"));
    }
    let header = &records[0];
    if header.len() < 2 {
        return Err(parse_error(path, 1, "header needs a corner cell plus column labels"));
    }
    let col_labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let n = col_labels.len();
    if records.len() - 1 != n {
        return Err(parse_error(
            path,
            records.len(),
            format!("{} data rows for {} columns; matrix must be square", records.len() - 1, n),
        ));
    }
    let mut counts = Vec::with_capacity(n * n);
    for (i, record) in records.iter().skip(1).enumerate() {
        let line_no = i + 2;
        if record.len() != n + 1 {
            return Err(parse_error(
                path,
                line_no,
                format!("expected {} cells, found {}", n + 1, record.len()),
            ));
        }
        let label = &record[0];
        if label != col_labels[i] {
            return Err(parse_error(
                path,
                line_no,
                format!("row label `{label}` does not match column label `{}`", col_labels[i]),
            ));
        }
        for cell in record.iter().skip(1) {
            let value: u64 = cell.trim().parse().map_err(|_| {
                parse_error(path, line_no, format!("cell `{cell}` is not a non-negative integer"))
            })?;
            counts.push(value);
        }
    }
    JournalCitationMatrix::new(col_labels, counts)
}

/// Read a corpus: one document per line, tokenized.
pub fn read_corpus(path: &Path) -> Result<Vec<Vec<String>>> {
    let text = std::fs::read_to_string(path)?;
    Ok(text.lines().map(|l| tokenize(clean(l))).collect())
}

/// Read a stop word list: one token per line.
pub fn read_stopwords(path: &Path) -> Result<BTreeSet<String>> {
    let text = std::fs::read_to_string(path)?;
    Ok(text
        .lines()
        .map(|l| clean(l).trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    GraphMl,
}

impl ExportFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dot" => Some(Self::Dot),
            "graphml" => Some(Self::GraphMl),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Dot => "dot",
            Self::GraphMl => "graphml",
        }
    }
}

fn dot_escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

fn xml_unescape(text: &str) -> String {
    text.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&apos;", "'")
        .replace("&amp;", "&")
}

/// Serialize a citation digraph to DOT.
pub fn digraph_to_dot(g: &TemporalDigraph) -> String {
    let mut out = String::from("digraph citations {\n");
    for label in g.labels() {
        let _ = writeln!(out, "  \"{}\";", dot_escape(label));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [weight={}];",
            dot_escape(&g.labels()[e.citing]),
            dot_escape(&g.labels()[e.cited]),
            format_weight(e.weight)
        );
    }
    out.push_str("}\n");
    out
}

/// Serialize a citation digraph to GraphML (typed weight and order
/// attributes, labels escaped).
pub fn digraph_to_graphml(g: &TemporalDigraph) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n\
         <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n\
         <key id=\"order\" for=\"node\" attr.name=\"order\" attr.type=\"long\"/>\n\
         <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n\
         <graph id=\"G\" edgedefault=\"directed\">\n",
    );
    let order = g.order();
    for (i, label) in g.labels().iter().enumerate() {
        let _ = write!(out, "<node id=\"n{i}\"><data key=\"label\">{}</data>", xml_escape(label));
        if let Some(ranks) = order {
            let _ = write!(out, "<data key=\"order\">{}</data>", ranks[i]);
        }
        out.push_str("</node>\n");
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "<edge source=\"n{}\" target=\"n{}\"><data key=\"weight\">{}</data></edge>",
            e.citing,
            e.cited,
            format_weight(e.weight)
        );
    }
    out.push_str("</graph>\n</graphml>\n");
    out
}

/// Serialize a cluster network to DOT (undirected, strengths as weights,
/// member counts as a size attribute).
pub fn cluster_network_to_dot(net: &ClusterNetwork) -> String {
    let mut out = String::from("graph clusters {\n");
    for node in &net.nodes {
        let _ = writeln!(out, "  \"c{}\" [size={}];", node.id, node.size);
    }
    for e in &net.edges {
        let _ = writeln!(
            out,
            "  \"c{}\" -- \"c{}\" [weight={}];",
            net.nodes[e.a].id,
            net.nodes[e.b].id,
            format_weight(e.strength)
        );
    }
    out.push_str("}\n");
    out
}

/// Serialize a cluster network to GraphML (undirected).
pub fn cluster_network_to_graphml(net: &ClusterNetwork) -> String {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n\
         <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n\
         <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"long\"/>\n\
         <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n\
         <graph id=\"G\" edgedefault=\"undirected\">\n",
    );
    for node in &net.nodes {
        let _ = writeln!(
            out,
            "<node id=\"n{}\"><data key=\"label\">c{}</data><data key=\"size\">{}</data></node>",
            node.id, node.id, node.size
        );
    }
    for e in &net.edges {
        let _ = writeln!(
            out,
            "<edge source=\"n{}\" target=\"n{}\"><data key=\"weight\">{}</data></edge>",
            net.nodes[e.a].id,
            net.nodes[e.b].id,
            format_weight(e.strength)
        );
    }
    out.push_str("</graph>\n</graphml>\n");
    out
}

/// Serialize an undirected co-authorship graph to DOT.
pub fn undirected_to_dot(g: &UndirectedGraph) -> String {
    let mut out = String::from("graph coauthorship {\n");
    for label in g.labels() {
        let _ = writeln!(out, "  \"{}\";", dot_escape(label));
    }
    for (a, b, w) in g.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [weight={}];",
            dot_escape(&g.labels()[a]),
            dot_escape(&g.labels()[b]),
            w
        );
    }
    out.push_str("}\n");
    out
}

struct XmlElement {
    attrs: BTreeMap<String, String>,
    data: BTreeMap<String, String>,
}

/// Scan the elements named `name` out of the GraphML subset emitted by the
/// exporters above (single-line elements, `<data>` children only).
fn scan_elements(text: &str, name: &str, path: &Path) -> Result<Vec<XmlElement>> {
    let open = format!("<{name} ");
    let close = format!("</{name}>");
    let mut out = Vec::new();
    let mut pos = 0;
    while let Some(found) = text[pos..].find(&open) {
        let start = pos + found;
        let tag_end = text[start..]
            .find('>')
            .ok_or_else(|| parse_error(path, 0, format!("unterminated <{name}> tag")))?;
        let tag = &text[start + open.len()..start + tag_end];
        let self_closing = tag.ends_with('/');
        let mut attrs = BTreeMap::new();
        for piece in tag.trim_end_matches('/').split_whitespace() {
            if let Some((key, value)) = piece.split_once('=') {
                attrs.insert(key.to_string(), xml_unescape(value.trim_matches('"')));
            }
        }
        let mut data = BTreeMap::new();
        let end = if self_closing {
            start + tag_end + 1
        } else {
            let body_start = start + tag_end + 1;
            let body_end = text[body_start..]
                .find(&close)
                .ok_or_else(|| parse_error(path, 0, format!("missing {close}")))?;
            let body = &text[body_start..body_start + body_end];
            let mut cursor = 0;
            while let Some(d) = body[cursor..].find("<data key=\"") {
                let key_start = cursor + d + "<data key=\"".len();
                let key_end = body[key_start..]
                    .find('"')
                    .ok_or_else(|| parse_error(path, 0, "unterminated data key"))?;
                let key = &body[key_start..key_start + key_end];
                let value_start = key_start + key_end + 2; // skip `">`
                let value_end = body[value_start..]
                    .find("</data>")
                    .ok_or_else(|| parse_error(path, 0, "unterminated data element"))?;
                data.insert(
                    key.to_string(),
                    xml_unescape(&body[value_start..value_start + value_end]),
                );
                cursor = value_start + value_end + "</data>".len();
            }
            body_start + body_end + close.len()
        };
        out.push(XmlElement { attrs, data });
        pos = end;
    }
    Ok(out)
}

/// Parse a digraph back from the GraphML subset written by
/// [`digraph_to_graphml`].
pub fn digraph_from_graphml_str(text: &str, path: &Path) -> Result<TemporalDigraph> {
    let nodes = scan_elements(text, "node", path)?;
    let edges = scan_elements(text, "edge", path)?;
    let mut id_to_label: BTreeMap<String, String> = BTreeMap::new();
    let mut builder = TemporalDigraph::builder().allow_self_loops(true);
    let mut labels = Vec::with_capacity(nodes.len());
    for node in &nodes {
        let id = node
            .attrs
            .get("id")
            .ok_or_else(|| parse_error(path, 0, "node without id"))?;
        let label = node
            .data
            .get("label")
            .ok_or_else(|| parse_error(path, 0, format!("node {id} without label")))?;
        id_to_label.insert(id.clone(), label.clone());
        labels.push(label.clone());
        if let Some(rank) = node.data.get("order") {
            let rank: i64 = rank
                .parse()
                .map_err(|_| parse_error(path, 0, format!("bad order value `{rank}`")))?;
            builder = builder.rank(label, rank);
        }
    }
    builder = builder.nodes(labels);
    for edge in &edges {
        let source = edge
            .attrs
            .get("source")
            .and_then(|id| id_to_label.get(id))
            .ok_or_else(|| parse_error(path, 0, "edge with unknown source"))?;
        let target = edge
            .attrs
            .get("target")
            .and_then(|id| id_to_label.get(id))
            .ok_or_else(|| parse_error(path, 0, "edge with unknown target"))?;
        match edge.data.get("weight") {
            Some(w) => {
                let w: f64 = w
                    .parse()
                    .map_err(|_| parse_error(path, 0, format!("bad weight `{w}`")))?;
                builder = builder.weighted_edge(source, target, w);
            }
            None => {
                builder = builder.edge(source, target);
            }
        }
    }
    builder.build()
}

/// Read a digraph from a GraphML file (the subset written by the exporter).
pub fn read_graphml(path: &Path) -> Result<TemporalDigraph> {
    let text = std::fs::read_to_string(path)?;
    digraph_from_graphml_str(&text, path)
}
