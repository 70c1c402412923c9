//! Edge-list ingestion and writing.
//!
//! The on-disk format is two plain-text files:
//!
//! - edge file: one whitespace-separated node-id pair per line; `#` starts a
//!   comment; blank lines are ignored;
//! - label file: one `node_id<TAB>label` per line (any whitespace works when
//!   the label itself has none); labels are arbitrary strings.
//!
//! Node ids are arbitrary strings, mapped to dense indices in label-file
//! order; label strings are mapped to dense class indices by first
//! appearance, and the mapping is recorded for reports. Input is treated as
//! undirected: pairs are normalized, so a directed file symmetrizes and then
//! deduplicates. Duplicate edges are dropped (and counted) by default;
//! `keep_multi` retains them with multiplicity. Self-loops are always dropped
//! and counted. Nodes that appear only in the label file stay as isolated
//! nodes.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::{GraphError, LabeledGraph};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: expected `node_id<TAB>label`, got `{content}`")]
    BadLabelLine {
        path: PathBuf,
        line: usize,
        content: String,
    },
    #[error("{path}:{line}: expected two node ids, got `{content}`")]
    BadEdgeLine {
        path: PathBuf,
        line: usize,
        content: String,
    },
    #[error("{path}:{line}: node `{id}` labeled twice")]
    DuplicateLabel {
        path: PathBuf,
        line: usize,
        id: String,
    },
    #[error("{count} node id(s) in the edge file have no label, e.g. {examples:?}")]
    MissingLabels { count: usize, examples: Vec<String> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A parsed graph plus everything ingestion learned along the way.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: LabeledGraph,
    /// Dense node index -> original node id.
    pub node_ids: Vec<String>,
    /// Dense class index -> original label string.
    pub label_names: Vec<String>,
    pub dropped_self_loops: usize,
    pub deduplicated_edges: usize,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Loads a graph from an edge file and a label file.
pub fn load_edge_list(
    edge_path: &Path,
    label_path: &Path,
    keep_multi: bool,
) -> Result<LoadedGraph, IoError> {
    let label_text = fs::read_to_string(label_path).map_err(|source| IoError::Read {
        path: label_path.to_path_buf(),
        source,
    })?;

    let mut node_index: HashMap<String, usize> = HashMap::new();
    let mut node_ids: Vec<String> = Vec::new();
    let mut label_index: HashMap<String, usize> = HashMap::new();
    let mut label_names: Vec<String> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();

    for (line_no, raw) in label_text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (id, label) = match line.split_once('\t') {
            Some((id, label)) => (id.trim(), label.trim()),
            None => {
                let mut parts = line.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(id), Some(label), None) => (id, label),
                    _ => {
                        return Err(IoError::BadLabelLine {
                            path: label_path.to_path_buf(),
                            line: line_no + 1,
                            content: raw.to_string(),
                        })
                    }
                }
            }
        };
        if node_index.contains_key(id) {
            return Err(IoError::DuplicateLabel {
                path: label_path.to_path_buf(),
                line: line_no + 1,
                id: id.to_string(),
            });
        }
        node_index.insert(id.to_string(), node_ids.len());
        node_ids.push(id.to_string());
        let class = *label_index.entry(label.to_string()).or_insert_with(|| {
            label_names.push(label.to_string());
            label_names.len() - 1
        });
        labels.push(class);
    }

    let edge_text = fs::read_to_string(edge_path).map_err(|source| IoError::Read {
        path: edge_path.to_path_buf(),
        source,
    })?;

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut missing: Vec<String> = Vec::new();
    let mut missing_set: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut dropped_self_loops = 0usize;
    let mut deduplicated_edges = 0usize;

    for (line_no, raw) in edge_text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(IoError::BadEdgeLine {
                    path: edge_path.to_path_buf(),
                    line: line_no + 1,
                    content: raw.to_string(),
                })
            }
        };
        let mut resolve = |id: &str| -> Option<usize> {
            match node_index.get(id) {
                Some(&idx) => Some(idx),
                None => {
                    if missing_set.insert(id.to_string()) {
                        missing.push(id.to_string());
                    }
                    None
                }
            }
        };
        let (u, v) = match (resolve(a), resolve(b)) {
            (Some(u), Some(v)) => (u, v),
            _ => continue,
        };
        if u == v {
            dropped_self_loops += 1;
            continue;
        }
        let pair = (u.min(v), u.max(v));
        if !keep_multi && !seen.insert(pair) {
            deduplicated_edges += 1;
            continue;
        }
        edges.push(pair);
    }

    if !missing.is_empty() {
        let count = missing.len();
        missing.truncate(10);
        return Err(IoError::MissingLabels {
            count,
            examples: missing,
        });
    }

    let num_classes = label_names.len().max(1);
    let graph = LabeledGraph::new(node_ids.len(), num_classes, labels, edges)?;
    Ok(LoadedGraph {
        graph,
        node_ids,
        label_names,
        dropped_self_loops,
        deduplicated_edges,
    })
}

/// Writes `graph` in the ingestion format with canonical ordering: label
/// lines in node-index order, edge lines sorted. Node ids are the dense
/// indices; class labels use `label_names` when given, otherwise the class
/// index.
pub fn write_edge_list(
    graph: &LabeledGraph,
    label_names: Option<&[String]>,
    edge_path: &Path,
    label_path: &Path,
) -> Result<(), IoError> {
    let mut label_text = String::new();
    for (node, &class) in graph.labels().iter().enumerate() {
        let label = match label_names {
            Some(names) => names[class].clone(),
            None => class.to_string(),
        };
        writeln!(label_text, "{node}\t{label}").expect("string write");
    }
    let mut edges = graph.edges().to_vec();
    edges.sort_unstable();
    let mut edge_text = String::new();
    for (u, v) in edges {
        writeln!(edge_text, "{u}\t{v}").expect("string write");
    }
    fs::write(label_path, label_text).map_err(|source| IoError::Write {
        path: label_path.to_path_buf(),
        source,
    })?;
    fs::write(edge_path, edge_text).map_err(|source| IoError::Write {
        path: edge_path.to_path_buf(),
        source,
    })?;
    Ok(())
}
