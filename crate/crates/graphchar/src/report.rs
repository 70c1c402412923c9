//! The full measure report for one dataset.
//!
//! Reports serialize to JSON at full precision (field order fixed, so equal
//! inputs give byte-identical output), render as aligned text with 6
//! significant digits, and flatten to a one-row CSV for downstream plotting.

use serde::{Deserialize, Serialize};

use crate::graph::LabeledGraph;
use crate::homophily::{self, HomophilyProfile};
use crate::li::{self, LiProfile};

pub const SCHEMA_VERSION: u32 = 1;

/// What ingestion dropped or rewrote on the way in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestionStats {
    pub dropped_self_loops: usize,
    pub deduplicated_edges: usize,
    pub kept_multi_edges: bool,
}

/// Every computed characteristic of one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub dataset: String,
    pub num_nodes: usize,
    pub num_edges: usize,
    pub num_classes: usize,
    pub isolated_nodes: usize,
    pub label_names: Vec<String>,
    pub seed: Option<u64>,
    pub ingestion: Option<IngestionStats>,
    pub homophily: HomophilyProfile,
    pub label_informativeness: LiProfile,
    pub flags: Vec<String>,
}

/// Computes the full report. Degenerate measures are flagged, never fatal.
pub fn characterize(
    graph: &LabeledGraph,
    dataset: &str,
    label_names: Option<&[String]>,
    seed: Option<u64>,
    ingestion: Option<IngestionStats>,
) -> MeasureReport {
    let homophily = homophily::profile(graph);
    let label_informativeness = li::li_profile(graph);
    let mut flags = Vec::new();
    if graph.num_edges() == 0 {
        flags.push("graph has no edges: every edge-dependent measure is undefined".to_string());
    }
    let names = match label_names {
        Some(names) => names.to_vec(),
        None => (0..graph.num_classes()).map(|k| k.to_string()).collect(),
    };
    MeasureReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        dataset: dataset.to_string(),
        num_nodes: graph.num_nodes(),
        num_edges: graph.num_edges(),
        num_classes: graph.num_classes(),
        isolated_nodes: graph.isolated_count(),
        label_names: names,
        seed,
        ingestion,
        homophily,
        label_informativeness,
        flags,
    }
}

/// `value` with `digits` significant digits, plain decimal notation.
pub fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let exponent = value.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{value:.decimals$}")
}

fn cell(value: Option<f64>) -> String {
    match value {
        Some(v) => format_significant(v, 6),
        None => "-".to_string(),
    }
}

impl MeasureReport {
    /// Ordered (name, value) pairs over all measures.
    pub fn measure_entries(&self) -> Vec<(&'static str, Option<f64>)> {
        let mut entries = self.homophily.entries();
        entries.push(("li_edge", self.label_informativeness.li_edge));
        entries.push(("li_node", self.label_informativeness.li_node));
        entries
    }

    /// True when the graph has no edges, so edge-dependent fields carry no
    /// values.
    pub fn is_edgeless(&self) -> bool {
        self.num_edges == 0
    }

    /// Pretty JSON at full precision; byte-identical for identical inputs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One header row plus one value row.
    pub fn to_csv(&self) -> String {
        let mut header = vec![
            "dataset".to_string(),
            "nodes".to_string(),
            "edges".to_string(),
            "classes".to_string(),
        ];
        let mut row = vec![
            self.dataset.clone(),
            self.num_nodes.to_string(),
            self.num_edges.to_string(),
            self.num_classes.to_string(),
        ];
        for (name, value) in self.measure_entries() {
            header.push(name.to_string());
            row.push(match value {
                Some(v) => format!("{v}"),
                None => String::new(),
            });
        }
        format!("{}\n{}\n", header.join(","), row.join(","))
    }

    /// Aligned text table with 6 significant digits.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dataset: {}\n", self.dataset));
        out.push_str(&format!(
            "nodes: {}  edges: {}  classes: {}  isolated: {}\n",
            self.num_nodes, self.num_edges, self.num_classes, self.isolated_nodes
        ));
        out.push('\n');
        out.push_str(&format!("{:<12}{}\n", "measure", "value"));
        for (name, value) in self.measure_entries() {
            out.push_str(&format!("{name:<12}{}\n", cell(value)));
        }
        let all_flags: Vec<&String> = self
            .flags
            .iter()
            .chain(&self.homophily.flags)
            .chain(&self.label_informativeness.flags)
            .collect();
        if !all_flags.is_empty() {
            out.push_str("\nflags:\n");
            for flag in all_flags {
                out.push_str(&format!("  - {flag}\n"));
            }
        }
        out
    }
}
