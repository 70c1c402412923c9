//! Label informativeness: how much a neighbor's label tells about a node's.
//!
//! Both variants are normalized mutual information over the labels of an
//! edge's endpoints; they differ in how the edge is sampled.
//!
//! - `li_edge` samples an edge uniformly. Endpoint labels then have marginal
//!   p̄, and the value is I(y_ξ, y_η) / H(p̄) ∈ [0, 1]: 1 when one endpoint's
//!   label determines the other, 0 when the joint factorizes.
//! - `li_node` samples a node uniformly among non-isolated nodes, then a
//!   uniform neighbor. The joint is compared against p(c1)·p̄(c2) and
//!   normalized by H(p). Because p̄ is not the exact neighbor marginal under
//!   this sampling, the value can exceed 1 on strongly degree-skewed graphs
//!   (a star reaches ≈1.23); on regular graphs it coincides with `li_edge`.
//!
//! Natural logarithms everywhere, with the 0·log 0 = 0 convention; the ratio
//! of entropies makes the result base-invariant anyway.

use serde::{Deserialize, Serialize};

use crate::graph::{
    degree_weighted_distribution, ClassAdjacencyMatrix, ClassDistribution, LabeledGraph,
};
use crate::MeasureError;

/// Shannon entropy in nats, with 0·log 0 = 0.
pub fn entropy(distribution: &ClassDistribution) -> f64 {
    entropy_of(distribution.probs())
}

fn entropy_of(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// LI under uniform edge sampling, from the class adjacency matrix.
pub fn li_edge(matrix: &ClassAdjacencyMatrix) -> Result<f64, MeasureError> {
    let total = matrix.total();
    if total == 0 {
        return Err(MeasureError::NoEdges);
    }
    let n = total as f64;
    let marginal: Vec<f64> = matrix.row_sums().iter().map(|&a| a as f64 / n).collect();
    let h_marginal = entropy_of(&marginal);
    if h_marginal == 0.0 {
        return Err(MeasureError::SingleClass);
    }
    let c = matrix.num_classes();
    let mut information = 0.0;
    for i in 0..c {
        for j in 0..c {
            let count = matrix.count(i, j);
            if count == 0 {
                continue;
            }
            let p = count as f64 / n;
            information += p * (p / (marginal[i] * marginal[j])).ln();
        }
    }
    Ok(information / h_marginal)
}

/// LI under node-then-neighbor sampling. Isolated nodes are excluded from the
/// sampling distribution.
pub fn li_node(graph: &LabeledGraph) -> Result<f64, MeasureError> {
    if graph.num_edges() == 0 {
        return Err(MeasureError::NoEdges);
    }
    let adjacency = graph.adjacency();
    let active: Vec<usize> = (0..graph.num_nodes())
        .filter(|&v| !adjacency[v].is_empty())
        .collect();
    let n_active = active.len() as f64;

    let c = graph.num_classes();
    let mut node_marginal = vec![0.0f64; c];
    for &v in &active {
        node_marginal[graph.label(v)] += 1.0 / n_active;
    }
    let h_node = entropy_of(&node_marginal);
    if h_node == 0.0 {
        return Err(MeasureError::SingleClass);
    }

    let degree_marginal = degree_weighted_distribution(graph)
        .expect("graph has edges")
        .probs()
        .to_vec();

    let mut joint = vec![0.0f64; c * c];
    for &u in &active {
        let weight = 1.0 / (n_active * adjacency[u].len() as f64);
        for &v in &adjacency[u] {
            joint[graph.label(u) * c + graph.label(v)] += weight;
        }
    }

    let mut information = 0.0;
    for c1 in 0..c {
        for c2 in 0..c {
            let p = joint[c1 * c + c2];
            if p > 0.0 {
                information += p * (p / (node_marginal[c1] * degree_marginal[c2])).ln();
            }
        }
    }
    Ok(information / h_node)
}

/// Label-informativeness summary of one graph. `li_edge`/`li_node` clamp
/// small negative floating noise to zero; the raw fields keep the unclamped
/// values. Undefined measures are `None` with an explanatory flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiProfile {
    pub li_edge: Option<f64>,
    pub li_node: Option<f64>,
    pub li_edge_raw: Option<f64>,
    pub li_node_raw: Option<f64>,
    /// H(p̄) in nats.
    pub entropy_marginal: Option<f64>,
    /// I(y_ξ, y_η) under uniform edge sampling, in nats.
    pub mutual_information: Option<f64>,
    pub flags: Vec<String>,
}

fn clamp_unit(value: f64) -> f64 {
    if value < 0.0 {
        0.0
    } else if value > 1.0 && value < 1.0 + 1e-9 {
        1.0
    } else {
        value
    }
}

/// Computes both LI variants plus their entropy ingredients; errors become
/// flags instead of failures.
pub fn li_profile(graph: &LabeledGraph) -> LiProfile {
    let matrix = ClassAdjacencyMatrix::from_graph(graph);
    let mut flags = Vec::new();

    let (li_e, h_marginal, information) = match li_edge(&matrix) {
        Ok(value) => {
            let n = matrix.total() as f64;
            let marginal: Vec<f64> = matrix.row_sums().iter().map(|&a| a as f64 / n).collect();
            let h = entropy_of(&marginal);
            (Some(value), Some(h), Some(value * h))
        }
        Err(err) => {
            flags.push(format!("li_edge undefined: {err}"));
            (None, None, None)
        }
    };
    let li_n = match li_node(graph) {
        Ok(value) => Some(value),
        Err(err) => {
            flags.push(format!("li_node undefined: {err}"));
            None
        }
    };
    let isolated = graph.isolated_count();
    if isolated > 0 && li_n.is_some() {
        flags.push(format!(
            "{isolated} isolated node(s) excluded from li_node sampling"
        ));
    }
    LiProfile {
        li_edge: li_e.map(clamp_unit),
        li_node: li_n.map(|v| if v < 0.0 { 0.0 } else { v }),
        li_edge_raw: li_e,
        li_node_raw: li_n,
        entropy_marginal: h_marginal,
        mutual_information: information,
        flags,
    }
}
