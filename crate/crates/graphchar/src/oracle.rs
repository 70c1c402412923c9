//! Independent reference computations by literal enumeration.
//!
//! Every measure is recomputed here straight from the defining sums over
//! nodes, edges, and label pairs, sharing no code with the fast paths (no
//! class adjacency matrix, no degree profile, no measure functions). Values
//! are `None` exactly where the corresponding measure is undefined. Intended
//! for small graphs; the CLI guards it at n ≤ 50 by default.

use serde::Serialize;

use crate::graph::LabeledGraph;

/// All measure values recomputed by enumeration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleValues {
    pub h_edge: Option<f64>,
    pub h_node: Option<f64>,
    pub h_class: Option<f64>,
    pub h_adj: Option<f64>,
    pub h_mod: Option<f64>,
    pub h_bal: Option<f64>,
    pub h_bal_adj: Option<f64>,
    pub li_edge: Option<f64>,
    pub li_node: Option<f64>,
}

impl OracleValues {
    pub fn entries(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("h_edge", self.h_edge),
            ("h_node", self.h_node),
            ("h_class", self.h_class),
            ("h_adj", self.h_adj),
            ("h_mod", self.h_mod),
            ("h_bal", self.h_bal),
            ("h_bal_adj", self.h_bal_adj),
            ("li_edge", self.li_edge),
            ("li_node", self.li_node),
        ]
    }
}

fn neighbors_of(graph: &LabeledGraph, node: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &(u, v) in graph.edges() {
        if u == node {
            out.push(v);
        }
        if v == node {
            out.push(u);
        }
    }
    out
}

fn degree_of(graph: &LabeledGraph, node: usize) -> usize {
    neighbors_of(graph, node).len()
}

fn class_degree_sum(graph: &LabeledGraph, class: usize) -> usize {
    (0..graph.num_nodes())
        .filter(|&v| graph.label(v) == class)
        .map(|v| degree_of(graph, v))
        .sum()
}

/// Ordered endpoint pairs (u, v) over all edges with y_u = a, y_v = b.
fn ordered_pair_count(graph: &LabeledGraph, a: usize, b: usize) -> usize {
    let mut count = 0;
    for &(u, v) in graph.edges() {
        if graph.label(u) == a && graph.label(v) == b {
            count += 1;
        }
        if graph.label(v) == a && graph.label(u) == b {
            count += 1;
        }
    }
    count
}

fn h_edge(graph: &LabeledGraph) -> Option<f64> {
    if graph.num_edges() == 0 {
        return None;
    }
    let same = graph
        .edges()
        .iter()
        .filter(|&&(u, v)| graph.label(u) == graph.label(v))
        .count();
    Some(same as f64 / graph.num_edges() as f64)
}

fn h_node(graph: &LabeledGraph) -> Option<f64> {
    let mut sum = 0.0;
    let mut counted = 0usize;
    for v in 0..graph.num_nodes() {
        let neighbors = neighbors_of(graph, v);
        if neighbors.is_empty() {
            continue;
        }
        let same = neighbors
            .iter()
            .filter(|&&u| graph.label(u) == graph.label(v))
            .count();
        sum += same as f64 / neighbors.len() as f64;
        counted += 1;
    }
    if counted == 0 {
        None
    } else {
        Some(sum / counted as f64)
    }
}

fn h_class(graph: &LabeledGraph) -> Option<f64> {
    let c = graph.num_classes();
    if c < 2 || graph.num_edges() == 0 {
        return None;
    }
    let n = graph.num_nodes() as f64;
    let mut sum = 0.0;
    for k in 0..c {
        let dk = class_degree_sum(graph, k);
        if dk == 0 {
            continue;
        }
        let intra: usize = (0..graph.num_nodes())
            .filter(|&v| graph.label(v) == k)
            .map(|v| {
                neighbors_of(graph, v)
                    .iter()
                    .filter(|&&u| graph.label(u) == k)
                    .count()
            })
            .sum();
        let nk = (0..graph.num_nodes())
            .filter(|&v| graph.label(v) == k)
            .count();
        let excess = intra as f64 / dk as f64 - nk as f64 / n;
        if excess > 0.0 {
            sum += excess;
        }
    }
    Some(sum / (c - 1) as f64)
}

fn degree_weighted_share(graph: &LabeledGraph, class: usize) -> f64 {
    class_degree_sum(graph, class) as f64 / (2 * graph.num_edges()) as f64
}

fn h_adj(graph: &LabeledGraph) -> Option<f64> {
    if graph.num_edges() == 0 {
        return None;
    }
    let carries_all =
        (0..graph.num_classes()).any(|k| class_degree_sum(graph, k) == 2 * graph.num_edges());
    if carries_all {
        return Some(1.0);
    }
    let he = h_edge(graph)?;
    let sumsq: f64 = (0..graph.num_classes())
        .map(|k| degree_weighted_share(graph, k).powi(2))
        .sum();
    Some((he - sumsq) / (1.0 - sumsq))
}

fn h_mod(graph: &LabeledGraph) -> Option<f64> {
    if graph.num_edges() == 0 {
        return None;
    }
    let he = h_edge(graph)?;
    let sumsq: f64 = (0..graph.num_classes())
        .map(|k| degree_weighted_share(graph, k).powi(2))
        .sum();
    Some(he - sumsq)
}

fn h_bal(graph: &LabeledGraph) -> Option<f64> {
    if graph.num_edges() == 0 {
        return None;
    }
    let c = graph.num_classes();
    let mut sum = 0.0;
    for k in 0..c {
        let dk = class_degree_sum(graph, k);
        if dk > 0 {
            sum += ordered_pair_count(graph, k, k) as f64 / dk as f64;
        }
    }
    Some(sum / c as f64)
}

fn h_bal_adj(graph: &LabeledGraph) -> Option<f64> {
    let c = graph.num_classes();
    if c < 2 || graph.num_edges() == 0 {
        return None;
    }
    let mut sum = 0.0;
    for k in 0..c {
        let dk = class_degree_sum(graph, k);
        if dk > 0 {
            sum += ordered_pair_count(graph, k, k) as f64 / dk as f64;
        }
    }
    Some((sum - 1.0) / (c - 1) as f64)
}

fn li_edge(graph: &LabeledGraph) -> Option<f64> {
    if graph.num_edges() == 0 {
        return None;
    }
    let c = graph.num_classes();
    let two_e = (2 * graph.num_edges()) as f64;
    let mut denominator = 0.0;
    for k in 0..c {
        let share = degree_weighted_share(graph, k);
        if share > 0.0 {
            denominator -= share * share.ln();
        }
    }
    if denominator == 0.0 {
        return None;
    }
    let mut numerator = 0.0;
    for c1 in 0..c {
        for c2 in 0..c {
            let p = ordered_pair_count(graph, c1, c2) as f64 / two_e;
            if p > 0.0 {
                let product = degree_weighted_share(graph, c1) * degree_weighted_share(graph, c2);
                numerator += p * (p / product).ln();
            }
        }
    }
    Some(numerator / denominator)
}

fn li_node(graph: &LabeledGraph) -> Option<f64> {
    if graph.num_edges() == 0 {
        return None;
    }
    let c = graph.num_classes();
    let active: Vec<usize> = (0..graph.num_nodes())
        .filter(|&v| degree_of(graph, v) > 0)
        .collect();
    let n_active = active.len() as f64;

    let mut node_share = vec![0.0f64; c];
    for &v in &active {
        node_share[graph.label(v)] += 1.0 / n_active;
    }
    let mut denominator = 0.0;
    for &p in &node_share {
        if p > 0.0 {
            denominator -= p * p.ln();
        }
    }
    if denominator == 0.0 {
        return None;
    }

    let mut joint = vec![0.0f64; c * c];
    for &u in &active {
        let du = degree_of(graph, u) as f64;
        for v in neighbors_of(graph, u) {
            joint[graph.label(u) * c + graph.label(v)] += 1.0 / (n_active * du);
        }
    }
    let mut numerator = 0.0;
    for c1 in 0..c {
        for c2 in 0..c {
            let p = joint[c1 * c + c2];
            if p > 0.0 {
                let product = node_share[c1] * degree_weighted_share(graph, c2);
                numerator += p * (p / product).ln();
            }
        }
    }
    Some(numerator / denominator)
}

/// Recomputes every measure by enumeration.
pub fn enumerate_measures(graph: &LabeledGraph) -> OracleValues {
    OracleValues {
        h_edge: h_edge(graph),
        h_node: h_node(graph),
        h_class: h_class(graph),
        h_adj: h_adj(graph),
        h_mod: h_mod(graph),
        h_bal: h_bal(graph),
        h_bal_adj: h_bal_adj(graph),
        li_edge: li_edge(graph),
        li_node: li_node(graph),
    }
}

/// Fast-path values in the oracle's layout, for diffing.
pub fn fast_path_measures(graph: &LabeledGraph) -> OracleValues {
    let homophily = crate::homophily::profile(graph);
    let li = crate::li::li_profile(graph);
    OracleValues {
        h_edge: homophily.h_edge,
        h_node: homophily.h_node,
        h_class: homophily.h_class,
        h_adj: homophily.h_adj,
        h_mod: homophily.h_mod,
        h_bal: homophily.h_bal,
        h_bal_adj: homophily.h_bal_adj,
        li_edge: li.li_edge_raw,
        li_node: li.li_node_raw,
    }
}

/// Per-measure absolute differences between oracle and fast path.
///
/// `None` means the two paths disagree on definedness, which also counts as a
/// mismatch; `Some(delta)` is the absolute difference where both are defined
/// (0 when both are undefined).
pub fn diff(graph: &LabeledGraph) -> Vec<(&'static str, Option<f64>)> {
    let slow = enumerate_measures(graph);
    let fast = fast_path_measures(graph);
    slow.entries()
        .into_iter()
        .zip(fast.entries())
        .map(|((name, a), (_, b))| {
            let delta = match (a, b) {
                (Some(x), Some(y)) => Some((x - y).abs()),
                (None, None) => Some(0.0),
                _ => None,
            };
            (name, delta)
        })
        .collect()
}

/// Largest per-measure difference, or `None` on any definedness mismatch.
pub fn max_diff(graph: &LabeledGraph) -> Option<f64> {
    let mut worst = 0.0f64;
    for (_, delta) in diff(graph) {
        worst = worst.max(delta?);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::clique_star;
    use crate::graph::LabeledGraph;

    #[test]
    fn oracle_matches_fast_path_on_clique_star() {
        let g = clique_star(4).unwrap();
        assert!(max_diff(&g).unwrap() < 1e-12);
    }

    #[test]
    fn oracle_values_clique_star() {
        let values = enumerate_measures(&clique_star(4).unwrap());
        assert!((values.h_edge.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((values.h_adj.unwrap() + 0.5).abs() < 1e-12);
        assert_eq!(values.h_bal.unwrap(), 0.25);
    }

    #[test]
    fn oracle_handles_undefined_measures() {
        let single = LabeledGraph::new(3, 1, vec![0; 3], vec![(0, 1), (1, 2)]).unwrap();
        let values = enumerate_measures(&single);
        assert_eq!(values.h_class, None);
        assert_eq!(values.li_edge, None);
        assert_eq!(values.h_adj, Some(1.0));
        assert!(max_diff(&single).unwrap() < 1e-12);
    }

    #[test]
    fn diff_detects_planted_fault() {
        // A fast-path report with one corrupted field must show up.
        let g = clique_star(3).unwrap();
        let mut fast = fast_path_measures(&g);
        fast.h_edge = fast.h_edge.map(|v| v / 2.0);
        let slow = enumerate_measures(&g);
        let delta = (slow.h_edge.unwrap() - fast.h_edge.unwrap()).abs();
        assert!(delta > 1e-12);
    }
}
