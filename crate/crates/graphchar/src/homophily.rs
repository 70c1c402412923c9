//! Homophily measures.
//!
//! Edge-wise measures (`edge`, `adjusted`, `modularity`, `balanced`,
//! `balanced_adjusted`) are functions of the [`ClassAdjacencyMatrix`] alone;
//! node and class homophily need the graph. All of them count edge endpoints
//! with multiplicity and are invariant under class relabeling.
//!
//! Conventions for degenerate inputs:
//! - classes with zero degree are skipped in per-class sums but still counted
//!   in the 1/C and 1/(C-1) normalizers, which is exactly why the balanced
//!   and class measures are not tolerant to empty classes;
//! - isolated nodes are excluded from the node-homophily average (their
//!   neighbor fraction is 0/0) but still count toward class sizes;
//! - adjusted homophily on a matrix where a single class carries every
//!   endpoint reports 1.0 (all edges are necessarily intra-class there);
//!   callers can detect the case with [`adjusted_homophily_is_degenerate`].

use serde::{Deserialize, Serialize};

use crate::graph::{ClassAdjacencyMatrix, DegreeProfile, LabeledGraph};
use crate::MeasureError;

/// h_edge: fraction of edges joining same-class endpoints, Σ_k c_kk / N.
pub fn edge_homophily(matrix: &ClassAdjacencyMatrix) -> Result<f64, MeasureError> {
    let total = matrix.total();
    if total == 0 {
        return Err(MeasureError::NoEdges);
    }
    Ok(matrix.diagonal_sum() as f64 / total as f64)
}

/// True when a single class carries every edge endpoint, which makes the
/// adjusted-homophily denominator vanish.
pub fn adjusted_homophily_is_degenerate(matrix: &ClassAdjacencyMatrix) -> bool {
    let total = matrix.total();
    total > 0 && matrix.row_sums().contains(&total)
}

/// h_adj = (h_edge - Σ p̄(k)²) / (1 - Σ p̄(k)²), the assortativity coefficient
/// for categorical labels.
///
/// Evaluated as an exact integer ratio (N·Σc_kk - Σa_k²) / (N² - Σa_k²).
/// In the degenerate single-carrying-class case every edge is intra-class and
/// the value is 1 by convention.
pub fn adjusted_homophily(matrix: &ClassAdjacencyMatrix) -> Result<f64, MeasureError> {
    let total = matrix.total();
    if total == 0 {
        return Err(MeasureError::NoEdges);
    }
    if adjusted_homophily_is_degenerate(matrix) {
        return Ok(1.0);
    }
    let n = total as i128;
    let diag = matrix.diagonal_sum() as i128;
    let sq: i128 = matrix
        .row_sums()
        .iter()
        .map(|&a| (a as i128) * (a as i128))
        .sum();
    let num = n * diag - sq;
    let den = n * n - sq;
    Ok(num as f64 / den as f64)
}

/// h_mod = h_edge - Σ_k p̄(k)², the (unnormalized) numerator of h_adj.
pub fn modularity(matrix: &ClassAdjacencyMatrix) -> Result<f64, MeasureError> {
    let total = matrix.total();
    if total == 0 {
        return Err(MeasureError::NoEdges);
    }
    let n = total as i128;
    let diag = matrix.diagonal_sum() as i128;
    let sq: i128 = matrix
        .row_sums()
        .iter()
        .map(|&a| (a as i128) * (a as i128))
        .sum();
    Ok((n * diag - sq) as f64 / (n * n) as f64)
}

/// h_bal = (1/C) Σ_k c_kk / a_k, averaging the per-class intra fraction.
/// Zero-degree classes are skipped in the sum but kept in C.
pub fn balanced_homophily(matrix: &ClassAdjacencyMatrix) -> Result<f64, MeasureError> {
    if matrix.total() == 0 {
        return Err(MeasureError::NoEdges);
    }
    let sum: f64 = (0..matrix.num_classes())
        .filter(|&k| matrix.row_sum(k) > 0)
        .map(|k| matrix.count(k, k) as f64 / matrix.row_sum(k) as f64)
        .sum();
    Ok(sum / matrix.num_classes() as f64)
}

/// h_bal_adj = (Σ_k c_kk / a_k - 1) / (C - 1) = (C·h_bal - 1) / (C - 1),
/// balanced homophily adjusted for chance.
pub fn balanced_adjusted_homophily(matrix: &ClassAdjacencyMatrix) -> Result<f64, MeasureError> {
    if matrix.num_classes() < 2 {
        return Err(MeasureError::SingleClass);
    }
    if matrix.total() == 0 {
        return Err(MeasureError::NoEdges);
    }
    let sum: f64 = (0..matrix.num_classes())
        .filter(|&k| matrix.row_sum(k) > 0)
        .map(|k| matrix.count(k, k) as f64 / matrix.row_sum(k) as f64)
        .sum();
    Ok((sum - 1.0) / (matrix.num_classes() - 1) as f64)
}

/// h_node: fraction of same-class neighbors per node, averaged over
/// non-isolated nodes.
pub fn node_homophily(graph: &LabeledGraph) -> Result<f64, MeasureError> {
    if graph.num_edges() == 0 {
        return Err(MeasureError::NoNonIsolatedNodes);
    }
    let adjacency = graph.adjacency();
    let mut sum = 0.0;
    let mut counted = 0usize;
    for (node, neighbors) in adjacency.iter().enumerate() {
        if neighbors.is_empty() {
            continue;
        }
        let same = neighbors
            .iter()
            .filter(|&&u| graph.label(u) == graph.label(node))
            .count();
        sum += same as f64 / neighbors.len() as f64;
        counted += 1;
    }
    Ok(sum / counted as f64)
}

/// h_class = (1/(C-1)) Σ_k [c_kk / D_k - n_k / n]_+, the clipped per-class
/// excess of the intra-class edge fraction over the class share.
pub fn class_homophily(graph: &LabeledGraph) -> Result<f64, MeasureError> {
    if graph.num_classes() < 2 {
        return Err(MeasureError::SingleClass);
    }
    if graph.num_edges() == 0 {
        return Err(MeasureError::NoEdges);
    }
    let matrix = ClassAdjacencyMatrix::from_graph(graph);
    let profile = DegreeProfile::of(graph);
    let sizes = graph.class_sizes();
    let n = graph.num_nodes() as f64;
    let mut sum = 0.0;
    for k in 0..graph.num_classes() {
        let dk = profile.class_degree_sums()[k];
        if dk == 0 {
            continue;
        }
        let excess = matrix.count(k, k) as f64 / dk as f64 - sizes[k] as f64 / n;
        sum += excess.max(0.0);
    }
    Ok(sum / (graph.num_classes() - 1) as f64)
}

/// Every homophily measure of one graph. Fields are `None` where the measure
/// is undefined; `flags` explains each gap or degeneracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomophilyProfile {
    pub h_edge: Option<f64>,
    pub h_node: Option<f64>,
    pub h_class: Option<f64>,
    pub h_adj: Option<f64>,
    pub h_mod: Option<f64>,
    pub h_bal: Option<f64>,
    pub h_bal_adj: Option<f64>,
    pub flags: Vec<String>,
}

impl HomophilyProfile {
    /// Ordered (name, value) pairs for table output.
    pub fn entries(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("h_edge", self.h_edge),
            ("h_node", self.h_node),
            ("h_class", self.h_class),
            ("h_adj", self.h_adj),
            ("h_mod", self.h_mod),
            ("h_bal", self.h_bal),
            ("h_bal_adj", self.h_bal_adj),
        ]
    }
}

/// Computes all seven measures from one pass over the graph. Component errors
/// become `None` fields plus a flag, never a hard failure.
pub fn profile(graph: &LabeledGraph) -> HomophilyProfile {
    let matrix = ClassAdjacencyMatrix::from_graph(graph);
    let mut flags = Vec::new();
    let mut record = |name: &str, result: Result<f64, MeasureError>| match result {
        Ok(value) => Some(value),
        Err(err) => {
            flags.push(format!("{name} undefined: {err}"));
            None
        }
    };
    let h_edge = record("h_edge", edge_homophily(&matrix));
    let h_node = record("h_node", node_homophily(graph));
    let h_class = record("h_class", class_homophily(graph));
    let h_adj = record("h_adj", adjusted_homophily(&matrix));
    let h_mod = record("h_mod", modularity(&matrix));
    let h_bal = record("h_bal", balanced_homophily(&matrix));
    let h_bal_adj = record("h_bal_adj", balanced_adjusted_homophily(&matrix));
    if adjusted_homophily_is_degenerate(&matrix) {
        flags.push(
            "h_adj degenerate: a single class carries every edge; value 1 by convention"
                .to_string(),
        );
    }
    let isolated = graph.isolated_count();
    if isolated > 0 {
        flags.push(format!(
            "{isolated} isolated node(s) excluded from h_node average"
        ));
    }
    HomophilyProfile {
        h_edge,
        h_node,
        h_class,
        h_adj,
        h_mod,
        h_bal,
        h_bal_adj,
        flags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::clique_star;
    use crate::graph::LabeledGraph;

    fn star_k13() -> ClassAdjacencyMatrix {
        let g = LabeledGraph::new(4, 2, vec![0, 1, 1, 1], vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        ClassAdjacencyMatrix::from_graph(&g)
    }

    fn two_cliques() -> LabeledGraph {
        // Two disjoint triangles, one class each: perfectly homophilous.
        LabeledGraph::new(
            6,
            2,
            vec![0, 0, 0, 1, 1, 1],
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap()
    }

    #[test]
    fn edge_homophily_extremes() {
        let perfect = ClassAdjacencyMatrix::from_graph(&two_cliques());
        assert_eq!(edge_homophily(&perfect).unwrap(), 1.0);
        assert_eq!(edge_homophily(&star_k13()).unwrap(), 0.0);
    }

    #[test]
    fn edge_homophily_clique_star() {
        let m = ClassAdjacencyMatrix::from_graph(&clique_star(4).unwrap());
        assert!((edge_homophily(&m).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn edge_homophily_empty_matrix_errors() {
        let m = ClassAdjacencyMatrix::from_counts(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(matches!(edge_homophily(&m), Err(MeasureError::NoEdges)));
    }

    #[test]
    fn adjusted_homophily_counterexample_matrix() {
        // Nonzero entries c_23 = c_32 = 2, c_33 = 2: value -M/(M+2) at M = 2.
        let m = ClassAdjacencyMatrix::from_counts(&[
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 2],
            vec![0, 0, 2, 2],
        ])
        .unwrap();
        assert!((adjusted_homophily(&m).unwrap() + 0.5).abs() < 1e-15);
        let bumped = m.incremented_off_diagonal(0, 1);
        assert!((adjusted_homophily(&bumped).unwrap() + 1.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn adjusted_homophily_clique_star() {
        let m = ClassAdjacencyMatrix::from_graph(&clique_star(4).unwrap());
        assert_eq!(adjusted_homophily(&m).unwrap(), -0.5);
    }

    #[test]
    fn adjusted_homophily_degenerate_single_class() {
        let m = ClassAdjacencyMatrix::from_counts(&[vec![6]]).unwrap();
        assert!(adjusted_homophily_is_degenerate(&m));
        assert_eq!(adjusted_homophily(&m).unwrap(), 1.0);
        // Still degenerate with a padding empty class.
        let padded = m.with_extra_class();
        assert_eq!(adjusted_homophily(&padded).unwrap(), 1.0);
    }

    #[test]
    fn modularity_values() {
        let m = ClassAdjacencyMatrix::from_graph(&clique_star(4).unwrap());
        assert!((modularity(&m).unwrap() + 2.0 / 9.0).abs() < 1e-15);
        let single = ClassAdjacencyMatrix::from_counts(&[vec![6]]).unwrap();
        assert_eq!(modularity(&single).unwrap(), 0.0);
    }

    #[test]
    fn balanced_homophily_values() {
        let perfect = ClassAdjacencyMatrix::from_graph(&two_cliques());
        assert_eq!(balanced_homophily(&perfect).unwrap(), 1.0);
        assert_eq!(balanced_homophily(&star_k13()).unwrap(), 0.0);
        let m = ClassAdjacencyMatrix::from_graph(&clique_star(4).unwrap());
        assert_eq!(balanced_homophily(&m).unwrap(), 0.25);
    }

    #[test]
    fn balanced_adjusted_values() {
        let m = ClassAdjacencyMatrix::from_graph(&clique_star(4).unwrap());
        assert_eq!(balanced_adjusted_homophily(&m).unwrap(), -0.5);
        let perfect = ClassAdjacencyMatrix::from_graph(&two_cliques());
        assert_eq!(balanced_adjusted_homophily(&perfect).unwrap(), 1.0);
        let single = ClassAdjacencyMatrix::from_counts(&[vec![6]]).unwrap();
        assert!(matches!(
            balanced_adjusted_homophily(&single),
            Err(MeasureError::SingleClass)
        ));
    }

    #[test]
    fn balanced_adjusted_equals_rescaled_balanced() {
        let m = ClassAdjacencyMatrix::from_graph(&clique_star(4).unwrap());
        let c = m.num_classes() as f64;
        let expected = (c * balanced_homophily(&m).unwrap() - 1.0) / (c - 1.0);
        assert!((balanced_adjusted_homophily(&m).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn node_homophily_values() {
        assert_eq!(node_homophily(&two_cliques()).unwrap(), 1.0);
        let triangle =
            LabeledGraph::new(3, 2, vec![0, 0, 1], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!((node_homophily(&triangle).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(node_homophily(&clique_star(4).unwrap()).unwrap(), 0.125);
    }

    #[test]
    fn node_homophily_skips_isolated_nodes() {
        // Same triangle plus an isolated node: average unchanged.
        let g = LabeledGraph::new(4, 2, vec![0, 0, 1, 1], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!((node_homophily(&g).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let edgeless = LabeledGraph::new(3, 2, vec![0, 1, 0], vec![]).unwrap();
        assert!(matches!(
            node_homophily(&edgeless),
            Err(MeasureError::NoNonIsolatedNodes)
        ));
    }

    #[test]
    fn class_homophily_values() {
        assert_eq!(class_homophily(&clique_star(4).unwrap()).unwrap(), 0.25);
        assert_eq!(class_homophily(&two_cliques()).unwrap(), 1.0);
        let star = LabeledGraph::new(4, 2, vec![0, 1, 1, 1], vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(class_homophily(&star).unwrap(), 0.0);
    }

    #[test]
    fn class_homophily_single_class_errors() {
        let g = LabeledGraph::new(3, 1, vec![0, 0, 0], vec![(0, 1)]).unwrap();
        assert!(matches!(
            class_homophily(&g),
            Err(MeasureError::SingleClass)
        ));
    }

    #[test]
    fn imbalanced_binary_graph_can_fool_edge_homophily() {
        // Majority class mostly intra-wired: h_edge says homophilous, the
        // null-corrected measure says the opposite.
        let m = ClassAdjacencyMatrix::from_counts(&[vec![130, 30], vec![30, 0]]).unwrap();
        let h_edge = edge_homophily(&m).unwrap();
        let h_adj = adjusted_homophily(&m).unwrap();
        assert!(h_edge > 0.5, "h_edge {h_edge}");
        assert!(h_adj < 0.0, "h_adj {h_adj}");
    }

    #[test]
    fn tolerant_measures_are_bit_identical_under_empty_class() {
        let m = ClassAdjacencyMatrix::from_graph(&clique_star(4).unwrap());
        let padded = m.with_extra_class();
        for f in [edge_homophily, adjusted_homophily, modularity] {
            assert_eq!(f(&m).unwrap().to_bits(), f(&padded).unwrap().to_bits());
        }
        // The balanced family is not tolerant.
        assert_ne!(
            balanced_homophily(&m).unwrap(),
            balanced_homophily(&padded).unwrap()
        );
        assert_ne!(
            balanced_adjusted_homophily(&m).unwrap(),
            balanced_adjusted_homophily(&padded).unwrap()
        );
    }

    #[test]
    fn profile_clique_star() {
        let p = profile(&clique_star(4).unwrap());
        assert!((p.h_edge.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(p.h_node.unwrap(), 0.125);
        assert_eq!(p.h_class.unwrap(), 0.25);
        assert_eq!(p.h_adj.unwrap(), -0.5);
        assert!((p.h_mod.unwrap() + 2.0 / 9.0).abs() < 1e-15);
        assert_eq!(p.h_bal.unwrap(), 0.25);
        assert_eq!(p.h_bal_adj.unwrap(), -0.5);
        assert!(p.flags.is_empty());
    }

    #[test]
    fn profile_flags_instead_of_failing() {
        let edgeless = LabeledGraph::new(3, 2, vec![0, 1, 0], vec![]).unwrap();
        let p = profile(&edgeless);
        assert!(p.h_edge.is_none());
        assert!(p.h_adj.is_none());
        assert!(!p.flags.is_empty());
    }
}
