//! Node-labeled multigraphs and the class-level summaries measures consume.
//!
//! [`LabeledGraph`] is an undirected multigraph with a dense class index per
//! node. Self-loops are rejected at construction; parallel edges are allowed
//! because the configuration model produces them, and every measure counts
//! edge endpoints with multiplicity.
//!
//! [`ClassAdjacencyMatrix`] holds the symmetric C×C ordered-pair counts: each
//! undirected edge {u,v} contributes both (u,v) and (v,u), so the matrix total
//! is 2|E|. Every edge-wise measure is a function of this matrix alone.

use serde::Serialize;
use thiserror::Error;

/// Errors from graph construction and the distribution builders.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at node {0} is not allowed")]
    SelfLoop(usize),
    #[error("edge endpoint {node} out of range (n = {num_nodes})")]
    NodeOutOfRange { node: usize, num_nodes: usize },
    #[error("label {label} of node {node} out of range (C = {num_classes})")]
    LabelOutOfRange {
        node: usize,
        label: usize,
        num_classes: usize,
    },
    #[error("expected {num_nodes} labels, got {got}")]
    LabelCountMismatch { num_nodes: usize, got: usize },
    #[error("a graph needs at least one class")]
    NoClasses,
    #[error("operation undefined on an empty graph")]
    EmptyGraph,
    #[error("operation undefined on a graph without edges")]
    NoEdges,
    #[error("class adjacency counts must be symmetric (c[{i}][{j}] != c[{j}][{i}])")]
    AsymmetricCounts { i: usize, j: usize },
    #[error("class adjacency counts must be square")]
    NotSquare,
}

/// Undirected multigraph with one class label per node.
///
/// Edges are stored as unordered pairs normalized to `(min, max)`; repeated
/// pairs carry multiplicity. `num_edges` counts edges with multiplicity.
/// Equality compares the edge multiset, not the storage order.
#[derive(Debug, Clone, Serialize)]
pub struct LabeledGraph {
    num_nodes: usize,
    num_classes: usize,
    labels: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.num_nodes != other.num_nodes
            || self.num_classes != other.num_classes
            || self.labels != other.labels
            || self.edges.len() != other.edges.len()
        {
            return false;
        }
        let mut left = self.edges.clone();
        let mut right = other.edges.clone();
        left.sort_unstable();
        right.sort_unstable();
        left == right
    }
}

impl Eq for LabeledGraph {}

impl LabeledGraph {
    /// Builds a graph, validating every invariant.
    ///
    /// Each edge is normalized to `(min, max)`; self-loops are rejected.
    pub fn new(
        num_nodes: usize,
        num_classes: usize,
        labels: Vec<usize>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        if num_classes == 0 {
            return Err(GraphError::NoClasses);
        }
        if labels.len() != num_nodes {
            return Err(GraphError::LabelCountMismatch {
                num_nodes,
                got: labels.len(),
            });
        }
        for (node, &label) in labels.iter().enumerate() {
            if label >= num_classes {
                return Err(GraphError::LabelOutOfRange {
                    node,
                    label,
                    num_classes,
                });
            }
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let high = u.max(v);
            if high >= num_nodes {
                return Err(GraphError::NodeOutOfRange {
                    node: high,
                    num_nodes,
                });
            }
            normalized.push((u.min(v), high));
        }
        Ok(Self {
            num_nodes,
            num_classes,
            labels,
            edges: normalized,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// Edge count with multiplicity.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> usize {
        self.labels[node]
    }

    /// Unordered edges, normalized to `(min, max)`, with multiplicity.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Per-node degrees; parallel edges count once per copy.
    pub fn degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0usize; self.num_nodes];
        for &(u, v) in &self.edges {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        degrees
    }

    /// Per-class node counts n_k.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_classes];
        for &label in &self.labels {
            sizes[label] += 1;
        }
        sizes
    }

    /// Adjacency lists with multiplicity. Built on demand; nothing is cached.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_nodes];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Number of degree-zero nodes.
    pub fn isolated_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 0).count()
    }

    /// Same graph with one extra (unused) class appended.
    pub fn with_extra_class(&self) -> Self {
        Self {
            num_nodes: self.num_nodes,
            num_classes: self.num_classes + 1,
            labels: self.labels.clone(),
            edges: self.edges.clone(),
        }
    }

    /// Same graph with classes renamed through `perm` (class k becomes `perm[k]`).
    pub fn relabel_classes(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let labels = self.labels.iter().map(|&l| perm[l]).collect();
        Self::new(self.num_nodes, self.num_classes, labels, self.edges.clone())
    }
}

/// Per-node degrees together with per-class degree sums D_k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    degrees: Vec<usize>,
    class_degree_sums: Vec<usize>,
}

impl DegreeProfile {
    pub fn of(graph: &LabeledGraph) -> Self {
        let degrees = graph.degrees();
        let mut class_degree_sums = vec![0usize; graph.num_classes()];
        for (node, &degree) in degrees.iter().enumerate() {
            class_degree_sums[graph.label(node)] += degree;
        }
        Self {
            degrees,
            class_degree_sums,
        }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// D_k, the summed degree of class k. Sums to 2|E| across classes.
    pub fn class_degree_sums(&self) -> &[usize] {
        &self.class_degree_sums
    }
}

/// Probability vector over classes. Both p (node-weighted) and p̄
/// (degree-weighted) live here.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassDistribution {
    probs: Vec<f64>,
}

impl ClassDistribution {
    /// Validates non-negativity and normalization (sum within 1e-12 of 1).
    pub fn new(probs: Vec<f64>) -> Result<Self, GraphError> {
        if probs.is_empty() {
            return Err(GraphError::NoClasses);
        }
        debug_assert!(probs.iter().all(|&p| p >= 0.0));
        debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// p(k) = n_k / n, the label distribution over all nodes.
///
/// Isolated nodes count here even though they carry no edge endpoints.
pub fn label_distribution(graph: &LabeledGraph) -> Result<ClassDistribution, GraphError> {
    if graph.num_nodes() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let n = graph.num_nodes() as f64;
    let probs = graph
        .class_sizes()
        .iter()
        .map(|&size| size as f64 / n)
        .collect();
    ClassDistribution::new(probs)
}

/// p̄(k) = D_k / 2|E|, the probability that a uniform edge endpoint has class k.
pub fn degree_weighted_distribution(graph: &LabeledGraph) -> Result<ClassDistribution, GraphError> {
    if graph.num_edges() == 0 {
        return Err(GraphError::NoEdges);
    }
    let total = 2.0 * graph.num_edges() as f64;
    let profile = DegreeProfile::of(graph);
    let probs = profile
        .class_degree_sums()
        .iter()
        .map(|&d| d as f64 / total)
        .collect();
    ClassDistribution::new(probs)
}

/// Symmetric C×C ordered-pair edge counts: `count(i, j)` is the number of
/// ordered pairs (u, v) ranging over edge endpoints with y_u = i, y_v = j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassAdjacencyMatrix {
    num_classes: usize,
    counts: Vec<u64>,
}

impl ClassAdjacencyMatrix {
    /// Counts ordered endpoint pairs of `graph`, with edge multiplicity.
    pub fn from_graph(graph: &LabeledGraph) -> Self {
        let c = graph.num_classes();
        let mut counts = vec![0u64; c * c];
        for &(u, v) in graph.edges() {
            let (i, j) = (graph.label(u), graph.label(v));
            counts[i * c + j] += 1;
            counts[j * c + i] += 1;
        }
        Self {
            num_classes: c,
            counts,
        }
    }

    /// Direct construction from explicit counts; rejects asymmetric or ragged input.
    pub fn from_counts(counts: &[Vec<u64>]) -> Result<Self, GraphError> {
        let c = counts.len();
        if c == 0 {
            return Err(GraphError::NoClasses);
        }
        if counts.iter().any(|row| row.len() != c) {
            return Err(GraphError::NotSquare);
        }
        for i in 0..c {
            for j in (i + 1)..c {
                if counts[i][j] != counts[j][i] {
                    return Err(GraphError::AsymmetricCounts { i, j });
                }
            }
        }
        Ok(Self {
            num_classes: c,
            counts: counts.iter().flatten().copied().collect(),
        })
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.num_classes + j]
    }

    /// Row sum a_i. Equals D_i when the matrix came from a graph.
    pub fn row_sum(&self, i: usize) -> u64 {
        let c = self.num_classes;
        self.counts[i * c..(i + 1) * c].iter().sum()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.num_classes).map(|i| self.row_sum(i)).collect()
    }

    /// Total N = Σ c_ij. Equals 2|E| when built from a graph.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Σ_k c_kk, the ordered intra-class pair count.
    pub fn diagonal_sum(&self) -> u64 {
        (0..self.num_classes).map(|k| self.count(k, k)).sum()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.num_classes)
            .map(|i| self.counts[i * self.num_classes..(i + 1) * self.num_classes].to_vec())
            .collect()
    }

    /// All off-diagonal entries are zero (every edge intra-class).
    pub fn is_perfectly_homophilous(&self) -> bool {
        self.total() > 0 && self.diagonal_sum() == self.total()
    }

    /// All diagonal entries are zero (every edge inter-class).
    pub fn is_perfectly_heterophilous(&self) -> bool {
        self.total() > 0 && self.diagonal_sum() == 0
    }

    /// Same counts with one extra empty class appended.
    pub fn with_extra_class(&self) -> Self {
        let c = self.num_classes;
        let mut counts = vec![0u64; (c + 1) * (c + 1)];
        for i in 0..c {
            counts[i * (c + 1)..i * (c + 1) + c].copy_from_slice(&self.counts[i * c..(i + 1) * c]);
        }
        Self {
            num_classes: c + 1,
            counts,
        }
    }

    /// Copy with c_kk incremented by 2 (one new intra-class edge).
    pub fn incremented_diagonal(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.counts[k * self.num_classes + k] += 2;
        out
    }

    /// Copy with c_ij and c_ji incremented by 1 (one new inter-class edge).
    pub fn incremented_off_diagonal(&self, i: usize, j: usize) -> Self {
        assert_ne!(i, j);
        let mut out = self.clone();
        out.counts[i * self.num_classes + j] += 1;
        out.counts[j * self.num_classes + i] += 1;
        out
    }

    /// Copy with rows and columns renamed through `perm`.
    pub fn relabel_classes(&self, perm: &[usize]) -> Self {
        let c = self.num_classes;
        let mut counts = vec![0u64; c * c];
        for i in 0..c {
            for j in 0..c {
                counts[perm[i] * c + perm[j]] = self.counts[i * c + j];
            }
        }
        Self {
            num_classes: c,
            counts,
        }
    }

    /// Joint distribution p(c1, c2) = c_{c1 c2} / N of an ordered endpoint pair
    /// of a uniformly sampled edge. Marginals equal p̄.
    pub fn joint_distribution(&self) -> Result<Vec<Vec<f64>>, GraphError> {
        let total = self.total();
        if total == 0 {
            return Err(GraphError::NoEdges);
        }
        let n = total as f64;
        Ok(self
            .rows()
            .iter()
            .map(|row| row.iter().map(|&c| c as f64 / n).collect())
            .collect())
    }
}

/// Joint edge-label distribution of `graph`; see
/// [`ClassAdjacencyMatrix::joint_distribution`].
pub fn joint_edge_distribution(graph: &LabeledGraph) -> Result<Vec<Vec<f64>>, GraphError> {
    ClassAdjacencyMatrix::from_graph(graph).joint_distribution()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_one_class() -> LabeledGraph {
        LabeledGraph::new(3, 1, vec![0, 0, 0], vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn star_k13() -> LabeledGraph {
        LabeledGraph::new(4, 2, vec![0, 1, 1, 1], vec![(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn rejects_self_loop() {
        let err = LabeledGraph::new(2, 1, vec![0, 0], vec![(1, 1)]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop(1));
    }

    #[test]
    fn rejects_bad_label() {
        let err = LabeledGraph::new(2, 1, vec![0, 1], vec![]).unwrap_err();
        assert!(matches!(err, GraphError::LabelOutOfRange { .. }));
    }

    #[test]
    fn rejects_out_of_range_edge() {
        let err = LabeledGraph::new(2, 1, vec![0, 0], vec![(0, 5)]).unwrap_err();
        assert!(matches!(err, GraphError::NodeOutOfRange { .. }));
    }

    #[test]
    fn multi_edges_count_with_multiplicity() {
        let g = LabeledGraph::new(2, 1, vec![0, 0], vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.degrees(), vec![2, 2]);
        let m = ClassAdjacencyMatrix::from_graph(&g);
        assert_eq!(m.count(0, 0), 4);
    }

    #[test]
    fn class_adjacency_triangle() {
        let m = ClassAdjacencyMatrix::from_graph(&triangle_one_class());
        assert_eq!(m.rows(), vec![vec![6]]);
        assert_eq!(m.total(), 6);
    }

    #[test]
    fn class_adjacency_star() {
        let m = ClassAdjacencyMatrix::from_graph(&star_k13());
        assert_eq!(m.rows(), vec![vec![0, 3], vec![3, 0]]);
        assert_eq!(m.row_sums(), vec![3, 3]);
    }

    #[test]
    fn totals_match_edge_count() {
        let g = star_k13();
        let m = ClassAdjacencyMatrix::from_graph(&g);
        assert_eq!(m.total(), 2 * g.num_edges() as u64);
        let d = DegreeProfile::of(&g);
        assert_eq!(d.degrees().iter().sum::<usize>(), 2 * g.num_edges());
        for (k, &dk) in d.class_degree_sums().iter().enumerate() {
            assert_eq!(m.row_sum(k), dk as u64);
        }
    }

    #[test]
    fn label_distribution_half_half() {
        let g = LabeledGraph::new(4, 2, vec![0, 0, 1, 1], vec![]).unwrap();
        assert_eq!(label_distribution(&g).unwrap().probs(), &[0.5, 0.5]);
    }

    #[test]
    fn label_distribution_single_class() {
        let g = triangle_one_class();
        assert_eq!(label_distribution(&g).unwrap().probs(), &[1.0]);
    }

    #[test]
    fn label_distribution_empty_graph_errors() {
        let g = LabeledGraph::new(0, 1, vec![], vec![]).unwrap();
        assert_eq!(label_distribution(&g).unwrap_err(), GraphError::EmptyGraph);
    }

    #[test]
    fn degree_weighted_star() {
        let p = degree_weighted_distribution(&star_k13()).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn degree_weighted_equals_label_distribution_on_regular_graph() {
        // 4-cycle, balanced classes, all degrees 2.
        let g = LabeledGraph::new(4, 2, vec![0, 0, 1, 1], vec![(0, 1), (1, 2), (2, 3), (3, 0)])
            .unwrap();
        let p = label_distribution(&g).unwrap();
        let pbar = degree_weighted_distribution(&g).unwrap();
        for (a, b) in p.probs().iter().zip(pbar.probs()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn degree_weighted_edgeless_errors() {
        let g = LabeledGraph::new(3, 2, vec![0, 1, 0], vec![]).unwrap();
        assert_eq!(
            degree_weighted_distribution(&g).unwrap_err(),
            GraphError::NoEdges
        );
    }

    #[test]
    fn joint_distribution_star() {
        let joint = joint_edge_distribution(&star_k13()).unwrap();
        assert_eq!(joint, vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
    }

    #[test]
    fn joint_marginals_equal_degree_weighted() {
        let g = LabeledGraph::new(
            5,
            3,
            vec![0, 1, 2, 0, 1],
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)],
        )
        .unwrap();
        let joint = joint_edge_distribution(&g).unwrap();
        let pbar = degree_weighted_distribution(&g).unwrap();
        for (row, &expected) in joint.iter().zip(pbar.probs()) {
            let sum: f64 = row.iter().sum();
            assert!((sum - expected).abs() < 1e-12);
        }
        let total: f64 = joint.iter().flatten().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn from_counts_rejects_asymmetric() {
        let err = ClassAdjacencyMatrix::from_counts(&[vec![0, 1], vec![2, 0]]).unwrap_err();
        assert_eq!(err, GraphError::AsymmetricCounts { i: 0, j: 1 });
    }

    #[test]
    fn relabel_permutes_rows_and_columns() {
        let m = ClassAdjacencyMatrix::from_graph(&star_k13());
        let swapped = m.relabel_classes(&[1, 0]);
        assert_eq!(swapped.rows(), vec![vec![0, 3], vec![3, 0]]);
        let g = LabeledGraph::new(3, 2, vec![0, 0, 1], vec![(0, 1), (1, 2)]).unwrap();
        let m = ClassAdjacencyMatrix::from_graph(&g);
        let swapped = m.relabel_classes(&[1, 0]);
        assert_eq!(swapped.count(1, 1), m.count(0, 0));
        assert_eq!(swapped.count(0, 1), m.count(1, 0));
    }

    #[test]
    fn extra_class_pads_with_zeros() {
        let m = ClassAdjacencyMatrix::from_graph(&star_k13()).with_extra_class();
        assert_eq!(m.num_classes(), 3);
        assert_eq!(m.row_sums(), vec![3, 3, 0]);
        assert_eq!(m.total(), 6);
    }
}
