//! The built-in instance suite the property checks run against.
//!
//! Composition is fixed so verdicts are reproducible: perfect graphs across
//! C ∈ {1, 2, 5, 10} (every class edge-carrying), perfectly heterophilous
//! bipartite, path, cycle, and pairing patterns with differing class
//! structure, the clique-star family, a few seeded random matrices, and edge
//! cases with isolated nodes and multi-edges. Perfect-homophily and
//! perfect-heterophily flags are computed from the data, never declared.

use crate::generators::clique_star;
use crate::graph::{ClassAdjacencyMatrix, LabeledGraph};
use crate::rng::seeded_rng;
use rand::Rng;

use super::{MeasureHandle, MeasureKind};

/// One suite member: either a graph or a bare class adjacency matrix.
#[derive(Debug, Clone)]
pub enum InstanceData {
    Graph(LabeledGraph),
    Matrix(ClassAdjacencyMatrix),
}

/// Named instance used by the property checks.
#[derive(Debug, Clone)]
pub struct SuiteInstance {
    pub name: String,
    pub data: InstanceData,
}

impl SuiteInstance {
    pub fn graph(name: &str, graph: LabeledGraph) -> Self {
        Self {
            name: name.to_string(),
            data: InstanceData::Graph(graph),
        }
    }

    pub fn matrix(name: &str, matrix: ClassAdjacencyMatrix) -> Self {
        Self {
            name: name.to_string(),
            data: InstanceData::Matrix(matrix),
        }
    }

    pub fn class_adjacency(&self) -> ClassAdjacencyMatrix {
        match &self.data {
            InstanceData::Graph(g) => ClassAdjacencyMatrix::from_graph(g),
            InstanceData::Matrix(m) => m.clone(),
        }
    }

    pub fn is_perfectly_homophilous(&self) -> bool {
        self.class_adjacency().is_perfectly_homophilous()
    }

    pub fn is_perfectly_heterophilous(&self) -> bool {
        self.class_adjacency().is_perfectly_heterophilous()
    }

    /// Evaluates `handle` on this instance; `None` when a graph-wise measure
    /// meets a matrix-only instance.
    pub fn evaluate(&self, handle: &MeasureHandle) -> Option<Result<f64, crate::MeasureError>> {
        match (&self.data, handle.kind()) {
            (InstanceData::Graph(g), _) => Some(handle.eval_graph(g)),
            (InstanceData::Matrix(m), MeasureKind::EdgeWise) => handle.eval_matrix(m),
            (InstanceData::Matrix(_), MeasureKind::GraphWise) => None,
        }
    }

    /// Same instance with one extra (empty) class.
    pub fn with_extra_class(&self) -> Self {
        let data = match &self.data {
            InstanceData::Graph(g) => InstanceData::Graph(g.with_extra_class()),
            InstanceData::Matrix(m) => InstanceData::Matrix(m.with_extra_class()),
        };
        Self {
            name: format!("{}+empty-class", self.name),
            data,
        }
    }

    pub fn to_witness_instance(&self) -> super::WitnessInstance {
        match &self.data {
            InstanceData::Graph(g) => super::WitnessInstance::from_graph(g),
            InstanceData::Matrix(m) => super::WitnessInstance::from_matrix(m),
        }
    }
}

fn disjoint_cliques(sizes: &[usize]) -> LabeledGraph {
    let num_nodes: usize = sizes.iter().sum();
    let mut labels = Vec::with_capacity(num_nodes);
    let mut edges = Vec::new();
    let mut base = 0usize;
    for (class, &size) in sizes.iter().enumerate() {
        for i in 0..size {
            labels.push(class);
            for j in (i + 1)..size {
                edges.push((base + i, base + j));
            }
        }
        base += size;
    }
    LabeledGraph::new(num_nodes, sizes.len(), labels, edges).unwrap()
}

fn complete_bipartite(a: usize, b: usize) -> LabeledGraph {
    let mut edges = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    let mut labels = vec![0usize; a];
    labels.extend(vec![1usize; b]);
    LabeledGraph::new(a + b, 2, labels, edges).unwrap()
}

fn path_three_classes() -> LabeledGraph {
    LabeledGraph::new(3, 3, vec![0, 1, 2], vec![(0, 1), (1, 2)]).unwrap()
}

fn cycle_three_coloring() -> LabeledGraph {
    LabeledGraph::new(
        6,
        3,
        vec![0, 1, 2, 0, 1, 2],
        vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)],
    )
    .unwrap()
}

fn mixed_triangle() -> LabeledGraph {
    LabeledGraph::new(3, 2, vec![0, 0, 1], vec![(0, 1), (1, 2), (2, 0)]).unwrap()
}

fn isolated_node_extra_class() -> LabeledGraph {
    // Triangle over classes 0/1 plus an isolated node of class 2.
    LabeledGraph::new(4, 3, vec![0, 0, 1, 2], vec![(0, 1), (1, 2), (0, 2)]).unwrap()
}

fn multi_edge_mixed() -> LabeledGraph {
    LabeledGraph::new(3, 2, vec![0, 0, 1], vec![(0, 1), (0, 1), (1, 2)]).unwrap()
}

fn random_matrix_instance(num_classes: usize, seed: u64) -> ClassAdjacencyMatrix {
    let mut rng = seeded_rng(seed);
    loop {
        let mut counts = vec![vec![0u64; num_classes]; num_classes];
        for i in 0..num_classes {
            for j in i..num_classes {
                let value = if rng.random_bool(0.4) {
                    0
                } else {
                    rng.random_range(1..=12u64)
                };
                counts[i][j] = value;
                counts[j][i] = value;
            }
        }
        let matrix = ClassAdjacencyMatrix::from_counts(&counts).unwrap();
        if matrix.total() > 0 {
            return matrix;
        }
    }
}

/// The fixed suite; see the module docs for its composition.
pub fn builtin_suite() -> Vec<SuiteInstance> {
    let mut suite: Vec<SuiteInstance> = builtin_fixtures()
        .into_iter()
        .map(|(name, g)| SuiteInstance::graph(name, g))
        .collect();
    suite.push(SuiteInstance::matrix(
        "hetero-pairing-matrix",
        ClassAdjacencyMatrix::from_counts(&[
            vec![0, 5, 0, 0],
            vec![5, 0, 0, 0],
            vec![0, 0, 0, 3],
            vec![0, 0, 3, 0],
        ])
        .unwrap(),
    ));
    for (i, c) in [3usize, 4, 6].into_iter().enumerate() {
        suite.push(SuiteInstance::matrix(
            &format!("random-matrix-c{c}"),
            random_matrix_instance(c, 0x5EED_0000 + i as u64),
        ));
    }
    suite
}

/// Graph-shaped members of the suite, also used as oracle fixtures.
pub fn builtin_fixtures() -> Vec<(&'static str, LabeledGraph)> {
    vec![
        (
            "perfect-c1-triangle",
            LabeledGraph::new(3, 1, vec![0; 3], vec![(0, 1), (1, 2), (2, 0)]).unwrap(),
        ),
        ("perfect-c2-cliques", disjoint_cliques(&[3, 4])),
        ("perfect-c5-cliques", disjoint_cliques(&[3, 3, 4, 5, 6])),
        ("perfect-c10-edges", disjoint_cliques(&[2; 10])),
        ("hetero-star-k15", complete_bipartite(1, 5)),
        ("hetero-bipartite-k23", complete_bipartite(2, 3)),
        ("hetero-path3", path_three_classes()),
        ("hetero-cycle6", cycle_three_coloring()),
        ("clique-star-2", clique_star(2).unwrap()),
        ("clique-star-3", clique_star(3).unwrap()),
        ("clique-star-4", clique_star(4).unwrap()),
        ("clique-star-6", clique_star(6).unwrap()),
        ("mixed-triangle", mixed_triangle()),
        ("isolated-extra-class", isolated_node_extra_class()),
        ("multi-edge-mixed", multi_edge_mixed()),
    ]
}
