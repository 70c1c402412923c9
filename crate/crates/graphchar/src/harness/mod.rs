//! Empirical verification of measure properties.
//!
//! A [`MeasureHandle`] wraps any measure (built-in or user-registered)
//! together with its documented extremes and baseline constant. The checks in
//! [`checks`] and [`baseline`] probe one property each (maximal and minimal
//! agreement, empty-class tolerance, monotonicity under single-edge
//! increments, and the constant baseline under the configuration model) and
//! return a [`PropertyVerdict`]. Violated verdicts always carry a witness
//! that reproduces the violation standalone.
//!
//! The harness treats measures as black boxes; registering a deliberately
//! broken measure flips the corresponding verdicts (see the planted-fault
//! tests).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ClassAdjacencyMatrix, LabeledGraph};
use crate::homophily;
use crate::li;
use crate::MeasureError;

pub mod baseline;
pub mod checks;
pub mod suite;
pub mod table;

pub use baseline::{
    estimate_baseline, estimate_baseline_many, sample_measures, BaselineConfig, NullSetting,
};
pub use checks::{
    check_empty_class_tolerance, check_maximal_agreement, check_minimal_agreement,
    check_monotonicity, monotonicity_counterexample, witness_reproduces, MonotonicityConfig,
};
pub use suite::{builtin_fixtures, builtin_suite, InstanceData, SuiteInstance};
pub use table::{
    diff_against_expected, expected_statuses, property_table, PropertyTable, TableConfig,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HarnessError {
    #[error("suite has no perfectly homophilous instance where `{0}` is defined")]
    NoPerfectInstances(String),
    #[error("suite has no perfectly heterophilous instance where `{0}` is defined")]
    NoHeterophilousInstances(String),
    #[error("suite is empty")]
    EmptySuite,
    #[error("baseline estimation needs at least 30 trials (got {0})")]
    TooFewTrials(usize),
}

/// Whether a measure is a function of the class adjacency matrix alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureKind {
    EdgeWise,
    GraphWise,
}

type MatrixFn = Arc<dyn Fn(&ClassAdjacencyMatrix) -> Result<f64, MeasureError> + Send + Sync>;
type GraphFn = Arc<dyn Fn(&LabeledGraph) -> Result<f64, MeasureError> + Send + Sync>;
type ThresholdFn = Arc<dyn Fn(&ClassAdjacencyMatrix) -> bool + Send + Sync>;

/// A registered measure plus its documented constants.
#[derive(Clone)]
pub struct MeasureHandle {
    name: String,
    kind: MeasureKind,
    matrix_fn: Option<MatrixFn>,
    graph_fn: GraphFn,
    /// Documented maximum, attained exactly on perfectly homophilous inputs.
    pub max_value: f64,
    /// Documented minimum on perfectly heterophilous inputs, when constant.
    pub min_value: Option<f64>,
    /// Claimed constant-baseline value under the configuration model.
    pub baseline: Option<f64>,
    /// For measures that are monotone only above a data-dependent bound:
    /// returns true when the input lies strictly above it.
    monotonicity_threshold: Option<ThresholdFn>,
}

impl std::fmt::Debug for MeasureHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MeasureHandle")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("max_value", &self.max_value)
            .field("min_value", &self.min_value)
            .field("baseline", &self.baseline)
            .finish()
    }
}

impl MeasureHandle {
    /// Registers an edge-wise measure; graph inputs go through the class
    /// adjacency matrix.
    pub fn edge_wise(
        name: &str,
        f: impl Fn(&ClassAdjacencyMatrix) -> Result<f64, MeasureError> + Send + Sync + 'static,
        max_value: f64,
        min_value: Option<f64>,
        baseline: Option<f64>,
    ) -> Self {
        let matrix_fn: MatrixFn = Arc::new(f);
        let for_graph = Arc::clone(&matrix_fn);
        Self {
            name: name.to_string(),
            kind: MeasureKind::EdgeWise,
            matrix_fn: Some(matrix_fn),
            graph_fn: Arc::new(move |g| for_graph(&ClassAdjacencyMatrix::from_graph(g))),
            max_value,
            min_value,
            baseline,
            monotonicity_threshold: None,
        }
    }

    /// Registers a measure that needs the full graph.
    pub fn graph_wise(
        name: &str,
        f: impl Fn(&LabeledGraph) -> Result<f64, MeasureError> + Send + Sync + 'static,
        max_value: f64,
        min_value: Option<f64>,
        baseline: Option<f64>,
    ) -> Self {
        Self {
            name: name.to_string(),
            kind: MeasureKind::GraphWise,
            matrix_fn: None,
            graph_fn: Arc::new(f),
            max_value,
            min_value,
            baseline,
            monotonicity_threshold: None,
        }
    }

    fn with_threshold(
        mut self,
        threshold: impl Fn(&ClassAdjacencyMatrix) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.monotonicity_threshold = Some(Arc::new(threshold));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn is_edge_wise(&self) -> bool {
        self.kind == MeasureKind::EdgeWise
    }

    pub fn has_monotonicity_threshold(&self) -> bool {
        self.monotonicity_threshold.is_some()
    }

    pub fn eval_matrix(&self, matrix: &ClassAdjacencyMatrix) -> Option<Result<f64, MeasureError>> {
        self.matrix_fn.as_ref().map(|f| f(matrix))
    }

    pub fn eval_graph(&self, graph: &LabeledGraph) -> Result<f64, MeasureError> {
        (self.graph_fn)(graph)
    }

    /// True when `matrix` lies strictly above the measure's monotonicity
    /// bound. Always false for measures without one.
    pub fn above_monotonicity_threshold(&self, matrix: &ClassAdjacencyMatrix) -> bool {
        match &self.monotonicity_threshold {
            Some(f) => f(matrix),
            None => false,
        }
    }
}

/// Exact integer test for h_adj > Σp̄² / (Σp̄² + 1).
///
/// With N = Σc_ij, Q = Σ a_i², num = N·Σc_kk − Q and den = N² − Q, the bound
/// reads num/den > Q/(Q + N²), i.e. num·(Q + N²) > Q·den.
fn adjusted_above_threshold(matrix: &ClassAdjacencyMatrix) -> bool {
    let n = matrix.total() as i128;
    if n == 0 {
        return false;
    }
    let q: i128 = matrix
        .row_sums()
        .iter()
        .map(|&a| (a as i128) * (a as i128))
        .sum();
    let den = n * n - q;
    if den == 0 {
        // Degenerate single-carrying-class matrix: h_adj = 1 by convention.
        return true;
    }
    let num = n * matrix.diagonal_sum() as i128 - q;
    num * (q + n * n) > q * den
}

/// The seven homophily measures with their documented constants.
pub fn standard_measures() -> Vec<MeasureHandle> {
    vec![
        MeasureHandle::edge_wise(
            "h_edge",
            homophily::edge_homophily,
            1.0,
            Some(0.0),
            Some(0.0),
        ),
        MeasureHandle::graph_wise(
            "h_node",
            homophily::node_homophily,
            1.0,
            Some(0.0),
            Some(0.0),
        ),
        MeasureHandle::graph_wise(
            "h_class",
            homophily::class_homophily,
            1.0,
            Some(0.0),
            Some(0.0),
        ),
        MeasureHandle::edge_wise("h_adj", homophily::adjusted_homophily, 1.0, None, Some(0.0))
            .with_threshold(adjusted_above_threshold),
        // No constant is attained on perfect inputs; 1 is the supremum.
        MeasureHandle::edge_wise("h_mod", homophily::modularity, 1.0, None, Some(0.0)),
        MeasureHandle::edge_wise(
            "h_bal",
            homophily::balanced_homophily,
            1.0,
            Some(0.0),
            Some(0.0),
        ),
        MeasureHandle::edge_wise(
            "h_bal_adj",
            homophily::balanced_adjusted_homophily,
            1.0,
            None,
            Some(0.0),
        ),
    ]
}

/// Handle for edge-sampled label informativeness (baseline experiments).
pub fn li_edge_handle() -> MeasureHandle {
    MeasureHandle::edge_wise("li_edge", li::li_edge, 1.0, None, Some(0.0))
}

/// Handle for node-sampled label informativeness (baseline experiments).
pub fn li_node_handle() -> MeasureHandle {
    MeasureHandle::graph_wise("li_node", li::li_node, 1.0, None, Some(0.0))
}

/// Looks up handles by name among the seven standard measures plus both LI
/// variants.
pub fn handle_by_name(name: &str) -> Option<MeasureHandle> {
    standard_measures()
        .into_iter()
        .chain([li_edge_handle(), li_node_handle()])
        .find(|h| h.name() == name)
}

/// The five checked properties, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyName {
    MaxAgreement,
    MinAgreement,
    EmptyClassTolerance,
    Monotonicity,
    ConstantBaseline,
}

impl PropertyName {
    pub const ALL: [PropertyName; 5] = [
        PropertyName::MaxAgreement,
        PropertyName::MinAgreement,
        PropertyName::EmptyClassTolerance,
        PropertyName::Monotonicity,
        PropertyName::ConstantBaseline,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PropertyName::MaxAgreement => "max-agreement",
            PropertyName::MinAgreement => "min-agreement",
            PropertyName::EmptyClassTolerance => "empty-class-tolerance",
            PropertyName::Monotonicity => "monotonicity",
            PropertyName::ConstantBaseline => "constant-baseline",
        }
    }
}

/// Outcome of one property check. `Conditional` is used for measures that
/// provably hold above a data-dependent bound and provably fail below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Satisfied,
    Violated,
    Conditional,
    NotApplicable,
}

impl VerdictStatus {
    pub fn symbol(&self) -> &'static str {
        match self {
            VerdictStatus::Satisfied => "yes",
            VerdictStatus::Violated => "NO",
            VerdictStatus::Conditional => "cond",
            VerdictStatus::NotApplicable => "n/a",
        }
    }
}

/// A serializable instance that can be re-evaluated standalone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessInstance {
    Matrix {
        counts: Vec<Vec<u64>>,
    },
    Graph {
        num_nodes: usize,
        num_classes: usize,
        labels: Vec<usize>,
        edges: Vec<(usize, usize)>,
    },
}

impl WitnessInstance {
    pub fn from_matrix(matrix: &ClassAdjacencyMatrix) -> Self {
        WitnessInstance::Matrix {
            counts: matrix.rows(),
        }
    }

    pub fn from_graph(graph: &LabeledGraph) -> Self {
        WitnessInstance::Graph {
            num_nodes: graph.num_nodes(),
            num_classes: graph.num_classes(),
            labels: graph.labels().to_vec(),
            edges: graph.edges().to_vec(),
        }
    }

    /// Re-evaluates `handle` on this instance. `None` when the handle cannot
    /// consume it (graph-wise measure, matrix instance).
    pub fn evaluate(&self, handle: &MeasureHandle) -> Option<Result<f64, MeasureError>> {
        match self {
            WitnessInstance::Matrix { counts } => {
                let matrix = ClassAdjacencyMatrix::from_counts(counts).ok()?;
                handle.eval_matrix(&matrix)
            }
            WitnessInstance::Graph {
                num_nodes,
                num_classes,
                labels,
                edges,
            } => {
                let graph =
                    LabeledGraph::new(*num_nodes, *num_classes, labels.clone(), edges.clone())
                        .ok()?;
                Some(handle.eval_graph(&graph))
            }
        }
    }

    /// The instance after the structural edit named by `op`.
    pub fn apply(&self, op: WitnessOperation) -> Option<WitnessInstance> {
        match self {
            WitnessInstance::Matrix { counts } => {
                let matrix = ClassAdjacencyMatrix::from_counts(counts).ok()?;
                let edited = match op {
                    WitnessOperation::IncrementDiagonal { class } => {
                        matrix.incremented_diagonal(class)
                    }
                    WitnessOperation::IncrementOffDiagonal { i, j } => {
                        matrix.incremented_off_diagonal(i, j)
                    }
                    WitnessOperation::AppendEmptyClass => matrix.with_extra_class(),
                };
                Some(WitnessInstance::from_matrix(&edited))
            }
            WitnessInstance::Graph { .. } => match op {
                WitnessOperation::AppendEmptyClass => {
                    let WitnessInstance::Graph {
                        num_nodes,
                        num_classes,
                        labels,
                        edges,
                    } = self.clone()
                    else {
                        unreachable!()
                    };
                    Some(WitnessInstance::Graph {
                        num_nodes,
                        num_classes: num_classes + 1,
                        labels,
                        edges,
                    })
                }
                _ => None,
            },
        }
    }
}

/// Structural edit attached to a witness, for standalone replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum WitnessOperation {
    IncrementDiagonal { class: usize },
    IncrementOffDiagonal { i: usize, j: usize },
    AppendEmptyClass,
}

/// Evidence for a violated verdict: the offending instance(s), the observed
/// values, the edit (if any), and the seed that found it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub instances: Vec<WitnessInstance>,
    pub observed: Vec<f64>,
    pub operation: Option<WitnessOperation>,
    pub seed: Option<u64>,
}

/// Monte Carlo summary for one (setting, size) cell of a baseline check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineCell {
    pub setting: String,
    pub num_nodes: usize,
    pub trials: usize,
    pub mean: f64,
    pub std: f64,
    pub mean_abs_deviation: f64,
    pub max_abs_deviation: f64,
}

/// All baseline statistics behind a constant-baseline verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineStats {
    pub claimed_baseline: f64,
    pub tolerance: f64,
    pub cells: Vec<BaselineCell>,
}

/// Result of checking one property of one measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub measure: String,
    pub property: PropertyName,
    pub status: VerdictStatus,
    pub details: String,
    pub witness: Option<Witness>,
    pub statistics: Option<BaselineStats>,
}

impl PropertyVerdict {
    pub fn new(
        measure: &str,
        property: PropertyName,
        status: VerdictStatus,
        details: impl Into<String>,
    ) -> Self {
        Self {
            measure: measure.to_string(),
            property,
            status,
            details: details.into(),
            witness: None,
            statistics: None,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_statistics(mut self, statistics: BaselineStats) -> Self {
        self.statistics = Some(statistics);
        self
    }
}
