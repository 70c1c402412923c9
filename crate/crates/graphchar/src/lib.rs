//! Structural characteristics of node-classification graphs.
//!
//! `graphchar` computes homophily measures (edge, node, class, adjusted,
//! modularity, balanced, balanced-adjusted) and label informativeness for
//! node-labeled graphs, generates the null and synthetic models those
//! measures are calibrated against, and checks which desirable properties
//! (maximal/minimal agreement, empty-class tolerance, monotonicity, constant
//! baseline) each measure actually satisfies.
//!
//! # Quick start
//!
//! ```
//! use graphchar::generators::clique_star;
//! use graphchar::homophily;
//!
//! let g = clique_star(4).unwrap();
//! let p = homophily::profile(&g);
//! assert_eq!(p.h_class, Some(0.25)); // high despite no real homophily
//! assert_eq!(p.h_adj, Some(-0.5));   // adjusted homophily is not fooled
//! ```
//!
//! # Examples directory
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release --example homophily_profile        # all measures on worked graphs
//! cargo run --release --example label_informativeness    # LI separating heterophily types
//! cargo run --release --example generate_graphs          # model sampling + edge-list output
//! cargo run --release --example property_table           # per-measure property verdicts
//! cargo run --release --example baseline_monte_carlo     # null-model baseline estimation
//! cargo run --release --example oracle_diff              # brute-force cross-check
//! ```
//!
//! The `graphchar` binary exposes the same capabilities as subcommands
//! (`characterize`, `generate`, `properties`, `baseline`, `oracle`); see the
//! README or `graphchar --help`.
//!
//! All randomness is seeded and reproducible; see [`rng`].

// Index loops over symmetric matrices read better than iterator chains here.
#![allow(clippy::needless_range_loop)]

use thiserror::Error;

pub mod cli;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod homophily;
pub mod io;
pub mod li;
pub mod oracle;
pub mod report;
pub mod rng;

pub use graph::{
    degree_weighted_distribution, joint_edge_distribution, label_distribution,
    ClassAdjacencyMatrix, ClassDistribution, DegreeProfile, GraphError, LabeledGraph,
};

/// Why a measure is undefined on a given input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("needs at least one edge")]
    NoEdges,
    #[error("needs more than one class carrying edges")]
    SingleClass,
    #[error("every node is isolated")]
    NoNonIsolatedNodes,
}
