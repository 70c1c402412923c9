//! Samples each graph model and writes one of them in the edge-list format.
//!
//! Run with: cargo run --release --example generate_graphs

use graphchar::generators::{
    clique_star, configuration_model_with_stats, sbm_four_class, shuffle_labels,
    two_class_degree_imbalanced, ConfigModelSpec, SbmFourClassConfig,
};
use graphchar::io::write_edge_list;

fn main() {
    // Configuration model: uniform stub matching over a fixed degree sequence.
    let spec = ConfigModelSpec::new(vec![10; 2000], (0..2000).map(|v| v % 4).collect(), 42);
    let sample = configuration_model_with_stats(&spec).unwrap();
    println!(
        "config-model:      n = {}, |E| = {}, erased self-loop pairs = {}",
        sample.graph.num_nodes(),
        sample.graph.num_edges(),
        sample.erased_self_loops
    );

    let sbm = sbm_four_class(&SbmFourClassConfig {
        n: 2000,
        p0: 0.5,
        p1: 0.5,
        p2: 0.0,
        expected_degree: 10.0,
        seed: 42,
    })
    .unwrap();
    println!(
        "sbm4:              n = {}, |E| = {} (expected mean degree 10, got {:.2})",
        sbm.num_nodes(),
        sbm.num_edges(),
        2.0 * sbm.num_edges() as f64 / sbm.num_nodes() as f64
    );

    let star = clique_star(6).unwrap();
    println!(
        "clique-star(6):    n = {}, |E| = {}",
        star.num_nodes(),
        star.num_edges()
    );

    let imbalanced = two_class_degree_imbalanced(1000, 4, 4, 42).unwrap();
    println!(
        "degree-imbalanced: n = {}, |E| = {}",
        imbalanced.num_nodes(),
        imbalanced.num_edges()
    );

    // A label shuffle keeps the topology and class sizes, killing any
    // label-edge correlation; handy as an in-place null model.
    let shuffled = shuffle_labels(&star, 1);
    println!(
        "shuffled labels:   class sizes {:?} (unchanged)",
        shuffled.class_sizes()
    );

    let dir = std::env::temp_dir();
    let edges = dir.join("clique_star_6.edges");
    let labels = dir.join("clique_star_6.labels");
    write_edge_list(&star, None, &edges, &labels).unwrap();
    println!();
    println!("wrote {} and {}", edges.display(), labels.display());
    println!(
        "inspect them with: graphchar characterize --edges {} --labels {}",
        edges.display(),
        labels.display()
    );
}
