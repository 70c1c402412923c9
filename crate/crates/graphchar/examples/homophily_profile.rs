//! Computes every homophily measure on a few worked graphs.
//!
//! The clique-star family is the interesting one: its hubs are class-agnostic
//! and its leaves strictly heterophilous, yet class homophily grows toward
//! 1/2 with the clique size. Adjusted homophily stays negative, as a measure
//! with a constant baseline should.
//!
//! Run with: cargo run --release --example homophily_profile

use graphchar::generators::clique_star;
use graphchar::graph::LabeledGraph;
use graphchar::homophily;
use graphchar::report::format_significant;

fn print_profile(name: &str, graph: &LabeledGraph) {
    let profile = homophily::profile(graph);
    print!("{name:<16}");
    for (_, value) in profile.entries() {
        let cell = value.map_or("-".to_string(), |v| format_significant(v, 4));
        print!("{cell:>11}");
    }
    println!();
}

fn main() {
    print!("{:<16}", "graph");
    for name in [
        "h_edge",
        "h_node",
        "h_class",
        "h_adj",
        "h_mod",
        "h_bal",
        "h_bal_adj",
    ] {
        print!("{name:>11}");
    }
    println!();

    // Two disjoint monochromatic triangles: perfect homophily.
    let perfect = LabeledGraph::new(
        6,
        2,
        vec![0, 0, 0, 1, 1, 1],
        vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
    )
    .unwrap();
    print_profile("two-cliques", &perfect);

    // Complete bipartite: perfect heterophily.
    let bipartite = LabeledGraph::new(
        5,
        2,
        vec![0, 0, 1, 1, 1],
        vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
    )
    .unwrap();
    print_profile("bipartite-k23", &bipartite);

    for r in [2, 4, 8, 16] {
        let graph = clique_star(r).unwrap();
        print_profile(&format!("clique-star-{r}"), &graph);
    }

    println!();
    println!("class homophily of clique-star(r) is exactly 1/2 - 1/r:");
    for r in [4usize, 8, 16] {
        let graph = clique_star(r).unwrap();
        let value = homophily::class_homophily(&graph).unwrap();
        println!(
            "  r = {r:<3} h_class = {value:.6} (1/2 - 1/r = {:.6})",
            0.5 - 1.0 / r as f64
        );
    }
}
