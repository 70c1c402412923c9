//! Graph families used as null models, baselines, and worked examples.
//!
//! Everything here is deterministic given its config and seed (see
//! [`crate::rng`] for the generator identity). The configuration model keeps
//! multi-edges and erases self-loop pairs, so stub-matching probabilities stay
//! exact while outputs remain valid [`LabeledGraph`]s; realized degrees equal
//! the requested sequence except at erased loops.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ClassAdjacencyMatrix, GraphError, LabeledGraph};
use crate::rng::seeded_rng;

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("degree sequence sums to an odd number of stubs")]
    OddStubCount,
    #[error("degree sequence and label list have different lengths")]
    LengthMismatch,
    #[error("node count {0} is not divisible by 4")]
    NotDivisibleByFour(usize),
    #[error("pattern probabilities must be nonnegative with p0 + p1 + 2*p2 = 1 (got {0})")]
    BadProbabilities(f64),
    #[error("per-pair edge probability {0} exceeds 1")]
    PairProbabilityAboveOne(f64),
    #[error("expected degree must be positive")]
    NonPositiveDegree,
    #[error("clique size must be at least 2 (got {0})")]
    CliqueTooSmall(usize),
    #[error("degree ratio must be at least 2 (got {0})")]
    RatioTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Degree sequence plus labels for a configuration-model draw.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigModelSpec {
    pub degrees: Vec<usize>,
    pub labels: Vec<usize>,
    pub num_classes: usize,
    pub seed: u64,
}

impl ConfigModelSpec {
    /// Spec with the class count inferred from the labels.
    pub fn new(degrees: Vec<usize>, labels: Vec<usize>, seed: u64) -> Self {
        let num_classes = labels.iter().max().map_or(1, |&m| m + 1);
        Self {
            degrees,
            labels,
            num_classes,
            seed,
        }
    }
}

/// A configuration-model draw plus how many self-loop pairs were erased.
#[derive(Debug, Clone)]
pub struct ConfigModelSample {
    pub graph: LabeledGraph,
    pub erased_self_loops: usize,
}

/// Uniform stub matching: each node contributes `degree` stubs, the stub list
/// is shuffled, and consecutive stubs are paired. Self-loop pairs are erased;
/// parallel edges are kept with multiplicity.
pub fn configuration_model_with_stats(
    spec: &ConfigModelSpec,
) -> Result<ConfigModelSample, GeneratorError> {
    if spec.degrees.len() != spec.labels.len() {
        return Err(GeneratorError::LengthMismatch);
    }
    let stub_count: usize = spec.degrees.iter().sum();
    if !stub_count.is_multiple_of(2) {
        return Err(GeneratorError::OddStubCount);
    }
    let mut stubs = Vec::with_capacity(stub_count);
    for (node, &degree) in spec.degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(node, degree));
    }
    let mut rng = seeded_rng(spec.seed);
    stubs.shuffle(&mut rng);

    let mut edges = Vec::with_capacity(stub_count / 2);
    let mut erased = 0usize;
    for pair in stubs.chunks_exact(2) {
        if pair[0] == pair[1] {
            erased += 1;
        } else {
            edges.push((pair[0], pair[1]));
        }
    }
    let graph = LabeledGraph::new(
        spec.degrees.len(),
        spec.num_classes,
        spec.labels.clone(),
        edges,
    )?;
    Ok(ConfigModelSample {
        graph,
        erased_self_loops: erased,
    })
}

/// See [`configuration_model_with_stats`]; discards the loop count.
pub fn configuration_model(spec: &ConfigModelSpec) -> Result<LabeledGraph, GeneratorError> {
    configuration_model_with_stats(spec).map(|sample| sample.graph)
}

/// Four balanced classes with a three-probability connection pattern:
/// intra-class pairs use `p0`, the paired classes (first with fourth, second
/// with third) use `p1`, everything else `p2`, all scaled so the expected
/// degree is `expected_degree`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbmFourClassConfig {
    pub n: usize,
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub expected_degree: f64,
    pub seed: u64,
}

impl SbmFourClassConfig {
    fn validate(&self) -> Result<(usize, f64), GeneratorError> {
        if self.n == 0 || !self.n.is_multiple_of(4) {
            return Err(GeneratorError::NotDivisibleByFour(self.n));
        }
        if self.expected_degree <= 0.0 {
            return Err(GeneratorError::NonPositiveDegree);
        }
        let sum = self.p0 + self.p1 + 2.0 * self.p2;
        if self.p0 < 0.0 || self.p1 < 0.0 || self.p2 < 0.0 || (sum - 1.0).abs() > 1e-9 {
            return Err(GeneratorError::BadProbabilities(sum));
        }
        let block = self.n / 4;
        let scale = self.expected_degree / block as f64;
        for p in [self.p0, self.p1, self.p2] {
            if p * scale > 1.0 {
                return Err(GeneratorError::PairProbabilityAboveOne(p * scale));
            }
        }
        Ok((block, scale))
    }

    fn pair_probability(&self, block_a: usize, block_b: usize, scale: f64) -> f64 {
        let p = if block_a == block_b {
            self.p0
        } else if block_a + block_b == 3 {
            self.p1
        } else {
            self.p2
        };
        p * scale
    }
}

/// Draws `count` distinct indices from `0..total` and decodes each to a node
/// pair. Sparse draws use rejection; dense draws shuffle the full index range
/// so the loop always terminates.
fn sample_distinct_pairs(
    rng: &mut ChaCha8Rng,
    total: u64,
    count: u64,
    decode: impl Fn(u64) -> (usize, usize),
    edges: &mut Vec<(usize, usize)>,
) {
    if count == 0 {
        return;
    }
    if count * 2 <= total {
        let mut seen = HashSet::with_capacity(count as usize);
        let mut added = 0;
        while added < count {
            let idx = rng.random_range(0..total);
            if seen.insert(idx) {
                edges.push(decode(idx));
                added += 1;
            }
        }
    } else {
        let mut indices: Vec<u64> = (0..total).collect();
        for i in 0..count as usize {
            let j = rng.random_range(i..indices.len());
            indices.swap(i, j);
            edges.push(decode(indices[i]));
        }
    }
}

/// Index of an unordered pair (u, v), u < v, within one block.
fn decode_triangular(idx: u64) -> (usize, usize) {
    let mut v = (((8.0 * idx as f64 + 1.0).sqrt() + 1.0) / 2.0) as u64;
    while v * (v - 1) / 2 > idx {
        v -= 1;
    }
    while (v + 1) * v / 2 <= idx {
        v += 1;
    }
    let u = idx - v * (v - 1) / 2;
    (u as usize, v as usize)
}

/// Samples the four-block model by drawing a binomial edge count per block
/// pair and then choosing that many distinct pairs uniformly, which is
/// distributionally identical to independent per-pair coin flips.
pub fn sbm_four_class(config: &SbmFourClassConfig) -> Result<LabeledGraph, GeneratorError> {
    let (block, scale) = config.validate()?;
    let mut rng = seeded_rng(config.seed);
    let mut edges = Vec::new();
    for a in 0..4usize {
        for b in a..4usize {
            let probability = config.pair_probability(a, b, scale);
            let total_pairs = if a == b {
                (block as u64) * (block as u64 - 1) / 2
            } else {
                (block as u64) * (block as u64)
            };
            if total_pairs == 0 || probability == 0.0 {
                continue;
            }
            let count = Binomial::new(total_pairs, probability)
                .expect("validated probability")
                .sample(&mut rng);
            let base_a = a * block;
            let base_b = b * block;
            if a == b {
                sample_distinct_pairs(
                    &mut rng,
                    total_pairs,
                    count,
                    |idx| {
                        let (u, v) = decode_triangular(idx);
                        (base_a + u, base_a + v)
                    },
                    &mut edges,
                );
            } else {
                sample_distinct_pairs(
                    &mut rng,
                    total_pairs,
                    count,
                    |idx| {
                        (
                            base_a + (idx / block as u64) as usize,
                            base_b + (idx % block as u64) as usize,
                        )
                    },
                    &mut edges,
                );
            }
        }
    }
    let labels = (0..config.n).map(|v| v / block).collect();
    Ok(LabeledGraph::new(config.n, 4, labels, edges)?)
}

/// A clique of `r` same-class nodes, each attached to `r - 1` leaves of the
/// other class: n = r², |E| = r(r-1)/2 + r(r-1). Class-agnostic hubs with
/// strictly heterophilous leaves.
pub fn clique_star(r: usize) -> Result<LabeledGraph, GeneratorError> {
    if r < 2 {
        return Err(GeneratorError::CliqueTooSmall(r));
    }
    let num_nodes = r * r;
    let mut labels = vec![1usize; num_nodes];
    labels[..r].fill(0);
    let mut edges = Vec::with_capacity(r * (r - 1) / 2 + r * (r - 1));
    for i in 0..r {
        for j in (i + 1)..r {
            edges.push((i, j));
        }
    }
    for i in 0..r {
        for leaf in 0..(r - 1) {
            edges.push((i, r + i * (r - 1) + leaf));
        }
    }
    Ok(LabeledGraph::new(num_nodes, 2, labels, edges)?)
}

/// Configuration model with two equal-size classes where the second class has
/// `ratio` times the degree of the first.
pub fn two_class_degree_imbalanced(
    half_n: usize,
    degree: usize,
    ratio: usize,
    seed: u64,
) -> Result<LabeledGraph, GeneratorError> {
    if ratio < 2 {
        return Err(GeneratorError::RatioTooSmall(ratio));
    }
    let mut degrees = vec![degree; 2 * half_n];
    degrees[half_n..].fill(degree * ratio);
    let mut labels = vec![0usize; 2 * half_n];
    labels[half_n..].fill(1);
    configuration_model(&ConfigModelSpec {
        degrees,
        labels,
        num_classes: 2,
        seed,
    })
}

/// Uniformly permutes the labels of `graph`, preserving class sizes and the
/// edge set exactly.
pub fn shuffle_labels(graph: &LabeledGraph, seed: u64) -> LabeledGraph {
    let mut labels = graph.labels().to_vec();
    let mut rng = seeded_rng(seed);
    labels.shuffle(&mut rng);
    LabeledGraph::new(
        graph.num_nodes(),
        graph.num_classes(),
        labels,
        graph.edges().to_vec(),
    )
    .expect("permuted labels stay valid")
}

/// Direct class-adjacency construction for edge-wise experiments.
pub fn matrix_instance(counts: &[Vec<u64>]) -> Result<ClassAdjacencyMatrix, GeneratorError> {
    Ok(ClassAdjacencyMatrix::from_counts(counts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ClassAdjacencyMatrix;
    use crate::homophily::edge_homophily;

    #[test]
    fn clique_star_counts() {
        for r in 2..=12 {
            let g = clique_star(r).unwrap();
            assert_eq!(g.num_nodes(), r * r);
            assert_eq!(g.num_edges(), r * (r - 1) / 2 + r * (r - 1));
            let sizes = g.class_sizes();
            assert_eq!(sizes, vec![r, r * (r - 1)]);
        }
        assert_eq!(
            clique_star(1).unwrap_err(),
            GeneratorError::CliqueTooSmall(1)
        );
    }

    #[test]
    fn clique_star_smallest() {
        let g = clique_star(2).unwrap();
        assert_eq!(g.num_nodes(), 4);
        assert_eq!(g.num_edges(), 3);
    }

    #[test]
    fn clique_star_distributions() {
        let g = clique_star(4).unwrap();
        let p = crate::graph::label_distribution(&g).unwrap();
        assert_eq!(p.probs(), &[0.25, 0.75]);
        let pbar = crate::graph::degree_weighted_distribution(&g).unwrap();
        assert!((pbar.probs()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((pbar.probs()[1] - 1.0 / 3.0).abs() < 1e-15);
        let joint = crate::graph::joint_edge_distribution(&g).unwrap();
        let third = 1.0 / 3.0;
        assert_eq!(joint, vec![vec![third, third], vec![third, 0.0]]);
    }

    #[test]
    fn config_model_zero_degrees_gives_edgeless_graph() {
        let spec = ConfigModelSpec::new(vec![0, 0, 0], vec![0, 1, 0], 5);
        let g = configuration_model(&spec).unwrap();
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn config_model_forced_matching() {
        let spec = ConfigModelSpec::new(vec![1, 1], vec![0, 1], 99);
        let g = configuration_model(&spec).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn config_model_rejects_odd_stub_count() {
        let spec = ConfigModelSpec::new(vec![1, 1, 1], vec![0, 0, 0], 1);
        assert_eq!(
            configuration_model(&spec).unwrap_err(),
            GeneratorError::OddStubCount
        );
    }

    #[test]
    fn config_model_is_deterministic() {
        let spec = ConfigModelSpec::new(vec![3; 40], vec![0; 40], 7);
        let a = configuration_model(&spec).unwrap();
        let b = configuration_model(&spec).unwrap();
        assert_eq!(a, b);
        let other = configuration_model(&ConfigModelSpec { seed: 8, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn config_model_degrees_match_except_erased_loops() {
        let degrees = vec![10; 500];
        let spec = ConfigModelSpec::new(degrees.clone(), vec![0; 500], 3);
        let sample = configuration_model_with_stats(&spec).unwrap();
        let realized = sample.graph.degrees();
        let mut missing = 0usize;
        for (r, d) in realized.iter().zip(&degrees) {
            assert!(r <= d);
            missing += d - r;
        }
        assert_eq!(missing, 2 * sample.erased_self_loops);
    }

    #[test]
    fn config_model_erases_few_loops() {
        // Mean degree 10 at n = 1000: well under 1% of stubs across seeds.
        for seed in 0..20 {
            let spec = ConfigModelSpec::new(vec![10; 1000], vec![0; 1000], seed);
            let sample = configuration_model_with_stats(&spec).unwrap();
            let stub_fraction = 2.0 * sample.erased_self_loops as f64 / 10_000.0;
            assert!(stub_fraction <= 0.01, "erased {stub_fraction}");
        }
    }

    #[test]
    fn sbm_intra_only_is_perfectly_homophilous() {
        let g = sbm_four_class(&SbmFourClassConfig {
            n: 200,
            p0: 1.0,
            p1: 0.0,
            p2: 0.0,
            expected_degree: 8.0,
            seed: 11,
        })
        .unwrap();
        let m = ClassAdjacencyMatrix::from_graph(&g);
        assert_eq!(edge_homophily(&m).unwrap(), 1.0);
    }

    #[test]
    fn sbm_paired_pattern_only_crosses_paired_blocks() {
        let g = sbm_four_class(&SbmFourClassConfig {
            n: 200,
            p0: 0.0,
            p1: 1.0,
            p2: 0.0,
            expected_degree: 8.0,
            seed: 11,
        })
        .unwrap();
        let m = ClassAdjacencyMatrix::from_graph(&g);
        assert_eq!(
            m.count(0, 0) + m.count(1, 1) + m.count(2, 2) + m.count(3, 3),
            0
        );
        assert_eq!(m.count(0, 1), 0);
        assert_eq!(m.count(0, 2), 0);
        assert!(m.count(0, 3) > 0);
        assert!(m.count(1, 2) > 0);
    }

    #[test]
    fn sbm_validation_errors() {
        let base = SbmFourClassConfig {
            n: 100,
            p0: 0.5,
            p1: 0.5,
            p2: 0.0,
            expected_degree: 10.0,
            seed: 0,
        };
        assert!(matches!(
            sbm_four_class(&SbmFourClassConfig {
                n: 102,
                ..base.clone()
            }),
            Err(GeneratorError::NotDivisibleByFour(102))
        ));
        assert!(matches!(
            sbm_four_class(&SbmFourClassConfig {
                p0: 0.9,
                ..base.clone()
            }),
            Err(GeneratorError::BadProbabilities(_))
        ));
        // Block size 4 with expected degree 10 demands a per-pair probability
        // above 1.
        assert!(matches!(
            sbm_four_class(&SbmFourClassConfig { n: 16, ..base }),
            Err(GeneratorError::PairProbabilityAboveOne(_))
        ));
    }

    #[test]
    fn sbm_is_deterministic_and_mean_degree_tracks_config() {
        let config = SbmFourClassConfig {
            n: 4000,
            p0: 0.25,
            p1: 0.25,
            p2: 0.25,
            expected_degree: 10.0,
            seed: 21,
        };
        let a = sbm_four_class(&config).unwrap();
        let b = sbm_four_class(&config).unwrap();
        assert_eq!(a, b);

        let mut mean = 0.0;
        let seeds = 20;
        for seed in 0..seeds {
            let g = sbm_four_class(&SbmFourClassConfig {
                seed,
                ..config.clone()
            })
            .unwrap();
            mean += 2.0 * g.num_edges() as f64 / g.num_nodes() as f64;
        }
        mean /= seeds as f64;
        assert!((mean - 10.0).abs() / 10.0 < 0.05, "mean degree {mean}");
    }

    #[test]
    fn degree_imbalanced_structure() {
        let g = two_class_degree_imbalanced(50, 4, 4, 9).unwrap();
        assert_eq!(g.num_nodes(), 100);
        assert_eq!(g.class_sizes(), vec![50, 50]);
        // 50*4 + 50*16 stubs = 1000: worst case every stub pairs within a node.
        assert!(g.num_edges() <= 500);
        assert_eq!(
            two_class_degree_imbalanced(50, 4, 1, 9).unwrap_err(),
            GeneratorError::RatioTooSmall(1)
        );
    }

    #[test]
    fn degree_imbalance_bias_grows_toward_half() {
        // E h_class = l/(l+1) - 1/2 approaches 1/2 as the ratio grows.
        let mut mean = 0.0;
        let samples = 50;
        for seed in 0..samples {
            let g = two_class_degree_imbalanced(500, 2, 32, seed).unwrap();
            mean += crate::homophily::class_homophily(&g).unwrap() / samples as f64;
        }
        let expected = 32.0 / 33.0 - 0.5;
        assert!((mean - expected).abs() < 0.02, "mean {mean} vs {expected}");
    }

    #[test]
    fn shuffled_labels_remove_homophily_on_average() {
        // Two monochromatic cliques are perfectly homophilous; permuting the
        // labels leaves only chance-level agreement.
        let mut labels = vec![0usize; 40];
        labels[20..].fill(1);
        let mut edges = Vec::new();
        for block in 0..2 {
            for i in 0..20 {
                for j in (i + 1)..20 {
                    edges.push((block * 20 + i, block * 20 + j));
                }
            }
        }
        let g = LabeledGraph::new(40, 2, labels, edges).unwrap();
        let m = ClassAdjacencyMatrix::from_graph(&g);
        assert_eq!(crate::homophily::adjusted_homophily(&m).unwrap(), 1.0);

        let trials = 300;
        let mut mean = 0.0;
        for seed in 0..trials {
            let shuffled = shuffle_labels(&g, seed);
            let m = ClassAdjacencyMatrix::from_graph(&shuffled);
            mean += crate::homophily::adjusted_homophily(&m).unwrap() / trials as f64;
        }
        assert!(mean.abs() < 0.05, "mean h_adj after shuffling: {mean}");
    }

    #[test]
    fn degree_imbalanced_rejects_odd_parity() {
        // half_n=1, d=1, l=3: 1 + 3 stubs = 4 (even); d=1, l=2: 3 stubs (odd).
        assert!(matches!(
            two_class_degree_imbalanced(1, 1, 2, 0),
            Err(GeneratorError::OddStubCount)
        ));
    }

    #[test]
    fn shuffle_preserves_class_sizes_and_edges() {
        let g = clique_star(4).unwrap();
        let shuffled = shuffle_labels(&g, 13);
        assert_eq!(shuffled.class_sizes(), g.class_sizes());
        assert_eq!(shuffled.edges(), g.edges());
        let again = shuffle_labels(&g, 13);
        assert_eq!(shuffled, again);

        let single = LabeledGraph::new(3, 1, vec![0; 3], vec![(0, 1)]).unwrap();
        assert_eq!(shuffle_labels(&single, 4), single);
    }

    #[test]
    fn triangular_decode_roundtrip() {
        let mut seen = HashSet::new();
        for idx in 0..45 {
            let (u, v) = decode_triangular(idx);
            assert!(u < v && v < 10);
            assert!(seen.insert((u, v)));
        }
    }
}
