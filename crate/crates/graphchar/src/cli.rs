//! The `graphchar` command-line interface.
//!
//! Subcommands: `characterize` (full measure report for an edge-list
//! dataset), `generate` (sample a model and write it in the ingestion
//! format), `properties` (per-measure property verdict table), `baseline`
//! (per-trial null-model values as CSV), and `oracle` (brute-force
//! cross-check of the fast paths on a small graph).
//!
//! Exit codes: 0 success; 1 data or verification failure; 2 characterize ran
//! on an edgeless graph (report still emitted); 64 usage error. Diagnostics
//! go to stderr, data to stdout. `--seed` falls back to the `GRAPHCHAR_SEED`
//! environment variable, then to 0.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::generators::{
    clique_star, configuration_model, configuration_model_with_stats, sbm_four_class,
    two_class_degree_imbalanced, ConfigModelSpec, GeneratorError, SbmFourClassConfig,
};
use crate::graph::LabeledGraph;
use crate::harness::{self, sample_measures, NullSetting, PropertyName, TableConfig};
use crate::io::{load_edge_list, write_edge_list};
use crate::oracle;
use crate::report::{self, format_significant, IngestionStats};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_EDGELESS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "graphchar",
    version,
    about = "Homophily and label-informativeness characteristics of node-labeled graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every measure of an edge-list dataset
    Characterize(CharacterizeArgs),
    /// Sample a graph model and write edge/label files
    Generate(GenerateArgs),
    /// Check which properties each measure satisfies
    Properties(PropertiesArgs),
    /// Estimate null-model baselines, one CSV row per trial
    Baseline(BaselineArgs),
    /// Cross-check fast paths against brute-force enumeration (small graphs)
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
    Csv,
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn failure(msg: impl Into<String>) -> Self {
        CliError::Failure(msg.into())
    }

    fn report(self) -> i32 {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                EXIT_USAGE
            }
            CliError::Failure(msg) => {
                eprintln!("error: {msg}");
                EXIT_FAILURE
            }
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("GRAPHCHAR_SEED") {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("GRAPHCHAR_SEED must be a u64, got `{raw}`"))),
        Err(_) => Ok(0),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::failure(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Serializable generator description; accepted as `--config` JSON and echoed
/// by `generate`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum GeneratorConfig {
    ConfigModel {
        degrees: Vec<usize>,
        labels: Vec<usize>,
        #[serde(default)]
        seed: u64,
    },
    Sbm4 {
        n: usize,
        p0: f64,
        p1: f64,
        p2: f64,
        expected_degree: f64,
        #[serde(default)]
        seed: u64,
    },
    CliqueStar {
        r: usize,
    },
    DegreeImbalanced {
        half_n: usize,
        degree: usize,
        ratio: usize,
        #[serde(default)]
        seed: u64,
    },
}

impl GeneratorConfig {
    pub fn build(&self) -> Result<LabeledGraph, GeneratorError> {
        match self {
            GeneratorConfig::ConfigModel {
                degrees,
                labels,
                seed,
            } => configuration_model(&ConfigModelSpec::new(
                degrees.clone(),
                labels.clone(),
                *seed,
            )),
            GeneratorConfig::Sbm4 {
                n,
                p0,
                p1,
                p2,
                expected_degree,
                seed,
            } => sbm_four_class(&SbmFourClassConfig {
                n: *n,
                p0: *p0,
                p1: *p1,
                p2: *p2,
                expected_degree: *expected_degree,
                seed: *seed,
            }),
            GeneratorConfig::CliqueStar { r } => clique_star(*r),
            GeneratorConfig::DegreeImbalanced {
                half_n,
                degree,
                ratio,
                seed,
            } => two_class_degree_imbalanced(*half_n, *degree, *ratio, *seed),
        }
    }
}

/// Model selection shared by `generate` and `oracle`.
#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// config-model | sbm4 | clique-star | degree-imbalanced
    #[arg(long)]
    model: Option<String>,
    /// JSON file with a full generator config (overrides the flags below)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Node count (config-model, sbm4)
    #[arg(long)]
    nodes: Option<usize>,
    /// Uniform degree (config-model) or first-class degree (degree-imbalanced)
    #[arg(long)]
    degree: Option<usize>,
    /// Number of balanced classes (config-model)
    #[arg(long)]
    classes: Option<usize>,
    /// Comma-separated class fractions, e.g. 0.9,0.1 (config-model)
    #[arg(long)]
    class_fractions: Option<String>,
    /// Intra-class probability weight (sbm4)
    #[arg(long)]
    p0: Option<f64>,
    /// Paired-class probability weight (sbm4)
    #[arg(long)]
    p1: Option<f64>,
    /// Remaining-pair probability weight (sbm4)
    #[arg(long)]
    p2: Option<f64>,
    /// Expected node degree (sbm4)
    #[arg(long)]
    expected_degree: Option<f64>,
    /// Clique size (clique-star)
    #[arg(long = "clique-size", alias = "r")]
    clique_size: Option<usize>,
    /// Nodes per class (degree-imbalanced)
    #[arg(long)]
    half_n: Option<usize>,
    /// Degree ratio between the two classes (degree-imbalanced)
    #[arg(long)]
    ratio: Option<usize>,
}

impl ModelArgs {
    fn is_set(&self) -> bool {
        self.model.is_some() || self.config.is_some()
    }

    fn resolve(&self, seed: u64) -> Result<GeneratorConfig, CliError> {
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::failure(format!("cannot read {}: {e}", path.display())))?;
            return serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("bad generator config: {e}")));
        }
        let model = self
            .model
            .as_deref()
            .ok_or_else(|| CliError::usage("either --model or --config is required"))?;
        let require = |name: &str, value: Option<usize>| {
            value
                .ok_or_else(|| CliError::usage(format!("--{name} is required for model `{model}`")))
        };
        match model {
            "config-model" => {
                let nodes = require("nodes", self.nodes)?;
                let degree = require("degree", self.degree)?;
                let sizes = self.class_sizes(nodes)?;
                let mut labels = Vec::with_capacity(nodes);
                for (class, &size) in sizes.iter().enumerate() {
                    labels.extend(std::iter::repeat_n(class, size));
                }
                Ok(GeneratorConfig::ConfigModel {
                    degrees: vec![degree; nodes],
                    labels,
                    seed,
                })
            }
            "sbm4" => {
                let nodes = require("nodes", self.nodes)?;
                let (Some(p0), Some(p1), Some(p2)) = (self.p0, self.p1, self.p2) else {
                    return Err(CliError::usage("sbm4 needs --p0, --p1 and --p2"));
                };
                let expected_degree = self
                    .expected_degree
                    .ok_or_else(|| CliError::usage("sbm4 needs --expected-degree"))?;
                Ok(GeneratorConfig::Sbm4 {
                    n: nodes,
                    p0,
                    p1,
                    p2,
                    expected_degree,
                    seed,
                })
            }
            "clique-star" => Ok(GeneratorConfig::CliqueStar {
                r: require("clique-size", self.clique_size)?,
            }),
            "degree-imbalanced" => Ok(GeneratorConfig::DegreeImbalanced {
                half_n: require("half-n", self.half_n)?,
                degree: require("degree", self.degree)?,
                ratio: require("ratio", self.ratio)?,
                seed,
            }),
            other => Err(CliError::usage(format!(
                "unknown model `{other}`; expected config-model, sbm4, clique-star or degree-imbalanced"
            ))),
        }
    }

    fn class_sizes(&self, nodes: usize) -> Result<Vec<usize>, CliError> {
        if let Some(raw) = &self.class_fractions {
            let fractions: Vec<f64> = raw
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::usage(format!("bad --class-fractions `{raw}`")))?;
            if fractions.is_empty()
                || fractions.iter().any(|&f| f < 0.0)
                || (fractions.iter().sum::<f64>() - 1.0).abs() > 1e-9
            {
                return Err(CliError::usage(
                    "--class-fractions must be nonnegative and sum to 1",
                ));
            }
            // Rounded cumulative boundaries always partition the node count.
            let mut sizes = Vec::with_capacity(fractions.len());
            let mut cumulative = 0.0;
            let mut previous = 0usize;
            for fraction in &fractions {
                cumulative += fraction;
                let boundary = ((cumulative * nodes as f64).round() as usize).min(nodes);
                sizes.push(boundary - previous);
                previous = boundary;
            }
            *sizes.last_mut().expect("nonempty") += nodes - previous;
            Ok(sizes)
        } else {
            let classes = self.classes.unwrap_or(2).max(1);
            if classes > nodes {
                return Err(CliError::usage("more classes than nodes"));
            }
            let base = nodes / classes;
            let mut sizes = vec![base; classes];
            *sizes.last_mut().expect("nonempty") += nodes - base * classes;
            Ok(sizes)
        }
    }
}

#[derive(Args)]
struct CharacterizeArgs {
    /// Edge file: one node-id pair per line
    #[arg(long)]
    edges: PathBuf,
    /// Label file: one `node_id<TAB>label` per line
    #[arg(long)]
    labels: PathBuf,
    /// Dataset name in the report (defaults to the edge file stem)
    #[arg(long)]
    dataset: Option<String>,
    /// Keep duplicate edges as multiplicity instead of deduplicating
    #[arg(long)]
    keep_multi_edges: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Random seed (falls back to GRAPHCHAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
}

fn run_characterize(args: &CharacterizeArgs) -> Result<i32, CliError> {
    let loaded = load_edge_list(&args.edges, &args.labels, args.keep_multi_edges)
        .map_err(|e| CliError::failure(e.to_string()))?;
    if loaded.deduplicated_edges > 0 {
        eprintln!(
            "warning: {} duplicate edge(s) dropped (use --keep-multi-edges to retain)",
            loaded.deduplicated_edges
        );
    }
    if loaded.dropped_self_loops > 0 {
        eprintln!(
            "warning: {} self-loop(s) dropped",
            loaded.dropped_self_loops
        );
    }
    let dataset = args.dataset.clone().unwrap_or_else(|| {
        args.edges
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".to_string())
    });
    let report = report::characterize(
        &loaded.graph,
        &dataset,
        Some(&loaded.label_names),
        args.seed,
        Some(IngestionStats {
            dropped_self_loops: loaded.dropped_self_loops,
            deduplicated_edges: loaded.deduplicated_edges,
            kept_multi_edges: args.keep_multi_edges,
        }),
    );
    let text = match args.format {
        OutputFormat::Json => format!("{}\n", report.to_json()),
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Table => report.render_table(),
    };
    emit(&text, args.output.as_deref())?;
    Ok(if report.is_edgeless() {
        EXIT_EDGELESS
    } else {
        EXIT_OK
    })
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Random seed (falls back to GRAPHCHAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Output prefix; writes <prefix>.edges and <prefix>.labels
    #[arg(long)]
    output: PathBuf,
}

fn run_generate(args: &GenerateArgs) -> Result<i32, CliError> {
    let seed = resolve_seed(args.seed)?;
    let config = args.model.resolve(seed)?;
    let usage = |e: GeneratorError| CliError::usage(format!("invalid generator parameters: {e}"));
    let graph = match &config {
        GeneratorConfig::ConfigModel {
            degrees,
            labels,
            seed,
        } => {
            let spec = ConfigModelSpec::new(degrees.clone(), labels.clone(), *seed);
            let sample = configuration_model_with_stats(&spec).map_err(usage)?;
            if sample.erased_self_loops > 0 {
                eprintln!(
                    "note: erased {} self-loop stub pair(s) during matching",
                    sample.erased_self_loops
                );
            }
            sample.graph
        }
        other => other.build().map_err(usage)?,
    };
    let edge_path = args.output.with_extension("edges");
    let label_path = args.output.with_extension("labels");
    write_edge_list(&graph, None, &edge_path, &label_path)
        .map_err(|e| CliError::failure(e.to_string()))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&config).expect("config serializes")
    );
    eprintln!(
        "wrote {} nodes, {} edges to {} and {}",
        graph.num_nodes(),
        graph.num_edges(),
        edge_path.display(),
        label_path.display()
    );
    Ok(EXIT_OK)
}

#[derive(Args)]
struct PropertiesArgs {
    /// Comma-separated subset of h_edge,h_node,h_class,h_adj,h_mod,h_bal,h_bal_adj
    #[arg(long)]
    measures: Option<String>,
    /// Randomized monotonicity search budget
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Monte Carlo trials per baseline cell
    #[arg(long, default_value_t = 100)]
    baseline_trials: usize,
    /// Random seed (falls back to GRAPHCHAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Exit 0 even when verdicts differ from the reference table
    #[arg(long)]
    no_strict: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn run_properties(args: &PropertiesArgs) -> Result<i32, CliError> {
    let seed = resolve_seed(args.seed)?;
    let all = harness::standard_measures();
    let handles = match &args.measures {
        None => all,
        Some(raw) => {
            let mut picked = Vec::new();
            for name in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let handle = all
                    .iter()
                    .find(|h| h.name() == name)
                    .ok_or_else(|| CliError::usage(format!("unknown measure `{name}`")))?;
                picked.push(handle.clone());
            }
            picked
        }
    };
    let config = TableConfig::default()
        .with_trials(args.trials, args.baseline_trials)
        .with_seed(seed);
    let table =
        harness::property_table(&handles, &config).map_err(|e| CliError::failure(e.to_string()))?;

    let text = match args.format {
        OutputFormat::Table => table.render_text(),
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&table).expect("table serializes")
        ),
        OutputFormat::Csv => {
            let mut out = String::from("measure,max,min,tolerance,monotone,baseline\n");
            for row in &table.rows {
                let cells: Vec<String> = PropertyName::ALL
                    .iter()
                    .map(|p| {
                        table
                            .status(&row.measure, *p)
                            .map_or("-".to_string(), |s| s.symbol().to_string())
                    })
                    .collect();
                out.push_str(&format!("{},{}\n", row.measure, cells.join(",")));
            }
            out
        }
    };
    emit(&text, args.output.as_deref())?;

    let mismatches: Vec<String> = harness::diff_against_expected(&table)
        .into_iter()
        .filter(|line| {
            table
                .rows
                .iter()
                .any(|row| line.starts_with(&format!("{}/", row.measure)))
        })
        .collect();
    if mismatches.is_empty() || args.no_strict {
        Ok(EXIT_OK)
    } else {
        for line in &mismatches {
            eprintln!("verdict mismatch: {line}");
        }
        Ok(EXIT_FAILURE)
    }
}

#[derive(Args)]
struct BaselineArgs {
    /// Comma-separated measures (the seven homophily measures, li_edge, li_node)
    #[arg(long, default_value = "h_adj,li_edge")]
    measures: String,
    /// balanced | size-imbalanced | degree-imbalanced
    #[arg(long, default_value = "balanced")]
    setting: String,
    #[arg(long, default_value_t = 2000)]
    nodes: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Random seed (falls back to GRAPHCHAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn run_baseline(args: &BaselineArgs) -> Result<i32, CliError> {
    let seed = resolve_seed(args.seed)?;
    let setting = NullSetting::from_name(&args.setting)
        .ok_or_else(|| CliError::usage(format!("unknown setting `{}`", args.setting)))?;
    let mut handles = Vec::new();
    for name in args
        .measures
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        let handle = harness::handle_by_name(name)
            .ok_or_else(|| CliError::usage(format!("unknown measure `{name}`")))?;
        handles.push(handle);
    }
    if handles.is_empty() {
        return Err(CliError::usage("no measures selected"));
    }
    if args.trials == 0 {
        return Err(CliError::usage("--trials must be positive"));
    }
    let rows = sample_measures(&handles, setting, args.nodes, args.trials, seed);

    let names: Vec<&str> = handles.iter().map(|h| h.name()).collect();
    let mut out = format!("trial,{}\n", names.join(","));
    let mut sums = vec![0.0f64; handles.len()];
    let mut counts = vec![0usize; handles.len()];
    for (trial, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|v| v.map_or(String::new(), |x| format!("{x}")))
            .collect();
        out.push_str(&format!("{trial},{}\n", cells.join(",")));
        for (i, v) in row.iter().enumerate() {
            if let Some(x) = v {
                sums[i] += x;
                counts[i] += 1;
            }
        }
    }
    let means: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| if c > 0 { s / c as f64 } else { f64::NAN })
        .collect();
    let mut stds = vec![0.0f64; handles.len()];
    for row in &rows {
        for (i, v) in row.iter().enumerate() {
            if let Some(x) = v {
                stds[i] += (x - means[i]).powi(2);
            }
        }
    }
    let summary = |label: &str, values: &[f64]| -> String {
        let cells: Vec<String> = values.iter().map(|v| format_significant(*v, 6)).collect();
        format!("{label},{}\n", cells.join(","))
    };
    let stds: Vec<f64> = stds
        .iter()
        .zip(&counts)
        .map(|(s, &c)| {
            if c > 0 {
                (s / c as f64).sqrt()
            } else {
                f64::NAN
            }
        })
        .collect();
    out.push_str(&summary("mean", &means));
    out.push_str(&summary("std", &stds));
    emit(&out, args.output.as_deref())?;
    Ok(EXIT_OK)
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    edges: Option<PathBuf>,
    #[arg(long)]
    labels: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    /// Random seed (falls back to GRAPHCHAR_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Refuse graphs larger than this (enumeration is quadratic)
    #[arg(long, default_value_t = 50)]
    max_n: usize,
    #[arg(long)]
    keep_multi_edges: bool,
}

fn run_oracle(args: &OracleArgs) -> Result<i32, CliError> {
    let graph = match (&args.edges, &args.labels) {
        (Some(edges), Some(labels)) => {
            load_edge_list(edges, labels, args.keep_multi_edges)
                .map_err(|e| CliError::failure(e.to_string()))?
                .graph
        }
        (None, None) => {
            if !args.model.is_set() {
                return Err(CliError::usage(
                    "provide --edges/--labels or a generator via --model/--config",
                ));
            }
            let seed = resolve_seed(args.seed)?;
            args.model
                .resolve(seed)?
                .build()
                .map_err(|e| CliError::usage(format!("invalid generator parameters: {e}")))?
        }
        _ => return Err(CliError::usage("--edges and --labels go together")),
    };
    if graph.num_nodes() > args.max_n {
        return Err(CliError::usage(format!(
            "graph has {} nodes, above the enumeration guard of {} (raise --max-n to force)",
            graph.num_nodes(),
            args.max_n
        )));
    }

    let slow = oracle::enumerate_measures(&graph);
    let fast = oracle::fast_path_measures(&graph);
    let cell = |v: Option<f64>| v.map_or("-".to_string(), |x| format_significant(x, 6));
    println!("{:<12}{:<16}{:<16}|delta|", "measure", "enumerated", "fast");
    let mut ok = true;
    for ((name, s), (_, f)) in slow.entries().into_iter().zip(fast.entries()) {
        let delta = match (s, f) {
            (Some(a), Some(b)) => {
                let d = (a - b).abs();
                if d >= 1e-12 {
                    ok = false;
                }
                format!("{d:.2e}")
            }
            (None, None) => "both undefined".to_string(),
            _ => {
                ok = false;
                "DEFINEDNESS MISMATCH".to_string()
            }
        };
        println!("{name:<12}{:<16}{:<16}{delta}", cell(s), cell(f));
    }
    if ok {
        println!("all measures agree within 1e-12");
        Ok(EXIT_OK)
    } else {
        eprintln!("oracle disagreement detected");
        Ok(EXIT_FAILURE)
    }
}

/// Parses arguments and runs the selected subcommand; returns the process
/// exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Characterize(args) => run_characterize(args),
        Command::Generate(args) => run_generate(args),
        Command::Properties(args) => run_properties(args),
        Command::Baseline(args) => run_baseline(args),
        Command::Oracle(args) => run_oracle(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => err.report(),
    }
}
