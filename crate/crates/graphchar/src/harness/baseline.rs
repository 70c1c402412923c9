//! Constant-baseline estimation under the configuration model.
//!
//! A measure with a claimed baseline must concentrate on that constant when
//! the graph is wired independently of the labels. The check samples
//! configuration-model graphs at increasing sizes across three structurally
//! different label/degree settings and requires the worst per-size mean
//! absolute deviation from the constant to shrink monotonically over the
//! sizes and to end below the tolerance. The mean absolute deviation tracks
//! concentration directly: it decays with the per-sample spread for a true
//! baseline and sticks at the bias when the claimed constant is wrong.

use std::collections::BTreeMap;

use crate::generators::{configuration_model, ConfigModelSpec};
use crate::graph::ClassAdjacencyMatrix;
use crate::rng::stream_rng;
use rand::Rng;

use super::{
    BaselineCell, BaselineStats, HarnessError, MeasureHandle, PropertyName, PropertyVerdict,
    VerdictStatus, Witness,
};

/// Label/degree structure of a null-model family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullSetting {
    /// Four equal classes, every degree 10.
    BalancedFourClass,
    /// Two classes at 90%/10%, every degree 10.
    SizeImbalancedBinary,
    /// Two equal classes, degrees 4 and 16.
    DegreeImbalanced,
}

impl NullSetting {
    pub const ALL: [NullSetting; 3] = [
        NullSetting::BalancedFourClass,
        NullSetting::SizeImbalancedBinary,
        NullSetting::DegreeImbalanced,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NullSetting::BalancedFourClass => "balanced",
            NullSetting::SizeImbalancedBinary => "size-imbalanced",
            NullSetting::DegreeImbalanced => "degree-imbalanced",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Configuration-model spec for `num_nodes` nodes under this setting.
    pub fn spec(&self, num_nodes: usize, seed: u64) -> ConfigModelSpec {
        match self {
            NullSetting::BalancedFourClass => {
                let block = num_nodes / 4;
                let labels = (0..num_nodes).map(|v| (v / block).min(3)).collect();
                ConfigModelSpec {
                    degrees: vec![10; num_nodes],
                    labels,
                    num_classes: 4,
                    seed,
                }
            }
            NullSetting::SizeImbalancedBinary => {
                let majority = num_nodes * 9 / 10;
                let mut labels = vec![0usize; num_nodes];
                labels[majority..].fill(1);
                ConfigModelSpec {
                    degrees: vec![10; num_nodes],
                    labels,
                    num_classes: 2,
                    seed,
                }
            }
            NullSetting::DegreeImbalanced => {
                let half = num_nodes / 2;
                let mut degrees = vec![4usize; num_nodes];
                degrees[half..].fill(16);
                let mut labels = vec![0usize; num_nodes];
                labels[half..].fill(1);
                ConfigModelSpec {
                    degrees,
                    labels,
                    num_classes: 2,
                    seed,
                }
            }
        }
    }
}

/// Sizes, trial count, seed, and final-size tolerance for a baseline run.
#[derive(Debug, Clone)]
pub struct BaselineConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            sizes: vec![500, 2000, 8000],
            trials: 100,
            seed: 0,
            tolerance: 0.05,
        }
    }
}

fn trial_stream(seed: u64, setting_idx: usize, size_idx: usize, trial: usize) -> u64 {
    let cell = (setting_idx as u64) << 48 | (size_idx as u64) << 32 | trial as u64;
    let mut rng = stream_rng(seed, cell);
    rng.random()
}

/// Per-trial values of `handles` on one (setting, size) family. Rows are
/// trials, columns follow `handles`; `None` marks an undefined evaluation.
pub fn sample_measures(
    handles: &[MeasureHandle],
    setting: NullSetting,
    num_nodes: usize,
    trials: usize,
    seed: u64,
) -> Vec<Vec<Option<f64>>> {
    let setting_idx = NullSetting::ALL
        .iter()
        .position(|s| *s == setting)
        .expect("known setting");
    (0..trials)
        .map(|trial| {
            let spec = setting.spec(num_nodes, trial_stream(seed, setting_idx, 0, trial));
            let graph = configuration_model(&spec).expect("even stub count by construction");
            let matrix = ClassAdjacencyMatrix::from_graph(&graph);
            handles
                .iter()
                .map(|handle| {
                    let result = match handle.eval_matrix(&matrix) {
                        Some(result) => result,
                        None => handle.eval_graph(&graph),
                    };
                    result.ok()
                })
                .collect()
        })
        .collect()
}

struct CellAccumulator {
    values: Vec<f64>,
}

impl CellAccumulator {
    fn stats(&self, baseline: f64) -> (f64, f64, f64, f64) {
        let n = self.values.len() as f64;
        let mean = self.values.iter().sum::<f64>() / n;
        let variance = self.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let mean_abs = self
            .values
            .iter()
            .map(|v| (v - baseline).abs())
            .sum::<f64>()
            / n;
        let max_abs = self
            .values
            .iter()
            .map(|v| (v - baseline).abs())
            .fold(0.0f64, f64::max);
        (mean, variance.sqrt(), mean_abs, max_abs)
    }
}

/// Runs the Monte Carlo once and produces a constant-baseline verdict for
/// every handle, sharing the sampled graphs across measures.
pub fn estimate_baseline_many(
    handles: &[MeasureHandle],
    settings: &[NullSetting],
    config: &BaselineConfig,
) -> Result<Vec<PropertyVerdict>, HarnessError> {
    if config.trials < 30 {
        return Err(HarnessError::TooFewTrials(config.trials));
    }
    // cells[handle][(setting, size)] -> accumulated values
    let mut cells: Vec<BTreeMap<(usize, usize), CellAccumulator>> =
        handles.iter().map(|_| BTreeMap::new()).collect();

    for (setting_idx, setting) in settings.iter().enumerate() {
        for (size_idx, &num_nodes) in config.sizes.iter().enumerate() {
            for trial in 0..config.trials {
                let spec = setting.spec(
                    num_nodes,
                    trial_stream(config.seed, setting_idx, size_idx, trial),
                );
                let graph = configuration_model(&spec).expect("even stub count");
                let matrix = ClassAdjacencyMatrix::from_graph(&graph);
                for (handle_idx, handle) in handles.iter().enumerate() {
                    let result = match handle.eval_matrix(&matrix) {
                        Some(result) => result,
                        None => handle.eval_graph(&graph),
                    };
                    if let Ok(value) = result {
                        cells[handle_idx]
                            .entry((setting_idx, size_idx))
                            .or_insert_with(|| CellAccumulator { values: Vec::new() })
                            .values
                            .push(value);
                    }
                }
            }
        }
    }

    let verdicts = handles
        .iter()
        .zip(cells)
        .map(|(handle, handle_cells)| verdict_for(handle, settings, config, &handle_cells))
        .collect();
    Ok(verdicts)
}

/// Constant-baseline verdict for a single measure.
pub fn estimate_baseline(
    handle: &MeasureHandle,
    settings: &[NullSetting],
    config: &BaselineConfig,
) -> Result<PropertyVerdict, HarnessError> {
    Ok(
        estimate_baseline_many(std::slice::from_ref(handle), settings, config)?
            .pop()
            .expect("one verdict per handle"),
    )
}

fn verdict_for(
    handle: &MeasureHandle,
    settings: &[NullSetting],
    config: &BaselineConfig,
    cells: &BTreeMap<(usize, usize), CellAccumulator>,
) -> PropertyVerdict {
    let Some(baseline) = handle.baseline else {
        return PropertyVerdict::new(
            handle.name(),
            PropertyName::ConstantBaseline,
            VerdictStatus::NotApplicable,
            "no baseline constant declared for this measure",
        );
    };

    let mut stat_cells = Vec::new();
    // Worst mean absolute deviation from the claimed constant, per size.
    let mut devs = vec![0.0f64; config.sizes.len()];
    for (setting_idx, setting) in settings.iter().enumerate() {
        for (size_idx, &num_nodes) in config.sizes.iter().enumerate() {
            let Some(cell) = cells.get(&(setting_idx, size_idx)) else {
                continue;
            };
            let (mean, std, mean_abs, max_abs) = cell.stats(baseline);
            devs[size_idx] = devs[size_idx].max(mean_abs);
            stat_cells.push(BaselineCell {
                setting: setting.name().to_string(),
                num_nodes,
                trials: cell.values.len(),
                mean,
                std,
                mean_abs_deviation: mean_abs,
                max_abs_deviation: max_abs,
            });
        }
    }
    let stats = BaselineStats {
        claimed_baseline: baseline,
        tolerance: config.tolerance,
        cells: stat_cells,
    };

    let shrinks = devs.windows(2).all(|w| w[1] <= w[0]);
    let final_dev = *devs.last().unwrap_or(&f64::INFINITY);
    let within = final_dev < config.tolerance;
    if shrinks && within {
        PropertyVerdict::new(
            handle.name(),
            PropertyName::ConstantBaseline,
            VerdictStatus::Satisfied,
            format!(
                "worst mean |value - {baseline}| shrinks over sizes {:?} and ends at {final_dev:.2e}",
                config.sizes
            ),
        )
        .with_statistics(stats)
    } else {
        let reason = if within {
            format!("mean deviation is not shrinking with size: {devs:?}")
        } else {
            format!(
                "worst mean |value - {baseline}| at n = {} is {final_dev:.3}, above tolerance {}",
                config.sizes.last().unwrap_or(&0),
                config.tolerance
            )
        };
        PropertyVerdict::new(
            handle.name(),
            PropertyName::ConstantBaseline,
            VerdictStatus::Violated,
            reason.clone(),
        )
        .with_witness(Witness {
            description: format!(
                "re-run the same settings with seed {} to reproduce: {reason}",
                config.seed
            ),
            instances: Vec::new(),
            observed: devs,
            operation: None,
            seed: Some(config.seed),
        })
        .with_statistics(stats)
    }
}
