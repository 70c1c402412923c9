//! Verdict table across measures and properties.

use serde::Serialize;

use super::baseline::{estimate_baseline_many, BaselineConfig, NullSetting};
use super::checks::{
    check_empty_class_tolerance, check_maximal_agreement, check_minimal_agreement,
    check_monotonicity, MonotonicityConfig,
};
use super::suite::{builtin_suite, SuiteInstance};
use super::{HarnessError, MeasureHandle, PropertyName, PropertyVerdict, VerdictStatus};

/// Everything a table run needs; the default matches the CI-checked table.
#[derive(Debug, Clone)]
pub struct TableConfig {
    pub suite: Vec<SuiteInstance>,
    pub monotonicity: MonotonicityConfig,
    pub baseline: BaselineConfig,
    pub settings: Vec<NullSetting>,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            suite: builtin_suite(),
            monotonicity: MonotonicityConfig::default(),
            baseline: BaselineConfig::default(),
            settings: NullSetting::ALL.to_vec(),
        }
    }
}

impl TableConfig {
    /// Scales trial counts for quick interactive runs; verdicts may get
    /// noisier below the defaults.
    pub fn with_trials(mut self, monotonicity_trials: usize, baseline_trials: usize) -> Self {
        self.monotonicity.trials = monotonicity_trials;
        self.baseline.trials = baseline_trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.monotonicity.seed = seed;
        self.baseline.seed = seed;
        self
    }
}

/// One measure's verdicts in canonical property order.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureRow {
    pub measure: String,
    pub verdicts: Vec<PropertyVerdict>,
}

/// The full verdict matrix.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyTable {
    pub rows: Vec<MeasureRow>,
}

impl PropertyTable {
    pub fn status(&self, measure: &str, property: PropertyName) -> Option<VerdictStatus> {
        self.rows
            .iter()
            .find(|row| row.measure == measure)?
            .verdicts
            .iter()
            .find(|v| v.property == property)
            .map(|v| v.status)
    }

    /// Aligned plain-text rendering, one measure per line.
    pub fn render_text(&self) -> String {
        let headers = ["measure", "max", "min", "tolerance", "monotone", "baseline"];
        let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
        let mut lines: Vec<Vec<String>> = Vec::new();
        for row in &self.rows {
            let mut cells = vec![row.measure.clone()];
            for property in PropertyName::ALL {
                let symbol = row
                    .verdicts
                    .iter()
                    .find(|v| v.property == property)
                    .map_or("-", |v| v.status.symbol());
                cells.push(symbol.to_string());
            }
            for (w, cell) in widths.iter_mut().zip(&cells) {
                *w = (*w).max(cell.len());
            }
            lines.push(cells);
        }
        let mut out = String::new();
        let format_row = |cells: &[String], widths: &[usize]| -> String {
            cells
                .iter()
                .zip(widths)
                .map(|(cell, width)| format!("{cell:<width$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let header_cells: Vec<String> = headers.iter().map(|s| s.to_string()).collect();
        out.push_str(&format_row(&header_cells, &widths));
        out.push('\n');
        for cells in &lines {
            out.push_str(&format_row(cells, &widths));
            out.push('\n');
        }
        out
    }
}

/// Runs all five checks for every handle. Baseline sampling is shared across
/// measures.
pub fn property_table(
    handles: &[MeasureHandle],
    config: &TableConfig,
) -> Result<PropertyTable, HarnessError> {
    let baseline_verdicts = estimate_baseline_many(handles, &config.settings, &config.baseline)?;
    let mut rows = Vec::with_capacity(handles.len());
    for (handle, baseline_verdict) in handles.iter().zip(baseline_verdicts) {
        let verdicts = vec![
            check_maximal_agreement(handle, &config.suite)?,
            check_minimal_agreement(handle, &config.suite)?,
            check_empty_class_tolerance(handle, &config.suite)?,
            check_monotonicity(handle, &config.suite, &config.monotonicity)?,
            baseline_verdict,
        ];
        rows.push(MeasureRow {
            measure: handle.name().to_string(),
            verdicts,
        });
    }
    Ok(PropertyTable { rows })
}

/// The reference verdicts for the seven standard measures, in canonical
/// property order (max, min, tolerance, monotonicity, baseline).
pub fn expected_statuses() -> Vec<(&'static str, [VerdictStatus; 5])> {
    use VerdictStatus::{Conditional, NotApplicable, Satisfied, Violated};
    vec![
        (
            "h_edge",
            [Satisfied, Satisfied, Satisfied, Satisfied, Violated],
        ),
        (
            "h_node",
            [Satisfied, Satisfied, Satisfied, NotApplicable, Violated],
        ),
        (
            "h_class",
            [Satisfied, Violated, Violated, Violated, Violated],
        ),
        (
            "h_adj",
            [Satisfied, Violated, Satisfied, Conditional, Satisfied],
        ),
        (
            "h_mod",
            [Violated, Violated, Satisfied, Violated, Satisfied],
        ),
        (
            "h_bal",
            [Satisfied, Satisfied, Violated, Violated, Violated],
        ),
        (
            "h_bal_adj",
            [Satisfied, Violated, Violated, Violated, Satisfied],
        ),
    ]
}

/// Mismatches between `table` and [`expected_statuses`], one line each.
pub fn diff_against_expected(table: &PropertyTable) -> Vec<String> {
    let mut mismatches = Vec::new();
    for (measure, expected) in expected_statuses() {
        for (property, want) in PropertyName::ALL.iter().zip(expected) {
            match table.status(measure, *property) {
                Some(got) if got == want => {}
                Some(got) => mismatches.push(format!(
                    "{measure}/{}: expected {want:?}, got {got:?}",
                    property.as_str()
                )),
                None => mismatches.push(format!(
                    "{measure}/{}: missing from table",
                    property.as_str()
                )),
            }
        }
    }
    mismatches
}
