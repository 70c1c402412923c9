//! Builds the per-measure property verdict table.
//!
//! Five properties per measure: maximal/minimal agreement, empty-class
//! tolerance, monotonicity under single-edge increments, and the constant
//! baseline under the configuration model. `cond` marks adjusted homophily's
//! monotonicity, which holds above a data-dependent bound and provably fails
//! below it.
//!
//! Run with: cargo run --release --example property_table

use graphchar::harness::{property_table, standard_measures, TableConfig, VerdictStatus};

fn main() {
    let config = TableConfig::default().with_trials(5_000, 60);
    let table = property_table(&standard_measures(), &config).unwrap();
    print!("{}", table.render_text());

    println!();
    for row in &table.rows {
        for verdict in &row.verdicts {
            if verdict.status == VerdictStatus::Violated {
                if let Some(witness) = &verdict.witness {
                    println!(
                        "{} / {}: {}",
                        row.measure,
                        verdict.property.as_str(),
                        witness.description
                    );
                    break; // one witness per measure keeps the output short
                }
            }
        }
    }
}
