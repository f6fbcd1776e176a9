//! Builds the full measure-by-property matrix and prints it as a text
//! table, marking each cell `Y` (unfalsified) or `N` (falsified), plus a
//! digest of every falsified cell: which trial found the counterexample
//! and what the violating comparison was.
//!
//! Run with: cargo run --example property_matrix [budget [seed]]

use emq::{property_matrix, CheckStatus, DEFAULT_BUDGET, DEFAULT_SEED};

fn main() {
    let mut args = std::env::args().skip(1);
    let budget: u64 = args
        .next()
        .map(|s| s.parse().expect("budget must be a nonnegative integer"))
        .unwrap_or(DEFAULT_BUDGET);
    let seed: u64 = args
        .next()
        .map(|s| s.parse().expect("seed must be a nonnegative integer"))
        .unwrap_or(DEFAULT_SEED);

    let started = std::time::Instant::now();
    let matrix = property_matrix(budget, seed).expect("matrix construction succeeds");
    let elapsed = started.elapsed();

    println!("property matrix (budget {budget}, seed {seed})");
    println!();
    let header: Vec<String> = matrix.rows[0]
        .cells
        .iter()
        .map(|c| c.property.acronym().to_string())
        .collect();
    println!("{:>6} {}", "", header.join(" "));
    for row in &matrix.rows {
        let cells: Vec<String> = row
            .cells
            .iter()
            .map(|c| {
                let mark = match c.verdict.status {
                    CheckStatus::Unfalsified => "Y",
                    CheckStatus::Falsified => "N",
                };
                format!("{mark:>width$}", width = c.property.acronym().len())
            })
            .collect();
        println!("{:>6} {}", row.measure.acronym(), cells.join(" "));
    }

    println!();
    println!("falsified cells:");
    for row in &matrix.rows {
        for cell in &row.cells {
            if let Some(cex) = &cell.verdict.counterexample {
                println!(
                    "  {} x {} (checked as {}, trial {}): {}",
                    row.measure,
                    cell.property,
                    cell.checked_as,
                    cell.verdict.trials_run,
                    cex.comparison
                );
            }
        }
    }
    println!();
    println!("built in {elapsed:.2?}");
}
