//! Prints the four worked counterexample tables and then walks their
//! structured form: which measures score the rows differently, and what
//! each difference says about the property under test.
//!
//! Run with: cargo run --example counterexample_tables

use emq::{counterexample_tables, counterexample_tables_text, MeasureId};

fn main() {
    // The rendered text is what the command line prints.
    print!("{}", counterexample_tables_text());

    // The same tables are available structurally for programmatic use.
    println!("\n== structured summary ==");
    for table in counterexample_tables() {
        let differing: Vec<&str> = MeasureId::MATRIX
            .iter()
            .zip(table.differs())
            .filter(|(_, &differs)| differs)
            .map(|(measure, _)| measure.acronym())
            .collect();
        println!(
            "{} ({} rows, probes {}): scores differ under {}",
            table.title(),
            table.rows().len(),
            table.property(),
            differing.join(", "),
        );
    }
}
