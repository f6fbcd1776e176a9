//! Checks a single measure against a single property and prints the
//! verdict, including the concrete counterexample when the check
//! falsifies the property.
//!
//! Run with: cargo run --example check_one_property [measure [property [budget [seed]]]]

use emq::{check_property, verdict_text, MeasureId, PropertyId, DEFAULT_SEED, DEFAULT_TOLERANCE};

fn main() {
    let mut args = std::env::args().skip(1);
    let measure: MeasureId = args
        .next()
        .unwrap_or_else(|| "kld".to_string())
        .parse()
        .expect("unknown measure");
    let property: PropertyId = args
        .next()
        .unwrap_or_else(|| "imp".to_string())
        .parse()
        .expect("unknown property");
    let budget: u64 = args
        .next()
        .map(|raw| raw.parse().expect("budget must be an integer"))
        .unwrap_or(2_000);
    let seed: u64 = args
        .next()
        .map(|raw| raw.parse().expect("seed must be an integer"))
        .unwrap_or(DEFAULT_SEED);

    let verdict = check_property(measure, property, budget, seed, DEFAULT_TOLERANCE)
        .expect("incompatible measure/property pair");

    println!("{}", verdict_text(&verdict));

    // The same information is available structurally.
    if let Some(example) = &verdict.counterexample {
        println!("\nstructured counterexample:");
        println!("  scenario: {:?}", example.scenario);
        println!("  values:   {:?}", example.values);
        if let Some(label) = example.scenario.label() {
            println!("  label:    {label}");
        }
    } else {
        println!("\nno counterexample found in {} trials.", verdict.trials_run);
    }
}
