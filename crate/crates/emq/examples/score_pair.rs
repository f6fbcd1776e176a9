//! Scores one (true, predicted) prevalence pair with every measure and
//! prints the values next to each measure's upper bound, so the raw
//! magnitudes and the normalized scores can be read side by side.
//!
//! Run with: cargo run --example score_pair [true_p1 [pred_p1]]
//!
//! The two optional arguments are the first-class prevalences of a
//! binary codeframe (defaults 0.2 and 0.25).

use emq::{evaluate, upper_bound, Codeframe, EvalContext, MeasureId, Prevalence};

fn main() {
    let mut args = std::env::args().skip(1);
    let true_p1: f64 = args
        .next()
        .map(|s| s.parse().expect("true prevalence must be a number"))
        .unwrap_or(0.2);
    let pred_p1: f64 = args
        .next()
        .map(|s| s.parse().expect("predicted prevalence must be a number"))
        .unwrap_or(0.25);

    let frame = Codeframe::new(vec!["positive", "negative"]).unwrap();
    let truth = Prevalence::new(frame.clone(), vec![true_p1, 1.0 - true_p1])
        .expect("true prevalences form a distribution");
    let guess = Prevalence::new(frame, vec![pred_p1, 1.0 - pred_p1])
        .expect("predicted prevalences form a distribution");

    // The conventional smoothing strength for a sample of 1000 items.
    let ctx = EvalContext::from_sample_size(1000).unwrap();

    println!("truth      ({true_p1}, {})", 1.0 - true_p1);
    println!("prediction ({pred_p1}, {})", 1.0 - pred_p1);
    println!("smoothing  epsilon {:e} where a measure asks for it", ctx.smoothing().epsilon());
    println!();
    println!("{:>6}  {:>14}  {:>14}", "", "value", "upper bound");
    for measure in MeasureId::ALL {
        let value = evaluate(measure, &truth, &guess, &ctx).expect("binary pair scores");
        match upper_bound(measure, &truth, &ctx) {
            Ok(bound) => println!("{:>6}  {value:>14.9}  {bound:>14.9}", measure.acronym()),
            Err(_) => println!("{:>6}  {value:>14.9}  {:>14}", measure.acronym(), "1 (by def.)"),
        }
    }
}
