//! Shows how the smoothing context changes a score: the per-measure
//! default (smooth only the measures whose definitions divide by a
//! prevalence), forcing smoothing on for everything, forcing it off, and
//! what happens to KLD at a hard zero with no smoothing to rescue it.
//!
//! Run with: cargo run --example smoothing_policies

use emq::{evaluate, EvalContext, MeasureId, Prevalence, SmoothingPolicy};

fn main() {
    let frame = emq::Codeframe::new(vec!["a", "b", "c"]).unwrap();
    let truth = Prevalence::new(frame.clone(), vec![0.1, 0.3, 0.6]).unwrap();
    let guess = Prevalence::new(frame.clone(), vec![0.2, 0.3, 0.5]).unwrap();

    let per_measure = EvalContext::from_sample_size(500).unwrap();
    let force_on = per_measure.with_policy(SmoothingPolicy::ForceOn);
    let force_off = per_measure.with_policy(SmoothingPolicy::ForceOff);

    println!(
        "epsilon {:e} (from a sample of 500 items)",
        per_measure.smoothing().epsilon()
    );
    println!();
    println!(
        "{:>6}  {:>14}  {:>14}  {:>14}",
        "", "per-measure", "force on", "force off"
    );
    for measure in [MeasureId::Ae, MeasureId::Se, MeasureId::Rae, MeasureId::Kld] {
        let default = evaluate(measure, &truth, &guess, &per_measure).unwrap();
        let on = evaluate(measure, &truth, &guess, &force_on).unwrap();
        let off = evaluate(measure, &truth, &guess, &force_off).unwrap();
        println!(
            "{:>6}  {default:>14.9}  {on:>14.9}  {off:>14.9}",
            measure.acronym()
        );
    }

    // AE and SE ignore the per-measure epsilon (their columns match the
    // forced-off ones); RAE and KLD smooth by default.

    // A prediction that zeroes a class the truth still has makes raw KLD
    // meaningless; with no smoothing the measure refuses.
    let hard_zero = Prevalence::new(frame, vec![0.0, 0.4, 0.6]).unwrap();
    let raw = EvalContext::raw();
    match evaluate(MeasureId::Kld, &truth, &hard_zero, &raw) {
        Err(err) => println!("\nraw KLD at a zeroed class: {err}"),
        Ok(value) => println!("\nraw KLD at a zeroed class unexpectedly scored {value}"),
    }
    let rescued = evaluate(MeasureId::Kld, &truth, &hard_zero, &per_measure).unwrap();
    println!("smoothed KLD at the same pair: {rescued:.9}");
}
