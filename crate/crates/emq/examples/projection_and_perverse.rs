//! Demonstrates the two distribution transforms behind the property
//! definitions: projection onto a sub-codeframe (renormalizing so the
//! surviving classes keep their ratios) and the perverse estimator (the
//! prediction that maximizes every measure's error against a truth).
//!
//! Run with: cargo run --example projection_and_perverse

use emq::{
    evaluate, perverse_estimator, project, upper_bound, Codeframe, EvalContext, MeasureId,
    Prevalence,
};

fn main() {
    let frame = Codeframe::new(vec!["news", "sport", "culture", "weather"]).unwrap();
    let truth = Prevalence::new(frame, vec![0.1, 0.4, 0.3, 0.2]).unwrap();
    println!("truth over {:?}: {:?}", truth.codeframe().labels(), truth.values());

    // Projection keeps the ratio 0.1 : 0.3 between the surviving classes.
    let onto = ["news", "culture"];
    let projected = project(&truth, &onto).unwrap();
    println!(
        "projected onto {:?}: {:?} (ratio preserved: {:.4} = {:.4})",
        onto,
        projected.values(),
        truth.values()[0] / truth.values()[2],
        projected.values()[0] / projected.values()[1],
    );

    // The perverse estimator puts all mass on the least prevalent class.
    let worst = perverse_estimator(&truth);
    println!("\nperverse estimator: {:?}", worst.values());

    // It attains the upper bound of every unnormalized measure.
    let ctx = EvalContext::with_epsilon(5e-7).unwrap();
    println!("\n{:>6}  {:>16}  {:>16}", "", "at the perverse", "upper bound");
    for measure in [
        MeasureId::Ae,
        MeasureId::Rae,
        MeasureId::Se,
        MeasureId::Kld,
        MeasureId::Pd,
    ] {
        let value = evaluate(measure, &truth, &worst, &ctx).unwrap();
        let bound = upper_bound(measure, &truth, &ctx).unwrap();
        println!("{:>6}  {value:>16.6}  {bound:>16.6}", measure.acronym());
    }

    // And it drives every normalized measure to the top of its range.
    println!();
    for measure in [MeasureId::Nae, MeasureId::Nrae, MeasureId::Nse, MeasureId::Nkld] {
        let value = evaluate(measure, &truth, &worst, &ctx).unwrap();
        println!("{:>6}  {value:>16.9}", measure.acronym());
    }
}
