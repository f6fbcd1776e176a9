//! Scores a batch of test samples two ways: records built in memory and
//! the same records ingested from CSV text, then prints the per-sample
//! scores, the aggregates, and the report's JSON form.
//!
//! Run with: cargo run --example multi_sample_eval

use std::io::Cursor;

use emq::{
    evaluate_samples, ingest, Codeframe, EvalContext, InputFormat, MeasureId, Prevalence,
    SampleRecord,
};

fn main() {
    let frame = Codeframe::new(vec!["positive", "negative"]).unwrap();
    let samples = [
        ("q1", [0.20, 0.80], [0.25, 0.75], Some(1_000)),
        ("q2", [0.20, 0.80], [0.15, 0.85], Some(1_000)),
        ("q3", [0.49, 0.51], [0.51, 0.49], Some(250)),
    ];

    // Route one: build validated records directly.
    let records: Vec<SampleRecord> = samples
        .iter()
        .map(|(id, truth, pred, size)| {
            SampleRecord::new(
                *id,
                Prevalence::new(frame.clone(), truth.to_vec()).unwrap(),
                Prevalence::new(frame.clone(), pred.to_vec()).unwrap(),
                *size,
            )
            .unwrap()
        })
        .collect();

    // Route two: the equivalent CSV, one line per (sample, class) pair.
    let mut csv = String::from("sample_id,class,true,pred\n");
    for (id, truth, pred, _) in &samples {
        for (k, label) in frame.labels().iter().enumerate() {
            csv.push_str(&format!("{id},{label},{},{}\n", truth[k], pred[k]));
        }
    }
    let ingested = ingest(Cursor::new(csv), InputFormat::Csv).unwrap();

    // A context with epsilon 0 lets each record smooth by its own sample
    // size; the CSV route carries no sizes, so it stays unsmoothed there.
    let ctx = EvalContext::raw();
    let measures = [MeasureId::Ae, MeasureId::Nae, MeasureId::Kld, MeasureId::Nkld];
    let report = evaluate_samples(&records, &measures, &ctx).unwrap();
    let from_csv = evaluate_samples(&ingested, &measures, &ctx).unwrap();

    println!("{:>4}  {:>10} {:>10} {:>10} {:>10}", "", "AE", "NAE", "KLD", "NKLD");
    for (sample_id, scores) in report.per_sample() {
        print!("{sample_id:>4}  ");
        for measure in &measures {
            print!("{:>10.6} ", scores[measure]);
        }
        println!();
    }
    println!();
    for measure in &measures {
        let agg = report.aggregate(*measure).unwrap();
        println!(
            "{:>4}  mean {:.6}  median {:.6}",
            measure.acronym(),
            agg.mean,
            agg.median
        );
    }

    // AE ignores smoothing, so the two routes agree on it exactly; KLD is
    // smoothed per sample size on route one only.
    let ae_match = (0..samples.len()).all(|i| {
        let id = samples[i].0;
        report.score(id, MeasureId::Ae) == from_csv.score(id, MeasureId::Ae)
    });
    println!("\nAE identical across both ingestion routes: {ae_match}");
    println!(
        "KLD on q1, smoothed by sample size vs raw: {:.6e} vs {:.6e}",
        report.score("q1", MeasureId::Kld).unwrap(),
        from_csv.score("q1", MeasureId::Kld).unwrap(),
    );

    let json = serde_json::to_string_pretty(&report).unwrap();
    println!("\nreport as JSON:\n{json}");
}
