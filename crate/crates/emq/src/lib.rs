#![forbid(unsafe_code)]
//! Evaluation measures for quantification, with an axiomatic
//! property-checking harness.
//!
//! Quantification (prevalence estimation) predicts the distribution of
//! classes in a sample rather than the class of each item. Evaluating a
//! quantifier means scoring a predicted distribution `p̂` against the true
//! distribution `p` over the same codeframe, and different measures
//! disagree about which errors matter. This crate implements the nine
//! standard measures, states the formal properties that tell them apart,
//! and checks every measure against every property mechanically.
//!
//! # Modules
//!
//! - [`distributions`]: codeframes, validated prevalence vectors,
//!   additive smoothing, projection onto a binary sub-frame, and the
//!   perverse (worst-case) estimator.
//! - [`measures`]: AE, NAE, RAE, NRAE, SE, NSE, DR, KLD, NKLD, PD, and
//!   the binary-only NAS and NSS, each as a plain function and behind the
//!   [`MeasureId`] enum; tight upper bounds for the normalizations.
//! - [`axioms`]: the twelve properties, curated fixed counterexamples,
//!   seeded random search, and the measure-by-property matrix.
//! - [`evaluation`]: multi-sample scoring of CSV/JSON prevalence files
//!   into a JSON-serializable report with mean and median aggregates.
//! - [`plot`]: binary error surfaces sampled onto CSV grids.
//! - [`render`]: text rendering of verdicts, the property matrix, and the
//!   worked counterexample tables.
//!
//! # Measures
//!
//! All twelve measures vanish exactly at `p̂ = p` and are positive
//! elsewhere. The normalized variants divide by a tight upper bound
//! (attained at the perverse estimator, which predicts everything as the
//! rarest class), so NAE, NRAE, NSE, DR, NKLD, NAS, and NSS live in
//! `[0, 1]`. The full formula table is in the [`measures`] module docs.
//!
//! Measures that divide by a prevalence (RAE, NRAE, DR, KLD, NKLD, PD)
//! apply additive smoothing by default; the conventional strength for a
//! sample of `s` items is `epsilon = 1/(2s)`. With smoothing off they
//! refuse zero denominators with an error rather than inventing a value.
//! [`EvalContext`] carries the strength and policy.
//!
//! # Properties
//!
//! Eight properties apply to any measure: identity of indiscernibles
//! (IoI), non-negativity (NN), constant worst case (MAX), strict
//! monotonicity (MON), impartiality between over- and under-estimation
//! (IMP), relativity to class prevalence (REL), its negation-style
//! counterpart absoluteness (ABS), and independence under projection
//! (IND). Four binary variants (B-MON, B-IMP, B-REL, B-ABS) restate MON,
//! IMP, REL, and ABS on binary codeframes for the binary-only scores.
//!
//! [`check_property`] tries to falsify one (measure, property) pair: it
//! replays curated fixed scenarios first, then runs seeded random trials,
//! and returns a [`Verdict`] carrying a concrete [`Counterexample`] when
//! the property fails. [`property_matrix`] builds the full grid. Checks
//! are deterministic in (budget, seed, tolerance), and counterexamples
//! serialize to JSON so they replay exactly.
//!
//! # Quick start
//!
//! ```
//! use emq::{
//!     ae, check_property, evaluate, Codeframe, EvalContext, MeasureId,
//!     Prevalence, PropertyId,
//! };
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let frame = Codeframe::new(vec!["cat", "dog"])?;
//! let truth = Prevalence::new(frame.clone(), vec![0.2, 0.8])?;
//! let guess = Prevalence::new(frame, vec![0.25, 0.75])?;
//!
//! // Score one pair. AE is unsmoothed, so the raw context is enough.
//! let ctx = EvalContext::raw();
//! assert!((ae(&truth, &guess, &ctx)? - 0.05).abs() < 1e-12);
//!
//! // The same value behind the enum, for driving many measures at once.
//! let same = evaluate(MeasureId::Ae, &truth, &guess, &ctx)?;
//! assert!((same - 0.05).abs() < 1e-12);
//!
//! // Check a property: absolute error treats over- and under-estimation
//! // of the same magnitude alike.
//! let verdict = check_property(MeasureId::Ae, PropertyId::Imp, 100, 42, 1e-9)?;
//! assert!(!verdict.falsified());
//!
//! // KLD does not; the fixed scenario already falsifies it.
//! let verdict = check_property(MeasureId::Kld, PropertyId::Imp, 0, 42, 1e-9)?;
//! assert!(verdict.falsified());
//! # Ok(())
//! # }
//! ```
//!
//! # Numerics
//!
//! Everything is plain `f64`. Distribution constructors validate their
//! input (finite, nonnegative, summing to 1 within 1e-9) and then keep
//! already-normalized values verbatim, so serialization round trips are
//! bit-exact. Property checks compare within an explicit tolerance
//! (default 1e-9) rather than demanding exact float equality; the one
//! deliberate exception is documented at [`NKLD_MAX_TOLERANCE`].
//!
//! # Command line
//!
//! The `emq` binary exposes the same functionality: `eval` scores a
//! prevalence file, `axioms` runs property checks, `table1` prints the
//! measure-by-property matrix, `counterexamples` prints the four worked
//! tables, and `plotgrid` samples a binary error surface to CSV. Each
//! capability is also a runnable example in `examples/`.

pub mod axioms;
pub mod distributions;
pub mod evaluation;
pub mod measures;
pub mod plot;
pub mod render;

pub use axioms::{
    bmon_derivative, check_property, fixed_scenarios, property_matrix, test_scenario, AxiomError,
    CheckStatus, Counterexample, MatrixCell, MatrixRow, NamedValue, PropertyId, PropertyMatrix,
    Scenario, UnknownProperty, Verdict, NKLD_MAX_TOLERANCE, SCENARIO_EPSILON,
};

pub use distributions::{
    perverse_estimator, project, smooth, Codeframe, DistributionError, Prevalence,
    SmoothingConfig,
};
pub use evaluation::{
    evaluate_samples, ingest, ingest_path, Aggregate, EvaluationError, InputFormat,
    MultiSampleReport, RecordDiagnostic, SampleRecord, UnknownFormat,
};
pub use measures::{
    ae, dr, evaluate, kld, nae, nas, nkld, nrae, nse, nss, pd, rae, se, upper_bound, EvalContext,
    MeasureError, MeasureId, SmoothingPolicy, UnknownMeasure,
};
pub use plot::{plot_grid, GridPoint, PlotError, PlotGrid};
pub use render::{
    counterexample_tables, counterexample_tables_text, matrix_text, verdict_text,
    CounterexampleTable, TableRow,
};

/// Default seed for randomized property searches.
pub const DEFAULT_SEED: u64 = 20250817;

/// Default numeric tolerance for property-check comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Default number of random trials per property check.
pub const DEFAULT_BUDGET: u64 = 10_000;
