//! The axiomatic property-checking harness.
//!
//! Twelve properties describe how an evaluation measure ought to behave:
//!
//! | Property | Conclusion |
//! |----------|------------|
//! | `ioi`    | zero exactly at the true distribution, positive elsewhere |
//! | `nn`     | never negative |
//! | `max`    | worst-case value does not depend on the true distribution |
//! | `mon`    | moving prediction mass further from the truth strictly increases the value |
//! | `imp`    | over- and under-estimation by the same amount score the same |
//! | `rel`    | the same mistake hurts strictly more on rarer classes |
//! | `abs`    | the same mistake scores the same regardless of class prevalence |
//! | `ind`    | the comparison of two predictions is preserved under projection onto a sub-codeframe the predictions agree outside of |
//! | `b-mon`  | `mon` restricted to binary codeframes (underestimation side) |
//! | `b-imp`  | `imp` restricted to binary codeframes |
//! | `b-rel`  | `rel` restricted to binary codeframes |
//! | `b-abs`  | `abs` restricted to binary codeframes |
//!
//! A property is checked against a measure by *searching for
//! counterexamples*: concrete scenarios that satisfy the property's
//! hypothesis but violate its conclusion. [`check_property`] first tries
//! the crate's curated fixed scenarios, then runs a seeded randomized
//! search; a [`Verdict`] reports either `Falsified` with a replayable
//! [`Counterexample`] or `Unfalsified` after the full trial budget.
//! Checks never prove a property; they only fail to falsify it.
//!
//! Key invariants:
//!
//! - verdicts are deterministic functions of (measure, property, budget,
//!   seed, tolerance);
//! - every counterexample embeds its full scenario, and re-running
//!   [`test_scenario`] on it reproduces the violation bit for bit;
//! - scenario construction validates the property hypothesis, so a
//!   counterexample can never be an artifact of malformed inputs.

mod scenarios;

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::{perverse_estimator, project, DistributionError, Prevalence};
use crate::measures::{evaluate, EvalContext, MeasureError, MeasureId};

pub use scenarios::{fixed_scenarios, Scenario};

/// Smoothing strength used by the fixed scenarios and the randomized
/// generators (except independence scenarios, which are exact at zero
/// smoothing): the `1/(2s)` convention for a sample of one million items.
pub const SCENARIO_EPSILON: f64 = 5e-7;

/// Comparison tolerance for the `max` conclusion when the measure is
/// NKLD. NKLD's worst case approaches 1 but varies with the true
/// distribution on the order of 2.5e-3 before its logistic rescaling
/// saturates, so the conventional reading treats its bound as constant;
/// a tighter tolerance would falsify `max` on that saturation artifact
/// alone.
pub const NKLD_MAX_TOLERANCE: f64 = 5e-3;

/// Errors from the property-checking harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AxiomError {
    /// Binary-only measures (NAS, NSS) pair only with the binary property
    /// variants.
    #[error("{measure} is binary-only and pairs only with b-mon, b-imp, b-rel, b-abs, not {property}")]
    IncompatiblePair {
        measure: MeasureId,
        property: PropertyId,
    },
    /// Only `max`, `imp`, `rel`, `abs` and the binary variants of the
    /// latter three have curated fixed scenarios.
    #[error("no fixed scenarios exist for {property}")]
    NoFixedScenario { property: PropertyId },
    /// Closed-form monotonicity derivatives exist for KLD and PD only.
    #[error("no closed-form monotonicity derivative for {measure}; only kld and pd have one")]
    UnsupportedMeasure { measure: MeasureId },
    /// The derivative arguments left the open domain.
    #[error("derivative domain error: {reason}")]
    DomainError { reason: String },
    /// The scenario data does not satisfy the property's hypothesis.
    #[error("invalid {property} scenario: {reason}")]
    InvalidScenario {
        property: PropertyId,
        reason: String,
    },
    /// Tolerances must be finite and nonnegative.
    #[error("tolerance must be finite and nonnegative, got {0}")]
    InvalidTolerance(f64),
    /// A measure evaluation inside the check failed.
    #[error(transparent)]
    Measure(#[from] MeasureError),
    /// A distribution operation inside the check failed.
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

impl AxiomError {
    /// Stable machine-readable token naming the error kind, fit for
    /// diagnostics such as `error[IncompatiblePair]: ...`.
    pub fn code(&self) -> &'static str {
        match self {
            AxiomError::IncompatiblePair { .. } => "IncompatiblePair",
            AxiomError::NoFixedScenario { .. } => "NoFixedScenario",
            AxiomError::UnsupportedMeasure { .. } => "UnsupportedMeasure",
            AxiomError::DomainError { .. } => "DomainError",
            AxiomError::InvalidScenario { .. } => "InvalidScenario",
            AxiomError::InvalidTolerance(_) => "InvalidTolerance",
            AxiomError::Measure(_) => "MeasureError",
            AxiomError::Distribution(_) => "DistributionError",
        }
    }
}

/// Identifier of one property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    /// Identity of indiscernibles.
    Ioi,
    /// Non-negativity.
    Nn,
    /// Constant worst case.
    Max,
    /// Strict monotonicity.
    Mon,
    /// Impartiality between over- and under-estimation.
    Imp,
    /// Relativity to class prevalence.
    Rel,
    /// Absoluteness from class prevalence.
    Abs,
    /// Independence under projection.
    Ind,
    /// Binary strict monotonicity.
    BMon,
    /// Binary impartiality.
    BImp,
    /// Binary relativity.
    BRel,
    /// Binary absoluteness.
    BAbs,
}

impl PropertyId {
    /// The eight general properties, in the matrix's column order.
    pub const GENERAL: [PropertyId; 8] = [
        PropertyId::Ioi,
        PropertyId::Nn,
        PropertyId::Max,
        PropertyId::Mon,
        PropertyId::Imp,
        PropertyId::Rel,
        PropertyId::Abs,
        PropertyId::Ind,
    ];

    /// Every property this crate implements.
    pub const ALL: [PropertyId; 12] = [
        PropertyId::Ioi,
        PropertyId::Nn,
        PropertyId::Max,
        PropertyId::Mon,
        PropertyId::Imp,
        PropertyId::Rel,
        PropertyId::Abs,
        PropertyId::Ind,
        PropertyId::BMon,
        PropertyId::BImp,
        PropertyId::BRel,
        PropertyId::BAbs,
    ];

    /// The conventional printed name.
    pub fn acronym(self) -> &'static str {
        match self {
            PropertyId::Ioi => "IoI",
            PropertyId::Nn => "NN",
            PropertyId::Max => "MAX",
            PropertyId::Mon => "MON",
            PropertyId::Imp => "IMP",
            PropertyId::Rel => "REL",
            PropertyId::Abs => "ABS",
            PropertyId::Ind => "IND",
            PropertyId::BMon => "B-MON",
            PropertyId::BImp => "B-IMP",
            PropertyId::BRel => "B-REL",
            PropertyId::BAbs => "B-ABS",
        }
    }

    /// True for the four binary-codeframe variants.
    pub fn is_binary_variant(self) -> bool {
        matches!(
            self,
            PropertyId::BMon | PropertyId::BImp | PropertyId::BRel | PropertyId::BAbs
        )
    }

    /// The binary variant of a general property, where one exists.
    pub fn binary_variant(self) -> Option<PropertyId> {
        match self {
            PropertyId::Mon => Some(PropertyId::BMon),
            PropertyId::Imp => Some(PropertyId::BImp),
            PropertyId::Rel => Some(PropertyId::BRel),
            PropertyId::Abs => Some(PropertyId::BAbs),
            _ => None,
        }
    }

    fn index(self) -> u64 {
        PropertyId::ALL
            .iter()
            .position(|p| *p == self)
            .expect("every property is listed in ALL") as u64
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropertyId::Ioi => "ioi",
            PropertyId::Nn => "nn",
            PropertyId::Max => "max",
            PropertyId::Mon => "mon",
            PropertyId::Imp => "imp",
            PropertyId::Rel => "rel",
            PropertyId::Abs => "abs",
            PropertyId::Ind => "ind",
            PropertyId::BMon => "b-mon",
            PropertyId::BImp => "b-imp",
            PropertyId::BRel => "b-rel",
            PropertyId::BAbs => "b-abs",
        })
    }
}

/// Error from parsing a property name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown property {0:?} (expected one of ioi, nn, max, mon, imp, rel, abs, ind, b-mon, b-imp, b-rel, b-abs)")]
pub struct UnknownProperty(pub String);

impl FromStr for PropertyId {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ioi" => Ok(PropertyId::Ioi),
            "nn" => Ok(PropertyId::Nn),
            "max" => Ok(PropertyId::Max),
            "mon" => Ok(PropertyId::Mon),
            "imp" => Ok(PropertyId::Imp),
            "rel" => Ok(PropertyId::Rel),
            "abs" => Ok(PropertyId::Abs),
            "ind" => Ok(PropertyId::Ind),
            "b-mon" | "bmon" => Ok(PropertyId::BMon),
            "b-imp" | "bimp" => Ok(PropertyId::BImp),
            "b-rel" | "brel" => Ok(PropertyId::BRel),
            "b-abs" | "babs" => Ok(PropertyId::BAbs),
            _ => Err(UnknownProperty(s.to_string())),
        }
    }
}

/// Outcome of a property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    /// No counterexample was found within the budget. Not a proof.
    Unfalsified,
    /// A concrete counterexample violates the property's conclusion.
    Falsified,
}

/// One evaluated quantity inside a counterexample, with a display name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

impl NamedValue {
    fn new(name: impl Into<String>, value: f64) -> Self {
        NamedValue {
            name: name.into(),
            value,
        }
    }
}

/// A scenario that satisfies a property's hypothesis but violates its
/// conclusion for some measure. Replayable: feeding `scenario` back to
/// [`test_scenario`] reproduces `values` bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// The violating scenario, hypothesis-validated.
    pub scenario: Scenario,
    /// Human-readable statement of what the conclusion required and what
    /// happened instead.
    pub comparison: String,
    /// The evaluated quantities behind `comparison`.
    pub values: Vec<NamedValue>,
}

/// Result of checking one (measure, property) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub measure: MeasureId,
    pub property: PropertyId,
    pub status: CheckStatus,
    /// Present exactly when `status` is `Falsified`.
    pub counterexample: Option<Counterexample>,
    /// Random trials executed (fixed scenarios are not counted).
    pub trials_run: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub budget: u64,
}

impl Verdict {
    /// True when the check found a counterexample.
    pub fn falsified(&self) -> bool {
        self.status == CheckStatus::Falsified
    }
}

/// The property matrix: one row per measure, one cell per general
/// property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyMatrix {
    pub budget: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub rows: Vec<MatrixRow>,
}

/// One matrix row: a measure and its eight property cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRow {
    pub measure: MeasureId,
    pub cells: Vec<MatrixCell>,
}

/// One matrix cell. `property` is the column; `checked_as` records
/// whether the check ran on the property itself or on its binary
/// reformulation (used when the measure's independence check did not
/// falsify, which is what licenses the reduction to binary codeframes).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixCell {
    pub property: PropertyId,
    pub checked_as: PropertyId,
    pub verdict: Verdict,
}

impl PropertyMatrix {
    /// The cell for `measure` and general `property`, if present.
    pub fn cell(&self, measure: MeasureId, property: PropertyId) -> Option<&MatrixCell> {
        self.rows
            .iter()
            .find(|r| r.measure == measure)?
            .cells
            .iter()
            .find(|c| c.property == property)
    }
}

/// 64-bit finalizer with full avalanche; used to derive independent
/// per-trial seeds from (master seed, stream, trial index).
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn trial_seed(seed: u64, stream: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(stream ^ splitmix64(trial)))
}

fn stream_of(measure: MeasureId, property: PropertyId) -> u64 {
    let measure_index = MeasureId::ALL
        .iter()
        .position(|m| *m == measure)
        .expect("every measure is listed in ALL") as u64;
    (measure_index << 8) | property.index()
}

fn validate_tolerance(tolerance: f64) -> Result<(), AxiomError> {
    if !tolerance.is_finite() || tolerance < 0.0 {
        return Err(AxiomError::InvalidTolerance(tolerance));
    }
    Ok(())
}

fn check_compatible(measure: MeasureId, property: PropertyId) -> Result<(), AxiomError> {
    if measure.requires_binary() && !property.is_binary_variant() {
        return Err(AxiomError::IncompatiblePair { measure, property });
    }
    Ok(())
}

/// Largest value of `measure` against the true distribution `p` over a
/// deterministic candidate set: every vertex of the simplex, the perverse
/// estimator, the uniform distribution, and on binary codeframes a dense
/// 201-point sweep of predictions. For every measure in this crate the
/// worst prediction is the perverse estimator, which the set contains, so
/// this computes the true supremum.
fn supremum(measure: MeasureId, p: &Prevalence, ctx: &EvalContext) -> Result<f64, AxiomError> {
    let n = p.len();
    let frame = p.codeframe().clone();
    let mut candidates: Vec<Prevalence> = Vec::new();
    for i in 0..n {
        let values = (0..n).map(|j| if j == i { 1.0 } else { 0.0 }).collect();
        candidates.push(Prevalence::new(frame.clone(), values)?);
    }
    candidates.push(perverse_estimator(p));
    candidates.push(Prevalence::new(frame.clone(), vec![1.0 / n as f64; n])?);
    if n == 2 {
        for i in 0..=200 {
            let x = i as f64 / 200.0;
            candidates.push(Prevalence::new(frame.clone(), vec![x, 1.0 - x])?);
        }
    }
    let mut best = f64::NEG_INFINITY;
    for candidate in &candidates {
        let d = evaluate(measure, p, candidate, ctx)?;
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Evaluates one scenario against one measure and reports a
/// counterexample when the property's conclusion is violated beyond
/// `tolerance`.
///
/// Deterministic and free of randomness: the same inputs always produce
/// the same result, so counterexamples replay exactly. Strict conclusions
/// (`mon`, `rel` and binary variants) count as violated when the required
/// margin is not above `tolerance`; equality conclusions when the
/// difference exceeds it; the independence equivalence only when the two
/// orderings are decisively opposite (both margins beyond `tolerance`).
// Comparisons are written negated (`!(x <= tolerance)` rather than
// `x > tolerance`) so that a NaN score counts as a violation instead of
// silently passing the check.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn test_scenario(
    measure: MeasureId,
    scenario: &Scenario,
    tolerance: f64,
) -> Result<Option<Counterexample>, AxiomError> {
    validate_tolerance(tolerance)?;
    check_compatible(measure, scenario.property())?;
    let ctx = ctx_for(scenario);
    let cex = |comparison: String, values: Vec<NamedValue>| {
        Some(Counterexample {
            scenario: scenario.clone(),
            comparison,
            values,
        })
    };
    match scenario.property() {
        PropertyId::Ioi => {
            let p = &scenario.true_dists()[0];
            let p_hat = &scenario.pred_dists()[0];
            let at_truth = evaluate(measure, p, p, &ctx)?;
            if !(at_truth.abs() <= tolerance) {
                return Ok(cex(
                    format!(
                        "value at the true distribution itself is {at_truth:e}, not 0"
                    ),
                    vec![NamedValue::new("D(p, p)", at_truth)],
                ));
            }
            if p_hat.values() != p.values() {
                let elsewhere = evaluate(measure, p, p_hat, &ctx)?;
                if !(elsewhere > tolerance) {
                    return Ok(cex(
                        format!(
                            "value {elsewhere:e} at a distinct prediction is not positive beyond tolerance"
                        ),
                        vec![NamedValue::new("D(p, prediction)", elsewhere)],
                    ));
                }
            }
            Ok(None)
        }
        PropertyId::Nn => {
            let p = &scenario.true_dists()[0];
            let p_hat = &scenario.pred_dists()[0];
            let d = evaluate(measure, p, p_hat, &ctx)?;
            if !(d >= -tolerance) {
                return Ok(cex(
                    format!("value {d:e} is negative beyond tolerance"),
                    vec![NamedValue::new("D(p, prediction)", d)],
                ));
            }
            Ok(None)
        }
        PropertyId::Max => {
            let sup1 = supremum(measure, &scenario.true_dists()[0], &ctx)?;
            let sup2 = supremum(measure, &scenario.true_dists()[1], &ctx)?;
            let tau = if measure == MeasureId::Nkld {
                tolerance.max(NKLD_MAX_TOLERANCE)
            } else {
                tolerance
            };
            if !((sup1 - sup2).abs() <= tau) {
                return Ok(cex(
                    format!(
                        "worst case {sup1:.6} under the first truth differs from {sup2:.6} under the second; a constant worst case was required"
                    ),
                    vec![
                        NamedValue::new("sup D(p1, .)", sup1),
                        NamedValue::new("sup D(p2, .)", sup2),
                    ],
                ));
            }
            Ok(None)
        }
        PropertyId::Mon | PropertyId::BMon => {
            let p = &scenario.true_dists()[0];
            let closer = evaluate(measure, p, &scenario.pred_dists()[0], &ctx)?;
            let farther = evaluate(measure, p, &scenario.pred_dists()[1], &ctx)?;
            if !(farther - closer > tolerance) {
                return Ok(cex(
                    format!(
                        "the strictly worse prediction scores {farther:.9}, not strictly above the better one's {closer:.9}"
                    ),
                    vec![
                        NamedValue::new("D(p, closer prediction)", closer),
                        NamedValue::new("D(p, farther prediction)", farther),
                    ],
                ));
            }
            Ok(None)
        }
        PropertyId::Imp | PropertyId::BImp => {
            let p = &scenario.true_dists()[0];
            let over = evaluate(measure, p, &scenario.pred_dists()[0], &ctx)?;
            let under = evaluate(measure, p, &scenario.pred_dists()[1], &ctx)?;
            if !((over - under).abs() <= tolerance) {
                return Ok(cex(
                    format!(
                        "overestimation scores {over:.9} but the mirror underestimation scores {under:.9}; equality was required"
                    ),
                    vec![
                        NamedValue::new("D(p, overestimation)", over),
                        NamedValue::new("D(p, underestimation)", under),
                    ],
                ));
            }
            Ok(None)
        }
        PropertyId::Rel | PropertyId::BRel => {
            let d1 = evaluate(
                measure,
                &scenario.true_dists()[0],
                &scenario.pred_dists()[0],
                &ctx,
            )?;
            let d2 = evaluate(
                measure,
                &scenario.true_dists()[1],
                &scenario.pred_dists()[1],
                &ctx,
            )?;
            if !(d1 - d2 > tolerance) {
                return Ok(cex(
                    format!(
                        "the mistake on the rarer class scores {d1:.9}, not strictly above {d2:.9} on the more frequent one"
                    ),
                    vec![
                        NamedValue::new("D(p1, prediction1)", d1),
                        NamedValue::new("D(p2, prediction2)", d2),
                    ],
                ));
            }
            Ok(None)
        }
        PropertyId::Abs | PropertyId::BAbs => {
            let d1 = evaluate(
                measure,
                &scenario.true_dists()[0],
                &scenario.pred_dists()[0],
                &ctx,
            )?;
            let d2 = evaluate(
                measure,
                &scenario.true_dists()[1],
                &scenario.pred_dists()[1],
                &ctx,
            )?;
            if !((d1 - d2).abs() <= tolerance) {
                return Ok(cex(
                    format!(
                        "the same mistake scores {d1:.9} at one prevalence profile but {d2:.9} at the other; equality was required"
                    ),
                    vec![
                        NamedValue::new("D(p1, prediction1)", d1),
                        NamedValue::new("D(p2, prediction2)", d2),
                    ],
                ));
            }
            Ok(None)
        }
        PropertyId::Ind => {
            let p = &scenario.true_dists()[0];
            let pred1 = &scenario.pred_dists()[0];
            let pred2 = &scenario.pred_dists()[1];
            let block = scenario.block().expect("ind scenarios carry a block");
            let full1 = evaluate(measure, p, pred1, &ctx)?;
            let full2 = evaluate(measure, p, pred2, &ctx)?;
            let p_proj = project(p, block)?;
            let pred1_proj = project(pred1, block)?;
            let pred2_proj = project(pred2, block)?;
            let proj1 = evaluate(measure, &p_proj, &pred1_proj, &ctx)?;
            let proj2 = evaluate(measure, &p_proj, &pred2_proj, &ctx)?;
            let full_margin = full2 - full1;
            let proj_margin = proj2 - proj1;
            let opposite = (full_margin > tolerance && proj_margin < -tolerance)
                || (full_margin < -tolerance && proj_margin > tolerance);
            if opposite {
                return Ok(cex(
                    format!(
                        "the full-codeframe comparison (margin {full_margin:e}) and the projected comparison (margin {proj_margin:e}) order the two predictions oppositely"
                    ),
                    vec![
                        NamedValue::new("D(p, prediction1)", full1),
                        NamedValue::new("D(p, prediction2)", full2),
                        NamedValue::new("D(p|block, prediction1|block)", proj1),
                        NamedValue::new("D(p|block, prediction2|block)", proj2),
                    ],
                ));
            }
            Ok(None)
        }
    }
}

fn ctx_for(scenario: &Scenario) -> EvalContext {
    EvalContext::with_epsilon(scenario.smoothing().epsilon())
        .expect("scenario smoothing is validated at construction")
}

/// Checks `property` against `measure`: fixed scenarios first, then
/// `budget` seeded random trials. Returns `Falsified` with the first
/// counterexample found, else `Unfalsified`.
///
/// Deterministic in all arguments. A budget of 0 runs the fixed
/// scenarios alone. Binary-only measures pair only with binary property
/// variants ([`AxiomError::IncompatiblePair`] otherwise).
pub fn check_property(
    measure: MeasureId,
    property: PropertyId,
    budget: u64,
    seed: u64,
    tolerance: f64,
) -> Result<Verdict, AxiomError> {
    validate_tolerance(tolerance)?;
    check_compatible(measure, property)?;
    let verdict = |status, counterexample, trials_run| Verdict {
        measure,
        property,
        status,
        counterexample,
        trials_run,
        seed,
        tolerance,
        budget,
    };
    if let Ok(fixed) = fixed_scenarios(property) {
        for scenario in &fixed {
            if let Some(cex) = test_scenario(measure, scenario, tolerance)? {
                return Ok(verdict(CheckStatus::Falsified, Some(cex), 0));
            }
        }
    }
    let stream = stream_of(measure, property);
    for trial in 0..budget {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, stream, trial));
        let scenario = scenarios::generate(property, &mut rng);
        if let Some(cex) = test_scenario(measure, &scenario, tolerance)? {
            return Ok(verdict(CheckStatus::Falsified, Some(cex), trial + 1));
        }
    }
    Ok(verdict(CheckStatus::Unfalsified, None, budget))
}

/// Builds the full property matrix: the nine matrix measures against the
/// eight general properties, each cell a [`check_property`] verdict with
/// [`crate::DEFAULT_TOLERANCE`].
///
/// For each measure the independence cell is checked first; while
/// independence stands unfalsified, the monotonicity, impartiality,
/// relativity, and absoluteness cells are checked through their binary
/// reformulations (projection onto the two affected classes preserves the
/// comparisons), which is both faster and better conditioned. If
/// independence is falsified for a measure, those four cells fall back to
/// their general forms. The cell records which form ran in `checked_as`.
pub fn property_matrix(budget: u64, seed: u64) -> Result<PropertyMatrix, AxiomError> {
    let tolerance = crate::DEFAULT_TOLERANCE;
    let mut rows = Vec::with_capacity(MeasureId::MATRIX.len());
    for measure in MeasureId::MATRIX {
        let ind = check_property(measure, PropertyId::Ind, budget, seed, tolerance)?;
        let reduce_to_binary = !ind.falsified();
        let mut cells = Vec::with_capacity(PropertyId::GENERAL.len());
        for property in PropertyId::GENERAL {
            let cell = if property == PropertyId::Ind {
                MatrixCell {
                    property,
                    checked_as: property,
                    verdict: ind.clone(),
                }
            } else {
                let checked_as = match property.binary_variant() {
                    Some(binary) if reduce_to_binary => binary,
                    _ => property,
                };
                let verdict = check_property(measure, checked_as, budget, seed, tolerance)?;
                MatrixCell {
                    property,
                    checked_as,
                    verdict,
                }
            };
            cells.push(cell);
        }
        rows.push(MatrixRow { measure, cells });
    }
    Ok(PropertyMatrix {
        budget,
        seed,
        tolerance,
        rows,
    })
}

/// Magnitude of the rate at which a binary divergence grows as the
/// prediction moves away from the truth: for true prevalence `a` and
/// predicted prevalence `x` (both for the same class, both in the open
/// interval `(0, 1)`, with `x != a`),
///
/// - KLD: `abs(a − x) / (x (1 − x))`
/// - PD:  `abs(a − x) (a + x − 2 a x) / (x² (1 − x)²)`
///
/// Both are strictly positive on their whole domain, which is the
/// analytic content of binary monotonicity for these measures: the error
/// strictly increases in every direction away from the truth.
pub fn bmon_derivative(measure: MeasureId, a: f64, x: f64) -> Result<f64, AxiomError> {
    if !matches!(measure, MeasureId::Kld | MeasureId::Pd) {
        return Err(AxiomError::UnsupportedMeasure { measure });
    }
    if !(a.is_finite() && x.is_finite() && 0.0 < a && a < 1.0 && 0.0 < x && x < 1.0) {
        return Err(AxiomError::DomainError {
            reason: format!("a = {a} and x = {x} must both lie strictly inside (0, 1)"),
        });
    }
    if a == x {
        return Err(AxiomError::DomainError {
            reason: format!("the derivative changes sign at x = a = {a}; evaluate off the truth"),
        });
    }
    let value = match measure {
        MeasureId::Kld => (a - x).abs() / (x * (1.0 - x)),
        MeasureId::Pd => {
            (a - x).abs() * (a + x - 2.0 * a * x) / (x * x * (1.0 - x) * (1.0 - x))
        }
        _ => unreachable!("filtered above"),
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Codeframe, SmoothingConfig};

    fn prev(values: &[f64]) -> Prevalence {
        Prevalence::new(Codeframe::of_size(values.len()).unwrap(), values.to_vec()).unwrap()
    }

    fn eps_cfg() -> SmoothingConfig {
        SmoothingConfig::with_epsilon(SCENARIO_EPSILON).unwrap()
    }

    // === identifier plumbing ===

    #[test]
    fn property_names_round_trip_and_accept_hyphenless_binary_forms() {
        for p in PropertyId::ALL {
            assert_eq!(p.to_string().parse::<PropertyId>().unwrap(), p);
        }
        assert_eq!("bmon".parse::<PropertyId>().unwrap(), PropertyId::BMon);
        assert_eq!("B-REL".parse::<PropertyId>().unwrap(), PropertyId::BRel);
        assert!("monotone".parse::<PropertyId>().is_err());
    }

    #[test]
    fn serde_names_use_kebab_case() {
        assert_eq!(serde_json::to_string(&PropertyId::BImp).unwrap(), "\"b-imp\"");
        let p: PropertyId = serde_json::from_str("\"ind\"").unwrap();
        assert_eq!(p, PropertyId::Ind);
    }

    #[test]
    fn binary_variants_map_back_to_their_general_forms() {
        assert_eq!(PropertyId::Mon.binary_variant(), Some(PropertyId::BMon));
        assert_eq!(PropertyId::Ioi.binary_variant(), None);
        assert!(PropertyId::BAbs.is_binary_variant());
        assert!(!PropertyId::Abs.is_binary_variant());
    }

    // === compatibility and argument validation ===

    #[test]
    fn binary_only_measures_reject_general_properties() {
        let err = check_property(MeasureId::Nas, PropertyId::Ioi, 10, 1, 1e-9).unwrap_err();
        assert_eq!(
            err,
            AxiomError::IncompatiblePair {
                measure: MeasureId::Nas,
                property: PropertyId::Ioi
            }
        );
        assert_eq!(err.code(), "IncompatiblePair");
        assert!(check_property(MeasureId::Nas, PropertyId::BImp, 10, 1, 1e-9).is_ok());
    }

    #[test]
    fn tolerances_must_be_finite_and_nonnegative() {
        for bad in [-1e-9, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                check_property(MeasureId::Ae, PropertyId::Nn, 1, 1, bad),
                Err(AxiomError::InvalidTolerance(_))
            ));
        }
    }

    // === the deterministic supremum ===

    #[test]
    fn supremum_is_attained_at_the_perverse_estimator() {
        let ctx = EvalContext::with_epsilon(SCENARIO_EPSILON).unwrap();
        for values in [vec![0.01, 0.99], vec![0.3, 0.2, 0.5]] {
            let p = prev(&values);
            let perverse = perverse_estimator(&p);
            for m in MeasureId::MATRIX {
                let sup = supremum(m, &p, &ctx).unwrap();
                let at_perverse = evaluate(m, &p, &perverse, &ctx).unwrap();
                assert!(
                    sup <= at_perverse * (1.0 + 1e-12) + 1e-15,
                    "{m}: supremum {sup} exceeds perverse value {at_perverse}"
                );
                assert!(sup >= at_perverse, "{m}: supremum missed the perverse candidate");
            }
        }
    }

    // === fixed-scenario falsification at budget 0 ===

    #[test]
    fn fixed_scenarios_falsify_constant_worst_case_for_ae_but_not_nae() {
        let v_ae = check_property(MeasureId::Ae, PropertyId::Max, 0, 1, 1e-9).unwrap();
        assert!(v_ae.falsified());
        assert_eq!(v_ae.trials_run, 0);
        let cex = v_ae.counterexample.unwrap();
        assert_eq!(cex.values.len(), 2);
        assert!((cex.values[0].value - 0.99).abs() < 1e-12);
        assert!((cex.values[1].value - 0.51).abs() < 1e-12);

        let v_nae = check_property(MeasureId::Nae, PropertyId::Max, 0, 1, 1e-9).unwrap();
        assert!(!v_nae.falsified());
    }

    #[test]
    fn fixed_scenarios_falsify_impartiality_for_kld_but_not_ae() {
        let v_kld = check_property(MeasureId::Kld, PropertyId::Imp, 0, 1, 1e-9).unwrap();
        assert!(v_kld.falsified());
        let cex = v_kld.counterexample.unwrap();
        assert!((cex.values[0].value - 0.0070020870).abs() < 1e-9);
        assert!((cex.values[1].value - 0.0090366843).abs() < 1e-9);

        let v_ae = check_property(MeasureId::Ae, PropertyId::Imp, 0, 1, 1e-9).unwrap();
        assert!(!v_ae.falsified());
    }

    #[test]
    fn nkld_constant_worst_case_survives_the_fixed_scenario() {
        // The two fixed worst cases differ by about 2.4e-3, under the
        // dedicated comparison tolerance for NKLD's saturating rescaling.
        let v = check_property(MeasureId::Nkld, PropertyId::Max, 0, 1, 1e-9).unwrap();
        assert!(!v.falsified());
    }

    // === replay determinism ===

    #[test]
    fn checks_are_deterministic_and_counterexamples_replay_exactly() {
        let v1 = check_property(MeasureId::Kld, PropertyId::BImp, 50, 42, 1e-9).unwrap();
        let v2 = check_property(MeasureId::Kld, PropertyId::BImp, 50, 42, 1e-9).unwrap();
        assert_eq!(v1, v2);
        let cex = v1.counterexample.expect("kld violates binary impartiality");
        let replayed = test_scenario(MeasureId::Kld, &cex.scenario, 1e-9)
            .unwrap()
            .expect("replay must reproduce the violation");
        assert_eq!(replayed.values, cex.values);
        assert_eq!(replayed.comparison, cex.comparison);
    }

    #[test]
    fn json_round_trip_preserves_counterexamples_bit_for_bit() {
        let v = check_property(MeasureId::Pd, PropertyId::BAbs, 50, 7, 1e-9).unwrap();
        let cex = v.counterexample.expect("pd violates binary absoluteness");
        let json = serde_json::to_string(&cex).unwrap();
        let back: Counterexample = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cex);
        let replayed = test_scenario(MeasureId::Pd, &back.scenario, 1e-9)
            .unwrap()
            .expect("deserialized scenario must still violate");
        assert_eq!(replayed.values, cex.values);
    }

    // === closed-form derivatives ===

    #[test]
    fn derivative_closed_forms_match_hand_computed_points() {
        let d_kld = bmon_derivative(MeasureId::Kld, 0.5, 0.3).unwrap();
        assert!((d_kld - 0.2 / (0.3 * 0.7)).abs() < 1e-12);
        assert!((d_kld - 0.952381).abs() < 1e-6);
        let d_pd = bmon_derivative(MeasureId::Pd, 0.5, 0.3).unwrap();
        assert!((d_pd - 2.267574).abs() < 1e-6);
    }

    #[test]
    fn derivative_rejects_other_measures_and_boundary_points() {
        assert!(matches!(
            bmon_derivative(MeasureId::Ae, 0.5, 0.3),
            Err(AxiomError::UnsupportedMeasure { .. })
        ));
        for (a, x) in [(0.0, 0.3), (0.5, 1.0), (0.5, 0.5)] {
            assert!(matches!(
                bmon_derivative(MeasureId::Kld, a, x),
                Err(AxiomError::DomainError { .. })
            ));
        }
    }

    #[test]
    fn derivative_symmetry_between_over_and_under_estimation_sides() {
        // KLD's magnitude is symmetric in the sign of (a − x) at equal
        // distance only through the abs; the two sides differ through x.
        let left = bmon_derivative(MeasureId::Kld, 0.5, 0.4).unwrap();
        let right = bmon_derivative(MeasureId::Kld, 0.5, 0.6).unwrap();
        assert!((left - right).abs() < 1e-12, "x(1-x) is symmetric about 1/2");
        let left_pd = bmon_derivative(MeasureId::Pd, 0.5, 0.4).unwrap();
        let right_pd = bmon_derivative(MeasureId::Pd, 0.5, 0.6).unwrap();
        assert!((left_pd - right_pd).abs() < 1e-12);
    }

    // === scenario-level checks ===

    #[test]
    fn identity_scenarios_pass_for_every_matrix_measure() {
        let frame = Codeframe::of_size(3).unwrap();
        let p = Prevalence::new(frame.clone(), vec![0.2, 0.3, 0.5]).unwrap();
        let q = Prevalence::new(frame, vec![0.25, 0.35, 0.40]).unwrap();
        let scenario = Scenario::new(
            PropertyId::Ioi,
            vec![p],
            vec![q],
            None,
            eps_cfg(),
            Some("spot identity scenario".into()),
        )
        .unwrap();
        for m in MeasureId::MATRIX {
            assert!(test_scenario(m, &scenario, 1e-9).unwrap().is_none(), "{m}");
        }
    }

    #[test]
    fn ind_scenario_checks_project_onto_the_block() {
        // Block {c1, c2} with matching block mass on both predictions.
        let frame = Codeframe::of_size(3).unwrap();
        let p = Prevalence::new(frame.clone(), vec![0.30, 0.30, 0.40]).unwrap();
        let pred1 = Prevalence::new(frame.clone(), vec![0.35, 0.25, 0.40]).unwrap();
        let pred2 = Prevalence::new(frame, vec![0.20, 0.40, 0.40]).unwrap();
        let scenario = Scenario::new(
            PropertyId::Ind,
            vec![p],
            vec![pred1, pred2],
            Some(vec!["c1".into(), "c2".into()]),
            SmoothingConfig::none(),
            None,
        )
        .unwrap();
        for m in MeasureId::MATRIX {
            assert!(test_scenario(m, &scenario, 1e-9).unwrap().is_none(), "{m}");
        }
    }
}
