//! Scenario data for the property checks: hypothesis validation, the
//! curated fixed scenarios, and the randomized generators.
//!
//! A [`Scenario`] packages the distributions a property's hypothesis
//! quantifies over. Construction (and deserialization) validates the
//! hypothesis, so every scenario that exists is a legitimate test case
//! and a counterexample can never be an artifact of malformed inputs.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AxiomError, PropertyId, SCENARIO_EPSILON};
use crate::distributions::{Codeframe, Prevalence, SmoothingConfig};

/// Tolerance for the arithmetic identities a hypothesis demands (equal
/// shift magnitudes, shared tails, matching block masses). Wide enough to
/// absorb the one-ulp noise that exact renormalization introduces, and
/// far below every quantity the checks compare.
const HYPOTHESIS_EQ_TOL: f64 = 1e-12;

/// Entry floor for generated true distributions. Keeps every evaluation
/// well conditioned: only scenarios whose conclusions hold or fail by
/// margins far above the check tolerance are drawn, so a falsification is
/// never a rounding artifact. The hypotheses themselves accept any
/// interior distribution.
const MIN_ENTRY: f64 = 1e-3;

/// A concrete instance of a property's hypothesis.
///
/// The shape depends on the property:
///
/// | Property | true distributions | predictions | block |
/// |----------|--------------------|-------------|-------|
/// | `ioi`, `nn` | 1 | 1 | no |
/// | `max` | 2 | 0 (candidates are generated inside the check) | no |
/// | `mon`, `b-mon`, `imp`, `b-imp` | 1 | 2 | no |
/// | `rel`, `b-rel`, `abs`, `b-abs` | 2 | 2 | no |
/// | `ind` | 1 | 2 | yes |
///
/// All distributions share one codeframe; binary variants require it to
/// have exactly two classes. The structural relations each hypothesis
/// demands (which classes shift, by how much, in which direction) are
/// validated at construction and again on deserialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioRepr", into = "ScenarioRepr")]
pub struct Scenario {
    property: PropertyId,
    true_dists: Vec<Prevalence>,
    pred_dists: Vec<Prevalence>,
    block: Option<Vec<String>>,
    smoothing: SmoothingConfig,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ScenarioRepr {
    property: PropertyId,
    true_dists: Vec<Prevalence>,
    pred_dists: Vec<Prevalence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    block: Option<Vec<String>>,
    smoothing: SmoothingConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl TryFrom<ScenarioRepr> for Scenario {
    type Error = AxiomError;

    fn try_from(repr: ScenarioRepr) -> Result<Self, Self::Error> {
        Scenario::new(
            repr.property,
            repr.true_dists,
            repr.pred_dists,
            repr.block,
            repr.smoothing,
            repr.label,
        )
    }
}

impl From<Scenario> for ScenarioRepr {
    fn from(s: Scenario) -> Self {
        ScenarioRepr {
            property: s.property,
            true_dists: s.true_dists,
            pred_dists: s.pred_dists,
            block: s.block,
            smoothing: s.smoothing,
            label: s.label,
        }
    }
}

impl Scenario {
    /// Builds a scenario, validating the hypothesis of `property` against
    /// the supplied distributions.
    ///
    /// `block` is required for `ind` and rejected for everything else.
    /// `smoothing` is the strength the scenario is meant to be checked
    /// under; [`super::test_scenario`] uses it verbatim.
    pub fn new(
        property: PropertyId,
        true_dists: Vec<Prevalence>,
        pred_dists: Vec<Prevalence>,
        block: Option<Vec<String>>,
        smoothing: SmoothingConfig,
        label: Option<String>,
    ) -> Result<Self, AxiomError> {
        let scenario = Scenario {
            property,
            true_dists,
            pred_dists,
            block,
            smoothing,
            label,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// The property whose hypothesis this scenario instantiates.
    pub fn property(&self) -> PropertyId {
        self.property
    }

    /// The true distributions (one or two, depending on the property).
    pub fn true_dists(&self) -> &[Prevalence] {
        &self.true_dists
    }

    /// The predicted distributions (zero, one, or two).
    pub fn pred_dists(&self) -> &[Prevalence] {
        &self.pred_dists
    }

    /// The class block of an independence scenario.
    pub fn block(&self) -> Option<&[String]> {
        self.block.as_deref()
    }

    /// The smoothing strength the scenario is checked under.
    pub fn smoothing(&self) -> SmoothingConfig {
        self.smoothing
    }

    /// An optional human-readable tag (set on the fixed scenarios).
    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The shared codeframe.
    pub fn codeframe(&self) -> &Codeframe {
        self.true_dists[0].codeframe()
    }

    fn validate(&self) -> Result<(), AxiomError> {
        let fail = |reason: String| {
            Err(AxiomError::InvalidScenario {
                property: self.property,
                reason,
            })
        };
        let (want_true, want_pred) = match self.property {
            PropertyId::Ioi | PropertyId::Nn => (1, 1),
            PropertyId::Max => (2, 0),
            PropertyId::Mon
            | PropertyId::BMon
            | PropertyId::Imp
            | PropertyId::BImp
            | PropertyId::Ind => (1, 2),
            PropertyId::Rel | PropertyId::BRel | PropertyId::Abs | PropertyId::BAbs => (2, 2),
        };
        if self.true_dists.len() != want_true {
            return fail(format!(
                "expected {want_true} true distribution(s), got {}",
                self.true_dists.len()
            ));
        }
        if self.pred_dists.len() != want_pred {
            return fail(format!(
                "expected {want_pred} prediction(s), got {}",
                self.pred_dists.len()
            ));
        }
        if self.property == PropertyId::Ind && self.block.is_none() {
            return fail("independence scenarios require a class block".into());
        }
        if self.property != PropertyId::Ind && self.block.is_some() {
            return fail("only independence scenarios carry a class block".into());
        }
        let frame = self.true_dists[0].codeframe();
        for d in self.true_dists.iter().chain(self.pred_dists.iter()) {
            if d.codeframe() != frame {
                return fail("all distributions must share one codeframe".into());
            }
        }
        if self.property.is_binary_variant() && frame.len() != 2 {
            return fail(format!(
                "binary properties require a two-class codeframe, got {} classes",
                frame.len()
            ));
        }
        match self.property {
            PropertyId::Ioi | PropertyId::Nn | PropertyId::Max => Ok(()),
            PropertyId::Mon | PropertyId::BMon => self.validate_mon(),
            PropertyId::Imp | PropertyId::BImp => self.validate_imp(),
            PropertyId::Rel | PropertyId::BRel | PropertyId::Abs | PropertyId::BAbs => {
                self.validate_rel_abs()
            }
            PropertyId::Ind => self.validate_ind(),
        }
    }

    /// Hypothesis: the two predictions differ only on two classes; the
    /// farther one moves an extra amount of mass off a class both
    /// underestimate onto a class both overestimate.
    fn validate_mon(&self) -> Result<(), AxiomError> {
        let fail = |reason: &str| {
            Err(AxiomError::InvalidScenario {
                property: self.property,
                reason: reason.into(),
            })
        };
        let p = self.true_dists[0].values();
        let closer = self.pred_dists[0].values();
        let farther = self.pred_dists[1].values();
        let diff = diff_positions(closer, farther);
        if diff.len() != 2 {
            return fail("the two predictions must differ on exactly two classes");
        }
        let (i, j) = (diff[0], diff[1]);
        let (c1, c2) = if farther[i] < closer[i] { (i, j) } else { (j, i) };
        if !(closer[c1] - farther[c1] > HYPOTHESIS_EQ_TOL
            && farther[c2] - closer[c2] > HYPOTHESIS_EQ_TOL)
        {
            return fail(
                "the farther prediction must move mass strictly off one class and onto the other",
            );
        }
        let removed = closer[c1] - farther[c1];
        let added = farther[c2] - closer[c2];
        if (removed - added).abs() > HYPOTHESIS_EQ_TOL {
            return fail("the mass removed from one class must equal the mass added to the other");
        }
        if closer[c1] > p[c1] + HYPOTHESIS_EQ_TOL {
            return fail("both predictions must underestimate the class losing mass");
        }
        if closer[c2] + HYPOTHESIS_EQ_TOL < p[c2] {
            return fail("both predictions must overestimate the class gaining mass");
        }
        Ok(())
    }

    /// Hypothesis: the two predictions shift the same two classes of the
    /// truth by the same amount `a > 0`, in opposite directions, and
    /// agree everywhere else.
    fn validate_imp(&self) -> Result<(), AxiomError> {
        let fail = |reason: &str| {
            Err(AxiomError::InvalidScenario {
                property: self.property,
                reason: reason.into(),
            })
        };
        let p = self.true_dists[0].values();
        let over = self.pred_dists[0].values();
        let under = self.pred_dists[1].values();
        let diff = diff_positions(over, under);
        if diff.len() != 2 {
            return fail("the two predictions must differ on exactly two classes");
        }
        let (i, j) = (diff[0], diff[1]);
        let (c1, c2) = if over[i] > under[i] { (i, j) } else { (j, i) };
        if !(over[c1] - under[c1] > HYPOTHESIS_EQ_TOL && under[c2] - over[c2] > HYPOTHESIS_EQ_TOL)
        {
            return fail("the two predictions must shift the two classes in opposite directions");
        }
        let amount = over[c1] - p[c1];
        if amount <= HYPOTHESIS_EQ_TOL {
            return fail("the first prediction must overestimate the shifted class");
        }
        if ((p[c1] - under[c1]) - amount).abs() > HYPOTHESIS_EQ_TOL {
            return fail("the second prediction must underestimate that class by the same amount");
        }
        if ((p[c2] - over[c2]) - amount).abs() > HYPOTHESIS_EQ_TOL
            || ((under[c2] - p[c2]) - amount).abs() > HYPOTHESIS_EQ_TOL
        {
            return fail("the balancing class must absorb the same amount in the opposite direction");
        }
        Ok(())
    }

    /// Hypothesis: the two truths differ only on two classes, with the
    /// strict chain `p1(c1) < p2(c1) < p2(c2) < p1(c2)`; each prediction
    /// shifts its truth's two classes by the same signed amount; the two
    /// predictions agree outside those classes.
    fn validate_rel_abs(&self) -> Result<(), AxiomError> {
        let fail = |reason: &str| {
            Err(AxiomError::InvalidScenario {
                property: self.property,
                reason: reason.into(),
            })
        };
        let p1 = self.true_dists[0].values();
        let p2 = self.true_dists[1].values();
        let q1 = self.pred_dists[0].values();
        let q2 = self.pred_dists[1].values();
        let diff = diff_positions(p1, p2);
        if diff.len() != 2 {
            return fail("the two truths must differ on exactly two classes");
        }
        let (i, j) = (diff[0], diff[1]);
        let (c1, c2) = if p1[i] < p2[i] { (i, j) } else { (j, i) };
        if !(p2[c1] - p1[c1] > HYPOTHESIS_EQ_TOL && p1[c2] - p2[c2] > HYPOTHESIS_EQ_TOL) {
            return fail("the second truth must strictly raise one class and lower the other");
        }
        if p2[c2] - p2[c1] <= HYPOTHESIS_EQ_TOL {
            return fail("the raised class must stay strictly rarer than the lowered one");
        }
        for (idx, (a, b)) in q1.iter().zip(q2).enumerate() {
            if idx != c1 && idx != c2 && (a - b).abs() > HYPOTHESIS_EQ_TOL {
                return fail("the two predictions must agree outside the two shifted classes");
            }
        }
        let shift = q1[c1] - p1[c1];
        if shift.abs() <= HYPOTHESIS_EQ_TOL {
            return fail("the predictions must shift the two classes by a nonzero amount");
        }
        if ((q2[c1] - p2[c1]) - shift).abs() > HYPOTHESIS_EQ_TOL {
            return fail("both predictions must shift the rarer class by the same signed amount");
        }
        if ((q1[c2] - p1[c2]) + shift).abs() > HYPOTHESIS_EQ_TOL
            || ((q2[c2] - p2[c2]) + shift).abs() > HYPOTHESIS_EQ_TOL
        {
            return fail("the other class must balance the shift exactly");
        }
        Ok(())
    }

    /// Hypothesis: the block is a strict subset of at least two classes;
    /// the two predictions agree outside it and allocate it exactly the
    /// true block mass.
    fn validate_ind(&self) -> Result<(), AxiomError> {
        let fail = |reason: String| {
            Err(AxiomError::InvalidScenario {
                property: self.property,
                reason,
            })
        };
        let block = self.block.as_ref().expect("presence checked in validate");
        let frame = self.true_dists[0].codeframe();
        let n = frame.len();
        if block.len() < 2 {
            return fail("the block needs at least two classes".into());
        }
        if block.len() >= n {
            return fail("the block must be a strict subset of the codeframe".into());
        }
        let mut in_block = vec![false; n];
        for label in block {
            let Some(idx) = frame.index_of(label) else {
                return fail(format!("block label {label:?} is not in the codeframe"));
            };
            if in_block[idx] {
                return fail(format!("duplicate block label {label:?}"));
            }
            in_block[idx] = true;
        }
        let p = self.true_dists[0].values();
        let q1 = self.pred_dists[0].values();
        let q2 = self.pred_dists[1].values();
        for idx in 0..n {
            if !in_block[idx] && (q1[idx] - q2[idx]).abs() > HYPOTHESIS_EQ_TOL {
                return fail("the two predictions must agree outside the block".into());
            }
        }
        let mass = |values: &[f64]| -> f64 {
            (0..n).filter(|&i| in_block[i]).map(|i| values[i]).sum()
        };
        let p_mass = mass(p);
        if p_mass <= 0.0 {
            return fail("the block must carry positive true mass".into());
        }
        if (mass(q1) - p_mass).abs() > HYPOTHESIS_EQ_TOL
            || (mass(q2) - p_mass).abs() > HYPOTHESIS_EQ_TOL
        {
            return fail("both predictions must allocate the block exactly the true block mass".into());
        }
        Ok(())
    }
}

fn diff_positions(a: &[f64], b: &[f64]) -> Vec<usize> {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| (**x - **y).abs() > HYPOTHESIS_EQ_TOL)
        .map(|(i, _)| i)
        .collect()
}

/// The curated fixed scenarios for `property`. These are the concrete
/// counterexample tables the crate can print: they falsify every measure
/// that genuinely violates `max`, `imp`, `rel`, or `abs`, without a
/// single random trial. The strict- and equality-form properties over the
/// same data share it deliberately, which is why the binary variants of
/// `imp`, `rel`, and `abs` reuse their general scenario.
///
/// Properties without curated scenarios (`ioi`, `nn`, `mon`, `b-mon`,
/// `ind`) return [`AxiomError::NoFixedScenario`].
pub fn fixed_scenarios(property: PropertyId) -> Result<Vec<Scenario>, AxiomError> {
    let eps = scenario_smoothing();
    let frame = Codeframe::of_size(2).expect("two classes form a codeframe");
    let prev = |values: [f64; 2]| {
        Prevalence::new(frame.clone(), values.to_vec()).expect("fixed scenario data is valid")
    };
    match property {
        PropertyId::Max => Ok(vec![Scenario::new(
            property,
            vec![prev([0.01, 0.99]), prev([0.49, 0.51])],
            vec![],
            None,
            eps,
            Some("worst case under a heavily skewed vs a near-uniform binary truth".into()),
        )?]),
        PropertyId::Imp | PropertyId::BImp => Ok(vec![Scenario::new(
            property,
            vec![prev([0.2, 0.8])],
            vec![prev([0.25, 0.75]), prev([0.15, 0.85])],
            None,
            eps,
            Some("equal-magnitude over- and under-estimation of a binary truth".into()),
        )?]),
        PropertyId::Rel | PropertyId::BRel => Ok(vec![Scenario::new(
            property,
            vec![prev([0.2, 0.8]), prev([0.25, 0.75])],
            vec![prev([0.7, 0.3]), prev([0.75, 0.25])],
            None,
            eps,
            Some("the same swap against a rarer and a more frequent class (strict form)".into()),
        )?]),
        PropertyId::Abs | PropertyId::BAbs => Ok(vec![Scenario::new(
            property,
            vec![prev([0.2, 0.8]), prev([0.25, 0.75])],
            vec![prev([0.7, 0.3]), prev([0.75, 0.25])],
            None,
            eps,
            Some("the same swap against a rarer and a more frequent class (equality form)".into()),
        )?]),
        _ => Err(AxiomError::NoFixedScenario { property }),
    }
}

fn scenario_smoothing() -> SmoothingConfig {
    SmoothingConfig::with_epsilon(SCENARIO_EPSILON).expect("the scenario epsilon is valid")
}

/// Draws one random scenario for `property` from `rng`.
///
/// All generated true distributions keep every entry at or above a small
/// floor and all structural shifts are bounded away from degeneracy, so
/// the conclusions the checks compare hold or fail by margins far above
/// the check tolerance; see `MIN_ENTRY`.
pub(super) fn generate(property: PropertyId, rng: &mut ChaCha8Rng) -> Scenario {
    match property {
        PropertyId::Ioi => gen_ioi(rng),
        PropertyId::Nn => gen_nn(rng),
        PropertyId::Max => gen_max(rng),
        PropertyId::Mon => gen_mon(rng, PropertyId::Mon),
        PropertyId::BMon => gen_mon(rng, PropertyId::BMon),
        PropertyId::Imp => gen_imp(rng, PropertyId::Imp),
        PropertyId::BImp => gen_imp(rng, PropertyId::BImp),
        PropertyId::Rel => gen_rel_abs(rng, PropertyId::Rel),
        PropertyId::BRel => gen_rel_abs(rng, PropertyId::BRel),
        PropertyId::Abs => gen_rel_abs(rng, PropertyId::Abs),
        PropertyId::BAbs => gen_rel_abs(rng, PropertyId::BAbs),
        PropertyId::Ind => gen_ind(rng),
    }
}

/// A draw from the flat Dirichlet distribution over `n` classes,
/// resampled until every entry reaches `floor`.
fn random_simplex(rng: &mut ChaCha8Rng, n: usize, floor: f64) -> Vec<f64> {
    loop {
        let mut values: Vec<f64> = (0..n)
            .map(|_| -rng.gen_range(f64::MIN_POSITIVE..1.0_f64).ln())
            .collect();
        let sum: f64 = values.iter().sum();
        if !(sum.is_finite() && sum > 0.0) {
            continue;
        }
        for v in &mut values {
            *v /= sum;
        }
        if values.iter().all(|&v| v >= floor) {
            return values;
        }
    }
}

fn random_size(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(2..=8)
}

fn prevalence(frame: &Codeframe, values: Vec<f64>) -> Prevalence {
    Prevalence::new(frame.clone(), values).expect("generated values form a valid distribution")
}

fn distinct_pair(rng: &mut ChaCha8Rng, n: usize, first: Option<usize>) -> (usize, usize) {
    let c1 = first.unwrap_or_else(|| rng.gen_range(0..n));
    let c2 = loop {
        let c = rng.gen_range(0..n);
        if c != c1 {
            break c;
        }
    };
    (c1, c2)
}

/// With probability 1/2 (and at least two classes outside `{c1, c2}`),
/// replaces both predictions' shared tail with a blend of the true tail
/// and a fresh Dirichlet draw over the same mass. The blend keeps every
/// tail entry at or above half its true value, so log- and ratio-based
/// measures stay well conditioned while the tail is genuinely explored.
fn maybe_scramble_shared_tail(
    rng: &mut ChaCha8Rng,
    p: &[f64],
    pred1: &mut [f64],
    pred2: &mut [f64],
    c1: usize,
    c2: usize,
) {
    let n = p.len();
    if n < 4 || !rng.gen_bool(0.5) {
        return;
    }
    let tail: Vec<usize> = (0..n).filter(|&i| i != c1 && i != c2).collect();
    let mass: f64 = tail.iter().map(|&i| p[i]).sum();
    let fresh = random_simplex(rng, tail.len(), MIN_ENTRY);
    for (j, &i) in tail.iter().enumerate() {
        let blended = 0.5 * p[i] + 0.5 * mass * fresh[j];
        pred1[i] = blended;
        pred2[i] = blended;
    }
}

fn gen_ioi(rng: &mut ChaCha8Rng) -> Scenario {
    let n = random_size(rng);
    let frame = Codeframe::of_size(n).expect("generated sizes are valid");
    let p = random_simplex(rng, n, MIN_ENTRY);
    // Keep the prediction separated from the truth so "positive away from
    // the truth" is tested with a value far above the tolerance.
    let q = loop {
        let q = random_simplex(rng, n, MIN_ENTRY);
        let separation = p
            .iter()
            .zip(&q)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if separation >= 1e-3 {
            break q;
        }
    };
    Scenario::new(
        PropertyId::Ioi,
        vec![prevalence(&frame, p)],
        vec![prevalence(&frame, q)],
        None,
        scenario_smoothing(),
        None,
    )
    .expect("generated scenario satisfies the hypothesis")
}

fn gen_nn(rng: &mut ChaCha8Rng) -> Scenario {
    let n = random_size(rng);
    let frame = Codeframe::of_size(n).expect("generated sizes are valid");
    let p = random_simplex(rng, n, MIN_ENTRY);
    let q = random_simplex(rng, n, MIN_ENTRY);
    Scenario::new(
        PropertyId::Nn,
        vec![prevalence(&frame, p)],
        vec![prevalence(&frame, q)],
        None,
        scenario_smoothing(),
        None,
    )
    .expect("generated scenario satisfies the hypothesis")
}

fn gen_max(rng: &mut ChaCha8Rng) -> Scenario {
    let n = random_size(rng);
    let frame = Codeframe::of_size(n).expect("generated sizes are valid");
    let p1 = random_simplex(rng, n, MIN_ENTRY);
    let p2 = random_simplex(rng, n, MIN_ENTRY);
    Scenario::new(
        PropertyId::Max,
        vec![prevalence(&frame, p1), prevalence(&frame, p2)],
        vec![],
        None,
        scenario_smoothing(),
        None,
    )
    .expect("generated scenario satisfies the hypothesis")
}

fn gen_mon(rng: &mut ChaCha8Rng, property: PropertyId) -> Scenario {
    let n = if property == PropertyId::BMon {
        2
    } else {
        random_size(rng)
    };
    let frame = Codeframe::of_size(n).expect("generated sizes are valid");
    let p = random_simplex(rng, n, MIN_ENTRY);
    // The donor class needs enough mass to carve two well-separated
    // shifts from; some class always has at least 1/n >= 0.125.
    let eligible: Vec<usize> = (0..n).filter(|&i| p[i] >= 0.02).collect();
    let donor = eligible[rng.gen_range(0..eligible.len())];
    let (c1, c2) = distinct_pair(rng, n, Some(donor));
    let (u1, u2) = loop {
        let a: f64 = rng.gen_range(0.0..0.98);
        let b: f64 = rng.gen_range(0.0..0.98);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if hi - lo >= 0.05 {
            break (lo, hi);
        }
    };
    let shift1 = u1 * p[c1];
    let shift2 = u2 * p[c1];
    let mut closer = p.clone();
    closer[c1] -= shift1;
    closer[c2] += shift1;
    let mut farther = p.clone();
    farther[c1] -= shift2;
    farther[c2] += shift2;
    maybe_scramble_shared_tail(rng, &p, &mut closer, &mut farther, c1, c2);
    Scenario::new(
        property,
        vec![prevalence(&frame, p)],
        vec![prevalence(&frame, closer), prevalence(&frame, farther)],
        None,
        scenario_smoothing(),
        None,
    )
    .expect("generated scenario satisfies the hypothesis")
}

fn gen_imp(rng: &mut ChaCha8Rng, property: PropertyId) -> Scenario {
    let n = if property == PropertyId::BImp {
        2
    } else {
        random_size(rng)
    };
    let frame = Codeframe::of_size(n).expect("generated sizes are valid");
    let p = random_simplex(rng, n, MIN_ENTRY);
    let (c1, c2) = distinct_pair(rng, n, None);
    let headroom = [p[c1], p[c2], 1.0 - p[c1], 1.0 - p[c2]]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let amount = rng.gen_range(0.1..0.95) * headroom;
    let mut over = p.clone();
    over[c1] += amount;
    over[c2] -= amount;
    let mut under = p.clone();
    under[c1] -= amount;
    under[c2] += amount;
    maybe_scramble_shared_tail(rng, &p, &mut over, &mut under, c1, c2);
    Scenario::new(
        property,
        vec![prevalence(&frame, p)],
        vec![prevalence(&frame, over), prevalence(&frame, under)],
        None,
        scenario_smoothing(),
        None,
    )
    .expect("generated scenario satisfies the hypothesis")
}

fn gen_rel_abs(rng: &mut ChaCha8Rng, property: PropertyId) -> Scenario {
    let n = if property.is_binary_variant() {
        2
    } else {
        random_size(rng)
    };
    let frame = Codeframe::of_size(n).expect("generated sizes are valid");
    let base = random_simplex(rng, n, MIN_ENTRY);
    let (c1, c2) = distinct_pair(rng, n, None);
    let two_class_mass = base[c1] + base[c2];
    // p2 raises c1 toward (but strictly under) parity with c2; p1 keeps
    // it strictly rarer still. Both share the base's tail.
    let raised = rng.gen_range(0.1..0.98) * (two_class_mass / 2.0);
    let lowered = rng.gen_range(0.05..0.95) * raised;
    let mut p1 = base.clone();
    p1[c1] = lowered;
    p1[c2] = two_class_mass - lowered;
    let mut p2 = base.clone();
    p2[c1] = raised;
    p2[c2] = two_class_mass - raised;
    let toward_c1 = rng.gen_bool(0.5);
    let amount_cap = 0.95
        * if toward_c1 {
            two_class_mass - raised
        } else {
            lowered
        };
    let amount = rng.gen_range(0.1..1.0) * amount_cap;
    let shift = if toward_c1 { amount } else { -amount };
    let mut q1 = p1.clone();
    q1[c1] += shift;
    q1[c2] -= shift;
    let mut q2 = p2.clone();
    q2[c1] += shift;
    q2[c2] -= shift;
    maybe_scramble_shared_tail(rng, &base, &mut q1, &mut q2, c1, c2);
    Scenario::new(
        property,
        vec![prevalence(&frame, p1), prevalence(&frame, p2)],
        vec![prevalence(&frame, q1), prevalence(&frame, q2)],
        None,
        scenario_smoothing(),
        None,
    )
    .expect("generated scenario satisfies the hypothesis")
}

fn gen_ind(rng: &mut ChaCha8Rng) -> Scenario {
    let n = rng.gen_range(3..=8);
    let k = rng.gen_range(2..=(n - 1));
    let frame = Codeframe::of_size(n).expect("generated sizes are valid");
    // A uniformly random k-subset via a partial Fisher-Yates shuffle.
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        order.swap(i, j);
    }
    let mut block_idx = order[..k].to_vec();
    block_idx.sort_unstable();
    let mut in_block = vec![false; n];
    for &i in &block_idx {
        in_block[i] = true;
    }
    let block_mass = rng.gen_range(0.2..0.8);
    let p_block = random_simplex(rng, k, MIN_ENTRY);
    let p_rest = random_simplex(rng, n - k, MIN_ENTRY);
    let q1_block = random_simplex(rng, k, MIN_ENTRY);
    let q2_block = random_simplex(rng, k, MIN_ENTRY);
    let shared_rest = random_simplex(rng, n - k, MIN_ENTRY);
    let assemble = |block_part: &[f64], rest_part: &[f64]| -> Vec<f64> {
        let mut values = vec![0.0; n];
        let mut bi = 0;
        let mut ri = 0;
        for (i, value) in values.iter_mut().enumerate() {
            if in_block[i] {
                *value = block_mass * block_part[bi];
                bi += 1;
            } else {
                *value = (1.0 - block_mass) * rest_part[ri];
                ri += 1;
            }
        }
        values
    };
    let p = assemble(&p_block, &p_rest);
    let q1 = assemble(&q1_block, &shared_rest);
    let q2 = assemble(&q2_block, &shared_rest);
    let block_labels: Vec<String> = block_idx
        .iter()
        .map(|&i| frame.labels()[i].clone())
        .collect();
    // Independence scenarios run unsmoothed: projection commutes with the
    // measures exactly at epsilon 0, while smoothing the full codeframe
    // and the block with the same epsilon would divide by different
    // normalizers and inject artificial disagreements.
    Scenario::new(
        PropertyId::Ind,
        vec![prevalence(&frame, p)],
        vec![prevalence(&frame, q1), prevalence(&frame, q2)],
        Some(block_labels),
        SmoothingConfig::none(),
        None,
    )
    .expect("generated scenario satisfies the hypothesis")
}
