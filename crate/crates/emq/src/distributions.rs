//! Codeframes, prevalence vectors, additive smoothing, projection onto
//! sub-codeframes, and the perverse estimator.
//!
//! Everything in this module is an immutable value: constructors validate,
//! and every operation is a pure function, so values can be shared freely
//! across threads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance on `sum - 1` when validating prevalence values.
/// After validation the entries are renormalized exactly (divided by their
/// sum), so downstream arithmetic always sees a sum of 1.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Errors from constructing or transforming codeframes and prevalences.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistributionError {
    /// A codeframe needs at least two classes: over a single class the only
    /// distribution is the constant 1.0 and every measure is identically 0.
    #[error("codeframe needs at least 2 classes, got {0}")]
    TooFewClasses(usize),
    /// Class labels must be pairwise distinct.
    #[error("duplicate class label {0:?}")]
    DuplicateLabel(String),
    /// A label was requested that the codeframe does not contain.
    #[error("unknown class label {0:?}")]
    UnknownLabel(String),
    /// The number of values does not match the codeframe size.
    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// Prevalences are fractions; negative entries are rejected outright.
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    /// NaN or infinite entries are rejected before any range check, since
    /// they would otherwise slip through comparisons.
    #[error("entry {index} is not finite ({value})")]
    NonFiniteEntry { index: usize, value: f64 },
    /// The entries must sum to 1 within [`SUM_TOLERANCE`].
    #[error("values sum to {sum}, not 1 (tolerance {SUM_TOLERANCE:e})")]
    NotNormalized { sum: f64 },
    /// Projection onto classes that carry no mass is undefined; it is an
    /// error rather than a silently smoothed result.
    #[error("projection target carries zero mass")]
    ZeroMass,
    /// Smoothing strength must be a finite, nonnegative fraction.
    #[error("epsilon must be finite and nonnegative, got {0}")]
    InvalidEpsilon(f64),
    /// A sample-size-derived epsilon needs at least one item.
    #[error("sample size must be at least 1, got {0}")]
    InvalidSampleSize(u64),
}

/// An ordered set of at least two pairwise-distinct class labels.
///
/// The codeframe fixes the dimensionality of every distribution defined
/// over it; two prevalences are comparable only when their codeframes are
/// equal (same labels, same order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Codeframe {
    labels: Vec<String>,
}

impl Codeframe {
    /// Builds a codeframe from class labels, validating the invariants:
    /// at least two labels, pairwise distinct.
    pub fn new<I, S>(labels: I) -> Result<Self, DistributionError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(DistributionError::TooFewClasses(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(DistributionError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Codeframe { labels })
    }

    /// A generic codeframe `c1, c2, ..., cn`; handy for synthetic scenarios.
    pub fn of_size(n: usize) -> Result<Self, DistributionError> {
        Codeframe::new((1..=n).map(|i| format!("c{i}")))
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false (a codeframe holds at least two classes); provided for
    /// API completeness next to [`len`](Codeframe::len).
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The labels, in codeframe order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Position of `label`, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl TryFrom<Vec<String>> for Codeframe {
    type Error = DistributionError;

    fn try_from(labels: Vec<String>) -> Result<Self, Self::Error> {
        Codeframe::new(labels)
    }
}

impl From<Codeframe> for Vec<String> {
    fn from(cf: Codeframe) -> Self {
        cf.labels
    }
}

/// The additive-smoothing strength: a prevalence entry `p(c)` becomes
/// `(epsilon + p(c)) / (epsilon * n + sum)`, which keeps every entry
/// strictly positive whenever `epsilon > 0`.
///
/// The conventional choice when the distribution was estimated from a
/// sample of `s` items is `epsilon = 1 / (2 s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct SmoothingConfig {
    epsilon: f64,
}

impl SmoothingConfig {
    /// No smoothing: `epsilon = 0`, distributions pass through unchanged.
    pub const fn none() -> Self {
        SmoothingConfig { epsilon: 0.0 }
    }

    /// An explicit epsilon; must be finite and nonnegative.
    pub fn with_epsilon(epsilon: f64) -> Result<Self, DistributionError> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(DistributionError::InvalidEpsilon(epsilon));
        }
        Ok(SmoothingConfig { epsilon })
    }

    /// The `epsilon = 1 / (2 s)` convention for a sample of `s` items.
    pub fn from_sample_size(sample_size: u64) -> Result<Self, DistributionError> {
        if sample_size == 0 {
            return Err(DistributionError::InvalidSampleSize(sample_size));
        }
        Ok(SmoothingConfig {
            epsilon: 1.0 / (2.0 * sample_size as f64),
        })
    }

    /// The configured epsilon.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// True when smoothing actually changes distributions (`epsilon > 0`).
    pub fn is_active(&self) -> bool {
        self.epsilon > 0.0
    }
}

impl Default for SmoothingConfig {
    fn default() -> Self {
        SmoothingConfig::none()
    }
}

impl TryFrom<f64> for SmoothingConfig {
    type Error = DistributionError;

    fn try_from(epsilon: f64) -> Result<Self, Self::Error> {
        SmoothingConfig::with_epsilon(epsilon)
    }
}

impl From<SmoothingConfig> for f64 {
    fn from(cfg: SmoothingConfig) -> Self {
        cfg.epsilon
    }
}

/// A probability distribution over a codeframe: one fraction per class,
/// each in `[0, 1]`, summing to 1.
///
/// Construction validates and then renormalizes exactly, so `values()`
/// always sums to 1 up to floating-point rounding of the division.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PrevalenceRepr", into = "PrevalenceRepr")]
pub struct Prevalence {
    codeframe: Codeframe,
    values: Vec<f64>,
}

/// Wire form of [`Prevalence`]; deserialization funnels through
/// [`Prevalence::new`] so invalid data cannot enter by that route.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PrevalenceRepr {
    codeframe: Codeframe,
    values: Vec<f64>,
}

impl TryFrom<PrevalenceRepr> for Prevalence {
    type Error = DistributionError;

    fn try_from(repr: PrevalenceRepr) -> Result<Self, Self::Error> {
        Prevalence::new(repr.codeframe, repr.values)
    }
}

impl From<Prevalence> for PrevalenceRepr {
    fn from(p: Prevalence) -> Self {
        PrevalenceRepr {
            codeframe: p.codeframe,
            values: p.values,
        }
    }
}

impl Prevalence {
    /// Validates `values` against `codeframe` and builds a prevalence.
    ///
    /// Checks, in order: one value per class, all finite, all nonnegative,
    /// sum within [`SUM_TOLERANCE`] of 1. On success the values are divided
    /// by their sum, so the stored entries sum to 1 exactly (up to the
    /// rounding of that division). Values that already sum to 1 within a
    /// few ulps are stored verbatim instead: renormalizing them could only
    /// shift entries by one ulp each, and storing them unchanged makes
    /// construction idempotent, so serialization round-trips are bit-exact.
    pub fn new(codeframe: Codeframe, values: Vec<f64>) -> Result<Self, DistributionError> {
        if values.len() != codeframe.len() {
            return Err(DistributionError::DimensionMismatch {
                expected: codeframe.len(),
                got: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(DistributionError::NonFiniteEntry { index, value });
            }
            if value < 0.0 {
                return Err(DistributionError::NegativeEntry { index, value });
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(DistributionError::NotNormalized { sum });
        }
        let values = if (sum - 1.0).abs() <= 8.0 * f64::EPSILON {
            values
        } else {
            values.into_iter().map(|v| v / sum).collect()
        };
        Ok(Prevalence { codeframe, values })
    }

    /// The codeframe this distribution is defined over.
    pub fn codeframe(&self) -> &Codeframe {
        &self.codeframe
    }

    /// The prevalence fractions, in codeframe order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of classes (equals the codeframe size).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; see [`Codeframe::is_empty`].
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Prevalence of the class named `label`, if the codeframe contains it.
    pub fn get(&self, label: &str) -> Option<f64> {
        self.codeframe.index_of(label).map(|i| self.values[i])
    }

    /// Index and value of the least prevalent class; ties break to the
    /// lowest index so the result is deterministic.
    pub fn min_entry(&self) -> (usize, f64) {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v < self.values[best] {
                best = i;
            }
        }
        (best, self.values[best])
    }
}

/// Additive smoothing: `p_s(c) = (eps + p(c)) / (eps * n + sum p)`.
///
/// With `eps = 0` this returns the input unchanged; with `eps > 0` every
/// entry of the result is strictly positive. The output is itself a valid
/// prevalence (the denominator renormalizes analytically).
pub fn smooth(p: &Prevalence, cfg: SmoothingConfig) -> Prevalence {
    let eps = cfg.epsilon();
    if eps == 0.0 {
        return p.clone();
    }
    let n = p.len() as f64;
    let sum: f64 = p.values().iter().sum();
    let denom = eps * n + sum;
    let values = p.values().iter().map(|&v| (eps + v) / denom).collect();
    Prevalence::new(p.codeframe().clone(), values)
        .expect("smoothing preserves prevalence validity")
}

/// Projection of `p` onto the sub-codeframe given by `sub`: each surviving
/// entry is divided by the total surviving mass `a`, so ratios between
/// surviving classes are preserved.
///
/// `sub` must name at least two distinct classes of `p`'s codeframe (the
/// result is a distribution over a codeframe, which needs two classes) and
/// must carry positive mass; projecting onto zero mass is undefined and
/// yields [`DistributionError::ZeroMass`].
pub fn project<S: AsRef<str>>(p: &Prevalence, sub: &[S]) -> Result<Prevalence, DistributionError> {
    let sub_frame = Codeframe::new(sub.iter().map(|s| s.as_ref().to_string()))?;
    let mut values = Vec::with_capacity(sub_frame.len());
    for label in sub_frame.labels() {
        match p.get(label) {
            Some(v) => values.push(v),
            None => return Err(DistributionError::UnknownLabel(label.clone())),
        }
    }
    let a: f64 = values.iter().sum();
    if a <= 0.0 {
        return Err(DistributionError::ZeroMass);
    }
    for v in &mut values {
        *v /= a;
    }
    Prevalence::new(sub_frame, values)
}

/// The perverse estimator of `p`: the point mass on the least prevalent
/// class `c* = argmin_c p(c)` (ties break to the lowest index).
///
/// For every measure in this crate the perverse estimator is the worst
/// possible prediction for `p`; see the measures module's upper bounds.
pub fn perverse_estimator(p: &Prevalence) -> Prevalence {
    let (min_index, _) = p.min_entry();
    let values = (0..p.len())
        .map(|i| if i == min_index { 1.0 } else { 0.0 })
        .collect();
    Prevalence::new(p.codeframe().clone(), values)
        .expect("a point mass is a valid prevalence")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cf(n: usize) -> Codeframe {
        Codeframe::of_size(n).unwrap()
    }

    fn prev(values: &[f64]) -> Prevalence {
        Prevalence::new(cf(values.len()), values.to_vec()).unwrap()
    }

    // === codeframe construction ===

    #[test]
    fn codeframe_rejects_fewer_than_two_classes() {
        assert_eq!(
            Codeframe::new(["only"]),
            Err(DistributionError::TooFewClasses(1))
        );
        assert_eq!(
            Codeframe::new(Vec::<String>::new()),
            Err(DistributionError::TooFewClasses(0))
        );
    }

    #[test]
    fn codeframe_rejects_duplicate_labels() {
        assert_eq!(
            Codeframe::new(["a", "b", "a"]),
            Err(DistributionError::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn codeframe_preserves_label_order() {
        let frame = Codeframe::new(["pos", "neg", "neutral"]).unwrap();
        assert_eq!(frame.labels(), ["pos", "neg", "neutral"]);
        assert_eq!(frame.index_of("neg"), Some(1));
        assert_eq!(frame.index_of("missing"), None);
    }

    // === prevalence validation ===

    #[test]
    fn uniform_distribution_validates() {
        let p = prev(&[0.5, 0.5]);
        assert_eq!(p.values(), [0.5, 0.5]);
    }

    #[test]
    fn overweight_vector_is_rejected() {
        let err = Prevalence::new(cf(2), vec![0.6, 0.6]).unwrap_err();
        assert!(matches!(err, DistributionError::NotNormalized { sum } if (sum - 1.2).abs() < 1e-12));
    }

    #[test]
    fn four_class_vector_with_zero_entry_validates() {
        let p = prev(&[0.32, 0.00, 0.48, 0.20]);
        assert_eq!(p.get("c2"), Some(0.0));
    }

    #[test]
    fn negative_entry_is_rejected() {
        let err = Prevalence::new(cf(2), vec![1.5, -0.5]).unwrap_err();
        assert!(matches!(err, DistributionError::NegativeEntry { index: 1, .. }));
    }

    #[test]
    fn nan_entry_is_rejected_not_silently_accepted() {
        let err = Prevalence::new(cf(2), vec![f64::NAN, 1.0]).unwrap_err();
        assert!(matches!(err, DistributionError::NonFiniteEntry { index: 0, .. }));
    }

    #[test]
    fn wrong_arity_is_a_dimension_mismatch() {
        let err = Prevalence::new(cf(3), vec![0.5, 0.5]).unwrap_err();
        assert_eq!(
            err,
            DistributionError::DimensionMismatch { expected: 3, got: 2 }
        );
    }

    #[test]
    fn near_one_sum_is_renormalized_exactly() {
        let p = Prevalence::new(cf(2), vec![0.3 + 2e-10, 0.7]).unwrap();
        let sum: f64 = p.values().iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
    }

    // === smoothing ===

    #[test]
    fn uniform_is_a_fixed_point_of_smoothing() {
        let p = prev(&[0.5, 0.5]);
        let s = smooth(&p, SmoothingConfig::with_epsilon(0.123).unwrap());
        assert!((s.values()[0] - 0.5).abs() < 1e-15);
        assert!((s.values()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn smoothing_with_zero_epsilon_is_identity() {
        let p = prev(&[0.2, 0.8]);
        assert_eq!(smooth(&p, SmoothingConfig::none()), p);
    }

    #[test]
    fn smoothing_skewed_binary_matches_hand_computation() {
        // eps = 1/(2*1000); (eps + 0.01) / (2 eps + 1) and its complement.
        let p = prev(&[0.01, 0.99]);
        let s = smooth(&p, SmoothingConfig::from_sample_size(1000).unwrap());
        assert!((s.values()[0] - 0.0105 / 1.001).abs() < 1e-15);
        assert!((s.values()[0] - 0.010490).abs() < 1e-6);
        assert!((s.values()[1] - 0.989511).abs() < 1e-6);
    }

    #[test]
    fn smoothing_point_mass_leaves_strictly_positive_entries() {
        let p = prev(&[1.0, 0.0]);
        let s = smooth(&p, SmoothingConfig::with_epsilon(5e-7).unwrap());
        assert!(s.values()[1] > 0.0);
        assert!((s.values()[0] - 0.9999995).abs() < 1e-6);
        assert!((s.values()[1] - 5e-7).abs() < 1e-9);
    }

    #[test]
    fn epsilon_from_sample_size_is_half_inverse() {
        let cfg = SmoothingConfig::from_sample_size(1_000_000).unwrap();
        assert_eq!(cfg.epsilon(), 5e-7);
        assert_eq!(
            SmoothingConfig::from_sample_size(0),
            Err(DistributionError::InvalidSampleSize(0))
        );
    }

    #[test]
    fn negative_or_nan_epsilon_is_rejected() {
        assert!(matches!(
            SmoothingConfig::with_epsilon(-1e-9),
            Err(DistributionError::InvalidEpsilon(_))
        ));
        assert!(matches!(
            SmoothingConfig::with_epsilon(f64::NAN),
            Err(DistributionError::InvalidEpsilon(_))
        ));
    }

    // === projection ===

    #[test]
    fn projection_renormalizes_surviving_classes() {
        let p = prev(&[0.32, 0.00, 0.48, 0.20]);
        let q = project(&p, &["c1", "c2", "c3"]).unwrap();
        assert!((q.values()[0] - 0.40).abs() < 1e-12);
        assert_eq!(q.values()[1], 0.0);
        assert!((q.values()[2] - 0.60).abs() < 1e-12);
    }

    #[test]
    fn projection_onto_full_codeframe_is_identity() {
        let p = prev(&[0.25, 0.25, 0.50]);
        let q = project(&p, &["c1", "c2", "c3"]).unwrap();
        for (a, b) in p.values().iter().zip(q.values()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn projection_of_two_surviving_classes() {
        let p = prev(&[0.25, 0.25, 0.50]);
        let q = project(&p, &["c1", "c3"]).unwrap();
        assert!((q.values()[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!((q.values()[1] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn projection_onto_zero_mass_is_an_error() {
        let p = prev(&[0.0, 0.0, 1.0]);
        assert_eq!(project(&p, &["c1", "c2"]), Err(DistributionError::ZeroMass));
    }

    #[test]
    fn projection_onto_unknown_label_is_an_error() {
        let p = prev(&[0.5, 0.5]);
        assert_eq!(
            project(&p, &["c1", "zz"]),
            Err(DistributionError::UnknownLabel("zz".into()))
        );
    }

    // === perverse estimator ===

    #[test]
    fn perverse_estimator_is_point_mass_on_least_prevalent_class() {
        let p = prev(&[0.01, 0.99]);
        assert_eq!(perverse_estimator(&p).values(), [1.0, 0.0]);
        let q = prev(&[0.32, 0.00, 0.48, 0.20]);
        assert_eq!(perverse_estimator(&q).values(), [0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn perverse_estimator_breaks_ties_to_lowest_index() {
        let p = prev(&[0.5, 0.5]);
        assert_eq!(perverse_estimator(&p).values(), [1.0, 0.0]);
        let q = prev(&[0.4, 0.2, 0.2, 0.2]);
        assert_eq!(perverse_estimator(&q).values(), [0.0, 1.0, 0.0, 0.0]);
    }

    // === serde round-trips revalidate ===

    #[test]
    fn deserializing_invalid_prevalence_fails() {
        let bad = r#"{"codeframe":["c1","c2"],"values":[0.6,0.6]}"#;
        assert!(serde_json::from_str::<Prevalence>(bad).is_err());
        let good = r#"{"codeframe":["c1","c2"],"values":[0.4,0.6]}"#;
        let p: Prevalence = serde_json::from_str(good).unwrap();
        assert_eq!(p.values(), [0.4, 0.6]);
    }

    #[test]
    fn deserializing_negative_epsilon_fails() {
        assert!(serde_json::from_str::<SmoothingConfig>("-0.5").is_err());
        let cfg: SmoothingConfig = serde_json::from_str("5e-7").unwrap();
        assert_eq!(cfg.epsilon(), 5e-7);
    }

    // === randomized invariants ===

    fn arb_prevalence(n: usize) -> impl Strategy<Value = Prevalence> {
        proptest::collection::vec(0.01f64..1.0, n).prop_map(move |raw| {
            let sum: f64 = raw.iter().sum();
            let values: Vec<f64> = raw.into_iter().map(|v| v / sum).collect();
            Prevalence::new(Codeframe::of_size(values.len()).unwrap(), values).unwrap()
        })
    }

    proptest! {
        // Projecting in two steps equals projecting directly: for B within A,
        // project(project(p, A), B) = project(p, B).
        #[test]
        fn projection_composes(p in arb_prevalence(5)) {
            let a = ["c1", "c2", "c3", "c4"];
            let b = ["c2", "c4"];
            let via_a = project(&project(&p, &a).unwrap(), &b).unwrap();
            let direct = project(&p, &b).unwrap();
            for (x, y) in via_a.values().iter().zip(direct.values()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }

        // Smoothing output is always a valid prevalence whose entries are
        // strictly positive, and re-validates with sum within 1e-12.
        #[test]
        fn smoothing_output_validates(p in arb_prevalence(4), eps in 0.0f64..0.5) {
            let s = smooth(&p, SmoothingConfig::with_epsilon(eps).unwrap());
            let sum: f64 = s.values().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
            if eps > 0.0 {
                prop_assert!(s.values().iter().all(|&v| v > 0.0));
            }
        }
    }
}
