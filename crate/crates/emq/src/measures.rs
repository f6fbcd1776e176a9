//! The evaluation measures: absolute error, relative absolute error,
//! squared error, discordance ratio, Kullback-Leibler divergence, Pearson
//! divergence, their normalized companions, and the binary-only normalized
//! scores.
//!
//! | Measure | Formula | Smoothed by default | Bound |
//! |---------|---------|---------------------|-------|
//! | AE   | `(1/n) Σ abs(p̂(c) − p(c))` | no | `z_AE = 2(1 − min p)/n` |
//! | NAE  | `AE / z_AE` | no | 1 |
//! | RAE  | `(1/n) Σ abs(p̂_s(c) − p_s(c)) / p_s(c)` | yes | `z_RAE` |
//! | NRAE | `RAE / z_RAE` | yes | 1 |
//! | SE   | `(1/n) Σ (p(c) − p̂(c))²` | no | `z_SE` |
//! | NSE  | `SE / z_SE` | no | 1 |
//! | DR   | `(1/n) Σ abs(p_s(c) − p̂_s(c)) / max(p_s(c), p̂_s(c))` | yes | 1 |
//! | KLD  | `Σ p_s(c) ln(p_s(c)/p̂_s(c))` | yes | `z_KLD` |
//! | NKLD | `2 e^KLD / (e^KLD + 1) − 1` | yes | 1 |
//! | PD   | `(1/n) Σ (p_s(c) − p̂_s(c))² / p̂_s(c)` | yes | `z_PD` |
//! | NAS  | `abs(p(c) − p̂(c)) / max(p(c), 1 − p(c))`, binary | no | 1 |
//! | NSS  | `NAS²` | no | 1 |
//!
//! `p_s` denotes the additively smoothed distribution (see the
//! distributions module). Key invariants, all covered by tests:
//!
//! - every measure is 0 exactly at `p̂ = p` and positive elsewhere;
//! - for each measure with a bound, the bound is attained exactly at the
//!   perverse estimator, and no prediction exceeds it;
//! - `SE <= AE` pointwise; `NAS = NAE` and `NSS = NSE` on binary frames;
//! - NKLD is an order-isomorphic rescaling of KLD into `[0, 1)`.
//!
//! With no smoothing (`epsilon = 0`), RAE, KLD, and PD refuse zero
//! denominators with [`MeasureError::UndefinedValue`] instead of silently
//! smoothing them away.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::{smooth, DistributionError, Prevalence, SmoothingConfig};

/// Errors from evaluating measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    /// The two distributions are defined over different codeframes
    /// (different labels or different order); comparing them classwise
    /// would be meaningless.
    #[error("true and predicted distributions use different codeframes")]
    DimensionMismatch,
    /// The measure's defining expression divides by zero (or takes the
    /// logarithm of a zero ratio) on these inputs. Only possible when the
    /// effective smoothing epsilon is 0.
    #[error("{measure} is undefined here: {reason}")]
    UndefinedValue {
        measure: MeasureId,
        reason: String,
    },
    /// NAS and NSS are defined for binary codeframes only.
    #[error("{measure} requires a binary codeframe, got {classes} classes")]
    NotBinary { measure: MeasureId, classes: usize },
    /// [`upper_bound`] covers the unnormalized measures with a
    /// distribution-dependent bound; normalized measures are bounded by 1
    /// by construction and have no separate bound function.
    #[error("{measure} has no distribution-dependent upper bound")]
    UnsupportedMeasure { measure: MeasureId },
}

/// Identifier of one evaluation measure.
///
/// Parses case-insensitively from its acronym (`"ae"`, `"nkld"`, ...);
/// `"bcd"` (Bray-Curtis dissimilarity) is accepted as an alias of AE, to
/// which it is identical on distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureId {
    /// Absolute error.
    Ae,
    /// Normalized absolute error.
    Nae,
    /// Relative absolute error.
    Rae,
    /// Normalized relative absolute error.
    Nrae,
    /// Squared error.
    Se,
    /// Normalized squared error.
    Nse,
    /// Discordance ratio.
    Dr,
    /// Kullback-Leibler divergence.
    Kld,
    /// Normalized (logistic-rescaled) Kullback-Leibler divergence.
    Nkld,
    /// Pearson divergence.
    Pd,
    /// Normalized absolute score error form (binary only).
    Nas,
    /// Normalized squared score error form (binary only).
    Nss,
}

impl MeasureId {
    /// The nine measures of the property matrix, in its row order.
    pub const MATRIX: [MeasureId; 9] = [
        MeasureId::Ae,
        MeasureId::Nae,
        MeasureId::Rae,
        MeasureId::Nrae,
        MeasureId::Se,
        MeasureId::Dr,
        MeasureId::Kld,
        MeasureId::Nkld,
        MeasureId::Pd,
    ];

    /// Every measure this crate implements.
    pub const ALL: [MeasureId; 12] = [
        MeasureId::Ae,
        MeasureId::Nae,
        MeasureId::Rae,
        MeasureId::Nrae,
        MeasureId::Se,
        MeasureId::Nse,
        MeasureId::Dr,
        MeasureId::Kld,
        MeasureId::Nkld,
        MeasureId::Pd,
        MeasureId::Nas,
        MeasureId::Nss,
    ];

    /// The conventional uppercase acronym.
    pub fn acronym(self) -> &'static str {
        match self {
            MeasureId::Ae => "AE",
            MeasureId::Nae => "NAE",
            MeasureId::Rae => "RAE",
            MeasureId::Nrae => "NRAE",
            MeasureId::Se => "SE",
            MeasureId::Nse => "NSE",
            MeasureId::Dr => "DR",
            MeasureId::Kld => "KLD",
            MeasureId::Nkld => "NKLD",
            MeasureId::Pd => "PD",
            MeasureId::Nas => "NAS",
            MeasureId::Nss => "NSS",
        }
    }

    /// True for the binary-only measures (NAS, NSS).
    pub fn requires_binary(self) -> bool {
        matches!(self, MeasureId::Nas | MeasureId::Nss)
    }

    /// True for the measures whose definition consumes the smoothed
    /// distributions under the default policy: RAE, NRAE, DR, KLD, NKLD,
    /// and PD. The others are computed on the raw inputs.
    pub fn smoothed_by_default(self) -> bool {
        matches!(
            self,
            MeasureId::Rae
                | MeasureId::Nrae
                | MeasureId::Dr
                | MeasureId::Kld
                | MeasureId::Nkld
                | MeasureId::Pd
        )
    }

    /// True for the measures with a distribution-dependent upper bound
    /// exposed through [`upper_bound`]: AE, RAE, SE, KLD, PD.
    pub fn has_upper_bound(self) -> bool {
        matches!(
            self,
            MeasureId::Ae | MeasureId::Rae | MeasureId::Se | MeasureId::Kld | MeasureId::Pd
        )
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureId::Ae => "ae",
            MeasureId::Nae => "nae",
            MeasureId::Rae => "rae",
            MeasureId::Nrae => "nrae",
            MeasureId::Se => "se",
            MeasureId::Nse => "nse",
            MeasureId::Dr => "dr",
            MeasureId::Kld => "kld",
            MeasureId::Nkld => "nkld",
            MeasureId::Pd => "pd",
            MeasureId::Nas => "nas",
            MeasureId::Nss => "nss",
        })
    }
}

/// Error from parsing a measure name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown measure {0:?} (expected one of ae, nae, rae, nrae, se, nse, dr, kld, nkld, pd, nas, nss, or the alias bcd)")]
pub struct UnknownMeasure(pub String);

impl FromStr for MeasureId {
    type Err = UnknownMeasure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ae" => Ok(MeasureId::Ae),
            // Bray-Curtis dissimilarity coincides with AE on distributions.
            "bcd" => Ok(MeasureId::Ae),
            "nae" => Ok(MeasureId::Nae),
            "rae" => Ok(MeasureId::Rae),
            "nrae" => Ok(MeasureId::Nrae),
            "se" => Ok(MeasureId::Se),
            "nse" => Ok(MeasureId::Nse),
            "dr" => Ok(MeasureId::Dr),
            "kld" => Ok(MeasureId::Kld),
            "nkld" => Ok(MeasureId::Nkld),
            "pd" => Ok(MeasureId::Pd),
            "nas" => Ok(MeasureId::Nas),
            "nss" => Ok(MeasureId::Nss),
            _ => Err(UnknownMeasure(s.to_string())),
        }
    }
}

/// When the context's smoothing is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothingPolicy {
    /// Smooth exactly the measures that are
    /// [smoothed by default](MeasureId::smoothed_by_default).
    #[default]
    PerMeasure,
    /// Smooth the inputs of every measure.
    ForceOn,
    /// Smooth nothing, even for the default-smoothed measures.
    ForceOff,
}

/// Evaluation context: the smoothing strength and the policy deciding
/// which measures it applies to.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EvalContext {
    smoothing: SmoothingConfig,
    #[serde(default)]
    policy: SmoothingPolicy,
}

impl EvalContext {
    /// No smoothing at all (`epsilon = 0`, per-measure policy).
    pub fn raw() -> Self {
        EvalContext::default()
    }

    /// A context with the given epsilon under the default per-measure
    /// policy.
    pub fn with_epsilon(epsilon: f64) -> Result<Self, DistributionError> {
        Ok(EvalContext {
            smoothing: SmoothingConfig::with_epsilon(epsilon)?,
            policy: SmoothingPolicy::PerMeasure,
        })
    }

    /// A context with `epsilon = 1/(2 s)` for a sample of `s` items.
    pub fn from_sample_size(sample_size: u64) -> Result<Self, DistributionError> {
        Ok(EvalContext {
            smoothing: SmoothingConfig::from_sample_size(sample_size)?,
            policy: SmoothingPolicy::PerMeasure,
        })
    }

    /// Replaces the smoothing policy.
    pub fn with_policy(mut self, policy: SmoothingPolicy) -> Self {
        self.policy = policy;
        self
    }

    /// The configured smoothing.
    pub fn smoothing(&self) -> SmoothingConfig {
        self.smoothing
    }

    /// The configured policy.
    pub fn policy(&self) -> SmoothingPolicy {
        self.policy
    }

    /// The smoothing that actually applies to `measure` under the policy.
    pub fn effective_smoothing(&self, measure: MeasureId) -> SmoothingConfig {
        let smoothed = match self.policy {
            SmoothingPolicy::PerMeasure => measure.smoothed_by_default(),
            SmoothingPolicy::ForceOn => true,
            SmoothingPolicy::ForceOff => false,
        };
        if smoothed {
            self.smoothing
        } else {
            SmoothingConfig::none()
        }
    }
}

fn check_frames(p: &Prevalence, p_hat: &Prevalence) -> Result<(), MeasureError> {
    if p.codeframe() != p_hat.codeframe() {
        return Err(MeasureError::DimensionMismatch);
    }
    Ok(())
}

fn undefined(measure: MeasureId, reason: impl Into<String>) -> MeasureError {
    MeasureError::UndefinedValue {
        measure,
        reason: reason.into(),
    }
}

/// `(1/n) Σ abs(q(c) − p(c))` on already-prepared value slices.
fn ae_of(p: &[f64], q: &[f64]) -> f64 {
    let sum: f64 = p.iter().zip(q).map(|(a, b)| (b - a).abs()).sum();
    sum / p.len() as f64
}

/// `(1/n) Σ (p(c) − q(c))²`.
fn se_of(p: &[f64], q: &[f64]) -> f64 {
    let sum: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
    sum / p.len() as f64
}

/// `(1/n) Σ abs(q(c) − p(c)) / p(c)`; zero true prevalences are undefined.
fn rae_of(p: &[f64], q: &[f64]) -> Result<f64, MeasureError> {
    let mut sum = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a == 0.0 {
            return Err(undefined(
                MeasureId::Rae,
                "a class has true prevalence 0 and epsilon is 0",
            ));
        }
        sum += (b - a).abs() / a;
    }
    Ok(sum / p.len() as f64)
}

/// `(1/n) Σ abs(p(c) − q(c)) / max(p(c), q(c))`. A class empty in both
/// distributions shows no discordance and contributes 0.
fn dr_of(p: &[f64], q: &[f64]) -> f64 {
    let mut sum = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        let denom = a.max(b);
        if denom > 0.0 {
            sum += (a - b).abs() / denom;
        }
    }
    sum / p.len() as f64
}

/// `Σ p(c) ln(p(c)/q(c))`, with the `0 · ln(0/a)` limit taken as 0. A
/// class with positive true prevalence but zero predicted prevalence is
/// undefined (the divergence diverges).
fn kld_of(p: &[f64], q: &[f64]) -> Result<f64, MeasureError> {
    let mut sum = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a == 0.0 {
            continue;
        }
        if b == 0.0 {
            return Err(undefined(
                MeasureId::Kld,
                "a class has positive true prevalence but predicted prevalence 0 and epsilon is 0",
            ));
        }
        sum += a * (a / b).ln();
    }
    Ok(sum)
}

/// `(1/n) Σ (p(c) − q(c))² / q(c)`; zero predicted prevalences are
/// undefined.
fn pd_of(p: &[f64], q: &[f64]) -> Result<f64, MeasureError> {
    let mut sum = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if b == 0.0 {
            return Err(undefined(
                MeasureId::Pd,
                "a class has predicted prevalence 0 and epsilon is 0",
            ));
        }
        sum += (a - b) * (a - b) / b;
    }
    Ok(sum / p.len() as f64)
}

/// The logistic rescaling `2 e^k / (e^k + 1) − 1` of a divergence `k`,
/// computed as `tanh(k/2)`, which is algebraically identical and immune to
/// `e^k` overflowing for large `k`.
fn logistic_rescale(k: f64) -> f64 {
    (k / 2.0).tanh()
}

/// `z_AE = 2 (1 − min_c p(c)) / n`: the bound AE attains at the perverse
/// estimator. Strictly positive for every prevalence (the minimum of `n
/// >= 2` fractions is at most 1/2).
fn z_ae_of(p: &[f64]) -> f64 {
    let m = min_value(p);
    2.0 * (1.0 - m) / p.len() as f64
}

/// `z_SE = ((1 − m)² + Σ_{c != c*} p(c)²) / n` with `m = p(c*)` the
/// minimum: the value of SE at the perverse estimator.
fn z_se_of(p: &[f64]) -> f64 {
    let (min_index, m) = min_entry(p);
    let mut sum = (1.0 - m) * (1.0 - m);
    for (i, &v) in p.iter().enumerate() {
        if i != min_index {
            sum += v * v;
        }
    }
    sum / p.len() as f64
}

/// `z_RAE = (1/n) [ (1 − m)/(m + eps) + Σ_{c != c*} p(c)/(p(c) + eps) ]`:
/// the value of RAE at the (smoothed) perverse estimator. Undefined when
/// `eps = 0` and the least prevalent class is empty.
fn z_rae_of(p: &[f64], eps: f64) -> Result<f64, MeasureError> {
    let (min_index, m) = min_entry(p);
    if m + eps == 0.0 {
        return Err(undefined(
            MeasureId::Rae,
            "the least prevalent class is empty and epsilon is 0",
        ));
    }
    let mut sum = (1.0 - m) / (m + eps);
    for (i, &v) in p.iter().enumerate() {
        if i != min_index {
            sum += v / (v + eps);
        }
    }
    Ok(sum / p.len() as f64)
}

/// `z_KLD`: KLD between the smoothed `p` and the smoothed perverse
/// estimator (point mass on the least prevalent class).
fn z_kld_of(p: &[f64], eps: f64) -> Result<f64, MeasureError> {
    let n = p.len();
    let (min_index, _) = min_entry(p);
    let denom = eps * n as f64 + 1.0;
    let p_s: Vec<f64> = p.iter().map(|&v| (eps + v) / denom).collect();
    let q_s: Vec<f64> = (0..n)
        .map(|i| {
            if i == min_index {
                (1.0 + eps) / denom
            } else {
                eps / denom
            }
        })
        .collect();
    kld_of(&p_s, &q_s)
}

/// `z_PD`: PD between the smoothed `p` and the smoothed perverse
/// estimator.
fn z_pd_of(p: &[f64], eps: f64) -> Result<f64, MeasureError> {
    let n = p.len();
    let (min_index, _) = min_entry(p);
    let denom = eps * n as f64 + 1.0;
    let p_s: Vec<f64> = p.iter().map(|&v| (eps + v) / denom).collect();
    let q_s: Vec<f64> = (0..n)
        .map(|i| {
            if i == min_index {
                (1.0 + eps) / denom
            } else {
                eps / denom
            }
        })
        .collect();
    pd_of(&p_s, &q_s)
}

fn min_entry(values: &[f64]) -> (usize, f64) {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[best] {
            best = i;
        }
    }
    (best, values[best])
}

fn min_value(values: &[f64]) -> f64 {
    min_entry(values).1
}

/// `abs(p(c1) − p̂(c1)) / max(p(c1), 1 − p(c1))` on a binary codeframe.
fn nas_of(p: &[f64], q: &[f64]) -> f64 {
    let denom = p[0].max(1.0 - p[0]);
    (p[0] - q[0]).abs() / denom
}

/// Evaluates `measure` on the pair `(p, p̂)` under `ctx`.
///
/// The distributions must share a codeframe. Smoothing is applied to both
/// arguments identically, per the context's policy; the binary-only
/// measures additionally require a two-class codeframe.
pub fn evaluate(
    measure: MeasureId,
    p: &Prevalence,
    p_hat: &Prevalence,
    ctx: &EvalContext,
) -> Result<f64, MeasureError> {
    check_frames(p, p_hat)?;
    if measure.requires_binary() && p.len() != 2 {
        return Err(MeasureError::NotBinary {
            measure,
            classes: p.len(),
        });
    }
    let cfg = ctx.effective_smoothing(measure);
    let (ps, qs);
    let (p_vals, q_vals): (&[f64], &[f64]) = if cfg.is_active() {
        ps = smooth(p, cfg);
        qs = smooth(p_hat, cfg);
        (ps.values(), qs.values())
    } else {
        (p.values(), p_hat.values())
    };
    let eps = cfg.epsilon();
    match measure {
        MeasureId::Ae => Ok(ae_of(p_vals, q_vals)),
        MeasureId::Nae => Ok(ae_of(p_vals, q_vals) / z_ae_of(p_vals)),
        MeasureId::Rae => rae_of(p_vals, q_vals),
        MeasureId::Nrae => {
            // Both the numerator and its bound are evaluated on the same
            // smoothed inputs, so the ratio is exactly 1 at the perverse
            // estimator. The bound formula consumes the raw prevalence
            // together with eps (its terms are p(c)/(p(c) + eps)).
            let numerator = rae_of(p_vals, q_vals)?;
            let bound = z_rae_of(p.values(), eps)?;
            Ok(numerator / bound)
        }
        MeasureId::Se => Ok(se_of(p_vals, q_vals)),
        MeasureId::Nse => Ok(se_of(p_vals, q_vals) / z_se_of(p_vals)),
        MeasureId::Dr => Ok(dr_of(p_vals, q_vals)),
        MeasureId::Kld => kld_of(p_vals, q_vals),
        MeasureId::Nkld => Ok(logistic_rescale(kld_of(p_vals, q_vals)?)),
        MeasureId::Pd => pd_of(p_vals, q_vals),
        MeasureId::Nas => Ok(nas_of(p_vals, q_vals)),
        MeasureId::Nss => {
            let s = nas_of(p_vals, q_vals);
            Ok(s * s)
        }
    }
}

/// Absolute error: `(1/n) Σ abs(p̂(c) − p(c))`. Unsmoothed by default.
pub fn ae(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Ae, p, p_hat, ctx)
}

/// Normalized absolute error: `AE / z_AE` with `z_AE = 2(1 − min p)/n`;
/// ranges over `[0, 1]` and attains 1 at the perverse estimator.
pub fn nae(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Nae, p, p_hat, ctx)
}

/// Relative absolute error: `(1/n) Σ abs(p̂_s(c) − p_s(c)) / p_s(c)` on
/// the smoothed distributions.
pub fn rae(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Rae, p, p_hat, ctx)
}

/// Normalized relative absolute error: `RAE / z_RAE`; ranges over
/// `[0, 1]` and attains 1 at the perverse estimator.
pub fn nrae(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Nrae, p, p_hat, ctx)
}

/// Squared error: `(1/n) Σ (p(c) − p̂(c))²`. Unsmoothed by default.
pub fn se(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Se, p, p_hat, ctx)
}

/// Normalized squared error: `SE / z_SE`; ranges over `[0, 1]` and
/// attains 1 at the perverse estimator.
pub fn nse(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Nse, p, p_hat, ctx)
}

/// Discordance ratio: `(1/n) Σ abs(p_s(c) − p̂_s(c)) / max(p_s(c),
/// p̂_s(c))` on the smoothed distributions; ranges over `[0, 1)` for
/// positive entries.
pub fn dr(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Dr, p, p_hat, ctx)
}

/// Kullback-Leibler divergence: `Σ p_s(c) ln(p_s(c)/p̂_s(c))` on the
/// smoothed distributions (note: no `1/n` factor).
pub fn kld(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Kld, p, p_hat, ctx)
}

/// Normalized Kullback-Leibler divergence: the logistic rescaling
/// `2 e^K/(e^K + 1) − 1` of `K = KLD`, computed overflow-safely as
/// `tanh(K/2)`; ranges over `[0, 1)` and preserves KLD's ordering.
pub fn nkld(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Nkld, p, p_hat, ctx)
}

/// Pearson divergence: `(1/n) Σ (p_s(c) − p̂_s(c))² / p̂_s(c)` on the
/// smoothed distributions.
pub fn pd(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Pd, p, p_hat, ctx)
}

/// Normalized absolute score, error form (binary only):
/// `abs(p(c1) − p̂(c1)) / max(p(c1), 1 − p(c1))`. Coincides with NAE on
/// binary codeframes.
pub fn nas(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Nas, p, p_hat, ctx)
}

/// Normalized squared score, error form (binary only): `NAS²`. Coincides
/// with NSE on binary codeframes.
pub fn nss(p: &Prevalence, p_hat: &Prevalence, ctx: &EvalContext) -> Result<f64, MeasureError> {
    evaluate(MeasureId::Nss, p, p_hat, ctx)
}

/// The distribution-dependent upper bound of an unnormalized measure:
/// the value the measure takes at the perverse estimator of `p`.
///
/// Supported for AE, RAE, SE, KLD, and PD; the normalized measures are
/// bounded by 1 by construction and yield
/// [`MeasureError::UnsupportedMeasure`]. For the smoothed measures the
/// bound honors the context's effective epsilon, so it is exactly the
/// value of `evaluate(measure, p, perverse_estimator(p), ctx)` whenever
/// that value is defined.
pub fn upper_bound(
    measure: MeasureId,
    p: &Prevalence,
    ctx: &EvalContext,
) -> Result<f64, MeasureError> {
    let eps = ctx.effective_smoothing(measure).epsilon();
    match measure {
        MeasureId::Ae => Ok(z_ae_of(p.values())),
        MeasureId::Se => Ok(z_se_of(p.values())),
        MeasureId::Rae => z_rae_of(p.values(), eps),
        MeasureId::Kld => z_kld_of(p.values(), eps),
        MeasureId::Pd => z_pd_of(p.values(), eps),
        _ => Err(MeasureError::UnsupportedMeasure { measure }),
    }
}
