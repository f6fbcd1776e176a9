//! Multi-sample evaluation: scoring many (true, predicted) prevalence
//! pairs and aggregating the per-sample scores.
//!
//! Quantification experiments rarely stop at a single test sample. The
//! usual protocol draws many samples, scores each one with the chosen
//! measures, and reports a central tendency of the per-sample scores.
//! This module houses that protocol:
//!
//! - [`SampleRecord`] pairs one sample's true and predicted prevalences,
//!   plus the sample's size when it is known;
//! - [`ingest`] reads records from CSV or JSON (formats below);
//! - [`evaluate_samples`] scores every record with every requested
//!   measure and aggregates each measure's scores into a mean and a
//!   median, packaged as a [`MultiSampleReport`].
//!
//! Both the mean and the median are always computed, because neither is
//! canonically the right one and they can disagree wildly: the scores
//! `{4.8e-7, 4.5e-5, 3.0e-3}` have median `4.5e-5`, while their mean is
//! near `1.0e-3`, completely dominated by the largest value.
//!
//! # Smoothing across samples of different sizes
//!
//! The conventional smoothing strength is tied to the sample:
//! `epsilon = 1/(2 |sigma|)` for a sample of `|sigma|` items. So that
//! records of different sizes each get their conventional strength,
//! [`evaluate_samples`] treats a context whose epsilon is 0 as "no
//! override": records carrying a size are scored with their own epsilon,
//! records without one stay unsmoothed. A context with a positive epsilon
//! freezes that value across every record, keeping scores comparable when
//! that matters more. The context's policy (which measures get smoothed)
//! applies unchanged either way.
//!
//! # Input formats
//!
//! CSV, long form: header `sample_id,class,true,pred`, one row per
//! (sample, class), UTF-8, `.` decimal point. The classes of a sample
//! define its codeframe, in file order. With the header
//! `sample_id,class,true_count,pred_count` the two value columns are
//! nonnegative integer class counts instead; each column is normalized to
//! a prevalence, and the true counts' total becomes the record's sample
//! size, so the smoothed measures get their conventional epsilon for
//! free.
//!
//! JSON: one array of objects
//! `{"id": "...", "size": 123, "true": {class: value}, "pred": {class:
//! value}}`, with `size` optional. The keys of `"true"` define the
//! codeframe, in file order; `"pred"` must carry exactly the same labels,
//! in any order.
//!
//! Bad rows and records do not abort ingestion one at a time: every
//! offender is collected into a single [`EvaluationError::InvalidRecords`]
//! with one [`RecordDiagnostic`] each, so a long input can be fixed in one
//! pass. Only structural problems (an unrecognized header, a malformed
//! JSON document) abort immediately.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::{Codeframe, DistributionError, Prevalence};
use crate::measures::{evaluate, EvalContext, MeasureError, MeasureId};

/// One problem found in one row or record of an input.
///
/// The locus pins the problem to a CSV line, a JSON record index, or a
/// sample id, so a batch of diagnostics reads like a compiler's error
/// list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordDiagnostic {
    locus: String,
    message: String,
}

impl RecordDiagnostic {
    fn new(locus: impl Into<String>, message: impl fmt::Display) -> Self {
        RecordDiagnostic {
            locus: locus.into(),
            message: message.to_string(),
        }
    }

    /// Where the problem is: `"line 3"`, `"record 2 (id \"s7\")"`, or
    /// `"sample \"s7\" (line 2)"`.
    pub fn locus(&self) -> &str {
        &self.locus
    }

    /// What the problem is.
    pub fn message(&self) -> &str {
        &self.message
    }
}

impl fmt::Display for RecordDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.locus, self.message)
    }
}

/// Errors from ingesting or evaluating multi-sample inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvaluationError {
    /// There is nothing to evaluate: no records were given, or the input
    /// held none.
    #[error("no records to evaluate")]
    EmptyInput,
    /// Two records use different codeframes (different labels or a
    /// different order); their scores would not be comparable, and
    /// neither would any aggregate over them.
    #[error("records use mixed codeframes: sample {first:?} vs sample {offending:?}")]
    MixedCodeframes {
        /// The sample whose codeframe the rest were expected to match.
        first: String,
        /// The first sample that does not match it.
        offending: String,
    },
    /// The same sample id appears on two records.
    #[error("duplicate sample id {0:?}")]
    DuplicateSampleId(String),
    /// A record's own true and predicted prevalences disagree about the
    /// codeframe.
    #[error("sample {0:?}: true and predicted prevalences use different codeframes")]
    MismatchedPrevalences(String),
    /// The input was structurally unreadable (unrecognized header,
    /// malformed JSON document); nothing could be salvaged from it.
    #[error("{locus}: {message}")]
    Parse { locus: String, message: String },
    /// Some rows or records were invalid. Every offender is listed, one
    /// diagnostic each.
    #[error("{} invalid record(s) in input", diagnostics.len())]
    InvalidRecords { diagnostics: Vec<RecordDiagnostic> },
    /// An input file could not be opened or read.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    /// A record failed distribution-level validation.
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    /// Scoring a record failed.
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

impl EvaluationError {
    /// A stable name for the error class, independent of the message
    /// wording; the command-line tool prefixes its diagnostics with it.
    pub fn code(&self) -> &'static str {
        match self {
            EvaluationError::EmptyInput => "EmptyInput",
            EvaluationError::MixedCodeframes { .. } => "MixedCodeframes",
            EvaluationError::DuplicateSampleId(_) => "DuplicateSampleId",
            EvaluationError::MismatchedPrevalences(_) => "MismatchedPrevalences",
            EvaluationError::Parse { .. } => "ParseError",
            EvaluationError::InvalidRecords { .. } => "InvalidRecords",
            EvaluationError::Io { .. } => "IoError",
            EvaluationError::Distribution(_) => "DistributionError",
            EvaluationError::Measure(_) => "MeasureError",
        }
    }
}

/// Input formats understood by [`ingest`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// Long-form CSV, one row per (sample, class).
    Csv,
    /// One JSON array of record objects.
    Json,
}

impl fmt::Display for InputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFormat::Csv => "csv",
            InputFormat::Json => "json",
        })
    }
}

/// Error from parsing an input format name.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown input format {0:?} (expected csv or json)")]
pub struct UnknownFormat(pub String);

impl FromStr for InputFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(InputFormat::Csv),
            "json" => Ok(InputFormat::Json),
            _ => Err(UnknownFormat(s.to_string())),
        }
    }
}

/// One test sample: an identifier, the true prevalence, the predicted
/// prevalence, and (optionally) how many items the sample contains.
///
/// The size matters for smoothing: the conventional strength is
/// `epsilon = 1/(2 |sigma|)`, so a record that knows its `|sigma|` can be
/// scored with exactly that epsilon (see [`evaluate_samples`]).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    sample_id: String,
    true_prev: Prevalence,
    pred_prev: Prevalence,
    sample_size: Option<u64>,
}

impl SampleRecord {
    /// Validates and builds a record: both prevalences must share one
    /// codeframe, and the sample size must be at least 1 when present.
    pub fn new(
        sample_id: impl Into<String>,
        true_prev: Prevalence,
        pred_prev: Prevalence,
        sample_size: Option<u64>,
    ) -> Result<Self, EvaluationError> {
        let sample_id = sample_id.into();
        if true_prev.codeframe() != pred_prev.codeframe() {
            return Err(EvaluationError::MismatchedPrevalences(sample_id));
        }
        if sample_size == Some(0) {
            return Err(DistributionError::InvalidSampleSize(0).into());
        }
        Ok(SampleRecord {
            sample_id,
            true_prev,
            pred_prev,
            sample_size,
        })
    }

    /// The sample's identifier.
    pub fn sample_id(&self) -> &str {
        &self.sample_id
    }

    /// The true class prevalence of the sample.
    pub fn true_prev(&self) -> &Prevalence {
        &self.true_prev
    }

    /// The predicted class prevalence of the sample.
    pub fn pred_prev(&self) -> &Prevalence {
        &self.pred_prev
    }

    /// The number of items in the sample, when known.
    pub fn sample_size(&self) -> Option<u64> {
        self.sample_size
    }

    /// The codeframe shared by both prevalences.
    pub fn codeframe(&self) -> &Codeframe {
        self.true_prev.codeframe()
    }
}

/// Central tendencies of one measure's per-sample scores.
///
/// Both are always computed because neither is canonically right: the
/// mean is dominated by the largest score when magnitudes differ wildly,
/// the median is not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    /// Arithmetic mean of the per-sample scores.
    pub mean: f64,
    /// Median of the per-sample scores; for an even count, the midpoint
    /// of the two central values.
    pub median: f64,
}

/// Per-sample scores plus per-measure aggregates.
///
/// Samples and measures live in sorted maps, so iteration order, JSON
/// output, and the aggregation fold are all deterministic regardless of
/// input order. Serializing a report to JSON and reading it back
/// preserves every value exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiSampleReport {
    per_sample: BTreeMap<String, BTreeMap<MeasureId, f64>>,
    aggregates: BTreeMap<MeasureId, Aggregate>,
}

impl MultiSampleReport {
    /// Scores per sample: `sample_id -> (measure -> value)`, sorted by
    /// sample id.
    pub fn per_sample(&self) -> &BTreeMap<String, BTreeMap<MeasureId, f64>> {
        &self.per_sample
    }

    /// Aggregates per measure, sorted by measure.
    pub fn aggregates(&self) -> &BTreeMap<MeasureId, Aggregate> {
        &self.aggregates
    }

    /// One sample's score under one measure, if both were evaluated.
    pub fn score(&self, sample_id: &str, measure: MeasureId) -> Option<f64> {
        self.per_sample.get(sample_id)?.get(&measure).copied()
    }

    /// One measure's aggregate, if it was evaluated.
    pub fn aggregate(&self, measure: MeasureId) -> Option<Aggregate> {
        self.aggregates.get(&measure).copied()
    }

    /// The number of samples in the report.
    pub fn len(&self) -> usize {
        self.per_sample.len()
    }

    /// Whether the report holds no samples. [`evaluate_samples`] never
    /// produces such a report (it rejects empty inputs), but a
    /// deserialized one could be empty.
    pub fn is_empty(&self) -> bool {
        self.per_sample.is_empty()
    }
}

/// Scores every record with every requested measure and aggregates each
/// measure's scores into a mean and a median.
///
/// The records must be non-empty, share one codeframe, and carry pairwise
/// distinct sample ids. Each record is scored under `ctx`, except that a
/// context whose epsilon is 0 does not override per-record smoothing: a
/// record with a sample size is then scored with its own
/// `epsilon = 1/(2 |sigma|)` (a record without one stays unsmoothed). The
/// context's policy carries over unchanged in both cases.
///
/// Aggregates are folded from the sorted per-sample map, never from the
/// input order, so the report is invariant under permutation of the
/// records and every aggregate is recomputable from the per-sample
/// scores it sits next to. An empty measure list is allowed and yields a
/// report with empty score maps.
pub fn evaluate_samples(
    records: &[SampleRecord],
    measures: &[MeasureId],
    ctx: &EvalContext,
) -> Result<MultiSampleReport, EvaluationError> {
    let first = records.first().ok_or(EvaluationError::EmptyInput)?;
    for record in records {
        if record.codeframe() != first.codeframe() {
            return Err(EvaluationError::MixedCodeframes {
                first: first.sample_id().to_string(),
                offending: record.sample_id().to_string(),
            });
        }
    }

    let mut per_sample: BTreeMap<String, BTreeMap<MeasureId, f64>> = BTreeMap::new();
    for record in records {
        let record_ctx = record_context(record, ctx)?;
        let mut scores = BTreeMap::new();
        for &measure in measures {
            let value = evaluate(measure, record.true_prev(), record.pred_prev(), &record_ctx)?;
            scores.insert(measure, value);
        }
        if per_sample
            .insert(record.sample_id().to_string(), scores)
            .is_some()
        {
            return Err(EvaluationError::DuplicateSampleId(
                record.sample_id().to_string(),
            ));
        }
    }

    let mut aggregates = BTreeMap::new();
    for &measure in measures {
        let mut values: Vec<f64> = per_sample.values().map(|scores| scores[&measure]).collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        values.sort_by(f64::total_cmp);
        let mid = values.len() / 2;
        let median = if values.len() % 2 == 1 {
            values[mid]
        } else {
            (values[mid - 1] + values[mid]) / 2.0
        };
        aggregates.insert(measure, Aggregate { mean, median });
    }

    Ok(MultiSampleReport {
        per_sample,
        aggregates,
    })
}

/// The context one record is scored under: a context whose epsilon is 0
/// yields to the record's own sample size, a positive one freezes the
/// caller's epsilon across all records.
fn record_context(
    record: &SampleRecord,
    ctx: &EvalContext,
) -> Result<EvalContext, EvaluationError> {
    if ctx.smoothing().epsilon() > 0.0 {
        return Ok(*ctx);
    }
    match record.sample_size() {
        Some(size) => Ok(EvalContext::from_sample_size(size)?.with_policy(ctx.policy())),
        None => Ok(*ctx),
    }
}

/// Reads sample records from `reader` in the given format.
///
/// Bad rows and records are collected into one
/// [`EvaluationError::InvalidRecords`] listing every offender; only
/// structural problems (an unrecognized CSV header, a malformed JSON
/// document) abort immediately with [`EvaluationError::Parse`]. An input
/// with no records at all (an empty file, a lone header, an empty JSON
/// array) is not an ingestion error: it returns an empty list, and
/// [`evaluate_samples`] then reports
/// [`EmptyInput`](EvaluationError::EmptyInput).
pub fn ingest<R: Read>(reader: R, format: InputFormat) -> Result<Vec<SampleRecord>, EvaluationError> {
    match format {
        InputFormat::Csv => ingest_csv(reader),
        InputFormat::Json => ingest_json(reader),
    }
}

/// Opens `path` and ingests it; see [`ingest`].
pub fn ingest_path(
    path: impl AsRef<Path>,
    format: InputFormat,
) -> Result<Vec<SampleRecord>, EvaluationError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| EvaluationError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ingest(BufReader::new(file), format)
}

/// Which value columns a CSV header announces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CsvVariant {
    /// `sample_id,class,true,pred`: prevalence fractions.
    Fractions,
    /// `sample_id,class,true_count,pred_count`: integer class counts,
    /// normalized on ingestion; the true counts' total becomes the
    /// record's sample size.
    Counts,
}

/// One sample's rows, accumulated while scanning the CSV.
struct RawSample {
    id: String,
    /// Line of the sample's first row, for diagnostics.
    line: u64,
    labels: Vec<String>,
    true_vals: Vec<f64>,
    pred_vals: Vec<f64>,
    /// Counts variant only: the running total of the true counts.
    true_total: u64,
}

impl RawSample {
    fn finalize(&self, variant: CsvVariant) -> Result<SampleRecord, String> {
        let frame = Codeframe::new(self.labels.clone()).map_err(|e| e.to_string())?;
        match variant {
            CsvVariant::Fractions => {
                let true_prev = Prevalence::new(frame.clone(), self.true_vals.clone())
                    .map_err(|e| format!("true prevalence: {e}"))?;
                let pred_prev = Prevalence::new(frame, self.pred_vals.clone())
                    .map_err(|e| format!("predicted prevalence: {e}"))?;
                SampleRecord::new(&self.id, true_prev, pred_prev, None).map_err(|e| e.to_string())
            }
            CsvVariant::Counts => {
                let true_prev = normalize_counts(frame.clone(), &self.true_vals, "true")?;
                let pred_prev = normalize_counts(frame, &self.pred_vals, "predicted")?;
                SampleRecord::new(&self.id, true_prev, pred_prev, Some(self.true_total))
                    .map_err(|e| e.to_string())
            }
        }
    }
}

/// Turns one column of class counts into a prevalence.
fn normalize_counts(frame: Codeframe, counts: &[f64], which: &str) -> Result<Prevalence, String> {
    let total: f64 = counts.iter().sum();
    if total <= 0.0 {
        return Err(format!("{which} counts sum to 0, nothing to normalize"));
    }
    let values = counts.iter().map(|c| c / total).collect();
    Prevalence::new(frame, values).map_err(|e| format!("{which} prevalence: {e}"))
}

fn ingest_csv<R: Read>(reader: R) -> Result<Vec<SampleRecord>, EvaluationError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr
        .headers()
        .map_err(|e| EvaluationError::Parse {
            locus: "line 1".to_string(),
            message: e.to_string(),
        })?
        .clone();
    // A file with no content at all is no-records, not a parse error.
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Ok(Vec::new());
    }
    let fields: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
    let variant = if fields == ["sample_id", "class", "true", "pred"] {
        CsvVariant::Fractions
    } else if fields == ["sample_id", "class", "true_count", "pred_count"] {
        CsvVariant::Counts
    } else {
        return Err(EvaluationError::Parse {
            locus: "line 1".to_string(),
            message: format!(
                "unrecognized header {:?}; expected \"sample_id,class,true,pred\" or \
                 \"sample_id,class,true_count,pred_count\"",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    };

    let mut samples: Vec<RawSample> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut diagnostics: Vec<RecordDiagnostic> = Vec::new();

    for row in rdr.records() {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                let locus = match e.position() {
                    Some(p) => format!("line {}", p.line()),
                    None => "input".to_string(),
                };
                diagnostics.push(RecordDiagnostic::new(locus, e));
                continue;
            }
        };
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let locus = format!("line {line}");

        let id = row.get(0).unwrap_or("");
        let class = row.get(1).unwrap_or("");
        if id.is_empty() {
            diagnostics.push(RecordDiagnostic::new(locus, "empty sample_id"));
            continue;
        }
        if class.is_empty() {
            diagnostics.push(RecordDiagnostic::new(locus, "empty class label"));
            continue;
        }

        let (true_val, pred_val, true_count) = match variant {
            CsvVariant::Fractions => {
                let t = row.get(2).unwrap_or("").parse::<f64>();
                let p = row.get(3).unwrap_or("").parse::<f64>();
                match (t, p) {
                    (Ok(t), Ok(p)) => (t, p, 0),
                    _ => {
                        diagnostics.push(RecordDiagnostic::new(
                            locus,
                            format!(
                                "invalid prevalence pair ({:?}, {:?}); expected two numbers",
                                row.get(2).unwrap_or(""),
                                row.get(3).unwrap_or("")
                            ),
                        ));
                        continue;
                    }
                }
            }
            CsvVariant::Counts => {
                let t = row.get(2).unwrap_or("").parse::<u64>();
                let p = row.get(3).unwrap_or("").parse::<u64>();
                match (t, p) {
                    (Ok(t), Ok(p)) => (t as f64, p as f64, t),
                    _ => {
                        diagnostics.push(RecordDiagnostic::new(
                            locus,
                            format!(
                                "invalid count pair ({:?}, {:?}); expected two nonnegative integers",
                                row.get(2).unwrap_or(""),
                                row.get(3).unwrap_or("")
                            ),
                        ));
                        continue;
                    }
                }
            }
        };

        let slot = match index.get(id) {
            Some(&slot) => slot,
            None => {
                samples.push(RawSample {
                    id: id.to_string(),
                    line,
                    labels: Vec::new(),
                    true_vals: Vec::new(),
                    pred_vals: Vec::new(),
                    true_total: 0,
                });
                index.insert(id.to_string(), samples.len() - 1);
                samples.len() - 1
            }
        };
        let sample = &mut samples[slot];
        if sample.labels.iter().any(|l| l == class) {
            diagnostics.push(RecordDiagnostic::new(
                locus,
                format!("duplicate class {class:?} for sample {id:?}"),
            ));
            continue;
        }
        sample.labels.push(class.to_string());
        sample.true_vals.push(true_val);
        sample.pred_vals.push(pred_val);
        sample.true_total = sample.true_total.saturating_add(true_count);
    }

    let mut records = Vec::with_capacity(samples.len());
    for sample in &samples {
        match sample.finalize(variant) {
            Ok(record) => records.push(record),
            Err(message) => diagnostics.push(RecordDiagnostic::new(
                format!("sample {:?} (line {})", sample.id, sample.line),
                message,
            )),
        }
    }

    if diagnostics.is_empty() {
        Ok(records)
    } else {
        Err(EvaluationError::InvalidRecords { diagnostics })
    }
}

/// The JSON record shape: `{"id", "size"?, "true", "pred"}`. The maps
/// keep their keys in file order, which is what makes "the true object's
/// keys define the codeframe" well defined.
#[derive(Deserialize)]
struct JsonRecord {
    id: String,
    #[serde(default)]
    size: Option<u64>,
    #[serde(rename = "true")]
    true_prev: serde_json::Map<String, serde_json::Value>,
    pred: serde_json::Map<String, serde_json::Value>,
}

fn ingest_json<R: Read>(reader: R) -> Result<Vec<SampleRecord>, EvaluationError> {
    let doc: Vec<serde_json::Value> =
        serde_json::from_reader(reader).map_err(|e| EvaluationError::Parse {
            locus: "input".to_string(),
            message: e.to_string(),
        })?;

    let mut records = Vec::with_capacity(doc.len());
    let mut diagnostics = Vec::new();
    for (i, value) in doc.into_iter().enumerate() {
        let raw: JsonRecord = match serde_json::from_value(value) {
            Ok(raw) => raw,
            Err(e) => {
                diagnostics.push(RecordDiagnostic::new(format!("record {}", i + 1), e));
                continue;
            }
        };
        let locus = format!("record {} (id {:?})", i + 1, raw.id);
        match json_record(raw) {
            Ok(record) => records.push(record),
            Err(message) => diagnostics.push(RecordDiagnostic::new(locus, message)),
        }
    }

    if diagnostics.is_empty() {
        Ok(records)
    } else {
        Err(EvaluationError::InvalidRecords { diagnostics })
    }
}

fn json_number(value: &serde_json::Value, what: &str) -> Result<f64, String> {
    value
        .as_f64()
        .ok_or_else(|| format!("{what}: expected a number, got {value}"))
}

fn json_record(raw: JsonRecord) -> Result<SampleRecord, String> {
    let labels: Vec<String> = raw.true_prev.keys().cloned().collect();
    let frame = Codeframe::new(labels.clone()).map_err(|e| e.to_string())?;

    let mut true_vals = Vec::with_capacity(labels.len());
    for (label, value) in &raw.true_prev {
        true_vals.push(json_number(value, &format!("true[{label:?}]"))?);
    }
    let mut pred_vals = Vec::with_capacity(labels.len());
    for label in &labels {
        match raw.pred.get(label) {
            Some(value) => pred_vals.push(json_number(value, &format!("pred[{label:?}]"))?),
            None => return Err(format!("pred object is missing class {label:?}")),
        }
    }
    for key in raw.pred.keys() {
        if !raw.true_prev.contains_key(key) {
            return Err(format!("pred object has class {key:?} that true does not"));
        }
    }

    let true_prev =
        Prevalence::new(frame.clone(), true_vals).map_err(|e| format!("true prevalence: {e}"))?;
    let pred_prev =
        Prevalence::new(frame, pred_vals).map_err(|e| format!("predicted prevalence: {e}"))?;
    SampleRecord::new(raw.id, true_prev, pred_prev, raw.size).map_err(|e| e.to_string())
}
