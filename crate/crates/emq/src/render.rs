//! Text renderings of harness artifacts: the property matrix as an
//! aligned Yes/No grid, verdicts with their counterexamples, and the
//! four worked counterexample tables.
//!
//! The tables pair each fixed falsifying scenario with the scores of all
//! nine matrix measures, at the scenarios' own smoothing strength:
//!
//! 1. worst cases at a skewed and a near-uniform truth (MAX);
//! 2. equal over- and under-estimation of one truth (IMP);
//! 3. one swap against a rarer and a more frequent class (REL);
//! 4. the same swaps, judged for absolute severity (ABS).
//!
//! Cells are printed to four decimals; a `*` marks every column whose
//! values differ between the rows (beyond the crate's default tolerance),
//! which is the comparison each table exists to exhibit.

use crate::axioms::{
    fixed_scenarios, CheckStatus, PropertyId, PropertyMatrix, Verdict, SCENARIO_EPSILON,
};
use crate::distributions::{perverse_estimator, Prevalence};
use crate::measures::{evaluate, EvalContext, MeasureId};
use crate::DEFAULT_TOLERANCE;

/// One row of a counterexample table: a (truth, prediction) pair and its
/// scores under the nine matrix measures, in matrix row order.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    truth: Prevalence,
    prediction: Prevalence,
    scores: Vec<f64>,
}

impl TableRow {
    /// The true distribution.
    pub fn truth(&self) -> &Prevalence {
        &self.truth
    }

    /// The predicted distribution.
    pub fn prediction(&self) -> &Prevalence {
        &self.prediction
    }

    /// Scores in [`MeasureId::MATRIX`] order.
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }
}

/// One worked counterexample table; see the module docs for the set of
/// four.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleTable {
    property: PropertyId,
    title: String,
    caption: String,
    rows: Vec<TableRow>,
    differs: Vec<bool>,
    pd_recomputed: bool,
}

impl CounterexampleTable {
    /// The property this table's comparison probes.
    pub fn property(&self) -> PropertyId {
        self.property
    }

    /// One-line table name.
    pub fn title(&self) -> &str {
        &self.title
    }

    /// What to compare in the rows, and what the property demands.
    pub fn caption(&self) -> &str {
        &self.caption
    }

    /// The scored rows.
    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    /// Per matrix measure: whether its scores differ across the rows by
    /// more than the crate's default tolerance.
    pub fn differs(&self) -> &[bool] {
        &self.differs
    }

    /// Whether the PD column carries the footnote saying its values are
    /// recomputed from PD's definition.
    pub fn pd_recomputed(&self) -> bool {
        self.pd_recomputed
    }

    /// Renders the table as aligned text: title, caption, header row,
    /// one line per row with four-decimal cells, `*` on the columns that
    /// differ across rows, and the footnote lines.
    pub fn text(&self) -> String {
        let mut header = vec!["truth".to_string(), "prediction".to_string()];
        for &measure in &MeasureId::MATRIX {
            let mut cell = measure.acronym().to_string();
            if self.pd_recomputed && measure == MeasureId::Pd {
                cell.push('†');
            }
            header.push(cell);
        }
        let mut grid = vec![header];
        for row in &self.rows {
            let mut cells = vec![
                prevalence_label(&row.truth),
                prevalence_label(&row.prediction),
            ];
            for (j, &value) in row.scores.iter().enumerate() {
                let mut cell = format!("{value:.4}");
                if self.differs[j] {
                    cell.push('*');
                }
                cells.push(cell);
            }
            grid.push(cells);
        }

        let mut lines = vec![self.title.clone(), self.caption.clone(), String::new()];
        lines.extend(aligned(&grid, 2));
        if self.differs.iter().any(|&d| d) {
            lines.push(String::new());
            lines.push("  * differs between the rows".to_string());
        }
        if self.pd_recomputed {
            lines.push("  † recomputed from the definition".to_string());
        }
        lines.push(String::new());
        lines.join("\n")
    }
}

/// `(0.2, 0.8)` in the shortest exact decimal form.
fn prevalence_label(p: &Prevalence) -> String {
    let parts: Vec<String> = p.values().iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Aligns a grid of cells into text lines: the first `left` columns are
/// left-aligned (labels), the rest right-aligned (numbers).
fn aligned(grid: &[Vec<String>], left: usize) -> Vec<String> {
    let cols = grid[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
        .collect();
    grid.iter()
        .map(|row| {
            let mut line = String::from("  ");
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                let pad = widths[c].saturating_sub(cell.chars().count());
                if c < left {
                    line.push_str(cell);
                    line.push_str(&" ".repeat(pad));
                } else {
                    line.push_str(&" ".repeat(pad));
                    line.push_str(cell);
                }
            }
            line.trim_end().to_string()
        })
        .collect()
}

/// Builds the four counterexample tables from the fixed falsifying
/// scenarios, scoring each row with all nine matrix measures at the
/// scenarios' smoothing strength.
pub fn counterexample_tables() -> Vec<CounterexampleTable> {
    let ctx =
        EvalContext::with_epsilon(SCENARIO_EPSILON).expect("the fixed-scenario epsilon is valid");
    let pairs_of = |property: PropertyId| -> Vec<(Prevalence, Prevalence)> {
        let scenario = fixed_scenarios(property)
            .expect("this property has a fixed scenario")
            .remove(0);
        match property {
            // The worst-case table plays each truth against its perverse
            // prediction.
            PropertyId::Max => scenario
                .true_dists()
                .iter()
                .map(|p| (p.clone(), perverse_estimator(p)))
                .collect(),
            // The impartiality table plays one truth against both of its
            // mirrored predictions.
            PropertyId::Imp => scenario
                .pred_dists()
                .iter()
                .map(|q| (scenario.true_dists()[0].clone(), q.clone()))
                .collect(),
            _ => scenario
                .true_dists()
                .iter()
                .cloned()
                .zip(scenario.pred_dists().iter().cloned())
                .collect(),
        }
    };

    let table = |property: PropertyId, title: &str, caption: &str| {
        let rows: Vec<TableRow> = pairs_of(property)
            .into_iter()
            .map(|(truth, prediction)| {
                let scores = MeasureId::MATRIX
                    .iter()
                    .map(|&m| {
                        evaluate(m, &truth, &prediction, &ctx)
                            .expect("matrix measures are defined on smoothed binary pairs")
                    })
                    .collect();
                TableRow {
                    truth,
                    prediction,
                    scores,
                }
            })
            .collect();
        let differs: Vec<bool> = (0..MeasureId::MATRIX.len())
            .map(|j| {
                let lo = rows.iter().map(|r| r.scores[j]).fold(f64::INFINITY, f64::min);
                let hi = rows
                    .iter()
                    .map(|r| r.scores[j])
                    .fold(f64::NEG_INFINITY, f64::max);
                hi - lo > DEFAULT_TOLERANCE
            })
            .collect();
        CounterexampleTable {
            property,
            title: title.to_string(),
            caption: caption.to_string(),
            rows,
            differs,
            // The PD footnote belongs to the three comparison tables; the
            // worst-case table's PD column needs no flag.
            pd_recomputed: property != PropertyId::Max,
        }
    };

    vec![
        table(
            PropertyId::Max,
            "1. Worst cases at a skewed and a near-uniform truth (MAX)",
            "Each row scores a truth against its perverse prediction; a measure with a\n\
             truth-independent worst case would give both rows the same score.",
        ),
        table(
            PropertyId::Imp,
            "2. Equal over- and under-estimation of one truth (IMP)",
            "Both predictions miss the truth by the same amount in opposite directions;\n\
             an impartial measure scores both rows alike.",
        ),
        table(
            PropertyId::Rel,
            "3. One swap against a rarer and a more frequent class (REL)",
            "The same amount of mass is swapped in both rows; under relative severity\n\
             the first row (the rarer class) must score strictly higher.",
        ),
        table(
            PropertyId::Abs,
            "4. The same swaps, judged for absolute severity (ABS)",
            "The rows repeat the swaps above; under absolute severity equal-size errors\n\
             score alike, so both rows must agree.",
        ),
    ]
}

/// Renders all four counterexample tables, separated by blank lines.
pub fn counterexample_tables_text() -> String {
    counterexample_tables()
        .iter()
        .map(CounterexampleTable::text)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Renders the property matrix as an aligned Yes/No grid: one row per
/// measure, one column per general property, Yes meaning unfalsified
/// within the budget and No meaning falsified.
pub fn matrix_text(matrix: &PropertyMatrix) -> String {
    let mut header = vec![String::new()];
    header.extend(
        PropertyId::GENERAL
            .iter()
            .map(|p| p.acronym().to_string()),
    );
    let mut grid = vec![header];
    for row in &matrix.rows {
        let mut cells = vec![row.measure.acronym().to_string()];
        for cell in &row.cells {
            cells.push(match cell.verdict.status {
                CheckStatus::Unfalsified => "Yes".to_string(),
                CheckStatus::Falsified => "No".to_string(),
            });
        }
        grid.push(cells);
    }
    let mut text = aligned(&grid, 1).join("\n");
    text.push('\n');
    text
}

/// Renders one verdict as human-readable text: the header line with the
/// check parameters, then the counterexample (scenario, evaluated
/// values, and the violated conclusion) when there is one.
pub fn verdict_text(verdict: &Verdict) -> String {
    let mut lines = Vec::new();
    let status = match verdict.status {
        CheckStatus::Unfalsified => "Unfalsified",
        CheckStatus::Falsified => "Falsified",
    };
    let trials = if verdict.falsified() && verdict.trials_run == 0 {
        "by a fixed scenario, before any random trial".to_string()
    } else {
        format!("after {} random trial(s)", verdict.trials_run)
    };
    lines.push(format!(
        "{} / {}: {} ({}; budget {}, seed {}, tolerance {:e})",
        verdict.measure.acronym(),
        verdict.property.acronym(),
        status,
        trials,
        verdict.budget,
        verdict.seed,
        verdict.tolerance,
    ));

    if let Some(ce) = &verdict.counterexample {
        let scenario = &ce.scenario;
        match scenario.label() {
            Some(label) => lines.push(format!("  scenario: {label}")),
            None => lines.push(format!(
                "  scenario: randomly generated for {}",
                scenario.property().acronym()
            )),
        }
        let eps = scenario.smoothing().epsilon();
        if eps == 0.0 {
            lines.push("    smoothing: none (epsilon 0)".to_string());
        } else {
            lines.push(format!("    smoothing: epsilon {eps:e}"));
        }
        let join = |dists: &[Prevalence]| {
            dists
                .iter()
                .map(prevalence_label)
                .collect::<Vec<_>>()
                .join(", ")
        };
        lines.push(format!("    truths: {}", join(scenario.true_dists())));
        if !scenario.pred_dists().is_empty() {
            lines.push(format!(
                "    predictions: {}",
                join(scenario.pred_dists())
            ));
        }
        if let Some(block) = scenario.block() {
            lines.push(format!("    block: {{{}}}", block.join(", ")));
        }
        lines.push("  values:".to_string());
        for nv in &ce.values {
            lines.push(format!("    {} = {}", nv.name, nv.value));
        }
        lines.push(format!("  violation: {}", ce.comparison));
    }
    lines.push(String::new());
    lines.join("\n")
}
