#![forbid(unsafe_code)]
//! Thin command-line front end for the `emq` library.
//!
//! Subcommands:
//!
//! - `eval`: score a file of (true, predicted) prevalence samples and
//!   print the report as JSON.
//! - `axioms`: check measures against properties and print the verdicts,
//!   with the counterexample when a check falsifies.
//! - `table1`: print the measure-by-property matrix.
//! - `counterexamples`: print the four worked counterexample tables.
//! - `plotgrid`: sample a binary error surface onto a CSV grid file.
//!
//! Every failure prints `error[<code>]: <message>` to standard error and
//! exits with status 2; success exits with status 0. All output is UTF-8
//! and deterministic given the flags, and dispatch is single-threaded.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use emq::{
    check_property, counterexample_tables_text, evaluate_samples, ingest_path, matrix_text,
    plot_grid, property_matrix, verdict_text, EvalContext, EvaluationError, InputFormat,
    MeasureId, PropertyId, UnknownFormat, UnknownMeasure, UnknownProperty, DEFAULT_BUDGET,
    DEFAULT_SEED, DEFAULT_TOLERANCE,
};

#[derive(Parser)]
#[command(
    name = "emq",
    version,
    about = "Evaluation measures for quantification: scoring, property checks, error surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a file of prevalence samples and print the report as JSON
    Eval(EvalArgs),
    /// Check measures against properties and print the verdicts
    Axioms(AxiomsArgs),
    /// Print the measure-by-property matrix
    Table1(Table1Args),
    /// Print the four worked counterexample tables
    Counterexamples,
    /// Sample a binary error surface onto a CSV grid file
    Plotgrid(PlotgridArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Input file of per-sample prevalences
    input: PathBuf,

    /// Input format: csv or json
    #[arg(long, default_value_t = InputFormat::Csv, value_parser = parse_format)]
    format: InputFormat,

    /// Comma-separated measures to score, case-insensitive
    #[arg(
        long,
        value_delimiter = ',',
        value_parser = parse_measure,
        default_values_t = MeasureId::MATRIX
    )]
    measures: Vec<MeasureId>,

    /// Smoothing strength frozen across every record
    #[arg(long, conflicts_with = "sample_size")]
    epsilon: Option<f64>,

    /// Sample size s fixing the smoothing strength 1/(2s) for every record
    #[arg(long)]
    sample_size: Option<u64>,

    /// Aggregates to include in the report
    #[arg(long, value_enum, default_value_t = AggChoice::Both)]
    agg: AggChoice,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AggChoice {
    Mean,
    Median,
    Both,
}

#[derive(Args)]
struct AxiomsArgs {
    /// Measure to check (default: every matrix measure)
    #[arg(long, value_parser = parse_measure)]
    measure: Option<MeasureId>,

    /// Property to check (default: every property the measure supports)
    #[arg(long, value_parser = parse_property)]
    property: Option<PropertyId>,

    /// Random trials per check after the fixed scenarios
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Seed for the random trials
    #[arg(long, env = "EMQ_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Numeric tolerance for the checks
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,

    /// Print machine-readable JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Table1Args {
    /// Random trials per cell after the fixed scenarios
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Seed for the random trials
    #[arg(long, env = "EMQ_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Print machine-readable JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PlotgridArgs {
    /// Measure whose error surface to sample
    #[arg(long, value_parser = parse_measure)]
    measure: MeasureId,

    /// Grid points per axis
    #[arg(long, default_value_t = 101)]
    resolution: usize,

    /// Smoothing strength; 0 keeps the axes off the simplex boundary
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,

    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

fn parse_measure(s: &str) -> Result<MeasureId, UnknownMeasure> {
    MeasureId::from_str(s)
}

fn parse_property(s: &str) -> Result<PropertyId, UnknownProperty> {
    PropertyId::from_str(s)
}

fn parse_format(s: &str) -> Result<InputFormat, UnknownFormat> {
    InputFormat::from_str(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Axioms(args) => cmd_axioms(args),
        Command::Table1(args) => cmd_table1(args),
        Command::Counterexamples => cmd_counterexamples(),
        Command::Plotgrid(args) => cmd_plotgrid(args),
    }
}

fn cmd_eval(args: EvalArgs) -> ExitCode {
    let report = eval_context(&args)
        .and_then(|ctx| {
            let records = ingest_path(&args.input, args.format)?;
            evaluate_samples(&records, &args.measures, &ctx)
        })
        .map(|report| serde_json::to_value(&report).expect("reports serialize"));
    let mut value = match report {
        Ok(value) => value,
        Err(err) => return fail_eval(&err),
    };

    let keep = match args.agg {
        AggChoice::Both => None,
        AggChoice::Mean => Some("mean"),
        AggChoice::Median => Some("median"),
    };
    if let Some(keep) = keep {
        let aggregates = value
            .get_mut("aggregates")
            .and_then(serde_json::Value::as_object_mut)
            .expect("reports carry aggregates");
        for (_, entry) in aggregates.iter_mut() {
            let kept = entry.get(keep).cloned().expect("aggregates carry both");
            *entry = json!({ keep: kept });
        }
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("JSON values print")
    );
    ExitCode::SUCCESS
}

fn eval_context(args: &EvalArgs) -> Result<EvalContext, EvaluationError> {
    match (args.epsilon, args.sample_size) {
        (Some(epsilon), _) => Ok(EvalContext::with_epsilon(epsilon)?),
        (None, Some(size)) => Ok(EvalContext::from_sample_size(size)?),
        (None, None) => Ok(EvalContext::raw()),
    }
}

fn fail_eval(err: &EvaluationError) -> ExitCode {
    eprintln!("error[{}]: {err}", err.code());
    if let EvaluationError::InvalidRecords { diagnostics } = err {
        for diagnostic in diagnostics {
            eprintln!("  {diagnostic}");
        }
    }
    ExitCode::from(2)
}

const BINARY_PROPERTIES: [PropertyId; 4] = [
    PropertyId::BMon,
    PropertyId::BImp,
    PropertyId::BRel,
    PropertyId::BAbs,
];

fn cmd_axioms(args: AxiomsArgs) -> ExitCode {
    let measures: Vec<MeasureId> = match args.measure {
        Some(measure) => vec![measure],
        None => MeasureId::MATRIX.to_vec(),
    };
    let mut verdicts = Vec::new();
    for &measure in &measures {
        let properties: Vec<PropertyId> = match args.property {
            Some(property) => vec![property],
            None if measure.requires_binary() => BINARY_PROPERTIES.to_vec(),
            None => PropertyId::GENERAL.to_vec(),
        };
        for property in properties {
            match check_property(measure, property, args.budget, args.seed, args.tolerance) {
                Ok(verdict) => verdicts.push(verdict),
                Err(err) => {
                    eprintln!("error[{}]: {err}", err.code());
                    return ExitCode::from(2);
                }
            }
        }
    }
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&verdicts).expect("verdicts serialize")
        );
    } else {
        for verdict in &verdicts {
            print!("{}", verdict_text(verdict));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_table1(args: Table1Args) -> ExitCode {
    let matrix = match property_matrix(args.budget, args.seed) {
        Ok(matrix) => matrix,
        Err(err) => {
            eprintln!("error[{}]: {err}", err.code());
            return ExitCode::from(2);
        }
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&matrix).expect("matrices serialize")
        );
    } else {
        println!(
            "Measure-by-property matrix (budget {}, seed {}, tolerance {:e})",
            matrix.budget, matrix.seed, matrix.tolerance
        );
        println!("Yes = unfalsified within the budget, No = falsified.");
        println!();
        print!("{}", matrix_text(&matrix));
    }
    ExitCode::SUCCESS
}

fn cmd_counterexamples() -> ExitCode {
    print!("{}", counterexample_tables_text());
    ExitCode::SUCCESS
}

fn cmd_plotgrid(args: PlotgridArgs) -> ExitCode {
    let grid = match plot_grid(args.measure, args.resolution, args.epsilon) {
        Ok(grid) => grid,
        Err(err) => {
            eprintln!("error[{}]: {err}", err.code());
            return ExitCode::from(2);
        }
    };
    let write = File::create(&args.out).and_then(|file| {
        let mut writer = BufWriter::new(file);
        grid.write_csv(&mut writer)?;
        writer.flush()
    });
    if let Err(err) = write {
        eprintln!("error[IoError]: {}: {err}", args.out.display());
        return ExitCode::from(2);
    }
    println!(
        "wrote {} points ({} x {}) of {} to {}",
        grid.rows().len(),
        grid.resolution(),
        grid.resolution(),
        grid.measure(),
        args.out.display()
    );
    ExitCode::SUCCESS
}
