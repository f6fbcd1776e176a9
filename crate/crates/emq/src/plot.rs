//! Binary error surfaces: the value of one measure over a grid of
//! (true, predicted) prevalence pairs.
//!
//! On a binary codeframe a distribution is determined by its first
//! coordinate, so a measure `D` becomes a surface over the unit square:
//!
//! ```text
//! z(x, y) = D((x, 1 - x), (y, 1 - y))
//! ```
//!
//! with `x` the true prevalence of the first class and `y` its predicted
//! prevalence. [`plot_grid`] samples that surface on a uniform
//! `resolution x resolution` grid and [`PlotGrid::write_csv`] emits it as
//! `x,y,z` rows for an external plotting tool.
//!
//! The grid adapts to the smoothing strength:
//!
//! - `epsilon = 0`: the axes run over the open interval, at
//!   `(i + 1)/(resolution + 1)` for `i = 0 .. resolution`. RAE, KLD, and
//!   PD are undefined where a class has zero prevalence and no smoothing
//!   rescues it, so the endpoints are excluded.
//! - `epsilon > 0`: the axes run over the closed interval, at
//!   `i/(resolution - 1)`, endpoints included; smoothing keeps every
//!   measure finite there.
//!
//! In both regimes every `z` in the grid is finite, and the diagonal
//! `x = y` is exactly 0 for every measure.

use std::io;

use thiserror::Error;

use crate::distributions::{Codeframe, DistributionError, Prevalence};
use crate::measures::{evaluate, EvalContext, MeasureError, MeasureId};

/// Errors from building a plot grid.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlotError {
    /// A one-point grid draws no surface.
    #[error("grid resolution must be at least 2, got {0}")]
    InvalidResolution(usize),
    /// The smoothing strength was invalid.
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    /// Evaluating the measure failed.
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

impl PlotError {
    /// Stable machine-readable token naming the error kind, fit for
    /// diagnostics such as `error[InvalidResolution]: ...`.
    pub fn code(&self) -> &'static str {
        match self {
            PlotError::InvalidResolution(_) => "InvalidResolution",
            PlotError::Distribution(_) => "DistributionError",
            PlotError::Measure(_) => "MeasureError",
        }
    }
}

/// One sampled point of a binary error surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    /// True prevalence of the first class.
    pub x: f64,
    /// Predicted prevalence of the first class.
    pub y: f64,
    /// The measure's value at `((x, 1 - x), (y, 1 - y))`.
    pub z: f64,
}

/// A binary error surface sampled on a uniform grid; see the module docs
/// for the grid layout.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotGrid {
    measure: MeasureId,
    resolution: usize,
    epsilon: f64,
    rows: Vec<GridPoint>,
}

impl PlotGrid {
    /// The measure the surface belongs to.
    pub fn measure(&self) -> MeasureId {
        self.measure
    }

    /// Points per axis.
    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// The smoothing strength the surface was sampled under.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// The sampled points, row-major: the outer loop walks `x`, the
    /// inner loop walks `y`. Exactly `resolution * resolution` points.
    pub fn rows(&self) -> &[GridPoint] {
        &self.rows
    }

    /// Writes the grid as CSV with header `x,y,z`, one sampled point per
    /// row, in [`rows`](Self::rows) order. Numbers carry full precision
    /// (the shortest decimal form that parses back to the same value).
    pub fn write_csv<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y,z")?;
        for point in &self.rows {
            writeln!(out, "{},{},{}", point.x, point.y, point.z)?;
        }
        Ok(())
    }
}

/// The grid coordinates for one axis.
fn grid_axis(resolution: usize, interior: bool) -> Vec<f64> {
    (0..resolution)
        .map(|i| {
            if interior {
                (i + 1) as f64 / (resolution + 1) as f64
            } else {
                i as f64 / (resolution - 1) as f64
            }
        })
        .collect()
}

/// Samples the binary surface of `measure` on a `resolution x
/// resolution` grid under smoothing strength `epsilon`.
///
/// The smoothing policy is the default per-measure one, so the measures
/// that are defined raw (AE and friends) stay raw even when `epsilon` is
/// positive; `epsilon` only decides the grid placement and the strength
/// used by the default-smoothed measures.
pub fn plot_grid(
    measure: MeasureId,
    resolution: usize,
    epsilon: f64,
) -> Result<PlotGrid, PlotError> {
    if resolution < 2 {
        return Err(PlotError::InvalidResolution(resolution));
    }
    let ctx = EvalContext::with_epsilon(epsilon)?;
    let frame = Codeframe::of_size(2).expect("two classes form a codeframe");
    let axis = grid_axis(resolution, epsilon == 0.0);

    let mut rows = Vec::with_capacity(resolution * resolution);
    for &x in &axis {
        let p = Prevalence::new(frame.clone(), vec![x, 1.0 - x])?;
        for &y in &axis {
            let q = Prevalence::new(frame.clone(), vec![y, 1.0 - y])?;
            let z = evaluate(measure, &p, &q, &ctx)?;
            rows.push(GridPoint { x, y, z });
        }
    }
    Ok(PlotGrid {
        measure,
        resolution,
        epsilon,
        rows,
    })
}
