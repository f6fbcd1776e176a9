//! Samples a measure's binary error surface on a square grid, renders a
//! coarse text heat map of it, and writes the full grid to a CSV file
//! ready for any plotting tool.
//!
//! Run with: cargo run --example plot_surface [measure [resolution [epsilon [out.csv]]]]

use std::fs::File;
use std::io::BufWriter;

use emq::{plot_grid, MeasureId};

/// Shade characters from low to high.
const SHADES: [char; 5] = [' ', '.', 'o', 'O', '#'];

fn main() {
    let mut args = std::env::args().skip(1);
    let measure: MeasureId = args
        .next()
        .unwrap_or_else(|| "nkld".to_string())
        .parse()
        .expect("unknown measure");
    let resolution: usize = args
        .next()
        .map(|raw| raw.parse().expect("resolution must be an integer"))
        .unwrap_or(31);
    let epsilon: f64 = args
        .next()
        .map(|raw| raw.parse().expect("epsilon must be a number"))
        .unwrap_or(5e-7);
    let out = args
        .next()
        .unwrap_or_else(|| format!("{measure}_surface.csv"));

    let grid = plot_grid(measure, resolution, epsilon).expect("sampling failed");

    let max = grid
        .rows()
        .iter()
        .map(|point| point.z)
        .fold(0.0_f64, f64::max);
    println!(
        "{} surface, {resolution} x {resolution}, epsilon {epsilon:e}, max {max:.4}\n",
        measure.acronym()
    );

    // Text heat map: x (truth) down the page, y (prediction) across; the
    // quiet diagonal is the exactness of every measure at a perfect
    // prediction.
    for chunk in grid.rows().chunks(resolution) {
        let line: String = chunk
            .iter()
            .map(|point| {
                let level = (point.z / max * (SHADES.len() - 1) as f64).round() as usize;
                SHADES[level.min(SHADES.len() - 1)]
            })
            .collect();
        println!("  {line}");
    }

    let file = File::create(&out).expect("cannot create the output file");
    grid.write_csv(BufWriter::new(file)).expect("write failed");
    println!("\nwrote {} points to {out}", grid.rows().len());
}
