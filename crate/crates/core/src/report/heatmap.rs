//! SVG heatmaps of sweep medians.
//!
//! Each row is a function, each column a factor. By default a cell's color
//! encodes `log10(max(median - optimum, 1e-12))`, scaled per function, on an
//! inferno-like ramp where black means closest to the optimum.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::benchmarks::{BenchmarkFunction, FunctionId, DEFAULT_DIMENSION};
use crate::error::{io_err, Result};
use crate::experiment::Factor;
use crate::report::table::HeatmapTable;

pub const ERROR_FLOOR: f64 = 1e-12;
pub const COLOR_BINS: usize = 64;

const CELL_W: f64 = 18.0;
const CELL_H: f64 = 28.0;
const LEFT: f64 = 130.0;
const TOP: f64 = 40.0;
const AXIS_H: f64 = 56.0;
const LEGEND_H: f64 = 44.0;
const RIGHT: f64 = 20.0;

/// Ramp stops from dark to light.
const RAMP: [[f64; 3]; 5] = [
    [0.0, 0.0, 4.0],
    [66.0, 10.0, 104.0],
    [147.0, 38.0, 103.0],
    [221.0, 81.0, 58.0],
    [252.0, 255.0, 164.0],
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColorValue {
    /// `log10` of the distance to the known optimum, floored at [`ERROR_FLOOR`].
    #[default]
    LogError,
    /// The median itself, linearly scaled.
    Raw,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColorScale {
    #[default]
    PerFunction,
    Global,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct HeatmapOptions {
    pub value: ColorValue,
    pub scale: ColorScale,
    /// One image with every function instead of one image per function.
    pub combined: bool,
}

pub fn known_optimum(function: FunctionId) -> f64 {
    // The optimum value is the same at every dimension for the scalable set.
    BenchmarkFunction::new(function, DEFAULT_DIMENSION)
        .map(|b| b.known_optimum_value())
        .unwrap_or(0.0)
}

/// The scalar a cell's color is derived from.
pub fn cell_value(function: FunctionId, median: f64, value: ColorValue) -> f64 {
    match value {
        ColorValue::LogError => (median - known_optimum(function)).max(ERROR_FLOOR).log10(),
        ColorValue::Raw => median,
    }
}

/// Maps `t` in `[0, 1]` to one of [`COLOR_BINS`] ramp colors.
pub fn ramp_color(t: f64) -> [u8; 3] {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let bin = ((t * COLOR_BINS as f64) as usize).min(COLOR_BINS - 1);
    let u = bin as f64 / (COLOR_BINS - 1) as f64;
    let pos = u * (RAMP.len() - 1) as f64;
    let i = (pos as usize).min(RAMP.len() - 2);
    let frac = pos - i as f64;
    let mut out = [0u8; 3];
    for c in 0..3 {
        out[c] = (RAMP[i][c] + (RAMP[i + 1][c] - RAMP[i][c]) * frac).round() as u8;
    }
    out
}

fn hex([r, g, b]: [u8; 3]) -> String {
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn factor_label(f: Factor) -> String {
    match f {
        Factor::Linear(v) => format!("{v}"),
        Factor::Vanilla => "off".into(),
    }
}

fn fmt_num(v: f64) -> String {
    if v.abs() >= 1e4 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

/// Renders `functions` (rows of `table`) to a standalone SVG document.
pub fn render_svg(table: &HeatmapTable, functions: &[FunctionId], opts: &HeatmapOptions) -> String {
    let factors = table.factors();
    let values: Vec<Vec<f64>> = functions
        .iter()
        .map(|&f| table.row(f).map(|r| cell_value(f, r.median, opts.value)).collect())
        .collect();
    let range = |vs: &mut dyn Iterator<Item = f64>| {
        vs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    let global = range(&mut values.iter().flatten().copied());

    let width = LEFT + CELL_W * factors.len() as f64 + RIGHT;
    let grid_h = CELL_H * functions.len() as f64;
    let height = TOP + grid_h + AXIS_H + LEGEND_H;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(svg, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let title = match opts.value {
        ColorValue::LogError => "median error vs. known optimum (log10)",
        ColorValue::Raw => "median final value",
    };
    let names: Vec<&str> = functions.iter().map(|f| f.name()).collect();
    let _ = writeln!(
        svg,
        r#"<text x="{LEFT}" y="20" font-size="13">{}: {title}</text>"#,
        names.join(", ")
    );

    for (row, (&function, vals)) in functions.iter().zip(&values).enumerate() {
        let (lo, hi) = match opts.scale {
            ColorScale::PerFunction => range(&mut vals.iter().copied()),
            ColorScale::Global => global,
        };
        let y = TOP + CELL_H * row as f64;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">{function}</text>"#,
            LEFT - 6.0,
            y + CELL_H / 2.0 + 4.0
        );
        let _ = writeln!(svg, r#"<g class="row" data-function="{function}">"#);
        for (col, (&v, r)) in vals.iter().zip(table.row(function)).enumerate() {
            let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
            let x = LEFT + CELL_W * col as f64;
            let _ = writeln!(
                svg,
                r#"<rect class="cell" x="{x}" y="{y}" width="{CELL_W}" height="{CELL_H}" fill="{}"><title>{function} factor={} median={:e}</title></rect>"#,
                hex(ramp_color(t)),
                factor_label(r.factor),
                r.median
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    let axis_y = TOP + grid_h + 6.0;
    for (col, &f) in factors.iter().enumerate() {
        let x = LEFT + CELL_W * col as f64 + CELL_W / 2.0 + 3.0;
        let _ = writeln!(
            svg,
            r#"<text x="{x}" y="{axis_y}" text-anchor="end" transform="rotate(-90 {x} {axis_y})">{}</text>"#,
            factor_label(f)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">factor</text>"#,
        LEFT + CELL_W * factors.len() as f64 / 2.0,
        TOP + grid_h + AXIS_H - 4.0
    );

    // Legend: the ramp with the global extremes (or "row min/max" when
    // each row is scaled separately).
    let ly = TOP + grid_h + AXIS_H + 6.0;
    let lw = 200.0;
    let step = lw / COLOR_BINS as f64;
    for b in 0..COLOR_BINS {
        let t = (b as f64 + 0.5) / COLOR_BINS as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{}" y="{ly}" width="{step}" height="10" fill="{}"/>"#,
            LEFT + step * b as f64,
            hex(ramp_color(t))
        );
    }
    let (lo_label, hi_label) = match opts.scale {
        ColorScale::PerFunction if functions.len() > 1 => ("row min".to_string(), "row max".to_string()),
        _ => (fmt_num(global.0), fmt_num(global.1)),
    };
    let _ = writeln!(svg, r#"<text x="{LEFT}" y="{}">{lo_label}</text>"#, ly + 24.0);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="end">{hi_label}</text>"#,
        LEFT + lw,
        ly + 24.0
    );
    svg.push_str("</svg>\n");
    svg
}

/// Writes `heatmap.svg` (combined) or one `heatmap_<function>.svg` per
/// function into `dir`, returning the written paths.
pub fn render_heatmaps(table: &HeatmapTable, dir: &Path, opts: &HeatmapOptions) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();
    if opts.combined {
        let path = dir.join("heatmap.svg");
        std::fs::write(&path, render_svg(table, &table.functions(), opts)).map_err(io_err(&path))?;
        written.push(path);
    } else {
        for f in table.functions() {
            let path = dir.join(format!("heatmap_{f}.svg"));
            std::fs::write(&path, render_svg(table, &[f], opts)).map_err(io_err(&path))?;
            written.push(path);
        }
    }
    Ok(written)
}
