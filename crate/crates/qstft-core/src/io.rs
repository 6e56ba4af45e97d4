//! CSV formats for signals and time-frequency lattices.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! write/read cycle reproduces every value bit for bit and identical inputs
//! produce byte-identical files. Signal files carry the header `t,w,x,y,z`
//! (or `t,w` for real signals); lattice files carry
//! `x,w,vw,vx,vy,vz,mag` in row-major order with the time-shift axis
//! outermost. The `mag` column is derived on write and ignored on read.
//!
//! Parsers report the 1-based line number of the first offending row; grids
//! are rebuilt as uniform trapezoid grids, and node columns that stray from
//! uniform spacing are rejected rather than silently resampled.

use crate::grid::{make_grid, GridRule, LineGrid, SampledSignal};
use crate::qstft::TimeFreqGrid;
use crate::quat::{ImaginaryUnit, Quaternion};
use thiserror::Error;

/// Relative slack when checking that a node column is uniformly spaced.
const NODE_SPACING_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

impl CsvError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        CsvError { line, message: message.into() }
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn parse_f64(field: &str, name: &str, line: usize) -> Result<f64, CsvError> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| CsvError::new(line, format!("cannot parse {name} value {field:?}")))
}

/// Splits CSV text into trimmed, non-empty lines with their 1-based numbers.
fn rows(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect()
}

/// Rebuilds a uniform trapezoid grid from an explicit node column.
fn grid_from_nodes(nodes: &[f64], first_line: usize) -> Result<LineGrid, CsvError> {
    if nodes.len() < 2 {
        return Err(CsvError::new(first_line, "need at least two sample rows"));
    }
    let n = nodes.len();
    let lo = nodes[0];
    let hi = nodes[n - 1];
    let h = (hi - lo) / (n - 1) as f64;
    if !(h > 0.0) || !h.is_finite() {
        return Err(CsvError::new(first_line, "node column must increase"));
    }
    for (i, &t) in nodes.iter().enumerate() {
        let expect = lo + i as f64 * h;
        if (t - expect).abs() > NODE_SPACING_TOL * h.max(t.abs()) {
            return Err(CsvError::new(
                first_line + i,
                format!("node {t} is not on the uniform spacing {h}"),
            ));
        }
    }
    make_grid(lo, hi, n, GridRule::Trapezoid)
        .map_err(|e| CsvError::new(first_line, e.to_string()))
}

/// Renders a signal under the `t,w,x,y,z` contract. Purely real signals
/// (every component beyond `w` exactly zero) are written in the short
/// `t,w` form.
pub fn write_signal_csv(f: &SampledSignal) -> String {
    let real = f.values.iter().all(|v| v.x == 0.0 && v.y == 0.0 && v.z == 0.0);
    let mut out = String::from(if real { "t,w\n" } else { "t,w,x,y,z\n" });
    for (&t, &v) in f.grid.nodes().iter().zip(&f.values) {
        if real {
            out.push_str(&format!("{},{}\n", fmt_f64(t), fmt_f64(v.w)));
        } else {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_f64(t),
                fmt_f64(v.w),
                fmt_f64(v.x),
                fmt_f64(v.y),
                fmt_f64(v.z)
            ));
        }
    }
    out
}

/// Parses a signal CSV; accepts both header forms.
pub fn read_signal_csv(text: &str) -> Result<SampledSignal, CsvError> {
    let lines = rows(text);
    let (&(header_line, header), body) = lines
        .split_first()
        .ok_or_else(|| CsvError::new(1, "empty file"))?;
    let real = match header {
        "t,w" => true,
        "t,w,x,y,z" => false,
        other => {
            return Err(CsvError::new(
                header_line,
                format!("expected header \"t,w\" or \"t,w,x,y,z\", found {other:?}"),
            ))
        }
    };
    let width = if real { 2 } else { 5 };
    let mut nodes = Vec::with_capacity(body.len());
    let mut values = Vec::with_capacity(body.len());
    for &(line, row) in body {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != width {
            return Err(CsvError::new(
                line,
                format!("expected {width} comma-separated fields, found {}", fields.len()),
            ));
        }
        nodes.push(parse_f64(fields[0], "t", line)?);
        let w = parse_f64(fields[1], "w", line)?;
        values.push(if real {
            Quaternion::real(w)
        } else {
            Quaternion::new(
                w,
                parse_f64(fields[2], "x", line)?,
                parse_f64(fields[3], "y", line)?,
                parse_f64(fields[4], "z", line)?,
            )
        });
    }
    let first_body_line = body.first().map(|&(l, _)| l).unwrap_or(header_line + 1);
    let grid = grid_from_nodes(&nodes, first_body_line)?;
    SampledSignal::new(grid, values).map_err(|e| CsvError::new(first_body_line, e.to_string()))
}

/// Renders a time-frequency lattice under the `x,w,vw,vx,vy,vz,mag`
/// contract, row-major with the time-shift axis outermost.
pub fn write_grid_csv(tf: &TimeFreqGrid) -> String {
    let mut out = String::from("x,w,vw,vx,vy,vz,mag\n");
    for (ix, &x) in tf.xgrid.nodes().iter().enumerate() {
        for (iw, &w) in tf.wgrid.nodes().iter().enumerate() {
            let v = tf.value(ix, iw);
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                fmt_f64(x),
                fmt_f64(w),
                fmt_f64(v.w),
                fmt_f64(v.x),
                fmt_f64(v.y),
                fmt_f64(v.z),
                fmt_f64(v.norm())
            ));
        }
    }
    out
}

/// Parses a lattice CSV back into a [`TimeFreqGrid`]. The file format does
/// not carry the imaginary unit, so the caller supplies it. Rows must be in
/// the writer's row-major order.
pub fn read_grid_csv(text: &str, unit: ImaginaryUnit) -> Result<TimeFreqGrid, CsvError> {
    let lines = rows(text);
    let (&(header_line, header), body) = lines
        .split_first()
        .ok_or_else(|| CsvError::new(1, "empty file"))?;
    if header != "x,w,vw,vx,vy,vz,mag" {
        return Err(CsvError::new(
            header_line,
            format!("expected header \"x,w,vw,vx,vy,vz,mag\", found {header:?}"),
        ));
    }
    let mut xs: Vec<f64> = Vec::new();
    let mut ws: Vec<f64> = Vec::new();
    let mut values = Vec::with_capacity(body.len());
    for &(line, row) in body {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 7 {
            return Err(CsvError::new(
                line,
                format!("expected 7 comma-separated fields, found {}", fields.len()),
            ));
        }
        let x = parse_f64(fields[0], "x", line)?;
        let w = parse_f64(fields[1], "w", line)?;
        // First block defines the frequency axis; later blocks must repeat it.
        if xs.last() != Some(&x) {
            xs.push(x);
        }
        if xs.len() == 1 {
            ws.push(w);
        } else {
            let expect = ws[(values.len()) % ws.len()];
            if w != expect {
                return Err(CsvError::new(
                    line,
                    format!("rows are not in row-major lattice order (w = {w}, expected {expect})"),
                ));
            }
        }
        values.push(Quaternion::new(
            parse_f64(fields[2], "vw", line)?,
            parse_f64(fields[3], "vx", line)?,
            parse_f64(fields[4], "vy", line)?,
            parse_f64(fields[5], "vz", line)?,
        ));
        // The mag column is derived; parse it for shape, ignore the value.
        parse_f64(fields[6], "mag", line)?;
    }
    let first_body_line = body.first().map(|&(l, _)| l).unwrap_or(header_line + 1);
    if values.len() != xs.len() * ws.len() {
        return Err(CsvError::new(
            first_body_line,
            format!(
                "row count {} does not fill a {} x {} lattice",
                values.len(),
                xs.len(),
                ws.len()
            ),
        ));
    }
    let xgrid = grid_from_nodes(&xs, first_body_line)?;
    let wgrid = grid_from_nodes(&ws, first_body_line)?;
    TimeFreqGrid::new(xgrid, wgrid, unit, values)
        .map_err(|e| CsvError::new(first_body_line, e.to_string()))
}
