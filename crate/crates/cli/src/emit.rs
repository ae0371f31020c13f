//! Deterministic CSV, JSON and SVG text. Every number is rounded to nine
//! significant digits before it is written.

use std::fmt::Write;

use fuzgeo_core::{BBox, FuzzyPoint, MidsetResult};
use serde::Serialize;

use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 9;

/// `v` rounded to nine significant digits, with `-0` folded to `0`.
pub fn round9(v: f64) -> f64 {
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v).parse().unwrap_or(v);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Rounds a finite value; non-finite values are numeric failures.
pub fn num(label: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(round9(v))
    } else {
        Err(CliError::Numeric(format!("{label} is not finite ({v})")))
    }
}

pub fn nums<const N: usize>(label: &str, v: [f64; N]) -> Result<[f64; N], CliError> {
    let mut out = [0.0; N];
    for (o, x) in out.iter_mut().zip(v) {
        *o = num(label, x)?;
    }
    Ok(out)
}

/// A CSV table whose cells are formatted on insertion.
pub struct Csv {
    text: String,
    columns: usize,
}

pub enum Cell<'a> {
    Num(f64),
    Int(usize),
    Text(&'a str),
    Bool(bool),
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { text: header.join(",") + "\n", columns: header.len() }
    }

    pub fn row(&mut self, label: &str, cells: &[Cell]) -> Result<(), CliError> {
        debug_assert_eq!(cells.len(), self.columns);
        for (k, cell) in cells.iter().enumerate() {
            if k > 0 {
                self.text.push(',');
            }
            match cell {
                Cell::Num(v) => write!(self.text, "{}", num(label, *v)?),
                Cell::Int(v) => write!(self.text, "{v}"),
                Cell::Text(s) => write!(self.text, "{s}"),
                Cell::Bool(b) => write!(self.text, "{b}"),
            }
            .expect("writing to a String");
        }
        self.text.push('\n');
        Ok(())
    }

    pub fn finish(self) -> String {
        self.text
    }
}

/// Pretty JSON with a trailing newline. Values are expected to be rounded
/// already.
pub fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

const SVG_WIDTH: f64 = 800.0;

fn level_colour(alpha: f64) -> String {
    let a = alpha.clamp(0.0, 1.0);
    let r = (40.0 + 200.0 * a).round();
    let b = (220.0 - 180.0 * a).round();
    format!("rgb({r},60,{b})")
}

/// Self-contained overlay of both supports, their cores and every midset
/// curve, drawn in scene coordinates with the y axis pointing up.
pub fn midset_svg(result: &MidsetResult, points: [(&str, &FuzzyPoint); 2]) -> Result<String, CliError> {
    let bbox: &BBox = &result.bbox;
    let scale = SVG_WIDTH / bbox.width();
    let height = (bbox.height() * scale).ceil();
    let [tx, ty, s] = nums("svg transform", [-bbox.xmin * scale, bbox.ymax * scale, scale])?;
    let mut out = String::new();
    let w = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    w(
        &mut out,
        format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{height}" viewBox="0 0 {SVG_WIDTH} {height}">"#
        ),
    );
    w(&mut out, r#"<rect width="100%" height="100%" fill="white"/>"#.into());
    w(&mut out, format!(r#"<g transform="matrix({s} 0 0 {} {tx} {ty})" fill="none">"#, -s));
    for (id, p) in points {
        let c = p.core();
        let (p1, p2) = p.spread().radii();
        let [cx, cy, rx, ry] = nums("support", [c.x, c.y, p1, p2])?;
        w(
            &mut out,
            format!(
                r##"<ellipse class="support" data-point="{id}" cx="{cx}" cy="{cy}" rx="{rx}" ry="{ry}" fill="#888" fill-opacity="0.15" stroke="#555" stroke-dasharray="4 3" vector-effect="non-scaling-stroke"/>"##
            ),
        );
        let dot = num("core marker", 3.0 / scale)?;
        w(&mut out, format!(r##"<circle class="core" data-point="{id}" cx="{cx}" cy="{cy}" r="{dot}" fill="#000"/>"##));
    }
    for level in &result.levels {
        let alpha = num("alpha", level.alpha)?;
        let colour = level_colour(level.alpha);
        for curve in &level.branches {
            for line in &curve.polylines {
                let mut pts = String::new();
                for (k, p) in line.iter().enumerate() {
                    let [x, y] = nums("midset vertex", [p.x, p.y])?;
                    if k > 0 {
                        pts.push(' ');
                    }
                    write!(pts, "{x},{y}").expect("writing to a String");
                }
                w(
                    &mut out,
                    format!(
                        r#"<polyline class="{}" data-alpha="{alpha}" points="{pts}" stroke="{colour}" stroke-width="1.5" vector-effect="non-scaling-stroke"/>"#,
                        curve.branch.name()
                    ),
                );
            }
        }
    }
    w(&mut out, "</g>".into());
    w(&mut out, "</svg>".into());
    Ok(out)
}
