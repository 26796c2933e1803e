use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::PersistenceDiagram;
use crate::error::Result;
use crate::reduction::Barcode;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Something [`emit_svg`] can draw.
pub enum Figure<'a> {
    Barcode(&'a Barcode),
    Diagram(&'a PersistenceDiagram),
}

pub fn emit_svg(figure: Figure<'_>, path: impl AsRef<Path>) -> Result<()> {
    let svg = match figure {
        Figure::Barcode(b) => barcode_svg(b),
        Figure::Diagram(d) => diagram_svg(d),
    };
    fs::write(path, svg)?;
    Ok(())
}

/// Finite range spanned by the given values, padded so a degenerate range still draws.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(
        out,
        r##"<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="context-stroke"/></marker></defs>"##
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn axes(out: &mut String, lo: f64, hi: f64) {
    let y = HEIGHT - MARGIN;
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="black"/>"#,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{y}" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
        y + 15.0,
        label(lo)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
        WIDTH - MARGIN - 20.0,
        y + 15.0,
        label(hi)
    );
}

fn label(v: f64) -> String {
    format!("{}", (v * 1e4).round() / 1e4)
}

/// Horizontal bars grouped by dimension; essential intervals run to the right edge and
/// end in an arrowhead.
pub fn barcode_svg(barcode: &Barcode) -> String {
    let mut out = String::new();
    header(&mut out, "barcode");
    let ivs = barcode.intervals();
    let (lo, hi) = range(ivs.iter().flat_map(|iv| [iv.birth, iv.death]));
    axes(&mut out, lo, hi);
    // finite values use 90% of the width; the rest is room for arrows
    let span = (WIDTH - 2.0 * MARGIN) * 0.9;
    let x = |v: f64| MARGIN + (v - lo) / (hi - lo) * span;
    let rows = ivs.len() + ivs.iter().map(|iv| iv.dim).max().map_or(0, |d| d);
    let step = if rows == 0 { 0.0 } else { ((HEIGHT - 2.0 * MARGIN) / (rows + 1) as f64).min(14.0) };
    let mut row = 0;
    let mut prev_dim = None;
    for iv in ivs {
        if prev_dim.is_some_and(|d| d != iv.dim) {
            row += 1;
        }
        prev_dim = Some(iv.dim);
        row += 1;
        let y = MARGIN + row as f64 * step;
        let color = COLORS[iv.dim % COLORS.len()];
        if iv.is_essential() {
            let _ = writeln!(
                out,
                r#"<line class="bar essential" data-dim="{}" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="3" marker-end="url(#arrow)"/>"#,
                iv.dim,
                x(iv.birth),
                WIDTH - MARGIN
            );
        } else {
            let _ = writeln!(
                out,
                r#"<line class="bar" data-dim="{}" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="3"/>"#,
                iv.dim,
                x(iv.birth),
                x(iv.death)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Scatter of `(birth, death)` above the diagonal; essential points sit on a dashed line
/// at the top labelled `inf`.
pub fn diagram_svg(diagram: &PersistenceDiagram) -> String {
    let mut out = String::new();
    header(&mut out, &format!("persistence diagram, dimension {}", diagram.dim));
    let (lo, hi) = range(diagram.points().iter().flat_map(|&(b, d)| [b, d]));
    axes(&mut out, lo, hi);
    let side = (HEIGHT - 2.0 * MARGIN) * 0.85;
    let px = |v: f64| MARGIN + (v - lo) / (hi - lo) * side;
    let py = |v: f64| HEIGHT - MARGIN - (v - lo) / (hi - lo) * side;
    let _ = writeln!(
        out,
        r#"<line class="diagonal" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray"/>"#,
        px(lo),
        py(lo),
        px(hi),
        py(hi)
    );
    let top = MARGIN - 10.0;
    if diagram.points().iter().any(|p| p.1 == f64::INFINITY) {
        let _ = writeln!(
            out,
            r#"<line class="infinity" x1="{MARGIN}" y1="{top}" x2="{:.2}" y2="{top}" stroke="gray" stroke-dasharray="4 3"/>"#,
            px(hi)
        );
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11">inf</text>"#, MARGIN - 25.0, top + 4.0);
    }
    let color = COLORS[diagram.dim % COLORS.len()];
    for &(b, d) in diagram.points() {
        let (cy, class) = if d == f64::INFINITY { (top, "point essential") } else { (py(d), "point") };
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{:.2}" cy="{cy:.2}" r="4" fill="{color}"/>"#,
            px(b)
        );
    }
    out.push_str("</svg>\n");
    out
}
