//! Plain-text formats. Everything is ASCII and whitespace separated; `#` starts a comment
//! that runs to the end of the line, and blank lines are ignored.
//!
//! | format | line shape |
//! |---|---|
//! | filtered complex | `dim v0 ... vdim value` |
//! | point cloud | `x1 ... xd` |
//! | distance matrix | `n` rows of `n` reals |
//! | edge list | `u v w` (0-indexed) |
//! | image | `d`, then the `d` extents, then the values in row-major order |
//! | barcode / diagram | `dim birth death`, `death = inf` for essential classes |

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::builders::{MetricInput, WeightedGraph};
use crate::complex::{make_complex, FilteredComplex};
use crate::cubical::ImageGrid;
use crate::diagrams::PersistenceDiagram;
use crate::error::{Error, Result};
use crate::reduction::{Barcode, Interval};

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn real(line: usize, s: &str) -> Result<f64> {
    match s {
        "inf" | "+inf" | "Inf" | "infinity" => Ok(f64::INFINITY),
        _ => s
            .parse::<f64>()
            .map_err(|_| Error::parse(line, format!("expected a number, found `{s}`"))),
    }
}

fn finite(line: usize, s: &str) -> Result<f64> {
    let v = real(line, s)?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("expected a finite number, found `{s}`")));
    }
    Ok(v)
}

fn integer<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse::<T>()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found `{s}`")))
}

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros removed, exponent
/// form for very large or small magnitudes. Round-trips every finite `f64`.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-4..17).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn parse_complex(text: &str) -> Result<FilteredComplex> {
    let mut simplices = Vec::new();
    for (line, fields) in data_lines(text) {
        let dim: usize = integer(line, fields[0])?;
        if fields.len() != dim + 3 {
            return Err(Error::parse(
                line,
                format!("a {dim}-simplex line needs {} fields, found {}", dim + 3, fields.len()),
            ));
        }
        let vertices = fields[1..=dim + 1]
            .iter()
            .map(|s| integer::<u64>(line, s))
            .collect::<Result<Vec<_>>>()?;
        let value = finite(line, fields[dim + 2])?;
        simplices.push((vertices, value));
    }
    if simplices.is_empty() {
        return Err(Error::EmptyInput);
    }
    make_complex(simplices)
}

pub fn write_complex(complex: &FilteredComplex) -> String {
    let mut out = String::new();
    for (s, v) in complex.iter() {
        let _ = write!(out, "{}", s.len() - 1);
        for x in s {
            let _ = write!(out, " {x}");
        }
        let _ = writeln!(out, " {}", format_g17(v));
    }
    out
}

pub fn parse_points(text: &str) -> Result<MetricInput> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (line, fields) in data_lines(text) {
        let p = fields.iter().map(|s| finite(line, s)).collect::<Result<Vec<_>>>()?;
        if let Some(first) = points.first() {
            if first.len() != p.len() {
                return Err(Error::parse(line, format!("expected {} coordinates, found {}", first.len(), p.len())));
            }
        }
        points.push(p);
    }
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    MetricInput::from_points(&points)
}

pub fn write_points<P: AsRef<[f64]>>(points: &[P]) -> String {
    let mut out = String::new();
    for p in points {
        let row: Vec<String> = p.as_ref().iter().map(|&x| format_g17(x)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn parse_distance_matrix(text: &str) -> Result<MetricInput> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line, fields) in data_lines(text) {
        rows.push(fields.iter().map(|s| finite(line, s)).collect::<Result<Vec<_>>>()?);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    MetricInput::from_matrix(&rows)
}

pub fn write_distance_matrix(metric: &MetricInput) -> String {
    write_points(&metric.distance_matrix())
}

/// Edge list; the node count is one more than the largest index, or `nodes` if given.
pub fn parse_edge_list(text: &str, nodes: Option<usize>) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (line, fields) in data_lines(text) {
        if fields.len() != 3 {
            return Err(Error::parse(line, format!("expected `u v w`, found {} fields", fields.len())));
        }
        let u: usize = integer(line, fields[0])?;
        let v: usize = integer(line, fields[1])?;
        let w = finite(line, fields[2])?;
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v, w));
    }
    WeightedGraph::new(nodes.unwrap_or(n), edges)
}

pub fn write_edge_list(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# nodes {}", graph.node_count());
    for &(u, v, w) in graph.edges() {
        let _ = writeln!(out, "{u} {v} {}", format_g17(w));
    }
    out
}

/// Node count declared by a `# nodes N` comment, as written by [`write_edge_list`].
pub fn declared_nodes(text: &str) -> Option<usize> {
    text.lines()
        .find_map(|l| l.trim().strip_prefix("# nodes "))
        .and_then(|n| n.trim().parse().ok())
}

pub fn parse_image(text: &str) -> Result<ImageGrid> {
    let mut tokens = data_lines(text).flat_map(|(line, fields)| fields.into_iter().map(move |f| (line, f)));
    let (line, d) = tokens.next().ok_or(Error::EmptyInput)?;
    let d: usize = integer(line, d)?;
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDim(d));
    }
    let mut dims = Vec::with_capacity(d);
    for _ in 0..d {
        let (line, e) = tokens
            .next()
            .ok_or_else(|| Error::InvalidImage(format!("expected {d} extents")))?;
        dims.push(integer::<usize>(line, e)?);
    }
    let values = tokens.map(|(line, s)| finite(line, s)).collect::<Result<Vec<_>>>()?;
    ImageGrid::new(dims, values)
}

pub fn write_image(image: &ImageGrid) -> String {
    let dims = image.dims();
    let mut out = format!("{}\n", dims.len());
    let ext: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "{}", ext.join(" "));
    let width = *dims.last().unwrap();
    for row in image.values().chunks(width) {
        let row: Vec<String> = row.iter().map(|&x| format_g17(x)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn parse_barcode(text: &str) -> Result<Barcode> {
    let mut intervals = Vec::new();
    for (line, fields) in data_lines(text) {
        if fields.len() != 3 {
            return Err(Error::parse(line, format!("expected `dim birth death`, found {} fields", fields.len())));
        }
        let dim: usize = integer(line, fields[0])?;
        let birth = finite(line, fields[1])?;
        let death = real(line, fields[2])?;
        if death < birth {
            return Err(Error::parse(line, format!("death {death} precedes birth {birth}")));
        }
        intervals.push(Interval::new(dim, birth, death));
    }
    Barcode::new(intervals)
}

/// Lines `dim birth death`, sorted by `(dim, birth, death)`.
pub fn write_barcode(barcode: &Barcode) -> String {
    let mut out = String::new();
    for iv in barcode.intervals() {
        let _ = writeln!(out, "{} {} {}", iv.dim, format_g17(iv.birth), format_g17(iv.death));
    }
    out
}

/// Diagram of one dimension from a barcode-format file.
pub fn parse_diagram(text: &str, dim: usize) -> Result<PersistenceDiagram> {
    Ok(PersistenceDiagram::from_barcode(&parse_barcode(text)?, dim))
}

pub fn write_diagram(diagram: &PersistenceDiagram) -> String {
    let mut out = String::new();
    for &(b, d) in diagram.points() {
        let _ = writeln!(out, "{} {} {}", diagram.dim, format_g17(b), format_g17(d));
    }
    out
}

pub fn read_to_string(path: impl AsRef<Path>) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_printf() {
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(3.0), "3");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(format_g17(1e20), "1e+20");
        assert_eq!(format_g17(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(format_g17(123456.0), "123456");
        assert_eq!(format_g17(-2.5), "-2.5");
        assert_eq!(format_g17(0.0001), "0.0001");
        assert_eq!(format_g17(f64::INFINITY), "inf");
        for x in [0.1, 2.0 / 3.0, 1e-300, 6.02e23, 12345.678] {
            assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn complex_round_trip() {
        let text = "# triangle\n0 0 1\n0 1 2\n0 2 2\n1 0 1 2\n1 0 2 3\n1 1 2 3\n2 0 1 2 4 # top\n";
        let k = parse_complex(text).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(parse_complex(&write_complex(&k)).unwrap(), k);
    }

    #[test]
    fn complex_errors() {
        assert!(matches!(parse_complex("1 0 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_complex("0 0 x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_complex("# nothing\n"), Err(Error::EmptyInput)));
        assert!(matches!(parse_complex("0 0 0\n1 0 1 1\n"), Err(Error::MissingFace { .. })));
    }

    #[test]
    fn barcode_round_trip() {
        let text = "1 3 4\n0 2 3\n0 1 inf\n";
        let b = parse_barcode(text).unwrap();
        assert_eq!(write_barcode(&b), "0 1 inf\n0 2 3\n1 3 4\n");
        let b2 = Barcode::new(vec![Interval::new(0, 0.1, 1.0 / 3.0)]).unwrap();
        assert_eq!(parse_barcode(&write_barcode(&b2)).unwrap(), b2);
        assert!(parse_barcode("0 3 1").is_err());
        let d = parse_diagram(text, 0).unwrap();
        assert_eq!(d.points(), &[(1.0, f64::INFINITY), (2.0, 3.0)]);
    }

    #[test]
    fn points_and_matrix() {
        let m = parse_points("0 0\n3 4 # comment\n").unwrap();
        assert_eq!(m.dist(0, 1), 5.0);
        assert!(parse_points("0 0\n1\n").is_err());
        let d = parse_distance_matrix(&write_distance_matrix(&m)).unwrap();
        assert_eq!(d.dist(0, 1), 5.0);
        assert!(parse_distance_matrix("0 1\n2 0\n").is_err());
    }

    #[test]
    fn edges_and_images() {
        let g = parse_edge_list("0 1 0.5\n1 2 2\n", None).unwrap();
        assert_eq!(g.node_count(), 3);
        let text = write_edge_list(&WeightedGraph::new(5, vec![(0, 1, 1.0)]).unwrap());
        assert_eq!(parse_edge_list(&text, declared_nodes(&text)).unwrap().node_count(), 5);
        let img = parse_image("2\n2 3\n1 2 3\n4 5 6\n").unwrap();
        assert_eq!(img.dims(), &[2, 3]);
        assert_eq!(parse_image(&write_image(&img)).unwrap(), img);
        assert!(matches!(parse_image("4\n1 1 1 1\n0\n"), Err(Error::UnsupportedDim(4))));
        assert!(parse_image("2\n2 2\n1 2 3\n").is_err());
    }
}
