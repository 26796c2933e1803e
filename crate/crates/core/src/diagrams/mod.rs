//! Persistence diagrams, the bottleneck and p-Wasserstein distances, and SVG figures.
//!
//! The diagonal is implicit: any off-diagonal point may be matched to its orthogonal
//! projection onto it. Essential points (infinite death) can only be matched to each
//! other, by their births.

mod distance;
mod hungarian;
mod matching;
mod svg;

pub use distance::{bottleneck, bottleneck_with, wasserstein, GroundMetric};
pub use hungarian::assignment;
pub use svg::{barcode_svg, diagram_svg, emit_svg, Figure};

use crate::reduction::Barcode;

/// A finite multiset of points `(birth, death)` with `birth <= death`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PersistenceDiagram {
    pub dim: usize,
    points: Vec<(f64, f64)>,
}

impl PersistenceDiagram {
    /// Points are sorted; entries with `death < birth` or a non-finite birth are rejected.
    pub fn new(dim: usize, mut points: Vec<(f64, f64)>) -> crate::Result<Self> {
        if let Some(&(b, d)) = points.iter().find(|&&(b, d)| !b.is_finite() || d.is_nan() || d < b) {
            return Err(crate::Error::BadParams(format!("invalid diagram point ({b}, {d})")));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        Ok(PersistenceDiagram { dim, points })
    }

    /// Points of the intervals of dimension `dim`.
    pub fn from_barcode(barcode: &Barcode, dim: usize) -> Self {
        PersistenceDiagram {
            dim,
            points: barcode.pairs_in_dim(dim),
        }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn split(&self) -> (Vec<(f64, f64)>, Vec<f64>) {
        let mut finite = Vec::new();
        let mut essential = Vec::new();
        for &(b, d) in &self.points {
            if d == f64::INFINITY {
                essential.push(b);
            } else {
                finite.push((b, d));
            }
        }
        essential.sort_by(f64::total_cmp);
        (finite, essential)
    }
}
