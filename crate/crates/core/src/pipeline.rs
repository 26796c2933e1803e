//! Data → filtered complex → barcode, with the construction chosen at run time. Shared by
//! the command line and the benchmark harness.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::builders::{
    build_cech_capped, build_parametrized_witness, build_rips_capped, build_weak_witness, build_wrcf_capped,
    graph_to_metric, maxmin_landmarks, MetricInput, WeightMode, WeightedGraph, DEFAULT_SIMPLEX_CAP,
};
use crate::complex::{boundary_matrix, FilteredComplex};
use crate::cubical::{build_cubical, cubical_boundary, CubicalComplex, ImageGrid};
use crate::error::{Error, Result};
use crate::io;
use crate::reduction::{extract_barcode, Algorithm, Barcode, Filtration, ReductionState};

/// On-disk input formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Complex,
    Points,
    Matrix,
    Edges,
    Image,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" | "cplx" => Ok(Format::Complex),
            "points" | "pts" => Ok(Format::Points),
            "matrix" | "dist" => Ok(Format::Matrix),
            "edges" => Ok(Format::Edges),
            "image" | "img" => Ok(Format::Image),
            _ => Err(Error::BadParams(format!(
                "unknown format `{s}` (complex|points|matrix|edges|image)"
            ))),
        }
    }
}

impl Format {
    /// Guess from the file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "cplx" | "complex" => Some(Format::Complex),
            "pts" | "xyz" | "points" => Some(Format::Points),
            "dist" | "mat" => Some(Format::Matrix),
            "edges" | "el" => Some(Format::Edges),
            "img" | "image" => Some(Format::Image),
            _ => None,
        }
    }
}

/// Loaded input data.
#[derive(Clone, Debug)]
pub enum Data {
    Complex(FilteredComplex),
    Metric(MetricInput),
    Graph(WeightedGraph),
    Image(ImageGrid),
}

pub fn load(path: &Path, format: Format) -> Result<Data> {
    let text = io::read_to_string(path)?;
    Ok(match format {
        Format::Complex => Data::Complex(io::parse_complex(&text)?),
        Format::Points => Data::Metric(io::parse_points(&text)?),
        Format::Matrix => Data::Metric(io::parse_distance_matrix(&text)?),
        Format::Edges => Data::Graph(io::parse_edge_list(&text, io::declared_nodes(&text))?),
        Format::Image => Data::Image(io::parse_image(&text)?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    Rips,
    Cech,
    Witness,
    Wrcf,
    Cubical,
}

impl FromStr for ComplexKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rips" | "vr" => Ok(ComplexKind::Rips),
            "cech" => Ok(ComplexKind::Cech),
            "witness" => Ok(ComplexKind::Witness),
            "wrcf" => Ok(ComplexKind::Wrcf),
            "cubical" => Ok(ComplexKind::Cubical),
            _ => Err(Error::BadParams(format!(
                "unknown complex `{s}` (rips|cech|witness|wrcf|cubical)"
            ))),
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::Rips => "rips",
            ComplexKind::Cech => "cech",
            ComplexKind::Witness => "witness",
            ComplexKind::Wrcf => "wrcf",
            ComplexKind::Cubical => "cubical",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_dim: usize,
    pub max_scale: f64,
    /// Landmark count for witness complexes; all points when `None`.
    pub landmarks: Option<usize>,
    /// `Some(ν)` selects the parametrized witness complex, `None` the weak one.
    pub nu: Option<usize>,
    pub seed: u64,
    /// How edge weights become lengths when a graph feeds a metric construction.
    pub weight_mode: WeightMode,
    pub cap: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_dim: 1,
            max_scale: f64::INFINITY,
            landmarks: None,
            nu: None,
            seed: 0,
            weight_mode: WeightMode::Inverse,
            cap: DEFAULT_SIMPLEX_CAP,
        }
    }
}

/// A built filtration of either kind.
#[derive(Clone, Debug)]
pub enum Built {
    Simplicial(FilteredComplex),
    Cubical(CubicalComplex),
}

impl Built {
    pub fn len(&self) -> usize {
        match self {
            Built::Simplicial(k) => k.len(),
            Built::Cubical(k) => k.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn reduce(&self, algorithm: Algorithm) -> ReductionState {
        match self {
            Built::Simplicial(k) => algorithm.reduce(&boundary_matrix(k), &k.dims()),
            Built::Cubical(k) => algorithm.reduce(&cubical_boundary(k), &k.cell_dims()),
        }
    }

    pub fn barcode(&self, algorithm: Algorithm, drop_zero: bool) -> Barcode {
        let state = self.reduce(algorithm);
        match self {
            Built::Simplicial(k) => extract_barcode(&state, k, drop_zero),
            Built::Cubical(k) => extract_barcode(&state, k, drop_zero),
        }
    }
}

fn metric_of(data: &Data, mode: WeightMode) -> Result<MetricInput> {
    match data {
        Data::Metric(m) => Ok(m.clone()),
        Data::Graph(g) => graph_to_metric(g, mode),
        Data::Complex(_) | Data::Image(_) => Err(Error::BadParams(
            "this construction needs a point cloud, distance matrix or graph".into(),
        )),
    }
}

pub fn build(kind: ComplexKind, data: &Data, opts: &BuildOptions) -> Result<Built> {
    let built = match kind {
        ComplexKind::Rips => {
            let m = metric_of(data, opts.weight_mode)?;
            Built::Simplicial(build_rips_capped(&m, opts.max_dim, opts.max_scale, opts.cap)?)
        }
        ComplexKind::Cech => {
            let m = metric_of(data, opts.weight_mode)?;
            Built::Simplicial(build_cech_capped(&m, opts.max_dim, opts.max_scale, opts.cap)?)
        }
        ComplexKind::Witness => {
            let m = metric_of(data, opts.weight_mode)?;
            let count = opts.landmarks.unwrap_or(m.len());
            let l = maxmin_landmarks(&m, count, opts.seed)?;
            Built::Simplicial(match opts.nu {
                Some(nu) => build_parametrized_witness(&m, &l, nu, opts.max_dim, opts.max_scale)?,
                None => build_weak_witness(&m, &l, opts.max_dim, opts.max_scale)?,
            })
        }
        ComplexKind::Wrcf => match data {
            Data::Graph(g) => Built::Simplicial(build_wrcf_capped(g, opts.max_dim, opts.cap)?),
            _ => return Err(Error::BadParams("wrcf needs an edge list".into())),
        },
        ComplexKind::Cubical => match data {
            Data::Image(img) => Built::Cubical(build_cubical(img)),
            _ => return Err(Error::BadParams("cubical needs an image".into())),
        },
    };
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("rips".parse::<ComplexKind>().unwrap(), ComplexKind::Rips);
        assert!("alpha".parse::<ComplexKind>().is_err());
        assert_eq!("edges".parse::<Format>().unwrap(), Format::Edges);
        assert_eq!(Format::from_path(Path::new("a/triangle.cplx")), Some(Format::Complex));
        assert_eq!(Format::from_path(Path::new("noext")), None);
    }

    #[test]
    fn wrong_data_for_kind() {
        let img = Data::Image(ImageGrid::new(vec![1, 1], vec![0.0]).unwrap());
        assert!(build(ComplexKind::Rips, &img, &BuildOptions::default()).is_err());
        let m = Data::Metric(MetricInput::from_points(&[[0.0], [1.0]]).unwrap());
        assert!(build(ComplexKind::Cubical, &m, &BuildOptions::default()).is_err());
        assert_eq!(build(ComplexKind::Rips, &m, &BuildOptions::default()).unwrap().len(), 3);
        assert_eq!(build(ComplexKind::Witness, &m, &BuildOptions::default()).unwrap().len(), 3);
    }

    #[test]
    fn graph_feeds_rips() {
        let g = Data::Graph(WeightedGraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap());
        let opts = BuildOptions {
            max_dim: 2,
            ..Default::default()
        };
        let b = build(ComplexKind::Rips, &g, &opts).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(build(ComplexKind::Wrcf, &g, &opts).unwrap().len(), 5);
    }
}
