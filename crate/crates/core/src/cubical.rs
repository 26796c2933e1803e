//! Filtered cubical complexes of grey-scale images.
//!
//! Every pixel (voxel) is a vertex at its grey value; adjacent pixels span edges, squares
//! and cubes, each valued by the largest grey value among its corners.

use crate::complex::SparseF2Matrix;
use crate::error::{Error, Result};
use crate::reduction::{extract_barcode, reduce_twist, Barcode, Filtration};

/// A 2- or 3-dimensional array of grey values in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageGrid {
    dims: Vec<usize>,
    values: Vec<f64>,
}

impl ImageGrid {
    pub fn new(dims: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&dims.len()) {
            return Err(Error::UnsupportedDim(dims.len()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidImage(format!("extents {dims:?} must be positive")));
        }
        let len = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        if len != Some(values.len()) {
            return Err(Error::InvalidImage(format!(
                "extents {dims:?} do not match {} values",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidImage(format!("non-finite grey value {v}")));
        }
        Ok(ImageGrid { dims, values })
    }

    /// 2-D image from rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != width) {
            return Err(Error::InvalidImage("rows have different lengths".into()));
        }
        let values = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        ImageGrid::new(vec![rows.len(), width], values)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Returns a copy with `f` applied to every grey value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<ImageGrid> {
        ImageGrid::new(self.dims.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dims.len()];
        for a in (0..self.dims.len() - 1).rev() {
            s[a] = s[a + 1] * self.dims[a + 1];
        }
        s
    }
}

/// Elementary cube: the box spanned from `anchor` by one unit along each axis in `extent`
/// (bit `a` set means the cell is long along axis `a`).
#[derive(Clone, Debug, PartialEq)]
pub struct CubicalCell {
    pub anchor: Vec<usize>,
    pub extent: u8,
    pub value: f64,
}

impl CubicalCell {
    pub fn dim(&self) -> usize {
        self.extent.count_ones() as usize
    }
}

/// All cells of an image in filtration order: value, then dimension, then anchor
/// (lexicographic), then extent.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    dims: Vec<usize>,
    // linear anchor index and extent per cell, in order
    anchors: Vec<usize>,
    extents: Vec<u8>,
    values: Vec<f64>,
}

impl CubicalComplex {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell(&self, i: usize) -> CubicalCell {
        CubicalCell {
            anchor: unflatten(self.anchors[i], &self.dims),
            extent: self.extents[i],
            value: self.values[i],
        }
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dims.len() + 1];
        for e in &self.extents {
            counts[e.count_ones() as usize] += 1;
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    pub fn grid_dims(&self) -> &[usize] {
        &self.dims
    }
}

impl Filtration for CubicalComplex {
    fn size(&self) -> usize {
        self.len()
    }

    fn cell_dim(&self, i: usize) -> usize {
        self.extents[i].count_ones() as usize
    }

    fn cell_value(&self, i: usize) -> f64 {
        self.values[i]
    }
}

fn unflatten(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for a in (0..dims.len()).rev() {
        out[a] = idx % dims[a];
        idx /= dims[a];
    }
    out
}

pub fn build_cubical(image: &ImageGrid) -> CubicalComplex {
    let d = image.dims.len();
    let strides = image.strides();
    let mut anchors = Vec::new();
    let mut extents = Vec::new();
    let mut values = Vec::new();
    for (idx, _) in image.values.iter().enumerate() {
        let coords = unflatten(idx, &image.dims);
        for mask in 0u8..(1 << d) {
            if (0..d).any(|a| mask & (1 << a) != 0 && coords[a] + 1 >= image.dims[a]) {
                continue;
            }
            // max over the corners: every sub-mask of `mask` offsets the anchor
            let mut value = f64::NEG_INFINITY;
            let mut sub = mask;
            loop {
                let off: usize = (0..d).filter(|a| sub & (1 << a) != 0).map(|a| strides[a]).sum();
                value = value.max(image.values[idx + off]);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
            anchors.push(idx);
            extents.push(mask);
            values.push(value);
        }
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| {
        values[i]
            .total_cmp(&values[j])
            .then(extents[i].count_ones().cmp(&extents[j].count_ones()))
            .then(anchors[i].cmp(&anchors[j]))
            .then(extents[i].cmp(&extents[j]))
    });
    CubicalComplex {
        dims: image.dims.clone(),
        anchors: order.iter().map(|&i| anchors[i]).collect(),
        extents: order.iter().map(|&i| extents[i]).collect(),
        values: order.iter().map(|&i| values[i]).collect(),
    }
}

/// Boundary matrix in cell order; a `k`-cell has its `2k` facets as rows.
pub fn cubical_boundary(complex: &CubicalComplex) -> SparseF2Matrix {
    let d = complex.dims.len();
    let key_count = complex.dims.iter().product::<usize>() << d;
    let mut position = vec![u32::MAX; key_count];
    for i in 0..complex.len() {
        position[(complex.anchors[i] << d) | complex.extents[i] as usize] = i as u32;
    }
    let mut strides = vec![1; d];
    for a in (0..d - 1).rev() {
        strides[a] = strides[a + 1] * complex.dims[a + 1];
    }
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(complex.len());
    for i in 0..complex.len() {
        let (anchor, mask) = (complex.anchors[i], complex.extents[i]);
        let mut col = Vec::with_capacity(2 * mask.count_ones() as usize);
        for a in 0..d {
            if mask & (1 << a) == 0 {
                continue;
            }
            let facet = mask & !(1 << a);
            col.push(position[(anchor << d) | facet as usize]);
            col.push(position[((anchor + strides[a]) << d) | facet as usize]);
        }
        col.sort_unstable();
        columns.push(col);
    }
    SparseF2Matrix::from_columns(&columns).expect("cubical facets precede their cells")
}

/// Build, reduce with the twist algorithm and read the barcode, dropping zero-length
/// intervals and dimensions above `max_dim`.
pub fn image_barcode(image: &ImageGrid, max_dim: usize) -> Barcode {
    let complex = build_cubical(image);
    let matrix = cubical_boundary(&complex);
    let state = reduce_twist(&matrix, &complex.cell_dims());
    extract_barcode(&state, &complex, true).truncated(max_dim)
}
