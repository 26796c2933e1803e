//! Simplices, filtered simplicial complexes and their boundary matrices over F₂.
//!
//! A [`FilteredComplex`] stores its simplices already arranged in a filtration-compatible
//! total order: by filtration value, then dimension, then lexicographic vertex order. The
//! position of a simplex in that order is its row/column index in the boundary matrix.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

/// Identifier of a vertex.
pub type VertexId = u64;

/// Largest number of simplices a complex may hold; matrix indices are stored as `u32`.
pub const MAX_INDEXABLE: u64 = u32::MAX as u64 - 1;

/// A simplex given by its strictly increasing vertex list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl Simplex {
    /// Checks that `vertices` is non-empty and strictly increasing.
    pub fn new(vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSimplex(vertices));
        }
        Ok(Simplex { vertices })
    }

    /// Sorts the vertices first; repeated vertices are still an error.
    pub fn from_unsorted(mut vertices: Vec<VertexId>) -> Result<Self> {
        vertices.sort_unstable();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-1 faces, in the order obtained by dropping vertex 0, 1, ...
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.vertices.len() > 1 { self.vertices.len() } else { 0 };
        (0..n).map(move |skip| Simplex {
            vertices: drop_vertex(&self.vertices, skip),
        })
    }

    /// Rank in the combinatorial number system among simplices of the same dimension.
    pub fn rank(&self) -> Option<u64> {
        simplex_rank(&self.vertices)
    }

    pub fn unrank(rank: u64, dim: usize) -> Simplex {
        Simplex {
            vertices: simplex_unrank(rank, dim),
        }
    }
}

pub(crate) fn drop_vertex(vertices: &[VertexId], skip: usize) -> Vec<VertexId> {
    vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &v)| v)
        .collect()
}

/// Binomial coefficient C(n, k), `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            // C(n, i + 1) only grows until i + 1 = k
            return None;
        }
    }
    u64::try_from(acc).ok()
}

/// Combinatorial-number-system rank of a strictly increasing vertex list:
/// `sum_i C(v_i, i + 1)`. Ranks are dense in `0..C(V, d + 1)` over the `d`-simplices
/// on vertex set `0..V`.
pub fn simplex_rank(vertices: &[VertexId]) -> Option<u64> {
    let mut rank: u64 = 0;
    for (i, &v) in vertices.iter().enumerate() {
        rank = rank.checked_add(binomial(v, i as u64 + 1)?)?;
    }
    Some(rank)
}

/// Inverse of [`simplex_rank`] for `dim + 1` vertices.
pub fn simplex_unrank(mut rank: u64, dim: usize) -> Vec<VertexId> {
    let mut out = vec![0; dim + 1];
    for i in (0..=dim).rev() {
        let k = i as u64 + 1;
        // largest v with C(v, k) <= rank; v >= i
        let mut lo = i as u64;
        let mut hi = lo + 1;
        while binomial(hi, k).is_some_and(|c| c <= rank) {
            lo = hi;
            hi = hi.saturating_mul(2);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binomial(mid, k).is_some_and(|c| c <= rank) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out[i] = lo;
        rank -= binomial(lo, k).unwrap_or(0);
    }
    out
}

/// Simplices with filtration values, stored in a filtration-compatible total order.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredComplex {
    vertices: Vec<VertexId>,
    offsets: Vec<usize>,
    values: Vec<f64>,
    max_dim: usize,
}

impl FilteredComplex {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Vertices of the `i`-th simplex in the total order.
    pub fn simplex(&self, i: usize) -> &[VertexId] {
        &self.vertices[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i] - 1
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Dimension of the complex (largest simplex dimension).
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.dim(i)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[VertexId], f64)> + '_ {
        (0..self.len()).map(move |i| (self.simplex(i), self.values[i]))
    }

    /// Number of simplices per dimension.
    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        for i in 0..self.len() {
            counts[self.dim(i)] += 1;
        }
        counts
    }

    /// Position of a simplex in the total order, by linear scan.
    pub fn position(&self, vertices: &[VertexId]) -> Option<usize> {
        (0..self.len()).find(|&i| self.simplex(i) == vertices)
    }

    /// The subcomplex of simplices with value `<= threshold`; a prefix of the order.
    pub fn prefix_until(&self, threshold: f64) -> FilteredComplex {
        let end = self.values.partition_point(|&v| v <= threshold);
        let mut buf = SimplexBuffer::with_capacity(end, self.offsets[end]);
        for i in 0..end {
            buf.push(self.simplex(i), self.values[i]);
        }
        buf.into_complex_trusted()
    }
}

/// Total order on simplices: value, then dimension, then lexicographic vertices.
pub fn filtration_cmp(a: (&[VertexId], f64), b: (&[VertexId], f64)) -> Ordering {
    a.1.total_cmp(&b.1)
        .then(a.0.len().cmp(&b.0.len()))
        .then_with(|| a.0.cmp(b.0))
}

/// Flat accumulation of simplices before they are ordered into a [`FilteredComplex`].
#[derive(Debug)]
pub(crate) struct SimplexBuffer {
    vertices: Vec<VertexId>,
    offsets: Vec<usize>,
    values: Vec<f64>,
}

impl SimplexBuffer {
    pub(crate) fn new() -> Self {
        SimplexBuffer {
            vertices: Vec::new(),
            offsets: vec![0],
            values: Vec::new(),
        }
    }

    pub(crate) fn with_capacity(simplices: usize, vertices: usize) -> Self {
        let mut offsets = Vec::with_capacity(simplices + 1);
        offsets.push(0);
        SimplexBuffer {
            vertices: Vec::with_capacity(vertices),
            offsets,
            values: Vec::with_capacity(simplices),
        }
    }

    pub(crate) fn push(&mut self, vertices: &[VertexId], value: f64) {
        self.vertices.extend_from_slice(vertices);
        self.offsets.push(self.vertices.len());
        self.values.push(value);
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    pub(crate) fn simplex(&self, i: usize) -> &[VertexId] {
        &self.vertices[self.offsets[i]..self.offsets[i + 1]]
    }

    pub(crate) fn simplex_len(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub(crate) fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub(crate) fn set_value(&mut self, i: usize, value: f64) {
        self.values[i] = value;
    }

    /// Keeps the simplices whose value satisfies `keep`.
    pub(crate) fn retain_values(&mut self, keep: impl Fn(f64) -> bool) {
        let mut out = SimplexBuffer::with_capacity(self.len(), self.vertices.len());
        for i in 0..self.len() {
            if keep(self.values[i]) {
                out.push(self.simplex(i), self.values[i]);
            }
        }
        *self = out;
    }

    /// Sorts into the filtration order without checking face closure.
    pub(crate) fn into_complex_trusted(self) -> FilteredComplex {
        let n = self.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        let already_sorted = (1..n).all(|i| {
            filtration_cmp((self.simplex(i - 1), self.values[i - 1]), (self.simplex(i), self.values[i]))
                != Ordering::Greater
        });
        if !already_sorted {
            order.sort_unstable_by(|&a, &b| {
                let (a, b) = (a as usize, b as usize);
                filtration_cmp((self.simplex(a), self.values[a]), (self.simplex(b), self.values[b]))
            });
        }
        let mut vertices = Vec::with_capacity(self.vertices.len());
        let mut offsets = Vec::with_capacity(n + 1);
        let mut values = Vec::with_capacity(n);
        offsets.push(0);
        let mut max_dim = 0;
        for &i in &order {
            let s = self.simplex(i as usize);
            max_dim = max_dim.max(s.len() - 1);
            vertices.extend_from_slice(s);
            offsets.push(vertices.len());
            values.push(self.values[i as usize]);
        }
        FilteredComplex {
            vertices,
            offsets,
            values,
            max_dim,
        }
    }

    /// Sorts and verifies face closure and monotonicity.
    pub(crate) fn into_complex(self) -> Result<FilteredComplex> {
        if self.len() as u64 > MAX_INDEXABLE {
            return Err(Error::TooLarge {
                count: self.len() as u64,
                cap: MAX_INDEXABLE,
            });
        }
        let complex = self.into_complex_trusted();
        let index = SimplexIndex::new(&complex)?;
        let mut face = Vec::new();
        for j in 0..complex.len() {
            let s = complex.simplex(j);
            if s.len() == 1 {
                continue;
            }
            for skip in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v));
                let Some(i) = index.find(&face) else {
                    return Err(Error::MissingFace {
                        simplex: s.to_vec(),
                        face: face.clone(),
                    });
                };
                if complex.value(i) > complex.value(j) {
                    return Err(Error::NonMonotone {
                        simplex: s.to_vec(),
                        value: complex.value(j),
                        face: face.clone(),
                        face_value: complex.value(i),
                    });
                }
            }
        }
        Ok(complex)
    }
}

/// Lookup from vertex lists to positions in a complex, by combinatorial rank on
/// densely relabelled vertices.
pub(crate) struct SimplexIndex {
    vertex_ids: Vec<VertexId>,
    tables: Vec<RankTable>,
}

enum RankTable {
    Ranked { keys: Vec<u64>, positions: Vec<u32> },
    Hashed(HashMap<Box<[VertexId]>, u32>),
}

impl SimplexIndex {
    /// Indexes every simplex of dimension `< complex.max_dim()`; these are all the faces
    /// the boundary operator can ask for.
    pub(crate) fn new(complex: &FilteredComplex) -> Result<Self> {
        Self::with_dims(complex, complex.max_dim().max(1))
    }

    fn with_dims(complex: &FilteredComplex, dims: usize) -> Result<Self> {
        let mut vertex_ids: Vec<VertexId> = (0..complex.len())
            .filter(|&i| complex.dim(i) == 0)
            .map(|i| complex.simplex(i)[0])
            .collect();
        vertex_ids.sort_unstable();
        if let Some(w) = vertex_ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSimplex(vec![w[0]]));
        }
        let nv = vertex_ids.len() as u64;
        let mut tables = Vec::with_capacity(dims);
        let mut dense = Vec::new();
        for d in 0..dims {
            let fits = binomial(nv, d as u64 + 1).is_some();
            let members = (0..complex.len()).filter(|&i| complex.dim(i) == d);
            if fits {
                let mut pairs: Vec<(u64, u32)> = Vec::new();
                for i in members {
                    let s = complex.simplex(i);
                    if !relabel(&vertex_ids, s, &mut dense) {
                        return Err(Error::MissingFace {
                            simplex: s.to_vec(),
                            face: missing_vertex(&vertex_ids, s),
                        });
                    }
                    let rank = simplex_rank(&dense).expect("rank fits by construction");
                    pairs.push((rank, i as u32));
                }
                pairs.sort_unstable();
                if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
                    return Err(Error::DuplicateSimplex(complex.simplex(w[1].1 as usize).to_vec()));
                }
                let (keys, positions) = pairs.into_iter().unzip();
                tables.push(RankTable::Ranked { keys, positions });
            } else {
                let mut map = HashMap::new();
                for i in members {
                    let s = complex.simplex(i);
                    if map.insert(s.to_vec().into_boxed_slice(), i as u32).is_some() {
                        return Err(Error::DuplicateSimplex(s.to_vec()));
                    }
                }
                tables.push(RankTable::Hashed(map));
            }
        }
        // Top-dimensional duplicates are not covered by the tables above.
        if dims <= complex.max_dim() {
            let mut top: Vec<usize> = (0..complex.len())
                .filter(|&i| complex.dim(i) >= dims)
                .collect();
            top.sort_unstable_by(|&a, &b| complex.simplex(a).cmp(complex.simplex(b)));
            if let Some(w) = top
                .windows(2)
                .find(|w| complex.simplex(w[0]) == complex.simplex(w[1]))
            {
                return Err(Error::DuplicateSimplex(complex.simplex(w[0]).to_vec()));
            }
        }
        Ok(SimplexIndex { vertex_ids, tables })
    }

    pub(crate) fn find(&self, vertices: &[VertexId]) -> Option<usize> {
        let table = self.tables.get(vertices.len().checked_sub(1)?)?;
        match table {
            RankTable::Ranked { keys, positions } => {
                let mut rank: u64 = 0;
                for (i, v) in vertices.iter().enumerate() {
                    let dense = self.vertex_ids.binary_search(v).ok()? as u64;
                    rank += binomial(dense, i as u64 + 1)?;
                }
                let at = keys.binary_search(&rank).ok()?;
                Some(positions[at] as usize)
            }
            RankTable::Hashed(map) => map.get(vertices).map(|&p| p as usize),
        }
    }
}

fn relabel(vertex_ids: &[VertexId], s: &[VertexId], out: &mut Vec<u64>) -> bool {
    out.clear();
    for v in s {
        match vertex_ids.binary_search(v) {
            Ok(d) => out.push(d as u64),
            Err(_) => return false,
        }
    }
    true
}

fn missing_vertex(vertex_ids: &[VertexId], s: &[VertexId]) -> Vec<VertexId> {
    s.iter()
        .find(|v| vertex_ids.binary_search(v).is_err())
        .map(|&v| vec![v])
        .unwrap_or_default()
}

/// Builds a filtered complex from `(vertices, value)` pairs, verifying face closure
/// and monotonicity. Vertex lists may be given in any order.
pub fn make_complex<I, V>(simplices: I) -> Result<FilteredComplex>
where
    I: IntoIterator<Item = (V, f64)>,
    V: AsRef<[VertexId]>,
{
    let mut buf = SimplexBuffer::new();
    let mut scratch = Vec::new();
    for (vertices, value) in simplices {
        scratch.clear();
        scratch.extend_from_slice(vertices.as_ref());
        scratch.sort_unstable();
        if scratch.is_empty() || scratch.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(vertices.as_ref().to_vec()));
        }
        if !value.is_finite() {
            return Err(Error::NonFinite {
                simplex: scratch.clone(),
                value,
            });
        }
        buf.push(&scratch, value);
    }
    if buf.len() == 0 {
        return Err(Error::EmptyInput);
    }
    buf.into_complex()
}

/// Adds every missing face, giving it the smallest value among its cofaces, then
/// builds the complex. Faces that are present keep their value.
pub fn close<I, V>(simplices: I) -> Result<FilteredComplex>
where
    I: IntoIterator<Item = (V, f64)>,
    V: AsRef<[VertexId]>,
{
    let mut given: HashMap<Vec<VertexId>, f64> = HashMap::new();
    let mut by_dim: Vec<Vec<Vec<VertexId>>> = Vec::new();
    for (vertices, value) in simplices {
        let s = Simplex::from_unsorted(vertices.as_ref().to_vec())?;
        if !value.is_finite() {
            return Err(Error::NonFinite {
                simplex: s.vertices,
                value,
            });
        }
        let d = s.dim();
        if given.insert(s.vertices.clone(), value).is_some() {
            return Err(Error::DuplicateSimplex(s.vertices));
        }
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        by_dim[d].push(s.vertices);
    }
    let mut added: HashMap<Vec<VertexId>, f64> = HashMap::new();
    for d in (1..by_dim.len()).rev() {
        let layer = std::mem::take(&mut by_dim[d]);
        for s in &layer {
            let value = given.get(s).or_else(|| added.get(s)).copied().unwrap_or(f64::NAN);
            for skip in 0..s.len() {
                let face = drop_vertex(s, skip);
                if given.contains_key(&face) {
                    continue;
                }
                match added.get_mut(&face) {
                    Some(v) => *v = v.min(value),
                    None => {
                        added.insert(face.clone(), value);
                        by_dim[d - 1].push(face);
                    }
                }
            }
        }
    }
    make_complex(given.into_iter().chain(added))
}

/// Column-major sparse matrix over F₂; each column lists its nonzero rows in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseF2Matrix {
    col_ptr: Vec<usize>,
    rows: Vec<u32>,
}

impl SparseF2Matrix {
    /// Validates that every column is strictly increasing with entries `< columns.len()`.
    pub fn from_columns<C: AsRef<[u32]>>(columns: &[C]) -> Result<Self> {
        let n = columns.len();
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut rows = Vec::new();
        col_ptr.push(0);
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.windows(2).any(|w| w[0] >= w[1]) || c.last().is_some_and(|&r| r as usize >= n) {
                return Err(Error::BadParams(format!(
                    "column {j} must hold strictly increasing row indices below {n}"
                )));
            }
            rows.extend_from_slice(c);
            col_ptr.push(rows.len());
        }
        Ok(SparseF2Matrix { col_ptr, rows })
    }

    /// Number of columns (equal to the number of rows).
    pub fn n(&self) -> usize {
        self.col_ptr.len() - 1
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.rows[self.col_ptr[j]..self.col_ptr[j + 1]]
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.n()).map(move |j| self.column(j))
    }

    /// Reflects the matrix across the anti-diagonal: entry `(i, j)` moves to
    /// `(n-1-j, n-1-i)`.
    pub fn anti_transpose(&self) -> SparseF2Matrix {
        let n = self.n();
        // column n-1-i of the result holds rows n-1-j for every j whose column holds i
        let mut counts = vec![0usize; n + 1];
        for &i in &self.rows {
            counts[n - 1 - i as usize + 1] += 1;
        }
        for k in 0..n {
            counts[k + 1] += counts[k];
        }
        let col_ptr = counts.clone();
        let mut fill = counts;
        let mut rows = vec![0u32; self.rows.len()];
        // visiting j in decreasing order makes n-1-j increasing inside each target column
        for j in (0..n).rev() {
            for &i in self.column(j) {
                let c = n - 1 - i as usize;
                rows[fill[c]] = (n - 1 - j) as u32;
                fill[c] += 1;
            }
        }
        SparseF2Matrix { col_ptr, rows }
    }

    /// Dense copy, row-major; test and debugging aid.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut dense = vec![vec![0u8; n]; n];
        for j in 0..n {
            for &i in self.column(j) {
                dense[i as usize][j] = 1;
            }
        }
        dense
    }
}

/// Boundary matrix of a filtered complex: column `j` lists the positions of the
/// codimension-1 faces of simplex `j`.
pub fn boundary_matrix(complex: &FilteredComplex) -> SparseF2Matrix {
    let index = SimplexIndex::new(complex).expect("a valid complex has no duplicates");
    let mut col_ptr = Vec::with_capacity(complex.len() + 1);
    let total: usize = (0..complex.len())
        .map(|i| if complex.dim(i) == 0 { 0 } else { complex.dim(i) + 1 })
        .sum();
    let mut rows = Vec::with_capacity(total);
    col_ptr.push(0);
    let mut face = Vec::new();
    for j in 0..complex.len() {
        let s = complex.simplex(j);
        let start = rows.len();
        if s.len() > 1 {
            for skip in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v));
                let i = index.find(&face).expect("complex is closed under faces");
                rows.push(i as u32);
            }
            rows[start..].sort_unstable();
        }
        col_ptr.push(rows.len());
    }
    SparseF2Matrix { col_ptr, rows }
}

/// Alternating count of simplices by dimension.
pub fn euler_characteristic(complex: &FilteredComplex) -> i64 {
    complex
        .count_by_dim()
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}
