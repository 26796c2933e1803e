//! Column reduction of boundary matrices over F₂ and the barcodes read off from it.
//!
//! Three routes produce the same pairing:
//! - [`reduce_standard`]: left-to-right column additions until `low` is injective.
//! - [`reduce_twist`]: the same additions, visiting dimensions from the top down and
//!   clearing every column whose index already appeared as a pivot.
//! - [`reduce_dual`]: the standard routine on the anti-transposed matrix (persistent
//!   cohomology), with pairs mapped back to the original indices.

use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use crate::complex::{boundary_matrix, FilteredComplex, SparseF2Matrix};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Which matrix the stored reduced columns belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Columns of the boundary matrix itself.
    Homology,
    /// Columns of its anti-transpose; pairs and essentials are still reported on the
    /// original indices.
    Cohomology,
}

/// Outcome of a reduction: the reduced columns, their pivots and the pairing they induce.
#[derive(Clone, Debug)]
pub struct ReductionState {
    reduced: Vec<Vec<u32>>,
    lows: Vec<u32>,
    pairs: Vec<(usize, usize)>,
    essentials: Vec<usize>,
    basis: Basis,
}

impl ReductionState {
    pub fn n(&self) -> usize {
        self.lows.len()
    }

    /// Pivot row of reduced column `j` (in the frame given by [`ReductionState::basis`]).
    pub fn low(&self, j: usize) -> Option<usize> {
        match self.lows[j] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    pub fn reduced_column(&self, j: usize) -> &[u32] {
        &self.reduced[j]
    }

    /// Pairs `(birth, death)` with `birth < death`, sorted by death index.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Indices that are never paired, sorted.
    pub fn essentials(&self) -> &[usize] {
        &self.essentials
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// `low` is injective on the non-empty reduced columns.
    pub fn is_reduced(&self) -> bool {
        let mut seen = vec![false; self.n()];
        for &l in &self.lows {
            if l != NONE {
                if seen[l as usize] {
                    return false;
                }
                seen[l as usize] = true;
            }
        }
        true
    }

    /// Pairs and essentials partition `0..n`.
    pub fn is_partition(&self) -> bool {
        let mut hits = vec![0u8; self.n()];
        for &(i, j) in &self.pairs {
            if i >= j {
                return false;
            }
            hits[i] += 1;
            hits[j] += 1;
        }
        for &k in &self.essentials {
            hits[k] += 1;
        }
        hits.iter().all(|&h| h == 1)
    }
}

/// Working column with lazy F₂ cancellation: duplicated entries cancel when popped.
struct HeapColumn {
    heap: BinaryHeap<u32>,
    since_prune: usize,
    scratch: Vec<u32>,
}

impl HeapColumn {
    fn new() -> Self {
        HeapColumn {
            heap: BinaryHeap::new(),
            since_prune: 0,
            scratch: Vec::new(),
        }
    }

    fn load(&mut self, column: &[u32]) {
        self.heap.clear();
        self.heap.extend(column.iter().copied());
        self.since_prune = 0;
    }

    fn pop_pivot(&mut self) -> Option<u32> {
        while let Some(top) = self.heap.pop() {
            if self.heap.peek() == Some(&top) {
                self.heap.pop();
                continue;
            }
            return Some(top);
        }
        None
    }

    /// Adds `column` minus its last entry, which the caller has already popped.
    fn add_without_pivot(&mut self, column: &[u32]) {
        self.heap.extend(column[..column.len() - 1].iter().copied());
        self.since_prune += column.len();
        if self.since_prune > 2 * self.heap.len().max(64) {
            // drop cancelled pairs before the heap grows without bound
            let col = self.drain_sorted();
            self.heap.extend(col);
            self.since_prune = 0;
        }
    }

    fn drain_sorted(&mut self) -> Vec<u32> {
        self.scratch.clear();
        while let Some(p) = self.pop_pivot() {
            self.scratch.push(p);
        }
        self.scratch.reverse();
        self.scratch.clone()
    }
}

struct Reducer<'a> {
    matrix: &'a SparseF2Matrix,
    reduced: Vec<Vec<u32>>,
    lows: Vec<u32>,
    owner: Vec<u32>,
    work: HeapColumn,
}

impl<'a> Reducer<'a> {
    fn new(matrix: &'a SparseF2Matrix) -> Self {
        let n = matrix.n();
        Reducer {
            matrix,
            reduced: vec![Vec::new(); n],
            lows: vec![NONE; n],
            owner: vec![NONE; n],
            work: HeapColumn::new(),
        }
    }

    fn reduce_column(&mut self, j: usize) -> Option<usize> {
        let column = self.matrix.column(j);
        let &pivot = column.last()?;
        if self.owner[pivot as usize] == NONE {
            self.reduced[j] = column.to_vec();
            self.settle(j, pivot);
            return Some(pivot as usize);
        }
        self.work.load(column);
        loop {
            let Some(pivot) = self.work.pop_pivot() else {
                return None;
            };
            match self.owner[pivot as usize] {
                NONE => {
                    self.work.heap.push(pivot);
                    self.reduced[j] = self.work.drain_sorted();
                    self.settle(j, pivot);
                    return Some(pivot as usize);
                }
                i => self.work.add_without_pivot(&self.reduced[i as usize]),
            }
        }
    }

    fn settle(&mut self, j: usize, pivot: u32) {
        self.lows[j] = pivot;
        self.owner[pivot as usize] = j as u32;
    }

    fn finish(self, basis: Basis) -> ReductionState {
        let n = self.lows.len();
        let mut pairs = Vec::new();
        for j in 0..n {
            if self.lows[j] != NONE {
                pairs.push((self.lows[j] as usize, j));
            }
        }
        let essentials = (0..n)
            .filter(|&k| self.lows[k] == NONE && self.owner[k] == NONE)
            .collect();
        ReductionState {
            reduced: self.reduced,
            lows: self.lows,
            pairs,
            essentials,
            basis,
        }
    }
}

/// Left-to-right reduction: while some earlier column shares the pivot of column `j`,
/// add it to column `j`.
pub fn reduce_standard(matrix: &SparseF2Matrix) -> ReductionState {
    let mut r = Reducer::new(matrix);
    for j in 0..matrix.n() {
        r.reduce_column(j);
    }
    r.finish(Basis::Homology)
}

/// Reduction by decreasing dimension with clearing: once column `j` gets pivot `i`,
/// column `i` is known to reduce to zero and is skipped.
pub fn reduce_twist(matrix: &SparseF2Matrix, dims: &[usize]) -> ReductionState {
    assert_eq!(dims.len(), matrix.n(), "one dimension per column");
    let mut r = Reducer::new(matrix);
    let top = dims.iter().copied().max().unwrap_or(0);
    let mut cleared = vec![false; matrix.n()];
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (j, &d) in dims.iter().enumerate() {
        by_dim[d].push(j);
    }
    for d in (1..=top).rev() {
        for &j in &by_dim[d] {
            if cleared[j] {
                continue;
            }
            if let Some(i) = r.reduce_column(j) {
                cleared[i] = true;
            }
        }
    }
    // vertex columns are zero
    r.finish(Basis::Homology)
}

/// Standard reduction of the anti-transpose, with the pairing mapped back. `dims` is only
/// checked for length; the routine itself is dimension-agnostic.
pub fn reduce_dual(matrix: &SparseF2Matrix, dims: &[usize]) -> ReductionState {
    assert_eq!(dims.len(), matrix.n(), "one dimension per column");
    let n = matrix.n();
    let anti = matrix.anti_transpose();
    let mut r = Reducer::new(&anti);
    for j in 0..n {
        r.reduce_column(j);
    }
    let mut state = r.finish(Basis::Cohomology);
    for p in state.pairs.iter_mut() {
        *p = (n - 1 - p.1, n - 1 - p.0);
    }
    state.pairs.sort_unstable_by_key(|&(i, j)| (j, i));
    for k in state.essentials.iter_mut() {
        *k = n - 1 - *k;
    }
    state.essentials.sort_unstable();
    state
}

/// Choice of reduction routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Standard,
    Twist,
    Dual,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Standard, Algorithm::Twist, Algorithm::Dual];

    pub fn reduce(self, matrix: &SparseF2Matrix, dims: &[usize]) -> ReductionState {
        match self {
            Algorithm::Standard => reduce_standard(matrix),
            Algorithm::Twist => reduce_twist(matrix, dims),
            Algorithm::Dual => reduce_dual(matrix, dims),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Standard => "standard",
            Algorithm::Twist => "twist",
            Algorithm::Dual => "dual",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Algorithm::Standard),
            "twist" => Ok(Algorithm::Twist),
            "dual" => Ok(Algorithm::Dual),
            other => Err(Error::BadParams(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Anything whose cells carry a dimension and a filtration value in matrix order.
pub trait Filtration {
    fn size(&self) -> usize;
    fn cell_dim(&self, i: usize) -> usize;
    fn cell_value(&self, i: usize) -> f64;

    fn cell_dims(&self) -> Vec<usize> {
        (0..self.size()).map(|i| self.cell_dim(i)).collect()
    }
}

impl Filtration for FilteredComplex {
    fn size(&self) -> usize {
        self.len()
    }

    fn cell_dim(&self, i: usize) -> usize {
        self.dim(i)
    }

    fn cell_value(&self, i: usize) -> f64 {
        self.value(i)
    }
}

/// A persistence interval `[birth, death)`; `death` is `+inf` for essential classes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn new(dim: usize, birth: f64, death: f64) -> Self {
        Interval { dim, birth, death }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    fn key_cmp(&self, other: &Interval) -> std::cmp::Ordering {
        self.dim
            .cmp(&other.dim)
            .then(self.birth.total_cmp(&other.birth))
            .then(self.death.total_cmp(&other.death))
    }
}

/// Multiset of intervals, kept sorted by `(dim, birth, death)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

impl Barcode {
    /// Rejects non-finite births and deaths before births.
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        for iv in &intervals {
            if !iv.birth.is_finite() || iv.death.is_nan() || iv.death < iv.birth {
                return Err(Error::BadParams(format!(
                    "invalid interval [{}, {}) in dimension {}",
                    iv.birth, iv.death, iv.dim
                )));
            }
        }
        intervals.sort_by(Interval::key_cmp);
        Ok(Barcode { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &Interval> + '_ {
        self.intervals.iter().filter(move |iv| iv.dim == dim)
    }

    /// `(birth, death)` pairs of one dimension.
    pub fn pairs_in_dim(&self, dim: usize) -> Vec<(f64, f64)> {
        self.in_dim(dim).map(|iv| (iv.birth, iv.death)).collect()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.intervals.iter().map(|iv| iv.dim).max()
    }

    pub fn essential_count(&self, dim: usize) -> usize {
        self.in_dim(dim).filter(|iv| iv.is_essential()).count()
    }

    /// Keeps intervals of dimension `<= max_dim`.
    pub fn truncated(&self, max_dim: usize) -> Barcode {
        Barcode {
            intervals: self.intervals.iter().filter(|iv| iv.dim <= max_dim).copied().collect(),
        }
    }
}

/// Reads intervals off a completed reduction: a pair `(i, j)` gives `[value(i), value(j))`
/// in dimension `dim(i)`, an essential `k` gives `[value(k), inf)`.
pub fn extract_barcode<F: Filtration + ?Sized>(
    state: &ReductionState,
    filtration: &F,
    drop_zero: bool,
) -> Barcode {
    let mut intervals = Vec::with_capacity(state.pairs().len() + state.essentials().len());
    for &(i, j) in state.pairs() {
        let (birth, death) = (filtration.cell_value(i), filtration.cell_value(j));
        if drop_zero && birth == death {
            continue;
        }
        intervals.push(Interval::new(filtration.cell_dim(i), birth, death));
    }
    for &k in state.essentials() {
        intervals.push(Interval::new(filtration.cell_dim(k), filtration.cell_value(k), f64::INFINITY));
    }
    intervals.sort_by(Interval::key_cmp);
    Barcode { intervals }
}

/// Boundary matrix, reduction and read-off in one call.
pub fn compute_barcode(complex: &FilteredComplex, algorithm: Algorithm, drop_zero: bool) -> Barcode {
    let matrix = boundary_matrix(complex);
    let state = algorithm.reduce(&matrix, &complex.dims());
    extract_barcode(&state, complex, drop_zero)
}

/// Betti numbers of the whole complex, dimensions `0..=max_dim`; filtration values play no role.
pub fn betti_numbers(complex: &FilteredComplex) -> Vec<usize> {
    let matrix = boundary_matrix(complex);
    let dims = complex.dims();
    let state = reduce_twist(&matrix, &dims);
    let mut betti = vec![0; complex.max_dim() + 1];
    for &k in state.essentials() {
        betti[dims[k]] += 1;
    }
    betti
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{euler_characteristic, make_complex};

    fn triangle() -> FilteredComplex {
        make_complex(vec![
            (vec![0], 1.0),
            (vec![1], 2.0),
            (vec![2], 2.0),
            (vec![0, 1], 2.0),
            (vec![0, 2], 3.0),
            (vec![1, 2], 3.0),
            (vec![0, 1, 2], 4.0),
        ])
        .unwrap()
    }

    #[test]
    fn triangle_standard_reduction() {
        let k = triangle();
        let b = boundary_matrix(&k);
        let state = reduce_standard(&b);
        // 1-based pairs (2,4), (3,5), (6,7); essential 1
        assert_eq!(state.pairs(), &[(1, 3), (2, 4), (5, 6)]);
        assert_eq!(state.essentials(), &[0]);
        // column 6 (1-based) is zeroed: {2,3} + {1,3} + {1,2} = 0
        assert!(state.reduced_column(5).is_empty());
        assert_eq!(state.reduced_column(6), &[3, 4, 5]);
        assert!(state.is_reduced());
        assert!(state.is_partition());
    }

    #[test]
    fn triangle_all_algorithms_agree() {
        let k = triangle();
        let b = boundary_matrix(&k);
        let dims = k.dims();
        for alg in Algorithm::ALL {
            let state = alg.reduce(&b, &dims);
            assert_eq!(state.pairs(), &[(1, 3), (2, 4), (5, 6)], "{alg}");
            assert_eq!(state.essentials(), &[0], "{alg}");
            assert!(state.is_reduced());
        }
    }

    #[test]
    fn triangle_barcode_drops_zero_length() {
        let k = triangle();
        let bc = compute_barcode(&k, Algorithm::Standard, true);
        assert_eq!(bc.pairs_in_dim(0), vec![(1.0, f64::INFINITY), (2.0, 3.0)]);
        assert_eq!(bc.pairs_in_dim(1), vec![(3.0, 4.0)]);
        let kept = compute_barcode(&k, Algorithm::Standard, false);
        assert_eq!(kept.pairs_in_dim(0), vec![(1.0, f64::INFINITY), (2.0, 2.0), (2.0, 3.0)]);
    }

    #[test]
    fn zero_matrix_has_only_essentials() {
        let k = make_complex((0..4u64).map(|v| (vec![v], 0.0))).unwrap();
        let b = boundary_matrix(&k);
        for alg in Algorithm::ALL {
            let state = alg.reduce(&b, &k.dims());
            assert!(state.pairs().is_empty());
            assert_eq!(state.essentials(), &[0, 1, 2, 3]);
        }
    }

    #[test]
    fn single_edge_pairs_second_vertex() {
        let k = make_complex(vec![(vec![0], 0.0), (vec![1], 0.0), (vec![0, 1], 0.0)]).unwrap();
        let state = reduce_standard(&boundary_matrix(&k));
        assert_eq!(state.pairs(), &[(1, 2)]);
        assert_eq!(state.essentials(), &[0]);
    }

    #[test]
    fn single_vertex_barcode() {
        let k = make_complex(vec![(vec![7], 2.5)]).unwrap();
        let bc = compute_barcode(&k, Algorithm::Twist, true);
        assert_eq!(bc.intervals(), &[Interval::new(0, 2.5, f64::INFINITY)]);
    }

    #[test]
    fn sphere_betti() {
        // boundary of the tetrahedron
        let mut simplices = Vec::new();
        for mask in 1u32..15 {
            let s: Vec<u64> = (0..4).filter(|b| mask & (1 << b) != 0).collect();
            simplices.push((s, 0.0));
        }
        let k = make_complex(simplices).unwrap();
        assert_eq!(betti_numbers(&k), vec![1, 0, 1]);
        assert_eq!(euler_characteristic(&k), 2);
    }

    #[test]
    fn hollow_triangle_betti() {
        let k = make_complex(vec![
            (vec![0], 0.0),
            (vec![1], 0.0),
            (vec![2], 0.0),
            (vec![0, 1], 0.0),
            (vec![0, 2], 0.0),
            (vec![1, 2], 0.0),
        ])
        .unwrap();
        assert_eq!(betti_numbers(&k), vec![1, 1]);
    }

    #[test]
    fn barcode_rejects_bad_intervals() {
        assert!(Barcode::new(vec![Interval::new(0, 2.0, 1.0)]).is_err());
        assert!(Barcode::new(vec![Interval::new(0, f64::INFINITY, f64::INFINITY)]).is_err());
        let bc = Barcode::new(vec![Interval::new(1, 0.0, 1.0), Interval::new(0, 1.0, f64::INFINITY)]).unwrap();
        assert_eq!(bc.intervals()[0].dim, 0);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for alg in Algorithm::ALL {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("chunk".parse::<Algorithm>().is_err());
    }
}
