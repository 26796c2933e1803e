//! Filtered complexes from metric data and weighted networks.
//!
//! Vietoris–Rips and Čech values use the diameter axis: a simplex enters the Rips
//! filtration at its largest pairwise distance, i.e. `t = 2ε` for the usual ball radius
//! `ε`, and the Čech value is twice the radius of the minimal enclosing ball, so that
//! `Čech_t ⊆ VR_t ⊆ Čech_{√2 t}`.

mod cech;
mod metric;
mod rips;
mod witness;
mod wrcf;

use std::collections::HashMap;

pub use cech::{build_cech, build_cech_capped, min_enclosing_ball, Ball};
pub use metric::{graph_to_metric, MetricInput, WeightMode, WeightedGraph, SYMMETRY_TOL};
pub use rips::{build_rips, build_rips_capped};
pub use witness::{
    build_parametrized_witness, build_weak_witness, maxmin_landmarks, maxmin_landmarks_from, LandmarkSet,
};
pub use wrcf::{build_wrcf, build_wrcf_capped};

use crate::complex::{SimplexBuffer, VertexId};
use crate::error::{Error, Result};

/// Default guard on the number of simplices a builder may produce.
pub const DEFAULT_SIMPLEX_CAP: u64 = 200_000_000;

pub(crate) fn check_scale(max_scale: f64) -> Result<()> {
    if max_scale.is_nan() || max_scale <= 0.0 {
        return Err(Error::BadScale(max_scale));
    }
    Ok(())
}

/// Graph on `0..n` keeping, for each vertex, its higher-numbered neighbours with the
/// edge value, sorted by neighbour.
pub(crate) struct NeighborGraph {
    upper: Vec<Vec<(u32, f64)>>,
}

impl NeighborGraph {
    pub(crate) fn new(n: usize) -> Self {
        NeighborGraph {
            upper: vec![Vec::new(); n],
        }
    }

    /// Adds edge `{u, v}` with `u < v`; edges must arrive with `v` increasing per `u`.
    pub(crate) fn push_edge(&mut self, u: usize, v: usize, value: f64) {
        debug_assert!(u < v);
        self.upper[u].push((v as u32, value));
    }

    pub(crate) fn sort(&mut self) {
        for adj in &mut self.upper {
            adj.sort_unstable_by_key(|e| e.0);
        }
    }

    fn len(&self) -> usize {
        self.upper.len()
    }
}

/// Clique complex of `graph` up to `max_dim` by incremental expansion. A clique's value
/// is the largest of its vertex and edge values; vertex `i` is labelled `ids[i]`, which
/// must be increasing.
pub(crate) fn expand_cliques(
    graph: &NeighborGraph,
    ids: &[VertexId],
    vertex_values: &[f64],
    max_dim: usize,
    cap: u64,
) -> Result<SimplexBuffer> {
    debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
    let mut expander = Expander {
        graph,
        ids,
        max_len: max_dim + 1,
        cap,
        out: SimplexBuffer::new(),
        stack: Vec::with_capacity(max_dim + 1),
    };
    for v in 0..graph.len() {
        expander.stack.push(ids[v]);
        expander.emit(vertex_values[v])?;
        if expander.max_len > 1 {
            let candidates: Vec<(u32, f64)> = graph.upper[v]
                .iter()
                .map(|&(u, w)| (u, w.max(vertex_values[u as usize])))
                .collect();
            expander.expand(vertex_values[v], &candidates)?;
        }
        expander.stack.pop();
    }
    Ok(expander.out)
}

struct Expander<'a> {
    graph: &'a NeighborGraph,
    ids: &'a [VertexId],
    max_len: usize,
    cap: u64,
    out: SimplexBuffer,
    stack: Vec<VertexId>,
}

impl Expander<'_> {
    fn emit(&mut self, value: f64) -> Result<()> {
        if self.out.len() as u64 >= self.cap {
            return Err(Error::TooLarge {
                count: self.out.len() as u64 + 1,
                cap: self.cap,
            });
        }
        self.out.push(&self.stack, value);
        Ok(())
    }

    /// `candidates` are the common upper neighbours of the current clique, each with the
    /// largest edge value joining it to the clique.
    fn expand(&mut self, value: f64, candidates: &[(u32, f64)]) -> Result<()> {
        for (k, &(u, w)) in candidates.iter().enumerate() {
            let next_value = value.max(w);
            self.stack.push(self.ids[u as usize]);
            self.emit(next_value)?;
            if self.stack.len() < self.max_len {
                let next = intersect(&candidates[k + 1..], &self.graph.upper[u as usize]);
                if !next.is_empty() {
                    self.expand(next_value, &next)?;
                }
            }
            self.stack.pop();
        }
        Ok(())
    }
}

fn intersect(candidates: &[(u32, f64)], adj: &[(u32, f64)]) -> Vec<(u32, f64)> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < candidates.len() && j < adj.len() {
        match candidates[i].0.cmp(&adj[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push((candidates[i].0, candidates[i].1.max(adj[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Raises each simplex value to the largest value among its faces, so values are
/// monotone. The buffer must be closed under faces.
pub(crate) fn monotonize(buf: &mut SimplexBuffer) {
    let n = buf.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| buf.simplex_len(i));
    let index: HashMap<Vec<VertexId>, usize> = (0..n).map(|i| (buf.simplex(i).to_vec(), i)).collect();
    let mut face = Vec::new();
    for &j in &order {
        let len = buf.simplex_len(j);
        if len < 2 {
            continue;
        }
        let mut value = buf.value(j);
        for skip in 0..len {
            face.clear();
            face.extend(buf.simplex(j).iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v));
            let i = index[&face];
            value = value.max(buf.value(i));
        }
        buf.set_value(j, value);
    }
}
