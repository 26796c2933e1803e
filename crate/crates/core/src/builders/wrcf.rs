use super::{expand_cliques, NeighborGraph, WeightedGraph, DEFAULT_SIMPLEX_CAP};
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};

/// Weight rank clique filtration. Distinct weights `w1 > w2 > ...` define steps
/// `1, 2, ...`; an edge enters at the step of its weight and every clique (up to
/// `max_dim`) at the step of its last edge. Vertices enter at step 1.
pub fn build_wrcf(graph: &WeightedGraph, max_dim: usize) -> Result<FilteredComplex> {
    build_wrcf_capped(graph, max_dim, DEFAULT_SIMPLEX_CAP)
}

pub fn build_wrcf_capped(graph: &WeightedGraph, max_dim: usize, cap: u64) -> Result<FilteredComplex> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut weights: Vec<f64> = graph.edges().iter().map(|e| e.2).collect();
    weights.sort_by(|a, b| b.total_cmp(a));
    weights.dedup();
    let step = |w: f64| (weights.partition_point(|&x| x > w) + 1) as f64;

    let mut nb = NeighborGraph::new(n);
    if max_dim > 0 {
        for &(u, v, w) in graph.edges() {
            nb.push_edge(u, v, step(w));
        }
        nb.sort();
    }
    let ids: Vec<u64> = (0..n as u64).collect();
    let buf = expand_cliques(&nb, &ids, &vec![1.0; n], max_dim, cap)?;
    Ok(buf.into_complex_trusted())
}
