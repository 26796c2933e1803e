use super::{check_scale, expand_cliques, MetricInput, NeighborGraph, DEFAULT_SIMPLEX_CAP};
use crate::complex::FilteredComplex;
use crate::error::Result;

/// Vietoris–Rips filtration: every clique of at most `max_dim + 1` points whose diameter
/// is `<= max_scale`, valued by its diameter. `max_scale` may be infinite.
pub fn build_rips(metric: &MetricInput, max_dim: usize, max_scale: f64) -> Result<FilteredComplex> {
    build_rips_capped(metric, max_dim, max_scale, DEFAULT_SIMPLEX_CAP)
}

/// [`build_rips`] with an explicit simplex-count guard.
pub fn build_rips_capped(
    metric: &MetricInput,
    max_dim: usize,
    max_scale: f64,
    cap: u64,
) -> Result<FilteredComplex> {
    check_scale(max_scale)?;
    let n = metric.len();
    let mut graph = NeighborGraph::new(n);
    if max_dim > 0 {
        for i in 0..n {
            for j in i + 1..n {
                let d = metric.dist(i, j);
                if d <= max_scale {
                    graph.push_edge(i, j, d);
                }
            }
        }
    }
    let ids: Vec<u64> = (0..n as u64).collect();
    let buf = expand_cliques(&graph, &ids, &vec![0.0; n], max_dim, cap)?;
    Ok(buf.into_complex_trusted())
}
