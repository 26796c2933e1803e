use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Symmetry tolerance for distance matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A finite metric space: Euclidean points or an explicit distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricInput {
    Points { dim: usize, coords: Vec<f64> },
    Distances { n: usize, entries: Vec<f64> },
}

impl MetricInput {
    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyInput);
        };
        let dim = first.as_ref().len();
        if dim == 0 {
            return Err(Error::InvalidMetric("points need at least one coordinate".into()));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::InvalidMetric(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if let Some(x) = p.iter().find(|x| !x.is_finite()) {
                return Err(Error::InvalidMetric(format!("point {i} has non-finite coordinate {x}")));
            }
            coords.extend_from_slice(p);
        }
        Ok(MetricInput::Points { dim, coords })
    }

    /// Checks symmetry within [`SYMMETRY_TOL`], an exactly zero diagonal and finite,
    /// non-negative entries.
    pub fn from_matrix<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::InvalidMetric(format!("row {i} has {} entries, expected {n}", r.len())));
            }
            entries.extend_from_slice(r);
        }
        Self::from_flat_matrix(n, entries)
    }

    pub fn from_flat_matrix(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if entries.len() != n * n {
            return Err(Error::InvalidMetric(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        for i in 0..n {
            if entries[i * n + i] != 0.0 {
                return Err(Error::InvalidMetric(format!("diagonal entry {i} is not zero")));
            }
            for j in 0..n {
                let d = entries[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidMetric(format!("entry ({i}, {j}) = {d} is not a finite non-negative distance")));
                }
                if (d - entries[j * n + i]).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidMetric(format!("entries ({i}, {j}) and ({j}, {i}) differ")));
                }
            }
        }
        Ok(MetricInput::Distances { n, entries })
    }

    pub fn len(&self) -> usize {
        match self {
            MetricInput::Points { dim, coords } => coords.len() / dim,
            MetricInput::Distances { n, .. } => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> Option<&[f64]> {
        match self {
            MetricInput::Points { dim, coords } => Some(&coords[i * dim..(i + 1) * dim]),
            MetricInput::Distances { .. } => None,
        }
    }

    pub fn ambient_dim(&self) -> Option<usize> {
        match self {
            MetricInput::Points { dim, .. } => Some(*dim),
            MetricInput::Distances { .. } => None,
        }
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match self {
            MetricInput::Points { dim, coords } => {
                let (a, b) = (&coords[i * dim..(i + 1) * dim], &coords[j * dim..(j + 1) * dim]);
                a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
            }
            MetricInput::Distances { n, entries } => entries[i * n + j],
        }
    }

    /// Largest pairwise distance (0 for a single point).
    pub fn max_distance(&self) -> f64 {
        let n = self.len();
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Full `n x n` matrix of distances.
    pub fn distance_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.dist(i, j)).collect()).collect()
    }
}

/// Weighted undirected network on nodes `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    /// Edges may be given in either orientation; they are stored with `u < v`.
    /// Self-loops, duplicates, out-of-range nodes and non-positive weights are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut out = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            if v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) references a node >= {n}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has weight {w}; weights must be positive")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            out.push((u, v, w));
        }
        Ok(WeightedGraph { n, edges: out })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v, _) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    /// Nodes reachable from `start`, in BFS order.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(u) = queue.pop_front() {
            out.push(u);
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).len() == self.n
    }
}

/// How edge weights become edge lengths for shortest paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    /// length = 1 / w
    Inverse,
    /// length = w
    Raw,
    /// length = 1 - w
    OneMinus,
}

impl FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse" => Ok(WeightMode::Inverse),
            "raw" => Ok(WeightMode::Raw),
            "one_minus" | "one-minus" => Ok(WeightMode::OneMinus),
            other => Err(Error::BadParams(format!("unknown weight mode {other:?}"))),
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::Inverse => "inverse",
            WeightMode::Raw => "raw",
            WeightMode::OneMinus => "one_minus",
        })
    }
}

#[derive(PartialEq)]
struct Frontier(f64, usize);

impl Eq for Frontier {}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// All-pairs shortest-path distances (Dijkstra from every node).
pub fn graph_to_metric(graph: &WeightedGraph, mode: WeightMode) -> Result<MetricInput> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !graph.is_connected() {
        let reached: HashSet<usize> = graph.component_of(0).into_iter().collect();
        let stray = (0..n).find(|v| !reached.contains(v)).expect("some node is unreachable");
        let mut component = graph.component_of(stray);
        component.sort_unstable();
        return Err(Error::Disconnected { component });
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in graph.edges() {
        let len = match mode {
            WeightMode::Inverse => 1.0 / w,
            WeightMode::Raw => w,
            WeightMode::OneMinus => 1.0 - w,
        };
        if len < 0.0 {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) with weight {w} gives negative length under {mode}"
            )));
        }
        adj[u].push((v, len));
        adj[v].push((u, len));
    }
    let mut entries = vec![0.0; n * n];
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    for src in 0..n {
        dist.fill(f64::INFINITY);
        dist[src] = 0.0;
        heap.push(Frontier(0.0, src));
        while let Some(Frontier(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, len) in &adj[u] {
                let nd = d + len;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Frontier(nd, v));
                }
            }
        }
        entries[src * n..(src + 1) * n].copy_from_slice(&dist);
    }
    // each row is computed independently; symmetrize rounding differences
    for i in 0..n {
        for j in i + 1..n {
            let d = entries[i * n + j].min(entries[j * n + i]);
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    Ok(MetricInput::Distances { n, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_graph_raw() {
        let g = WeightedGraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let m = graph_to_metric(&g, WeightMode::Raw).unwrap();
        assert_eq!(m.dist(0, 2), 2.0);
    }

    #[test]
    fn triangle_inverse_goes_through_b() {
        // a=0, b=1, c=2 with ab = bc = 4, ac = 1
        let g = WeightedGraph::new(3, vec![(0, 1, 4.0), (1, 2, 4.0), (0, 2, 1.0)]).unwrap();
        let m = graph_to_metric(&g, WeightMode::Inverse).unwrap();
        assert_eq!(m.dist(0, 2), 0.5);
    }

    #[test]
    fn one_minus_unit_weight_is_zero_length() {
        let g = WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let m = graph_to_metric(&g, WeightMode::OneMinus).unwrap();
        assert_eq!(m.dist(0, 1), 0.0);
        let g = WeightedGraph::new(2, vec![(0, 1, 1.5)]).unwrap();
        assert!(graph_to_metric(&g, WeightMode::OneMinus).is_err());
    }

    #[test]
    fn disconnected_reports_component() {
        let g = WeightedGraph::new(5, vec![(0, 1, 1.0), (3, 4, 1.0)]).unwrap();
        match graph_to_metric(&g, WeightMode::Raw) {
            Err(Error::Disconnected { component }) => assert_eq!(component, vec![2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn graph_validation() {
        assert!(WeightedGraph::new(2, vec![(0, 0, 1.0)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 1, 0.0)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 2, 1.0)]).is_err());
        let g = WeightedGraph::new(3, vec![(2, 0, 1.0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2, 1.0)]);
        assert!(matches!(graph_to_metric(&WeightedGraph::new(0, vec![]).unwrap(), WeightMode::Raw), Err(Error::EmptyGraph)));
    }

    #[test]
    fn matrix_validation() {
        assert!(MetricInput::from_matrix(&[vec![0.0, 1.0], vec![1.0, 0.0]]).is_ok());
        assert!(MetricInput::from_matrix(&[vec![0.0, 1.0], vec![1.1, 0.0]]).is_err());
        assert!(MetricInput::from_matrix(&[vec![1e-300, 1.0], vec![1.0, 0.0]]).is_err());
        assert!(MetricInput::from_matrix(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
        assert!(MetricInput::from_matrix(&[vec![0.0, f64::NAN], vec![f64::NAN, 0.0]]).is_err());
        assert!(MetricInput::from_matrix(&[vec![0.0, 1.0]]).is_err());
        assert!(MetricInput::from_points(&[vec![0.0], vec![1.0, 2.0]]).is_err());
        assert!(MetricInput::from_points::<Vec<f64>>(&[]).is_err());
    }

    #[test]
    fn euclidean_distance() {
        let m = MetricInput::from_points(&[[0.0, 0.0], [3.0, 4.0]]).unwrap();
        assert_eq!(m.dist(0, 1), 5.0);
        assert_eq!(m.max_distance(), 5.0);
        assert_eq!(m.ambient_dim(), Some(2));
    }
}
