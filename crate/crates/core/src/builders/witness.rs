use super::{check_scale, expand_cliques, monotonize, MetricInput, NeighborGraph, DEFAULT_SIMPLEX_CAP};
use crate::complex::{FilteredComplex, SimplexBuffer};
use crate::datasets::SplitMix64;
use crate::error::{Error, Result};

/// Landmarks `L ⊆ S` together with, for every witness `s ∈ S`, the landmarks sorted by
/// distance from `s`. `m(s, ν)` is the distance to the ν-th closest landmark.
#[derive(Clone, Debug)]
pub struct LandmarkSet {
    indices: Vec<usize>,
    // landmark positions (into `indices`) per witness, nearest first, ties by position
    order: Vec<Vec<u32>>,
    // distances matching `order`
    sorted: Vec<Vec<f64>>,
    // d(s, indices[k]) at [s][k]
    dist: Vec<Vec<f64>>,
}

impl LandmarkSet {
    /// Validates `indices` against `metric`: non-empty, in range, distinct, and no two
    /// landmarks at distance 0.
    pub fn new(metric: &MetricInput, indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyLandmarks);
        }
        let n = metric.len();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidLandmarks(format!("index {bad} out of range for {n} points")));
        }
        for (a, &i) in indices.iter().enumerate() {
            for &j in &indices[a + 1..] {
                if i == j {
                    return Err(Error::InvalidLandmarks(format!("index {i} repeated")));
                }
                if metric.dist(i, j) == 0.0 {
                    return Err(Error::InvalidLandmarks(format!("landmarks {i} and {j} coincide")));
                }
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut sorted = Vec::with_capacity(n);
        let mut dist = Vec::with_capacity(n);
        for s in 0..n {
            let row: Vec<f64> = indices.iter().map(|&l| metric.dist(s, l)).collect();
            let mut o: Vec<u32> = (0..indices.len() as u32).collect();
            o.sort_by(|&a, &b| row[a as usize].total_cmp(&row[b as usize]).then(a.cmp(&b)));
            sorted.push(o.iter().map(|&k| row[k as usize]).collect());
            order.push(o);
            dist.push(row);
        }
        Ok(LandmarkSet {
            indices,
            order,
            sorted,
            dist,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn witness_count(&self) -> usize {
        self.dist.len()
    }

    /// Distance from witness `s` to its `nu`-th closest landmark; `m(s, 0) = 0`.
    pub fn m(&self, s: usize, nu: usize) -> Result<f64> {
        if nu == 0 {
            return Ok(0.0);
        }
        self.sorted[s].get(nu - 1).copied().ok_or(Error::BadNu {
            nu,
            landmarks: self.len(),
        })
    }

    fn check(&self, metric: &MetricInput) -> Result<()> {
        if self.witness_count() != metric.len() {
            return Err(Error::InvalidLandmarks(format!(
                "built for {} points, metric has {}",
                self.witness_count(),
                metric.len()
            )));
        }
        Ok(())
    }

    /// Landmark positions sorted by point index, which is the vertex order of the complex.
    fn vertex_order(&self) -> (Vec<usize>, Vec<u64>) {
        let mut pos: Vec<usize> = (0..self.len()).collect();
        pos.sort_by_key(|&k| self.indices[k]);
        let ids = pos.iter().map(|&k| self.indices[k] as u64).collect();
        (pos, ids)
    }
}

/// Greedy maxmin selection. The first landmark is drawn from `seed`; each next one is
/// the point farthest from those chosen, ties going to the lowest index.
pub fn maxmin_landmarks(metric: &MetricInput, count: usize, seed: u64) -> Result<LandmarkSet> {
    let n = metric.len();
    if count == 0 || count > n {
        return Err(Error::BadCount { count, n });
    }
    let first = SplitMix64::new(seed).below(n as u64) as usize;
    maxmin_landmarks_from(metric, count, first)
}

/// [`maxmin_landmarks`] with an explicit first pick.
pub fn maxmin_landmarks_from(metric: &MetricInput, count: usize, first: usize) -> Result<LandmarkSet> {
    let n = metric.len();
    if count == 0 || count > n || first >= n {
        return Err(Error::BadCount { count, n });
    }
    let mut chosen = vec![first];
    let mut gap: Vec<f64> = (0..n).map(|i| metric.dist(i, first)).collect();
    while chosen.len() < count {
        let mut best = None;
        for (i, &g) in gap.iter().enumerate() {
            if g > 0.0 && best.is_none_or(|b: usize| g > gap[b]) {
                best = Some(i);
            }
        }
        let Some(next) = best else {
            // only duplicates of chosen points remain
            return Err(Error::BadCount { count, n: chosen.len() });
        };
        chosen.push(next);
        for (i, g) in gap.iter_mut().enumerate() {
            *g = g.min(metric.dist(i, next));
        }
    }
    LandmarkSet::new(metric, chosen)
}

/// Weak witness filtration on `L`: `σ` enters at the least `ε ≥ 0` for which some `s`
/// has `d(s,a) <= d(s,b) + ε` for all `a ∈ σ`, `b ∈ L∖σ`, raised to the values of its faces.
pub fn build_weak_witness(
    metric: &MetricInput,
    landmarks: &LandmarkSet,
    max_dim: usize,
    max_scale: f64,
) -> Result<FilteredComplex> {
    check_scale(max_scale)?;
    if landmarks.is_empty() {
        return Err(Error::EmptyLandmarks);
    }
    landmarks.check(metric)?;
    let (pos, ids) = landmarks.vertex_order();
    let l = pos.len();
    // Monotone values dominate edge values, so every simplex of the result is a clique
    // of the edges that pass the threshold.
    let mut graph = NeighborGraph::new(l);
    if max_dim > 0 {
        for i in 0..l {
            for j in i + 1..l {
                let v = weak_value(landmarks, &[pos[i], pos[j]]);
                if v <= max_scale {
                    graph.push_edge(i, j, v);
                }
            }
        }
    }
    let mut buf = expand_cliques(&graph, &ids, &vec![0.0; l], max_dim, DEFAULT_SIMPLEX_CAP)?;
    let id_to_pos = |id: u64| pos[ids.binary_search(&id).unwrap()];
    let mut members = Vec::new();
    for i in 0..buf.len() {
        if buf.simplex_len(i) < 3 {
            continue;
        }
        members.clear();
        members.extend(buf.simplex(i).iter().map(|&v| id_to_pos(v)));
        let v = weak_value(landmarks, &members);
        buf.set_value(i, v);
    }
    monotonize(&mut buf);
    buf.retain_values(|v| v <= max_scale);
    Ok(finish(buf))
}

/// `min_s max(0, max_{a∈σ} d(s,a) − min_{b∈L∖σ} d(s,b))` for landmark positions `sigma`.
fn weak_value(landmarks: &LandmarkSet, sigma: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for s in 0..landmarks.witness_count() {
        let far = sigma.iter().map(|&a| landmarks.dist[s][a]).fold(0.0, f64::max);
        let near_out = landmarks.order[s]
            .iter()
            .position(|&b| !sigma.contains(&(b as usize)))
            .map(|k| landmarks.sorted[s][k]);
        let v = match near_out {
            Some(d) => (far - d).max(0.0),
            None => 0.0,
        };
        if v < best {
            best = v;
            if best == 0.0 {
                break;
            }
        }
    }
    best
}

/// Parametrized witness filtration `W_ν`: the edge `{x0, x1}` enters at
/// `min_s max(0, max(d(x0,s), d(x1,s)) − m_ν(s))`, larger simplices by the clique rule.
pub fn build_parametrized_witness(
    metric: &MetricInput,
    landmarks: &LandmarkSet,
    nu: usize,
    max_dim: usize,
    max_scale: f64,
) -> Result<FilteredComplex> {
    check_scale(max_scale)?;
    if landmarks.is_empty() {
        return Err(Error::EmptyLandmarks);
    }
    landmarks.check(metric)?;
    if nu > landmarks.len() {
        return Err(Error::BadNu {
            nu,
            landmarks: landmarks.len(),
        });
    }
    let n = landmarks.witness_count();
    let m: Vec<f64> = (0..n).map(|s| landmarks.m(s, nu)).collect::<Result<_>>()?;
    let (pos, ids) = landmarks.vertex_order();
    let l = pos.len();
    let mut graph = NeighborGraph::new(l);
    if max_dim > 0 {
        for i in 0..l {
            for j in i + 1..l {
                let (a, b) = (pos[i], pos[j]);
                let v = (0..n)
                    .map(|s| (landmarks.dist[s][a].max(landmarks.dist[s][b]) - m[s]).max(0.0))
                    .fold(f64::INFINITY, f64::min);
                if v <= max_scale {
                    graph.push_edge(i, j, v);
                }
            }
        }
    }
    let buf = expand_cliques(&graph, &ids, &vec![0.0; l], max_dim, DEFAULT_SIMPLEX_CAP)?;
    Ok(finish(buf))
}

fn finish(buf: SimplexBuffer) -> FilteredComplex {
    buf.into_complex_trusted()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> MetricInput {
        let pts: Vec<[f64; 1]> = xs.iter().map(|&x| [x]).collect();
        MetricInput::from_points(&pts).unwrap()
    }

    #[test]
    fn all_points_as_landmarks_have_zero_vertices() {
        let m = line(&[0.0, 1.0, 2.5, 4.0]);
        let l = LandmarkSet::new(&m, vec![0, 1, 2, 3]).unwrap();
        let k = build_weak_witness(&m, &l, 1, f64::INFINITY).unwrap();
        assert_eq!(k.count_by_dim()[0], 4);
        assert!((0..4).all(|i| k.value(i) == 0.0));
    }

    #[test]
    fn vacuous_top_simplex() {
        let m = line(&[0.0, 1.0, 2.0, 3.0]);
        let l = LandmarkSet::new(&m, vec![0, 3]).unwrap();
        let k = build_weak_witness(&m, &l, 1, f64::INFINITY).unwrap();
        assert_eq!(k.value(k.position(&[0, 3]).unwrap()), 0.0);
    }

    #[test]
    fn weak_edges_match_brute_force() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let m = line(&xs);
        let l = LandmarkSet::new(&m, vec![0, 1, 3]).unwrap();
        let k = build_weak_witness(&m, &l, 1, f64::INFINITY).unwrap();
        let lm = [0usize, 1, 3];
        for (a, &x) in lm.iter().enumerate() {
            for &y in &lm[a + 1..] {
                let rest: Vec<usize> = lm.iter().copied().filter(|&z| z != x && z != y).collect();
                let want = xs
                    .iter()
                    .map(|&s| {
                        let far = (s - xs[x]).abs().max((s - xs[y]).abs());
                        let near = rest.iter().map(|&b| (s - xs[b]).abs()).fold(f64::INFINITY, f64::min);
                        (far - near).max(0.0)
                    })
                    .fold(f64::INFINITY, f64::min);
                let got = k.value(k.position(&[x as u64, y as u64]).unwrap());
                assert_eq!(got, want, "edge {x} {y}");
            }
        }
    }

    #[test]
    fn nu_one_equilateral() {
        let m = MetricInput::from_matrix(&[[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]).unwrap();
        let l = LandmarkSet::new(&m, vec![0, 1, 2]).unwrap();
        let k = build_parametrized_witness(&m, &l, 1, 2, f64::INFINITY).unwrap();
        assert!((3..7).all(|i| k.value(i) == 1.0));
    }

    #[test]
    fn bad_nu_and_empty() {
        let m = line(&[0.0, 1.0, 2.0]);
        let l = LandmarkSet::new(&m, vec![0, 2]).unwrap();
        assert!(build_parametrized_witness(&m, &l, 2, 1, 1.0).is_ok());
        assert!(matches!(
            build_parametrized_witness(&m, &l, 3, 1, 1.0),
            Err(Error::BadNu { nu: 3, landmarks: 2 })
        ));
        assert!(matches!(LandmarkSet::new(&m, vec![]), Err(Error::EmptyLandmarks)));
        assert!(matches!(LandmarkSet::new(&m, vec![1, 1]), Err(Error::InvalidLandmarks(_))));
    }

    #[test]
    fn maxmin_picks() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let m = line(&xs);
        let l = maxmin_landmarks_from(&m, 3, 0).unwrap();
        assert_eq!(l.indices(), &[0, 9, 4]);
        let all = maxmin_landmarks(&m, 10, 7).unwrap();
        let mut idx = all.indices().to_vec();
        idx.sort();
        assert_eq!(idx, (0..10).collect::<Vec<_>>());
        assert_eq!(maxmin_landmarks(&m, 1, 7).unwrap().len(), 1);
        assert!(matches!(maxmin_landmarks(&m, 0, 7), Err(Error::BadCount { .. })));
        assert!(matches!(maxmin_landmarks(&m, 11, 7), Err(Error::BadCount { .. })));
        assert_eq!(
            maxmin_landmarks(&m, 4, 99).unwrap().indices(),
            maxmin_landmarks(&m, 4, 99).unwrap().indices()
        );
    }
}
