use super::{check_scale, expand_cliques, monotonize, MetricInput, NeighborGraph, DEFAULT_SIMPLEX_CAP};
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};

/// A Euclidean ball.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    fn point(p: &[f64]) -> Ball {
        Ball {
            center: p.to_vec(),
            radius: 0.0,
        }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        let d = dist(&self.center, p);
        d <= self.radius * (1.0 + 1e-12) + 1e-12
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Smallest ball through every point of `boundary`, centred in their affine hull.
/// Affinely dependent sets fall back to dropping the last point.
fn circumball(boundary: &[&[f64]]) -> Ball {
    match boundary.len() {
        0 => Ball {
            center: Vec::new(),
            radius: 0.0,
        },
        1 => Ball::point(boundary[0]),
        2 => {
            let center: Vec<f64> = boundary[0].iter().zip(boundary[1]).map(|(a, b)| 0.5 * (a + b)).collect();
            let radius = 0.5 * dist(boundary[0], boundary[1]);
            Ball { center, radius }
        }
        k => {
            let p0 = boundary[0];
            let v: Vec<Vec<f64>> = boundary[1..]
                .iter()
                .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
                .collect();
            let m = k - 1;
            // 2 <v_i, v_j> lambda_j = |v_i|^2
            let mut a = vec![vec![0.0; m + 1]; m];
            for i in 0..m {
                for j in 0..m {
                    a[i][j] = 2.0 * dot(&v[i], &v[j]);
                }
                a[i][m] = dot(&v[i], &v[i]);
            }
            match solve(a) {
                Some(lambda) => {
                    let mut center = p0.to_vec();
                    for (l, vi) in lambda.iter().zip(&v) {
                        for (c, x) in center.iter_mut().zip(vi) {
                            *c += l * x;
                        }
                    }
                    let radius = boundary.iter().map(|p| dist(&center, p)).fold(0.0, f64::max);
                    Ball { center, radius }
                }
                None => circumball(&boundary[..k - 1]),
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting on an augmented `m x (m+1)` system.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let m = a.len();
    let scale = a.iter().flat_map(|r| r[..m].iter()).fold(0.0f64, |s, x| s.max(x.abs()));
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return None;
        }
        a.swap(col, piv);
        for r in col + 1..m {
            let f = a[r][col] / a[col][col];
            for c in col..=m {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    let mut x = vec![0.0; m];
    for r in (0..m).rev() {
        let s: f64 = (r + 1..m).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][m] - s) / a[r][r];
    }
    Some(x)
}

/// Minimal enclosing ball by Welzl's recursion. Exact duplicates are removed first.
pub fn min_enclosing_ball(points: &[&[f64]]) -> Ball {
    let mut unique: Vec<&[f64]> = Vec::with_capacity(points.len());
    for &p in points {
        if !unique.contains(&p) {
            unique.push(p);
        }
    }
    if unique.is_empty() {
        return circumball(&[]);
    }
    let dim = unique[0].len();
    let mut boundary = Vec::with_capacity(dim + 1);
    welzl(&unique, unique.len(), &mut boundary, dim)
}

fn welzl<'a>(points: &[&'a [f64]], n: usize, boundary: &mut Vec<&'a [f64]>, dim: usize) -> Ball {
    if n == 0 || boundary.len() == dim + 1 {
        return circumball(boundary);
    }
    let p = points[n - 1];
    let ball = welzl(points, n - 1, boundary, dim);
    if (!boundary.is_empty() || n > 1)
        && ball.contains(p) && !ball.center.is_empty() {
            return ball;
        }
    boundary.push(p);
    let ball = welzl(points, n - 1, boundary, dim);
    boundary.pop();
    ball
}

/// Čech filtration valued by twice the minimal-enclosing-ball radius; simplices with
/// value `<= max_scale` and at most `max_dim + 1` vertices.
pub fn build_cech(metric: &MetricInput, max_dim: usize, max_scale: f64) -> Result<FilteredComplex> {
    build_cech_capped(metric, max_dim, max_scale, DEFAULT_SIMPLEX_CAP)
}

pub fn build_cech_capped(
    metric: &MetricInput,
    max_dim: usize,
    max_scale: f64,
    cap: u64,
) -> Result<FilteredComplex> {
    if metric.ambient_dim().is_none() {
        return Err(Error::NeedsCoordinates);
    }
    check_scale(max_scale)?;
    let n = metric.len();
    // Čech_t is contained in VR_t, so the Rips cliques at max_scale are the candidates.
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
    let mut buf = expand_cliques(&graph, &ids, &vec![0.0; n], max_dim, cap)?;
    let mut pts: Vec<&[f64]> = Vec::new();
    for i in 0..buf.len() {
        if buf.simplex_len(i) < 3 {
            // vertices sit at 0 and edges at their length, exactly
            continue;
        }
        pts.clear();
        pts.extend(buf.simplex(i).iter().map(|&v| metric.point(v as usize).unwrap()));
        let diameter = buf.value(i);
        let value = (2.0 * min_enclosing_ball(&pts).radius).max(diameter);
        buf.set_value(i, value);
    }
    monotonize(&mut buf);
    buf.retain_values(|v| v <= max_scale);
    Ok(buf.into_complex_trusted())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_triangle_value() {
        let h = 3f64.sqrt() / 2.0;
        let m = MetricInput::from_points(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]]).unwrap();
        let k = build_cech(&m, 2, f64::INFINITY).unwrap();
        assert_eq!(k.len(), 7);
        for i in 3..6 {
            assert!((k.value(i) - 1.0).abs() < 1e-15);
        }
        assert!((k.value(6) - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn two_points() {
        let m = MetricInput::from_points(&[[0.0, 0.0, 0.0], [1.0, 2.0, 2.0]]).unwrap();
        let k = build_cech(&m, 1, f64::INFINITY).unwrap();
        assert_eq!(k.value(2), 3.0);
    }

    #[test]
    fn unit_square_tetrahedron() {
        let m = MetricInput::from_points(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]).unwrap();
        let k = build_cech(&m, 3, f64::INFINITY).unwrap();
        let top = k.position(&[0, 1, 2, 3]).unwrap();
        assert!((k.value(top) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn needs_coordinates() {
        let m = MetricInput::from_matrix(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!(matches!(build_cech(&m, 1, 1.0), Err(Error::NeedsCoordinates)));
    }

    #[test]
    fn obtuse_triangle_ball_is_longest_edge() {
        let pts: [&[f64]; 3] = [&[0.0, 0.0], &[4.0, 0.0], &[2.0, 0.5]];
        let ball = min_enclosing_ball(&pts);
        assert!((ball.radius - 2.0).abs() < 1e-12);
        assert!((ball.center[0] - 2.0).abs() < 1e-12 && ball.center[1].abs() < 1e-12);
    }

    #[test]
    fn duplicates_and_collinear() {
        let pts: [&[f64]; 4] = [&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0], &[1.0, 1.0]];
        let ball = min_enclosing_ball(&pts);
        assert!((ball.radius - 2f64.sqrt()).abs() < 1e-12);
        for p in pts {
            assert!(ball.contains(p));
        }
    }
}
