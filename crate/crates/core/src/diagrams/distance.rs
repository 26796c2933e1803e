use std::fmt;
use std::str::FromStr;

use super::hungarian::assignment;
use super::matching::max_matching;
use super::PersistenceDiagram;
use crate::error::{Error, Result};

/// Ground metric on the plane used to price a single match.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroundMetric {
    LInf,
    /// `L_q` for a finite `q >= 1`.
    Lq(f64),
}

impl GroundMetric {
    pub fn dist(self, a: (f64, f64), b: (f64, f64)) -> f64 {
        let (x, y) = ((a.0 - b.0).abs(), (a.1 - b.1).abs());
        match self {
            GroundMetric::LInf => x.max(y),
            GroundMetric::Lq(q) => (x.powf(q) + y.powf(q)).powf(1.0 / q),
        }
    }

    /// Distance from `(b, d)` to its projection `((b+d)/2, (b+d)/2)` on the diagonal.
    pub fn to_diagonal(self, p: (f64, f64)) -> f64 {
        let half = (p.1 - p.0) / 2.0;
        match self {
            GroundMetric::LInf => half,
            GroundMetric::Lq(q) => half * 2f64.powf(1.0 / q),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            GroundMetric::Lq(q) if !(q >= 1.0 && q.is_finite()) => {
                Err(Error::BadParams(format!("ground metric L_q needs finite q >= 1, got {q}")))
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for GroundMetric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linf" | "inf" | "l_inf" => Ok(GroundMetric::LInf),
            other => {
                let q = other.trim_start_matches("l_").trim_start_matches('l');
                let q: f64 = q
                    .parse()
                    .map_err(|_| Error::BadParams(format!("unknown ground metric `{s}` (linf|l1|l2|lq)")))?;
                let m = GroundMetric::Lq(q);
                m.validate()?;
                Ok(m)
            }
        }
    }
}

impl fmt::Display for GroundMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundMetric::LInf => f.write_str("linf"),
            GroundMetric::Lq(q) => write!(f, "l{q}"),
        }
    }
}

/// Bottleneck distance `W_∞[L_∞]`.
pub fn bottleneck(x: &PersistenceDiagram, y: &PersistenceDiagram) -> f64 {
    bottleneck_with(x, y, GroundMetric::LInf)
}

/// Bottleneck distance under an arbitrary ground metric. Exact: the optimum is one of the
/// pairwise or point-to-diagonal distances, found by binary search with a perfect-matching
/// test at each candidate.
pub fn bottleneck_with(x: &PersistenceDiagram, y: &PersistenceDiagram, ground: GroundMetric) -> f64 {
    let (xf, xe) = x.split();
    let (yf, ye) = y.split();
    let Some(gaps) = essential_gaps(&xe, &ye) else {
        return f64::INFINITY;
    };
    let essential = gaps.into_iter().fold(0.0, f64::max);
    let (n, m) = (xf.len(), yf.len());
    if n + m == 0 {
        return essential;
    }
    let cross: Vec<Vec<f64>> = xf.iter().map(|&p| yf.iter().map(|&q| ground.dist(p, q)).collect()).collect();
    let xd: Vec<f64> = xf.iter().map(|&p| ground.to_diagonal(p)).collect();
    let yd: Vec<f64> = yf.iter().map(|&q| ground.to_diagonal(q)).collect();

    let mut candidates: Vec<f64> = cross.iter().flatten().chain(&xd).chain(&yd).copied().collect();
    candidates.push(0.0);
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // Left: X then the diagonal copies of Y; right: Y then the diagonal copies of X.
    let feasible = |t: f64| {
        let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n + m);
        for i in 0..n {
            let mut row: Vec<usize> = (0..m).filter(|&j| cross[i][j] <= t).collect();
            if xd[i] <= t {
                row.push(m + i);
            }
            adj.push(row);
        }
        for j in 0..m {
            let mut row = Vec::with_capacity(n + 1);
            if yd[j] <= t {
                row.push(j);
            }
            row.extend(m..m + n);
            adj.push(row);
        }
        max_matching(&adj, n + m) == n + m
    };
    // matching every point to the diagonal is always feasible at the largest candidate
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo].max(essential)
}

/// `p`-Wasserstein distance `W_p[ground]`, exact via an optimal assignment on the
/// diagonal-augmented cost matrix. `p = inf` gives the bottleneck distance.
pub fn wasserstein(x: &PersistenceDiagram, y: &PersistenceDiagram, p: f64, ground: GroundMetric) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::BadP(p));
    }
    ground.validate()?;
    if p == f64::INFINITY {
        return Ok(bottleneck_with(x, y, ground));
    }
    let (xf, xe) = x.split();
    let (yf, ye) = y.split();
    let Some(gaps) = essential_gaps(&xe, &ye) else {
        return Ok(f64::INFINITY);
    };
    let essential: f64 = gaps.iter().map(|g| g.powf(p)).sum();
    let (n, m) = (xf.len(), yf.len());
    let xd: Vec<f64> = xf.iter().map(|&a| ground.to_diagonal(a).powf(p)).collect();
    let yd: Vec<f64> = yf.iter().map(|&b| ground.to_diagonal(b).powf(p)).collect();
    // any plan using a forbidden cell costs more than sending everything to the diagonal
    let forbidden = 1.0 + 2.0 * (xd.iter().sum::<f64>() + yd.iter().sum::<f64>());
    let size = n + m;
    let mut cost = vec![vec![0.0; size]; size];
    for i in 0..n {
        for j in 0..m {
            cost[i][j] = ground.dist(xf[i], yf[j]).powf(p).min(forbidden);
        }
        for k in 0..n {
            cost[i][m + k] = if k == i { xd[i] } else { forbidden };
        }
    }
    for j in 0..m {
        for k in 0..m {
            cost[n + j][k] = if k == j { yd[j] } else { forbidden };
        }
    }
    let (_, total) = assignment(&cost);
    Ok((total + essential).powf(1.0 / p))
}

/// Birth gaps of essentials matched in sorted order; `None` when the counts differ.
fn essential_gaps(a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    (a.len() == b.len()).then(|| a.iter().zip(b).map(|(x, y)| (x - y).abs()).collect())
}
