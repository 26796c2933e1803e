//! Seeded synthetic data: Klein bottle samples, uniform random clouds, Vicsek flocks
//! and fractal networks.
//!
//! All randomness comes from one [`SplitMix64`] stream per call, consumed in a fixed
//! order, so outputs are bit-identical across runs and platforms for a given seed.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::builders::WeightedGraph;
use crate::error::{Error, Result};

/// SplitMix64 (Steele, Lea and Flood). State advances by the golden-ratio increment.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`.
    pub fn next_f64_open_closed(&mut self) -> f64 {
        1.0 - self.next_f64()
    }

    /// Uniform integer in `0..n` (Lemire's multiply-and-reject). `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = self.next_u64() as u128 * n as u128;
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }
}

/// Tube parameter of the figure-8 immersion.
pub const KLEIN_A: f64 = 2.0;

/// Figure-8 immersion of the Klein bottle at parameters `(u, v)`.
pub fn klein_point(u: f64, v: f64) -> [f64; 3] {
    let (su, cu) = (u / 2.0).sin_cos();
    let r = KLEIN_A + cu * v.sin() - su * (2.0 * v).sin();
    [r * u.cos(), r * u.sin(), su * v.sin() + cu * (2.0 * v).sin()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// `√n × √n` lattice over `[0, 2π)²`, `u` varying slowest.
    Grid,
    /// `(u, v)` drawn uniformly from `[0, 2π)²`.
    Random,
}

impl FromStr for SampleMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(SampleMode::Grid),
            "random" => Ok(SampleMode::Random),
            _ => Err(Error::BadParams(format!("unknown sampling mode `{s}` (grid|random)"))),
        }
    }
}

/// Parameters `(u, v)` of a Klein sample, in output order.
pub fn klein_parameters(n: usize, mode: SampleMode, seed: u64) -> Result<Vec<(f64, f64)>> {
    if n == 0 {
        return Err(Error::BadCount { count: n, n });
    }
    match mode {
        SampleMode::Grid => {
            let side = (n as f64).sqrt().round() as usize;
            if side * side != n {
                return Err(Error::BadCount { count: n, n });
            }
            let step = TAU / side as f64;
            Ok((0..side)
                .flat_map(|i| (0..side).map(move |j| (i as f64 * step, j as f64 * step)))
                .collect())
        }
        SampleMode::Random => {
            let mut rng = SplitMix64::new(seed);
            Ok((0..n).map(|_| (TAU * rng.next_f64(), TAU * rng.next_f64())).collect())
        }
    }
}

pub fn generate_klein(n: usize, mode: SampleMode, seed: u64) -> Result<Vec<[f64; 3]>> {
    Ok(klein_parameters(n, mode, seed)?
        .into_iter()
        .map(|(u, v)| klein_point(u, v))
        .collect())
}

/// `n` points uniform in `[0, 1)^d`, coordinates drawn point by point.
pub fn generate_uniform(n: usize, d: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = SplitMix64::new(seed);
    (0..n).map(|_| (0..d).map(|_| rng.next_f64()).collect()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngleInit {
    /// Every particle starts with the same heading.
    Constant(f64),
    /// Headings uniform in `[-π, π)`.
    Uniform,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VicsekParams {
    /// Side of the periodic square.
    pub l: f64,
    pub v0: f64,
    pub n: usize,
    /// Width of the uniform angular noise.
    pub eta: f64,
    pub steps: usize,
    /// Interaction radius.
    pub r: f64,
    pub init: AngleInit,
}

impl Default for VicsekParams {
    fn default() -> Self {
        VicsekParams {
            l: 5.0,
            v0: 0.03,
            n: 300,
            eta: 0.1,
            steps: 600,
            r: 1.0,
            init: AngleInit::Uniform,
        }
    }
}

impl VicsekParams {
    fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(self.l) && positive(self.v0) && positive(self.r) && self.n > 0 && self.steps > 0) {
            return Err(Error::BadParams("Vicsek l, v0, r, N and T must be positive".into()));
        }
        if !(self.eta.is_finite() && self.eta >= 0.0) {
            return Err(Error::BadParams(format!("Vicsek noise must be >= 0, got {}", self.eta)));
        }
        if let AngleInit::Constant(t) = self.init {
            if !t.is_finite() {
                return Err(Error::BadParams("initial angle must be finite".into()));
            }
        }
        Ok(())
    }
}

/// A running Vicsek simulation.
#[derive(Clone, Debug)]
pub struct VicsekState {
    params: VicsekParams,
    rng: SplitMix64,
    x: Vec<f64>,
    y: Vec<f64>,
    theta: Vec<f64>,
    time: usize,
}

impl VicsekState {
    /// Positions are drawn first (x then y per particle), then headings if uniform.
    pub fn new(params: VicsekParams, seed: u64) -> Result<Self> {
        params.validate()?;
        let mut rng = SplitMix64::new(seed);
        let (mut x, mut y) = (Vec::with_capacity(params.n), Vec::with_capacity(params.n));
        for _ in 0..params.n {
            x.push(params.l * rng.next_f64());
            y.push(params.l * rng.next_f64());
        }
        let theta = match params.init {
            AngleInit::Constant(t) => vec![t; params.n],
            AngleInit::Uniform => (0..params.n).map(|_| TAU * rng.next_f64() - PI).collect(),
        };
        Ok(VicsekState {
            params,
            rng,
            x,
            y,
            theta,
            time: 0,
        })
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// Points `(x, y, θ)`.
    pub fn points(&self) -> Vec<[f64; 3]> {
        (0..self.params.n).map(|i| [self.x[i], self.y[i], self.theta[i]]).collect()
    }

    /// One update: heading becomes the circular mean over neighbours within `r`
    /// (periodic distance, self included) plus noise in `[-η/2, η/2]`; then every particle
    /// moves by `v0` along its new heading. Noise is drawn for every particle even when
    /// `η = 0`, so the stream position does not depend on `η`.
    pub fn step(&mut self) {
        let p = &self.params;
        let r2 = p.r * p.r;
        let wrap = |d: f64| {
            let d = d.abs() % p.l;
            d.min(p.l - d)
        };
        let mut next = Vec::with_capacity(p.n);
        for i in 0..p.n {
            let (mut s, mut c) = (0.0, 0.0);
            for j in 0..p.n {
                let dx = wrap(self.x[i] - self.x[j]);
                let dy = wrap(self.y[i] - self.y[j]);
                if dx * dx + dy * dy <= r2 {
                    s += self.theta[j].sin();
                    c += self.theta[j].cos();
                }
            }
            let noise = p.eta * (self.rng.next_f64() - 0.5);
            next.push(wrap_angle(s.atan2(c) + noise));
        }
        self.theta = next;
        for i in 0..p.n {
            self.x[i] = wrap_coord(self.x[i] + p.v0 * self.theta[i].cos(), p.l);
            self.y[i] = wrap_coord(self.y[i] + p.v0 * self.theta[i].sin(), p.l);
        }
        self.time += 1;
    }
}

fn wrap_coord(x: f64, l: f64) -> f64 {
    let w = x.rem_euclid(l);
    if w >= l {
        0.0
    } else {
        w
    }
}

fn wrap_angle(t: f64) -> f64 {
    if (-PI..PI).contains(&t) {
        t
    } else {
        (t + PI).rem_euclid(TAU) - PI
    }
}

/// Snapshots of a Vicsek run at the requested step indices (0 is the initial state).
pub fn generate_vicsek(params: &VicsekParams, seed: u64, frames: &[usize]) -> Result<Vec<Vec<[f64; 3]>>> {
    if let Some(&frame) = frames.iter().find(|&&f| f > params.steps) {
        return Err(Error::BadFrame {
            frame,
            steps: params.steps,
        });
    }
    let mut state = VicsekState::new(params.clone(), seed)?;
    let last = frames.iter().copied().max().unwrap_or(0);
    let mut snaps: HashMap<usize, Vec<[f64; 3]>> = HashMap::new();
    loop {
        if frames.contains(&state.time) {
            snaps.insert(state.time, state.points());
        }
        if state.time >= last {
            break;
        }
        state.step();
    }
    Ok(frames.iter().map(|f| snaps[f].clone()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weighting {
    Unit,
    /// i.i.d. uniform `(0, 1]`.
    Random,
    /// `k_i k_j X` with `X` uniform `(0, 1]` and `k_i` the final degree.
    Linear,
}

impl FromStr for Weighting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Weighting::Unit),
            "random" => Ok(Weighting::Random),
            "linear" => Ok(Weighting::Linear),
            _ => Err(Error::BadParams(format!("unknown weighting `{s}` (unit|random|linear)"))),
        }
    }
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weighting::Unit => "unit",
            Weighting::Random => "random",
            Weighting::Linear => "linear",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FractalParams {
    pub b: u32,
    pub n: u32,
    pub k: u32,
    pub weighting: Weighting,
}

/// Largest supported `n` (the network has `2^n` nodes).
pub const FRACTAL_MAX_N: u32 = 20;

impl FractalParams {
    fn validate(&self) -> Result<()> {
        if self.b == 0 || self.n < self.b || self.k < 2 || self.n > FRACTAL_MAX_N {
            return Err(Error::BadParams(format!(
                "fractal network needs 1 <= b <= n <= {FRACTAL_MAX_N} and k >= 2 (got b={}, n={}, k={})",
                self.b, self.n, self.k
            )));
        }
        Ok(())
    }

    /// Inter-copy edges added at doubling step `j >= 1`: `round(4^(b+j-1) / k^j)`.
    pub fn inter_edges(&self, j: u32) -> u64 {
        let size = 2f64.powi((self.b + j - 1) as i32);
        (size * size / (self.k as f64).powi(j as i32)).round() as u64
    }
}

/// Fractal network: a complete graph on `2^b` nodes, doubled `n - b` times. At step `j`
/// the graph is copied and `round(4^(b+j-1) k^-j)` edges between the copies are picked
/// uniformly without replacement. Edges come out sorted, weights drawn in that order.
pub fn generate_fractal(params: &FractalParams, seed: u64) -> Result<WeightedGraph> {
    params.validate()?;
    let mut rng = SplitMix64::new(seed);
    let base = 1usize << params.b;
    let mut edges: Vec<(usize, usize)> = (0..base).flat_map(|i| (i + 1..base).map(move |j| (i, j))).collect();
    for j in 1..=params.n - params.b {
        let size = base << (j - 1);
        let copies: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u + size, v + size)).collect();
        edges.extend(copies);
        let pairs = (size * size) as u64;
        for idx in sample_without_replacement(&mut rng, pairs, params.inter_edges(j)) {
            let (a, b) = ((idx / size as u64) as usize, (idx % size as u64) as usize);
            edges.push((a, b + size));
        }
    }
    edges.sort_unstable();
    let n = 1usize << params.n;
    let weights: Vec<f64> = match params.weighting {
        Weighting::Unit => vec![1.0; edges.len()],
        Weighting::Random => edges.iter().map(|_| rng.next_f64_open_closed()).collect(),
        Weighting::Linear => {
            let mut deg = vec![0usize; n];
            for &(u, v) in &edges {
                deg[u] += 1;
                deg[v] += 1;
            }
            edges
                .iter()
                .map(|&(u, v)| (deg[u] * deg[v]) as f64 * rng.next_f64_open_closed())
                .collect()
        }
    };
    WeightedGraph::new(n, edges.into_iter().zip(weights).map(|((u, v), w)| (u, v, w)).collect())
}

/// First `count` entries of a Fisher–Yates shuffle of `0..n`, with the permutation kept
/// sparsely.
fn sample_without_replacement(rng: &mut SplitMix64, n: u64, count: u64) -> Vec<u64> {
    let count = count.min(n);
    let mut swapped: HashMap<u64, u64> = HashMap::new();
    let mut out = Vec::with_capacity(count as usize);
    for i in 0..count {
        let j = i + rng.below(n - i);
        let vi = *swapped.get(&i).unwrap_or(&i);
        let vj = *swapped.get(&j).unwrap_or(&j);
        swapped.insert(j, vi);
        out.push(vj);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // reference outputs of the canonical C implementation, seed 1234567
        let mut r = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..3).map(|_| r.next_u64()).collect();
        assert_eq!(got, vec![6457827717110365317, 3203168211198807973, 9817491932198370423]);
    }

    #[test]
    fn unit_ranges() {
        let mut r = SplitMix64::new(3);
        for _ in 0..1000 {
            let x = r.next_f64();
            assert!((0.0..1.0).contains(&x));
            let y = r.next_f64_open_closed();
            assert!(y > 0.0 && y <= 1.0);
            assert!(r.below(7) < 7);
        }
    }

    #[test]
    fn klein_grid() {
        assert_eq!(klein_point(0.0, 0.0), [2.0, 0.0, 0.0]);
        let params = klein_parameters(4, SampleMode::Grid, 0).unwrap();
        assert_eq!(params, vec![(0.0, 0.0), (0.0, PI), (PI, 0.0), (PI, PI)]);
        let pts = generate_klein(400, SampleMode::Grid, 0).unwrap();
        assert_eq!(pts.len(), 400);
        assert!(matches!(generate_klein(10, SampleMode::Grid, 0), Err(Error::BadCount { .. })));
        assert!(matches!(generate_klein(0, SampleMode::Random, 0), Err(Error::BadCount { .. })));
    }

    #[test]
    fn klein_is_periodic() {
        // period 2π in v; a turn in u flips the sign of v
        for (u, v) in klein_parameters(36, SampleMode::Random, 5).unwrap() {
            let p = klein_point(u, v);
            for q in [klein_point(u, v + TAU), klein_point(u + TAU, -v), klein_point(u + 2.0 * TAU, v)] {
                for k in 0..3 {
                    assert!((p[k] - q[k]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn uniform_cloud() {
        let a = generate_uniform(50, 16, 9);
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|p| p.len() == 16 && p.iter().all(|x| (0.0..1.0).contains(x))));
        assert_eq!(a, generate_uniform(50, 16, 9));
        assert_ne!(a, generate_uniform(50, 16, 10));
    }

    #[test]
    fn vicsek_aligned_fixed_point() {
        let p = VicsekParams {
            n: 20,
            eta: 0.0,
            steps: 10,
            init: AngleInit::Constant(0.7),
            ..Default::default()
        };
        for frame in generate_vicsek(&p, 1, &[0, 5, 10]).unwrap() {
            for q in frame {
                assert!((q[2] - 0.7).abs() < 1e-12);
                assert!((0.0..p.l).contains(&q[0]) && (0.0..p.l).contains(&q[1]));
            }
        }
    }

    #[test]
    fn vicsek_two_opposite() {
        let p = VicsekParams {
            l: 1.0,
            n: 2,
            eta: 0.0,
            steps: 1,
            r: 2.0,
            init: AngleInit::Constant(0.0),
            ..Default::default()
        };
        let mut s = VicsekState::new(p, 4).unwrap();
        s.theta = vec![0.4, -0.4];
        s.step();
        assert!(s.theta.iter().all(|t| t.abs() < 1e-15));
    }

    #[test]
    fn vicsek_frames() {
        let p = VicsekParams {
            n: 30,
            steps: 5,
            ..Default::default()
        };
        assert!(matches!(generate_vicsek(&p, 0, &[6]), Err(Error::BadFrame { frame: 6, steps: 5 })));
        let a = generate_vicsek(&p, 2, &[5, 1]).unwrap();
        let b = generate_vicsek(&p, 2, &[1, 5]).unwrap();
        assert_eq!(a[0], b[1]);
        for q in a.iter().flatten() {
            assert!((0.0..p.l).contains(&q[0]) && (0.0..p.l).contains(&q[1]));
        }
    }

    #[test]
    fn fractal_counts() {
        let p = FractalParams {
            b: 2,
            n: 3,
            k: 2,
            weighting: Weighting::Unit,
        };
        let g = generate_fractal(&p, 0).unwrap();
        assert_eq!(g.node_count(), 8);
        assert_eq!(g.edges().len(), 20);
        assert_eq!(p.inter_edges(1) as f64 / 16.0, 0.5);
        let big = FractalParams {
            b: 5,
            n: 9,
            k: 2,
            weighting: Weighting::Linear,
        };
        let g = generate_fractal(&big, 1).unwrap();
        assert_eq!(g.node_count(), 512);
        assert!(g.is_connected());
        assert_eq!(g, generate_fractal(&big, 1).unwrap());
        assert!(generate_fractal(&FractalParams { k: 1, ..p }, 0).is_err());
        assert!(generate_fractal(&FractalParams { n: 1, ..p }, 0).is_err());
    }

    #[test]
    fn sampling_is_distinct() {
        let mut r = SplitMix64::new(8);
        let mut s = sample_without_replacement(&mut r, 100, 100);
        s.sort();
        assert_eq!(s, (0..100).collect::<Vec<_>>());
    }
}
