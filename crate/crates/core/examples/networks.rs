//! Weighted networks: the weight rank clique filtration of a fractal network, and a
//! Vietoris–Rips filtration on its shortest-path metric.
//!
//! cargo run --release --example networks

use phkit::builders::{build_rips, build_wrcf, graph_to_metric, WeightMode};
use phkit::datasets::{generate_fractal, FractalParams, Weighting};
use phkit::reduction::{compute_barcode, Algorithm};

fn main() -> phkit::Result<()> {
    let params = FractalParams {
        b: 3,
        n: 6,
        k: 2,
        weighting: Weighting::Linear,
    };
    let g = generate_fractal(&params, 1)?;
    println!("{} nodes, {} edges, connected: {}", g.node_count(), g.edges().len(), g.is_connected());

    let wrcf = build_wrcf(&g, 2)?;
    let b = compute_barcode(&wrcf, Algorithm::Twist, true);
    println!("wrcf: {} simplices, {} H0 and {} H1 intervals", wrcf.len(), b.in_dim(0).count(), b.in_dim(1).count());
    let last = wrcf.values().iter().copied().fold(0.0, f64::max);
    println!("  weight ranks used: {last}");

    let metric = graph_to_metric(&g, WeightMode::Inverse)?;
    let rips = build_rips(&metric, 2, f64::INFINITY)?;
    let b = compute_barcode(&rips, Algorithm::Twist, true);
    let longest = b.in_dim(1).map(|i| i.persistence()).fold(0.0, f64::max);
    println!("rips on path lengths: {} simplices, longest H1 bar {longest:.3}", rips.len());
    Ok(())
}
