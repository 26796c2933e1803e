//! Bottleneck and Wasserstein distances between persistence diagrams.
//!
//! cargo run --release --example diagram_distances

use std::f64::consts::TAU;

use phkit::builders::{build_rips, MetricInput};
use phkit::datasets::SplitMix64;
use phkit::diagrams::{bottleneck, wasserstein, GroundMetric, PersistenceDiagram};
use phkit::reduction::{compute_barcode, Algorithm};

fn circle(rng: &mut SplitMix64, n: usize, noise: f64) -> Vec<[f64; 2]> {
    (0..n)
        .map(|_| {
            let t = TAU * rng.next_f64();
            [t.cos() + noise * (rng.next_f64() - 0.5), t.sin() + noise * (rng.next_f64() - 0.5)]
        })
        .collect()
}

fn h1(pts: &[[f64; 2]]) -> phkit::Result<PersistenceDiagram> {
    let k = build_rips(&MetricInput::from_points(pts)?, 2, f64::INFINITY)?;
    Ok(PersistenceDiagram::from_barcode(&compute_barcode(&k, Algorithm::Twist, true), 1))
}

fn main() -> phkit::Result<()> {
    // hand-made diagrams first
    let x = PersistenceDiagram::new(1, vec![(0.0, 4.0), (1.0, 2.0)])?;
    let y = PersistenceDiagram::new(1, vec![(0.5, 4.5)])?;
    println!("bottleneck {}", bottleneck(&x, &y));
    for p in [1.0, 2.0] {
        println!("W{p} {}", wasserstein(&x, &y, p, GroundMetric::LInf)?);
    }
    println!("W2 with L2 ground metric {}", wasserstein(&x, &y, 2.0, GroundMetric::Lq(2.0))?);

    let mut rng = SplitMix64::new(5);
    let clean = h1(&circle(&mut rng, 40, 0.0))?;
    for noise in [0.05, 0.2, 0.5] {
        let noisy = h1(&circle(&mut rng, 40, noise))?;
        println!(
            "noise {noise}: {} points, bottleneck {:.4}, W1 {:.4}",
            noisy.len(),
            bottleneck(&clean, &noisy),
            wasserstein(&clean, &noisy, 1.0, GroundMetric::LInf)?
        );
    }
    Ok(())
}
