//! Vietoris–Rips persistence of the Klein bottle sample: 400 grid points give the full
//! 2-skeleton of 10,667,000 simplices. Pass a smaller square count for a quick run.
//!
//! cargo run --release --example klein_bottle [-- 400 twist]

use std::time::Instant;

use phkit::builders::{build_rips, MetricInput};
use phkit::datasets::{generate_klein, SampleMode};
use phkit::reduction::{compute_barcode, Algorithm};

fn main() -> phkit::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(400), |s| s.parse()).expect("point count");
    let alg: Algorithm = args.next().as_deref().unwrap_or("twist").parse()?;

    let t = Instant::now();
    let pts = generate_klein(n, SampleMode::Grid, 0)?;
    let k = build_rips(&MetricInput::from_points(&pts)?, 2, f64::INFINITY)?;
    println!("{} simplices built in {:.1?}", k.len(), t.elapsed());
    let b = compute_barcode(&k, alg, true);
    println!("{alg} reduction done at {:.1?}", t.elapsed());

    let mut h1: Vec<f64> = b.in_dim(1).map(|i| i.persistence()).collect();
    h1.sort_by(|a, b| b.total_cmp(a));
    println!("{} H1 intervals; longest {:.4?}", h1.len(), &h1[..h1.len().min(6)]);
    println!("essential H0 classes: {}", b.essential_count(0));
    Ok(())
}
