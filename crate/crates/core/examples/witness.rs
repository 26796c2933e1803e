//! Witness complexes on maxmin landmarks: the weak witness filtration and the
//! parametrized family W_nu.
//!
//! cargo run --release --example witness

use std::f64::consts::TAU;

use phkit::builders::{build_parametrized_witness, build_weak_witness, maxmin_landmarks, MetricInput};
use phkit::datasets::SplitMix64;
use phkit::reduction::{compute_barcode, Algorithm};

fn main() -> phkit::Result<()> {
    let mut rng = SplitMix64::new(7);
    // two loops sharing a point
    let pts: Vec<[f64; 2]> = (0..400)
        .map(|i| {
            let t = TAU * rng.next_f64();
            let cx = if i % 2 == 0 { -1.0 } else { 1.0 };
            [cx + t.cos(), t.sin()]
        })
        .collect();
    let m = MetricInput::from_points(&pts)?;
    let landmarks = maxmin_landmarks(&m, 30, 1)?;
    println!("landmarks: {:?}", landmarks.indices());

    let report = |name: &str, k: &phkit::FilteredComplex| {
        let b = compute_barcode(k, Algorithm::Twist, true);
        let mut p: Vec<f64> = b.in_dim(1).map(|i| i.persistence()).collect();
        p.sort_by(|a, b| b.total_cmp(a));
        p.truncate(4);
        println!("{name:>6}: {} simplices, longest H1 bars {p:.3?}", k.len());
    };
    report("weak", &build_weak_witness(&m, &landmarks, 2, f64::INFINITY)?);
    for nu in 0..=2 {
        report(&format!("W_{nu}"), &build_parametrized_witness(&m, &landmarks, nu, 2, f64::INFINITY)?);
    }
    Ok(())
}
