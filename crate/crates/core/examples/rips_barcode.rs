//! Vietoris–Rips barcode of a noisy circle, written as text and as SVG.
//!
//! cargo run --release --example rips_barcode [-- out.svg]

use std::f64::consts::TAU;

use phkit::builders::{build_rips, MetricInput};
use phkit::datasets::SplitMix64;
use phkit::diagrams::{emit_svg, Figure};
use phkit::io::write_barcode;
use phkit::reduction::{compute_barcode, Algorithm, Barcode, Interval};

fn main() -> phkit::Result<()> {
    let mut rng = SplitMix64::new(42);
    let pts: Vec<[f64; 2]> = (0..60)
        .map(|_| {
            let t = TAU * rng.next_f64();
            let r = 1.0 + 0.1 * (rng.next_f64() - 0.5);
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    let metric = MetricInput::from_points(&pts)?;
    let k = build_rips(&metric, 2, 2.0)?;
    println!("{} simplices, by dimension {:?}", k.len(), k.count_by_dim());

    let barcode = compute_barcode(&k, Algorithm::Twist, true);
    let longest = barcode.in_dim(1).map(|i| i.persistence()).fold(0.0, f64::max);
    println!("longest H1 bar: {longest:.3}");
    let loops: Vec<Interval> = barcode.in_dim(1).filter(|i| i.persistence() > 0.05).copied().collect();
    print!("{}", write_barcode(&Barcode::new(loops)?));

    if let Some(path) = std::env::args().nth(1) {
        emit_svg(Figure::Barcode(&barcode), &path)?;
        println!("wrote {path}");
    }
    Ok(())
}
