//! Čech and Vietoris–Rips filtrations on the same points, with the minimal enclosing
//! balls behind the Čech values.
//!
//! cargo run --example cech_vs_rips

use std::f64::consts::PI;

use phkit::builders::{build_cech, build_rips, min_enclosing_ball, MetricInput};
use phkit::reduction::{compute_barcode, Algorithm};

fn main() -> phkit::Result<()> {
    // regular hexagon with unit sides; tetrahedra are built so that 2-cycles can die
    let pts: Vec<[f64; 2]> = (0..6).map(|i| [(i as f64 * PI / 3.0).cos(), (i as f64 * PI / 3.0).sin()]).collect();
    for tri in [[0, 1, 2], [0, 2, 4]] {
        let refs: Vec<&[f64]> = tri.iter().map(|&i| pts[i].as_slice()).collect();
        let ball = min_enclosing_ball(&refs);
        println!("enclosing ball of {tri:?}: radius {:.6}", ball.radius);
    }

    let m = MetricInput::from_points(&pts)?;
    let cech = build_cech(&m, 3, f64::INFINITY)?;
    let rips = build_rips(&m, 3, f64::INFINITY)?;
    println!("\n{:<12} {:>10} {:>10}", "triangle", "cech", "rips");
    for (s, v) in cech.iter().filter(|(s, _)| s.len() == 3) {
        let r = rips.value(rips.position(s).unwrap());
        println!("{:<12} {v:>10.6} {r:>10.6}", format!("{s:?}"));
    }
    for (name, k) in [("cech", &cech), ("rips", &rips)] {
        let b = compute_barcode(k, Algorithm::Twist, true);
        println!("\n{name}:");
        for iv in b.intervals().iter().filter(|i| (1..=2).contains(&i.dim)) {
            println!("  H{} [{:.6}, {:.6})", iv.dim, iv.birth, iv.death);
        }
    }
    Ok(())
}
