//! A hand-built filtered complex: boundary matrix, the three reductions, and the barcode.
//!
//! cargo run --example filtered_complex

use phkit::complex::{boundary_matrix, make_complex};
use phkit::reduction::{extract_barcode, Algorithm};

fn main() -> phkit::Result<()> {
    // a triangle whose vertices arrive at different times
    let k = make_complex(vec![
        (vec![0], 1.0),
        (vec![1], 2.0),
        (vec![2], 2.0),
        (vec![0, 1], 2.0),
        (vec![0, 2], 3.0),
        (vec![1, 2], 3.0),
        (vec![0, 1, 2], 4.0),
    ])?;
    for (i, (s, v)) in k.iter().enumerate() {
        println!("sigma_{} = {s:?} at {v}", i + 1);
    }

    let b = boundary_matrix(&k);
    println!("\nboundary matrix:");
    for row in b.to_dense() {
        let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  {}", row.join(" "));
    }

    for alg in [Algorithm::Standard, Algorithm::Twist, Algorithm::Dual] {
        let state = alg.reduce(&b, &k.dims());
        println!("\n{alg}: pairs {:?}, essential {:?}", state.pairs(), state.essentials());
        for iv in extract_barcode(&state, &k, true).intervals() {
            println!("  H{} [{}, {})", iv.dim, iv.birth, iv.death);
        }
    }
    Ok(())
}
