//! The synthetic generators: Klein bottle samples, uniform clouds, Vicsek flocks and
//! fractal networks. Files go to the directory given as the first argument.
//!
//! cargo run --example datasets -- /tmp/phdata

use std::fs;
use std::path::PathBuf;

use phkit::datasets::{
    generate_fractal, generate_klein, generate_uniform, generate_vicsek, FractalParams, SampleMode, VicsekParams,
    Weighting,
};
use phkit::io::{write_edge_list, write_points};

fn main() -> phkit::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "phdata".into()));
    fs::create_dir_all(&dir)?;

    let klein = generate_klein(400, SampleMode::Grid, 0)?;
    fs::write(dir.join("klein400.pts"), write_points(&klein))?;
    let random = generate_klein(400, SampleMode::Random, 3)?;
    fs::write(dir.join("klein400-random.pts"), write_points(&random))?;

    let cube = generate_uniform(50, 16, 1);
    fs::write(dir.join("uniform50x16.pts"), write_points(&cube))?;

    let params = VicsekParams::default();
    let frames = generate_vicsek(&params, 11, &[0, 100, 600])?;
    for (t, f) in [0, 100, 600].iter().zip(&frames) {
        fs::write(dir.join(format!("vicsek-t{t}.pts")), write_points(f))?;
    }

    for weighting in [Weighting::Unit, Weighting::Random, Weighting::Linear] {
        let p = FractalParams { b: 5, n: 9, k: 2, weighting };
        let g = generate_fractal(&p, 2)?;
        fs::write(dir.join(format!("fractal-{weighting}.edges")), write_edge_list(&g))?;
        println!("fractal {weighting}: {} nodes, {} edges", g.node_count(), g.edges().len());
    }
    println!("wrote data sets to {}", dir.display());
    Ok(())
}
