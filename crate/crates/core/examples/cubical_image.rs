//! Persistent homology of a grey-scale image through its cubical complex.
//!
//! cargo run --example cubical_image

use phkit::cubical::{build_cubical, image_barcode, ImageGrid};

fn main() -> phkit::Result<()> {
    // a dark ring around a bright centre, closed off by a 100-valued pixel
    let img = ImageGrid::from_rows(&[
        [115.0, 119.0, 119.0, 119.0, 119.0],
        [115.0, 94.0, 94.0, 94.0, 114.0],
        [115.0, 94.0, 139.0, 100.0, 114.0],
        [115.0, 94.0, 99.0, 99.0, 114.0],
        [115.0, 117.0, 117.0, 117.0, 117.0],
    ])?;
    let k = build_cubical(&img);
    println!("cells by dimension: {:?}", k.count_by_dim());
    for iv in image_barcode(&img, 2).intervals() {
        println!("H{} [{}, {})", iv.dim, iv.birth, iv.death);
    }

    // a 3-D volume of 1s with a bright centre voxel: a void that closes at 5
    let mut vol = vec![1.0; 27];
    vol[13] = 5.0;
    let vol = ImageGrid::new(vec![3, 3, 3], vol)?;
    println!("\nvolume cells by dimension: {:?}", build_cubical(&vol).count_by_dim());
    for iv in image_barcode(&vol, 2).intervals() {
        println!("H{} [{}, {})", iv.dim, iv.birth, iv.death);
    }
    Ok(())
}
