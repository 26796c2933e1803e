//! A small benchmark suite described in TOML, printed as CSV. Cells too large to build
//! get their analytic size and `-` for the measurements.
//!
//! cargo run --release --example bench_suite

use phkit::bench::{parse_config, run_suite, to_csv};

const SUITE: &str = r#"
repeats = 2

[[cell]]
dataset = "klein"
n = 100
complex = "rips"
max_dim = 2
algorithms = ["standard", "twist", "dual"]

[[cell]]
dataset = "vicsek"
n = 150
frame = 50
complex = "witness"
landmarks = 40
max_dim = 2
algorithms = ["twist"]

[[cell]]
dataset = "fractal"
b = 4
levels = 7
k = 2
weighting = "linear"
complex = "wrcf"
max_dim = 2
algorithms = ["twist"]

[[cell]]
dataset = "uniform"
n = 50
d = 16
complex = "rips"
max_dim = 8
algorithms = ["twist"]
"#;

fn main() -> phkit::Result<()> {
    let config = parse_config(SUITE)?;
    let records = run_suite(&config, std::path::Path::new("."));
    print!("{}", to_csv(&records));
    for r in &records {
        if let Some(note) = &r.note {
            eprintln!("{} {}: {note}", r.dataset, r.algorithm);
        }
    }
    if let Some(r) = records.first() {
        eprintln!("memory measured by {}", r.mem_method.name());
    }
    Ok(())
}
