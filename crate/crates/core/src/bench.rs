//! Benchmark harness: build and reduce each configured cell, time it, and write a CSV
//!
//! ```text
//! dataset,complex,max_dim,size,algorithm,wall_s,cpu_s,peak_mem_bytes
//! ```
//!
//! Cells whose full-scale Vietoris–Rips size is known in closed form have the built size
//! checked against it; cells over the simplex cap, or failing, report `-` in the timing
//! columns instead of aborting the suite.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Deserialize;

use crate::builders::{MetricInput, WeightMode, DEFAULT_SIMPLEX_CAP};
use crate::complex::binomial;
use crate::datasets::{
    generate_fractal, generate_klein, generate_uniform, generate_vicsek, AngleInit, FractalParams, SampleMode,
    VicsekParams, Weighting,
};
use crate::error::{Error, Result};
use crate::io::format_g17;
use crate::pipeline::{build, load, BuildOptions, ComplexKind, Data, Format};
use crate::reduction::{extract_barcode, Algorithm};

pub const CSV_HEADER: &str = "dataset,complex,max_dim,size,algorithm,wall_s,cpu_s,peak_mem_bytes";

/// Suite configuration, read from TOML:
///
/// ```toml
/// repeats = 3
/// cap = 200000000
///
/// [[cell]]
/// dataset = "klein"        # klein | uniform | vicsek | fractal | file
/// n = 400
/// complex = "rips"
/// max_dim = 2
/// algorithms = ["twist", "dual"]
/// ```
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub repeats: Option<usize>,
    pub cap: Option<u64>,
    #[serde(default, rename = "cell")]
    pub cells: Vec<CellSpec>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    /// Label for the `dataset` column; defaults to a description of the source.
    pub name: Option<String>,
    pub dataset: String,
    pub n: Option<usize>,
    /// Ambient dimension for `uniform`.
    pub d: Option<usize>,
    /// `grid` or `random` for `klein`.
    pub mode: Option<String>,
    pub seed: Option<u64>,
    /// Fractal parameters.
    pub b: Option<u32>,
    pub levels: Option<u32>,
    pub k: Option<u32>,
    pub weighting: Option<String>,
    /// Vicsek frame to sample and noise.
    pub frame: Option<usize>,
    pub eta: Option<f64>,
    /// Input file for `dataset = "file"`, with its format.
    pub path: Option<PathBuf>,
    pub format: Option<String>,
    pub weight_mode: Option<String>,

    pub complex: String,
    pub max_dim: usize,
    pub max_scale: Option<f64>,
    pub landmarks: Option<usize>,
    pub nu: Option<usize>,
    #[serde(default)]
    pub algorithms: Vec<String>,
}

/// How `peak_mem_bytes` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemMethod {
    /// Resident high-water mark, reset before each repeat.
    VmHwmReset,
    /// Process-wide maximum resident set size; not reset between cells.
    MaxRss,
    Unavailable,
}

impl MemMethod {
    pub fn name(self) -> &'static str {
        match self {
            MemMethod::VmHwmReset => "vmhwm-reset",
            MemMethod::MaxRss => "ru_maxrss",
            MemMethod::Unavailable => "unavailable",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub dataset: String,
    pub complex: String,
    pub max_dim: usize,
    /// Simplex count, built or analytic; `None` if neither is known.
    pub size: Option<u64>,
    pub algorithm: String,
    pub wall_s: Option<f64>,
    pub cpu_s: Option<f64>,
    pub peak_mem_bytes: Option<u64>,
    pub mem_method: MemMethod,
    /// Why the timing columns are empty, if they are.
    pub note: Option<String>,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        format!(
            "{},{},{},{},{},{},{},{}",
            self.dataset,
            self.complex,
            self.max_dim,
            opt(self.size.map(|s| s.to_string())),
            self.algorithm,
            opt(self.wall_s.map(format_g17)),
            opt(self.cpu_s.map(format_g17)),
            opt(self.peak_mem_bytes.map(|m| m.to_string())),
        )
    }
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in records {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

pub fn parse_config(text: &str) -> Result<BenchConfig> {
    toml::from_str(text).map_err(|e| Error::BadParams(format!("bench config: {e}")))
}

/// Size of the full Vietoris–Rips complex on `n` points up to `max_dim`:
/// `sum_{k=1}^{max_dim+1} C(n, k)`.
pub fn full_rips_size(n: usize, max_dim: usize) -> Option<u64> {
    (1..=max_dim as u64 + 1).try_fold(0u64, |acc, k| acc.checked_add(binomial(n as u64, k)?))
}

/// Runs every cell; `base` resolves relative file paths.
pub fn run_suite(config: &BenchConfig, base: &Path) -> Vec<BenchRecord> {
    let repeats = config.repeats.unwrap_or(3).max(1);
    let cap = config.cap.unwrap_or(DEFAULT_SIMPLEX_CAP);
    let mut records = Vec::new();
    for cell in &config.cells {
        records.extend(run_cell(cell, repeats, cap, base));
    }
    records
}

fn dataset_label(cell: &CellSpec) -> String {
    if let Some(name) = &cell.name {
        return name.clone();
    }
    match cell.dataset.as_str() {
        "klein" => format!("klein({})", cell.n.unwrap_or(400)),
        "uniform" => format!("uniform({};{})", cell.n.unwrap_or(50), cell.d.unwrap_or(16)),
        "vicsek" => format!("vicsek({})", cell.n.unwrap_or(300)),
        "fractal" => format!(
            "fractal({};{};{})",
            cell.b.unwrap_or(5),
            cell.levels.unwrap_or(9),
            cell.k.unwrap_or(2)
        ),
        _ => cell
            .path
            .as_ref()
            .and_then(|p| p.file_name())
            .map_or_else(|| cell.dataset.clone(), |f| f.to_string_lossy().into_owned()),
    }
}

fn load_dataset(cell: &CellSpec, base: &Path) -> Result<Data> {
    let seed = cell.seed.unwrap_or(0);
    Ok(match cell.dataset.as_str() {
        "klein" => {
            let mode: SampleMode = cell.mode.as_deref().unwrap_or("grid").parse()?;
            Data::Metric(MetricInput::from_points(&generate_klein(cell.n.unwrap_or(400), mode, seed)?)?)
        }
        "uniform" => Data::Metric(MetricInput::from_points(&generate_uniform(
            cell.n.unwrap_or(50),
            cell.d.unwrap_or(16),
            seed,
        ))?),
        "vicsek" => {
            let params = VicsekParams {
                n: cell.n.unwrap_or(300),
                eta: cell.eta.unwrap_or(0.1),
                init: AngleInit::Uniform,
                ..Default::default()
            };
            let frame = cell.frame.unwrap_or(params.steps);
            let frames = generate_vicsek(&params, seed, &[frame])?;
            Data::Metric(MetricInput::from_points(&frames[0])?)
        }
        "fractal" => {
            let weighting: Weighting = cell.weighting.as_deref().unwrap_or("linear").parse()?;
            let params = FractalParams {
                b: cell.b.unwrap_or(5),
                n: cell.levels.unwrap_or(9),
                k: cell.k.unwrap_or(2),
                weighting,
            };
            Data::Graph(generate_fractal(&params, seed)?)
        }
        "file" => {
            let path = cell
                .path
                .as_ref()
                .ok_or_else(|| Error::BadParams("file dataset needs `path`".into()))?;
            let path = base.join(path);
            let format = match &cell.format {
                Some(f) => f.parse()?,
                None => Format::from_path(&path)
                    .ok_or_else(|| Error::BadParams(format!("cannot infer format of {}", path.display())))?,
            };
            load(&path, format)?
        }
        other => return Err(Error::BadParams(format!("unknown dataset `{other}`"))),
    })
}

fn run_cell(cell: &CellSpec, repeats: usize, cap: u64, base: &Path) -> Vec<BenchRecord> {
    let algorithms: Vec<String> = if cell.algorithms.is_empty() {
        vec!["twist".into()]
    } else {
        cell.algorithms.clone()
    };
    let template = BenchRecord {
        dataset: dataset_label(cell),
        complex: cell.complex.clone(),
        max_dim: cell.max_dim,
        size: None,
        algorithm: String::new(),
        wall_s: None,
        cpu_s: None,
        peak_mem_bytes: None,
        mem_method: MemMethod::Unavailable,
        note: None,
    };
    let failed = |alg: &str, size: Option<u64>, note: String| BenchRecord {
        algorithm: alg.to_string(),
        size,
        note: Some(note),
        ..template.clone()
    };

    let prepared = (|| -> Result<(ComplexKind, Data, BuildOptions)> {
        let kind: ComplexKind = cell.complex.parse()?;
        let data = load_dataset(cell, base)?;
        let opts = BuildOptions {
            max_dim: cell.max_dim,
            max_scale: cell.max_scale.unwrap_or(f64::INFINITY),
            landmarks: cell.landmarks,
            nu: cell.nu,
            seed: cell.seed.unwrap_or(0),
            weight_mode: match &cell.weight_mode {
                Some(m) => m.parse()?,
                None => WeightMode::Inverse,
            },
            cap,
        };
        Ok((kind, data, opts))
    })();
    let (kind, data, opts) = match prepared {
        Ok(p) => p,
        Err(e) => return algorithms.iter().map(|a| failed(a, None, e.to_string())).collect(),
    };

    // closed-form size of a full-scale Rips complex on a point set
    let analytic = match (&data, kind) {
        (Data::Metric(m), ComplexKind::Rips) if opts.max_scale >= m.max_distance() => full_rips_size(m.len(), opts.max_dim),
        _ => None,
    };
    if let Some(size) = analytic {
        if size > cap {
            let note = format!("analytic size {size} exceeds the cap of {cap}; build skipped");
            return algorithms.iter().map(|a| failed(a, Some(size), note.clone())).collect();
        }
    }

    let mut out = Vec::new();
    for alg_name in &algorithms {
        let algorithm: Algorithm = match alg_name.parse() {
            Ok(a) => a,
            Err(e) => {
                out.push(failed(alg_name, analytic, e.to_string()));
                continue;
            }
        };
        let mut wall = 0.0;
        let mut cpu = 0.0;
        let mut mem: Vec<u64> = Vec::new();
        let mut method = MemMethod::Unavailable;
        let mut size = None;
        let mut error = None;
        for _ in 0..repeats {
            method = reset_peak_memory();
            let cpu0 = cpu_seconds();
            let t0 = Instant::now();
            let result = build(kind, &data, &opts).map(|built| {
                let state = built.reduce(algorithm);
                let n = built.len() as u64;
                let bars = match &built {
                    crate::pipeline::Built::Simplicial(k) => extract_barcode(&state, k, true).len(),
                    crate::pipeline::Built::Cubical(k) => extract_barcode(&state, k, true).len(),
                };
                std::hint::black_box(bars);
                n
            });
            wall += t0.elapsed().as_secs_f64();
            cpu += cpu_seconds().map_or(0.0, |c| c - cpu0.unwrap_or(c));
            match result {
                Ok(n) => size = Some(n),
                Err(e) => {
                    error = Some(e.to_string());
                    break;
                }
            }
            if let Some(m) = peak_memory(method) {
                mem.push(m);
            }
        }
        if let Some(e) = error {
            out.push(failed(alg_name, analytic, e));
            continue;
        }
        if let (Some(a), Some(s)) = (analytic, size) {
            if a != s {
                out.push(failed(alg_name, size, format!("built size {s} differs from analytic size {a}")));
                continue;
            }
        }
        let r = repeats as f64;
        out.push(BenchRecord {
            algorithm: alg_name.clone(),
            size,
            wall_s: Some(wall / r),
            cpu_s: Some(cpu / r),
            peak_mem_bytes: (!mem.is_empty()).then(|| mem.iter().sum::<u64>() / mem.len() as u64),
            mem_method: method,
            ..template.clone()
        });
    }
    out
}

/// User plus system CPU time of this process.
pub fn cpu_seconds() -> Option<f64> {
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::zeroed();
    // SAFETY: getrusage only writes into the struct we pass.
    let rc = unsafe { libc::getrusage(libc::RUSAGE_SELF, usage.as_mut_ptr()) };
    if rc != 0 {
        return None;
    }
    // SAFETY: initialised by the successful call above.
    let usage = unsafe { usage.assume_init() };
    let secs = |t: libc::timeval| t.tv_sec as f64 + t.tv_usec as f64 * 1e-6;
    Some(secs(usage.ru_utime) + secs(usage.ru_stime))
}

/// Resets the kernel's resident high-water mark when the platform allows it.
fn reset_peak_memory() -> MemMethod {
    if fs::write("/proc/self/clear_refs", "5").is_ok() && read_vmhwm().is_some() {
        MemMethod::VmHwmReset
    } else if max_rss().is_some() {
        MemMethod::MaxRss
    } else {
        MemMethod::Unavailable
    }
}

fn peak_memory(method: MemMethod) -> Option<u64> {
    match method {
        MemMethod::VmHwmReset => read_vmhwm(),
        MemMethod::MaxRss => max_rss(),
        MemMethod::Unavailable => None,
    }
}

fn read_vmhwm() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn max_rss() -> Option<u64> {
    let mut usage = std::mem::MaybeUninit::<libc::rusage>::zeroed();
    // SAFETY: as in `cpu_seconds`.
    let rc = unsafe { libc::getrusage(libc::RUSAGE_SELF, usage.as_mut_ptr()) };
    if rc != 0 {
        return None;
    }
    // SAFETY: initialised by the successful call above.
    let kb = unsafe { usage.assume_init() }.ru_maxrss;
    (kb > 0).then(|| kb as u64 * 1024)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_sizes() {
        assert_eq!(full_rips_size(400, 2), Some(10_667_000));
        assert_eq!(full_rips_size(50, 8), Some(3_160_457_385));
        assert_eq!(full_rips_size(3, 5), Some(7));
    }

    #[test]
    fn empty_config_gives_header_only() {
        let cfg = parse_config("").unwrap();
        assert_eq!(to_csv(&run_suite(&cfg, Path::new("."))), format!("{CSV_HEADER}\n"));
        assert!(parse_config("bogus = 1").is_err());
    }

    #[test]
    fn over_cap_cell_is_skipped_with_analytic_size() {
        let cfg = parse_config(
            r#"
            repeats = 1
            [[cell]]
            dataset = "uniform"
            n = 50
            d = 16
            complex = "rips"
            max_dim = 8
            "#,
        )
        .unwrap();
        let recs = run_suite(&cfg, Path::new("."));
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].csv_row(), "uniform(50;16),rips,8,3160457385,twist,-,-,-");
    }

    #[test]
    fn small_cells_run_and_sizes_are_deterministic() {
        let text = r#"
            repeats = 3
            [[cell]]
            dataset = "klein"
            n = 25
            complex = "rips"
            max_dim = 2
            algorithms = ["standard", "twist", "dual"]
            [[cell]]
            dataset = "fractal"
            b = 2
            levels = 4
            complex = "wrcf"
            max_dim = 2
            [[cell]]
            dataset = "nowhere"
            complex = "rips"
            max_dim = 1
        "#;
        let cfg = parse_config(text).unwrap();
        let a = run_suite(&cfg, Path::new("."));
        let b = run_suite(&cfg, Path::new("."));
        assert_eq!(a.len(), 5);
        for r in &a[..3] {
            assert_eq!(r.size, Some(25 + 300 + 2300));
            assert!(r.wall_s.unwrap() >= 0.0 && r.cpu_s.unwrap() >= 0.0);
        }
        assert!(a[3].size.is_some() && a[3].wall_s.is_some());
        assert!(a[4].note.is_some() && a[4].wall_s.is_none());
        let sizes = |r: &[BenchRecord]| r.iter().map(|x| x.size).collect::<Vec<_>>();
        assert_eq!(sizes(&a), sizes(&b));
    }
}
