//! The `ph` command line.
//!
//! Exit status is 0 on success, 1 when the input data is rejected and 2 on usage errors.
//! Setting `NO_COLOR` disables coloured help and error output.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use crate::bench::{parse_config, run_suite, to_csv};
use crate::builders::WeightMode;
use crate::datasets::{
    generate_fractal, generate_klein, generate_uniform, generate_vicsek, AngleInit, FractalParams, SampleMode,
    VicsekParams, Weighting,
};
use crate::diagrams::{bottleneck_with, emit_svg, wasserstein, Figure, GroundMetric, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::io;
use crate::pipeline::{build, load, BuildOptions, Built, ComplexKind, Data, Format};
use crate::reduction::{betti_numbers, Algorithm, Barcode};

#[derive(Debug, Parser)]
#[command(name = "ph", version, about = "Persistent homology: build filtrations, reduce them, compare barcodes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic data set (point cloud or edge list)
    Generate(GenerateArgs),
    /// Build a filtered complex from data
    Build(BuildArgs),
    /// Reduce a boundary matrix and print the pairing (`i j`, essentials as `k inf`)
    Reduce(ReduceArgs),
    /// Build if needed, reduce, and print the barcode
    Barcode(BarcodeArgs),
    /// Distance between two barcode/diagram files
    Distance(DistanceArgs),
    /// Betti numbers of the final complex
    Betti(BettiArgs),
    /// Draw a barcode or persistence diagram as SVG
    Plot(PlotArgs),
    /// Run a benchmark suite and write CSV
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Input file
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Output file (standard output if omitted)
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Input format: complex, points, matrix, edges or image (guessed from the extension)
    #[arg(long, value_parser = clap::value_parser!(Format))]
    format: Option<Format>,
    /// Largest simplex dimension to build (default 1); for complex and image inputs, the
    /// largest barcode dimension to report
    #[arg(long)]
    max_dim: Option<usize>,
    /// Largest filtration value to include (default: unbounded)
    #[arg(long)]
    max_scale: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep zero-length intervals
    #[arg(long)]
    keep_zero: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DatasetKind {
    Klein,
    Uniform,
    Vicsek,
    Fractal,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    dataset: DatasetKind,
    #[command(flatten)]
    common: Common,
    /// Number of points (klein, uniform, vicsek) or doubling levels (fractal: 2^n nodes)
    #[arg(long, short)]
    n: Option<usize>,
    /// Ambient dimension (uniform)
    #[arg(long, short)]
    d: Option<usize>,
    /// Sampling mode (klein)
    #[arg(long, default_value = "grid", value_parser = clap::value_parser!(SampleMode))]
    mode: SampleMode,
    /// Base level b (fractal)
    #[arg(long, default_value_t = 5)]
    b: u32,
    /// Density factor k (fractal)
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Edge weighting (fractal)
    #[arg(long, default_value = "linear", value_parser = clap::value_parser!(Weighting))]
    weighting: Weighting,
    /// Noise width (vicsek)
    #[arg(long, default_value_t = 0.1)]
    eta: f64,
    /// Step count T (vicsek)
    #[arg(long, default_value_t = 600)]
    steps: usize,
    /// Step to output (vicsek; default T)
    #[arg(long)]
    frame: Option<usize>,
    /// Box side (vicsek)
    #[arg(long, default_value_t = 5.0)]
    l: f64,
    /// Speed (vicsek)
    #[arg(long, default_value_t = 0.03)]
    v0: f64,
    /// Interaction radius (vicsek)
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Common initial heading instead of uniform random headings (vicsek)
    #[arg(long)]
    theta0: Option<f64>,
}

#[derive(Debug, Args)]
struct ConstructionArgs {
    /// Landmark count for witness complexes (maxmin selection; default all points)
    #[arg(long)]
    landmarks: Option<usize>,
    /// Parametrized witness complex W_nu (weak witness complex if omitted)
    #[arg(long)]
    nu: Option<usize>,
    /// Edge weight to length conversion when a graph feeds rips/cech/witness
    #[arg(long, default_value = "inverse", value_parser = clap::value_parser!(WeightMode))]
    weight_mode: WeightMode,
    /// Simplex-count cap
    #[arg(long, default_value_t = crate::builders::DEFAULT_SIMPLEX_CAP)]
    cap: u64,
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[arg(value_parser = clap::value_parser!(ComplexKind))]
    complex: ComplexKind,
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    construction: ConstructionArgs,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(value_parser = clap::value_parser!(Algorithm))]
    algorithm: Algorithm,
    #[command(flatten)]
    common: Common,
    /// Build this complex from the input data first
    #[arg(long, value_parser = clap::value_parser!(ComplexKind))]
    complex: Option<ComplexKind>,
    #[command(flatten)]
    construction: ConstructionArgs,
}

#[derive(Debug, Args)]
struct BarcodeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "twist", value_parser = clap::value_parser!(Algorithm))]
    algorithm: Algorithm,
    /// Build this complex from the input data first
    #[arg(long, value_parser = clap::value_parser!(ComplexKind))]
    complex: Option<ComplexKind>,
    #[command(flatten)]
    construction: ConstructionArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DistanceKind {
    Bottleneck,
    Wasserstein,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    metric: DistanceKind,
    a: PathBuf,
    b: PathBuf,
    /// Compare only this dimension (default: all dimensions, kept apart)
    #[arg(long)]
    dim: Option<usize>,
    /// Wasserstein exponent
    #[arg(long, short, default_value_t = 1.0)]
    p: f64,
    /// Ground metric: linf or lq (e.g. l2)
    #[arg(long, default_value = "linf", value_parser = clap::value_parser!(GroundMetric))]
    ground: GroundMetric,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BettiArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_parser = clap::value_parser!(ComplexKind))]
    complex: Option<ComplexKind>,
    #[command(flatten)]
    construction: ConstructionArgs,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Barcode file to draw
    #[arg(long, short)]
    input: PathBuf,
    /// SVG file to write
    #[arg(long, short)]
    output: PathBuf,
    /// Draw the persistence diagram of this dimension instead of the barcode
    #[arg(long)]
    diagram: Option<usize>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// TOML suite description
    #[arg(long, short)]
    config: PathBuf,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Runs the command line on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let color = if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let matches = Cli::command().color(color).try_get_matches_from(args);
    let cli = match matches.and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = if color == ColorChoice::Never {
                e.to_string()
            } else {
                e.render().ansi().to_string()
            };
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match command {
        Command::Generate(a) => generate(a, stdout),
        Command::Build(a) => {
            let data = read_input(&a.common, None)?;
            let built = build(a.complex, &data, &options(&a.common, &a.construction))?;
            let text = match &built {
                Built::Simplicial(k) => io::write_complex(k),
                Built::Cubical(k) => write_cubical(k),
            };
            emit(a.common.output.as_deref(), &text, stdout)
        }
        Command::Reduce(a) => {
            let built = obtain(&a.common, a.complex, &a.construction)?;
            let state = built.reduce(a.algorithm);
            let mut text = String::new();
            for &(i, j) in state.pairs() {
                text.push_str(&format!("{i} {j}\n"));
            }
            for &k in state.essentials() {
                text.push_str(&format!("{k} inf\n"));
            }
            emit(a.common.output.as_deref(), &text, stdout)
        }
        Command::Barcode(a) => {
            let built = obtain(&a.common, a.complex, &a.construction)?;
            let mut barcode = built.barcode(a.algorithm, !a.common.keep_zero);
            if let (None, Some(d)) = (a.complex, a.common.max_dim) {
                barcode = barcode.truncated(d);
            }
            emit(a.common.output.as_deref(), &io::write_barcode(&barcode), stdout)
        }
        Command::Distance(a) => {
            let x = io::parse_barcode(&io::read_to_string(&a.a)?)?;
            let y = io::parse_barcode(&io::read_to_string(&a.b)?)?;
            let d = barcode_distance(&x, &y, a.metric, a.p, a.ground, a.dim)?;
            emit(a.output.as_deref(), &format!("{}\n", io::format_g17(d)), stdout)
        }
        Command::Betti(a) => {
            let built = obtain(&a.common, a.complex, &a.construction)?;
            let mut betti = match &built {
                Built::Simplicial(k) => betti_numbers(k),
                Built::Cubical(_) => {
                    let b = built.barcode(Algorithm::Twist, true);
                    let top = b.max_dim().unwrap_or(0);
                    (0..=top).map(|d| b.essential_count(d)).collect()
                }
            };
            while betti.len() > 1 && betti.last() == Some(&0) {
                betti.pop();
            }
            let line: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
            emit(a.common.output.as_deref(), &format!("{}\n", line.join(" ")), stdout)
        }
        Command::Plot(a) => {
            let barcode = io::parse_barcode(&io::read_to_string(&a.input)?)?;
            match a.diagram {
                Some(dim) => emit_svg(
                    Figure::Diagram(&PersistenceDiagram::from_barcode(&barcode, dim)),
                    &a.output,
                ),
                None => emit_svg(Figure::Barcode(&barcode), &a.output),
            }
        }
        Command::Bench(a) => {
            let config = parse_config(&io::read_to_string(&a.config)?)?;
            let base = a.config.parent().unwrap_or(Path::new("."));
            let records = run_suite(&config, base);
            for r in &records {
                let _ = writeln!(
                    stderr,
                    "{} {} {}: memory via {}{}",
                    r.dataset,
                    r.complex,
                    r.algorithm,
                    r.mem_method.name(),
                    r.note.as_ref().map(|n| format!("; {n}")).unwrap_or_default()
                );
            }
            emit(a.output.as_deref(), &to_csv(&records), stdout)
        }
    }
}

fn options(common: &Common, c: &ConstructionArgs) -> BuildOptions {
    BuildOptions {
        max_dim: common.max_dim.unwrap_or(1),
        max_scale: common.max_scale.unwrap_or(f64::INFINITY),
        landmarks: c.landmarks,
        nu: c.nu,
        seed: common.seed,
        weight_mode: c.weight_mode,
        cap: c.cap,
    }
}

fn read_input(common: &Common, default: Option<Format>) -> Result<Data> {
    let path = common
        .input
        .as_deref()
        .ok_or_else(|| Error::BadParams("--input is required".into()))?;
    let format = common
        .format
        .or_else(|| Format::from_path(path))
        .or(default)
        .ok_or_else(|| Error::BadParams(format!("cannot infer the format of {}; pass --format", path.display())))?;
    load(path, format)
}

/// The filtration to reduce: a complex file as is, or data built into `kind`.
fn obtain(common: &Common, kind: Option<ComplexKind>, c: &ConstructionArgs) -> Result<Built> {
    match kind {
        None => match read_input(common, Some(Format::Complex))? {
            Data::Complex(k) => Ok(Built::Simplicial(k)),
            Data::Image(img) => Ok(build(ComplexKind::Cubical, &Data::Image(img), &options(common, c))?),
            _ => Err(Error::BadParams("data input needs --complex to say what to build".into())),
        },
        Some(kind) => build(kind, &read_input(common, None)?, &options(common, c)),
    }
}

fn generate(a: GenerateArgs, stdout: &mut dyn Write) -> Result<()> {
    let seed = a.common.seed;
    let text = match a.dataset {
        DatasetKind::Klein => io::write_points(&generate_klein(a.n.unwrap_or(400), a.mode, seed)?),
        DatasetKind::Uniform => io::write_points(&generate_uniform(a.n.unwrap_or(50), a.d.unwrap_or(16), seed)),
        DatasetKind::Vicsek => {
            let params = VicsekParams {
                l: a.l,
                v0: a.v0,
                n: a.n.unwrap_or(300),
                eta: a.eta,
                steps: a.steps,
                r: a.radius,
                init: a.theta0.map_or(AngleInit::Uniform, AngleInit::Constant),
            };
            let frame = a.frame.unwrap_or(a.steps);
            io::write_points(&generate_vicsek(&params, seed, &[frame])?[0])
        }
        DatasetKind::Fractal => {
            let params = FractalParams {
                b: a.b,
                n: a.n.unwrap_or(9) as u32,
                k: a.k,
                weighting: a.weighting,
            };
            io::write_edge_list(&generate_fractal(&params, seed)?)
        }
    };
    emit(a.common.output.as_deref(), &text, stdout)
}

fn write_cubical(k: &crate::cubical::CubicalComplex) -> String {
    let mut out = String::from("# cubical cells: dim value anchor... extent-mask\n");
    for i in 0..k.len() {
        let c = k.cell(i);
        let anchor: Vec<String> = c.anchor.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "{} {} {} {}\n",
            c.dim(),
            io::format_g17(c.value),
            anchor.join(" "),
            c.extent
        ));
    }
    out
}

/// Distance between barcodes, dimension by dimension: the maximum for the bottleneck
/// distance and the `p`-th root of the summed `p`-th powers for Wasserstein.
fn barcode_distance(
    x: &Barcode,
    y: &Barcode,
    kind: DistanceKind,
    p: f64,
    ground: GroundMetric,
    dim: Option<usize>,
) -> Result<f64> {
    if matches!(kind, DistanceKind::Wasserstein) && (p.is_nan() || p < 1.0) {
        return Err(Error::BadP(p));
    }
    let dims: Vec<usize> = match dim {
        Some(d) => vec![d],
        None => (0..=x.max_dim().max(y.max_dim()).unwrap_or(0)).collect(),
    };
    let mut acc = 0.0f64;
    for d in dims {
        let (a, b) = (PersistenceDiagram::from_barcode(x, d), PersistenceDiagram::from_barcode(y, d));
        match kind {
            DistanceKind::Bottleneck => acc = acc.max(bottleneck_with(&a, &b, ground)),
            DistanceKind::Wasserstein => acc += wasserstein(&a, &b, p, ground)?.powf(p),
        }
    }
    Ok(match kind {
        DistanceKind::Bottleneck => acc,
        DistanceKind::Wasserstein => acc.powf(1.0 / p),
    })
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}
