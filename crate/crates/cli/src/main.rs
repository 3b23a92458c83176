//! `slopepcp`: generate datasets, render slope-adjusted parallel
//! coordinates, sweep adjustment strengths, compute metrics, and serve the
//! HTTP API.
//!
//! Exit codes: 0 success, 2 usage or invalid configuration, 3 bad data,
//! 4 I/O failure.

use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slopepcp::data::{gen_uniform_noise, load_csv, preset, Dataset, DEFAULT_SEED};
use slopepcp::pipeline::{metrics_document, render_document, AxisView};
use slopepcp::render::{ImageFormat, PlotConfig, Rgb, RECOMMENDED_P};
use slopepcp::Error;
use slopepcp_service::{ServiceOptions, DEFAULT_MAX_UPLOAD};

const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "slopepcp", version, about = "Parallel coordinates with slope-dependent line widths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic dataset as CSV
    Generate(GenerateArgs),
    /// Render a CSV dataset to SVG, PNG or PGM
    Render(RenderArgs),
    /// Render one image per adjustment strength
    Sweep(SweepArgs),
    /// Compute ink and distortion metrics
    Metrics(MetricsArgs),
    /// Start the HTTP service
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Built-in preset (fig1, fig3-noise-100, fig3-noise-200, fig3-noise-400, fig4-synthetic)
    #[arg(long, conflicts_with = "noise", required_unless_present = "noise")]
    preset: Option<String>,
    /// Uniform noise as RECORDS,DIMENSIONS
    #[arg(long, value_name = "N,D", value_parser = parse_noise)]
    noise: Option<(usize, usize)>,
    /// Random seed; defaults to the preset's seed, or 20200825 for noise
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path, or - for stdout
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Default line height in pixels
    #[arg(long = "h", value_name = "H", default_value_t = 2.0, allow_negative_numbers = true)]
    line_height: f64,
    /// Image width in pixels
    #[arg(long, default_value_t = 960)]
    width: u32,
    /// Image height in pixels
    #[arg(long, default_value_t = 480)]
    height: u32,
    /// Margin around the plot in pixels
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
    margin: f64,
    /// Stroke colour as #rrggbb
    #[arg(long, default_value = "#000000")]
    color: Rgb,
    /// Stroke opacity in [0, 1]
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    opacity: f64,
    /// Lower bound on the adjusted width in pixels (0 disables)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    min_width: f64,
    /// Omit axes and labels
    #[arg(long)]
    no_axes: bool,
    /// Axis order as comma-separated source indices, e.g. 2,0,1
    #[arg(long, value_delimiter = ',')]
    axis_order: Vec<usize>,
    /// Source axis indices to flip, comma-separated
    #[arg(long, value_delimiter = ',')]
    flip: Vec<usize>,
}

impl PlotArgs {
    fn config(&self, p: f64) -> PlotConfig {
        PlotConfig {
            width_px: self.width,
            height_px: self.height,
            margin_px: self.margin,
            h: self.line_height,
            p,
            color: self.color,
            opacity: self.opacity,
            draw_axes: !self.no_axes,
            min_width: self.min_width,
        }
    }

    fn view(&self) -> AxisView {
        AxisView { axis_order: self.axis_order.clone(), flips: self.flip.clone() }
    }
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Adjustment strength P (0 classical, 1 equal area, 2 over-adjusted)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    p: f64,
    /// Input CSV
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[command(flatten)]
    plot: PlotArgs,
    /// Output format; inferred from the --out extension when omitted
    #[arg(long)]
    format: Option<Format>,
    /// Output file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Input CSV
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Adjustment strengths, comma-separated
    #[arg(
        long = "p",
        value_name = "P,...",
        value_delimiter = ',',
        default_value = "0,1,2",
        allow_negative_numbers = true
    )]
    strengths: Vec<f64>,
    #[command(flatten)]
    plot: PlotArgs,
    /// Output format
    #[arg(long, default_value = "png")]
    format: Format,
    /// Directory for the images, created if missing
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    /// Adjustment strength P (0 classical, 1 equal area, 2 over-adjusted)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    p: f64,
    /// Input CSV
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[command(flatten)]
    plot: PlotArgs,
    /// Report format; json unless --out ends in .txt or .kv
    #[arg(long)]
    report_format: Option<ReportFormat>,
    /// Output file, or - for stdout
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ServeArgs {
    /// Port to listen on (0 picks a free port)
    #[arg(long, default_value_t = 8080)]
    port: u16,
    /// Address to bind
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    /// Directory for spooled uploads
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Directory of static files served under /
    #[arg(long)]
    static_dir: Option<PathBuf>,
    /// Maximum upload size in bytes
    #[arg(long, default_value_t = DEFAULT_MAX_UPLOAD)]
    max_upload_bytes: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Png,
    Pgm,
}

impl From<Format> for ImageFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Svg => ImageFormat::Svg,
            Format::Png => ImageFormat::Png,
            Format::Pgm => ImageFormat::Pgm,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Kv,
}

fn parse_noise(s: &str) -> Result<(usize, usize), String> {
    let (n, d) = s.split_once(',').ok_or("expected N,D")?;
    let n = n.trim().parse().map_err(|_| format!("bad record count {n:?}"))?;
    let d = d.trim().parse().map_err(|_| format!("bad dimension count {d:?}"))?;
    Ok((n, d))
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io { .. } | Error::Encode(_) => EXIT_IO,
            Error::InvalidConfig(_)
            | Error::InvalidGeometry(_)
            | Error::InvalidPermutation(_)
            | Error::AxisOutOfRange { .. }
            | Error::Region(_) => EXIT_USAGE,
            Error::Parse { .. }
            | Error::Structure(_)
            | Error::Dimensionality(_)
            | Error::Preset(_)
            | Error::MissingLabels => EXIT_DATA,
        };
        Self { code, message: e.to_string() }
    }
}

fn read_dataset(path: &Path) -> Result<Dataset, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    load_csv(&bytes).map_err(|e| Failure { code: EXIT_DATA, message: format!("{}: {e}", path.display()) })
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    if path == Path::new("-") {
        use std::io::Write;
        std::io::stdout().write_all(bytes).map_err(|e| Error::io("<stdout>", e))?;
        return Ok(());
    }
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e).into())
}

fn check_p(p: f64) -> Result<(), Failure> {
    if !p.is_finite() {
        return Err(Failure::usage(format!("P must be a finite number, got {p}")));
    }
    if !RECOMMENDED_P.contains(&p) {
        eprintln!(
            "warning: P = {p} is outside the recommended range [{}, {}]; rendering anyway",
            RECOMMENDED_P.start(),
            RECOMMENDED_P.end()
        );
    }
    Ok(())
}

fn format_for(explicit: Option<Format>, out: &Path) -> Result<ImageFormat, Failure> {
    if let Some(f) = explicit {
        return Ok(f.into());
    }
    out.extension()
        .and_then(|e| e.to_str())
        .and_then(|e| e.parse().ok())
        .ok_or_else(|| Failure::usage(format!("cannot infer format from {}; pass --format", out.display())))
}

fn generate(args: GenerateArgs) -> Result<(), Failure> {
    let data = match (&args.preset, args.noise) {
        (Some(name), _) => {
            let p = preset(name)?;
            p.generate_with_seed(args.seed.unwrap_or(p.seed))?
        }
        (None, Some((n, d))) => gen_uniform_noise(n, d, args.seed.unwrap_or(DEFAULT_SEED))?,
        (None, None) => return Err(Failure::usage("pass --preset or --noise")),
    };
    write_output(&args.out, data.to_csv().as_bytes())
}

fn render(args: RenderArgs) -> Result<(), Failure> {
    check_p(args.p)?;
    let format = format_for(args.format, &args.out)?;
    let data = read_dataset(&args.input)?;
    let bytes = render_document(&data, &args.plot.config(args.p), &args.plot.view(), format)?;
    write_output(&args.out, &bytes)
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    if args.strengths.is_empty() {
        return Err(Failure::usage("--p needs at least one value"));
    }
    for &p in &args.strengths {
        check_p(p)?;
    }
    let data = read_dataset(&args.input)?;
    std::fs::create_dir_all(&args.out_dir).map_err(|e| Error::io(&args.out_dir, e))?;
    let format: ImageFormat = args.format.into();
    for &p in &args.strengths {
        let bytes = render_document(&data, &args.plot.config(p), &args.plot.view(), format)?;
        let path = args.out_dir.join(format!("sweep-p{p}.{}", format.extension()));
        write_output(&path, &bytes)?;
        println!("{}", path.display());
    }
    Ok(())
}

fn metrics(args: MetricsArgs) -> Result<(), Failure> {
    check_p(args.p)?;
    let data = read_dataset(&args.input)?;
    let report = metrics_document(&data, &args.plot.config(args.p), &args.plot.view())?;
    let kv = match args.report_format {
        Some(f) => matches!(f, ReportFormat::Kv),
        None => matches!(args.out.extension().and_then(|e| e.to_str()), Some("txt" | "kv")),
    };
    let text = if kv { report.to_key_value() } else { report.to_json() };
    write_output(&args.out, text.as_bytes())
}

fn serve(args: ServeArgs) -> Result<(), Failure> {
    let options = ServiceOptions {
        data_dir: args.data_dir,
        max_upload_bytes: args.max_upload_bytes,
        static_dir: args.static_dir,
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Error::io("<runtime>", e))?;
    runtime.block_on(async move {
        let app = slopepcp_service::router(&options)?;
        let addr = SocketAddr::new(args.host, args.port);
        let listener = tokio::net::TcpListener::bind(addr).await.map_err(|e| Error::io(addr.to_string(), e))?;
        let local = listener.local_addr().map_err(|e| Error::io(addr.to_string(), e))?;
        eprintln!("listening on http://{local}");
        slopepcp_service::serve_on(listener, app).await.map_err(|e| Error::io(local.to_string(), e))?;
        Ok(())
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Render(a) => render(a),
        Command::Sweep(a) => sweep(a),
        Command::Metrics(a) => metrics(a),
        Command::Serve(a) => serve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
