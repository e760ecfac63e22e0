//! The `bubbledyn` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
//! `BUBBLEDYN_THREADS` caps the worker count (0 or unset = one per core).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;

use bubbledyn_core::golden::{verify, RATIO_TOLERANCE};
use bubbledyn_core::grid::summarize;
use bubbledyn_core::{
    classify, classify_grid, classify_points, parse_complex, trap_disk, write_csv, Complex64,
    MapParams, OrbitRun, Window, DEFAULT_CLASSIFY_BUDGET, DEFAULT_RENDER_BUDGET, TRAP_KAPPA,
};
use bubbledyn_render::{render_view, Plane, RenderJob, RenderStyle, Viewport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub const THREADS_ENV: &str = "BUBBLEDYN_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {total} checks failed")]
    Verify { failed: usize, total: usize },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<bubbledyn_core::Error> for CliError {
    fn from(e: bubbledyn_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_error(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{what}: {e}"))
}

#[derive(Debug, Parser)]
#[command(name = "bubbledyn", version, about = "Julia-set classification and rendering for f(z) = zⁿ + λ²/(zⁿ − λ)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the Julia set and print the evidence record as JSON.
    Classify(ClassifyArgs),
    /// Follow one orbit and print its trace and outcome as JSON.
    Orbit(OrbitArgs),
    /// Render the parameter plane or a dynamical plane to PNG or PPM.
    Render(RenderArgs),
    /// Classify a rectangle of the λ-plane (or a list of λ) and write CSV.
    Grid(GridArgs),
    /// Re-derive the reference examples and print a pass/fail table.
    VerifyPaper(VerifyArgs),
    /// Serve the HTTP API and tiles.
    Serve(ServeArgs),
}

fn lambda_arg(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn window_arg(s: &str) -> Result<Window, String> {
    Window::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// λ as `a+bi`, `a-bi`, `a` or `bi`.
    #[arg(long, allow_hyphen_values = true, value_parser = lambda_arg)]
    pub lambda: Complex64,
    #[arg(long, default_value_t = DEFAULT_CLASSIFY_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true, value_parser = lambda_arg)]
    pub lambda: Complex64,
    /// `v0`, `v1`, or a starting point `a+bi`.
    #[arg(long, default_value = "v1", allow_hyphen_values = true)]
    pub seed: String,
    /// Number of trace points to print.
    #[arg(long, default_value_t = 64)]
    pub max: usize,
    #[arg(long, default_value_t = DEFAULT_CLASSIFY_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Param,
    Julia,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Png,
    Ppm,
}

/// `W` or `WxH` pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub width: u32,
    pub height: Option<u32>,
}

fn resolution_arg(s: &str) -> Result<Resolution, String> {
    let bad = || format!("expected W or WxH, got {s:?}");
    let positive = |t: &str| t.trim().parse::<u32>().ok().filter(|&v| v > 0).ok_or_else(bad);
    match s.split_once(['x', 'X']) {
        Some((w, h)) => Ok(Resolution {
            width: positive(w)?,
            height: Some(positive(h)?),
        }),
        None => Ok(Resolution {
            width: positive(s)?,
            height: None,
        }),
    }
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, value_enum, default_value_t = PlaneArg::Param)]
    pub plane: PlaneArg,
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Required for `--plane julia`.
    #[arg(long, allow_hyphen_values = true, value_parser = lambda_arg)]
    pub lambda: Option<Complex64>,
    /// `x0,y0,x1,y1`; defaults to `[−2, 2]²`.
    #[arg(long, allow_hyphen_values = true, value_parser = window_arg)]
    pub window: Option<Window>,
    /// Width, or `WxH`. With width only the height follows the window's
    /// aspect ratio; with both, the window's horizontal extent is kept.
    #[arg(long, default_value = "512", value_parser = resolution_arg)]
    pub res: Resolution,
    #[arg(long, default_value_t = DEFAULT_RENDER_BUDGET)]
    pub budget: usize,
    /// Draw critical points (red) and critical values (blue).
    #[arg(long)]
    pub markers: bool,
    /// Output path; defaults to `{plane}_{n}_{re}_{im}.{png|ppm}`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Image format; inferred from a `.ppm` extension otherwise PNG.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true, value_parser = window_arg)]
    pub window: Option<Window>,
    /// Columns, or `COLSxROWS`.
    #[arg(long, value_parser = resolution_arg)]
    pub res: Option<Resolution>,
    /// Explicit λ values instead of a window (repeatable).
    #[arg(long, allow_hyphen_values = true, value_parser = lambda_arg, conflicts_with_all = ["window", "res"])]
    pub lambda: Vec<Complex64>,
    #[arg(long, default_value_t = DEFAULT_CLASSIFY_BUDGET)]
    pub budget: usize,
    /// CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_CLASSIFY_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = RATIO_TOLERANCE)]
    pub ratio_tol: f64,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8642)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: IpAddr,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let result = configure_threads(std::env::var(THREADS_ENV).ok().as_deref())
        .and_then(|()| run(cli.command, &mut stdout.lock()));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("bubbledyn: {e}");
            e.exit_code()
        }
    }
}

/// Sizes the global worker pool from the `BUBBLEDYN_THREADS` value.
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let threads = match value.map(str::trim) {
        None | Some("") => 0,
        Some(v) => v
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")))?,
    };
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Classify(a) => cmd_classify(&a, out),
        Command::Orbit(a) => cmd_orbit(&a, out),
        Command::Render(a) => cmd_render(&a),
        Command::Grid(a) => cmd_grid(&a, out),
        Command::VerifyPaper(a) => cmd_verify(&a, out),
        Command::Serve(a) => cmd_serve(&a),
    }
}

fn print_json<T: serde::Serialize>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| io_error("stdout", e))?;
    writeln!(out).map_err(|e| io_error("stdout", e))
}

fn cmd_classify(a: &ClassifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = MapParams::new(a.n, a.lambda)?;
    print_json(&classify(&params, a.budget)?, out)
}

fn cmd_orbit(a: &OrbitArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = MapParams::new(a.n, a.lambda)?;
    let seed = match a.seed.as_str() {
        "v0" => params.v0(),
        "v1" => params.v1(),
        s => parse_complex(s).map_err(|e| CliError::Usage(format!("--seed: {e}")))?,
    };
    let trap = if params.is_experimental() {
        None
    } else {
        trap_disk(&params, TRAP_KAPPA)
    };
    let r = OrbitRun::new(&params, a.budget)
        .trap(trap.as_ref())
        .trace(a.max)
        .run(seed.into());
    print_json(&r, out)
}

/// Base window of the tile pyramid.
fn default_window() -> Window {
    Window::new(-2.0, -2.0, 2.0, 2.0).expect("valid window")
}

pub fn viewport_for(window: &Window, res: Resolution) -> Result<Viewport, CliError> {
    let height = res.height.unwrap_or_else(|| {
        ((res.width as f64 * window.height() / window.width()).round() as u32).max(1)
    });
    Viewport::new(window.center(), window.width() / 2.0, res.width, height)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_render(a: &RenderArgs) -> Result<(), CliError> {
    let (plane, lambda) = match a.plane {
        PlaneArg::Param => {
            if a.n < 2 {
                return Err(bubbledyn_core::Error::InvalidDegree(a.n).into());
            }
            (Plane::Parameter, None)
        }
        PlaneArg::Julia => {
            let l = a
                .lambda
                .ok_or_else(|| CliError::Usage("--plane julia needs --lambda".into()))?;
            MapParams::new(a.n, l)?;
            (Plane::Dynamical, Some(l))
        }
    };
    let window = a.window.unwrap_or_else(default_window);
    let viewport = viewport_for(&window, a.res)?;
    let format = a.format.unwrap_or_else(|| match &a.out {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("ppm")) => Format::Ppm,
        _ => Format::Png,
    });
    let path = a.out.clone().unwrap_or_else(|| {
        let l = lambda.unwrap_or_default();
        let ext = if format == Format::Ppm { "ppm" } else { "png" };
        PathBuf::from(format!("{}_{}_{}_{}.{ext}", plane.token(), a.n, l.re, l.im))
    });
    // Open the output before the expensive part so a bad path fails fast.
    let file = File::create(&path).map_err(|e| io_error(&path.display().to_string(), e))?;
    let job = RenderJob {
        viewport,
        plane,
        n: a.n,
        lambda,
        budget: a.budget,
        markers: a.markers,
    };
    let frame = render_view(&job, &RenderStyle::default()).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut w = BufWriter::new(file);
    let written = match format {
        Format::Png => {
            let bytes = frame.encode_png().map_err(|e| io_error("png", e))?;
            w.write_all(&bytes).and_then(|()| w.flush())
        }
        Format::Ppm => frame.write_ppm(&mut w),
    };
    written.map_err(|e| io_error(&path.display().to_string(), e))?;
    eprintln!("wrote {} ({}x{})", path.display(), frame.width, frame.height);
    Ok(())
}

fn cmd_grid(a: &GridArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = if !a.lambda.is_empty() {
        classify_points(a.n, &a.lambda, a.budget)?
    } else {
        let window = a
            .window
            .ok_or_else(|| CliError::Usage("grid needs --window and --res, or --lambda".into()))?;
        let res = a
            .res
            .ok_or_else(|| CliError::Usage("grid needs --res".into()))?;
        classify_grid(a.n, &window, res.width as usize, res.height.unwrap_or(res.width) as usize, a.budget)?
    };
    match &a.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_error(&path.display().to_string(), e))?;
            write_csv(&rows, BufWriter::new(file)).map_err(|e| io_error(&path.display().to_string(), e))?;
        }
        None => write_csv(&rows, &mut *out).map_err(|e| io_error("stdout", e))?,
    }
    let summary: Vec<String> = summarize(&rows)
        .into_iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    eprintln!("{}", summary.join(" "));
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = verify(a.budget, a.ratio_tol);
    let w = |out: &mut dyn Write, line: String| writeln!(out, "{line}").map_err(|e| io_error("stdout", e));
    let width = rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
    let pad = |s: &str, n: usize| format!("{s}{}", " ".repeat(n.saturating_sub(s.chars().count())));
    w(out, format!("{}  {}  {}  result", pad("check", width), pad("expected", 22), pad("actual", 22)))?;
    for r in &rows {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        w(out, format!("{}  {}  {}  {verdict}", pad(&r.name, width), pad(&r.expected, 22), pad(&r.actual, 22)))?;
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    w(out, format!("{passed}/{} PASS", rows.len()))?;
    if passed == rows.len() {
        Ok(())
    } else {
        Err(CliError::Verify {
            failed: rows.len() - passed,
            total: rows.len(),
        })
    }
}

fn cmd_serve(a: &ServeArgs) -> Result<(), CliError> {
    let addr = SocketAddr::new(a.bind, a.port);
    let runtime = tokio::runtime::Runtime::new().map_err(|e| io_error("runtime", e))?;
    eprintln!("listening on http://{addr}");
    runtime
        .block_on(bubbledyn_server::serve(addr))
        .map_err(|e| io_error(&addr.to_string(), e))
}
