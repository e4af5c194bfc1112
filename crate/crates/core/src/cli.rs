//! Command-line front end.
//!
//! Every subcommand is deterministic given its flags. CSV floats are written
//! in scientific notation with 17 significant digits. Exit codes: 0 success,
//! 1 usage or input error, 2 runtime or resource error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::io::{read_pgm, write_atomic, write_f64, write_pgm, write_ppm, PgmEncoding};
use crate::kernel::{eval_kernel, kernel_bounds, KernelSpec};
use crate::lut::{
    asymptotic_resolution, min_table_precision, permissible_resolution, tabulate, ResolutionParams,
};
use crate::par;
use crate::phantom::{
    compare_kernels, error_colormap, generate_phantom, KernelBackend, PhantomSpec, RoundTripOptions,
};
use crate::resample::{resample_affine, BoundaryPolicy, ResampleOptions};
use crate::spectral::{fae_table, fae_with_tol, spectrum_sweep_with_tol, DEFAULT_TOLERANCE};
use crate::transform::{parse_rational, AffineTransform2D};

/// Samples per unit interval used when a command derives `h` and `gamma`
/// from a kernel.
const BOUNDS_SAMPLES: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "l2interp", version, about = "L2-optimal interpolation kernels and tools")]
pub struct Cli {
    /// Worker threads (0 = all available).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Absolute quadrature tolerance.
    #[arg(long = "tol", global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub quadrature_tolerance: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel values h(x) on [-L, L].
    KernelDump {
        #[arg(long)]
        kernel: KernelSpec,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fourier transform of a kernel on [tmin, tmax].
    Spectrum {
        #[arg(long)]
        kernel: KernelSpec,
        #[arg(long, default_value_t = 0.0)]
        tmin: f64,
        #[arg(long)]
        tmax: f64,
        #[arg(long, default_value_t = 301)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Frequency approximation error of one kernel.
    Fae {
        #[arg(long)]
        kernel: KernelSpec,
        /// Also print the two spatial components.
        #[arg(long)]
        components: bool,
    },
    /// Optimal FAE and its power-law fit for L = 1..Lmax.
    FaeTable {
        #[arg(long = "Lmax")]
        lmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate a kernel; `.csv` output is text, anything else is binary.
    Tabulate {
        #[arg(long)]
        kernel: KernelSpec,
        #[arg(long = "K")]
        precision: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Permissible signal resolution B0 for a table precision.
    Resolution {
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long = "K", required_unless_present = "sweep")]
        precision: Option<u64>,
        /// Emit B0 over K = 10^1..10^7 as CSV instead of a single value.
        #[arg(long)]
        sweep: bool,
        /// Sweep output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smallest table precision reaching a bit depth.
    #[command(name = "min-K")]
    MinK {
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        bits: u32,
    },
    /// Zoom or rotate a PGM image.
    Resample {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        kernel: KernelSpec,
        /// Use a lookup table of this precision instead of the closed form.
        #[arg(long = "lut")]
        lut: Option<u32>,
        /// Zoom factor as p/q.
        #[arg(long, conflicts_with = "rotate", required_unless_present = "rotate")]
        zoom: Option<String>,
        /// Rotation sine as p/q from a Pythagorean triple, e.g. 7/25.
        #[arg(long)]
        rotate: Option<String>,
        #[arg(long, default_value = "mirror")]
        boundary: BoundaryPolicy,
        /// Write P2 instead of P5.
        #[arg(long)]
        ascii: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Edge-phantom rotate/zoom round trip for a set of kernels.
    Phantom {
        #[arg(long, default_value_t = 257)]
        size: usize,
        #[arg(long, default_value_t = 11)]
        cycles: usize,
        /// Comma-separated kernel names, or `all` for the six standard kernels.
        #[arg(long, default_value = "all")]
        kernels: String,
        /// Alternate forward and inverse cycles.
        #[arg(long)]
        interleaved: bool,
        /// Round to this many bits (default 8) after every pass.
        #[arg(long, num_args = 0..=1, default_missing_value = "8")]
        round_per_pass: Option<u32>,
        #[arg(long, default_value = "mirror")]
        boundary: BoundaryPolicy,
        #[arg(long)]
        outdir: PathBuf,
    },
}

/// Kernel constants for the resolution bound. `--kernel` fills in whatever
/// is not given explicitly.
#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long = "L")]
    pub support: Option<u32>,
    #[arg(long = "D", default_value_t = 2)]
    pub dimension: u32,
    #[arg(long)]
    pub h: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub kernel: Option<KernelSpec>,
}

impl BoundArgs {
    fn resolve(&self) -> Result<(u32, u32, f64, f64)> {
        let derived = match (&self.kernel, self.h, self.gamma) {
            (Some(k), None, _) | (Some(k), _, None) => Some(kernel_bounds(k, BOUNDS_SAMPLES)?),
            _ => None,
        };
        let support = self
            .support
            .or(self.kernel.map(|k| k.support() as u32))
            .ok_or_else(|| Error::Parse("--L is required without --kernel".into()))?;
        let h = self
            .h
            .or(derived.map(|b| b.h_max))
            .ok_or_else(|| Error::Parse("--h is required without --kernel".into()))?;
        let gamma = self
            .gamma
            .or(derived.map(|b| b.gamma_max))
            .ok_or_else(|| Error::Parse("--gamma is required without --kernel".into()))?;
        Ok((support, self.dimension, h, gamma))
    }
}

fn csv_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    write_atomic(path, |w| w.write_all(text.as_bytes()))
}

fn check_output_path(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(Error::Parse(format!(
            "output directory {} does not exist",
            dir.display()
        ))),
        _ => Ok(()),
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::Parse(_) | Error::Format(_) => 1,
        Error::Resource { .. } | Error::Io(_) => 2,
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = writeln!(stderr, "{}", text.lines().next().unwrap_or("usage error"));
            }
            return code;
        }
    };
    let threads = cli.threads;
    let result = par::with_threads(threads, || {
        let mut out = Vec::new();
        let r = execute(&cli, &mut out);
        (r, out)
    });
    let _ = stdout.write_all(&result.1);
    match result.0 {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cli: &Cli, out: &mut Vec<u8>) -> Result<()> {
    let tol = cli.quadrature_tolerance;
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Parse(format!("--tol must be positive, got {tol}")));
    }
    match &cli.command {
        Command::KernelDump { kernel, step, out: path } => {
            if !step.is_finite() || *step <= 0.0 {
                return Err(Error::Domain("--step must be positive".into()));
            }
            check_output_path(path)?;
            let l = kernel.support() as f64;
            let n = (2.0 * l / step).round() as usize;
            let mut text = String::from("x,h\n");
            for i in 0..=n {
                let x = -l + i as f64 * step;
                writeln!(text, "{},{}", csv_float(x), csv_float(eval_kernel(kernel, x))).unwrap();
            }
            write_text(path, &text)
        }
        Command::Spectrum {
            kernel,
            tmin,
            tmax,
            points,
            out: path,
        } => {
            check_output_path(path)?;
            let table = spectrum_sweep_with_tol(kernel, *tmin, *tmax, *points, tol)?;
            let mut text = String::from("t,F\n");
            for (t, v) in table.frequencies.iter().zip(&table.values) {
                writeln!(text, "{},{}", csv_float(*t), csv_float(*v)).unwrap();
            }
            write_text(path, &text)
        }
        Command::Fae { kernel, components } => {
            let r = fae_with_tol(kernel, tol);
            writeln!(out, "{:.10}", r.e_total)?;
            if *components {
                writeln!(out, "e1 {:.16e}", r.e1_component)?;
                writeln!(out, "e2 {:.16e}", r.e2_component)?;
                writeln!(out, "quadrature_error {:.3e}", r.quadrature_error_estimate)?;
            }
            Ok(())
        }
        Command::FaeTable { lmax, out: path } => {
            check_output_path(path)?;
            let rows = fae_table(*lmax, tol)?;
            let mut text = String::from("L,E_L,E_hat,rel_dev\n");
            for r in rows {
                writeln!(
                    text,
                    "{},{},{},{}",
                    r.support,
                    csv_float(r.optimal),
                    csv_float(r.approx),
                    csv_float(r.relative_deviation())
                )
                .unwrap();
            }
            write_text(path, &text)
        }
        Command::Tabulate {
            kernel,
            precision,
            out: path,
        } => {
            check_output_path(path)?;
            let table = tabulate(kernel, *precision)?;
            if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
                write_atomic(path, |w| table.write_csv(w))
            } else {
                table.write_binary(path)
            }
        }
        Command::Resolution {
            bounds,
            precision,
            sweep,
            out: path,
        } => {
            let (support_l, dimension_d, h_bound, gamma_bound) = bounds.resolve()?;
            let params = ResolutionParams {
                support_l,
                dimension_d,
                h_bound,
                gamma_bound,
                precision_k: precision.unwrap_or(1),
            };
            if *sweep {
                let mut text = String::from("log10_K,K,B0,B0_asymptotic\n");
                for i in 0..=24 {
                    let e = 1.0 + 0.25 * i as f64;
                    let k = 10f64.powf(e).round() as u64;
                    let p = params.with_precision(k);
                    writeln!(
                        text,
                        "{},{k},{},{}",
                        csv_float((k as f64).log10()),
                        csv_float(permissible_resolution(&p)?),
                        csv_float(asymptotic_resolution(&p)?)
                    )
                    .unwrap();
                }
                match path {
                    Some(path) => {
                        check_output_path(path)?;
                        write_text(path, &text)
                    }
                    None => Ok(out.write_all(text.as_bytes())?),
                }
            } else {
                writeln!(out, "{:.6}", permissible_resolution(&params)?)?;
                Ok(())
            }
        }
        Command::MinK { bounds, bits } => {
            let (l, d, h, gamma) = bounds.resolve()?;
            writeln!(out, "{}", min_table_precision(l, d, h, gamma, *bits)?)?;
            Ok(())
        }
        Command::Resample {
            input,
            kernel,
            lut,
            zoom,
            rotate,
            boundary,
            ascii,
            out: path,
        } => {
            if !input.is_file() {
                return Err(Error::Parse(format!("input {} does not exist", input.display())));
            }
            check_output_path(path)?;
            let transform = match (zoom, rotate) {
                (Some(z), _) => {
                    let (p, q) = parse_rational(z)?;
                    AffineTransform2D::zoom(p, q)?
                }
                (None, Some(r)) => {
                    let (p, q) = parse_rational(r)?;
                    AffineTransform2D::rotation_pythagorean(p, q)?
                }
                (None, None) => return Err(Error::Parse("one of --zoom or --rotate is required".into())),
            };
            let backend = match lut {
                Some(k) => KernelBackend::table(kernel, *k)?,
                None => KernelBackend::Exact(*kernel),
            };
            let pgm = read_pgm(input)?;
            let transform = transform.centered_on(pgm.image.width(), pgm.image.height());
            let result = resample_affine(&pgm.image, &transform, &backend, &ResampleOptions::with_boundary(*boundary));
            let encoding = if *ascii { PgmEncoding::Ascii } else { PgmEncoding::Binary };
            write_pgm(path, &result, pgm.maxval, encoding)
        }
        Command::Phantom {
            size,
            cycles,
            kernels,
            interleaved,
            round_per_pass,
            boundary,
            outdir,
        } => {
            if !outdir.is_dir() {
                return Err(Error::Parse(format!("output directory {} does not exist", outdir.display())));
            }
            let specs = parse_kernel_list(kernels)?;
            let phantom = generate_phantom(&PhantomSpec {
                size: *size,
                ..Default::default()
            })?;
            let options = RoundTripOptions {
                cycles: *cycles,
                boundary: *boundary,
                interleaved: *interleaved,
                round_per_pass: *round_per_pass,
            };
            let backends: Vec<KernelBackend> = specs.into_iter().map(KernelBackend::Exact).collect();
            let rows = compare_kernels(&phantom, &backends, &options)?;
            write_phantom_outputs(outdir, &phantom, &rows)
        }
    }
}

/// `all` or a comma-separated list of kernel names.
pub fn parse_kernel_list(list: &str) -> Result<Vec<KernelSpec>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(KernelSpec::standard_six());
    }
    let specs = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<KernelSpec>>>()?;
    if specs.is_empty() {
        return Err(Error::Parse("empty kernel list".into()));
    }
    Ok(specs)
}

fn file_stem(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect()
}

/// Writes `phantom.pgm`, the deterministic `summary.csv`, `timings.csv`, and
/// per kernel the final image (PGM), error map (raw `.f64`) and colorized
/// error map (PPM) on a scale shared by all kernels.
pub fn write_phantom_outputs(dir: &Path, phantom: &crate::resample::Image2D, rows: &[crate::phantom::ComparisonRow]) -> Result<()> {
    write_pgm(&dir.join("phantom.pgm"), phantom, 255, PgmEncoding::Binary)?;
    let scale = rows
        .iter()
        .map(|r| r.result.max_error)
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut summary = String::from("kernel,L,rms,max,full_rms,full_max\n");
    let mut timings = String::from("kernel,runtime_ms\n");
    for row in rows {
        let r = &row.result;
        writeln!(
            summary,
            "{},{},{},{},{},{}",
            r.kernel,
            row.support,
            csv_float(r.rms_error),
            csv_float(r.max_error),
            csv_float(r.full_rms_error),
            csv_float(r.full_max_error)
        )
        .unwrap();
        writeln!(timings, "{},{:.3}", r.kernel, row.runtime_ms).unwrap();
        let stem = file_stem(&r.kernel);
        write_pgm(&dir.join(format!("{stem}_final.pgm")), &r.final_image, 255, PgmEncoding::Binary)?;
        write_f64(&dir.join(format!("{stem}_error.f64")), &r.error_map)?;
        write_ppm(&dir.join(format!("{stem}_error.ppm")), &error_colormap(&r.error_map, scale)?)?;
    }
    write_text(&dir.join("summary.csv"), &summary)?;
    write_text(&dir.join("timings.csv"), &timings)
}
