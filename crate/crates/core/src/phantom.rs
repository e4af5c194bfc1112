//! Edge-phantom round-trip benchmark.
//!
//! A radial line phantom is zoomed and rotated through a chain of exact
//! rational transforms whose product is the identity. Any difference between
//! the input and the output is therefore interpolation error.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::io::RgbImage;
use crate::kernel::{Kernel, KernelSpec};
use crate::lut::{tabulate, KernelTable};
use crate::par;
use crate::resample::{resample_affine, BoundaryPolicy, Image2D, ResampleOptions};
use crate::transform::AffineTransform2D;

/// Zoom factor of the benchmark chain.
pub const ZOOM: (i64, i64) = (4, 5);
/// Rotation `sin = 7/25`, `cos = 24/25`.
pub const ROTATION: (i64, i64) = (7, 25);
/// Cycles covering roughly a full turn (22 rotations of ~16.26 degrees).
pub const DEFAULT_CYCLES: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LineProfile {
    /// One rasterized pixel per step.
    #[default]
    HardEdge,
    /// Intensity split between the two pixels straddling the ideal line.
    AntialiasedEdge,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhantomSpec {
    pub size: usize,
    pub num_lines: usize,
    pub peak_intensity: f64,
    pub background: f64,
    pub line_profile: LineProfile,
}

impl Default for PhantomSpec {
    fn default() -> Self {
        Self {
            size: 257,
            num_lines: 8,
            peak_intensity: 255.0,
            background: 0.0,
            line_profile: LineProfile::HardEdge,
        }
    }
}

/// Rays from the center at angles `2 pi k / num_lines`, intensity falling
/// linearly from `peak` at the center to `background` at the image edge.
pub fn generate_phantom(spec: &PhantomSpec) -> Result<Image2D> {
    if spec.size == 0 || spec.size.is_multiple_of(2) {
        return Err(Error::Domain(format!("phantom size {} must be odd", spec.size)));
    }
    if spec.num_lines == 0 {
        return Err(Error::Domain("phantom needs at least one line".into()));
    }
    let n = spec.size;
    let c = ((n - 1) / 2) as f64;
    let mut samples = vec![spec.background; n * n];
    let mut plot = |x: i64, y: i64, weight: f64, r: f64, r_max: f64| {
        if x < 0 || y < 0 || x >= n as i64 || y >= n as i64 || weight <= 0.0 {
            return;
        }
        let falloff = if r_max > 0.0 { (1.0 - r / r_max).max(0.0) } else { 1.0 };
        let v = spec.background + (spec.peak_intensity - spec.background) * falloff * weight;
        let px = &mut samples[y as usize * n + x as usize];
        if (v - spec.background).abs() > (*px - spec.background).abs() {
            *px = v;
        }
    };

    for k in 0..spec.num_lines {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / spec.num_lines as f64;
        let (dir_y, dir_x) = theta.sin_cos();
        // snap tiny components so axis-aligned rays stay exact
        let dir_x = if dir_x.abs() < 1e-12 { 0.0 } else { dir_x };
        let dir_y = if dir_y.abs() < 1e-12 { 0.0 } else { dir_y };
        let reach = c / dir_x.abs().max(dir_y.abs());
        // endpoint offsets snapped to whole pixels when roundoff is all that separates them
        let snap = |v: f64| if (v - v.round()).abs() < 1e-9 { v.round() } else { v };
        let (dx, dy) = (snap(reach * dir_x), snap(reach * dir_y));
        let steps = dx.abs().max(dy.abs()).round() as i64;
        let r_max = (dx * dx + dy * dy).sqrt();
        for i in 0..=steps {
            let (fx, fy, r) = if steps == 0 {
                (c, c, 0.0)
            } else {
                let s = steps as f64;
                (c + i as f64 * dx / s, c + i as f64 * dy / s, i as f64 * r_max / s)
            };
            match spec.line_profile {
                LineProfile::HardEdge => plot(fx.round() as i64, fy.round() as i64, 1.0, r, r_max),
                LineProfile::AntialiasedEdge => {
                    if dx.abs() >= dy.abs() {
                        let base = fy.floor();
                        let frac = fy - base;
                        plot(fx.round() as i64, base as i64, 1.0 - frac, r, r_max);
                        plot(fx.round() as i64, base as i64 + 1, frac, r, r_max);
                    } else {
                        let base = fx.floor();
                        let frac = fx - base;
                        plot(base as i64, fy.round() as i64, 1.0 - frac, r, r_max);
                        plot(base as i64 + 1, fy.round() as i64, frac, r, r_max);
                    }
                }
            }
        }
    }
    Image2D::new(n, n, samples)
}

/// A kernel evaluated in closed form or through a lookup table.
#[derive(Debug, Clone)]
pub enum KernelBackend {
    Exact(KernelSpec),
    Table(KernelTable),
}

impl KernelBackend {
    pub fn table(spec: &KernelSpec, precision_k: u32) -> Result<Self> {
        Ok(Self::Table(tabulate(spec, precision_k)?))
    }

    /// The kernel this backend evaluates (tables loaded from disk have none).
    pub fn spec(&self) -> Option<KernelSpec> {
        match self {
            KernelBackend::Exact(s) => Some(*s),
            KernelBackend::Table(t) => t.source().copied(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            KernelBackend::Exact(s) => s.to_string(),
            KernelBackend::Table(t) => match t.source() {
                Some(s) => format!("{s}@lut{}", t.precision_k()),
                None => format!("lut{}", t.precision_k()),
            },
        }
    }
}

impl From<KernelSpec> for KernelBackend {
    fn from(spec: KernelSpec) -> Self {
        KernelBackend::Exact(spec)
    }
}

impl Kernel for KernelBackend {
    fn support(&self) -> usize {
        match self {
            KernelBackend::Exact(s) => s.support(),
            KernelBackend::Table(t) => t.support(),
        }
    }

    #[inline]
    fn eval(&self, x: f64) -> f64 {
        match self {
            KernelBackend::Exact(s) => s.eval(x),
            KernelBackend::Table(t) => t.lookup(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTripOptions {
    pub cycles: usize,
    pub boundary: BoundaryPolicy,
    /// Alternate forward and inverse cycles instead of running all forward
    /// cycles first.
    pub interleaved: bool,
    /// Round to this many bits after every pass.
    pub round_per_pass: Option<u32>,
}

impl Default for RoundTripOptions {
    fn default() -> Self {
        Self {
            cycles: DEFAULT_CYCLES,
            boundary: BoundaryPolicy::Mirror,
            interleaved: false,
            round_per_pass: None,
        }
    }
}

/// The elementary passes of the round trip, in application order.
///
/// A forward cycle is `Z, R, Z^-1, R`; an inverse cycle undoes it as
/// `R^-1, Z, R^-1, Z^-1`.
pub fn pass_sequence(width: usize, height: usize, cycles: usize, interleaved: bool) -> Result<Vec<AffineTransform2D>> {
    let z = AffineTransform2D::zoom(ZOOM.0, ZOOM.1)?.centered_on(width, height);
    let r = AffineTransform2D::rotation_pythagorean(ROTATION.0, ROTATION.1)?.centered_on(width, height);
    let forward = [z.clone(), r.clone(), z.inverse(), r.clone()];
    let inverse = [r.inverse(), z.clone(), r.inverse(), z.inverse()];
    let mut seq = Vec::with_capacity(8 * cycles);
    if interleaved {
        for _ in 0..cycles {
            seq.extend_from_slice(&forward);
            seq.extend_from_slice(&inverse);
        }
    } else {
        for _ in 0..cycles {
            seq.extend_from_slice(&forward);
        }
        for _ in 0..cycles {
            seq.extend_from_slice(&inverse);
        }
    }
    Ok(seq)
}

/// Exact product of a pass sequence (last pass outermost).
pub fn compose_chain(passes: &[AffineTransform2D]) -> Result<AffineTransform2D> {
    let Some(first) = passes.first() else {
        return Ok(AffineTransform2D::identity());
    };
    passes[1..].iter().try_fold(first.clone(), |acc, t| t.compose(&acc))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundTripResult {
    pub final_image: Image2D,
    /// Per-pixel `|P' - P|` over the whole frame.
    pub error_map: Image2D,
    /// Statistics over the central disk of radius `(size - 1) / 2`.
    pub rms_error: f64,
    pub max_error: f64,
    pub full_rms_error: f64,
    pub full_max_error: f64,
    pub kernel: String,
    pub cycles: usize,
}

/// Runs the transform chain and measures the error against the input.
pub fn round_trip(image: &Image2D, backend: &KernelBackend, options: &RoundTripOptions) -> Result<RoundTripResult> {
    if options.cycles == 0 {
        return Err(Error::Domain("round trip needs at least one cycle".into()));
    }
    let passes = pass_sequence(image.width(), image.height(), options.cycles, options.interleaved)?;
    if !compose_chain(&passes)?.is_identity() {
        return Err(Error::Domain("transform chain does not compose to the identity".into()));
    }
    let resample_opts = ResampleOptions::with_boundary(options.boundary);
    let mut current = image.clone();
    for pass in &passes {
        current = resample_affine(&current, pass, backend, &resample_opts);
        if let Some(bits) = options.round_per_pass {
            current = current.rounded_to_bits(bits)?;
        }
    }
    let errors: Vec<f64> = current
        .samples()
        .iter()
        .zip(image.samples())
        .map(|(a, b)| (a - b).abs())
        .collect();
    let error_map = Image2D::new(image.width(), image.height(), errors)?;
    let (rms_error, max_error) = error_stats(&error_map, true);
    let (full_rms_error, full_max_error) = error_stats(&error_map, false);
    Ok(RoundTripResult {
        final_image: current,
        error_map,
        rms_error,
        max_error,
        full_rms_error,
        full_max_error,
        kernel: backend.label(),
        cycles: options.cycles,
    })
}

/// RMS and max of an error map, optionally restricted to the central disk.
pub fn error_stats(error_map: &Image2D, central_disk: bool) -> (f64, f64) {
    let (w, h) = (error_map.width(), error_map.height());
    let (cx, cy) = ((w as f64 - 1.0) / 2.0, (h as f64 - 1.0) / 2.0);
    let radius = cx.min(cy);
    let mut sum_sq = 0.0;
    let mut max = 0.0f64;
    let mut count = 0usize;
    for y in 0..h {
        for x in 0..w {
            if central_disk {
                let (dx, dy) = (x as f64 - cx, y as f64 - cy);
                if dx * dx + dy * dy > radius * radius {
                    continue;
                }
            }
            let e = error_map.get(x, y);
            sum_sq += e * e;
            max = max.max(e);
            count += 1;
        }
    }
    ((sum_sq / count.max(1) as f64).sqrt(), max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub spec: Option<KernelSpec>,
    pub support: usize,
    pub result: RoundTripResult,
    /// Wall-clock time of this kernel's round trip. Not deterministic.
    pub runtime_ms: f64,
}

/// One round trip per kernel over the same chain, sorted by central-disk RMS.
pub fn compare_kernels(
    image: &Image2D,
    kernels: &[KernelBackend],
    options: &RoundTripOptions,
) -> Result<Vec<ComparisonRow>> {
    if kernels.is_empty() {
        return Err(Error::Domain("no kernels to compare".into()));
    }
    let rows: Result<Vec<ComparisonRow>> = par::map_slice(kernels, |k| {
        let start = Instant::now();
        let result = round_trip(image, k, options)?;
        Ok(ComparisonRow {
            spec: k.spec(),
            support: k.support(),
            result,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    })
    .into_iter()
    .collect();
    let mut rows = rows?;
    // stable sort keeps input order for exact ties
    rows.sort_by(|a, b| a.result.rms_error.total_cmp(&b.result.rms_error));
    Ok(rows)
}

/// Linear blue-to-red ramp, saturating at `scale_max`.
pub fn error_colormap(error_map: &Image2D, scale_max: f64) -> Result<RgbImage> {
    if !scale_max.is_finite() || scale_max <= 0.0 {
        return Err(Error::Domain(format!("colormap scale {scale_max} must be positive")));
    }
    let pixels = error_map
        .samples()
        .iter()
        .map(|&e| {
            let t = (e / scale_max).clamp(0.0, 1.0);
            let t = if t.is_nan() { 1.0 } else { t };
            [(255.0 * t).round() as u8, 0, (255.0 * (1.0 - t)).round() as u8]
        })
        .collect();
    Ok(RgbImage {
        width: error_map.width(),
        height: error_map.height(),
        pixels,
    })
}
