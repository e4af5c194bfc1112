//! Separable 1D/2D interpolation and affine resampling.
//!
//! Pixel centers sit at integer coordinates. A kernel of support `L`
//! contributes the samples `k` in `[ceil(x) - L, floor(x) + L]`; indices
//! outside the grid are resolved by a [`BoundaryPolicy`].

use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::par;
use crate::transform::AffineTransform2D;

fn check_bits(samples: &[f64], bits: Option<u32>) -> Result<()> {
    if let Some(b) = bits {
        if b == 0 || b > 52 {
            return Err(Error::Domain(format!("bit depth {b} out of range 1..=52")));
        }
        let max = ((1u64 << b) - 1) as f64;
        if let Some(v) = samples.iter().find(|&&v| v.fract() != 0.0 || !(0.0..=max).contains(&v)) {
            return Err(Error::Domain(format!("sample {v} is not a {b}-bit integer")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Signal1D {
    samples: Vec<f64>,
    declared_bits: Option<u32>,
}

impl Signal1D {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        Self::with_bits(samples, None)
    }

    /// With a declared bit depth every sample must be an integer in `[0, 2^B - 1]`.
    pub fn with_bits(samples: Vec<f64>, declared_bits: Option<u32>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("signal has no samples".into()));
        }
        check_bits(&samples, declared_bits)?;
        Ok(Self { samples, declared_bits })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn declared_bits(&self) -> Option<u32> {
        self.declared_bits
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Row-major grayscale image with real samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Image2D {
    width: usize,
    height: usize,
    samples: Vec<f64>,
    declared_bits: Option<u32>,
}

impl Image2D {
    pub fn new(width: usize, height: usize, samples: Vec<f64>) -> Result<Self> {
        Self::with_bits(width, height, samples, None)
    }

    pub fn with_bits(width: usize, height: usize, samples: Vec<f64>, declared_bits: Option<u32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Domain("image dimensions must be positive".into()));
        }
        if samples.len() != width * height {
            return Err(Error::Domain(format!(
                "{} samples for a {width}x{height} image",
                samples.len()
            )));
        }
        check_bits(&samples, declared_bits)?;
        Ok(Self {
            width,
            height,
            samples,
            declared_bits,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Builds an image from `f(x, y)`.
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let samples = (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).map(|(x, y)| f(x, y)).collect();
        Self::new(width, height, samples)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn declared_bits(&self) -> Option<u32> {
        self.declared_bits
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.samples[y * self.width + x]
    }

    /// Rounds to the nearest integer and clamps to `[0, 2^bits - 1]`.
    pub fn rounded_to_bits(&self, bits: u32) -> Result<Self> {
        let max = ((1u64 << bits.min(52)) - 1) as f64;
        let samples = self.samples.iter().map(|v| v.round().clamp(0.0, max)).collect();
        Self::with_bits(self.width, self.height, samples, Some(bits))
    }
}

/// How samples outside the grid are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryPolicy {
    /// Outside samples are 0.
    Zero,
    /// Nearest edge sample.
    Clamp,
    /// Reflection about the edge samples (`-1 -> 1`).
    #[default]
    Mirror,
}

impl BoundaryPolicy {
    /// Maps `index` into `0..len`, or `None` for a zero sample.
    #[inline]
    pub fn resolve(self, index: i64, len: usize) -> Option<usize> {
        let n = len as i64;
        if (0..n).contains(&index) {
            return Some(index as usize);
        }
        match self {
            BoundaryPolicy::Zero => None,
            BoundaryPolicy::Clamp => Some(index.clamp(0, n - 1) as usize),
            BoundaryPolicy::Mirror => {
                if n == 1 {
                    return Some(0);
                }
                let period = 2 * (n - 1);
                let i = index.rem_euclid(period);
                Some(if i < n { i } else { period - i } as usize)
            }
        }
    }
}

impl std::str::FromStr for BoundaryPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zero" => Ok(Self::Zero),
            "clamp" => Ok(Self::Clamp),
            "mirror" => Ok(Self::Mirror),
            _ => Err(Error::Parse(format!("unknown boundary policy `{s}`"))),
        }
    }
}

/// First tap and tap count for position `x`.
#[inline]
fn window(x: f64, support: usize) -> (i64, usize) {
    let l = support as i64;
    let start = x.ceil() as i64 - l;
    let end = x.floor() as i64 + l;
    (start, (end - start + 1) as usize)
}

#[inline]
fn fill_weights<K: Kernel + ?Sized>(kernel: &K, x: f64, start: i64, taps: usize, out: &mut Vec<f64>) {
    out.clear();
    out.extend((0..taps).map(|i| kernel.eval(x - (start + i as i64) as f64)));
}

/// `sum_k I(k) h(x - k)` over the kernel window.
pub fn interpolate_1d<K: Kernel + ?Sized>(signal: &Signal1D, x: f64, kernel: &K, boundary: BoundaryPolicy) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let (start, taps) = window(x, kernel.support());
    let mut acc = 0.0;
    for i in 0..taps {
        let k = start + i as i64;
        if let Some(idx) = boundary.resolve(k, signal.len()) {
            acc += signal.samples[idx] * kernel.eval(x - k as f64);
        }
    }
    acc
}

/// Reusable weight buffers for 2D evaluation.
#[derive(Default)]
struct Scratch {
    wx: Vec<f64>,
    wy: Vec<f64>,
    rows: Vec<Option<usize>>,
}

impl Scratch {
    fn eval<K: Kernel + ?Sized>(&mut self, image: &Image2D, x: f64, y: f64, kernel: &K, boundary: BoundaryPolicy) -> f64 {
        if !x.is_finite() || !y.is_finite() {
            return f64::NAN;
        }
        let support = kernel.support();
        let (x0, nx) = window(x, support);
        let (y0, ny) = window(y, support);
        fill_weights(kernel, x, x0, nx, &mut self.wx);
        fill_weights(kernel, y, y0, ny, &mut self.wy);
        self.rows.clear();
        self.rows
            .extend((0..ny).map(|j| boundary.resolve(y0 + j as i64, image.height)));

        let mut acc = 0.0;
        for (i, &wx) in self.wx.iter().enumerate() {
            let Some(col) = boundary.resolve(x0 + i as i64, image.width) else {
                continue;
            };
            let mut inner = 0.0;
            for (row, &wy) in self.rows.iter().zip(&self.wy) {
                if let Some(row) = row {
                    inner += image.samples[row * image.width + col] * wy;
                }
            }
            acc += wx * inner;
        }
        acc
    }
}

/// Separable 2D interpolation: inner sums along `y` for each column `k`,
/// outer sum along `x`.
pub fn interpolate_2d<K: Kernel + ?Sized>(image: &Image2D, x: f64, y: f64, kernel: &K, boundary: BoundaryPolicy) -> f64 {
    Scratch::default().eval(image, x, y, kernel, boundary)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ResampleOptions {
    pub boundary: BoundaryPolicy,
    /// Clamp interpolated values into `[lo, hi]`. Off by default so kernel
    /// overshoot stays visible.
    pub clamp: Option<(f64, f64)>,
}

impl ResampleOptions {
    pub fn with_boundary(boundary: BoundaryPolicy) -> Self {
        Self { boundary, clamp: None }
    }
}

/// Resamples `image` under `transform`. Output pixel `p` takes the
/// interpolated value at `T^{-1}(p - c) + c`; dimensions are unchanged.
pub fn resample_affine<K: Kernel + ?Sized>(
    image: &Image2D,
    transform: &AffineTransform2D,
    kernel: &K,
    options: &ResampleOptions,
) -> Image2D {
    let map = transform.source_map();
    let width = image.width;
    let mut out = vec![0.0; width * image.height];
    par::fill_chunks(&mut out, width, |y, row| {
        let mut scratch = Scratch::default();
        for (x, px) in row.iter_mut().enumerate() {
            let (sx, sy) = map.source(x as i64, y as i64);
            let mut v = scratch.eval(image, sx, sy, kernel, options.boundary);
            if let Some((lo, hi)) = options.clamp {
                v = v.clamp(lo, hi);
            }
            *px = v;
        }
    });
    Image2D {
        width,
        height: image.height,
        samples: out,
        declared_bits: None,
    }
}
