//! Interpolation kernels.
//!
//! Every kernel here is symmetric with integer half-width `L` and vanishes
//! for `|x| >= L`. The classic kernels are piecewise polynomials; the
//! L2-optimal kernel `H_L` is the sinc plus a piecewise aliasing correction
//! that restores the interpolating conditions on a finite support.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Below this magnitude `sinc` returns exactly 1.
pub const SINC_ZERO_THRESHOLD: f64 = 1e-8;

/// Inflation applied to sampled kernel suprema so that they can be used as
/// upper bounds.
pub const SAFETY_FACTOR: f64 = 1.01;

/// Default Keys parameter.
pub const KEYS_DEFAULT_A: f64 = -0.5;

/// Something that can be used as a convolution kernel.
pub trait Kernel: Sync {
    /// Half-width `L`; the kernel vanishes for `|x| >= L`.
    fn support(&self) -> usize;

    fn eval(&self, x: f64) -> f64;
}

impl<K: Kernel + ?Sized> Kernel for &K {
    fn support(&self) -> usize {
        (**self).support()
    }

    fn eval(&self, x: f64) -> f64 {
        (**self).eval(x)
    }
}

/// Adapts a closure into a [`Kernel`]. The closure receives `x` unmodified;
/// zero-extension outside the support is applied here.
#[derive(Clone, Copy)]
pub struct FnKernel<F> {
    support: usize,
    f: F,
}

impl<F: Fn(f64) -> f64 + Sync> FnKernel<F> {
    pub fn new(support: usize, f: F) -> Self {
        Self { support, f }
    }
}

impl<F: Fn(f64) -> f64 + Sync> Kernel for FnKernel<F> {
    fn support(&self) -> usize {
        self.support
    }

    fn eval(&self, x: f64) -> f64 {
        if x.abs() >= self.support as f64 {
            0.0
        } else {
            (self.f)(x)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    /// The hat `1 - |x|`.
    Linear,
    /// Keys cubic convolution with parameter `a`.
    Keys { a: f64 },
    /// Six-point cubic convolution.
    Cubic3,
    /// L2-optimal kernel `H_L`.
    OptimalL2 { support: usize },
    /// Sinc cut off at `|x| = L`.
    TruncatedSinc { support: usize },
}

/// Identifies a kernel. The support is derived from the kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    kind: KernelKind,
}

impl KernelSpec {
    pub fn linear() -> Self {
        Self { kind: KernelKind::Linear }
    }

    pub fn keys() -> Self {
        Self::keys_with(KEYS_DEFAULT_A)
    }

    pub fn keys_with(a: f64) -> Self {
        Self { kind: KernelKind::Keys { a } }
    }

    pub fn cubic3() -> Self {
        Self { kind: KernelKind::Cubic3 }
    }

    pub fn optimal(support: usize) -> Result<Self> {
        check_support(support)?;
        Ok(Self { kind: KernelKind::OptimalL2 { support } })
    }

    pub fn truncated_sinc(support: usize) -> Result<Self> {
        check_support(support)?;
        Ok(Self { kind: KernelKind::TruncatedSinc { support } })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn support(&self) -> usize {
        match self.kind {
            KernelKind::Linear => 1,
            KernelKind::Keys { .. } => 2,
            KernelKind::Cubic3 => 3,
            KernelKind::OptimalL2 { support } | KernelKind::TruncatedSinc { support } => support,
        }
    }

    /// The six kernels compared throughout: three classic kernels and `H_1..H_3`.
    pub fn standard_six() -> Vec<KernelSpec> {
        vec![
            Self::linear(),
            Self::keys(),
            Self::cubic3(),
            Self { kind: KernelKind::OptimalL2 { support: 1 } },
            Self { kind: KernelKind::OptimalL2 { support: 2 } },
            Self { kind: KernelKind::OptimalL2 { support: 3 } },
        ]
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self.kind, KernelKind::OptimalL2 { .. })
    }
}

fn check_support(support: usize) -> Result<()> {
    if support == 0 {
        return Err(Error::Domain("kernel support must be at least 1".into()));
    }
    Ok(())
}

impl Kernel for KernelSpec {
    fn support(&self) -> usize {
        KernelSpec::support(self)
    }

    fn eval(&self, x: f64) -> f64 {
        eval_kernel(self, x)
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            KernelKind::Linear => "linear".to_string(),
            KernelKind::Keys { a } if a == KEYS_DEFAULT_A => "keys".to_string(),
            KernelKind::Keys { a } => format!("keys:{a}"),
            KernelKind::Cubic3 => "cubic3".to_string(),
            KernelKind::OptimalL2 { support } => format!("optimal:{support}"),
            KernelKind::TruncatedSinc { support } => format!("truncsinc:{support}"),
        };
        f.pad(&name)
    }
}

impl FromStr for KernelSpec {
    type Err = Error;

    /// Accepts `linear`, `keys[:a]`, `cubic3`, `optimal:L` and `truncsinc:L`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let support = |arg: Option<&str>| -> Result<usize> {
            let arg = arg.ok_or_else(|| Error::Parse(format!("kernel `{name}` needs a support, e.g. `{name}:2`")))?;
            arg.parse::<usize>()
                .map_err(|_| Error::Parse(format!("invalid support `{arg}` in kernel `{s}`")))
        };
        match name.to_ascii_lowercase().as_str() {
            "linear" if arg.is_none() => Ok(Self::linear()),
            "cubic3" if arg.is_none() => Ok(Self::cubic3()),
            "keys" => match arg {
                None => Ok(Self::keys()),
                Some(a) => a
                    .parse::<f64>()
                    .ok()
                    .filter(|a| a.is_finite())
                    .map(Self::keys_with)
                    .ok_or_else(|| Error::Parse(format!("invalid Keys parameter `{a}`"))),
            },
            "optimal" => Self::optimal(support(arg)?),
            "truncsinc" => Self::truncated_sinc(support(arg)?),
            _ => Err(Error::Parse(format!("unknown kernel `{s}`"))),
        }
    }
}

/// `sin(pi x)` with the argument reduced to `[-1/2, 1/2]` first, so the result
/// is exactly zero at integers.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let s = (PI * (x - n)).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// Normalized sinc, `sin(pi x) / (pi x)`, with `sinc(0) = 1`.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_ZERO_THRESHOLD {
        1.0
    } else {
        sin_pi(x) / (PI * x)
    }
}

/// Evaluates the kernel at `x`. Symmetric by construction; zero for `|x| >= L`.
pub fn eval_kernel(spec: &KernelSpec, x: f64) -> f64 {
    let x = x.abs();
    if x >= spec.support() as f64 {
        return 0.0;
    }
    match spec.kind {
        KernelKind::Linear => 1.0 - x,
        KernelKind::Keys { a } => keys(a, x),
        KernelKind::Cubic3 => cubic3(x),
        KernelKind::OptimalL2 { support } => optimal_unchecked(support, x),
        KernelKind::TruncatedSinc { .. } => sinc(x),
    }
}

// The cubic pieces below are written factored through their integer roots so
// that cardinality holds exactly for any `a`, not just up to roundoff.

fn keys(a: f64, x: f64) -> f64 {
    if x <= 1.0 {
        (x - 1.0) * (((a + 2.0) * x - 1.0) * x - 1.0)
    } else {
        a * (x - 1.0) * (x - 2.0) * (x - 2.0)
    }
}

fn cubic3(x: f64) -> f64 {
    let p = if x <= 1.0 {
        (x - 1.0) * ((6.0 * x - 5.0) * x - 5.0)
    } else if x <= 2.0 {
        (x - 1.0) * (x - 2.0) * (7.0 - 3.0 * x)
    } else {
        (x - 2.0) * (x - 3.0) * (x - 3.0)
    };
    p / 5.0
}

fn check_optimal_domain(support: usize, x: f64) -> Result<()> {
    check_support(support)?;
    if !(0.0..support as f64).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, {support})")));
    }
    Ok(())
}

/// `H_L(x)` for `0 <= x < L`, from the alternating-sign sum over the `2L`
/// half-segment images of `x`.
pub fn optimal_kernel_value(support: usize, x: f64) -> Result<f64> {
    check_optimal_domain(support, x)?;
    Ok(optimal_unchecked(support, x))
}

fn optimal_unchecked(support: usize, x: f64) -> f64 {
    let n = x.floor();
    let mut sum = 0.0;
    for k in 0..2 * support {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let shift = k.div_ceil(2) as f64;
        sum += sinc(sign * x + shift - sign * n);
    }
    sinc(x) + (1.0 - sum) / (2 * support) as f64
}

/// Aliasing correction `T_L(x) = H_L(x) - sinc(x)` for `0 <= x < L`.
///
/// Evaluated from the paired form: on segment `m`, the images are
/// `x + p - m` and `p + 1 + m - x` for `p = 0..L`.
pub fn aliasing_term(support: usize, x: f64) -> Result<f64> {
    check_optimal_domain(support, x)?;
    let m = x.floor();
    let sum: f64 = (0..support)
        .map(|p| {
            let p = p as f64;
            sinc(x + p - m) + sinc(p + 1.0 + m - x)
        })
        .sum();
    Ok((1.0 - sum) / (2 * support) as f64)
}

/// Maxima of the interpolating-condition violations for a kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConditionReport {
    /// max |h(n) - delta_n| over integers in [-L, L].
    pub max_cardinality_violation: f64,
    /// max |sum_k h(x + k) - 1| over sampled x in [0, 1].
    pub max_partition_violation: f64,
    /// Largest jump between one-sided limits at interior integers.
    pub max_continuity_jump: f64,
    pub symmetric: bool,
}

/// One-sided offset used to probe continuity at integers.
pub const CONTINUITY_EPS: f64 = 1e-9;

/// Checks cardinality, partition of unity, continuity at interior integers and
/// symmetry, sampling `samples_per_unit` points per unit interval.
///
/// Each one-sided limit is extrapolated linearly from `n ± eps` and
/// `n ± 2 eps`, which removes the `2 eps |h'|` contribution a plain
/// `h(n - eps) - h(n + eps)` difference would report for a kink.
pub fn check_kernel_conditions<K: Kernel + ?Sized>(
    kernel: &K,
    samples_per_unit: usize,
) -> Result<KernelConditionReport> {
    if samples_per_unit < 2 {
        return Err(Error::Domain("samples_per_unit must be at least 2".into()));
    }
    let l = kernel.support() as i64;

    let max_cardinality_violation = (-l..=l)
        .map(|n| {
            let expected = if n == 0 { 1.0 } else { 0.0 };
            (kernel.eval(n as f64) - expected).abs()
        })
        .fold(0.0, f64::max);

    let max_partition_violation = (0..=samples_per_unit)
        .map(|i| {
            let x = i as f64 / samples_per_unit as f64;
            let s: f64 = (-l..=l).map(|k| kernel.eval(x + k as f64)).sum();
            (s - 1.0).abs()
        })
        .fold(0.0, f64::max);

    let eps = CONTINUITY_EPS;
    let max_continuity_jump = (1 - l..l)
        .map(|n| {
            let n = n as f64;
            let left = 2.0 * kernel.eval(n - eps) - kernel.eval(n - 2.0 * eps);
            let right = 2.0 * kernel.eval(n + eps) - kernel.eval(n + 2.0 * eps);
            (left - right).abs()
        })
        .fold(0.0, f64::max);

    let symmetric = (0..=l as usize * samples_per_unit).all(|i| {
        let x = i as f64 / samples_per_unit as f64;
        kernel.eval(x) == kernel.eval(-x)
    });

    Ok(KernelConditionReport {
        max_cardinality_violation,
        max_partition_violation,
        max_continuity_jump,
        symmetric,
    })
}

/// Upper bounds on `|h|` and `|h'|` over `[0, L]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelBounds {
    pub h_max: f64,
    pub gamma_max: f64,
}

/// Step for one-sided derivatives at breakpoints.
pub const DERIVATIVE_STEP: f64 = 1e-6;

/// Estimates `sup |h|` and `sup |h'|` on `[0, L]` by dense sampling, then
/// inflates both by [`SAFETY_FACTOR`].
///
/// Derivatives use central differences inside each unit interval and one-sided
/// differences at the integer breakpoints, where the optimal kernels are only
/// one-sidedly differentiable.
pub fn kernel_bounds<K: Kernel + ?Sized>(kernel: &K, samples_per_unit: usize) -> Result<KernelBounds> {
    if samples_per_unit < 1000 {
        return Err(Error::Domain("samples_per_unit must be at least 1000".into()));
    }
    let n = samples_per_unit;
    let step = DERIVATIVE_STEP.min(0.5 / n as f64);
    let mut h_max = 0.0f64;
    let mut gamma_max = 0.0f64;
    for seg in 0..kernel.support() {
        let lo = seg as f64;
        let hi = lo + 1.0;
        for i in 0..=n {
            let x = lo + i as f64 / n as f64;
            h_max = h_max.max(kernel.eval(x).abs());
            let d = if i == 0 {
                // right derivative; the left neighbour may sit on another piece
                (kernel.eval(lo + DERIVATIVE_STEP) - kernel.eval(lo)) / DERIVATIVE_STEP
            } else if i == n {
                (kernel.eval(hi) - kernel.eval(hi - DERIVATIVE_STEP)) / DERIVATIVE_STEP
            } else {
                (kernel.eval(x + step) - kernel.eval(x - step)) / (2.0 * step)
            };
            gamma_max = gamma_max.max(d.abs());
        }
    }
    Ok(KernelBounds {
        h_max: h_max * SAFETY_FACTOR,
        gamma_max: gamma_max * SAFETY_FACTOR,
    })
}
