//! Frequency responses and the frequency approximation error (FAE).
//!
//! By Parseval, the L2 distance between a kernel's spectrum and the ideal box
//! equals the spatial L2 distance to sinc, so everything here is computed by
//! spatial quadrature:
//!
//! `E(h)^2 = 2 * (int_0^L (h - sinc)^2 dx + int_L^inf sinc^2 dx)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::{aliasing_term, sinc, Kernel, KernelSpec};
use crate::par;
use crate::quadrature::{breakpoints, integrate_piecewise};

/// Absolute tolerance for FAE components and Fourier transforms.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Absolute tolerance for the sinc-squared tail.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Coefficient and exponent of the power-law fit to the optimal FAE curve.
pub const FIT_COEFFICIENT: f64 = 0.33;
pub const FIT_EXPONENT: f64 = -0.5258;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaeReport {
    /// `E(h)`; 0 for sinc, 1 for the zero kernel.
    pub e_total: f64,
    /// `int_0^L (h - sinc)^2 dx`
    pub e1_component: f64,
    /// `int_L^inf sinc^2 dx`
    pub e2_component: f64,
    pub quadrature_error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub frequencies: Vec<f64>,
    pub values: Vec<f64>,
    pub kernel: KernelSpec,
}

/// `F_h(t) = 2 int_0^L h(x) cos(2 pi x t) dx`, real because `h` is even.
pub fn fourier_transform<K: Kernel + ?Sized>(kernel: &K, t: f64) -> f64 {
    fourier_transform_with_tol(kernel, t, DEFAULT_TOLERANCE)
}

pub fn fourier_transform_with_tol<K: Kernel + ?Sized>(kernel: &K, t: f64, tol: f64) -> f64 {
    let l = kernel.support() as f64;
    let pts = breakpoints(l, 0.5);
    2.0 * integrate_piecewise(|x| kernel.eval(x) * (2.0 * PI * x * t).cos(), &pts, tol / 2.0).value
}

/// Frequency approximation error of a kernel.
pub fn fae<K: Kernel + ?Sized>(kernel: &K) -> FaeReport {
    fae_with_tol(kernel, DEFAULT_TOLERANCE)
}

pub fn fae_with_tol<K: Kernel + ?Sized>(kernel: &K, tol: f64) -> FaeReport {
    let support = kernel.support();
    // Half-integer pieces: classic kernels break at integers, perturbed
    // kernels may also break at half-integers.
    let pts = breakpoints(support as f64, 0.5);
    let e1 = integrate_piecewise(
        |x| {
            let d = kernel.eval(x) - sinc(x);
            d * d
        },
        &pts,
        tol,
    );
    let (e2, e2_err) = tail_with_error(support, TAIL_TOLERANCE.min(tol));
    FaeReport {
        e_total: (2.0 * (e1.value + e2)).sqrt(),
        e1_component: e1.value,
        e2_component: e2,
        quadrature_error_estimate: e1.error_estimate + e2_err,
    }
}

/// `int_L^inf sinc^2 dx = 1/2 - int_0^L sinc^2 dx`.
pub fn sinc_tail(support: usize) -> f64 {
    tail_with_error(support, TAIL_TOLERANCE).0
}

fn tail_with_error(support: usize, tol: f64) -> (f64, f64) {
    if support == 0 {
        return (0.5, 0.0);
    }
    let pts = breakpoints(support as f64, 1.0);
    let head = integrate_piecewise(|x| sinc(x).powi(2), &pts, tol);
    (0.5 - head.value, head.error_estimate)
}

/// Minimal FAE over all kernels of support `L`, computed from the aliasing
/// term: `E_L = sqrt(2 sum_n int_n^{n+1} T_n^2 + 2 tail(L))`.
pub fn optimal_fae(support: usize) -> Result<f64> {
    optimal_fae_with_tol(support, DEFAULT_TOLERANCE)
}

pub fn optimal_fae_with_tol(support: usize, tol: f64) -> Result<f64> {
    if support == 0 {
        return Err(Error::Domain("optimal FAE needs L >= 1".into()));
    }
    let pts = breakpoints(support as f64, 1.0);
    let upper = support as f64;
    let aliasing = integrate_piecewise(
        |x| {
            // the last piece's right endpoint is outside the aliasing domain
            let x = if x >= upper { upper - f64::EPSILON * upper } else { x };
            aliasing_term(support, x).map(|t| t * t).unwrap_or(0.0)
        },
        &pts,
        tol,
    );
    Ok((2.0 * aliasing.value + 2.0 * sinc_tail(support)).sqrt())
}

/// Power-law approximation `0.33 L^-0.5258` of the optimal FAE.
pub fn fae_approx(support: usize) -> f64 {
    FIT_COEFFICIENT * (support as f64).powf(FIT_EXPONENT)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaeRow {
    pub support: usize,
    pub optimal: f64,
    pub approx: f64,
}

impl FaeRow {
    pub fn relative_deviation(&self) -> f64 {
        (self.approx - self.optimal) / self.optimal
    }
}

/// `E_L` and its power-law fit for `L = 1..=max_support`.
pub fn fae_table(max_support: usize, tol: f64) -> Result<Vec<FaeRow>> {
    if max_support == 0 {
        return Err(Error::Domain("Lmax must be at least 1".into()));
    }
    let supports: Vec<usize> = (1..=max_support).collect();
    par::map_slice(&supports, |&l| {
        optimal_fae_with_tol(l, tol).map(|optimal| FaeRow {
            support: l,
            optimal,
            approx: fae_approx(l),
        })
    })
    .into_iter()
    .collect()
}

/// Uniform sweep of the Fourier transform over `[t_min, t_max]`.
pub fn spectrum_sweep(spec: &KernelSpec, t_min: f64, t_max: f64, points: usize) -> Result<SpectrumTable> {
    spectrum_sweep_with_tol(spec, t_min, t_max, points, DEFAULT_TOLERANCE)
}

pub fn spectrum_sweep_with_tol(
    spec: &KernelSpec,
    t_min: f64,
    t_max: f64,
    points: usize,
    tol: f64,
) -> Result<SpectrumTable> {
    if !t_min.is_finite() || !t_max.is_finite() || t_min >= t_max {
        return Err(Error::Domain(format!("need t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if points < 2 {
        return Err(Error::Domain("a spectrum sweep needs at least 2 points".into()));
    }
    let step = (t_max - t_min) / (points - 1) as f64;
    let frequencies: Vec<f64> = (0..points)
        .map(|i| if i + 1 == points { t_max } else { t_min + i as f64 * step })
        .collect();
    let values = par::map_slice(&frequencies, |&t| fourier_transform_with_tol(spec, t, tol));
    Ok(SpectrumTable {
        frequencies,
        values,
        kernel: *spec,
    })
}
