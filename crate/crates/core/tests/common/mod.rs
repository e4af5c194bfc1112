//! Reference implementations shared by the integration tests. Nothing here
//! calls into the library's kernel code, so agreement is a real cross-check.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;

#[allow(clippy::excessive_precision)]
pub mod reference {
    include!("../fixtures/reference.rs");
}

/// Plain `sin(pi x) / (pi x)` with no argument reduction.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Hand-expanded closed forms of the optimal kernels for `L = 1, 2, 3`.
pub fn explicit_optimal(support: usize, x: f64) -> f64 {
    let x = x.abs();
    let s = sinc;
    match support {
        1 if x <= 1.0 => 0.5 * (1.0 + s(x) - s(1.0 - x)),
        2 if x <= 1.0 => 0.25 * (1.0 + 3.0 * s(x) - s(1.0 - x) - s(1.0 + x) - s(2.0 - x)),
        2 if x <= 2.0 => 0.25 * (1.0 + 3.0 * s(x) - s(1.0 - x) - s(2.0 - x) - s(3.0 - x)),
        3 if x <= 1.0 => {
            (1.0 + 5.0 * s(x) - s(1.0 - x) - s(1.0 + x) - s(2.0 - x) - s(2.0 + x) - s(3.0 - x)) / 6.0
        }
        3 if x <= 2.0 => {
            (1.0 + 5.0 * s(x) - s(1.0 - x) - s(1.0 + x) - s(2.0 - x) - s(3.0 - x) - s(4.0 - x)) / 6.0
        }
        3 if x <= 3.0 => {
            (1.0 + 5.0 * s(x) - s(1.0 - x) - s(2.0 - x) - s(3.0 - x) - s(4.0 - x) - s(5.0 - x)) / 6.0
        }
        1..=3 => 0.0,
        _ => panic!("no explicit form for L = {support}"),
    }
}

/// Full double sum over every pixel with zeros outside the grid, no windowing.
pub fn brute_force_2d(
    samples: &[f64],
    width: usize,
    height: usize,
    x: f64,
    y: f64,
    h: impl Fn(f64) -> f64,
) -> f64 {
    let mut acc = 0.0;
    for k in 0..width {
        for n in 0..height {
            acc += samples[n * width + k] * h(x - k as f64) * h(y - n as f64);
        }
    }
    acc
}

/// A symmetric, `L`-supported function that vanishes at every integer and
/// sums to zero over integer shifts, so adding it to an interpolating kernel
/// keeps the kernel interpolating.
///
/// On segment `j` (local coordinate `t = |x| - j`) it is
/// `sum_m a[j][m] sin(2 pi (m+1) t) + sum_m b[j][m] sin(pi (2m+1) t)` with
/// `sum_j b[j][m] = 0`. The first family is odd about `t = 1/2` and cancels
/// against its mirror image; the second is even and cancels across segments.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub support: usize,
    pub odd: Vec<Vec<f64>>,
    pub even: Vec<Vec<f64>>,
}

impl Perturbation {
    pub fn random<R: Rng>(support: usize, harmonics: usize, scale: f64, rng: &mut R) -> Self {
        let odd = (0..support)
            .map(|_| (0..harmonics).map(|_| rng.gen_range(-scale..scale)).collect())
            .collect();
        let mut even: Vec<Vec<f64>> = (0..support)
            .map(|_| (0..harmonics).map(|_| rng.gen_range(-scale..scale)).collect())
            .collect();
        for m in 0..harmonics {
            let mean = even.iter().map(|row| row[m]).sum::<f64>() / support as f64;
            for row in &mut even {
                row[m] -= mean;
            }
        }
        Self { support, odd, even }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        if x >= self.support as f64 {
            return 0.0;
        }
        let j = x.floor() as usize;
        let t = x - j as f64;
        let odd: f64 = self.odd[j]
            .iter()
            .enumerate()
            .map(|(m, a)| a * (2.0 * PI * (m + 1) as f64 * t).sin())
            .sum();
        let even: f64 = self.even[j]
            .iter()
            .enumerate()
            .map(|(m, b)| b * (PI * (2 * m + 1) as f64 * t).sin())
            .sum();
        odd + even
    }
}

/// Independent FAE by composite Simpson on a fine grid, for cross-checks that
/// do not need full quadrature accuracy.
pub fn simpson_fae(h: impl Fn(f64) -> f64, support: usize, per_unit: usize) -> f64 {
    let simpson = |f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize| {
        let step = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * step);
        }
        s * step / 3.0
    };
    let mut e1 = 0.0;
    let mut inside = 0.0;
    for seg in 0..2 * support {
        let a = seg as f64 * 0.5;
        e1 += simpson(&|x| (h(x) - sinc(x)).powi(2), a, a + 0.5, per_unit);
        inside += simpson(&|x| sinc(x).powi(2), a, a + 0.5, per_unit);
    }
    (2.0 * (e1 + 0.5 - inside)).sqrt()
}

/// Largest `|sum_n h(s - n) e^{-i w n}|` over shifts `s in [0, 1]` and
/// frequencies `w in [0, pi]`: the per-pass gain of a shift-by-`s` resampler.
pub fn max_shift_gain(h: impl Fn(f64) -> f64, support: usize, steps: usize) -> f64 {
    let l = support as i64;
    let mut worst = 0.0f64;
    for si in 0..=steps {
        let s = si as f64 / steps as f64;
        for wi in 0..=steps {
            let w = PI * wi as f64 / steps as f64;
            let (mut re, mut im) = (0.0, 0.0);
            for n in -l - 1..=l + 1 {
                let v = h(s - n as f64);
                re += v * (w * n as f64).cos();
                im -= v * (w * n as f64).sin();
            }
            worst = worst.max(re.hypot(im));
        }
    }
    worst
}
