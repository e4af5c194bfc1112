//! Exact-rational affine maps about a center point.
//!
//! `T(p) = A (p - c) + c` with `A` a 2x2 rational matrix. Composition and
//! inversion are exact, so a chain that is algebraically the identity
//! composes to exactly the identity matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or an integer into a reduced pair with positive denominator.
pub fn parse_rational(s: &str) -> Result<(i64, i64)> {
    let err = || Error::Parse(format!("invalid rational `{s}`, expected p/q"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| err())?, q.trim().parse::<i64>().map_err(|_| err())?),
        None => (s.trim().parse::<i64>().map_err(|_| err())?, 1),
    };
    if q == 0 {
        return Err(Error::Domain(format!("zero denominator in `{s}`")));
    }
    let g = p.gcd(&q).max(1);
    let sign = if q < 0 { -1 } else { 1 };
    Ok((sign * p / g, sign * q / g))
}

#[derive(Clone, PartialEq, Eq)]
pub struct AffineTransform2D {
    /// Row-major `[[a, b], [c, d]]`.
    matrix: [[Rational; 2]; 2],
    center: [Rational; 2],
}

impl fmt::Debug for AffineTransform2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(
            f,
            "Affine[({}, {}; {}, {}) about ({}, {})]",
            m[0][0], m[0][1], m[1][0], m[1][1], self.center[0], self.center[1]
        )
    }
}

impl AffineTransform2D {
    pub fn new(matrix: [[Rational; 2]; 2], center: [Rational; 2]) -> Result<Self> {
        let t = Self { matrix, center };
        if t.determinant().is_zero() {
            return Err(Error::Domain("affine matrix is singular".into()));
        }
        Ok(t)
    }

    pub fn identity() -> Self {
        Self {
            matrix: [[Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]],
            center: [Rational::zero(), Rational::zero()],
        }
    }

    /// Uniform zoom `z -> f z` with `f = num / den`.
    pub fn zoom(num: i64, den: i64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Domain("zoom factor needs nonzero numerator and denominator".into()));
        }
        let f = ratio(num, den);
        Ok(Self {
            matrix: [[f.clone(), Rational::zero()], [Rational::zero(), f]],
            center: [Rational::zero(), Rational::zero()],
        })
    }

    /// Rotation with `sin = sin_num / hyp` and rational cosine, which exists
    /// only when `hyp^2 - sin_num^2` is a perfect square.
    pub fn rotation_pythagorean(sin_num: i64, hyp: i64) -> Result<Self> {
        if hyp == 0 || sin_num.unsigned_abs() > hyp.unsigned_abs() {
            return Err(Error::Domain(format!("{sin_num}/{hyp} is not a sine")));
        }
        let rest = (hyp as i128).pow(2) - (sin_num as i128).pow(2);
        let cos_num = rest.sqrt();
        if cos_num * cos_num != rest {
            return Err(Error::Domain(format!(
                "({sin_num}, {hyp}) is not part of a Pythagorean triple"
            )));
        }
        let hyp_abs = hyp.abs();
        let sin = ratio(sin_num * hyp.signum(), hyp_abs);
        let cos = ratio(cos_num as i64, hyp_abs);
        Ok(Self {
            matrix: [[cos.clone(), -sin.clone()], [sin, cos]],
            center: [Rational::zero(), Rational::zero()],
        })
    }

    pub fn with_center(mut self, cx: Rational, cy: Rational) -> Self {
        self.center = [cx, cy];
        self
    }

    /// Center at pixel `((w - 1) / 2, (h - 1) / 2)`.
    pub fn centered_on(self, width: usize, height: usize) -> Self {
        self.with_center(ratio(width as i64 - 1, 2), ratio(height as i64 - 1, 2))
    }

    pub fn matrix(&self) -> &[[Rational; 2]; 2] {
        &self.matrix
    }

    pub fn center(&self) -> &[Rational; 2] {
        &self.center
    }

    pub fn determinant(&self) -> Rational {
        let m = &self.matrix;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn inverse(&self) -> Self {
        let det = self.determinant();
        let m = &self.matrix;
        Self {
            matrix: [
                [&m[1][1] / &det, -(&m[0][1] / &det)],
                [-(&m[1][0] / &det), &m[0][0] / &det],
            ],
            center: self.center.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first. Both must share a center.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.center != other.center {
            return Err(Error::Domain("composed transforms must share a center".into()));
        }
        let (a, b) = (&self.matrix, &other.matrix);
        let cell = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Ok(Self {
            matrix: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
            center: self.center.clone(),
        })
    }

    pub fn is_identity(&self) -> bool {
        let m = &self.matrix;
        m[0][0].is_one() && m[1][1].is_one() && m[0][1].is_zero() && m[1][0].is_zero()
    }

    /// Maps destination pixels to source coordinates through the exact inverse.
    pub fn source_map(&self) -> SourceMap {
        SourceMap::new(&self.inverse())
    }
}

/// `src = B (p - c) + c` written over a common denominator so that each
/// coordinate is an exact integer numerator divided once in floating point.
#[derive(Debug, Clone)]
pub struct SourceMap {
    exact: Option<ExactMap>,
    /// `[x: (bx, by, offset), y: (...)]`, used when numerators overflow.
    rational: [[Rational; 3]; 2],
}

#[derive(Debug, Clone, Copy)]
struct ExactMap {
    coef: [[i128; 3]; 2],
    den: i128,
}

/// Integers below this magnitude convert to `f64` exactly.
const EXACT_F64: i128 = 1 << 53;

impl SourceMap {
    fn new(inv: &AffineTransform2D) -> Self {
        let m = &inv.matrix;
        let c = &inv.center;
        let offset = |row: usize| &c[row] - &m[row][0] * &c[0] - &m[row][1] * &c[1];
        let rational = [
            [m[0][0].clone(), m[0][1].clone(), offset(0)],
            [m[1][0].clone(), m[1][1].clone(), offset(1)],
        ];
        let den = rational
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let exact = (|| {
            let mut coef = [[0i128; 3]; 2];
            for (row, src) in coef.iter_mut().zip(&rational) {
                for (dst, r) in row.iter_mut().zip(src) {
                    *dst = (r.numer() * (&den / r.denom())).to_i128()?;
                }
            }
            Some(ExactMap { coef, den: den.to_i128()? })
        })();
        Self { exact, rational }
    }

    /// Source coordinate of destination pixel `(x, y)`.
    pub fn source(&self, x: i64, y: i64) -> (f64, f64) {
        if let Some(e) = &self.exact {
            let eval = |row: &[i128; 3]| -> Option<f64> {
                let num = row[0]
                    .checked_mul(x as i128)?
                    .checked_add(row[1].checked_mul(y as i128)?)?
                    .checked_add(row[2])?;
                (num.abs() < EXACT_F64 && e.den < EXACT_F64).then(|| num as f64 / e.den as f64)
            };
            if let (Some(sx), Some(sy)) = (eval(&e.coef[0]), eval(&e.coef[1])) {
                return (sx, sy);
            }
        }
        let eval = |row: &[Rational; 3]| -> f64 {
            let v = &row[0] * BigInt::from(x) + &row[1] * BigInt::from(y) + &row[2];
            v.to_f64().unwrap_or(f64::NAN)
        };
        (eval(&self.rational[0]), eval(&self.rational[1]))
    }
}

impl fmt::Display for AffineTransform2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
