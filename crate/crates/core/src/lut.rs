//! Tabulated kernels and the error bounds that justify them.
//!
//! A table of precision `K` stores `h(i / K)` for `i = 0..=L*K` and answers
//! `h(x)` with the entry nearest to `|x|`. Snapping the argument to the grid is
//! the only distortion: with `|h'| <= gamma`, `|g_K(x) - h(x)| <= gamma / K`.
//! That distortion bound feeds the permissible-resolution estimate
//!
//! `B_0 = -log2(2 (L+1)^D h^D ((1 + gamma / (h K))^D - 1))`,
//!
//! the highest bit depth for which the distorted interpolation stays within
//! half a unit of the exact one.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::kernel::{eval_kernel, Kernel, KernelSpec};
use crate::par;

/// Default cap on the number of table entries.
pub const DEFAULT_MAX_ENTRIES: u64 = 100_000_000;

pub const TABLE_MAGIC: [u8; 4] = *b"L2KT";
pub const TABLE_VERSION: u16 = 1;
pub const TABLE_HEADER_LEN: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    /// `None` for tables read back from disk.
    source: Option<KernelSpec>,
    precision_k: u32,
    support: usize,
    entries: Vec<f64>,
}

/// Tabulates `spec` at `K` entries per unit interval.
pub fn tabulate(spec: &KernelSpec, precision_k: u32) -> Result<KernelTable> {
    tabulate_with_cap(spec, precision_k, DEFAULT_MAX_ENTRIES)
}

pub fn tabulate_with_cap(spec: &KernelSpec, precision_k: u32, max_entries: u64) -> Result<KernelTable> {
    if precision_k == 0 {
        return Err(Error::Domain("table precision K must be at least 1".into()));
    }
    let support = spec.support();
    let len = support as u64 * precision_k as u64 + 1;
    if len > max_entries {
        return Err(Error::Resource { requested: len, cap: max_entries });
    }
    let k = precision_k as f64;
    let entries = par::map_range(len as usize, |i| eval_kernel(spec, i as f64 / k));
    Ok(KernelTable {
        source: Some(*spec),
        precision_k,
        support,
        entries,
    })
}

impl KernelTable {
    pub fn source(&self) -> Option<&KernelSpec> {
        self.source.as_ref()
    }

    pub fn precision_k(&self) -> u32 {
        self.precision_k
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Bytes occupied by the entries.
    pub fn memory_bytes(&self) -> usize {
        self.entries.len() * std::mem::size_of::<f64>()
    }

    /// Nearest-entry lookup; `round` breaks ties away from zero.
    #[inline]
    pub fn lookup(&self, x: f64) -> f64 {
        let i = (x.abs() * self.precision_k as f64).round();
        if i < self.entries.len() as f64 {
            self.entries[i as usize]
        } else {
            0.0
        }
    }

    /// Serializes to the `L2KT` binary layout: 16-byte header followed by
    /// little-endian doubles.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(TABLE_HEADER_LEN + self.memory_bytes());
        out.extend_from_slice(&TABLE_MAGIC);
        out.extend_from_slice(&TABLE_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.support as u16).to_le_bytes());
        out.extend_from_slice(&self.precision_k.to_le_bytes());
        out.extend_from_slice(&0u32.to_le_bytes());
        for v in &self.entries {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < TABLE_HEADER_LEN {
            return Err(Error::Format("table shorter than its header".into()));
        }
        if bytes[..4] != TABLE_MAGIC {
            return Err(Error::Format("bad table magic".into()));
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != TABLE_VERSION {
            return Err(Error::Format(format!("unsupported table version {version}")));
        }
        let support = u16::from_le_bytes([bytes[6], bytes[7]]) as usize;
        let precision_k = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
        if support == 0 || precision_k == 0 {
            return Err(Error::Format("table header has zero L or K".into()));
        }
        let len = support * precision_k as usize + 1;
        let body = &bytes[TABLE_HEADER_LEN..];
        if body.len() != len * 8 {
            return Err(Error::Format(format!(
                "table body has {} bytes, expected {}",
                body.len(),
                len * 8
            )));
        }
        let entries = body
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Self {
            source: None,
            precision_k,
            support,
            entries,
        })
    }

    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let bytes = self.to_bytes();
        write_atomic(path, |w| w.write_all(&bytes))
    }

    pub fn read_binary(path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        fs::File::open(path)?.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }

    /// `index,x,value` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut w = BufWriter::new(w);
        writeln!(w, "index,x,value")?;
        let k = self.precision_k as f64;
        for (i, v) in self.entries.iter().enumerate() {
            writeln!(w, "{i},{:.16e},{:.16e}", i as f64 / k, v)?;
        }
        w.flush()
    }
}

impl Kernel for KernelTable {
    fn support(&self) -> usize {
        self.support
    }

    #[inline]
    fn eval(&self, x: f64) -> f64 {
        self.lookup(x)
    }
}

/// Tabulated lookup, `g_K(x) = h(round(|x| K) / K)`.
pub fn lut_eval(table: &KernelTable, x: f64) -> f64 {
    table.lookup(x)
}

/// Inputs of the permissible-resolution bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolutionParams {
    pub support_l: u32,
    pub dimension_d: u32,
    /// Upper bound on `|h|`.
    pub h_bound: f64,
    /// Upper bound on `|h'|`.
    pub gamma_bound: f64,
    pub precision_k: u64,
}

impl ResolutionParams {
    pub fn validate(&self) -> Result<()> {
        if self.support_l == 0 || self.dimension_d == 0 || self.precision_k == 0 {
            return Err(Error::Domain("L, D and K must be at least 1".into()));
        }
        if !self.h_bound.is_finite() || self.h_bound <= 0.0 {
            return Err(Error::Domain("h must be positive and finite".into()));
        }
        if !self.gamma_bound.is_finite() || self.gamma_bound < 0.0 {
            return Err(Error::Domain("gamma must be nonnegative and finite".into()));
        }
        Ok(())
    }

    pub fn with_precision(self, precision_k: u64) -> Self {
        Self { precision_k, ..self }
    }
}

/// Permissible signal resolution `B_0` in bits. May be negative.
///
/// Returns `f64::INFINITY` (unbounded) when `gamma = 0`, where tabulation
/// introduces no distortion.
pub fn permissible_resolution(p: &ResolutionParams) -> Result<f64> {
    p.validate()?;
    if p.gamma_bound == 0.0 {
        return Ok(f64::INFINITY);
    }
    let d = p.dimension_d as i32;
    let u = p.gamma_bound / (p.h_bound * p.precision_k as f64);
    // (1 + u)^D - 1 without cancellation for small u
    let growth = (d as f64 * u.ln_1p()).exp_m1();
    let scale = 2.0 * ((p.support_l + 1) as f64).powi(d) * p.h_bound.powi(d);
    Ok(-(scale * growth).log2())
}

/// Large-`K` form: `log2 K - log2(2 (L+1)^D h^(D-1) D gamma)`.
pub fn asymptotic_resolution(p: &ResolutionParams) -> Result<f64> {
    p.validate()?;
    if p.gamma_bound == 0.0 {
        return Ok(f64::INFINITY);
    }
    let d = p.dimension_d as i32;
    let denom = 2.0 * ((p.support_l + 1) as f64).powi(d) * p.h_bound.powi(d - 1) * d as f64 * p.gamma_bound;
    Ok((p.precision_k as f64).log2() - denom.log2())
}

/// Smallest `K` with `permissible_resolution >= target_bits`.
pub fn min_table_precision(
    support_l: u32,
    dimension_d: u32,
    h_bound: f64,
    gamma_bound: f64,
    target_bits: u32,
) -> Result<u64> {
    if target_bits == 0 {
        return Err(Error::Domain("target bits must be at least 1".into()));
    }
    let params = ResolutionParams {
        support_l,
        dimension_d,
        h_bound,
        gamma_bound,
        precision_k: 1,
    };
    params.validate()?;
    if gamma_bound == 0.0 {
        return Ok(1);
    }
    let d = dimension_d as f64;
    let scale = 2.0 * ((support_l + 1) as f64).powf(d) * h_bound.powf(d);
    // (1 + gamma/(hK))^D <= 1 + 2^-B / scale
    let c = (-(target_bits as f64)).exp2() / scale;
    let root = (c.ln_1p() / d).exp_m1();
    let estimate = (gamma_bound / (h_bound * root)).ceil();
    if !estimate.is_finite() || estimate > u64::MAX as f64 / 4.0 {
        return Err(Error::Domain("required table precision overflows".into()));
    }
    let reaches = |k: u64| -> Result<bool> {
        Ok(permissible_resolution(&params.with_precision(k))? >= target_bits as f64)
    };
    let mut k = (estimate as u64).max(1);
    while !reaches(k)? {
        k += 1;
    }
    while k > 1 && reaches(k - 1)? {
        k -= 1;
    }
    Ok(k)
}

/// Bound on a perturbed product: `(h + e)^D - h^D`.
pub fn product_perturbation_bound(h_bound: f64, e_bound: f64, dimension_d: u32) -> Result<f64> {
    if h_bound < 0.0 || e_bound < 0.0 || dimension_d == 0 {
        return Err(Error::Domain("need h >= 0, e >= 0 and D >= 1".into()));
    }
    let d = dimension_d as i32;
    Ok((h_bound + e_bound).powi(d) - h_bound.powi(d))
}

/// Bound on `|J - J'|` when every kernel value is distorted by at most `e`
/// and samples are bounded by `M`: `M (L+1)^D ((h + e)^D - h^D)`.
pub fn distorted_interpolation_bound(
    sample_bound_m: f64,
    support_l: u32,
    dimension_d: u32,
    h_bound: f64,
    e_bound: f64,
) -> Result<f64> {
    if sample_bound_m.is_nan() || sample_bound_m <= 0.0 || support_l == 0 || h_bound.is_nan() || h_bound <= 0.0 || e_bound.is_nan() || e_bound < 0.0 {
        return Err(Error::Domain("need M > 0, L >= 1, h > 0 and e >= 0".into()));
    }
    let product = product_perturbation_bound(h_bound, e_bound, dimension_d)?;
    Ok(sample_bound_m * ((support_l + 1) as f64).powi(dimension_d as i32) * product)
}
