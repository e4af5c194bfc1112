//! Image and table file formats: PGM (P2/P5), PPM (P6), raw `.f64` and
//! atomic file replacement.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::resample::Image2D;

/// Writes through a temporary file in the destination directory and renames
/// it into place, so readers never see a partial file.
pub fn write_atomic<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        write(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// A grayscale image read from a PGM file.
#[derive(Debug, Clone, PartialEq)]
pub struct Pgm {
    pub image: Image2D,
    pub maxval: u16,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmEncoding {
    /// P2
    Ascii,
    /// P5
    Binary,
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<&'a str> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Format("unexpected end of PGM data".into()));
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).map_err(|_| Error::Format("non-ASCII PGM header".into()))
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| Error::Format(format!("invalid {what} `{tok}` in PGM")))
    }
}

/// Parses a P2 or P5 graymap with maxval up to 65535.
pub fn parse_pgm(bytes: &[u8]) -> Result<Pgm> {
    let mut h = Header { bytes, pos: 0 };
    let magic = h.token()?;
    let encoding = match magic {
        "P2" => PgmEncoding::Ascii,
        "P5" => PgmEncoding::Binary,
        _ => return Err(Error::Format(format!("not a PGM file (magic `{magic}`)"))),
    };
    let width = h.number("width")? as usize;
    let height = h.number("height")? as usize;
    let maxval = h.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Format("PGM has zero size".into()));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Format(format!("PGM maxval {maxval} out of range")));
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| Error::Format("PGM dimensions overflow".into()))?;
    let mut samples = Vec::with_capacity(n);
    match encoding {
        PgmEncoding::Ascii => {
            for _ in 0..n {
                let v = h.number("sample")?;
                if v > maxval {
                    return Err(Error::Format(format!("sample {v} exceeds maxval {maxval}")));
                }
                samples.push(v as f64);
            }
        }
        PgmEncoding::Binary => {
            // exactly one whitespace byte separates maxval from the raster
            let start = h.pos + 1;
            let width_bytes = if maxval > 255 { 2 } else { 1 };
            let raster = bytes
                .get(start..start + n * width_bytes)
                .ok_or_else(|| Error::Format("truncated PGM raster".into()))?;
            for chunk in raster.chunks_exact(width_bytes) {
                let v = if width_bytes == 2 {
                    u16::from_be_bytes([chunk[0], chunk[1]]) as u32
                } else {
                    chunk[0] as u32
                };
                if v > maxval {
                    return Err(Error::Format(format!("sample {v} exceeds maxval {maxval}")));
                }
                samples.push(v as f64);
            }
        }
    }
    let bits = bits_for_maxval(maxval as u16);
    let image = Image2D::with_bits(width, height, samples, bits)?;
    Ok(Pgm { image, maxval: maxval as u16 })
}

/// Bit depth `B` when `maxval = 2^B - 1`.
fn bits_for_maxval(maxval: u16) -> Option<u32> {
    let m = maxval as u32 + 1;
    m.is_power_of_two().then(|| m.trailing_zeros())
}

pub fn read_pgm(path: &Path) -> Result<Pgm> {
    parse_pgm(&fs::read(path)?)
}

/// Samples are rounded to the nearest integer and clamped to `[0, maxval]`.
pub fn encode_pgm(image: &Image2D, maxval: u16, encoding: PgmEncoding) -> Vec<u8> {
    let maxval = maxval.max(1);
    let quantize = |v: f64| -> u16 { v.round().clamp(0.0, maxval as f64) as u16 };
    let magic = match encoding {
        PgmEncoding::Ascii => "P2",
        PgmEncoding::Binary => "P5",
    };
    let mut out = format!("{magic}\n{} {}\n{maxval}\n", image.width(), image.height()).into_bytes();
    match encoding {
        PgmEncoding::Ascii => {
            for row in image.samples().chunks(image.width()) {
                let line: Vec<String> = row.iter().map(|&v| quantize(v).to_string()).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
        PgmEncoding::Binary => {
            for &v in image.samples() {
                let q = quantize(v);
                if maxval > 255 {
                    out.extend_from_slice(&q.to_be_bytes());
                } else {
                    out.push(q as u8);
                }
            }
        }
    }
    out
}

pub fn write_pgm(path: &Path, image: &Image2D, maxval: u16, encoding: PgmEncoding) -> Result<()> {
    let bytes = encode_pgm(image, maxval, encoding);
    write_atomic(path, |w| w.write_all(&bytes))
}

/// 8-bit RGB raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[u8; 3]>,
}

pub fn encode_ppm(image: &RgbImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", image.width, image.height).into_bytes();
    for p in &image.pixels {
        out.extend_from_slice(p);
    }
    out
}

pub fn write_ppm(path: &Path, image: &RgbImage) -> Result<()> {
    let bytes = encode_ppm(image);
    write_atomic(path, |w| w.write_all(&bytes))
}

/// Raw real image: `u32` width, `u32` height, then row-major doubles, all
/// little-endian.
pub fn encode_f64(image: &Image2D) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 8 * image.samples().len());
    out.extend_from_slice(&(image.width() as u32).to_le_bytes());
    out.extend_from_slice(&(image.height() as u32).to_le_bytes());
    for v in image.samples() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_f64(bytes: &[u8]) -> Result<Image2D> {
    if bytes.len() < 8 {
        return Err(Error::Format("raw image shorter than its header".into()));
    }
    let width = u32::from_le_bytes(bytes[0..4].try_into().unwrap()) as usize;
    let height = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let body = &bytes[8..];
    if body.len() != width * height * 8 {
        return Err(Error::Format(format!(
            "raw image body has {} bytes, expected {}",
            body.len(),
            width * height * 8
        )));
    }
    let samples = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Image2D::new(width, height, samples)
}

pub fn write_f64(path: &Path, image: &Image2D) -> Result<()> {
    let bytes = encode_f64(image);
    write_atomic(path, |w| w.write_all(&bytes))
}

pub fn read_f64(path: &Path) -> Result<Image2D> {
    decode_f64(&fs::read(path)?)
}
