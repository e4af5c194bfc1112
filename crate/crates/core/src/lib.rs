//! L2-optimal interpolation kernels and the tooling around them.
//!
//! The crate is organised bottom-up:
//!
//! * [`kernel`]: classic piecewise-polynomial kernels, the sinc ideal and the
//!   L2-optimal family `H_L`, plus checks of the interpolating conditions.
//! * [`spectral`]: Fourier transforms and the frequency approximation error.
//! * [`lut`]: tabulated kernels and the permissible-resolution bounds.
//! * [`transform`] and [`resample`]: exact-rational affine maps and separable
//!   resampling with any [`Kernel`] backend.
//! * [`phantom`]: the edge-phantom rotate/zoom round-trip benchmark.
//! * [`cli`]: the command-line front end.
//!
//! With the default `parallel` feature, per-pixel and per-kernel loops run on
//! rayon. Results are bitwise identical to the sequential build.

pub mod cli;
pub mod error;
pub mod io;
pub mod kernel;
pub mod lut;
pub mod par;
pub mod phantom;
pub mod quadrature;
pub mod resample;
pub mod spectral;
pub mod transform;

pub use error::{Error, Result};
pub use kernel::{eval_kernel, sinc, Kernel, KernelKind, KernelSpec};
pub use lut::KernelTable;
pub use resample::{BoundaryPolicy, Image2D, Signal1D};
pub use transform::AffineTransform2D;
