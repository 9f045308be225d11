//! Euler-characteristic integration on finite geometric simplicial complexes.
//!
//! Integrands come in two flavours:
//!
//! * [`cf::CFun`]: constructible functions, one integer per open cell, integrated
//!   against the ordinary Euler measure `dχ`.
//! * [`defint::DefFun`]: real-valued functions that are affine on every open cell
//!   (continuous piecewise-linear functions, constructible functions, and
//!   discontinuous cell-wise affine functions all fit). These are integrated
//!   against the lower and upper measures `⌊dχ⌋` / `⌈dχ⌉` and their average `[dχ]`.
//!
//! All arithmetic is exact ([`Rational`] is an arbitrary-precision rational), so
//! the many identities between integrals are checked by equality rather than by
//! tolerance.
//!
//! Batch operations run on rayon when the `parallel` feature is enabled (the
//! default); see [`Exec`].

pub mod cf;
pub mod complex;
pub mod defint;
mod error;
mod exec;
mod lp;
pub mod morse;
pub mod planar;
mod rational;
pub mod sensor;
pub mod transforms;


pub use cf::{CFun, SimplicialMap};
pub use defint::{DefFun, Excursion, Measure};
pub use complex::{CellId, SimplicialComplex, VertexId};

pub use error::{Error, Result};
pub use exec::Exec;
pub use rational::{parse_rational, rat, to_f64, Rational};
