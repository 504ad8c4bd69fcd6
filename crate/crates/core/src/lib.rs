//! Van der Corput sequences generated by piecewise-linear expanding maps.
//!
//! The points of a sequence are the preimages `wx` of a base point `x` under
//! admissible words `w`, enumerated in a sign-twisted length-major order. The
//! crate also computes the spectral data that certifies such a sequence is
//! equidistributed (transfer operator, Fredholm determinant, dynamical zeta
//! function), the two- and three-dimensional bit-mixing constructions, and
//! exact or dyadic discrepancies for measuring the result.

// Elimination and recurrence loops read more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod bits;
pub mod discrepancy;
pub mod error;
pub mod interval_maps;
pub mod multidim;
pub mod scalar;
pub mod spectral;
pub mod vdc1d;

pub use bits::{BitString, Gf2Matrix, LabeledMatrix};
pub use error::{Error, Result};
pub use interval_maps::{PLMap, Word};
pub use scalar::{Coeff, Real};

pub type Series = spectral::PowerSeries<f64>;
pub type ExactSeries = spectral::PowerSeries<num_rational::BigRational>;
pub type Fredholm = spectral::FredholmSeries<f64>;
