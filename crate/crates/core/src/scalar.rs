//! Scalar abstractions shared by the numeric modules.
//!
//! Two tiers are used. [`Coeff`] is a ring element with an absolute value and an
//! ordering; it is all that truncated power-series arithmetic and series
//! determinants need, so those also run over exact rationals. [`Real`] adds the
//! floating-point operations needed by root finding, contour integration and
//! discrepancy computation.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed};

pub trait Coeff: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync {}

impl<T> Coeff for T where T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync {}

pub trait Real: Coeff + Float + FloatConst + Copy + 'static {
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }
}

impl<T> Real for T where T: Coeff + Float + FloatConst + Copy + 'static {}
