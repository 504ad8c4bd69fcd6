//! Digit-level van der Corput constructions in the unit square and cube.
//!
//! Points are per-coordinate [`BitString`]s at a common precision. Level `n`
//! preimages are labelled by the leading digit tuples chosen at each inverse
//! step and emitted in radical-inverse order of the interleaved label bits:
//! bit `d(j-1) + c` of the emission index is the coordinate-`c` digit chosen
//! `j - 1` steps before the last one.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::bits::BitString;
use crate::error::{usage, Error, Result};

mod mix;
mod plane;
mod space;

pub use mix::{
    col_index, minor_failures, minor_test_3d, row_index, MLabel, MinorFamily, MixMatrix, M_COLS,
    M_DEPTH, M_ROWS, STORED_CHECKSUM,
};
pub use plane::{map2d_forward, map2d_inverse, map2d_level, rect_image_test_2d, span_test_2d};
pub use space::{map3d_forward, map3d_inverse, map3d_level, rect_image_test_3d, BoxShape, Reading};

/// Cap on the number of points in one level or one grid test.
pub const DEFAULT_POINT_BUDGET: usize = 1 << 22;

pub type Point2D = [BitString; 2];
pub type Point3D = [BitString; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
    pub const PERMUTATIONS: [[Axis; 3]; 6] = [
        [Axis::X, Axis::Y, Axis::Z],
        [Axis::X, Axis::Z, Axis::Y],
        [Axis::Y, Axis::X, Axis::Z],
        [Axis::Y, Axis::Z, Axis::X],
        [Axis::Z, Axis::X, Axis::Y],
        [Axis::Z, Axis::Y, Axis::X],
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Digit `p ≥ 1` of `s₁`: one exactly at `p = 2^k - 1`.
pub fn s1_bit(p: usize) -> bool {
    p >= 1 && (p + 1).is_power_of_two()
}

/// `θ^shift s₁` truncated to `precision` digits.
pub fn s1(precision: usize, shift: usize) -> BitString {
    let mut b = BitString::zeros(precision);
    for i in 1..=precision {
        b.set(i, s1_bit(i + shift));
    }
    b
}

/// `s₀` or `s₁` selected by a digit.
pub(crate) fn s_of(bit: bool, precision: usize) -> BitString {
    if bit {
        s1(precision, 0)
    } else {
        BitString::zeros(precision)
    }
}

pub fn to_unit<const D: usize>(p: &[BitString; D]) -> [f64; D] {
    std::array::from_fn(|c| p[c].to_unit())
}

pub(crate) fn check_precision<const D: usize>(p: &[BitString; D]) -> Result<usize> {
    let prec = p[0].precision();
    if p.iter().any(|c| c.precision() != prec) {
        return Err(usage!("coordinates have different precisions"));
    }
    Ok(prec)
}

pub(crate) fn check_budget(count: u128, budget: usize, what: &str) -> Result<usize> {
    if count > budget as u128 {
        return Err(Error::Resource(format!(
            "{what} needs {count} points, budget {budget}"
        )));
    }
    Ok(count as usize)
}

/// Digits `1..=len` of a dyadic corner `α = k / 2^len` with `0 ≤ k < 2^len`.
pub(crate) fn corner_digits(alpha: f64, len: usize) -> Result<Vec<bool>> {
    if len > 52 {
        return Err(usage!("side 2^-{len} is below double resolution"));
    }
    let scaled = alpha * (1u64 << len) as f64;
    if !(0.0..(1u64 << len) as f64).contains(&scaled) || scaled.fract() != 0.0 {
        return Err(usage!(
            "corner {alpha} is not a multiple of 2^-{len} inside [0,1)"
        ));
    }
    let k = scaled as u64;
    Ok((1..=len).map(|i| (k >> (len - i)) & 1 == 1).collect())
}

/// Grid bijectivity of a digit map on a dyadic box.
///
/// Coordinate `c` of the box fixes digits `corners[c]`; representatives carry
/// every completion up to `resolution` digits followed by zeros. The image of
/// each representative, read to `resolution - consumed` digits, must hit each
/// cell of that grid exactly once.
pub(crate) fn grid_bijective<const D: usize>(
    corners: &[Vec<bool>; D],
    resolution: usize,
    consumed: usize,
    precision: usize,
    budget: usize,
    forward: impl Fn(&[BitString; D]) -> Result<[BitString; D]>,
) -> Result<bool> {
    if resolution < consumed || resolution > 63 || resolution > precision {
        return Err(usage!(
            "grid resolution {resolution} incompatible with {consumed} consumed digits"
        ));
    }
    let free: [usize; D] = std::array::from_fn(|c| resolution - corners[c].len());
    let total_free: usize = free.iter().sum();
    let target = resolution - consumed;
    if total_free != D * target {
        return Err(usage!("box volume does not match the image grid"));
    }
    let count = check_budget(1u128 << total_free, budget, "grid test")?;
    let mut seen = vec![false; count];
    for i in 0..count {
        let mut rest = i;
        let p: [BitString; D] = std::array::from_fn(|c| {
            let mut b = BitString::zeros(precision);
            for (j, &d) in corners[c].iter().enumerate() {
                b.set(j + 1, d);
            }
            for j in 0..free[c] {
                b.set(corners[c].len() + j + 1, rest & 1 == 1);
                rest >>= 1;
            }
            b
        });
        let img = forward(&p)?;
        let mut cell = 0usize;
        for b in &img {
            cell = (cell << target) | b.prefix_value(target) as usize;
        }
        if std::mem::replace(&mut seen[cell], true) {
            return Ok(false);
        }
    }
    Ok(seen.into_iter().all(|s| s))
}

/// Levels `0..=max_level` of the 2D construction from `base`, concatenated.
pub fn sequence_2d(base: &Point2D, max_level: usize, budget: usize) -> Result<Vec<Point2D>> {
    let mut out = Vec::new();
    for n in 0..=max_level {
        out.extend(map2d_level(base, n, budget.saturating_sub(out.len()))?);
    }
    Ok(out)
}

/// Levels `0..=max_level` of the 3D construction from `base`, concatenated.
pub fn sequence_3d(
    mix: &MixMatrix,
    base: &Point3D,
    max_level: usize,
    reading: Reading,
    budget: usize,
) -> Result<Vec<Point3D>> {
    let mut out = Vec::new();
    for n in 0..=max_level {
        out.extend(map3d_level(
            mix,
            base,
            n,
            reading,
            budget.saturating_sub(out.len()),
        )?);
    }
    Ok(out)
}

/// Whether the points are pairwise distinct on their stored digits.
pub fn pairwise_distinct<const D: usize>(points: &[[BitString; D]]) -> bool {
    let mut seen = HashSet::with_capacity(points.len());
    points
        .iter()
        .all(|p| seen.insert(p.iter().map(BitString::digits).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_prefix() {
        assert_eq!(s1(15, 0).to_string(), "101000100000001");
        assert!(s1_bit(1) && s1_bit(3) && s1_bit(255) && !s1_bit(0) && !s1_bit(254));
    }

    #[test]
    fn corners() {
        assert_eq!(corner_digits(0.75, 2).unwrap(), vec![true, true]);
        assert_eq!(corner_digits(0.0, 0).unwrap(), Vec::<bool>::new());
        assert!(corner_digits(0.3, 2).is_err());
        assert!(corner_digits(1.0, 2).is_err());
    }
}
