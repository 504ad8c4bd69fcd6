//! The transformations `F_n` on `[0,1)³`: shift every coordinate by `n`
//! digits and add `M` applied to the consumed digit-triples.

use serde::Serialize;

use super::mix::{col_index, row_index, MixMatrix, M_DEPTH, M_ROWS};
use super::{check_budget, check_precision, corner_digits, grid_bijective, Axis, Point3D};
use crate::bits::BitString;
use crate::error::{usage, Error, Result};

/// How the `n`-th level map is formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Reading {
    /// `F_n` itself is the `n`-step map (`n ≤ 4`).
    #[default]
    Direct,
    /// `F₁` composed `n` times.
    Composition,
}

/// Digit-triples `d[c][j-1]`, `j = 1..=n`, as the column vector
/// `(x_n, y_n, z_n | … | x₁, y₁, z₁ | 0 …)`, multiplied by `M`.
fn mixed(mix: &MixMatrix, n: usize, digit: impl Fn(Axis, usize) -> bool) -> Vec<bool> {
    let mut v = vec![false; mix.matrix().cols()];
    for j in 1..=n {
        for c in Axis::ALL {
            v[col_index(c, j)] = digit(c, n + 1 - j);
        }
    }
    mix.matrix().mul_vec(&v)
}

fn mixed_row(w: &[bool], c: Axis, j: usize) -> bool {
    j <= M_ROWS / 3 && w[row_index(c, j)]
}

fn check_level(n: usize) -> Result<()> {
    if n > M_DEPTH {
        return Err(Error::Unsupported(format!(
            "F_{n} needs {n} digit-triples; the mixing matrix covers {M_DEPTH}"
        )));
    }
    Ok(())
}

fn forward_direct(mix: &MixMatrix, n: usize, p: &Point3D) -> Result<Point3D> {
    check_level(n)?;
    let prec = check_precision(p)?;
    if prec <= n {
        return Err(usage!("precision {prec} too small for F_{n}"));
    }
    let w = mixed(mix, n, |c, j| p[c.index()].get(j));
    Ok(Axis::ALL.map(|c| {
        let src = &p[c.index()];
        let mut out = BitString::zeros(prec);
        for j in 1..=prec - n {
            out.set(j, src.get(n + j) ^ mixed_row(&w, c, j));
        }
        out.with_reliable(src.reliable().saturating_sub(n))
    }))
}

fn inverse_direct(mix: &MixMatrix, n: usize, q: &Point3D, label: usize) -> Result<Point3D> {
    check_level(n)?;
    let prec = check_precision(q)?;
    if prec <= n {
        return Err(usage!("precision {prec} too small for F_{n}"));
    }
    let digit = |c: Axis, j: usize| (label >> (3 * (j - 1) + c.index())) & 1 == 1;
    let w = mixed(mix, n, digit);
    Ok(Axis::ALL.map(|c| {
        let src = &q[c.index()];
        let mut out = BitString::zeros(prec);
        for j in 1..=n {
            out.set(j, digit(c, j));
        }
        for j in 1..=prec - n {
            out.set(n + j, src.get(j) ^ mixed_row(&w, c, j));
        }
        out.with_reliable((src.reliable() + n).min(prec))
    }))
}

/// `F_n(p)` (or `F₁ⁿ(p)` under [`Reading::Composition`]).
pub fn map3d_forward(mix: &MixMatrix, n: usize, p: &Point3D, reading: Reading) -> Result<Point3D> {
    if n == 0 {
        return Ok(p.clone());
    }
    match reading {
        Reading::Direct => forward_direct(mix, n, p),
        Reading::Composition => (0..n).try_fold(p.clone(), |q, _| forward_direct(mix, 1, &q)),
    }
}

/// The preimage of `q` under `F_n` whose first `n` digit-triples are given by
/// `label` (bit `3(j-1) + c` is digit `j` of coordinate `c`).
pub fn map3d_inverse(mix: &MixMatrix, n: usize, q: &Point3D, label: usize) -> Result<Point3D> {
    inverse_direct(mix, n, q, label)
}

/// All `8ⁿ` preimages of `base`, in interleaved radical-inverse label order.
pub fn map3d_level(
    mix: &MixMatrix,
    base: &Point3D,
    n: usize,
    reading: Reading,
    budget: usize,
) -> Result<Vec<Point3D>> {
    check_precision(base)?;
    if reading == Reading::Direct {
        check_level(n)?;
    }
    let count = check_budget(
        1u128.checked_shl(3 * n as u32).unwrap_or(u128::MAX),
        budget,
        "3D level",
    )?;
    if n == 0 {
        return Ok(vec![base.clone()]);
    }
    match reading {
        Reading::Direct => (0..count)
            .map(|i| inverse_direct(mix, n, base, i))
            .collect(),
        Reading::Composition => {
            let mut level = vec![base.clone()];
            for _ in 0..n {
                let mut next = Vec::with_capacity(level.len() * 8);
                for parent in &level {
                    for label in 0..8 {
                        next.push(inverse_direct(mix, 1, parent, label)?);
                    }
                }
                level = next;
            }
            Ok(level)
        }
    }
}

/// The two box shapes mapped onto the cube by `F_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoxShape {
    /// Sides `2^{-k-n-m}, 2^{-k+n}, 2^{-k+m}`.
    First,
    /// Sides `2^{-k-n}, 2^{-k-m}, 2^{-k+n+m}`.
    Second,
}

impl BoxShape {
    /// Fixed digits per coordinate.
    pub fn digits(self, k: usize, n: usize, m: usize) -> [usize; 3] {
        match self {
            BoxShape::First => [k + n + m, k - n, k - m],
            BoxShape::Second => [k + n, k + m, k - n - m],
        }
    }
}

/// Grid bijectivity of `F_k` from the box onto `[0,1)³`, with grid
/// resolution `max(grid_res, k + n + m)` digits.
#[allow(clippy::too_many_arguments)]
pub fn rect_image_test_3d(
    mix: &MixMatrix,
    k: usize,
    n: usize,
    m: usize,
    corner: [f64; 3],
    shape: BoxShape,
    grid_res: usize,
    reading: Reading,
    budget: usize,
) -> Result<bool> {
    if n + m > k {
        return Err(usage!("box shape needs k ≥ n+m, got k={k}, n={n}, m={m}"));
    }
    if k == 0 {
        return Err(usage!("box test needs k ≥ 1"));
    }
    if reading == Reading::Direct {
        check_level(k)?;
    }
    let len = shape.digits(k, n, m);
    let corners: [Vec<bool>; 3] = [
        corner_digits(corner[0], len[0])?,
        corner_digits(corner[1], len[1])?,
        corner_digits(corner[2], len[2])?,
    ];
    let res = grid_res.max(k + n + m);
    grid_bijective(&corners, res, k, 64, budget, |p| {
        map3d_forward(mix, k, p, reading)
    })
}

#[cfg(test)]
mod tests {
    use super::super::{pairwise_distinct, DEFAULT_POINT_BUDGET};
    use super::*;

    fn zero() -> Point3D {
        std::array::from_fn(|_| BitString::zeros(64))
    }

    fn point(digits: [&str; 3]) -> Point3D {
        digits.map(|d| {
            let mut b = BitString::zeros(64);
            for (i, ch) in d.chars().enumerate() {
                b.set(i + 1, ch == '1');
            }
            b
        })
    }

    #[test]
    fn column_x1_example() {
        let mix = MixMatrix::stored();
        let q = map3d_forward(&mix, 1, &point(["1", "0", "0"]), Reading::Direct).unwrap();
        assert_eq!(q[0].prefix_value(6), 0);
        assert_eq!(q[1].prefix_value(6), 0b100000);
        assert_eq!(q[2].prefix_value(6), 0b111000);
        assert_eq!(
            map3d_forward(&mix, 1, &zero(), Reading::Direct).unwrap()[0].prefix_value(63),
            0
        );
        assert!(matches!(
            map3d_forward(&mix, 5, &zero(), Reading::Direct),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn levels_round_trip() {
        let mix = MixMatrix::stored();
        let base = point(["0110", "1", "001"]);
        for reading in [Reading::Direct, Reading::Composition] {
            for n in 0..=3 {
                let lvl = map3d_level(&mix, &base, n, reading, DEFAULT_POINT_BUDGET).unwrap();
                assert_eq!(lvl.len(), 1 << (3 * n));
                assert!(pairwise_distinct(&lvl));
                for p in &lvl {
                    let q = map3d_forward(&mix, n, p, reading).unwrap();
                    for c in 0..3 {
                        assert_eq!(q[c].prefix_value(60 - n), base[c].prefix_value(60 - n));
                    }
                }
            }
        }
    }

    #[test]
    fn box_examples() {
        let mix = MixMatrix::stored();
        let b = DEFAULT_POINT_BUDGET;
        let d = Reading::Direct;
        assert!(
            rect_image_test_3d(&mix, 1, 0, 0, [0.5, 0.0, 0.5], BoxShape::First, 2, d, b).unwrap()
        );
        assert!(rect_image_test_3d(&mix, 2, 1, 0, [0.0; 3], BoxShape::First, 3, d, b).unwrap());
        assert!(rect_image_test_3d(&mix, 1, 1, 1, [0.0; 3], BoxShape::First, 3, d, b).is_err());
    }
}
