//! The shuffling map `F(x, y) = (θx ⊕ s_{y₁}, θy ⊕ s_{x₁})` on `[0,1)²`.

use super::{check_budget, check_precision, corner_digits, grid_bijective, s1, s_of, Point2D};
use crate::bits::{BitString, Gf2Matrix};
use crate::error::{usage, Result};

fn xor_dropping_last(a: &BitString, b: &BitString) -> Result<BitString> {
    let mut out = a.xor(b)?;
    let p = out.precision();
    out.set(p, false);
    Ok(out)
}

pub fn map2d_forward(p: &Point2D) -> Result<Point2D> {
    let prec = check_precision(p)?;
    if prec < 2 {
        return Err(usage!("precision {prec} below 2"));
    }
    let [x, y] = p;
    Ok([
        xor_dropping_last(&x.shift(), &s_of(y.get(1), prec))?,
        xor_dropping_last(&y.shift(), &s_of(x.get(1), prec))?,
    ])
}

/// The preimage of `q` whose leading digits are `(x₁, y₁)`.
pub fn map2d_inverse(q: &Point2D, x1: bool, y1: bool) -> Result<Point2D> {
    let prec = check_precision(q)?;
    let [x, y] = q;
    Ok([
        x.xor(&s_of(y1, prec))?.prepend(x1),
        y.xor(&s_of(x1, prec))?.prepend(y1),
    ])
}

/// All `4ⁿ` preimages of `base` under `Fⁿ`, in interleaved radical-inverse
/// label order.
pub fn map2d_level(base: &Point2D, n: usize, budget: usize) -> Result<Vec<Point2D>> {
    check_precision(base)?;
    check_budget(
        1u128.checked_shl(2 * n as u32).unwrap_or(u128::MAX),
        budget,
        "2D level",
    )?;
    let mut level = vec![base.clone()];
    for _ in 0..n {
        // Label l = x₁ + 2y₁ on parent i' lands at index l + 4i'.
        let mut next = Vec::with_capacity(level.len() * 4);
        for parent in &level {
            for label in 0..4 {
                next.push(map2d_inverse(parent, label & 1 == 1, label & 2 == 2)?);
            }
        }
        level = next;
    }
    Ok(level)
}

/// Images of the `2^{-k}` grid cells inside
/// `[α, α + 2^{m-n}) × [β, β + 2^{-n-m})` under `Fⁿ` cover the
/// `2^{-(k-n)}` grid exactly once, with `k = max(grid_k, n + m)`.
pub fn rect_image_test_2d(
    n: usize,
    m: usize,
    alpha: f64,
    beta: f64,
    grid_k: usize,
    budget: usize,
) -> Result<bool> {
    if m > n {
        return Err(usage!("rectangle shape needs m ≤ n, got m={m}, n={n}"));
    }
    let corners = [corner_digits(alpha, n - m)?, corner_digits(beta, n + m)?];
    let k = grid_k.max(n + m);
    let precision = 64;
    grid_bijective(&corners, k, n, precision, budget, |p| {
        (0..n).try_fold(p.clone(), |q, _| map2d_forward(&q))
    })
}

/// The rows `θⁱs₁` (`i < n`), cut to `n` digits, span `GF(2)ⁿ`.
pub fn span_test_2d(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(usage!("span test needs n ≥ 1"));
    }
    let rows: Vec<Vec<u8>> = (0..n).map(|i| s1(n, i).digits()).collect();
    Ok(Gf2Matrix::from_rows(&rows)?.rank() == n)
}

#[cfg(test)]
mod tests {
    use super::super::{pairwise_distinct, to_unit, DEFAULT_POINT_BUDGET};
    use super::*;

    fn pt(x: &str, y: &str) -> Point2D {
        [BitString::parse(x).unwrap(), BitString::parse(y).unwrap()]
    }

    fn zero(prec: usize) -> Point2D {
        [BitString::zeros(prec), BitString::zeros(prec)]
    }

    #[test]
    fn forward_example() {
        let q = map2d_forward(&pt("1100", "0100")).unwrap();
        assert_eq!(to_unit(&q), [0.5, 0.125]);
        assert_eq!(q[0].reliable(), 3);
        assert_eq!(map2d_forward(&zero(8)).unwrap(), {
            let mut z = zero(8);
            for c in &mut z {
                *c = c.clone().with_reliable(7);
            }
            z
        });
    }

    #[test]
    fn level_round_trip() {
        let base = zero(64);
        for n in 0..=6 {
            let lvl = map2d_level(&base, n, DEFAULT_POINT_BUDGET).unwrap();
            assert_eq!(lvl.len(), 1 << (2 * n));
            assert!(pairwise_distinct(&lvl));
            for p in &lvl {
                let q = (0..n).fold(p.clone(), |q, _| map2d_forward(&q).unwrap());
                let r = q[0].reliable();
                assert_eq!(q[0].prefix_value(r.min(64)), 0);
                assert_eq!(q[1].prefix_value(r.min(64)), 0);
            }
        }
    }

    #[test]
    fn level_order_is_radical_inverse_of_labels() {
        let base = zero(64);
        let lvl = map2d_level(&base, 2, DEFAULT_POINT_BUDGET).unwrap();
        for (i, p) in lvl.iter().enumerate() {
            let inner = map2d_inverse(&base, i & 4 != 0, i & 8 != 0).unwrap();
            assert_eq!(*p, map2d_inverse(&inner, i & 1 != 0, i & 2 != 0).unwrap());
            assert_eq!((p[0].get(1), p[1].get(1)), (i & 1 != 0, i & 2 != 0));
        }
    }

    #[test]
    fn rect_examples() {
        let b = DEFAULT_POINT_BUDGET;
        assert!(rect_image_test_2d(1, 1, 0.0, 0.0, 3, b).unwrap());
        assert!(rect_image_test_2d(2, 0, 0.0, 0.0, 4, b).unwrap());
        assert!(rect_image_test_2d(1, 2, 0.0, 0.0, 3, b).is_err());
        assert!(rect_image_test_2d(2, 1, 0.3, 0.0, 4, b).is_err());
    }

    #[test]
    fn span_examples() {
        assert_eq!(s1(2, 0).digits(), vec![1, 0]);
        assert_eq!(s1(2, 1).digits(), vec![0, 1]);
        for n in 1..=64 {
            assert!(span_test_2d(n).unwrap(), "n={n}");
        }
    }
}
