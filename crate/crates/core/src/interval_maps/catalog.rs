//! Stock maps.

use super::{Branch, PLMap};
use crate::error::Result;

fn full(left: f64, right: f64, sign: i8, beta: f64) -> Branch {
    Branch {
        left,
        right,
        sign,
        beta,
        image_left: 0.0,
        image_right: 1.0,
    }
}

/// `x ↦ 2x mod 1`.
pub fn doubling() -> PLMap {
    PLMap::new(vec![full(0.0, 0.5, 1, 2.0), full(0.5, 1.0, 1, 2.0)]).unwrap()
}

pub fn tent() -> PLMap {
    PLMap::new(vec![full(0.0, 0.5, 1, 2.0), full(0.5, 1.0, -1, 2.0)]).unwrap()
}

/// `x ↦ kx mod 1`.
pub fn full_shift(k: usize) -> PLMap {
    let b = k as f64;
    PLMap::new(
        (0..k)
            .map(|i| full(i as f64 / b, (i + 1) as f64 / b, 1, b))
            .collect(),
    )
    .unwrap()
}

/// `x ↦ φx mod 1` with the golden ratio φ; the second branch maps onto `[0, 1/φ)`.
pub fn golden_mean() -> PLMap {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let c = 1.0 / phi;
    PLMap::new(vec![
        full(0.0, c, 1, phi),
        Branch {
            left: c,
            right: 1.0,
            sign: 1,
            beta: phi,
            image_left: 0.0,
            image_right: c,
        },
    ])
    .unwrap()
}

/// `x ↦ βx mod 1` for `1 < β < 2`.
pub fn beta_map(beta: f64) -> Result<PLMap> {
    let c = 1.0 / beta;
    PLMap::new(vec![
        full(0.0, c, 1, beta),
        Branch {
            left: c,
            right: 1.0,
            sign: 1,
            beta,
            image_left: 0.0,
            image_right: beta - 1.0,
        },
    ])
}

/// Two invariant halves, each a copy of the doubling map.
pub fn two_block() -> PLMap {
    let half = |left: f64, lo: f64| Branch {
        left,
        right: left + 0.25,
        sign: 1,
        beta: 2.0,
        image_left: lo,
        image_right: lo + 0.5,
    };
    PLMap::new(vec![
        half(0.0, 0.0),
        half(0.25, 0.0),
        half(0.5, 0.5),
        half(0.75, 0.5),
    ])
    .unwrap()
}

/// Looks up a stock map by name.
pub fn by_name(name: &str) -> Option<PLMap> {
    match name {
        "doubling" => Some(doubling()),
        "tent" => Some(tent()),
        "golden_mean" | "golden" => Some(golden_mean()),
        "beta_1_9" => beta_map(1.9).ok(),
        "two_block" => Some(two_block()),
        "full_shift3" | "tripling" => Some(full_shift(3)),
        _ => None,
    }
}
