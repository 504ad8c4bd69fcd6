//! Piecewise-linear expanding maps of the unit interval.
//!
//! Every branch `a` maps its cell `⟨a⟩ = [left, right)` affinely, with slope
//! `sign·β`, onto `[image_left, image_right]`. All branches share the slope
//! magnitude `β > 1`. Cells are half-open; the point 1 belongs to the last
//! cell. Endpoint comparisons use the absolute tolerance [`TOL`], and points
//! produced by iteration are snapped onto partition endpoints within that
//! tolerance so that irrational endpoints (golden-mean map) behave exactly.

pub mod catalog;
pub mod expr;
pub mod file;
mod markov;
mod word;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use markov::{
    classify_endpoints, markov_structure, EndpointClass, MarkovStructure, TransitionMatrix,
};
pub use word::{word_compare, words_of_length, Word, DEFAULT_WORD_BUDGET};

/// Comparison tolerance for endpoints, slopes and snapping.
pub const TOL: f64 = 1e-9;

/// Orbit depth used to decide whether an endpoint is eventually Markov.
pub const DEFAULT_ENDPOINT_DEPTH: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub left: f64,
    pub right: f64,
    /// +1 for an increasing branch, -1 for a decreasing one.
    pub sign: i8,
    pub beta: f64,
    pub image_left: f64,
    pub image_right: f64,
}

impl Branch {
    /// Branch formula extended to the closed cell.
    pub fn apply(&self, x: f64) -> f64 {
        if self.sign > 0 {
            self.image_left + self.beta * (x - self.left)
        } else {
            self.image_right - self.beta * (x - self.left)
        }
    }

    pub fn width(&self) -> f64 {
        self.right - self.left
    }
}

/// Which side a one-sided limit point is approached from.
///
/// `Below` is the limit `y ↑ x`, `Above` the limit `y ↓ x`. A cell's upper
/// signed symbol is its right endpoint approached from below; its lower
/// signed symbol is its left endpoint approached from above.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Below,
    Above,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        }
    }

    pub fn twist(self, sign: i8) -> Self {
        if sign < 0 {
            self.flip()
        } else {
            self
        }
    }

    /// Infinitesimal offset used to order coincident points: `x-0 < x < x+0`.
    pub(crate) fn offset(self) -> i8 {
        match self {
            Side::Below => -1,
            Side::Above => 1,
        }
    }
}

/// A cell endpoint paired with the side it is approached from inside the cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedSymbol {
    pub cell: usize,
    pub side: Side,
}

impl std::fmt::Display for SignedSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self.side {
            Side::Below => '+',
            Side::Above => '-',
        };
        write!(f, "{}{}", self.cell, s)
    }
}

/// A point with an approach side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneSided {
    pub value: f64,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PLMap {
    branches: Vec<Branch>,
    beta: f64,
    xi: f64,
    endpoints: Vec<f64>,
}

impl PLMap {
    /// Validates a branch list and builds the map.
    pub fn new(branches: Vec<Branch>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidMap(msg));
        let Some(first) = branches.first() else {
            return invalid("empty branch list".into());
        };
        let beta = first.beta;
        if !beta.is_finite() || beta <= 1.0 {
            return invalid(format!("slope magnitude {beta} is not expanding"));
        }
        if first.left.abs() > TOL {
            return invalid(format!("first cell starts at {} instead of 0", first.left));
        }
        let last = branches.last().unwrap();
        if (last.right - 1.0).abs() > TOL {
            return invalid(format!("last cell ends at {} instead of 1", last.right));
        }
        for (a, b) in branches.iter().enumerate() {
            if b.sign != 1 && b.sign != -1 {
                return invalid(format!("branch {a}: sign must be +1 or -1, got {}", b.sign));
            }
            if b.width() <= TOL {
                return invalid(format!("branch {a}: empty cell [{}, {})", b.left, b.right));
            }
            if (b.beta - beta).abs() > TOL {
                return invalid(format!(
                    "branch {a}: slope {} differs from common slope {beta}",
                    b.beta
                ));
            }
            if b.image_left < -TOL || b.image_right > 1.0 + TOL || b.image_left >= b.image_right {
                return invalid(format!(
                    "branch {a}: image [{}, {}] escapes [0, 1]",
                    b.image_left, b.image_right
                ));
            }
            let expected = beta * b.width();
            if ((b.image_right - b.image_left) - expected).abs() > TOL {
                return invalid(format!(
                    "branch {a}: image width {} is not beta x cell width {expected}",
                    b.image_right - b.image_left
                ));
            }
            if let Some(next) = branches.get(a + 1) {
                if (next.left - b.right).abs() > TOL {
                    return invalid(format!(
                        "gap or overlap between cells {a} and {}: {} vs {}",
                        a + 1,
                        b.right,
                        next.left
                    ));
                }
            }
        }
        // Snap shared endpoints so adjacent cells agree exactly.
        let mut branches = branches;
        branches[0].left = 0.0;
        let n = branches.len();
        branches[n - 1].right = 1.0;
        for a in 1..n {
            branches[a].left = branches[a - 1].right;
        }
        for b in &mut branches {
            b.beta = beta;
            b.image_left = b.image_left.max(0.0);
            b.image_right = b.image_right.min(1.0);
        }
        let mut endpoints: Vec<f64> = branches.iter().map(|b| b.left).collect();
        endpoints.push(1.0);
        let mut map = Self {
            branches,
            beta,
            xi: beta.ln(),
            endpoints,
        };
        // Image endpoints that coincide with partition endpoints are replaced by
        // the stored partition value, so Markov images close up exactly.
        for a in 0..n {
            let il = map.snap(map.branches[a].image_left);
            let ir = map.snap(map.branches[a].image_right);
            map.branches[a].image_left = il;
            map.branches[a].image_right = ir;
        }
        Ok(map)
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch(&self, a: usize) -> &Branch {
        &self.branches[a]
    }

    pub fn alphabet_size(&self) -> usize {
        self.branches.len()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Expansion constant `ξ = log β`.
    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn sign(&self, a: usize) -> i8 {
        self.branches[a].sign
    }

    /// Partition endpoints `0 = e_0 < e_1 < … < e_k = 1`.
    pub fn endpoints(&self) -> &[f64] {
        &self.endpoints
    }

    /// Replaces `x` by a partition endpoint when it lies within [`TOL`].
    pub fn snap(&self, x: f64) -> f64 {
        match self.nearest_endpoint(x) {
            Some(e) => e,
            None => x,
        }
    }

    pub fn nearest_endpoint(&self, x: f64) -> Option<f64> {
        self.endpoints
            .iter()
            .copied()
            .find(|e| (x - e).abs() <= TOL)
    }

    pub fn is_endpoint(&self, x: f64) -> bool {
        self.nearest_endpoint(x).is_some()
    }

    /// The cell containing `x` under the half-open convention.
    pub fn cell_of(&self, x: f64) -> usize {
        let n = self.branches.len();
        self.branches
            .iter()
            .position(|b| x < b.right)
            .unwrap_or(n - 1)
    }

    /// One application of the map: the cell of `x` and the snapped image.
    pub fn step(&self, x: f64) -> (usize, f64) {
        let a = self.cell_of(x);
        let y = self.snap(self.branches[a].apply(x)).clamp(0.0, 1.0);
        (a, y)
    }

    pub fn apply(&self, x: f64) -> f64 {
        self.step(x).1
    }

    /// The first `n` symbols of the itinerary of `x`.
    pub fn expansion(&self, x: f64, n: usize) -> Result<Word> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::Domain(format!("{x} is outside [0, 1)")));
        }
        let mut symbols = Vec::with_capacity(n);
        let mut y = x;
        for _ in 0..n {
            let (a, next) = self.step(y);
            symbols.push(a);
            y = next;
        }
        Ok(Word::new(symbols))
    }

    /// Whether `x` lies in the image of branch `a`. Increasing branches cover
    /// `[image_left, image_right)`, decreasing ones `(image_left, image_right]`.
    fn in_image(&self, a: usize, x: f64) -> bool {
        let b = &self.branches[a];
        if b.sign > 0 {
            b.image_left <= x && x < b.image_right
        } else {
            b.image_left < x && x <= b.image_right
        }
    }

    /// The unique `y ∈ ⟨a⟩` with `F(y) = x`, if any.
    pub fn branch_inverse(&self, a: usize, x: f64) -> Option<f64> {
        let x = self.snap(x);
        if a >= self.branches.len() || !self.in_image(a, x) {
            return None;
        }
        let b = &self.branches[a];
        let y = if b.sign > 0 {
            b.left + (x - b.image_left) / self.beta
        } else {
            b.left + (b.image_right - x) / self.beta
        };
        let y = self.snap(y);
        let inside = b.left <= y && (y < b.right || (a + 1 == self.branches.len() && y <= 1.0));
        inside.then_some(y)
    }

    /// The point whose itinerary is `w` followed by the itinerary of `x`.
    ///
    /// Each inverse step checks half-open cell membership, which is the same
    /// as requiring that the result's expansion starts with `w`.
    pub fn point_of_wx(&self, w: &Word, x: f64) -> Option<f64> {
        w.symbols()
            .iter()
            .rev()
            .try_fold(x, |y, &a| self.branch_inverse(a, y))
    }

    /// The cylinder `⟨w⟩` as a closed interval, or `None` when it is empty.
    pub fn cylinder(&self, w: &Word) -> Option<(f64, f64)> {
        let mut interval = (0.0, 1.0);
        for &a in w.symbols().iter().rev() {
            interval = self.pull_back(a, interval)?;
        }
        Some(interval)
    }

    /// `⟨a⟩ ∩ F⁻¹(J)`, empty when the overlap is degenerate relative to `J`.
    pub(crate) fn pull_back(&self, a: usize, (lo, hi): (f64, f64)) -> Option<(f64, f64)> {
        let b = self.branches.get(a)?;
        let l = lo.max(b.image_left);
        let h = hi.min(b.image_right);
        if h - l <= TOL * (hi - lo).max(f64::MIN_POSITIVE) {
            return None;
        }
        Some(if b.sign > 0 {
            (
                b.left + (l - b.image_left) / self.beta,
                b.left + (h - b.image_left) / self.beta,
            )
        } else {
            (
                b.left + (b.image_right - h) / self.beta,
                b.left + (b.image_right - l) / self.beta,
            )
        })
    }

    pub fn is_admissible(&self, w: &Word) -> bool {
        w.symbols().iter().all(|&a| a < self.alphabet_size()) && self.cylinder(w).is_some()
    }

    /// Product of branch signs along `w`.
    pub fn word_sign(&self, w: &Word) -> i8 {
        w.symbols().iter().map(|&a| self.sign(a)).product()
    }

    /// Signed symbols in the order `0+, 0-, 1+, 1-, …`.
    pub fn signed_symbols(&self) -> Vec<SignedSymbol> {
        (0..self.alphabet_size())
            .flat_map(|cell| {
                [Side::Below, Side::Above]
                    .into_iter()
                    .map(move |side| SignedSymbol { cell, side })
            })
            .collect()
    }

    /// The endpoint a signed symbol stands for.
    pub fn signed_point(&self, s: SignedSymbol) -> OneSided {
        let b = &self.branches[s.cell];
        let value = match s.side {
            Side::Below => b.right,
            Side::Above => b.left,
        };
        OneSided {
            value,
            side: s.side,
        }
    }

    /// The cell a one-sided point falls in.
    pub fn cell_of_one_sided(&self, p: OneSided) -> usize {
        let n = self.branches.len();
        match p.side {
            Side::Below => self
                .branches
                .iter()
                .position(|b| p.value <= b.right + TOL && p.value > b.left + TOL)
                .unwrap_or(0),
            Side::Above => self
                .branches
                .iter()
                .position(|b| p.value < b.right - TOL && p.value >= b.left - TOL)
                .unwrap_or(n - 1),
        }
    }

    /// The shift `θ` on one-sided points: apply the branch and twist the side
    /// by the branch sign.
    pub fn shift_one_sided(&self, p: OneSided) -> (usize, OneSided) {
        let a = self.cell_of_one_sided(p);
        let b = &self.branches[a];
        let value = self.snap(b.apply(p.value)).clamp(0.0, 1.0);
        (
            a,
            OneSided {
                value,
                side: p.side.twist(b.sign),
            },
        )
    }

    /// If the one-sided point sits on a cell endpoint, the signed symbol it is.
    pub fn as_signed_symbol(&self, p: OneSided) -> Option<SignedSymbol> {
        if !self.is_endpoint(p.value) {
            return None;
        }
        let cell = self.cell_of_one_sided(p);
        Some(SignedSymbol { cell, side: p.side })
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn validate_examples() {
        let d = doubling();
        assert_eq!(d.beta(), 2.0);
        assert!((d.xi() - 2f64.ln()).abs() < 1e-15);
        let t = tent();
        assert_eq!(t.sign(1), -1);
        let mixed = vec![
            Branch {
                left: 0.0,
                right: 0.5,
                sign: 1,
                beta: 2.0,
                image_left: 0.0,
                image_right: 1.0,
            },
            Branch {
                left: 0.5,
                right: 1.0,
                sign: 1,
                beta: 3.0,
                image_left: 0.0,
                image_right: 1.0,
            },
        ];
        assert!(matches!(PLMap::new(mixed), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn validate_rejects_bad_partitions() {
        let gap = vec![
            Branch {
                left: 0.0,
                right: 0.4,
                sign: 1,
                beta: 2.0,
                image_left: 0.0,
                image_right: 0.8,
            },
            Branch {
                left: 0.5,
                right: 1.0,
                sign: 1,
                beta: 2.0,
                image_left: 0.0,
                image_right: 1.0,
            },
        ];
        assert!(PLMap::new(gap).is_err());
        let escape = vec![Branch {
            left: 0.0,
            right: 1.0,
            sign: 1,
            beta: 2.0,
            image_left: 0.0,
            image_right: 2.0,
        }];
        assert!(PLMap::new(escape).is_err());
        let contracting = vec![Branch {
            left: 0.0,
            right: 1.0,
            sign: 1,
            beta: 1.0,
            image_left: 0.0,
            image_right: 1.0,
        }];
        assert!(PLMap::new(contracting).is_err());
        assert!(PLMap::new(vec![]).is_err());
    }

    #[test]
    fn expansion_examples() {
        let w = doubling().expansion(0.625, 3).unwrap();
        assert_eq!(w.symbols(), &[1, 0, 1]);
        assert_eq!(
            golden_mean().expansion(0.0, 4).unwrap().symbols(),
            &[0, 0, 0, 0]
        );
        assert_eq!(tent().expansion(0.75, 2).unwrap().symbols(), &[1, 1]);
        assert!(doubling().expansion(1.0, 1).is_err());
    }

    #[test]
    fn branch_inverse_examples() {
        assert_eq!(doubling().branch_inverse(1, 0.25), Some(0.625));
        assert_eq!(tent().branch_inverse(1, 0.5), Some(0.75));
        assert_eq!(golden_mean().branch_inverse(1, 0.9), None);
        // Decreasing branch image is (0, 1]: 0 has no preimage there.
        assert_eq!(tent().branch_inverse(1, 0.0), None);
    }

    #[test]
    fn point_of_wx_examples() {
        let d = doubling();
        assert_eq!(d.point_of_wx(&Word::new(vec![1, 0]), 0.5), Some(0.625));
        assert_eq!(d.point_of_wx(&Word::empty(), 0.3), Some(0.3));
        assert_eq!(golden_mean().point_of_wx(&Word::new(vec![1, 1]), 0.0), None);
    }

    #[test]
    fn cylinders_and_admissibility() {
        let d = doubling();
        assert_eq!(d.cylinder(&Word::new(vec![1, 0])), Some((0.5, 0.75)));
        let g = golden_mean();
        assert!(!g.is_admissible(&Word::new(vec![1, 1])));
        assert!(g.is_admissible(&Word::new(vec![1, 0, 1])));
        assert_eq!(g.cylinder(&Word::empty()), Some((0.0, 1.0)));
    }

    #[test]
    fn one_sided_shift_twists_side() {
        let t = tent();
        let p = t.signed_point(SignedSymbol {
            cell: 1,
            side: Side::Below,
        });
        let (a, q) = t.shift_one_sided(p);
        assert_eq!(a, 1);
        assert_eq!(q.value, 0.0);
        assert_eq!(q.side, Side::Above);
        assert_eq!(
            t.as_signed_symbol(q),
            Some(SignedSymbol {
                cell: 0,
                side: Side::Above
            })
        );
    }
}
