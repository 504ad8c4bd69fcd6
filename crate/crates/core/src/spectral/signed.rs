//! Fredholm matrix over signed endpoint symbols, valid for non-Markov maps.
//!
//! For a signed symbol `y` let `θ` be the shift on one-sided points (apply the
//! branch, twist the approach side by the branch sign) and let `N_y ≥ 1` be the
//! first time `θⁿy` is itself a signed endpoint symbol, or `K` if that does not
//! happen by then. The entries are
//!
//! ```text
//! Φ_{y,b}(z) = Σ_{n=1}^{N_y} (z/β)ⁿ σ(θⁿy, b)
//! χ_y(z, x)  = Σ_{n=1}^{N_y} (z/β)^{n-1} σ(θⁿy, x)
//! ```
//!
//! where `σ(u, v) = +½` if `u ≥ v` (approached from below) or `u ≤ v`
//! (approached from above) and `-½` otherwise. Coincident values are ordered
//! `v-0 < v < v+0`. Then `det(I - Φ) = 1/ζ` with ζ counting periodic points of
//! the closed branches, and `t = (I - Φ)⁻¹χ` solves the renewal equation for
//! `s^J(z, x) = Σ zⁿ Pⁿ1_J(x)`.
//!
//! The base point enters the comparisons as `x+0`, which matches the level
//! sets `{wx}` under half-open cells except where a decreasing branch has its
//! image starting at `x`: that branch sees `x-0` and has no preimage of `x`.

use std::cmp::Ordering;

use serde::Serialize;

use super::fredholm::{FredholmIndex, FredholmKind, FredholmSeries};
use super::series::PowerSeries;
use crate::error::{usage, Error, Result};
use crate::interval_maps::{OneSided, PLMap, Side, SignedSymbol, TOL};
use crate::scalar::Coeff;

/// Orders two points given as `(value, offset)` with offset -1 for a limit
/// from below, 0 for a plain point and +1 for a limit from above.
pub fn compare_points(a: (f64, i8), b: (f64, i8)) -> Ordering {
    if (a.0 - b.0).abs() > TOL {
        return a.0.total_cmp(&b.0);
    }
    a.1.cmp(&b.1)
}

/// `σ(u, v) ∈ {+½, -½}`.
pub fn sigma(u: OneSided, v: (f64, i8)) -> f64 {
    let c = compare_points((u.value, u.side.offset()), v);
    let positive = match u.side {
        Side::Below => c != Ordering::Less,
        Side::Above => c != Ordering::Greater,
    };
    if positive {
        0.5
    } else {
        -0.5
    }
}

fn as_point(s: OneSided) -> (f64, i8) {
    (s.value, s.side.offset())
}

/// Orbits `θ¹y, …, θ^{N_y}y` of every signed symbol.
#[derive(Clone, Debug, Serialize)]
pub struct SignedOrbits {
    pub symbols: Vec<SignedSymbol>,
    #[serde(skip)]
    pub orbits: Vec<Vec<OneSided>>,
    /// True when the orbit was cut at `K` without reaching an endpoint symbol.
    pub truncated: Vec<bool>,
    pub degree: usize,
}

impl SignedOrbits {
    pub fn new(map: &PLMap, degree: usize) -> Result<Self> {
        let symbols = map.signed_symbols();
        let mut orbits = Vec::with_capacity(symbols.len());
        let mut truncated = Vec::with_capacity(symbols.len());
        for &s in &symbols {
            let mut p = map.signed_point(s);
            let mut orbit = Vec::new();
            let mut hit = false;
            for _ in 0..degree {
                p = map.shift_one_sided(p).1;
                if !p.value.is_finite() {
                    return Err(Error::Numerical(format!("orbit of {s} left [0, 1]")));
                }
                orbit.push(p);
                if map.as_signed_symbol(p).is_some() {
                    hit = true;
                    break;
                }
            }
            orbits.push(orbit);
            truncated.push(!hit);
        }
        Ok(Self {
            symbols,
            orbits,
            truncated,
            degree,
        })
    }

    pub fn index_of(&self, s: SignedSymbol) -> usize {
        self.symbols.iter().position(|&t| t == s).unwrap()
    }
}

/// The signed Fredholm matrix together with the orbit data behind it.
#[derive(Clone, Debug)]
pub struct SignedFredholm<T> {
    pub phi: FredholmSeries<T>,
    pub orbits: SignedOrbits,
    beta: f64,
}

fn lit<T: Coeff>(v: f64) -> T {
    T::from_f64(v).expect("finite literal")
}

pub fn signed_fredholm<T: Coeff>(map: &PLMap, degree: usize) -> Result<SignedFredholm<T>> {
    let orbits = SignedOrbits::new(map, degree)?;
    let beta = map.beta();
    let n = orbits.symbols.len();
    let targets: Vec<(f64, i8)> = orbits
        .symbols
        .iter()
        .map(|&s| as_point(map.signed_point(s)))
        .collect();
    let entries = orbits
        .orbits
        .iter()
        .map(|orbit| {
            targets
                .iter()
                .map(|&b| {
                    let mut e = PowerSeries::zero(degree);
                    for (k, &u) in orbit.iter().enumerate() {
                        e.set(k + 1, lit(sigma(u, b) / beta.powi(k as i32 + 1)));
                    }
                    e
                })
                .collect()
        })
        .collect();
    let phi = FredholmSeries::new(
        entries,
        orbits
            .symbols
            .iter()
            .map(|&s| FredholmIndex::Signed(s))
            .collect(),
        beta,
        FredholmKind::Signed,
        orbits.truncated.clone(),
    )?;
    debug_assert_eq!(phi.size(), n);
    Ok(SignedFredholm { phi, orbits, beta })
}

impl<T: Coeff> SignedFredholm<T> {
    pub fn degree(&self) -> usize {
        self.orbits.degree
    }

    /// The right-hand side `χ(z, x)` of the renewal equation.
    pub fn chi(&self, x: f64) -> Vec<PowerSeries<T>> {
        let k = self.degree();
        self.orbits
            .orbits
            .iter()
            .map(|orbit| {
                let mut c = PowerSeries::zero(k);
                for (n, &u) in orbit.iter().enumerate() {
                    c.add_at(n, lit(sigma(u, (x, 1)) / self.beta.powi(n as i32)));
                }
                c
            })
            .collect()
    }

    /// `S(u) = Σₙ zⁿ β⁻ⁿ Σ_{|w|=n} σ(u, wx)` for a one-sided point `u`, given
    /// the renewal solution `t`.
    fn sum_sigma(&self, map: &PLMap, u: OneSided, x: f64, t: &[PowerSeries<T>]) -> PowerSeries<T> {
        let k = self.degree();
        let targets: Vec<(f64, i8)> = self
            .orbits
            .symbols
            .iter()
            .map(|&s| as_point(map.signed_point(s)))
            .collect();
        let mut g = PowerSeries::zero(k);
        let mut p = u;
        for step in 0..=k {
            let w = self.beta.powi(step as i32);
            g.add_at(step, lit(sigma(p, (x, 1)) / w));
            if step < k {
                let mut coupling = PowerSeries::zero(k);
                for (j, &b) in targets.iter().enumerate() {
                    coupling = &coupling + &t[j].scale(&lit(sigma(p, b)));
                }
                let shifted = shift_up(&coupling, step + 1).scale(&lit(1.0 / (w * self.beta)));
                g = &g + &shifted;
            }
            if map.as_signed_symbol(p).is_some() {
                break;
            }
            p = map.shift_one_sided(p).1;
        }
        g
    }

    /// `s^J(z, x)` for `J = [lo, hi)` from the renewal equation.
    pub fn generating_function(
        &self,
        map: &PLMap,
        (lo, hi): (f64, f64),
        x: f64,
    ) -> Result<PowerSeries<T>> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(usage!("interval [{lo}, {hi}) is not inside [0, 1]"));
        }
        let t = self.phi.solve(&self.chi(x))?;
        let below = |v: f64| OneSided {
            value: v,
            side: Side::Below,
        };
        let upper = self.sum_sigma(map, below(hi), x, &t);
        // 1_{[lo,hi)}(y) = σ(hi-0, y) - σ(lo-0, y), and σ(0-0, y) = -σ(1-0, y).
        let lower = if lo <= TOL {
            -&self.sum_sigma(map, below(1.0), x, &t)
        } else {
            self.sum_sigma(map, below(lo), x, &t)
        };
        Ok(&upper - &lower)
    }
}

fn shift_up<T: Coeff>(s: &PowerSeries<T>, by: usize) -> PowerSeries<T> {
    let k = s.degree();
    let mut out = PowerSeries::zero(k);
    for n in 0..=k.saturating_sub(by) {
        if n + by <= k {
            out.set(n + by, s.coeff(n));
        }
    }
    out
}

/// Largest number of preimages enumerated per level by [`enumerate_generating_function`].
pub const ENUMERATION_BUDGET: usize = 1 << 24;

/// `s^J(z, x)` by direct enumeration of the level sets `{wx : |w| = n}`.
///
/// Membership in `J` uses the endpoint tolerance, so a preimage that equals an
/// end of `J` up to rounding is placed on the correct side.
pub fn enumerate_generating_function(
    map: &PLMap,
    (lo, hi): (f64, f64),
    x: f64,
    degree: usize,
) -> Result<PowerSeries<f64>> {
    let mut level = vec![x];
    let mut s = PowerSeries::zero(degree);
    for n in 0..=degree {
        let hits = level
            .iter()
            .filter(|&&y| lo - TOL <= y && y < hi - TOL)
            .count();
        s.set(n, hits as f64 / map.beta().powi(n as i32));
        if n == degree {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * map.alphabet_size());
        for &y in &level {
            for a in 0..map.alphabet_size() {
                if let Some(p) = map.branch_inverse(a, y) {
                    next.push(p);
                }
            }
        }
        if next.len() > ENUMERATION_BUDGET {
            return Err(Error::Resource(format!(
                "more than {ENUMERATION_BUDGET} preimages at level {}",
                n + 1
            )));
        }
        level = next;
    }
    Ok(s)
}

/// Largest coefficient difference between the renewal solution and enumeration.
pub fn renewal_check(map: &PLMap, j: (f64, f64), x: f64, degree: usize) -> Result<f64> {
    let sf = signed_fredholm::<f64>(map, degree)?;
    let renewal = sf.generating_function(map, j, x)?;
    let direct = enumerate_generating_function(map, j, x, degree)?;
    Ok((&renewal - &direct).max_abs_coeff())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_maps::catalog::*;
    use crate::interval_maps::Branch;
    use crate::spectral::markov::fredholm_markov;

    /// `log ζ` coefficients from counting fixed points of the closed branches
    /// of `Fⁿ` cylinder by cylinder; independent of the signed machinery.
    fn periodic_log_coeffs(map: &PLMap, k: usize) -> Vec<f64> {
        // Each item is a cylinder [l, r] with Fⁿ(y) = s·y + t on it.
        let mut items = vec![(0.0f64, 1.0f64, 1.0f64, 0.0f64)];
        let mut out = vec![0.0];
        for n in 1..=k {
            let mut next = Vec::new();
            for &(l, r, s, t) in &items {
                let (lo, hi) = {
                    let (u, v) = (s * l + t, s * r + t);
                    (u.min(v), u.max(v))
                };
                for b in map.branches() {
                    let (cl, cr) = (lo.max(b.left), hi.min(b.right));
                    if cr - cl <= 1e-9 {
                        continue;
                    }
                    let (y1, y2) = ((cl - t) / s, (cr - t) / s);
                    let (s2, t2) = if b.sign > 0 {
                        (b.beta * s, b.image_left + b.beta * (t - b.left))
                    } else {
                        (-b.beta * s, b.image_right - b.beta * (t - b.left))
                    };
                    next.push((y1.min(y2), y1.max(y2), s2, t2));
                }
            }
            items = next;
            let count = items
                .iter()
                .filter(|&&(l, r, s, t)| {
                    let p = t / (1.0 - s);
                    l - 1e-9 <= p && p <= r + 1e-9
                })
                .count();
            out.push(count as f64 / map.beta().powi(n as i32) / n as f64);
        }
        out
    }

    fn other_maps() -> Vec<PLMap> {
        let neg = 1.0 - 1.0 / 1.7;
        vec![
            beta_map(1.9).unwrap(),
            PLMap::new(vec![
                Branch {
                    left: 0.0,
                    right: neg,
                    sign: 1,
                    beta: 1.7,
                    image_left: 1.0 - 1.7 * neg,
                    image_right: 1.0,
                },
                Branch {
                    left: neg,
                    right: 1.0,
                    sign: -1,
                    beta: 1.7,
                    image_left: 0.0,
                    image_right: 1.0,
                },
            ])
            .unwrap(),
            PLMap::new(vec![
                Branch {
                    left: 0.0,
                    right: 0.5,
                    sign: 1,
                    beta: 1.8,
                    image_left: 0.0,
                    image_right: 0.9,
                },
                Branch {
                    left: 0.5,
                    right: 1.0,
                    sign: -1,
                    beta: 1.8,
                    image_left: 0.0,
                    image_right: 0.9,
                },
            ])
            .unwrap(),
        ]
    }

    #[test]
    fn sigma_values() {
        let below = OneSided {
            value: 0.5,
            side: Side::Below,
        };
        let above = OneSided {
            value: 0.5,
            side: Side::Above,
        };
        assert_eq!(sigma(below, (0.5, 0)), -0.5);
        assert_eq!(sigma(below, (0.5, -1)), 0.5);
        assert_eq!(sigma(above, (0.5, 0)), -0.5);
        assert_eq!(sigma(above, (0.5, 1)), 0.5);
        assert_eq!(sigma(below, (0.2, 0)), 0.5);
        assert_eq!(sigma(above, (0.2, 0)), -0.5);
    }

    #[test]
    fn det_is_reciprocal_zeta() {
        let k = 10;
        let mut maps = vec![
            doubling(),
            tent(),
            golden_mean(),
            full_shift(3),
            two_block(),
        ];
        maps.extend(other_maps());
        for m in maps {
            let det = signed_fredholm::<f64>(&m, k).unwrap().phi.det().unwrap();
            let log_zeta = -&det.log().unwrap();
            let oracle = periodic_log_coeffs(&m, k);
            for n in 1..=k {
                assert!(
                    (log_zeta.coeff(n) - oracle[n]).abs() < 1e-12,
                    "{:?} n={n}: {} vs {}",
                    m.branches(),
                    log_zeta.coeff(n),
                    oracle[n]
                );
            }
        }
    }

    #[test]
    fn signed_matches_markov_route() {
        for m in [doubling(), tent(), golden_mean(), full_shift(3)] {
            let a = signed_fredholm::<f64>(&m, 12).unwrap().phi.det().unwrap();
            let b = fredholm_markov::<f64>(&m, 12).unwrap().det().unwrap();
            assert!((&a - &b).max_abs_coeff() < 1e-12);
        }
    }

    #[test]
    fn coefficient_bound() {
        for m in other_maps() {
            let sf = signed_fredholm::<f64>(&m, 30).unwrap();
            for e in sf.phi.entries().iter().flatten() {
                for n in 0..=30 {
                    assert!(e.coeff(n).abs() <= 0.5 / m.beta().powi(n as i32) + 1e-15);
                }
            }
        }
    }

    #[test]
    fn renewal_matches_enumeration() {
        let mut maps = vec![doubling(), tent(), golden_mean(), full_shift(3)];
        maps.extend(other_maps());
        let intervals = [
            (0.1, 0.45),
            (0.2, 0.95),
            (0.0, 0.5),
            (0.5, 1.0),
            (0.0, 1.0),
            (0.3, 0.3),
        ];
        for m in &maps {
            for x in [0.3141, 0.777, 0.5, 0.0] {
                for j in intervals {
                    if m.branches().iter().any(|b| b.sign < 0 && b.image_left == x) {
                        continue;
                    }
                    let r = renewal_check(m, j, x, 9).unwrap();
                    assert!(r < 1e-10, "{:?} x={x} J={j:?}: {r}", m.branches());
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let s = enumerate_generating_function(&doubling(), (0.0, 0.5), 0.5, 4).unwrap();
        assert_eq!(s.coeffs(), &[0.0, 0.5, 0.5, 0.5, 0.5]);
        let all = enumerate_generating_function(&tent(), (0.0, 1.0), 0.3, 6).unwrap();
        assert!(all.coeffs().iter().all(|&c| c == 1.0));
        assert!(renewal_check(&doubling(), (0.0, 0.5), 0.5, 8).unwrap() < 1e-10);
    }
}
