use num_complex::Complex64;
use serde::Serialize;

use super::fredholm::FredholmSeries;
use super::markov::zeta_markov;
use super::poly::aberth;
use super::series::PowerSeries;
use super::signed::signed_fredholm;
use crate::error::Result;
use crate::interval_maps::{
    classify_endpoints, markov_structure, PLMap, SignedSymbol, DEFAULT_ENDPOINT_DEPTH,
};

pub const DEFAULT_DEGREE: usize = 60;
pub const CONTOUR_SAMPLES: usize = 4096;
pub const CONTOUR_RADIUS_FACTOR: f64 = 0.95;
/// The contour minimum of `|det|` must exceed this multiple of the truncation bound.
pub const SAFETY_FACTOR: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    Markov,
    Signed,
}

/// `ζₙ = βⁿ · [zⁿ] (1 - z)ζ(z)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaBound {
    pub route: Route,
    pub coeffs: Vec<f64>,
    pub sup: f64,
    /// Largest `|ζₙ|` over the first half of the range and over the second half.
    pub head_sup: f64,
    pub tail_sup: f64,
    /// The second half does not exceed twice the first half.
    pub appears_bounded: bool,
}

/// `ζ(z)` to degree `K`, through the transition matrix when the map is Markov
/// and through the signed Fredholm determinant otherwise.
pub fn zeta_any(map: &PLMap, degree: usize) -> Result<(Route, PowerSeries<f64>)> {
    if markov_structure(map, DEFAULT_ENDPOINT_DEPTH)
        .matrix()
        .is_some()
    {
        return Ok((Route::Markov, zeta_markov(map, degree)?));
    }
    let det = signed_fredholm::<f64>(map, degree)?.phi.det()?;
    Ok((Route::Signed, det.inverse()?))
}

pub fn zeta_coefficient_bound(map: &PLMap, n_max: usize) -> Result<ZetaBound> {
    let (route, zeta) = zeta_any(map, n_max)?;
    let mut one_minus_z = PowerSeries::one(n_max);
    one_minus_z.add_at(1, -1.0);
    let p = &one_minus_z * &zeta;
    let coeffs: Vec<f64> = (0..=n_max)
        .map(|n| p.coeff(n) * map.beta().powi(n as i32))
        .collect();
    let half = n_max / 2;
    let max_abs = |s: &[f64]| s.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let head_sup = max_abs(&coeffs[..=half]);
    let tail_sup = max_abs(&coeffs[half + 1..]);
    Ok(ZetaBound {
        route,
        sup: head_sup.max(tail_sup),
        appears_bounded: tail_sup <= 2.0 * head_sup + 1e-9,
        head_sup,
        tail_sup,
        coeffs,
    })
}

/// Determinant of a small dense complex matrix by partial pivoting.
pub fn complex_det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].norm().total_cmp(&m[b][c].norm()))
            .unwrap();
        if m[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for cc in c..n {
                let v = m[c][cc];
                m[r][cc] -= f * v;
            }
        }
    }
    det
}

/// `det(I - Φ_K(z))` and a bound on `|det(I - Φ(z)) - det(I - Φ_K(z))|`.
///
/// Expanding the determinant row by row, replacing any set of rows by their
/// tails and bounding each term by the product of row 1-norms gives
/// `Π(‖Mᵢ‖ + ‖Eᵢ‖) - Π‖Mᵢ‖` with `‖Eᵢ‖ ≤ m·τᵢ`.
pub fn det_with_bound(phi: &FredholmSeries<f64>, z: Complex64) -> (Complex64, f64) {
    let m = phi.eval_identity_minus(z);
    let size = m.len();
    let r = z.norm();
    let mut with_tail = 1.0;
    let mut without = 1.0;
    for (i, row) in m.iter().enumerate() {
        let norm: f64 = row.iter().map(|c| c.norm()).sum();
        let tail = size as f64 * phi.row_tail_bound(i, r);
        with_tail *= norm + tail;
        without *= norm;
    }
    (complex_det(m), with_tail - without)
}

/// Argument-principle zero count of `det(I - Φ(z))` inside `|z| = radius`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourCount {
    pub radius: f64,
    pub samples: usize,
    pub winding: i64,
    pub min_abs: f64,
    pub max_bound: f64,
    /// Winding is trustworthy: the truncation error stays below `|det|/10` and
    /// consecutive samples turn by less than a quarter turn.
    pub conclusive: bool,
}

pub fn contour_count(phi: &FredholmSeries<f64>, radius: f64, samples: usize) -> ContourCount {
    let mut total_arg = 0.0;
    let mut min_abs = f64::INFINITY;
    let mut max_bound: f64 = 0.0;
    let mut conclusive = true;
    let point = |k: usize| {
        Complex64::from_polar(
            radius,
            2.0 * std::f64::consts::PI * k as f64 / samples as f64,
        )
    };
    for k in 0..samples {
        let (d, b) = det_with_bound(phi, point(k));
        min_abs = min_abs.min(d.norm());
        max_bound = max_bound.max(b);
        if d.norm() <= SAFETY_FACTOR * b || d.norm() < 1e-12 {
            conclusive = false;
        }
        let (next, _) = det_with_bound(phi, point((k + 1) % samples));
        let step = (next / d).arg();
        if step.abs() >= std::f64::consts::FRAC_PI_2 {
            conclusive = false;
        }
        total_arg += step;
    }
    ContourCount {
        radius,
        samples,
        winding: (total_arg / (2.0 * std::f64::consts::PI)).round() as i64,
        min_abs,
        max_bound,
        conclusive,
    }
}

/// Whether `det(I - Φ(z))` vanishes at `z = 1`, and whether that zero is simple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitZero {
    pub value: f64,
    pub bound: f64,
    pub is_zero: bool,
    pub derivative: f64,
    pub simple: bool,
}

pub fn unit_zero(phi: &FredholmSeries<f64>) -> UnitZero {
    let one = Complex64::new(1.0, 0.0);
    let (d, bound) = det_with_bound(phi, one);
    let h = 1e-5;
    let dp = (complex_det(phi.eval_identity_minus(one + h))
        - complex_det(phi.eval_identity_minus(one - h)))
        / (2.0 * h);
    UnitZero {
        value: d.norm(),
        bound,
        is_zero: d.norm() <= SAFETY_FACTOR * bound + 1e-9,
        derivative: dp.re,
        simple: dp.norm() > 1e-6,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    fn from_count(c: &ContourCount, unit: &UnitZero) -> Self {
        if !c.conclusive {
            return Verdict::Inconclusive;
        }
        let excluded = i64::from(unit.is_zero && unit.simple);
        if c.winding - excluded == 0 {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroLocation {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinorCertificate {
    pub degree: usize,
    /// `β⁻ᴷ/(β - 1)`, the coefficient-sum tail of any truncated entry.
    pub truncation_bound: f64,
    pub markov_symbols: Vec<String>,
    pub non_markov_symbols: Vec<String>,
    pub minor_contour: ContourCount,
    pub minor_unit_zero: UnitZero,
    /// No zero of `det(I - Φ₁₁)` in `|z| ≤ r` apart from a simple zero at 1.
    pub verdict: Verdict,
    pub zeta_contour: ContourCount,
    pub zeta_unit_zero: UnitZero,
    /// No zero of the full `det(I - Φ) = 1/ζ` in `|z| ≤ r` apart from a simple zero at 1.
    pub zeta_verdict: Verdict,
    /// Zeros of the truncated minor determinant polynomial inside the contour.
    pub minor_zeros: Vec<ZeroLocation>,
    /// Zeros of the truncated full determinant polynomial inside the contour.
    pub zeta_zeros: Vec<ZeroLocation>,
}

fn zeros_inside(det: &PowerSeries<f64>, radius: f64) -> Vec<ZeroLocation> {
    let p: Vec<Complex64> = det
        .coeffs()
        .iter()
        .map(|&c| Complex64::new(c, 0.0))
        .collect();
    let scale = det.max_abs_coeff();
    let mut p = p;
    while p.len() > 1 && p.last().is_some_and(|c| c.norm() <= 1e-14 * scale) {
        p.pop();
    }
    match aberth(&p) {
        Ok(roots) => {
            let mut v: Vec<ZeroLocation> = roots
                .into_iter()
                .filter(|z| z.norm() < radius)
                .map(|z| ZeroLocation {
                    re: z.re,
                    im: if z.im.abs() < 1e-12 { 0.0 } else { z.im },
                    modulus: z.norm(),
                })
                .collect();
            v.sort_by(|a, b| a.modulus.total_cmp(&b.modulus).then(a.im.total_cmp(&b.im)));
            v
        }
        Err(e) => {
            log::warn!("zero locations unavailable: {e}");
            Vec::new()
        }
    }
}

/// Checks that `det(I - Φ₁₁(z))`, the minor on Markov endpoints, has no zero
/// in `|z| ≤ 0.95β` other than a simple zero at 1, and re-checks the same for
/// the full determinant `1/ζ`.
pub fn markov_minor_certificate(map: &PLMap, degree: usize) -> Result<MinorCertificate> {
    let sf = signed_fredholm::<f64>(map, degree)?;
    let classes = classify_endpoints(map, DEFAULT_ENDPOINT_DEPTH);
    let is_markov = |s: SignedSymbol| {
        classes
            .iter()
            .find(|c| c.symbol == s)
            .is_some_and(|c| c.is_markov())
    };
    let idx: Vec<usize> = (0..sf.orbits.symbols.len())
        .filter(|&i| is_markov(sf.orbits.symbols[i]))
        .collect();
    let minor = sf.phi.minor(&idx);
    let radius = CONTOUR_RADIUS_FACTOR * map.beta();
    let minor_contour = contour_count(&minor, radius, CONTOUR_SAMPLES);
    let minor_unit_zero = unit_zero(&minor);
    let zeta_contour = contour_count(&sf.phi, radius, CONTOUR_SAMPLES);
    let zeta_unit_zero = unit_zero(&sf.phi);
    let beta = map.beta();
    Ok(MinorCertificate {
        degree,
        truncation_bound: beta.powi(-(degree as i32)) / (beta - 1.0),
        markov_symbols: idx
            .iter()
            .map(|&i| sf.orbits.symbols[i].to_string())
            .collect(),
        non_markov_symbols: sf
            .orbits
            .symbols
            .iter()
            .filter(|&&s| !is_markov(s))
            .map(|s| s.to_string())
            .collect(),
        verdict: Verdict::from_count(&minor_contour, &minor_unit_zero),
        zeta_verdict: Verdict::from_count(&zeta_contour, &zeta_unit_zero),
        minor_zeros: zeros_inside(&minor.det()?, radius),
        zeta_zeros: zeros_inside(&sf.phi.det()?, radius),
        minor_contour,
        minor_unit_zero,
        zeta_contour,
        zeta_unit_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_maps::catalog::*;

    #[test]
    fn zeta_bounds() {
        let d = zeta_coefficient_bound(&doubling(), 20).unwrap();
        assert_eq!(d.route, Route::Markov);
        assert_eq!(d.coeffs[0], 1.0);
        assert!(d.coeffs[1..].iter().all(|c| c.abs() < 1e-9));
        assert!(d.appears_bounded);
        let g = zeta_coefficient_bound(&golden_mean(), 40).unwrap();
        assert!(g.appears_bounded && g.sup < 2.0);
        let z = zeta_coefficient_bound(&tent(), 0).unwrap();
        assert_eq!(z.coeffs, vec![1.0]);
    }

    #[test]
    fn complex_det_small() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let m = vec![
            vec![c(1.0, 1.0), c(2.0, 0.0)],
            vec![c(0.0, 1.0), c(3.0, -1.0)],
        ];
        let d = complex_det(m);
        // (1+i)(3-i) - 2i = 4 + 2i - 2i
        assert!((d - c(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn doubling_and_golden_certificates() {
        for m in [doubling(), golden_mean()] {
            let c = markov_minor_certificate(&m, DEFAULT_DEGREE).unwrap();
            assert!(c.non_markov_symbols.is_empty());
            assert_eq!(c.verdict, Verdict::True, "{c:?}");
            assert_eq!(c.zeta_verdict, Verdict::True);
            assert_eq!(c.minor_contour.winding, 1);
            assert!(c.minor_unit_zero.is_zero && c.minor_unit_zero.simple);
        }
    }

    #[test]
    fn two_block_fails() {
        let c = markov_minor_certificate(&two_block(), DEFAULT_DEGREE).unwrap();
        assert_eq!(c.verdict, Verdict::False);
    }
}
