use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::markov::transition_matrix;
use super::poly::{
    aberth, charpoly, horner, square_free, strip_zero_roots, to_complex, to_rational,
};
use crate::error::{Error, Result};
use crate::interval_maps::PLMap;

/// Tolerance for "this zero is 1" and for the strict inside test `|z| < β(1-tol)`.
pub const ROOT_TOL: f64 = 1e-9;
/// Alphabet size limit for the exact characteristic polynomial.
pub const MAX_ALPHABET: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralZero {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub multiplicity: usize,
    /// `|det(I - Φ(z))|` at the reported location.
    pub residual: f64,
}

impl SpectralZero {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub beta: f64,
    /// All zeros of `det(I - Φ(z))`, sorted by modulus then argument.
    pub zeros: Vec<SpectralZero>,
    /// Coefficients of `det(I - Φ(z))` in ascending powers of `z`.
    pub det_coeffs: Vec<f64>,
    /// Multiplicity of the zero at `z = 1` (0 when absent).
    pub unit_multiplicity: usize,
    pub det_derivative_at_one: f64,
    /// `1/|z₂|` for the smallest-modulus zero `z₂ ≠ 1`, i.e. the modulus of
    /// the second eigenvalue of the transfer operator.
    pub eta: Option<f64>,
    /// No zero in `|z| < β` other than a simple zero at 1.
    pub certificate: bool,
}

impl SpectrumReport {
    pub fn zeros_inside(&self) -> impl Iterator<Item = &SpectralZero> {
        let limit = self.beta * (1.0 - ROOT_TOL);
        self.zeros.iter().filter(move |z| z.modulus < limit)
    }
}

/// Zeros of the Markov Fredholm determinant from the eigenvalues of `A`:
/// `det(I - zA/β) = 0` iff `z = β/λ` for a nonzero eigenvalue `λ`.
pub fn spectrum(map: &PLMap) -> Result<SpectrumReport> {
    let a = transition_matrix(map)?;
    let n = a.size();
    if n > MAX_ALPHABET {
        return Err(Error::Resource(format!(
            "alphabet size {n} exceeds the limit {MAX_ALPHABET}"
        )));
    }
    let beta = map.beta();
    let p = charpoly(&a);
    // det(I - wA) = Σ p_{n-k} w^k with w = z/β.
    let det_coeffs: Vec<f64> = (0..=n)
        .map(|k| p[n - k].to_f64().unwrap() / beta.powi(k as i32))
        .collect();
    let det_c: Vec<Complex64> = det_coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let mut zeros = Vec::new();
    for (factor, mult) in square_free(&to_rational(&p)) {
        let (reduced, _) = strip_zero_roots(&factor);
        for lambda in aberth(&to_complex(&reduced))? {
            let z = beta / lambda;
            zeros.push(SpectralZero {
                re: z.re,
                im: if z.im.abs() < 1e-14 { 0.0 } else { z.im },
                modulus: z.norm(),
                multiplicity: mult,
                residual: horner(&det_c, z).norm(),
            });
        }
    }
    zeros.sort_by(|x, y| {
        x.modulus
            .total_cmp(&y.modulus)
            .then(x.im.atan2(x.re).total_cmp(&y.im.atan2(y.re)))
    });
    let is_one = |z: &SpectralZero| (z.value() - 1.0).norm() < ROOT_TOL;
    let unit_multiplicity = zeros
        .iter()
        .filter(|z| is_one(z))
        .map(|z| z.multiplicity)
        .sum();
    let det_derivative_at_one = det_coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .sum();
    let eta = zeros
        .iter()
        .filter(|z| !is_one(z))
        .map(|z| z.modulus)
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))))
        .map(|m| 1.0 / m);
    let limit = beta * (1.0 - ROOT_TOL);
    let certificate = unit_multiplicity == 1
        && f64::abs(det_derivative_at_one) > 1e-6
        && zeros.iter().filter(|z| z.modulus < limit).all(is_one);
    Ok(SpectrumReport {
        beta,
        zeros,
        det_coeffs,
        unit_multiplicity,
        det_derivative_at_one,
        eta,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_maps::catalog::*;

    #[test]
    fn doubling_has_single_zero() {
        let r = spectrum(&doubling()).unwrap();
        assert_eq!(r.zeros.len(), 1);
        assert!((r.zeros[0].value() - 1.0).norm() < 1e-12);
        assert!(r.certificate);
        assert_eq!(r.eta, None);
    }

    #[test]
    fn golden() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let r = spectrum(&golden_mean()).unwrap();
        assert_eq!(r.zeros.len(), 2);
        assert!((r.zeros[0].value() - 1.0).norm() < 1e-9);
        assert!((r.zeros[1].value() + phi * phi).norm() < 1e-9);
        assert!(r.certificate);
        assert!((r.eta.unwrap() - 1.0 / (phi * phi)).abs() < 1e-12);
        assert!(r.zeros.iter().all(|z| z.residual < 1e-12));
    }

    #[test]
    fn non_ergodic_fails() {
        let r = spectrum(&two_block()).unwrap();
        assert_eq!(r.unit_multiplicity, 2);
        assert!(!r.certificate);
        assert!(matches!(
            spectrum(&beta_map(1.9).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn multiplicities_sum_to_det_degree() {
        for m in [tent(), full_shift(3), golden_mean(), two_block()] {
            let r = spectrum(&m).unwrap();
            let deg = r.det_coeffs.iter().rposition(|c| c.abs() > 1e-12).unwrap();
            assert_eq!(r.zeros.iter().map(|z| z.multiplicity).sum::<usize>(), deg);
        }
    }
}
