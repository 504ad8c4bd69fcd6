use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::Serialize;

use crate::error::{usage, Result};
use crate::scalar::{Coeff, Real};

/// A power series `c₀ + c₁z + … + c_K z^K` truncated at degree `K`.
///
/// Binary operations between series of different degree truncate to the
/// smaller degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> PowerSeries<T> {
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(degree, 0, T::one())
    }

    /// `c·zⁿ`, or zero when `n` exceeds the degree.
    pub fn monomial(degree: usize, n: usize, c: T) -> Self {
        let mut s = Self::zero(degree);
        if n <= degree {
            s.coeffs[n] = c;
        }
        s
    }

    /// Coefficients `c₀, c₁, …`; the degree is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c0");
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> T {
        self.coeffs.get(n).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn set(&mut self, n: usize, c: T) {
        self.coeffs[n] = c;
    }

    pub fn add_at(&mut self, n: usize, c: T) {
        if n <= self.degree() {
            self.coeffs[n] = self.coeffs[n].clone() + c;
        }
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, T::zero());
        Self { coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(usage!("series with zero constant term is not invertible"));
        }
        let k = self.degree();
        let a0 = self.coeffs[0].clone();
        let mut b = vec![T::zero(); k + 1];
        b[0] = T::one() / a0.clone();
        for n in 1..=k {
            let mut acc = T::zero();
            for i in 1..=n {
                acc = acc + self.coeffs[i].clone() * b[n - i].clone();
            }
            b[n] = -acc / a0.clone();
        }
        Ok(Self { coeffs: b })
    }

    /// `exp` of a series with zero constant term, via `n·bₙ = Σ k·aₖ·b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(usage!("exp needs a series with zero constant term"));
        }
        let k = self.degree();
        let mut b = vec![T::zero(); k + 1];
        b[0] = T::one();
        for n in 1..=k {
            let mut acc = T::zero();
            for j in 1..=n {
                acc = acc + from_usize::<T>(j) * self.coeffs[j].clone() * b[n - j].clone();
            }
            b[n] = acc / from_usize::<T>(n);
        }
        Ok(Self { coeffs: b })
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(usage!("log needs a series with constant term 1"));
        }
        let k = self.degree();
        let q = &self.derivative() * &self.inverse()?;
        let mut c = vec![T::zero(); k + 1];
        for n in 1..=k {
            c[n] = q.coeff(n - 1) / from_usize::<T>(n);
        }
        Ok(Self { coeffs: c })
    }

    /// Formal derivative, keeping the degree.
    pub fn derivative(&self) -> Self {
        let k = self.degree();
        let mut c = vec![T::zero(); k + 1];
        for n in 1..=k {
            c[n - 1] = from_usize::<T>(n) * self.coeffs[n].clone();
        }
        Self { coeffs: c }
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), |m, c| if c > m { c } else { m })
    }

    /// `Σ cₙ` (evaluation at z = 1).
    pub fn sum(&self) -> T {
        self.coeffs.iter().cloned().fold(T::zero(), |a, b| a + b)
    }
}

impl<T: Real> PowerSeries<T> {
    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
    }

    /// `Σ |cₙ| rⁿ`, an upper bound of `|s(z)|` on `|z| = r`.
    pub fn abs_sum(&self, r: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * r + c.abs())
    }
}

fn from_usize<T: Coeff>(n: usize) -> T {
    T::from_usize(n).expect("small integer is representable")
}

impl<T: Coeff> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn add(self, rhs: Self) -> PowerSeries<T> {
        let k = self.degree().min(rhs.degree());
        PowerSeries {
            coeffs: (0..=k)
                .map(|n| self.coeffs[n].clone() + rhs.coeffs[n].clone())
                .collect(),
        }
    }
}

impl<T: Coeff> Sub for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn sub(self, rhs: Self) -> PowerSeries<T> {
        let k = self.degree().min(rhs.degree());
        PowerSeries {
            coeffs: (0..=k)
                .map(|n| self.coeffs[n].clone() - rhs.coeffs[n].clone())
                .collect(),
        }
    }
}

impl<T: Coeff> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn mul(self, rhs: Self) -> PowerSeries<T> {
        let k = self.degree().min(rhs.degree());
        let mut c = vec![T::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k + 1 - i) {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: c }
    }
}

impl<T: Coeff> Neg for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn neg(self) -> PowerSeries<T> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn s(c: &[f64]) -> PowerSeries<f64> {
        PowerSeries::from_coeffs(c.to_vec())
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_z = s(&[1.0, -1.0, 0.0, 0.0, 0.0]);
        assert_eq!(one_minus_z.inverse().unwrap().coeffs(), &[1.0; 5]);
        assert!(s(&[0.0, 1.0]).inverse().is_err());
    }

    #[test]
    fn exp_log_roundtrip() {
        let a = s(&[0.0, 0.5, -0.25, 0.125, 1.0, 0.0, 0.3]);
        let e = a.exp().unwrap();
        let back = e.log().unwrap();
        for n in 0..=6 {
            assert!((back.coeff(n) - a.coeff(n)).abs() < 1e-14);
        }
        // exp(z) coefficients are 1/n!.
        let ez = s(&[0.0, 1.0, 0.0, 0.0, 0.0]).exp().unwrap();
        assert_eq!(ez.coeffs(), &[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0]);
    }

    #[test]
    fn exact_rational_series() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let a = PowerSeries::from_coeffs(vec![r(1, 1), r(-1, 2), r(0, 1), r(0, 1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.coeffs(), &[r(1, 1), r(1, 2), r(1, 4), r(1, 8)]);
        assert_eq!((&a * &inv), PowerSeries::one(3));
    }

    #[test]
    fn mixed_degrees_truncate() {
        let p = &s(&[1.0, 1.0, 1.0]) * &s(&[1.0, 1.0]);
        assert_eq!(p.coeffs(), &[1.0, 2.0]);
        assert_eq!(
            (&s(&[1.0, 2.0, 3.0]) - &s(&[1.0, 1.0, 1.0])).coeffs(),
            &[0.0, 1.0, 2.0]
        );
    }

    #[test]
    fn evaluation() {
        let p = s(&[1.0, -1.0]);
        assert_eq!(p.eval(Complex::new(1.0, 0.0)), Complex::new(0.0, 0.0));
        assert_eq!(p.abs_sum(2.0), 3.0);
        assert_eq!(p.sum(), 0.0);
    }
}
