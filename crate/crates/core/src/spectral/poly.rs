//! Polynomials for the exact Markov spectrum: integer characteristic
//! polynomials, square-free decomposition over ℚ, and simultaneous root
//! iteration.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval_maps::TransitionMatrix;

/// Coefficients in ascending order.
pub type QPoly = Vec<BigRational>;

fn trim(mut p: QPoly) -> QPoly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn deg(p: &QPoly) -> usize {
    p.len() - 1
}

fn is_zero(p: &QPoly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn monic(p: QPoly) -> QPoly {
    let p = trim(p);
    let lead = p.last().unwrap().clone();
    if lead.is_zero() {
        return p;
    }
    p.into_iter().map(|c| c / lead.clone()).collect()
}

fn derivative(p: &QPoly) -> QPoly {
    if p.len() == 1 {
        return vec![BigRational::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigRational::zero)
                    - b.get(i).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect(),
    )
}

/// Quotient and remainder.
fn divmod(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let b = trim(b.clone());
    let mut r = trim(a.clone());
    if deg(&r) < deg(&b) || is_zero(&r) {
        return (vec![BigRational::zero()], r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); deg(&r) - deg(&b) + 1];
    while !is_zero(&r) && deg(&r) >= deg(&b) {
        let shift = deg(&r) - deg(&b);
        let f = r.last().unwrap().clone() / lead.clone();
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].clone() - f.clone() * c;
        }
        q[shift] = f;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !is_zero(&y) {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// `det(λI - A)` by Faddeev–LeVerrier, ascending and monic.
pub fn charpoly(a: &TransitionMatrix) -> Vec<BigInt> {
    let n = a.size();
    let am: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(a.get(i, j))).collect())
        .collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigInt::zero(), |s, l| s + &am[i][l] * &m[l][j]))
                    .collect()
            })
            .collect();
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let tr = (0..n).fold(BigInt::zero(), |s, i| {
            s + (0..n).fold(BigInt::zero(), |t, l| t + &am[i][l] * &m[l][i])
        });
        c[n - k] = -tr / BigInt::from(k);
    }
    c
}

/// Square-free factors `(f_i, i)` with `p = Π f_i^i` up to a constant (Yun).
pub fn square_free(p: &QPoly) -> Vec<(QPoly, usize)> {
    let p = monic(p.clone());
    if deg(&p) == 0 {
        return Vec::new();
    }
    let dp = derivative(&p);
    let a0 = gcd(&p, &dp);
    let mut b = divmod(&p, &a0).0;
    let c = divmod(&dp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while deg(&b) > 0 {
        let a = gcd(&b, &d);
        if deg(&a) > 0 {
            out.push((a.clone(), i));
        }
        let nb = divmod(&b, &a).0;
        let nc = divmod(&d, &a).0;
        d = sub(&nc, &derivative(&nb));
        b = nb;
        i += 1;
    }
    out
}

pub fn to_rational(p: &[BigInt]) -> QPoly {
    p.iter().cloned().map(BigRational::from_integer).collect()
}

pub fn to_complex(p: &QPoly) -> Vec<Complex64> {
    p.iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect()
}

/// Strips `λ^m` factors; returns the reduced polynomial and `m`.
pub fn strip_zero_roots(p: &QPoly) -> (QPoly, usize) {
    let m = p
        .iter()
        .take_while(|c| c.is_zero())
        .count()
        .min(p.len() - 1);
    (p[m..].to_vec(), m)
}

pub fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_with_derivative(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// All roots of `p` (ascending coefficients) by Aberth–Ehrlich iteration.
pub fn aberth(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut p = p.to_vec();
    while p.len() > 1 && p.last().is_some_and(|c| c.norm() == 0.0) {
        p.pop();
    }
    let n = p.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n];
    let p: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-p[0]]);
    }
    // Initial guesses on a circle inside the Cauchy bound.
    let bound = 1.0 + p[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = p[..n]
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| c.norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .clamp(1e-3, bound);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    let mut converged = false;
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (v, d) = horner_with_derivative(&p, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[k] -= step;
                worst = worst.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        let residual = z.iter().map(|&r| horner(&p, r).norm()).fold(0.0, f64::max);
        if residual > 1e-8 {
            return Err(Error::Numerical(format!(
                "root iteration did not converge (max residual {residual:.3e})"
            )));
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_maps::TransitionMatrix;

    fn q(v: &[i64]) -> QPoly {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn charpoly_small() {
        let a = TransitionMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(charpoly(&a), vec![(-1).into(), (-1).into(), 1.into()]);
        let ones = TransitionMatrix::from_rows(vec![vec![1; 3]; 3]);
        assert_eq!(
            charpoly(&ones),
            vec![0.into(), 0.into(), (-3).into(), 1.into()]
        );
    }

    #[test]
    fn yun_multiplicities() {
        // (x-1)^2 (x+2) x^3
        let p = q(&[0, 0, 0, 2, -3, 0, 1]);
        let f = square_free(&p);
        let mult: Vec<usize> = f.iter().map(|(_, m)| *m).collect();
        assert_eq!(mult, vec![1, 2, 3]);
        assert_eq!(f[0].0, q(&[2, 1]));
        assert_eq!(f[1].0, q(&[-1, 1]));
        assert_eq!(f[2].0, q(&[0, 1]));
    }

    #[test]
    fn aberth_finds_known_roots() {
        // z^3 - 1
        let p = vec![
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let mut r = aberth(&p).unwrap();
        r.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        let expect = [
            Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / 3.0),
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0),
        ];
        for (a, b) in r.iter().zip(expect) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}
