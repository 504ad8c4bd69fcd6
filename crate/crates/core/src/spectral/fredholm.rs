use num_complex::Complex;
use serde::Serialize;

use super::series::PowerSeries;
use crate::error::{usage, Error, Result};
use crate::interval_maps::SignedSymbol;
use crate::scalar::{Coeff, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FredholmKind {
    /// Indexed by cells; entries are `z·A[a][b]/β`.
    Markov,
    /// Indexed by signed endpoint symbols.
    Signed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FredholmIndex {
    Cell(usize),
    Signed(SignedSymbol),
}

impl std::fmt::Display for FredholmIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FredholmIndex::Cell(a) => write!(f, "{a}"),
            FredholmIndex::Signed(s) => write!(f, "{s}"),
        }
    }
}

/// A square matrix of truncated power series `Φ(z)`.
#[derive(Clone, Debug, Serialize)]
pub struct FredholmSeries<T> {
    entries: Vec<Vec<PowerSeries<T>>>,
    labels: Vec<FredholmIndex>,
    beta: f64,
    kind: FredholmKind,
    /// Rows whose entries are infinite series cut at the degree.
    truncated: Vec<bool>,
}

impl<T: Coeff> FredholmSeries<T> {
    pub fn new(
        entries: Vec<Vec<PowerSeries<T>>>,
        labels: Vec<FredholmIndex>,
        beta: f64,
        kind: FredholmKind,
        truncated: Vec<bool>,
    ) -> Result<Self> {
        let n = labels.len();
        if entries.len() != n || truncated.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(usage!(
                "Fredholm matrix must be square with one label per row"
            ));
        }
        Ok(Self {
            entries,
            labels,
            beta,
            kind,
            truncated,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self) -> usize {
        self.entries
            .first()
            .and_then(|r| r.first())
            .map_or(0, PowerSeries::degree)
    }

    pub fn entry(&self, i: usize, j: usize) -> &PowerSeries<T> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<PowerSeries<T>>] {
        &self.entries
    }

    pub fn labels(&self) -> &[FredholmIndex] {
        &self.labels
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn kind(&self) -> FredholmKind {
        self.kind
    }

    pub fn is_row_truncated(&self, i: usize) -> bool {
        self.truncated[i]
    }

    /// `I - Φ(z)`.
    pub fn identity_minus(&self) -> Vec<Vec<PowerSeries<T>>> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, e)| {
                        let mut m = -e;
                        if i == j {
                            m.add_at(0, T::one());
                        }
                        m
                    })
                    .collect()
            })
            .collect()
    }

    /// `det(I - Φ(z))` to the matrix degree.
    pub fn det(&self) -> Result<PowerSeries<T>> {
        det_series(&self.identity_minus(), self.degree())
    }

    /// Principal minor on the given row/column positions.
    pub fn minor(&self, idx: &[usize]) -> Self {
        Self {
            entries: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
            beta: self.beta,
            kind: self.kind,
            truncated: idx.iter().map(|&i| self.truncated[i]).collect(),
        }
    }

    /// Solves `(I - Φ) t = rhs` over the series ring.
    pub fn solve(&self, rhs: &[PowerSeries<T>]) -> Result<Vec<PowerSeries<T>>> {
        solve_series(&self.identity_minus(), rhs)
    }
}

impl<T: Real> FredholmSeries<T> {
    /// `I - Φ_K(z)` evaluated at a complex point.
    pub fn eval_identity_minus(&self, z: Complex<T>) -> Vec<Vec<Complex<T>>> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, e)| {
                        let d = if i == j { T::one() } else { T::zero() };
                        Complex::new(d, T::zero()) - e.eval(z)
                    })
                    .collect()
            })
            .collect()
    }

    /// Bound on `|Φ_{ij}(z) - Φ_K{ij}(z)|` on `|z| = r < β` for row `i`.
    ///
    /// Entry coefficients of a signed matrix satisfy `|cₙ| ≤ β⁻ⁿ/2`, so the tail
    /// past degree `K` is at most `½ (r/β)^{K+1} / (1 - r/β)`.
    pub fn row_tail_bound(&self, i: usize, r: T) -> T {
        if !self.truncated[i] {
            return T::zero();
        }
        let q = r / T::lit(self.beta);
        let k = self.degree() as i32;
        T::lit(0.5) * q.powi(k + 1) / (T::one() - q)
    }
}

/// Determinant over the truncated series ring by elimination with unit pivots.
pub fn det_series<T: Coeff>(m: &[Vec<PowerSeries<T>>], degree: usize) -> Result<PowerSeries<T>> {
    let n = m.len();
    let mut a: Vec<Vec<PowerSeries<T>>> = m
        .iter()
        .map(|r| r.iter().map(|e| e.truncate(degree)).collect())
        .collect();
    let mut det = PowerSeries::one(degree);
    for c in 0..n {
        let p = pivot_row(&a, c)?;
        if p != c {
            a.swap(p, c);
            det = -&det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inverse()?;
        for r in c + 1..n {
            if a[r][c].coeffs().iter().all(|x| x.is_zero()) {
                continue;
            }
            let f = &a[r][c] * &inv;
            for cc in c..n {
                let t = &f * &a[c][cc];
                a[r][cc] = &a[r][cc] - &t;
            }
        }
    }
    Ok(det)
}

fn pivot_row<T: Coeff>(a: &[Vec<PowerSeries<T>>], c: usize) -> Result<usize> {
    let mut best: Option<(usize, T)> = None;
    for (r, row) in a.iter().enumerate().skip(c) {
        let v = row[c].coeff(0).abs();
        if !v.is_zero() && best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((r, v));
        }
    }
    best.map(|(r, _)| r).ok_or_else(|| {
        Error::Numerical(format!("no pivot with nonzero constant term in column {c}"))
    })
}

/// Gauss–Jordan solve of `m t = rhs` over the truncated series ring.
pub fn solve_series<T: Coeff>(
    m: &[Vec<PowerSeries<T>>],
    rhs: &[PowerSeries<T>],
) -> Result<Vec<PowerSeries<T>>> {
    let n = m.len();
    if rhs.len() != n {
        return Err(usage!(
            "right-hand side has {} rows, matrix has {n}",
            rhs.len()
        ));
    }
    let mut a = m.to_vec();
    let mut b = rhs.to_vec();
    for c in 0..n {
        let p = pivot_row(&a, c)?;
        a.swap(p, c);
        b.swap(p, c);
        let inv = a[c][c].inverse()?;
        for r in 0..n {
            if r == c || a[r][c].coeffs().iter().all(|x| x.is_zero()) {
                continue;
            }
            let f = &a[r][c] * &inv;
            for cc in c..n {
                let t = &f * &a[c][cc];
                a[r][cc] = &a[r][cc] - &t;
            }
            let t = &f * &b[c];
            b[r] = &b[r] - &t;
        }
    }
    (0..n).map(|i| Ok(&b[i] * &a[i][i].inverse()?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[f64]) -> PowerSeries<f64> {
        PowerSeries::from_coeffs(c.to_vec())
    }

    /// Leibniz expansion, used as an independent determinant oracle.
    fn leibniz(m: &[Vec<PowerSeries<f64>>], k: usize) -> PowerSeries<f64> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        let mut total = PowerSeries::zero(k);
        for p in perms(n) {
            let inv = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut t = PowerSeries::one(k);
            for i in 0..n {
                t = &t * &m[i][p[i]];
            }
            total = if inv % 2 == 0 {
                &total + &t
            } else {
                &total - &t
            };
        }
        total
    }

    #[test]
    fn det_matches_leibniz() {
        let m = vec![
            vec![
                s(&[1.0, 0.3, -0.2, 0.1]),
                s(&[0.0, 0.5, 0.1, 0.0]),
                s(&[2.0, 0.0, 1.0, 0.0]),
            ],
            vec![
                s(&[0.5, -0.5, 0.0, 0.25]),
                s(&[1.0, 0.0, 0.0, 0.3]),
                s(&[0.0, 1.0, 1.0, 1.0]),
            ],
            vec![
                s(&[0.0, 0.0, 0.7, 0.0]),
                s(&[3.0, 0.1, 0.0, 0.0]),
                s(&[1.0, -1.0, 0.0, 0.5]),
            ],
        ];
        let d = det_series(&m, 3).unwrap();
        let l = leibniz(&m, 3);
        for n in 0..=3 {
            assert!((d.coeff(n) - l.coeff(n)).abs() < 1e-13, "coefficient {n}");
        }
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert_eq!(det_series::<f64>(&[], 4).unwrap(), PowerSeries::one(4));
        let f = FredholmSeries::<f64>::new(
            vec![vec![PowerSeries::zero(3); 2]; 2],
            vec![FredholmIndex::Cell(0), FredholmIndex::Cell(1)],
            2.0,
            FredholmKind::Markov,
            vec![false; 2],
        )
        .unwrap();
        assert_eq!(f.det().unwrap(), PowerSeries::one(3));
    }

    #[test]
    fn solve_roundtrip() {
        let m = vec![
            vec![s(&[1.0, -0.5, 0.0]), s(&[0.0, -0.5, 0.0])],
            vec![s(&[0.0, -0.5, 0.0]), s(&[1.0, -0.5, 0.1])],
        ];
        let rhs = vec![s(&[1.0, 0.0, 2.0]), s(&[0.0, 1.0, 0.0])];
        let t = solve_series(&m, &rhs).unwrap();
        for i in 0..2 {
            let back = &(&m[i][0] * &t[0]) + &(&m[i][1] * &t[1]);
            for n in 0..=2 {
                assert!((back.coeff(n) - rhs[i].coeff(n)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn singular_constant_term_is_reported() {
        let m = vec![vec![s(&[0.0, 1.0])]];
        assert!(matches!(det_series(&m, 1), Err(Error::Numerical(_))));
    }
}
