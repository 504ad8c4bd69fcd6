use serde::Serialize;

use super::fredholm::{FredholmIndex, FredholmKind, FredholmSeries};
use super::series::PowerSeries;
use crate::error::{usage, Error, Result};
use crate::interval_maps::{markov_structure, PLMap, TransitionMatrix, DEFAULT_ENDPOINT_DEPTH};
use crate::scalar::{Coeff, Real};

/// The transition matrix, or an `Unsupported` error for non-Markov maps.
pub fn transition_matrix(map: &PLMap) -> Result<TransitionMatrix> {
    markov_structure(map, DEFAULT_ENDPOINT_DEPTH)
        .matrix()
        .cloned()
        .ok_or_else(|| Error::Unsupported("map is not Markov".into()))
}

fn lit<T: Coeff>(v: f64) -> T {
    T::from_f64(v).expect("finite literal")
}

/// `Pⁿf` for `f` constant on cells: each step maps `c ↦ Aᵀc / β`.
pub fn pf_apply<T: Real>(map: &PLMap, f: &[T], n: usize) -> Result<Vec<T>> {
    let a = transition_matrix(map)?;
    let k = a.size();
    if f.len() != k {
        return Err(usage!("{} coefficients for {k} cells", f.len()));
    }
    let inv_beta = T::lit(1.0 / map.beta());
    let mut c = f.to_vec();
    for _ in 0..n {
        c = (0..k)
            .map(|b| {
                (0..k)
                    .filter(|&a_| a.get(a_, b) == 1)
                    .fold(T::zero(), |s, a_| s + c[a_])
                    * inv_beta
            })
            .collect();
    }
    Ok(c)
}

/// `(Aᵀ)ⁿ e_J`: entry `b` counts the level-`n` preimages in cell `J` of any
/// point of cell `b`. Equals `βⁿ Pⁿ 1_J` exactly.
pub fn pf_counts(map: &PLMap, cell: usize, n: usize) -> Result<Vec<u128>> {
    let a = transition_matrix(map)?;
    let k = a.size();
    if cell >= k {
        return Err(usage!("cell {cell} out of range for {k} cells"));
    }
    let mut c = vec![0u128; k];
    c[cell] = 1;
    for _ in 0..n {
        c = (0..k)
            .map(|b| (0..k).filter(|&a_| a.get(a_, b) == 1).map(|a_| c[a_]).sum())
            .collect();
    }
    Ok(c)
}

/// A density that is constant on each cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityFn {
    pub coeffs: Vec<f64>,
    pub widths: Vec<f64>,
}

impl DensityFn {
    pub fn eval(&self, map: &PLMap, x: f64) -> f64 {
        self.coeffs[map.cell_of(x)]
    }

    pub fn integral(&self) -> f64 {
        self.coeffs
            .iter()
            .zip(&self.widths)
            .map(|(c, w)| c * w)
            .sum()
    }
}

/// Reduced row echelon form of `Aᵀ/β - I`; returns (rank, pivot columns, rows).
fn eigen_system(map: &PLMap, a: &TransitionMatrix) -> (usize, Vec<usize>, Vec<Vec<f64>>) {
    let k = a.size();
    let beta = map.beta();
    let mut m: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| f64::from(a.get(j, i)) / beta - if i == j { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    let tol = 1e-9;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..k).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs())) else {
            break;
        };
        if m[p][col].abs() <= tol {
            continue;
        }
        m.swap(row, p);
        let piv = m[row][col];
        for v in &mut m[row] {
            *v /= piv;
        }
        for r in 0..k {
            if r != row && m[r][col] != 0.0 {
                let f = m[r][col];
                for c in 0..k {
                    m[r][c] -= f * m[row][c];
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (row, pivots, m)
}

/// Dimension of the eigenvalue-1 eigenspace of `P`, the number of ergodic
/// components of the absolutely continuous invariant measure.
pub fn ergodic_components(map: &PLMap) -> Result<usize> {
    let a = transition_matrix(map)?;
    let (rank, _, _) = eigen_system(map, &a);
    Ok(a.size() - rank)
}

/// The normalized invariant density, a fixed point of [`pf_apply`].
pub fn invariant_density(map: &PLMap) -> Result<DensityFn> {
    let a = transition_matrix(map)?;
    let k = a.size();
    let (rank, pivots, m) = eigen_system(map, &a);
    if rank + 1 != k {
        return Err(Error::Unsupported(format!(
            "eigenvalue 1 has a {}-dimensional eigenspace ({} ergodic components)",
            k - rank,
            k - rank
        )));
    }
    let free = (0..k).find(|c| !pivots.contains(c)).unwrap();
    let mut c = vec![0.0; k];
    c[free] = 1.0;
    for (r, &p) in pivots.iter().enumerate() {
        c[p] = -m[r][free];
    }
    let widths: Vec<f64> = map.branches().iter().map(|b| b.width()).collect();
    let mass: f64 = c.iter().zip(&widths).map(|(c, w)| c * w).sum();
    for v in &mut c {
        *v /= mass;
    }
    if c.iter().any(|&v| v < -1e-12) {
        return Err(Error::Numerical(format!(
            "invariant vector has negative entries: {c:?}"
        )));
    }
    for v in &mut c {
        *v = v.max(0.0);
    }
    Ok(DensityFn { coeffs: c, widths })
}

/// `Φ(z)_{a,b} = z A[a][b] / β`.
pub fn fredholm_markov<T: Coeff>(map: &PLMap, degree: usize) -> Result<FredholmSeries<T>> {
    let a = transition_matrix(map)?;
    let k = a.size();
    let w: T = lit(1.0 / map.beta());
    let entries = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if a.get(i, j) == 1 {
                        PowerSeries::monomial(degree, 1, w.clone())
                    } else {
                        PowerSeries::zero(degree)
                    }
                })
                .collect()
        })
        .collect();
    FredholmSeries::new(
        entries,
        (0..k).map(FredholmIndex::Cell).collect(),
        map.beta(),
        FredholmKind::Markov,
        vec![false; k],
    )
}

/// `ζ(z) = exp Σ_{n≥1} trace(Aⁿ) β⁻ⁿ zⁿ / n` to degree `K ≥ 1`.
pub fn zeta_series<T: Coeff>(map: &PLMap, degree: usize) -> Result<PowerSeries<T>> {
    if degree < 1 {
        return Err(usage!("zeta series needs degree K >= 1"));
    }
    zeta_markov(map, degree)
}

pub(crate) fn zeta_markov<T: Coeff>(map: &PLMap, degree: usize) -> Result<PowerSeries<T>> {
    let a = transition_matrix(map)?;
    let k = a.size();
    let w: T = lit(1.0 / map.beta());
    let b: Vec<Vec<T>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if a.get(i, j) == 1 {
                        w.clone()
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut p = b.clone();
    let mut log = PowerSeries::zero(degree);
    for n in 1..=degree {
        if n > 1 {
            p = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            (0..k).fold(T::zero(), |s, m| s + p[i][m].clone() * b[m][j].clone())
                        })
                        .collect()
                })
                .collect();
        }
        let tr = (0..k).fold(T::zero(), |s, i| s + p[i][i].clone());
        log.set(n, tr / T::from_usize(n).unwrap());
    }
    log.exp()
}

/// Largest coefficient magnitude of `det(I - Φ(z))·ζ(z) - 1` to degree `K`.
pub fn zeta_identity_check<T: Coeff>(map: &PLMap, degree: usize) -> Result<T> {
    let det = fredholm_markov::<T>(map, degree)?.det()?;
    let zeta = zeta_markov::<T>(map, degree)?;
    let mut r = &det * &zeta;
    r.add_at(0, -T::one());
    Ok(r.max_abs_coeff())
}

/// `s^J(z, x) = Σ zⁿ Pⁿ1_J(x)` for a cell `J`, from the transition matrix.
pub fn markov_generating_function(
    map: &PLMap,
    cell: usize,
    x: f64,
    degree: usize,
) -> Result<PowerSeries<f64>> {
    let b = map.cell_of(x);
    let mut f = vec![0.0; map.alphabet_size()];
    if cell >= f.len() {
        return Err(usage!("cell {cell} out of range"));
    }
    f[cell] = 1.0;
    let mut s = PowerSeries::zero(degree);
    for n in 0..=degree {
        s.set(n, f[b]);
        f = pf_apply(map, &f, 1)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_maps::catalog::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn pf_examples() {
        let d = doubling();
        assert_eq!(pf_apply(&d, &[1.0, 0.0], 1).unwrap(), vec![0.5, 0.5]);
        assert_eq!(pf_apply(&d, &[1.0, 0.0], 3).unwrap(), vec![0.5, 0.5]);
        assert_eq!(pf_apply(&d, &[1.0f32, 0.0], 1).unwrap(), vec![0.5f32, 0.5]);
        let g = golden_mean();
        let rho = invariant_density(&g).unwrap();
        let back = pf_apply(&g, &rho.coeffs, 1).unwrap();
        for (a, b) in back.iter().zip(&rho.coeffs) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(matches!(
            pf_apply(&beta_map(1.9).unwrap(), &[1.0, 0.0], 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn densities() {
        let rho = invariant_density(&doubling()).unwrap();
        assert_eq!(rho.coeffs, vec![1.0, 1.0]);
        let g = invariant_density(&golden_mean()).unwrap();
        // Fixed point of c0 = (c0 + c1)/φ, c1 = c0/φ with unit mass.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let c0 = 1.0 / (1.0 / phi + (1.0 - 1.0 / phi) / phi);
        assert!((g.coeffs[0] - c0).abs() < 1e-12 && (g.coeffs[1] - c0 / phi).abs() < 1e-12);
        assert!((g.coeffs[0] - 1.170820).abs() < 1e-6 && (g.coeffs[1] - 0.723607).abs() < 1e-6);
        assert!((g.integral() - 1.0).abs() < 1e-14);
        assert_eq!(ergodic_components(&two_block()).unwrap(), 2);
        assert!(matches!(
            invariant_density(&two_block()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn markov_fredholm_entries() {
        let f = fredholm_markov::<f64>(&golden_mean(), 3).unwrap();
        let w = 2.0 / (1.0 + 5f64.sqrt());
        assert_eq!(f.entry(0, 0).coeffs(), &[0.0, w, 0.0, 0.0]);
        assert_eq!(f.entry(1, 1), &PowerSeries::zero(3));
        let t = fredholm_markov::<f64>(&full_shift(3), 2).unwrap();
        assert!(t
            .entries()
            .iter()
            .flatten()
            .all(|e| e.coeffs() == [0.0, 1.0 / 3.0, 0.0]));
    }

    #[test]
    fn zeta_and_det_examples() {
        let d = doubling();
        assert_eq!(zeta_series::<f64>(&d, 5).unwrap().coeffs(), &[1.0; 6]);
        assert!(zeta_series::<f64>(&d, 0).is_err());
        assert_eq!(
            fredholm_markov::<f64>(&d, 4)
                .unwrap()
                .det()
                .unwrap()
                .coeffs(),
            &[1.0, -1.0, 0.0, 0.0, 0.0]
        );
        let g = golden_mean();
        let w = 2.0 / (1.0 + 5f64.sqrt());
        let det = fredholm_markov::<f64>(&g, 4).unwrap().det().unwrap();
        let expect = [1.0, -w, -w * w, 0.0, 0.0];
        for n in 0..=4 {
            assert!((det.coeff(n) - expect[n]).abs() < 1e-15);
        }
        // ζ = 1/det, expanded independently by the recurrence zₙ = w zₙ₋₁ + w² zₙ₋₂.
        let z = zeta_series::<f64>(&g, 4).unwrap();
        let mut r = vec![1.0, w];
        for n in 2..=4 {
            r.push(w * r[n - 1] + w * w * r[n - 2]);
        }
        for n in 0..=4 {
            assert!((z.coeff(n) - r[n]).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_residuals() {
        assert!(zeta_identity_check::<f64>(&doubling(), 12).unwrap() < 1e-12);
        assert!(zeta_identity_check::<f64>(&golden_mean(), 12).unwrap() < 1e-10);
        assert_eq!(zeta_identity_check::<f64>(&tent(), 0).unwrap(), 0.0);
        assert!(zeta_identity_check::<BigRational>(&doubling(), 12)
            .unwrap()
            .is_zero());
        assert!(zeta_identity_check::<BigRational>(&full_shift(3), 10).is_ok());
    }

    #[test]
    fn hit_counts() {
        let d = doubling();
        assert_eq!(pf_counts(&d, 0, 3).unwrap(), vec![4, 4]);
        let g = golden_mean();
        assert_eq!(pf_counts(&g, 1, 1).unwrap(), vec![1, 0]);
        let s = markov_generating_function(&d, 0, 0.5, 4).unwrap();
        assert_eq!(s.coeffs(), &[0.0, 0.5, 0.5, 0.5, 0.5]);
    }
}
