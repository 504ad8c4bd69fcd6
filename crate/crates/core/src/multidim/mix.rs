//! The GF(2) mixing matrix `M` of the three-dimensional construction: rows
//! `x₁, y₁, z₁, …, x₁₀, y₁₀, z₁₀`, columns `x₋₁, y₋₁, z₋₁, …, x₋₄, y₋₄, z₋₄`.

use std::fmt;

use serde::Serialize;

use super::Axis;
use crate::bits::{Gf2Matrix, LabeledMatrix};
use crate::error::{Error, Result};

pub const M_ROWS: usize = 30;
pub const M_COLS: usize = 12;
/// Digit-triples covered by the columns.
pub const M_DEPTH: usize = 4;

const TABLE: [&str; M_ROWS] = [
    "011010010001", // x1
    "101001001100", // y1
    "110100100010", // z1
    "010001010010", // x2
    "001100001001", // y2
    "100010100100", // z2
    "010010001010", // x3
    "001001100001", // y3
    "100100010100", // z3
    "000001010001", // x4
    "000100001100", // y4
    "000010100010", // z4
    "000010010011", // x5
    "000001001101", // y5
    "000100100110", // z5
    "000000010001", // x6
    "000000001100", // y6
    "000000100010", // z6
    "000000010010", // x7
    "000000001001", // y7
    "000000100100", // z7
    "000000000010", // x8
    "000000000001", // y8
    "000000000100", // z8
    "000000000001", // x9
    "000000000100", // y9
    "000000000010", // z9
    "000000000000", // x10
    "000000000000", // y10
    "000000000000", // z10
];

/// FNV-1a of the row-major `0`/`1` grid of the stored table.
pub const STORED_CHECKSUM: u64 = 17311262841489450975;

/// Row label `c_j` (`index = j > 0`) or column label `c_{-j}` (`index = -j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MLabel {
    pub axis: Axis,
    pub index: i32,
}

impl fmt::Display for MLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.axis, self.index)
    }
}

/// Which of the two minor families to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinorFamily {
    /// `{x₁…x_{n+m}} × {y₋₁…y₋ₙ, z₋₁…z₋ₘ}`.
    First,
    /// `{x₁…xₙ, y₁…yₘ} × {z₋₁…z₋₍ₙ₊ₘ₎}`.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixMatrix {
    labeled: LabeledMatrix<MLabel>,
}

pub fn row_index(axis: Axis, j: usize) -> usize {
    3 * (j - 1) + axis.index()
}

pub fn col_index(axis: Axis, j: usize) -> usize {
    3 * (j - 1) + axis.index()
}

impl MixMatrix {
    /// The table as printed.
    pub fn stored() -> Self {
        let rows: Vec<Vec<u8>> = TABLE
            .iter()
            .map(|r| r.bytes().map(|b| b - b'0').collect())
            .collect();
        Self::from_rows(&rows).expect("stored table is well formed")
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        if rows.len() != M_ROWS || rows.iter().any(|r| r.len() != M_COLS) {
            return Err(Error::Usage(format!(
                "mixing matrix must be {M_ROWS}x{M_COLS}"
            )));
        }
        let matrix = Gf2Matrix::from_rows(rows)?;
        let row_labels = (1..=M_ROWS / 3)
            .flat_map(|j| {
                Axis::ALL.map(|axis| MLabel {
                    axis,
                    index: j as i32,
                })
            })
            .collect();
        let col_labels = (1..=M_DEPTH)
            .flat_map(|j| {
                Axis::ALL.map(|axis| MLabel {
                    axis,
                    index: -(j as i32),
                })
            })
            .collect();
        Ok(Self {
            labeled: LabeledMatrix::new(matrix, row_labels, col_labels)?,
        })
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.labeled.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.labeled.matrix.get(row, col)
    }

    pub fn flip(&mut self, row: usize, col: usize) {
        self.labeled.matrix.flip(row, col);
    }

    /// The 30×12 grid, one line per row, prefixed with the row label.
    pub fn to_grid(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self
            .labeled
            .col_labels
            .iter()
            .map(ToString::to_string)
            .collect();
        out.push_str(&format!("row {}\n", header.join(" ")));
        for (r, label) in self.labeled.row_labels.iter().enumerate() {
            let bits: Vec<&str> = (0..M_COLS)
                .map(|c| if self.get(r, c) { "1" } else { "0" })
                .collect();
            out.push_str(&format!("{label} {}\n", bits.join(" ")));
        }
        out
    }

    pub fn checksum(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for r in 0..M_ROWS {
            for c in 0..M_COLS {
                h ^= u64::from(b'0' + u8::from(self.get(r, c)));
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }

    pub fn matches_stored(&self) -> bool {
        self.checksum() == STORED_CHECKSUM
    }

    /// Labels of one minor with the coordinate roles `x, y, z` replaced by
    /// `perm[0], perm[1], perm[2]`.
    pub fn minor_labels(
        n: usize,
        m: usize,
        perm: [Axis; 3],
        family: MinorFamily,
    ) -> (Vec<MLabel>, Vec<MLabel>) {
        let row = |a: Axis, j: usize| MLabel {
            axis: a,
            index: j as i32,
        };
        let col = |a: Axis, j: usize| MLabel {
            axis: a,
            index: -(j as i32),
        };
        let [px, py, pz] = perm;
        match family {
            MinorFamily::First => (
                (1..=n + m).map(|j| row(px, j)).collect(),
                (1..=n)
                    .map(|j| col(py, j))
                    .chain((1..=m).map(|j| col(pz, j)))
                    .collect(),
            ),
            MinorFamily::Second => (
                (1..=n)
                    .map(|j| row(px, j))
                    .chain((1..=m).map(|j| row(py, j)))
                    .collect(),
                (1..=n + m).map(|j| col(pz, j)).collect(),
            ),
        }
    }

    pub fn minor(
        &self,
        n: usize,
        m: usize,
        perm: [Axis; 3],
        family: MinorFamily,
    ) -> Result<Gf2Matrix> {
        if n + m == 0 || n + m > M_DEPTH {
            return Err(Error::Usage(format!(
                "minor needs 1 ≤ n+m ≤ {M_DEPTH}, got n={n}, m={m}"
            )));
        }
        let (rows, cols) = Self::minor_labels(n, m, perm, family);
        self.labeled.submatrix(&rows, &cols)
    }

    pub fn minor_det(
        &self,
        n: usize,
        m: usize,
        perm: [Axis; 3],
        family: MinorFamily,
    ) -> Result<u8> {
        self.minor(n, m, perm, family)?.det()
    }
}

/// Both minor families are nonsingular for `(n, m)` under `perm`.
pub fn minor_test_3d(mix: &MixMatrix, n: usize, m: usize, perm: [Axis; 3]) -> Result<bool> {
    Ok(mix.minor_det(n, m, perm, MinorFamily::First)? == 1
        && mix.minor_det(n, m, perm, MinorFamily::Second)? == 1)
}

/// Every `(n, m)` with `1 ≤ n+m ≤ 4`, every role permutation, both families.
/// Returns the failing cases.
pub fn minor_failures(mix: &MixMatrix) -> Vec<(usize, usize, [Axis; 3], MinorFamily)> {
    let mut out = Vec::new();
    for total in 1..=M_DEPTH {
        for n in 0..=total {
            for perm in Axis::PERMUTATIONS {
                for family in [MinorFamily::First, MinorFamily::Second] {
                    if mix.minor_det(n, total - n, perm, family) != Ok(1) {
                        out.push((n, total - n, perm, family));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Axis::*;

    #[test]
    fn checksum_is_pinned() {
        assert_eq!(MixMatrix::stored().checksum(), STORED_CHECKSUM);
    }

    #[test]
    fn printed_entries() {
        let m = MixMatrix::stored();
        let col_x1: Vec<bool> = (0..M_ROWS).map(|r| m.get(r, 0)).collect();
        let ones: Vec<usize> = (0..M_ROWS).filter(|&r| col_x1[r]).collect();
        assert_eq!(
            ones,
            vec![
                row_index(Y, 1),
                row_index(Z, 1),
                row_index(Z, 2),
                row_index(Z, 3)
            ]
        );
        for r in 27..30 {
            assert!((0..M_COLS).all(|c| !m.get(r, c)));
        }
    }

    #[test]
    fn minor_examples() {
        let m = MixMatrix::stored();
        let a = m.minor(1, 0, [X, Y, Z], MinorFamily::First).unwrap();
        assert_eq!(a.to_rows(), vec![vec![1]]);
        let b = m.minor(1, 1, [X, Y, Z], MinorFamily::First).unwrap();
        assert_eq!(b.to_rows(), vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(b.det().unwrap(), 1);
        assert!(matches!(
            m.minor(3, 2, [X, Y, Z], MinorFamily::First),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn all_minors_nonsingular() {
        assert_eq!(minor_failures(&MixMatrix::stored()), vec![]);
    }

    #[test]
    fn every_bit_flip_changes_checksum() {
        let stored = MixMatrix::stored();
        for r in 0..M_ROWS {
            for c in 0..M_COLS {
                let mut m = stored.clone();
                m.flip(r, c);
                assert!(!m.matches_stored());
            }
        }
    }

    #[test]
    fn grid_export_round_trips() {
        let m = MixMatrix::stored();
        let grid = m.to_grid();
        let rows: Vec<Vec<u8>> = grid
            .lines()
            .skip(1)
            .map(|l| l.split(' ').skip(1).map(|t| t.parse().unwrap()).collect())
            .collect();
        assert_eq!(MixMatrix::from_rows(&rows).unwrap(), m);
    }
}
