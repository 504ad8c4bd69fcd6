//! Fixed-precision binary expansions and dense matrices over GF(2).
//!
//! A [`BitString`] stores the digits `b_1 b_2 … b_P` of a point
//! `Σ b_i 2^{-i}` in `[0, 1)`, most significant digit first. Shifting
//! left discards the leading digit and pads the tail with a zero. The padded
//! digit is unknown, so every string also tracks how many leading digits are
//! still reliable.

use std::fmt;

use crate::error::{usage, Error, Result};

/// Default number of stored binary digits per coordinate.
pub const DEFAULT_PRECISION: usize = 64;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    precision: usize,
    reliable: usize,
}

impl BitString {
    pub fn zeros(precision: usize) -> Self {
        Self {
            words: vec![0; precision.div_ceil(WORD)],
            precision,
            reliable: precision,
        }
    }

    /// Builds a string from explicit digits; `digits.len()` is the precision.
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        let mut out = Self::zeros(digits.len());
        for (i, &d) in digits.iter().enumerate() {
            match d {
                0 => {}
                1 => out.set(i + 1, true),
                _ => return Err(usage!("binary digit expected, got {d}")),
            }
        }
        Ok(out)
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let digits: Vec<u8> = text
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("invalid binary digit {c:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::from_digits(&digits)
    }

    /// Truncating conversion of `v ∈ [0, 1)` to `precision` digits.
    pub fn from_unit(v: f64, precision: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::Domain(format!("{v} is outside [0, 1)")));
        }
        let mut out = Self::zeros(precision);
        let mut rest = v;
        for i in 1..=precision {
            if rest == 0.0 {
                break;
            }
            // Doubling and subtracting 1 are exact in binary floating point.
            rest *= 2.0;
            if rest >= 1.0 {
                out.set(i, true);
                rest -= 1.0;
            }
        }
        Ok(out)
    }

    /// The value `Σ b_i 2^{-i}`, truncated to the 53 digits an `f64` holds.
    pub fn to_unit(&self) -> f64 {
        let mut value = 0.0;
        let mut scale = 0.5;
        for i in 1..=self.precision.min(53) {
            if self.get(i) {
                value += scale;
            }
            scale *= 0.5;
        }
        value
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Number of leading digits not contaminated by shift padding.
    pub fn reliable(&self) -> usize {
        self.reliable
    }

    pub fn with_reliable(mut self, reliable: usize) -> Self {
        self.reliable = reliable.min(self.precision);
        self
    }

    /// Digit `i`, 1-based. Digits past the precision read as zero.
    pub fn get(&self, i: usize) -> bool {
        if i == 0 || i > self.precision {
            return false;
        }
        let k = i - 1;
        (self.words[k / WORD] >> (WORD - 1 - k % WORD)) & 1 == 1
    }

    pub fn digit(&self, i: usize) -> u8 {
        u8::from(self.get(i))
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(
            i >= 1 && i <= self.precision,
            "digit index {i} out of range"
        );
        let k = i - 1;
        let mask = 1u64 << (WORD - 1 - k % WORD);
        if bit {
            self.words[k / WORD] |= mask;
        } else {
            self.words[k / WORD] &= !mask;
        }
    }

    pub fn digits(&self) -> Vec<u8> {
        (1..=self.precision).map(|i| self.digit(i)).collect()
    }

    /// The integer formed by the first `n` digits (`b_1` most significant).
    pub fn prefix_value(&self, n: usize) -> u64 {
        assert!(n <= 64);
        (1..=n).fold(0u64, |acc, i| (acc << 1) | u64::from(self.get(i)))
    }

    /// Digitwise sum modulo 2.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.precision != other.precision {
            return Err(usage!(
                "precision mismatch: {} vs {}",
                self.precision,
                other.precision
            ));
        }
        Ok(Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
            precision: self.precision,
            reliable: self.reliable.min(other.reliable),
        })
    }

    /// Left shift `θ`: drops `b_1`, appends an unknown zero digit.
    pub fn shift(&self) -> Self {
        let mut words = self.words.clone();
        for k in 0..words.len() {
            let carry = words.get(k + 1).map_or(0, |w| w >> (WORD - 1));
            words[k] = (words[k] << 1) | carry;
        }
        let mut out = Self {
            words,
            precision: self.precision,
            reliable: self.reliable.saturating_sub(1),
        };
        if out.precision > 0 {
            out.set(out.precision, false);
        }
        out
    }

    /// Inverse of the shift on stored digits: `d` becomes the leading digit and
    /// the last digit falls off. The value becomes `(d + value) / 2`.
    pub fn prepend(&self, d: bool) -> Self {
        if self.precision == 0 {
            return self.clone();
        }
        let mut words = self.words.clone();
        for k in (0..words.len()).rev() {
            let carry = if k == 0 {
                u64::from(d)
            } else {
                words[k - 1] & 1
            };
            words[k] = (words[k] >> 1) | (carry << (WORD - 1));
        }
        // Clear any digit that slid past the precision in the last word.
        let tail = self.precision % WORD;
        if tail != 0 {
            let last = words.len() - 1;
            words[last] &= !0u64 << (WORD - tail);
        }
        Self {
            words,
            precision: self.precision,
            reliable: (self.reliable + 1).min(self.precision),
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.precision {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self}, reliable={})", self.reliable)
    }
}

/// Dense matrix over GF(2), rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![0; cols.div_ceil(WORD)]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Row-major construction from 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(usage!("ragged matrix: row {i} has {} entries", row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => return Err(usage!("entry ({i},{j}) = {v} is not binary")),
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r][c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        let mask = 1u64 << (c % WORD);
        if bit {
            self.data[r][c / WORD] |= mask;
        } else {
            self.data[r][c / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r][c / WORD] ^= 1u64 << (c % WORD);
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| u8::from(self.get(r, c))).collect())
            .collect()
    }

    /// Rank by Gaussian elimination over GF(2).
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / WORD, c % WORD);
            let Some(p) = (rank..rows.len()).find(|&r| (rows[r][w] >> b) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && (row[w] >> b) & 1 == 1 {
                    row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Determinant over GF(2): 1 iff the square matrix has full rank.
    pub fn det(&self) -> Result<u8> {
        if self.rows != self.cols {
            return Err(usage!(
                "determinant of a non-square {}x{} matrix",
                self.rows,
                self.cols
            ));
        }
        Ok(u8::from(self.rank() == self.rows))
    }

    /// Rank plus determinant (the latter only for square input).
    pub fn rank_det(&self) -> (usize, Option<u8>) {
        (self.rank(), self.det().ok())
    }

    /// Selects rows and columns by index, preserving the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(usage!("row index {r} out of range"));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(usage!("column index {c} out of range"));
        }
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        Ok(m)
    }

    /// Matrix-vector product over GF(2); `v` holds one bit per column.
    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).filter(|&c| v[c] && self.get(r, c)).count() % 2 == 1)
            .collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A GF(2) matrix whose rows and columns carry labels, so minors can be
/// addressed by name rather than position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledMatrix<L> {
    pub matrix: Gf2Matrix,
    pub row_labels: Vec<L>,
    pub col_labels: Vec<L>,
}

impl<L: PartialEq + fmt::Debug> LabeledMatrix<L> {
    pub fn new(matrix: Gf2Matrix, row_labels: Vec<L>, col_labels: Vec<L>) -> Result<Self> {
        if row_labels.len() != matrix.rows() || col_labels.len() != matrix.cols() {
            return Err(usage!("label count does not match matrix shape"));
        }
        Ok(Self {
            matrix,
            row_labels,
            col_labels,
        })
    }

    /// The minor addressed by labels, in the order given.
    pub fn submatrix(&self, rows: &[L], cols: &[L]) -> Result<Gf2Matrix> {
        let find = |labels: &[L], l: &L| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| usage!("unknown label {l:?}"))
        };
        let r: Vec<usize> = rows
            .iter()
            .map(|l| find(&self.row_labels, l))
            .collect::<Result<_>>()?;
        let c: Vec<usize> = cols
            .iter()
            .map(|l| find(&self.col_labels, l))
            .collect::<Result<_>>()?;
        self.matrix.select(&r, &c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    #[test]
    fn xor_examples() {
        assert_eq!(bs("1010").xor(&bs("0110")).unwrap(), bs("1100"));
        let x = bs("1011");
        assert_eq!(x.xor(&bs("0000")).unwrap(), x);
        assert_eq!(x.xor(&x).unwrap(), bs("0000"));
        assert!(matches!(bs("10").xor(&bs("100")), Err(Error::Usage(_))));
    }

    #[test]
    fn shift_examples() {
        let s = bs("1100").shift();
        assert_eq!(s.to_string(), "1000");
        assert_eq!(s.reliable(), 3);
        assert_eq!(bs("0000").shift().to_string(), "0000");
        let mut x = bs("1111");
        for _ in 0..4 {
            x = x.shift();
        }
        assert_eq!(x.to_string(), "0000");
        assert_eq!(x.reliable(), 0);
    }

    #[test]
    fn prepend_examples() {
        let p = bs("1000").prepend(true);
        assert_eq!(p.to_string(), "1100");
        assert_eq!(p.to_unit(), 0.75);
        assert_eq!(bs("0000").prepend(false).to_string(), "0000");
        let x = bs("01100000");
        let y = x.prepend(false).prepend(true);
        assert_eq!(y.to_unit(), (1.0 + x.to_unit() / 2.0) / 2.0);
    }

    #[test]
    fn shift_crosses_word_boundaries() {
        let mut x = BitString::zeros(130);
        x.set(65, true);
        x.set(129, true);
        let s = x.shift();
        assert!(s.get(64) && s.get(128));
        assert!(!s.get(65) && !s.get(129));
        let back = s.prepend(false);
        assert!(back.get(65) && back.get(129));
    }

    #[test]
    fn unit_conversions() {
        assert_eq!(bs("101").to_unit(), 0.625);
        assert_eq!(BitString::from_unit(0.5, 4).unwrap().to_string(), "1000");
        let third = BitString::from_unit(1.0 / 3.0, 4).unwrap();
        assert_eq!(third.to_string(), "0101");
        assert!(1.0 / 3.0 - third.to_unit() < 1.0 / 16.0);
        assert!(matches!(
            BitString::from_unit(1.0, 4),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            BitString::from_unit(-0.1, 4),
            Err(Error::Domain(_))
        ));
        // 64 ones must stay below 1.
        let ones = BitString::parse(&"1".repeat(64)).unwrap();
        assert!(ones.to_unit() < 1.0);
    }

    #[test]
    fn gf2_rank_det_examples() {
        let m = Gf2Matrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(m.rank_det(), (2, Some(1)));
        let m = Gf2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.rank_det(), (1, Some(0)));
        for n in 1..10 {
            assert_eq!(Gf2Matrix::identity(n).rank_det(), (n, Some(1)));
        }
        let rect = Gf2Matrix::from_rows(&[vec![1, 0, 1]]).unwrap();
        assert_eq!(rect.rank(), 1);
        assert!(matches!(rect.det(), Err(Error::Usage(_))));
    }

    #[test]
    fn select_all_is_identity() {
        let m = Gf2Matrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.select(&[0, 1], &[0, 1, 2]).unwrap(), m);
        assert!(m.select(&[2], &[0]).is_err());
    }

    #[test]
    fn labeled_submatrix() {
        let m = Gf2Matrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        let lm = LabeledMatrix::new(m, vec!["a", "b"], vec!["u", "v"]).unwrap();
        let sub = lm.submatrix(&["b"], &["v", "u"]).unwrap();
        assert_eq!(sub.to_rows(), vec![vec![1, 1]]);
        assert!(lm.submatrix(&["c"], &["u"]).is_err());
    }
}
