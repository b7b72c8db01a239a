//! Coordinate-form matrices with exact rational entries.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// A `rows × cols` matrix storing only its nonzero entries, keyed by
/// 0-based `(row, col)` and therefore always sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = SparseMatrix::zeros(size, size);
        for i in 0..size {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    /// Builds a matrix from coordinates; repeated coordinates are summed and
    /// zeros dropped.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = SparseMatrix::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_at(r, c, &v)?;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Entries in `(row, col)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.keys().copied()
    }

    fn check_bounds(&self, row: usize, col: usize) -> Result<()> {
        if row >= self.rows || col >= self.cols {
            return Err(Error::invalid(format!(
                "coordinate ({row}, {col}) outside a {}×{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Overwrites one entry; storing zero removes it.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) -> Result<()> {
        self.check_bounds(row, col)?;
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
        Ok(())
    }

    pub fn add_at(&mut self, row: usize, col: usize, value: &Rational) -> Result<()> {
        self.check_bounds(row, col)?;
        if value.is_zero() {
            return Ok(());
        }
        let key = (row, col);
        let sum = match self.entries.get(&key) {
            Some(old) => old + value,
            None => value.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, sum);
        }
        Ok(())
    }

    /// `self += scale · other`.
    pub fn add_scaled(&mut self, other: &SparseMatrix, scale: &Rational) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::invalid(format!(
                "cannot add a {}×{} matrix to a {}×{} matrix",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        if scale.is_zero() {
            return Ok(());
        }
        for (r, c, v) in other.iter() {
            self.add_at(r, c, &(v * scale))?;
        }
        Ok(())
    }

    pub fn matmul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.iter() {
            by_row[r].push((c, v));
        }
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (r, mid, a) in self.iter() {
            for &(c, b) in &by_row[mid] {
                out.add_at(r, c, &(a * b))?;
            }
        }
        Ok(out)
    }

    /// Kronecker product; `self` indexes the slow-varying block.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, a) in self.iter() {
            for (r2, c2, b) in other.iter() {
                out.entries
                    .insert((r1 * other.rows + r2, c1 * other.cols + c2), a * b);
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut dense = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            dense[r][c] = v.clone();
        }
        dense
    }

    /// Number of differing cells and the largest absolute difference.
    pub fn difference(&self, other: &SparseMatrix) -> (usize, Rational) {
        let mut count = 0;
        let mut max = Rational::zero();
        let keys: std::collections::BTreeSet<_> =
            self.entries.keys().chain(other.entries.keys()).collect();
        for &(r, c) in keys {
            let d = (self.get(r, c) - other.get(r, c)).abs();
            if !d.is_zero() {
                count += 1;
                if d > max {
                    max = d;
                }
            }
        }
        (count, max)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}×{} [", self.rows, self.cols)?;
        for (i, (r, c, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({r},{c})={v}")?;
        }
        write!(f, "]")
    }
}
