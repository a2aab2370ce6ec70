use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{BinaryMatrix, Degree, Poly, Rational};
use crate::{Error, Result};

/// Dense row-major matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "PolyMatrix::new",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows of equal length. `cols` is needed so that a
    /// matrix without rows still has a width.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    op: "PolyMatrix::from_rows",
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(PolyMatrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from integer coefficient lists.
    ///
    /// ```
    /// use behavnet::PolyMatrix;
    /// // [[s, 1], [0, s]]
    /// let m = PolyMatrix::from_i64s(&[&[&[0, 1], &[1]], &[&[], &[0, 1]]]);
    /// assert_eq!(m.rows(), 2);
    /// ```
    pub fn from_i64s(rows: &[&[&[i64]]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| Poly::from_i64s(c)).collect())
            .collect();
        PolyMatrix::from_rows(cols, rows).expect("ragged rows")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: (0..rows * cols).map(|_| Poly::zero()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Poly]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Poly::is_zero)
    }

    pub fn is_zero_col(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    /// Highest degree in row `i`; `MinusInf` for a zero row.
    pub fn row_degree(&self, i: usize) -> Degree {
        self.row(i)
            .iter()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::MinusInf)
    }

    pub fn row_degrees(&self) -> Vec<Degree> {
        (0..self.rows).map(|i| self.row_degree(i)).collect()
    }

    /// Highest entry degree over the whole matrix.
    pub fn degree(&self) -> Degree {
        self.entries
            .iter()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::MinusInf)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let acc = out.get(i, j) + &(a * b);
                    out.set(i, j, acc);
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// Vertical concatenation. All parts must have `cols` columns.
    pub fn vstack<'a>(
        cols: usize,
        parts: impl IntoIterator<Item = &'a PolyMatrix>,
    ) -> Result<Self> {
        let mut rows = 0;
        let mut entries = Vec::new();
        for p in parts {
            if p.cols != cols {
                return Err(Error::DimensionMismatch {
                    op: "vstack",
                    expected: cols,
                    found: p.cols,
                });
            }
            rows += p.rows;
            entries.extend(p.entries.iter().cloned());
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Horizontal concatenation `[self rhs]`.
    pub fn hstack(&self, rhs: &PolyMatrix) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + rhs.cols));
        for i in 0..self.rows {
            entries.extend(self.row(i).iter().cloned());
            entries.extend(rhs.row(i).iter().cloned());
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            entries,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Rational) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// `row[target] += factor * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        debug_assert_ne!(target, source);
        for j in 0..self.cols {
            let add = factor * self.get(source, j);
            if !add.is_zero() {
                let v = self.get(target, j) + &add;
                self.set(target, j, v);
            }
        }
    }

    /// `col[target] += factor * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        debug_assert_ne!(target, source);
        for i in 0..self.rows {
            let add = factor * self.get(i, source);
            if !add.is_zero() {
                let v = self.get(i, target) + &add;
                self.set(i, target, v);
            }
        }
    }

    /// Coefficient of `s^k` in every entry.
    pub fn coeff_matrix(&self, k: usize) -> super::RatMatrix {
        super::RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).coeff(k))
    }

    pub fn sparsity(&self) -> BinaryMatrix {
        BinaryMatrix::from_fn(self.rows, self.cols, |i, j| !self.get(i, j).is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Multiplies every entry by a constant.
    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        if c.is_zero() {
            return PolyMatrix::zeros(self.rows, self.cols);
        }
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}
