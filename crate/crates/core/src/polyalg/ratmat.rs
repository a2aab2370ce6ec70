use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// Dense matrix over the rationals. Used for leading row coefficient
/// matrices and for the per-step linear solves in simulation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form plus pivot columns.
struct Echelon {
    m: RatMatrix,
    pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| Rational::zero()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        RatMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(self.rows, cols.len(), |i, k| self.get(i, cols[k]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(rows.len(), self.cols, |k, j| self.get(rows[k], j).clone())
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Indices of the lexicographically first set of linearly independent
    /// columns spanning the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// A nonzero vector `x` with `self * x = 0`, if one exists.
    pub fn null_vector(&self) -> Option<Vec<Rational>> {
        let Echelon { m, pivots } = self.echelon();
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut x: Vec<Rational> = (0..self.cols).map(|_| Rational::zero()).collect();
        x[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = -m.get(r, free).clone();
        }
        Some(x)
    }

    /// A nonzero vector `y` with `y^T * self = 0`, if one exists.
    pub fn left_null_vector(&self) -> Option<Vec<Rational>> {
        self.transpose().null_vector()
    }

    /// Solves `self * x = b`. Free unknowns take the value from `guess`
    /// (zero when `guess` is `None`); returns `None` if inconsistent.
    pub fn solve_affine(
        &self,
        b: &[Rational],
        guess: Option<&[Rational]>,
    ) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let aug = RatMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let Echelon { m, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x: Vec<Rational> = match guess {
            Some(g) => {
                assert_eq!(g.len(), self.cols);
                g.to_vec()
            }
            None => (0..self.cols).map(|_| Rational::zero()).collect(),
        };
        for (r, &pc) in pivots.iter().enumerate() {
            let mut v = m.get(r, self.cols).clone();
            for (j, xj) in x.iter().enumerate().skip(pc + 1) {
                if !pivots.contains(&j) {
                    v -= m.get(r, j) * xj;
                }
            }
            x[pc] = v;
        }
        Some(x)
    }

    /// Unique solution of a square nonsingular system.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        if !self.is_nonsingular() {
            return None;
        }
        self.solve_affine(b, None)
    }
}

impl fmt::Display for RatMatrix {
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
