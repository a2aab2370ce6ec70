use alloc::vec::Vec;

use super::{combinations, Degree, Poly, PolyMatrix};
use crate::{Error, Result};

/// Below this size the determinant is expanded by cofactors.
const COFACTOR_LIMIT: usize = 4;

/// Exact determinant of a square polynomial matrix.
pub fn determinant(m: &PolyMatrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() < COFACTOR_LIMIT {
        Ok(cofactor(m))
    } else {
        Ok(bareiss(m))
    }
}

/// Determinant by fraction-free (Bareiss) elimination over `Q[s]`.
pub fn determinant_bareiss(m: &PolyMatrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(bareiss(m))
}

/// Determinant by Laplace expansion along the first row.
pub fn determinant_cofactor(m: &PolyMatrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(cofactor(m))
}

fn cofactor(m: &PolyMatrix) -> Poly {
    let n = m.rows();
    match n {
        0 => Poly::one(),
        1 => m.get(0, 0).clone(),
        2 => &(m.get(0, 0) * m.get(1, 1)) - &(m.get(0, 1) * m.get(1, 0)),
        _ => {
            let rest: Vec<usize> = (1..n).collect();
            let mut acc = Poly::zero();
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_zero() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let term = a * &cofactor(&m.submatrix(&rest, &cols));
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// One fraction-free elimination step on pivot `(k, k)`: every entry below
/// and to the right becomes `(a_kk a_ij - a_ik a_kj) / prev`, which is exact.
fn bareiss_step(a: &mut PolyMatrix, k: usize, prev: &Poly) {
    let pivot = a.get(k, k).clone();
    for i in k + 1..a.rows() {
        let aik = a.get(i, k).clone();
        for j in k + 1..a.cols() {
            let num = &(&pivot * a.get(i, j)) - &(&aik * a.get(k, j));
            let v = num.exact_div(prev).expect("Bareiss division is exact");
            a.set(i, j, v);
        }
        a.set(i, k, Poly::zero());
    }
}

fn bareiss(m: &PolyMatrix) -> Poly {
    let n = m.rows();
    if n == 0 {
        return Poly::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a.get(i, k).is_zero())
            .min_by_key(|&i| a.get(i, k).degree());
        let Some(p) = pivot else {
            return Poly::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        bareiss_step(&mut a, k, &prev);
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank over the field of rational functions `Q(s)`, by fraction-free
/// elimination with full pivoting.
pub fn normal_rank(m: &PolyMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = Poly::one();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let e = a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| e.degree() < a.get(bi, bj).degree()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            break;
        };
        a.swap_rows(pi, k);
        a.swap_cols(pj, k);
        bareiss_step(&mut a, k, &prev);
        prev = a.get(k, k).clone();
        rank += 1;
    }
    rank
}

/// Maximum degree over all `order x order` minors, by exhaustive enumeration
/// of row and column subsets. `MinusInf` if every such minor vanishes.
pub fn max_minor_degree(m: &PolyMatrix, order: usize) -> Result<Degree> {
    let max = m.rows().min(m.cols());
    if order > max {
        return Err(Error::OrderOutOfRange { order, max });
    }
    let row_sets = combinations(m.rows(), order);
    let col_sets = combinations(m.cols(), order);
    let mut best = Degree::MinusInf;
    for rs in &row_sets {
        for cs in &col_sets {
            let d = determinant(&m.submatrix(rs, cs))?.degree();
            best = best.max(d);
        }
    }
    Ok(best)
}
