//! Independent reference computations: everything here goes through
//! evaluation at rational points or textbook formulas, never through the
//! elimination code under test.
#![allow(dead_code)]

use behavnet::{rat, Poly, PolyMatrix, RatMatrix, Rational};
use num_traits::Zero;

/// `m(x)` entrywise.
pub fn eval(m: &PolyMatrix, x: &Rational) -> RatMatrix {
    RatMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).eval(x))
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(m: &PolyMatrix) -> Poly {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Poly::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut term = Poly::one();
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        if inversions(p) % 2 == 1 {
            term = -term;
        }
        total = &total + &term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

/// Normal rank as the largest rank of `m(x)` over enough distinct points: a
/// nonzero `r x r` minor has degree at most `r * d`, so it cannot vanish at
/// all of `r * d + 1` points.
pub fn rank_by_evaluation(m: &PolyMatrix) -> usize {
    let d = m.degree().finite().unwrap_or(0);
    let r = m.rows().min(m.cols());
    (0..=(r * d) as i64)
        .map(|x| eval(m, &rat(x)).rank())
        .max()
        .unwrap_or(0)
}

/// Sum of the row degrees of the nonzero rows.
pub fn row_degree_sum(m: &PolyMatrix) -> usize {
    m.row_degrees().into_iter().filter_map(|d| d.finite()).sum()
}

/// `a * w1 + b * w2` sample-wise.
pub fn combine(
    a: &Rational,
    w1: &[Vec<Rational>],
    b: &Rational,
    w2: &[Vec<Rational>],
) -> Vec<Vec<Rational>> {
    w1.iter()
        .zip(w2)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| a * p + b * q).collect())
        .collect()
}

pub fn all_zero(m: &RatMatrix) -> bool {
    (0..m.rows()).all(|i| m.row(i).iter().all(Zero::is_zero))
}
