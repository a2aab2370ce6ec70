//! Univariate polynomials and polynomial matrices over the rationals.
//!
//! Every structural invariant in this crate (ranks, McMillan degrees,
//! properness) is decided here with exact arithmetic. Elimination is done
//! fraction-free over `Q[s]`, so rational functions never appear.

mod binary;
mod degree;
mod det;
mod matrix;
mod poly;
mod ratmat;
mod reduce;

pub use binary::BinaryMatrix;
pub use degree::Degree;
pub use det::{
    determinant, determinant_bareiss, determinant_cofactor, max_minor_degree, normal_rank,
};
pub use matrix::PolyMatrix;
pub use poly::Poly;
pub use ratmat::RatMatrix;
pub use reduce::{leading_row_coeff, row_in_span, row_reduce, UnimodularCert};

use num_bigint::BigInt;

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as a [`Rational`]. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sparsity pattern `M(R)`: 1 where the entry is a nonzero polynomial.
pub fn sparsity(m: &PolyMatrix) -> BinaryMatrix {
    m.sparsity()
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> alloc::vec::Vec<alloc::vec::Vec<usize>> {
    let mut out = alloc::vec::Vec::new();
    if k > n {
        return out;
    }
    let mut idx: alloc::vec::Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![vec![]]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
