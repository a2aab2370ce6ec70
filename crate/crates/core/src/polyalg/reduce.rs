use alloc::vec::Vec;

use num_traits::Zero;

use super::{Degree, Poly, PolyMatrix, RatMatrix, Rational};
use crate::{Error, Result};

/// A unimodular matrix together with its polynomial inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularCert {
    pub u: PolyMatrix,
    pub u_inv: PolyMatrix,
}

impl UnimodularCert {
    pub fn identity(n: usize) -> Self {
        UnimodularCert {
            u: PolyMatrix::identity(n),
            u_inv: PolyMatrix::identity(n),
        }
    }

    /// Checks `u * u_inv = I` exactly.
    pub fn verify(&self) -> bool {
        self.u
            .matmul(&self.u_inv)
            .map(|p| p.is_identity())
            .unwrap_or(false)
    }
}

/// Leading row coefficient matrix: entry `(i, j)` is the coefficient of
/// `s^{d_i}` in `m[i][j]`, where `d_i` is the degree of row `i`.
pub fn leading_row_coeff(m: &PolyMatrix) -> Result<RatMatrix> {
    let mut degs = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        match m.row_degree(i) {
            Degree::Finite(d) => degs.push(d),
            Degree::MinusInf => return Err(Error::ZeroRow { row: i }),
        }
    }
    Ok(RatMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        m.get(i, j).coeff(degs[i])
    }))
}

/// Brings `m` into row-proper form by unimodular row operations.
///
/// Returns `(reduced, cert)` with `reduced = cert.u * m`. The nonzero rows of
/// `reduced` have a leading row coefficient matrix of full row rank; rows
/// that are dependent over `Q(s)` end up as zero rows. The sum of the
/// nonzero row degrees equals the McMillan degree of `ker m`; when `m` has
/// full row rank this is the maximal degree of its full-size minors.
///
/// Each step takes a rational left null vector `α` of the leading
/// coefficient matrix of the nonzero rows, picks the participating row `p`
/// of highest degree, and replaces it by
/// `row_p + Σ_i (α_i/α_p) s^{d_p - d_i} row_i`, which cancels its top
/// coefficient. The pair (sum of row degrees, number of nonzero rows)
/// decreases lexicographically, so the loop terminates.
pub fn row_reduce(m: &PolyMatrix) -> (PolyMatrix, UnimodularCert) {
    let mut r = m.clone();
    let mut cert = UnimodularCert::identity(m.rows());
    loop {
        let nonzero: Vec<usize> = (0..r.rows()).filter(|&i| !r.is_zero_row(i)).collect();
        if nonzero.is_empty() {
            break;
        }
        let sub = r.select_rows(&nonzero);
        let lead = leading_row_coeff(&sub).expect("nonzero rows");
        let Some(alpha) = lead.left_null_vector() else {
            break;
        };
        let degs: Vec<usize> = nonzero
            .iter()
            .map(|&i| r.row_degree(i).finite().expect("nonzero row"))
            .collect();

        // highest-degree participating row, lowest index on ties
        let mut p = usize::MAX;
        for k in 0..nonzero.len() {
            if alpha[k].is_zero() {
                continue;
            }
            if p == usize::MAX || degs[k] > degs[p] {
                p = k;
            }
        }
        let target = nonzero[p];
        for k in 0..nonzero.len() {
            if k == p || alpha[k].is_zero() {
                continue;
            }
            let c: Rational = &alpha[k] / &alpha[p];
            let factor = Poly::monomial(c, degs[p] - degs[k]);
            r.add_row_multiple(target, nonzero[k], &factor);
            cert.u.add_row_multiple(target, nonzero[k], &factor);
            cert.u_inv.add_col_multiple(nonzero[k], target, &-&factor);
        }
    }
    (r, cert)
}

/// Decides whether the polynomial row vector `v` lies in the `Q[s]`-row span
/// of the rows of `basis`.
///
/// The basis is first row-reduced (zero rows dropped). Then the
/// predictable-degree property applies: if `v = x * basis` then the top
/// coefficient of `v` is a combination of leading row coefficients of rows
/// with degree at most `deg v`. Subtracting that combination lowers the
/// degree of `v`; failure to find one proves non-membership.
pub fn row_in_span(v: &[Poly], basis: &PolyMatrix) -> Result<bool> {
    if v.len() != basis.cols() {
        return Err(Error::DimensionMismatch {
            op: "row_in_span",
            expected: basis.cols(),
            found: v.len(),
        });
    }
    let (reduced, _) = row_reduce(basis);
    let nonzero: Vec<usize> = (0..reduced.rows())
        .filter(|&i| !reduced.is_zero_row(i))
        .collect();
    let basis = &reduced.select_rows(&nonzero);
    let lead = leading_row_coeff(basis)?;
    let degs: Vec<usize> = basis
        .row_degrees()
        .into_iter()
        .map(|d| d.finite().expect("checked by leading_row_coeff"))
        .collect();
    let mut v: Vec<Poly> = v.to_vec();
    loop {
        let Some(dv) = v.iter().map(Poly::degree).max().and_then(Degree::finite) else {
            return Ok(true);
        };
        let eligible: Vec<usize> = (0..basis.rows()).filter(|&i| degs[i] <= dv).collect();
        if eligible.is_empty() {
            return Ok(false);
        }
        let top: Vec<Rational> = v.iter().map(|p| p.coeff(dv)).collect();
        // solve  lead[eligible]^T * alpha = top
        let system = lead.select_rows(&eligible).transpose();
        let Some(alpha) = system.solve_affine(&top, None) else {
            return Ok(false);
        };
        for (k, &i) in eligible.iter().enumerate() {
            if alpha[k].is_zero() {
                continue;
            }
            let factor = Poly::monomial(alpha[k].clone(), dv - degs[i]);
            for (j, entry) in v.iter_mut().enumerate() {
                *entry = &*entry - &(&factor * basis.get(i, j));
            }
        }
    }
}
