//! Systems given by kernel representations `R(σ) w = 0` over a signal space
//! split into named blocks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use crate::polyalg::{
    self, combinations, determinant, leading_row_coeff, max_minor_degree, normal_rank, row_in_span,
    row_reduce, Degree, PolyMatrix,
};
use crate::{Error, Result};

/// One named block `w_j` of the signal vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignalBlock {
    pub name: String,
    pub dim: usize,
}

impl SignalBlock {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        SignalBlock {
            name: name.into(),
            dim,
        }
    }
}

/// Signal space `R^{q_1} x ... x R^{q_L}` with named blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignalSpace {
    blocks: Vec<SignalBlock>,
    offsets: Vec<usize>,
}

impl SignalSpace {
    pub fn new(blocks: Vec<SignalBlock>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidSignalSpace("no blocks".to_string()));
        }
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut q = 0;
        for (i, b) in blocks.iter().enumerate() {
            if b.name.is_empty() {
                return Err(Error::InvalidSignalSpace(format!(
                    "block {i} has an empty name"
                )));
            }
            if b.dim == 0 {
                return Err(Error::InvalidSignalSpace(format!(
                    "block `{}` has dim 0",
                    b.name
                )));
            }
            if blocks[..i].iter().any(|o| o.name == b.name) {
                return Err(Error::InvalidSignalSpace(format!(
                    "duplicate block name `{}`",
                    b.name
                )));
            }
            offsets.push(q);
            q += b.dim;
        }
        offsets.push(q);
        Ok(SignalSpace { blocks, offsets })
    }

    /// Space of scalar blocks with the given names.
    pub fn scalar<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        SignalSpace::new(
            names
                .iter()
                .map(|n| SignalBlock::new(n.as_ref(), 1))
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[SignalBlock] {
        &self.blocks
    }

    /// Number of blocks `L`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Total dimension `q`.
    pub fn q(&self) -> usize {
        self.offsets[self.blocks.len()]
    }

    pub fn block_index(&self, name: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.name == name)
    }

    /// Scalar columns belonging to block `idx`.
    pub fn block_columns(&self, idx: usize) -> Range<usize> {
        self.offsets[idx]..self.offsets[idx + 1]
    }

    /// Block owning scalar column `col`.
    pub fn column_block(&self, col: usize) -> usize {
        self.offsets.partition_point(|&o| o <= col) - 1
    }

    /// Names of the scalar columns: the block name for scalar blocks,
    /// `name[k]` (1-based) inside vector blocks.
    pub fn column_names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.q());
        for b in &self.blocks {
            if b.dim == 1 {
                out.push(b.name.clone());
            } else {
                out.extend((1..=b.dim).map(|k| format!("{}[{k}]", b.name)));
            }
        }
        out
    }
}

/// A system `Σ = ker R(σ)` over a block-structured signal space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRep {
    space: SignalSpace,
    r: PolyMatrix,
}

impl KernelRep {
    pub fn new(space: SignalSpace, r: PolyMatrix) -> Result<Self> {
        if r.cols() != space.q() {
            return Err(Error::DimensionMismatch {
                op: "KernelRep::new",
                expected: space.q(),
                found: r.cols(),
            });
        }
        Ok(KernelRep { space, r })
    }

    pub fn space(&self) -> &SignalSpace {
        &self.space
    }

    pub fn r(&self) -> &PolyMatrix {
        &self.r
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.r
    }

    /// Same behavior, full row rank: row-reduce and drop the zero rows. The
    /// result is row-proper.
    pub fn minimal_kernel(&self) -> KernelRep {
        let (reduced, _) = row_reduce(&self.r);
        let keep: Vec<usize> = (0..reduced.rows())
            .filter(|&i| !reduced.is_zero_row(i))
            .collect();
        KernelRep {
            space: self.space.clone(),
            r: reduced.select_rows(&keep),
        }
    }

    /// `p(Σ)`: number of outputs in any input-output partition.
    pub fn output_cardinality(&self) -> usize {
        normal_rank(&self.r)
    }

    /// `n(Σ)`: maximal degree of the `p x p` minors of a minimal kernel.
    pub fn mcmillan_degree(&self) -> usize {
        let min = self.minimal_kernel();
        let p = min.r.rows();
        if p == 0 {
            return 0;
        }
        max_minor_degree(&min.r, p)
            .expect("p <= min(rows, cols)")
            .finite()
            .expect("minimal kernel has a nonzero maximal minor")
    }

    /// Whether block `name` is unconstrained, i.e. its columns are all zero.
    /// Zero column blocks survive left multiplication by any matrix, so the
    /// given representation decides the property.
    pub fn is_unconstrained(&self, name: &str) -> Result<bool> {
        let idx = self
            .space
            .block_index(name)
            .ok_or_else(|| Error::UnknownBlock(name.to_string()))?;
        Ok(self.block_is_zero(idx))
    }

    pub(crate) fn block_is_zero(&self, idx: usize) -> bool {
        self.space.block_columns(idx).all(|c| self.r.is_zero_col(c))
    }

    /// Every `p`-subset of columns whose minor in the minimal kernel has
    /// maximal determinant degree, in lexicographic order. Each is the output
    /// set of a proper input-output partition.
    pub fn maximizing_output_sets(&self) -> Vec<Vec<usize>> {
        let min = self.minimal_kernel();
        let p = min.r.rows();
        let mut best = Degree::MinusInf;
        let mut sets = Vec::new();
        for cols in combinations(min.r.cols(), p) {
            let d = determinant(&min.r.select_columns(&cols))
                .expect("square")
                .degree();
            if d > best {
                best = d;
                sets.clear();
            }
            if d == best && !d.is_minus_inf() {
                sets.push(cols);
            }
        }
        sets
    }

    /// Proper input-output partition with the lexicographically smallest
    /// maximizing output set.
    pub fn io_partition(&self) -> Result<IOPartition> {
        let outputs = self
            .maximizing_output_sets()
            .into_iter()
            .next()
            .ok_or(Error::NoOutputs)?;
        IOPartition::from_output_columns(self, &outputs)
    }

    /// Whether both representations define the same behavior: equal rank and
    /// each minimal kernel's rows lie in the polynomial row span of the other.
    pub fn is_behavior_equal(&self, other: &KernelRep) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::SignalSpaceMismatch);
        }
        let a = self.minimal_kernel();
        let b = other.minimal_kernel();
        if a.r.rows() != b.r.rows() {
            return Ok(false);
        }
        if a.r.rows() == 0 {
            return Ok(true);
        }
        for row in b.r.iter_rows() {
            if !row_in_span(row, &a.r)? {
                return Ok(false);
            }
        }
        for row in a.r.iter_rows() {
            if !row_in_span(row, &b.r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Input-output partition `P(σ) y = Q(σ) u` of a behavior.
///
/// `p_part` is kept row-proper (the row operations that make it so are also
/// applied to `q_part`), so the row degrees of `p_part` are the lags used by
/// [`crate::sim::simulate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IOPartition {
    space: SignalSpace,
    pub input_cols: Vec<usize>,
    pub output_cols: Vec<usize>,
    pub p_part: PolyMatrix,
    pub q_part: PolyMatrix,
    pub proper: bool,
}

impl IOPartition {
    /// Partition of `k` with the given output columns, in the given order.
    pub fn from_output_columns(k: &KernelRep, output_cols: &[usize]) -> Result<Self> {
        let min = k.minimal_kernel();
        let p = min.r.rows();
        if p == 0 {
            return Err(Error::NoOutputs);
        }
        let q = k.space.q();
        if output_cols.len() != p {
            return Err(Error::InvalidPartition(format!(
                "{} output columns given, output cardinality is {p}",
                output_cols.len()
            )));
        }
        let mut seen = alloc::vec![false; q];
        for &c in output_cols {
            if c >= q || seen[c] {
                return Err(Error::InvalidPartition(format!(
                    "output column {c} out of range or repeated"
                )));
            }
            seen[c] = true;
        }
        let input_cols: Vec<usize> = (0..q).filter(|&c| !seen[c]).collect();
        let p0 = min.r.select_columns(output_cols);
        if determinant(&p0)?.is_zero() {
            return Err(Error::InvalidPartition("det P = 0".to_string()));
        }
        let q0 = min.r.select_columns(&input_cols).neg();
        let (p_part, cert) = row_reduce(&p0);
        let q_part = cert.u.matmul(&q0)?;
        let proper = row_degrees_dominate(&p_part, &q_part);
        Ok(IOPartition {
            space: k.space.clone(),
            input_cols,
            output_cols: output_cols.to_vec(),
            p_part,
            q_part,
            proper,
        })
    }

    pub fn space(&self) -> &SignalSpace {
        &self.space
    }

    /// Row degrees of `p_part`.
    pub fn lags(&self) -> Vec<usize> {
        self.p_part
            .row_degrees()
            .into_iter()
            .map(|d| d.finite().expect("P is nonsingular"))
            .collect()
    }

    /// Length of the initial output window needed by simulation.
    pub fn initial_window(&self) -> usize {
        self.lags().into_iter().max().unwrap_or(0)
    }

    /// `[P  -Q]` with its columns put back in signal-space order.
    pub fn kernel(&self) -> KernelRep {
        let mut r = PolyMatrix::zeros(self.p_part.rows(), self.space.q());
        for i in 0..r.rows() {
            for (k, &c) in self.output_cols.iter().enumerate() {
                r.set(i, c, self.p_part.get(i, k).clone());
            }
            for (k, &c) in self.input_cols.iter().enumerate() {
                r.set(i, c, -self.q_part.get(i, k));
            }
        }
        KernelRep {
            space: self.space.clone(),
            r,
        }
    }
}

/// For row-proper `p`: `P^{-1} Q` is proper iff every row of `q` has degree
/// at most the matching row degree of `p`.
fn row_degrees_dominate(p: &PolyMatrix, q: &PolyMatrix) -> bool {
    let Ok(lead) = leading_row_coeff(p) else {
        return false;
    };
    lead.is_nonsingular() && (0..p.rows()).all(|i| q.row_degree(i) <= p.row_degree(i))
}

/// Whether `P^{-1} Q` is a proper rational matrix, decided with polynomial
/// arithmetic only: row-reduce `P`, apply the same unimodular factor to `Q`,
/// and compare row degrees.
pub fn is_proper(p: &PolyMatrix, q: &PolyMatrix) -> Result<bool> {
    if !p.is_square() {
        return Err(Error::NotSquare {
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    if q.rows() != p.rows() {
        return Err(Error::DimensionMismatch {
            op: "is_proper",
            expected: p.rows(),
            found: q.rows(),
        });
    }
    if polyalg::determinant(p)?.is_zero() {
        return Err(Error::InvalidPartition("det P = 0".to_string()));
    }
    let (pr, cert) = row_reduce(p);
    let qr = cert.u.matmul(q)?;
    Ok(row_degrees_dominate(&pr, &qr))
}
