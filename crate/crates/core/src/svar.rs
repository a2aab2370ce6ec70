//! Structural VAR models `X(σ) y = Q(σ) u` and their correspondence with
//! regular feedback networks of single-output components.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::behavior::{KernelRep, SignalBlock, SignalSpace};
use crate::network::Network;
use crate::polyalg::{leading_row_coeff, BinaryMatrix, Degree, PolyMatrix, RatMatrix};
use crate::{Error, Result};

/// Validated SVAR model with `N` outputs and `m` inputs.
///
/// Row `i` reads `σ^{l_i} y_i = (lower-order and contemporaneous terms)`,
/// i.e. the leading row coefficient matrix of `X` has a unit diagonal and
/// full rank, and row `i` of `Q` has degree at most `l_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvarModel {
    x: PolyMatrix,
    q: PolyMatrix,
    lags: Vec<usize>,
    output_names: Vec<String>,
    input_names: Vec<String>,
}

/// Reordering of network columns into `(y, u)` order: entry `k` of the SVAR
/// signal vector is network column `order[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnPermutation {
    pub order: Vec<usize>,
}

impl ColumnPermutation {
    /// `M Π`: picks the columns of a network-ordered matrix in `(y, u)` order.
    /// With scalar blocks only, `M([X -Q]) = S Π` for the incidence matrix `S`;
    /// in general the identity holds for the column sparsity of the stacked
    /// kernel.
    pub fn apply(&self, m: &BinaryMatrix) -> BinaryMatrix {
        m.permute_columns(&self.order)
    }
}

impl SvarModel {
    /// Checks the model assumptions and computes the lags `l_i` as the row
    /// degrees of `x`. Outputs are named `y1..yN`, inputs `u` (single input)
    /// or `u1..um`.
    pub fn validate(x: PolyMatrix, q: PolyMatrix) -> Result<Self> {
        if !x.is_square() {
            return Err(Error::NotSquare {
                rows: x.rows(),
                cols: x.cols(),
            });
        }
        if q.rows() != x.rows() {
            return Err(Error::DimensionMismatch {
                op: "SvarModel::validate",
                expected: x.rows(),
                found: q.rows(),
            });
        }
        let n = x.rows();
        let mut lags = Vec::with_capacity(n);
        for i in 0..n {
            match x.row_degree(i) {
                Degree::Finite(d) => lags.push(d),
                Degree::MinusInf => return Err(Error::DiagonalNotMonic { row: i }),
            }
        }
        let lead = leading_row_coeff(&x)?;
        for i in 0..n {
            if !lead.get(i, i).is_one() {
                return Err(Error::DiagonalNotMonic { row: i });
            }
        }
        if !lead.is_nonsingular() {
            return Err(Error::SingularLeadingMatrix);
        }
        for (i, &lag) in lags.iter().enumerate() {
            if let Degree::Finite(d) = q.row_degree(i) {
                if d > lag {
                    return Err(Error::InputDegreeExceedsLag {
                        row: i,
                        degree: d,
                        lag,
                    });
                }
            }
        }
        let m = q.cols();
        let output_names = (1..=n).map(|i| format!("y{i}")).collect();
        let input_names = if m == 1 {
            alloc::vec!["u".to_string()]
        } else {
            (1..=m).map(|i| format!("u{i}")).collect()
        };
        Ok(SvarModel {
            x,
            q,
            lags,
            output_names,
            input_names,
        })
    }

    /// Replaces the signal names. All names must be distinct and nonempty,
    /// and with several inputs no output may be called `u` (the name of the
    /// input block in [`SvarModel::to_network`]).
    pub fn with_names(mut self, outputs: Vec<String>, inputs: Vec<String>) -> Result<Self> {
        if outputs.len() != self.n_outputs() {
            return Err(Error::DimensionMismatch {
                op: "SvarModel::with_names (outputs)",
                expected: self.n_outputs(),
                found: outputs.len(),
            });
        }
        if inputs.len() != self.n_inputs() {
            return Err(Error::DimensionMismatch {
                op: "SvarModel::with_names (inputs)",
                expected: self.n_inputs(),
                found: inputs.len(),
            });
        }
        let all: Vec<&String> = outputs.iter().chain(&inputs).collect();
        for (i, name) in all.iter().enumerate() {
            if name.is_empty() || all[..i].contains(name) {
                return Err(Error::InvalidSignalSpace(format!(
                    "signal name `{name}` is empty or repeated"
                )));
            }
        }
        if inputs.len() > 1 && outputs.iter().any(|o| o == INPUT_BLOCK) {
            return Err(Error::InvalidSignalSpace(format!(
                "output name `{INPUT_BLOCK}` is reserved for the input block"
            )));
        }
        self.output_names = outputs;
        self.input_names = inputs;
        Ok(self)
    }

    pub fn x(&self) -> &PolyMatrix {
        &self.x
    }

    pub fn q(&self) -> &PolyMatrix {
        &self.q
    }

    pub fn lags(&self) -> &[usize] {
        &self.lags
    }

    pub fn n_outputs(&self) -> usize {
        self.x.rows()
    }

    pub fn n_inputs(&self) -> usize {
        self.q.cols()
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    /// `[X  -Q]`.
    pub fn kernel_matrix(&self) -> PolyMatrix {
        self.x.hstack(&self.q.neg()).expect("row counts match")
    }

    /// `A_svar = M([[X, -Q], [0, 0]])`, of size `(N + m)^2`.
    pub fn adjacency(&self) -> BinaryMatrix {
        let n = self.n_outputs();
        let total = n + self.n_inputs();
        let k = self.kernel_matrix();
        BinaryMatrix::from_fn(total, total, |i, j| i < n && !k.get(i, j).is_zero())
    }

    /// Scalar output blocks followed by one input block of dimension `m`
    /// (named after the input if `m = 1`, `u` otherwise; absent if `m = 0`).
    pub fn signal_space(&self) -> SignalSpace {
        let mut blocks: Vec<SignalBlock> = self
            .output_names
            .iter()
            .map(|n| SignalBlock::new(n.clone(), 1))
            .collect();
        match self.n_inputs() {
            0 => {}
            1 => blocks.push(SignalBlock::new(self.input_names[0].clone(), 1)),
            m => blocks.push(SignalBlock::new(INPUT_BLOCK, m)),
        }
        SignalSpace::new(blocks).expect("names validated")
    }

    /// One single-row component per equation: component `i` is row `i` of
    /// `[X  -Q]`.
    pub fn to_network(&self) -> Network {
        let space = self.signal_space();
        let k = self.kernel_matrix();
        let components = (0..self.n_outputs())
            .map(|i| (format!("Σ{}", i + 1), k.select_rows(&[i])))
            .collect();
        Network::new(space, components).expect("shapes match")
    }

    /// Recovers an SVAR model from a regular feedback network whose
    /// components each have output cardinality one.
    ///
    /// The stacked minimal kernel `R` is then row-proper. The outputs are the
    /// lexicographically first columns at which the leading row coefficient
    /// matrix `Γ` of `R` is nonsingular; component `i` is assigned output
    /// `σ(i)` by the lexicographically smallest perfect matching on the
    /// nonzero entries of `Γ` restricted to those columns (entries of maximal
    /// degree in their row). Each row is divided by `Γ[i][σ(i)]`.
    pub fn from_network(net: &Network) -> Result<(SvarModel, ColumnPermutation)> {
        let q = net.space().q();
        let n = net.len();
        let mut rows = Vec::with_capacity(n);
        for (i, c) in net.components().iter().enumerate() {
            let min = c.kernel.minimal_kernel();
            if min.r().rows() != 1 {
                return Err(Error::NotSingleOutput {
                    component: i,
                    cardinality: min.r().rows(),
                });
            }
            rows.push(min.into_matrix());
        }
        if !net.is_regular_feedback() {
            return Err(Error::NotRegularFeedback);
        }
        let r = PolyMatrix::vstack(q, &rows)?;
        let lead = leading_row_coeff(&r)?;
        let outputs = lead.pivot_columns();
        if outputs.len() != n {
            return Err(Error::NotRegularFeedback);
        }
        let assign = smallest_matching(&lead, &outputs).ok_or(Error::NotRegularFeedback)?;
        let inputs: Vec<usize> = (0..q).filter(|c| !assign.contains(c)).collect();

        let mut x = r.select_columns(&assign);
        let mut qm = r.select_columns(&inputs).neg();
        for (i, &c) in assign.iter().enumerate() {
            let inv = lead.get(i, c).recip();
            x.scale_row(i, &inv);
            qm.scale_row(i, &inv);
        }
        let names = net.space().column_names();
        let model = SvarModel::validate(x, qm)?.with_names(
            assign.iter().map(|&c| names[c].clone()).collect(),
            inputs.iter().map(|&c| names[c].clone()).collect(),
        )?;
        let mut order = assign;
        order.extend(inputs);
        Ok((model, ColumnPermutation { order }))
    }

    /// `[X  -Q]` with its columns placed back in network order.
    pub fn kernel_in_network_order(
        &self,
        perm: &ColumnPermutation,
        space: &SignalSpace,
    ) -> Result<KernelRep> {
        let k = self.kernel_matrix();
        if perm.order.len() != k.cols() || space.q() != k.cols() {
            return Err(Error::DimensionMismatch {
                op: "kernel_in_network_order",
                expected: k.cols(),
                found: perm.order.len(),
            });
        }
        let mut r = PolyMatrix::zeros(k.rows(), k.cols());
        for i in 0..k.rows() {
            for (pos, &col) in perm.order.iter().enumerate() {
                r.set(i, col, k.get(i, pos).clone());
            }
        }
        KernelRep::new(space.clone(), r)
    }
}

const INPUT_BLOCK: &str = "u";

/// Lexicographically smallest injective assignment row `i -> cols[..]` with
/// `lead[i][col] != 0`, if a perfect one exists.
fn smallest_matching(lead: &RatMatrix, cols: &[usize]) -> Option<Vec<usize>> {
    let n = lead.rows();
    let mut assign: Vec<usize> = Vec::with_capacity(n);
    let mut used = alloc::vec![false; cols.len()];
    for i in 0..n {
        let mut found = false;
        for (k, &c) in cols.iter().enumerate() {
            if used[k] || lead.get(i, c).is_zero() {
                continue;
            }
            used[k] = true;
            if has_perfect_matching(lead, cols, &used, i + 1) {
                assign.push(c);
                found = true;
                break;
            }
            used[k] = false;
        }
        if !found {
            return None;
        }
    }
    Some(assign)
}

/// Kuhn's augmenting paths for rows `from..` into the unused columns.
fn has_perfect_matching(lead: &RatMatrix, cols: &[usize], used: &[bool], from: usize) -> bool {
    fn augment(
        row: usize,
        lead: &RatMatrix,
        cols: &[usize],
        blocked: &[bool],
        owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for (k, &c) in cols.iter().enumerate() {
            if blocked[k] || visited[k] || lead.get(row, c).is_zero() {
                continue;
            }
            visited[k] = true;
            let free = match owner[k] {
                None => true,
                Some(o) => augment(o, lead, cols, blocked, owner, visited),
            };
            if free {
                owner[k] = Some(row);
                return true;
            }
        }
        false
    }
    let mut owner = alloc::vec![None; cols.len()];
    (from..lead.rows()).all(|row| {
        let mut visited = alloc::vec![false; cols.len()];
        augment(row, lead, cols, used, &mut owner, &mut visited)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::svar_digraph;
    use crate::polyalg::Poly;
    use alloc::vec;

    fn pm(rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_i64s(rows)
    }

    /// Example model with l = 2, X12 = 1 + s, X21 = 2, Q1 = 1, Q3 = s.
    fn example3() -> SvarModel {
        let x = pm(&[
            &[&[0, 0, 1], &[-1, -1], &[]],
            &[&[-2], &[0, 0, 1], &[]],
            &[&[], &[], &[0, 0, 1]],
        ]);
        let q = pm(&[&[&[1]], &[&[]], &[&[0, 1]]]);
        SvarModel::validate(x, q).unwrap()
    }

    #[test]
    fn validate_diagonal_lags() {
        let x = pm(&[
            &[&[0, 1], &[], &[]],
            &[&[], &[0, 0, 1], &[]],
            &[&[], &[], &[0, 1]],
        ]);
        let q = pm(&[&[&[1, 1]], &[&[0, 0, 3]], &[&[]]]);
        let m = SvarModel::validate(x, q).unwrap();
        assert_eq!(m.lags(), &[1, 2, 1]);
    }

    #[test]
    fn validate_errors_are_distinct() {
        let singular = pm(&[&[&[0, 1], &[0, 1]], &[&[0, 1], &[0, 1]]]);
        assert_eq!(
            SvarModel::validate(singular, PolyMatrix::zeros(2, 0)),
            Err(Error::SingularLeadingMatrix)
        );
        let not_monic = pm(&[&[&[0, 2], &[]], &[&[], &[0, 1]]]);
        assert_eq!(
            SvarModel::validate(not_monic, PolyMatrix::zeros(2, 0)),
            Err(Error::DiagonalNotMonic { row: 0 })
        );
        let x = pm(&[&[&[0, 1]]]);
        let q = pm(&[&[&[0, 0, 1]]]);
        assert_eq!(
            SvarModel::validate(x, q),
            Err(Error::InputDegreeExceedsLag {
                row: 0,
                degree: 2,
                lag: 1
            })
        );
        assert!(matches!(
            SvarModel::validate(PolyMatrix::zeros(1, 2), PolyMatrix::zeros(1, 0)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn example3_incidence_and_digraph() {
        let m = example3();
        let net = m.to_network();
        assert_eq!(
            net.incidence().0,
            BinaryMatrix::from_rows(&[&[1, 1, 0, 1], &[1, 1, 0, 0], &[0, 0, 1, 1]])
        );
        assert!(net.is_regular_feedback());
        let g = svar_digraph(&m);
        assert_eq!(
            g.labelled_edges(),
            vec![("y1", "y2"), ("y2", "y1"), ("u", "y1"), ("u", "y3")]
        );
    }

    #[test]
    fn decoupled_autonomous_components() {
        let x = pm(&[&[&[1, 1], &[]], &[&[], &[2, 0, 1]]]);
        let m = SvarModel::validate(x, PolyMatrix::zeros(2, 0)).unwrap();
        let net = m.to_network();
        assert_eq!(net.len(), 2);
        assert!(net
            .components()
            .iter()
            .all(|c| c.kernel.output_cardinality() == 1));
        assert!(svar_digraph(&m).edges.is_empty());
    }

    #[test]
    fn round_trip_example3() {
        let m = example3();
        let net = m.to_network();
        let (back, perm) = SvarModel::from_network(&net).unwrap();
        assert_eq!(perm.order, vec![0, 1, 2, 3]);
        assert_eq!(back.x(), m.x());
        assert_eq!(back.q(), m.q());
        assert_eq!(back.output_names(), m.output_names());
        let s = net.incidence();
        assert_eq!(back.kernel_matrix().sparsity(), perm.apply(&s.0));
    }

    #[test]
    fn from_network_rescales_to_monic() {
        // 2 s y - u = 0 over blocks (u, y): output y, row divided by 2
        let space = SignalSpace::scalar(&["u", "y"]).unwrap();
        let net = Network::new(space, vec![("A".into(), pm(&[&[&[-1], &[0, 2]]]))]).unwrap();
        let (m, perm) = SvarModel::from_network(&net).unwrap();
        assert_eq!(perm.order, vec![1, 0]);
        assert_eq!(m.x().get(0, 0), &Poly::from_i64s(&[0, 1]));
        assert_eq!(m.q().get(0, 0), &Poly::new(vec![crate::ratio(1, 2)]));
        assert_eq!(m.output_names(), &["y".to_string()]);
    }

    #[test]
    fn from_network_hypothesis_failures() {
        let space = SignalSpace::scalar(&["V", "V_C", "I1", "I2"]).unwrap();
        let rows = [
            pm(&[&[&[1], &[-1], &[0, -1], &[0, -1]]]),
            pm(&[&[&[], &[0, -1], &[1], &[]]]),
            pm(&[&[&[], &[0, -1], &[], &[1]]]),
        ];
        let circuit = Network::new(
            space,
            rows.iter()
                .enumerate()
                .map(|(i, r)| (format!("Σ{}", i + 1), r.clone()))
                .collect(),
        )
        .unwrap();
        assert_eq!(
            SvarModel::from_network(&circuit).unwrap_err(),
            Error::NotRegularFeedback
        );
        let part = crate::ComponentPartition::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        let merged = circuit.merge(&part).unwrap();
        assert_eq!(
            SvarModel::from_network(&merged).unwrap_err(),
            Error::NotSingleOutput {
                component: 1,
                cardinality: 2
            }
        );
    }

    #[test]
    fn names_are_checked() {
        let m = example3();
        assert!(m
            .clone()
            .with_names(vec!["a".into(), "b".into(), "a".into()], vec!["u".into()])
            .is_err());
        let m = m
            .with_names(vec!["a".into(), "b".into(), "c".into()], vec!["ext".into()])
            .unwrap();
        assert_eq!(m.signal_space().column_names(), vec!["a", "b", "c", "ext"]);
    }
}
