//! Finite discrete-time trajectories: membership checks against `R(σ) w = 0`
//! and forward simulation of proper input-output systems.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::behavior::{IOPartition, KernelRep, SignalSpace};
use crate::polyalg::{leading_row_coeff, PolyMatrix, RatMatrix, Rational};
use crate::{Error, Result};

/// `T` samples of a signal, row `t` is `w(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    space: SignalSpace,
    values: Vec<Vec<Rational>>,
}

impl Trajectory {
    pub fn new(space: SignalSpace, values: Vec<Vec<Rational>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::HorizonTooShort {
                horizon: 0,
                required: 1,
            });
        }
        let q = space.q();
        if let Some(bad) = values.iter().find(|row| row.len() != q) {
            return Err(Error::DimensionMismatch {
                op: "Trajectory::new",
                expected: q,
                found: bad.len(),
            });
        }
        Ok(Trajectory { space, values })
    }

    pub fn space(&self) -> &SignalSpace {
        &self.space
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Vec<Rational>> {
        self.values
    }

    pub fn sample(&self, t: usize) -> &[Rational] {
        &self.values[t]
    }

    /// `σ^k w`, i.e. the first `k` samples dropped. `None` if nothing is left.
    pub fn shifted(&self, k: usize) -> Option<Trajectory> {
        (k < self.horizon()).then(|| Trajectory {
            space: self.space.clone(),
            values: self.values[k..].to_vec(),
        })
    }
}

/// Largest entry degree, 0 for the zero matrix.
fn max_degree(m: &PolyMatrix) -> usize {
    m.degree().finite().unwrap_or(0)
}

/// `(R(σ) w)(t)` for every `t` with all shifts inside the horizon: entry
/// `(t, i)` is `Σ_j Σ_l R[i][j]_l w_j(t + l)`, for `t < T - d` where `d` is the
/// largest entry degree of `R`.
pub fn residual(k: &KernelRep, traj: &Trajectory) -> Result<RatMatrix> {
    if k.space() != traj.space() {
        return Err(Error::SignalSpaceMismatch);
    }
    let r = k.r();
    let d = max_degree(r);
    let horizon = traj.horizon();
    if horizon <= d {
        return Err(Error::HorizonTooShort {
            horizon,
            required: d + 1,
        });
    }
    let w = traj.values();
    Ok(RatMatrix::from_fn(horizon - d, r.rows(), |t, i| {
        let mut acc = Rational::zero();
        for (j, p) in r.row(i).iter().enumerate() {
            for (l, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc += c * &w[t + l][j];
                }
            }
        }
        acc
    }))
}

/// First `(t, row)` at which a residual is nonzero, scanning time-major.
pub fn first_violation(res: &RatMatrix) -> Option<(usize, usize)> {
    (0..res.rows())
        .flat_map(|t| (0..res.cols()).map(move |i| (t, i)))
        .find(|&(t, i)| !res.get(t, i).is_zero())
}

/// Right-hand side contribution of row `i` of `m` at base time `t`, using
/// coefficients of degree `< limit` (`limit = None`: all of them).
fn row_sum(
    m: &PolyMatrix,
    i: usize,
    t: usize,
    x: &[Vec<Rational>],
    limit: Option<usize>,
) -> Rational {
    let mut acc = Rational::zero();
    for (j, p) in m.row(i).iter().enumerate() {
        for (l, c) in p.coeffs().iter().enumerate() {
            if limit.is_some_and(|lim| l >= lim) {
                break;
            }
            if !c.is_zero() {
                acc += c * &x[t + l][j];
            }
        }
    }
    acc
}

fn check_inputs(part: &IOPartition, u: &[Vec<Rational>], required: usize) -> Result<()> {
    let m = part.input_cols.len();
    if m > 0 && u.len() < required {
        return Err(Error::InputHorizonTooShort {
            available: u.len(),
            required,
        });
    }
    if let Some(bad) = u.iter().find(|row| row.len() != m) {
        return Err(Error::DimensionMismatch {
            op: "input sample",
            expected: m,
            found: bad.len(),
        });
    }
    Ok(())
}

/// Input samples padded to `len` rows (only matters when there are no inputs).
fn padded(u: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    let mut u = u.to_vec();
    if u.len() < len {
        u.resize(len, Vec::new());
    }
    u
}

/// Simulates `P(σ) y = Q(σ) u` over `horizon` samples.
///
/// `initial` holds `y(0), …, y(τ*-1)` (outputs in `part.output_cols` order),
/// `τ*` being the largest lag. Rows with a smaller lag already constrain
/// that window; violations are reported as [`Error::InconsistentInitialData`].
/// From `τ*` on, `y(τ)` solves `Γ y(τ) = b(τ)` with `Γ` the leading row
/// coefficient matrix of `P`.
pub fn simulate(
    part: &IOPartition,
    u_traj: &[Vec<Rational>],
    initial: &[Vec<Rational>],
    horizon: usize,
) -> Result<Trajectory> {
    if !part.proper {
        return Err(Error::NotProper);
    }
    let lags = part.lags();
    let tau = part.initial_window();
    let p = part.output_cols.len();
    let required = tau.max(1);
    if horizon < required {
        return Err(Error::HorizonTooShort { horizon, required });
    }
    check_inputs(part, u_traj, horizon)?;
    if initial.len() != tau {
        return Err(Error::DimensionMismatch {
            op: "initial window",
            expected: tau,
            found: initial.len(),
        });
    }
    if let Some(bad) = initial.iter().find(|row| row.len() != p) {
        return Err(Error::DimensionMismatch {
            op: "initial sample",
            expected: p,
            found: bad.len(),
        });
    }
    let u = padded(u_traj, horizon);
    let (pm, qm) = (&part.p_part, &part.q_part);

    let mut y: Vec<Vec<Rational>> = initial.to_vec();
    for t in 0..tau {
        for (i, &lag) in lags.iter().enumerate() {
            if t + lag < tau && row_sum(pm, i, t, &y, None) != row_sum(qm, i, t, &u, None) {
                return Err(Error::InconsistentInitialData { time: t, row: i });
            }
        }
    }

    let gamma = leading_row_coeff(pm)?;
    y.resize(horizon, vec![Rational::zero(); p]);
    for now in tau..horizon {
        let b: Vec<Rational> = lags
            .iter()
            .enumerate()
            .map(|(i, &lag)| {
                let base = now - lag;
                row_sum(qm, i, base, &u, None) - row_sum(pm, i, base, &y, Some(lag))
            })
            .collect();
        y[now] = gamma.solve(&b).ok_or(Error::NotProper)?;
    }
    Ok(interleave(part, &y, &u, horizon))
}

fn interleave(
    part: &IOPartition,
    y: &[Vec<Rational>],
    u: &[Vec<Rational>],
    horizon: usize,
) -> Trajectory {
    let q = part.space().q();
    let values = (0..horizon)
        .map(|t| {
            let mut w = vec![Rational::zero(); q];
            for (k, &c) in part.output_cols.iter().enumerate() {
                w[c] = y[t][k].clone();
            }
            for (k, &c) in part.input_cols.iter().enumerate() {
                w[c] = u[t][k].clone();
            }
            w
        })
        .collect();
    Trajectory {
        space: part.space().clone(),
        values,
    }
}

/// An initial output window consistent with `u`, as close to `guess` as the
/// constraints allow: unconstrained samples keep their guessed value (zero
/// when no guess is given).
pub fn complete_initial_window(
    part: &IOPartition,
    u_traj: &[Vec<Rational>],
    guess: Option<&[Vec<Rational>]>,
) -> Result<Vec<Vec<Rational>>> {
    let lags = part.lags();
    let tau = part.initial_window();
    let p = part.output_cols.len();
    check_inputs(part, u_traj, tau)?;
    if tau == 0 {
        return Ok(Vec::new());
    }
    let u = padded(u_traj, tau);
    let (pm, qm) = (&part.p_part, &part.q_part);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for t in 0..tau {
        for (i, &lag) in lags.iter().enumerate() {
            if t + lag >= tau {
                continue;
            }
            let mut eq = vec![Rational::zero(); tau * p];
            for (j, poly) in pm.row(i).iter().enumerate() {
                for (l, c) in poly.coeffs().iter().enumerate() {
                    eq[(t + l) * p + j] += c;
                }
            }
            rows.push(eq);
            rhs.push(row_sum(qm, i, t, &u, None));
        }
    }
    let flat_guess: Vec<Rational> = match guess {
        Some(g) => {
            if g.len() != tau || g.iter().any(|row| row.len() != p) {
                return Err(Error::DimensionMismatch {
                    op: "initial guess",
                    expected: tau,
                    found: g.len(),
                });
            }
            g.iter().flatten().cloned().collect()
        }
        None => vec![Rational::zero(); tau * p],
    };
    if rows.is_empty() {
        return Ok(flat_guess.chunks(p).map(<[_]>::to_vec).collect());
    }
    let sol = RatMatrix::from_rows(rows)
        .solve_affine(&rhs, Some(&flat_guess))
        .ok_or(Error::InconsistentInitialData { time: 0, row: 0 })?;
    Ok(sol.chunks(p).map(<[_]>::to_vec).collect())
}
