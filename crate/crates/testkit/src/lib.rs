//! Random generators for property tests and the acceptance suite.
//!
//! Every generator takes the RNG explicitly, so seeded runs are reproducible.

use behavnet::{ratio, ComponentPartition, Network, Poly, PolyMatrix, Rational, SvarModel};
use rand::seq::SliceRandom;
use rand::Rng;

/// Coefficient range used everywhere below.
pub const COEFF: i64 = 3;

/// Integer in `-COEFF..=COEFF`.
pub fn small_int<R: Rng>(rng: &mut R) -> i64 {
    rng.gen_range(-COEFF..=COEFF)
}

/// `a/b` with `|a| <= 4`, `1 <= b <= 3`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Polynomial of degree at most `max_deg` with small integer coefficients
/// (possibly zero).
pub fn poly<R: Rng>(rng: &mut R, max_deg: usize) -> Poly {
    let coeffs: Vec<i64> = (0..=max_deg).map(|_| small_int(rng)).collect();
    Poly::from_i64s(&coeffs)
}

/// Nonzero polynomial of degree exactly `deg`.
pub fn poly_of_degree<R: Rng>(rng: &mut R, deg: usize) -> Poly {
    let mut coeffs: Vec<i64> = (0..deg).map(|_| small_int(rng)).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = small_int(rng);
    }
    coeffs.push(lead);
    Poly::from_i64s(&coeffs)
}

/// Random matrix; each entry is nonzero with probability `density`.
pub fn poly_matrix<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    max_deg: usize,
    density: f64,
) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, poly(rng, max_deg));
            }
        }
    }
    m
}

/// Random unimodular `U` together with `U^{-1}`, built from `ops` elementary
/// operations (row additions with polynomial factors of degree at most
/// `max_deg`, swaps, and sign flips).
pub fn unimodular<R: Rng>(
    rng: &mut R,
    n: usize,
    ops: usize,
    max_deg: usize,
) -> (PolyMatrix, PolyMatrix) {
    let mut u = PolyMatrix::identity(n);
    let mut u_inv = PolyMatrix::identity(n);
    if n == 0 {
        return (u, u_inv);
    }
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..6) {
            0 if i != j => {
                // E = swap(i, j) = E^{-1}
                u.swap_rows(i, j);
                u_inv.swap_cols(i, j);
            }
            1 => {
                // E = diag(.., -1, ..) = E^{-1}
                let minus = ratio(-1, 1);
                u.scale_row(i, &minus);
                let mut t = u_inv.transpose();
                t.scale_row(i, &minus);
                u_inv = t.transpose();
            }
            _ if i != j => {
                // E = I + f e_ij, E^{-1} = I - f e_ij
                let f = poly(rng, max_deg);
                u.add_row_multiple(i, j, &f);
                u_inv.add_col_multiple(j, i, &-f);
            }
            _ => {}
        }
    }
    (u, u_inv)
}

/// Shape limits for [`svar`].
#[derive(Clone, Copy, Debug)]
pub struct SvarShape {
    pub max_outputs: usize,
    pub max_inputs: usize,
    pub max_lag: usize,
    /// Probability that an off-diagonal entry of `X` (or an entry of `Q`) is
    /// nonzero.
    pub density: f64,
}

impl Default for SvarShape {
    fn default() -> Self {
        SvarShape {
            max_outputs: 4,
            max_inputs: 2,
            max_lag: 3,
            density: 0.3,
        }
    }
}

/// A random valid SVAR model. Draws violating the model assumptions (a
/// singular leading matrix) are rejected and redrawn.
pub fn svar<R: Rng>(rng: &mut R, shape: SvarShape) -> SvarModel {
    loop {
        let n = rng.gen_range(1..=shape.max_outputs);
        let m = rng.gen_range(0..=shape.max_inputs);
        let lags: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=shape.max_lag)).collect();
        let mut x = PolyMatrix::zeros(n, n);
        let mut q = PolyMatrix::zeros(n, m);
        for (i, &lag) in lags.iter().enumerate() {
            // monic diagonal of degree l_i
            let mut diag = if lag > 0 {
                poly(rng, lag - 1)
            } else {
                Poly::zero()
            };
            diag = &diag + &Poly::monomial(ratio(1, 1), lag);
            x.set(i, i, diag);
            for j in (0..n).filter(|&j| j != i) {
                if rng.gen_bool(shape.density) {
                    x.set(i, j, poly(rng, lag));
                }
            }
            for j in 0..m {
                if rng.gen_bool(shape.density) {
                    q.set(i, j, poly(rng, lag));
                }
            }
        }
        if let Ok(model) = SvarModel::validate(x, q) {
            return model;
        }
    }
}

/// Random partition of `0..n` into nonempty groups.
pub fn partition<R: Rng>(rng: &mut R, n: usize) -> ComponentPartition {
    let k = rng.gen_range(1..=n.max(1));
    let mut labels: Vec<usize> = (0..n)
        .map(|i| if i < k { i } else { rng.gen_range(0..k) })
        .collect();
    labels.shuffle(rng);
    let groups = (0..k)
        .map(|g| (0..n).filter(|&i| labels[i] == g).collect())
        .collect();
    ComponentPartition::new(groups, n).expect("labels cover every group")
}

/// A random regular feedback network: a random SVAR model, split into
/// single-equation components, randomly merged, with every merged
/// component's rows mixed by a random unimodular matrix.
pub fn regular_feedback_network<R: Rng>(rng: &mut R, shape: SvarShape) -> Network {
    let model = svar(rng, shape);
    let base = model.to_network();
    let merged = base
        .merge(&partition(rng, base.len()))
        .expect("partition matches network");
    let space = merged.space().clone();
    let components = merged
        .components()
        .iter()
        .map(|c| {
            let (u, _) = unimodular(rng, c.kernel.r().rows(), 2, 1);
            let r = u.matmul(c.kernel.r()).expect("square mixing");
            (c.name.clone(), r)
        })
        .collect();
    Network::new(space, components).expect("shapes preserved")
}
