use behavnet::graphs::svar_digraph;
use behavnet::{Error, PolyMatrix, SvarModel};
use behavnet_testkit::{self as tk, SvarShape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let model = tk::svar(&mut r, SvarShape::default());
        let net = model.to_network();
        let (back, perm) = SvarModel::from_network(&net).unwrap();
        let stacked = net.interconnect();
        prop_assert_eq!(&back.kernel_matrix().sparsity(), &perm.apply(&stacked.r().sparsity()));
        if model.n_inputs() <= 1 {
            // every block is scalar, so column sparsity is the incidence matrix
            prop_assert_eq!(&back.kernel_matrix().sparsity(), &perm.apply(net.incidence().matrix()));
        }
        let k = back.kernel_in_network_order(&perm, net.space()).unwrap();
        prop_assert!(k.is_behavior_equal(&net.interconnect()).unwrap());
        let mut lags = back.lags().to_vec();
        let mut orig = model.lags().to_vec();
        lags.sort_unstable();
        orig.sort_unstable();
        prop_assert_eq!(lags, orig);
    }

    #[test]
    fn round_trip_after_mixing(seed in any::<u64>()) {
        // scaling and reordering signals does not matter: the recovered
        // model describes the same behavior
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let model = tk::svar(&mut r, SvarShape::default());
        let net = model.to_network();
        let scaled = behavnet::Network::new(
            net.space().clone(),
            net.components()
                .iter()
                .map(|c| (c.name.clone(), c.kernel.r().scale(&behavnet::ratio(-3, 2))))
                .collect(),
        )
        .unwrap();
        let (back, perm) = SvarModel::from_network(&scaled).unwrap();
        let k = back.kernel_in_network_order(&perm, net.space()).unwrap();
        prop_assert!(k.is_behavior_equal(&net.interconnect()).unwrap());
    }

    #[test]
    fn digraph_follows_adjacency(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let model = tk::svar(&mut r, SvarShape::default());
        let g = svar_digraph(&model);
        let a = model.adjacency();
        let n = model.n_outputs();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let expected = i != j && a.get(j, i);
                prop_assert_eq!(g.edges.contains(&(i, j)), expected);
                if expected {
                    prop_assert!(j < n);
                }
            }
        }
    }
}

#[test]
fn non_square_x_is_rejected() {
    assert!(matches!(
        SvarModel::validate(PolyMatrix::zeros(2, 3), PolyMatrix::zeros(2, 1)),
        Err(Error::NotSquare { rows: 2, cols: 3 })
    ));
    assert!(matches!(
        SvarModel::validate(PolyMatrix::identity(2), PolyMatrix::zeros(3, 1)),
        Err(Error::DimensionMismatch { .. })
    ));
}
