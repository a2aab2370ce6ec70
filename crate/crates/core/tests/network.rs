mod common;

use behavnet::graphs::{signal_graph, system_graph};
use behavnet::{ComponentPartition, Network, RegularityMode};
use behavnet_testkit::{self as tk, SvarShape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn svar_networks_are_regular_feedback(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let model = tk::svar(&mut r, SvarShape::default());
        let a = model.to_network().analyze();
        prop_assert!(a.regular_feedback && a.regular);
        prop_assert_eq!(a.p, model.n_outputs());
        prop_assert_eq!(a.n, model.lags().iter().sum::<usize>());
        prop_assert!(a.component_p.iter().all(|&p| p == 1));
        prop_assert_eq!(a.component_n, model.lags().to_vec());
    }

    #[test]
    fn incidence_survives_component_mixing(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let net = tk::regular_feedback_network(&mut r, SvarShape::default());
        let mixed = Network::new(
            net.space().clone(),
            net.components()
                .iter()
                .map(|c| {
                    let (u, _) = tk::unimodular(&mut r, c.kernel.r().rows(), 4, 1);
                    (c.name.clone(), u.matmul(c.kernel.r()).unwrap())
                })
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(net.incidence(), mixed.incidence());
        prop_assert_eq!(net.analyze(), mixed.analyze());
        prop_assert!(net.interconnect().is_behavior_equal(&mixed.interconnect()).unwrap());
    }

    #[test]
    fn merging_preserves_the_interconnection(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let net = tk::regular_feedback_network(&mut r, SvarShape::default());
        let part = tk::partition(&mut r, net.len());
        let merged = net.merge(&part).unwrap();
        prop_assert_eq!(merged.len(), part.len());
        prop_assert!(merged.interconnect().is_behavior_equal(&net.interconnect()).unwrap());
        // regular feedback is inherited by coarser partitions
        prop_assert!(merged.is_regular_feedback());
        let whole = net.merge(&ComponentPartition::whole(net.len())).unwrap();
        prop_assert!(whole.is_regular_feedback());
    }

    #[test]
    fn regularizing_partition_is_valid(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = rand::Rng::gen_range(&mut r, 1..=4);
        let q = rand::Rng::gen_range(&mut r, 1..=4);
        let space = behavnet::SignalSpace::scalar(
            &(1..=q).map(|i| format!("w{i}")).collect::<Vec<_>>(),
        )
        .unwrap();
        let comps = (0..n)
            .map(|i| (format!("C{i}"), tk::poly_matrix(&mut r, 1, q, 2, 0.7)))
            .collect();
        let net = Network::new(space, comps).unwrap();
        for mode in [RegularityMode::Regular, RegularityMode::RegularFeedback] {
            let found = net.regularizing_partition(mode);
            prop_assert!(found.exhaustive);
            prop_assert!(net.merge(&found.partition).unwrap().satisfies(mode));
            if net.satisfies(mode) {
                prop_assert_eq!(found.partition.len(), net.len());
            }
        }
    }

    #[test]
    fn hypergraph_duality(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let net = tk::regular_feedback_network(&mut r, SvarShape::default());
        let g = signal_graph(&net);
        let h = system_graph(&net);
        prop_assert_eq!(h.incidence(), g.incidence().transpose());
        prop_assert_eq!(h.dual(), g.clone());
        let s = net.incidence();
        prop_assert_eq!(&g.incidence(), s.matrix());
    }
}
