use num_complex::Complex64;
use proptest::prelude::*;

use conefort::corpus::{fundamental_corpus, random_complete_plane_fan};
use conefort::linalg::IntegerLattice;
use conefort::toric::{chart_ord_compatible, fundamental_lemma_check, ord, TorusChartModel, TorusEmbedding, TorusPoint};

fn point(r: usize) -> impl Strategy<Value = TorusPoint> {
    (prop::collection::vec(-20.0f64..20.0, r), prop::collection::vec(0.0f64..6.3, r))
        .prop_map(|(logs, args)| TorusPoint::from_log(&logs, &args))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ord_is_a_homomorphism((s, t) in (1usize..=4).prop_flat_map(|r| (point(r), point(r)))) {
        let sum: Vec<f64> = ord(&s).iter().zip(ord(&t)).map(|(a, b)| a + b).collect();
        for (a, b) in ord(&s.mul(&t)).iter().zip(&sum) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn charts_match_ord(seed in any::<u64>(), t in point(2)) {
        let fan = random_complete_plane_fan(seed, 0);
        let emb = TorusEmbedding::new(fan).unwrap();
        for chart in emb.charts() {
            prop_assert!(chart_ord_compatible(chart, &t, 1e-9));
        }
    }

    #[test]
    fn strata_match_cones(seed in any::<u64>()) {
        let fan = random_complete_plane_fan(seed, 1);
        let emb = TorusEmbedding::new(fan.clone()).unwrap();
        prop_assert_eq!(emb.strata().len(), fan.cones().len());
    }

    #[test]
    fn smooth_chart_round_trip(
        seed in any::<u64>(),
        moduli in prop::collection::vec(1e-6f64..4.0, 2),
        args in prop::collection::vec(0.0f64..6.3, 2),
    ) {
        let fan = random_complete_plane_fan(seed, 2);
        let w: Vec<Complex64> = moduli.iter().zip(&args).map(|(m, a)| Complex64::from_polar(*m, *a)).collect();
        for c in fan.cones().iter().filter(|c| c.is_top_dimensional()) {
            if !c.is_smooth(&IntegerLattice::standard(2)).unwrap() {
                continue;
            }
            let model = TorusChartModel::standard(c).unwrap();
            let back = model.chart_coordinates(&model.point_from_chart(&w).unwrap());
            for (a, b) in back.iter().zip(&w) {
                prop_assert!((a - b).norm() / b.norm().max(1.0) < 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn fundamental_lemma_matches_sampler(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let corpus = fundamental_corpus(seed);
        let inst = &corpus[pick.index(corpus.len())];
        let r = fundamental_lemma_check(&inst.cone, &inst.sigma, &inst.mode, 6, 600, seed).unwrap();
        prop_assert!(r.pass, "{}: {:?}", inst.name, r.failures().collect::<Vec<_>>());
    }
}
