use proptest::prelude::*;

use conefort::catalog::{base_dimension, congruence_level_data, gl2_fixed_point_data, u1_dimension, Family};
use conefort::num::int;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

/// The genus-one families only accept `n = 1`.
fn clamp(f: Family, n: usize) -> usize {
    if matches!(f, Family::Gl2 | Family::KugaGl2) { 1 } else { n }
}

proptest! {
    #[test]
    fn congruence_quotients_are_m_torsion(
        f in family(),
        n in 0usize..4,
        d in 2i64..8,
        m in 2i64..10,
        p in prop::sample::select(vec![2i64, 3, 5, 7]),
    ) {
        let n = clamp(f, n);
        let d = if f == Family::Universal { 2 * d } else { d + 1 };
        let data = congruence_level_data(f, n, n, d, m).unwrap();
        prop_assert!(data.quotient.invariant_factors().iter().all(|x| *x == int(m)));
        prop_assert_eq!(data.quotient.invariant_factors().len(), data.u1_dimension);
        let rank = data.quotient.p_rank(&int(p)).unwrap();
        prop_assert_eq!(rank == data.u1_dimension, m % p == 0 || data.u1_dimension == 0);
        prop_assert_eq!(data.gamma_u1.scaled(&int(m)), data.gamma_u1_sub);
    }

    #[test]
    fn u1_grows_with_r(f in family(), n in 1usize..6) {
        let n = clamp(f, n);
        let dims: Vec<usize> = (0..=n).map(|r| u1_dimension(f, n, r).unwrap()).collect();
        prop_assert!(dims.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(dims[n], base_dimension(f, n));
    }

    #[test]
    fn gl2_stabilizer_is_cyclic_of_order_d(d in 3i64..40) {
        let g = gl2_fixed_point_data(d).unwrap();
        prop_assert_eq!(g.isogeny.kernel.invariant_factors(), &[int(d)]);
        prop_assert_eq!(g.isogeny.action[0][0].order(), int(d));
        prop_assert!(g.certificate.fixes_stratum);
    }
}
