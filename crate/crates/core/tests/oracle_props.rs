mod common;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use quadlcm_core::arith::QuadPoly;
use quadlcm_core::oracle::{default_n0, g_eval, g_p_eval, gcd_divides_bk_check, hua_check, unboundedness_witness};
use quadlcm_core::period::{compute_bk, is_eventually_periodic, kf_bound, smallest_period};

fn instance() -> impl Strategy<Value = (QuadPoly, u64)> {
    (1i64..=9, -9i64..=9, -9i64..=9, 1u64..=6)
        .prop_map(|(a, b, c, k)| (QuadPoly::new(a, b, c).unwrap(), k))
        .prop_filter("primitive and eventually periodic", |(f, k)| {
            f.is_primitive() && is_eventually_periodic(f, *k)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bk_is_a_period((f, k) in instance(), offset in 0u64..50) {
        let bk = compute_bk(&f, k).unwrap();
        prop_assume!(bk < BigUint::from(1u64 << 40));
        let bk = bk.to_u64().unwrap();
        let n = default_n0(&f) + offset;
        prop_assert_eq!(g_eval(&f, k, n).unwrap(), g_eval(&f, k, n + bk).unwrap());
    }

    #[test]
    fn smallest_period_is_a_period((f, k) in instance(), offset in 0u64..200) {
        let r = smallest_period(&f, k).unwrap();
        prop_assume!(r.period.0 < BigUint::from(1u64 << 40));
        let p = r.period.0.to_u64().unwrap();
        let n = default_n0(&f) + offset;
        prop_assert_eq!(g_eval(&f, k, n).unwrap(), g_eval(&f, k, n + p).unwrap());
    }

    #[test]
    fn pointwise_identities((f, k) in instance(), offset in 0u64..1000) {
        let n = default_n0(&f) + offset;
        prop_assert!(gcd_divides_bk_check(&f, k, n).unwrap());
        prop_assert!(hua_check(&f, k, n).unwrap());
        for p in [2u64, 3, 5, 7] {
            g_p_eval(&f, k, n, p).unwrap();
        }
    }

    #[test]
    fn witnesses_grow(a1 in 1i64..=3, b1 in -5i64..=5, i0 in 1u64..=4, extra in 0u64..3) {
        // (a1 x + b1)(a1 x + b1 + a1 i0) has D = a^2 i0^2.
        let a = a1 * a1;
        let b = a1 * (2 * b1 + a1 * i0 as i64);
        let c = b1 * (b1 + a1 * i0 as i64);
        let f = QuadPoly::new(a, b, c).unwrap();
        prop_assume!(f.is_primitive());
        prop_assert_eq!(kf_bound(&f).unwrap().witness(), Some(i0));
        let w = unboundedness_witness(&f, i0 + extra, 6).unwrap();
        prop_assert!(w.windows(2).all(|p| p[0].g.0 < p[1].g.0));
        prop_assert!(w.iter().all(|s| s.g.0 >= s.linear_factor.0));
    }
}
