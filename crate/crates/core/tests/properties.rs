use colgraph::exact_enum::{exact_a_partition_sum, exact_a_series};
use colgraph::multipoly::{MultiIndex, RationalPolynomial};
use colgraph::WeightSpec;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Random weight spec on all compositions of `k` into `c` parts, with
/// coefficients `p/d`, `p ∈ [-4, 4]`, `d ∈ [1, 3]`.
fn spec_strategy(c: usize, k: u32) -> impl Strategy<Value = WeightSpec> {
    let comps = MultiIndex::compositions(k, c);
    prop::collection::vec((-4i64..=4, 1i64..=3), comps.len()).prop_map(move |coeffs| {
        let entries = comps
            .iter()
            .cloned()
            .zip(coeffs.into_iter().map(|(p, d)| q(p, d)));
        WeightSpec::from_entries(c, k, entries).unwrap()
    })
}

fn shapes() -> impl Strategy<Value = (usize, u32)> {
    prop_oneof![
        Just((1usize, 3u32)),
        Just((2, 3)),
        Just((2, 4)),
        Just((3, 3))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_relation((c, k) in shapes(), seed in 0u64..1000) {
        let spec = spec_from_seed(c, k, seed);
        let v = spec.potential();
        let mut lhs = RationalPolynomial::zero(c);
        for (i, d) in v.gradient().iter().enumerate() {
            lhs = lhs.add(&RationalPolynomial::variable(c, i).mul(d).unwrap()).unwrap();
        }
        prop_assert_eq!(lhs, v.scale(&q(i64::from(k), 1)));
    }

    #[test]
    fn hessian_is_symmetric((c, k) in shapes(), seed in 0u64..1000) {
        let h = spec_from_seed(c, k, seed).potential().hessian();
        for i in 0..c {
            for j in 0..c {
                prop_assert_eq!(&h[i][j], &h[j][i]);
            }
        }
    }

    #[test]
    fn evaluation_respects_products(
        (c, k) in shapes(),
        s1 in 0u64..1000,
        s2 in 0u64..1000,
        pt in prop::collection::vec(-1.0f64..1.0, 3),
    ) {
        let p = spec_from_seed(c, k, s1).potential();
        let r = spec_from_seed(c, k, s2).potential();
        let z: Vec<Complex64> = pt[..c].iter().map(|&x| Complex64::new(x, 0.5 * x)).collect();
        let prod = p.mul(&r).unwrap().eval(&z).unwrap();
        let direct = p.eval(&z).unwrap() * r.eval(&z).unwrap();
        prop_assert!((prod - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
    }
}

fn spec_from_seed(c: usize, k: u32, seed: u64) -> WeightSpec {
    let comps = MultiIndex::compositions(k, c);
    let entries = comps.into_iter().enumerate().map(|(j, w)| {
        let h = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(j as u64 * 1442695040888963407);
        let p = (h >> 33) as i64 % 9 - 4;
        let d = (h >> 20) as i64 % 3 + 1;
        (w, q(p, d))
    });
    WeightSpec::from_entries(c, k, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn series_matches_partition_sum(spec in (2usize..=3).prop_flat_map(|c| spec_strategy(c, 3)), n in 0u32..=4) {
        prop_assert_eq!(exact_a_series(n, &spec), exact_a_partition_sum(n, &spec));
    }

    #[test]
    fn color_relabeling_preserves_counts(spec in spec_strategy(3, 3), n in 0u32..=4) {
        let permuted = spec.permuted(&[2, 0, 1]).unwrap();
        prop_assert_eq!(exact_a_series(n, &spec), exact_a_series(n, &permuted));
    }

    #[test]
    fn scaling_multiplies_by_power(spec in spec_strategy(2, 4), n in 0u32..=4, t in 1i64..=5, d in 1i64..=4) {
        let t = q(t, d);
        let scaled = exact_a_series(n, &spec.scaled(&t));
        let expect = exact_a_series(n, &spec) * num_traits::pow(t, n as usize);
        prop_assert_eq!(scaled, expect);
    }

    #[test]
    fn odd_half_edge_count_vanishes(spec in spec_strategy(2, 3), n in (0u32..=3).prop_map(|n| 2 * n + 1)) {
        prop_assert!(exact_a_series(n, &spec).is_zero());
        prop_assert!(exact_a_partition_sum(n, &spec).is_zero());
    }
}
