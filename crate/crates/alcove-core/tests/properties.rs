//! Property tests for the structural invariants.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use alcove_core::exppoly::ExpPoly;
use alcove_core::free::{binomial, free_count_doubled};
use alcove_core::grid::start_points;
use alcove_core::oracle::dp_layers;
use alcove_core::reflect::count_alcove;
use alcove_core::{round_to_count, ChamberSpec, Family, StepKind, StepSet};

fn family_strategy() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::AffineC),
        Just(Family::AffineB),
        Just(Family::AffineD),
        Just(Family::AffineA),
    ]
}

fn symmetric_kind() -> impl Strategy<Value = StepKind> {
    prop_oneof![Just(StepKind::Coordinate), Just(StepKind::Diagonal)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Walks reverse: for sign-symmetric step sets the count is symmetric in
    /// the endpoints.
    #[test]
    fn time_reversal(
        family in family_strategy(),
        kind in symmetric_kind(),
        n in 1usize..=2,
        m2 in prop_oneof![Just(4i64), Just(6), Just(5)],
        sel in any::<(u32, u32)>(),
        k in 0u64..=7,
    ) {
        prop_assume!(kind == StepKind::Diagonal || m2 % 2 == 0);
        let Ok(chamber) = ChamberSpec::new(family, n, m2) else {
            return Ok(());
        };
        let steps = StepSet::new(kind, n);
        prop_assume!(alcove_core::is_reflectable(&steps, &chamber).reflectable);
        let pts = start_points(&chamber, &steps);
        prop_assume!(!pts.is_empty());
        let eta = &pts[sel.0 as usize % pts.len()];
        let lambda = &pts[sel.1 as usize % pts.len()];
        let there = count_alcove(&chamber, &steps, eta, lambda, k).unwrap();
        let back = count_alcove(&chamber, &steps, lambda, eta, k).unwrap();
        prop_assert_eq!(&there, &back);
        prop_assert!(!there.is_negative());
    }

    /// Confinement can only lose walks: layer totals never exceed the free
    /// total, with equality only while no wall is reachable.
    #[test]
    fn dp_layer_totals_bounded(
        family in family_strategy(),
        kind in prop_oneof![Just(StepKind::Coordinate), Just(StepKind::Diagonal), Just(StepKind::Forward)],
        n in 1usize..=2,
        sel in any::<u32>(),
    ) {
        prop_assume!(kind != StepKind::Forward || family == Family::AffineA);
        let Ok(chamber) = ChamberSpec::new(family, n, 6) else {
            return Ok(());
        };
        let steps = StepSet::new(kind, n);
        let pts = start_points(&chamber, &steps);
        prop_assume!(!pts.is_empty());
        let eta = &pts[sel as usize % pts.len()];
        let layers = dp_layers(&chamber, &steps, eta, 6, 10_000_000).unwrap();
        for (k, layer) in layers.iter().enumerate() {
            let total: BigInt = layer.values().sum();
            prop_assert!(total <= BigInt::from(steps.count()).pow(k as u32));
        }
    }

    /// Free counts are invariant under signed permutations of the
    /// displacement (coordinate and diagonal steps).
    #[test]
    fn free_count_symmetry(
        kind in symmetric_kind(),
        gamma in proptest::collection::vec(-4i64..=4, 2..=3),
        k in 0u64..=7,
        perm_seed in any::<u32>(),
        mask in any::<u32>(),
    ) {
        let n = gamma.len();
        let steps = StepSet::new(kind, n);
        let doubled: Vec<i64> = gamma.iter().map(|g| 2 * g).collect();
        let base = free_count_doubled(&steps, &doubled, k);
        // apply a random signed permutation
        let mut idx: Vec<usize> = (0..n).collect();
        let mut seed = perm_seed as usize;
        for i in (1..n).rev() {
            idx.swap(i, seed % (i + 1));
            seed /= i + 1;
        }
        let image: Vec<i64> = (0..n)
            .map(|i| {
                let s = if mask >> i & 1 == 0 { 1 } else { -1 };
                s * doubled[idx[i]]
            })
            .collect();
        prop_assert_eq!(free_count_doubled(&steps, &image, k), base);
    }

    /// Generating functions multiply like exponential generating functions:
    /// extraction of a product is the binomial convolution of extractions.
    #[test]
    fn expoly_product_rule(
        a in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..4),
        b in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..4),
        k in 0u64..=6,
    ) {
        let pa = ExpPoly::from_terms(a);
        let pb = ExpPoly::from_terms(b);
        let lhs = pa.mul(&pb).extract(k);
        let mut rhs = 0.0;
        for j in 0..=k {
            rhs += binomial(k, j).to_f64().unwrap() * pa.extract(j) * pb.extract(k - j);
        }
        prop_assert!((lhs - rhs).abs() < 1e-9 * lhs.abs().max(1.0));
    }

    /// Rounding accepts only near-integers and never a clearly negative count.
    #[test]
    fn rounding_rule(x in -1000i64..1000, wobble in -2e-4f64..2e-4) {
        let v = x as f64 + wobble;
        let result = round_to_count(v);
        if wobble.abs() > 1e-4 {
            prop_assert!(result.is_err());
        } else if x < 0 {
            prop_assert!(result.is_err());
        } else {
            prop_assert_eq!(result.unwrap(), BigInt::from(x));
        }
    }

    /// Parity vanishing: diagonal-step counts are zero whenever k and the
    /// doubled displacement have mismatched parity in any coordinate.
    #[test]
    fn diagonal_parity(
        gamma2 in proptest::collection::vec(-5i64..=5, 1..=3),
        k in 0u64..=8,
    ) {
        let n = gamma2.len();
        let steps = StepSet::new(StepKind::Diagonal, n);
        let mismatched = gamma2.iter().any(|g| (g - k as i64) % 2 != 0);
        if mismatched {
            prop_assert_eq!(free_count_doubled(&steps, &gamma2, k), BigInt::zero());
        }
    }
}
