//! Brute-force ground truth, kept deliberately independent of the signed-sum
//! counting path: no group elements, no binomial formulas, just forward
//! dynamic programming over interior lattice points (or labeled particle
//! tuples on the circle) and, for tiny instances, raw step-sequence
//! enumeration.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chamber::ChamberSpec;
use crate::error::{Error, Result};
use crate::point::LatticePoint;
use crate::steps::{StepKind, StepSet};

/// Default cap on DP states (states × layers).
pub const DEFAULT_STATE_CAP: usize = 10_000_000;
/// Default cap on `(#steps)^k` for exhaustive enumeration.
pub const DEFAULT_SEQUENCE_CAP: u64 = 2_000_000;

pub type Layer = HashMap<Vec<i64>, BigInt>;

/// Forward DP over interior points: one layer per time step.
pub fn dp_layers(
    chamber: &ChamberSpec,
    steps: &StepSet,
    eta: &LatticePoint,
    kmax: u64,
    cap: usize,
) -> Result<Vec<Layer>> {
    chamber.check_interior(eta)?;
    steps.check_lattice(eta)?;
    let vectors = steps.vectors_doubled();
    let reach = kmax as i64 * steps.max_step_doubled();
    let eta_d = eta.doubled().to_vec();

    let mut layers = Vec::with_capacity(kmax as usize + 1);
    let mut current = Layer::new();
    current.insert(eta_d.clone(), BigInt::from(1));
    let mut visited = 1usize;
    layers.push(current);

    for _ in 0..kmax {
        let mut next = Layer::new();
        for (pos, ways) in layers.last().unwrap() {
            for v in &vectors {
                let candidate: Vec<i64> = pos.iter().zip(v).map(|(p, d)| p + d).collect();
                let in_reach = candidate
                    .iter()
                    .zip(&eta_d)
                    .all(|(c, e)| (c - e).abs() <= reach);
                if !in_reach {
                    continue;
                }
                if !chamber.in_interior(&LatticePoint::from_doubled(candidate.clone())) {
                    continue;
                }
                *next.entry(candidate).or_insert_with(BigInt::zero) += ways;
            }
        }
        visited += next.len();
        if visited > cap {
            return Err(Error::ResourceCap(format!(
                "dp state count exceeded {cap}"
            )));
        }
        layers.push(next);
    }
    Ok(layers)
}

/// Exact number of `k`-step walks from `eta` to `lambda` staying strictly
/// inside the chamber at every step.
pub fn dp_count(
    chamber: &ChamberSpec,
    steps: &StepSet,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
) -> Result<BigInt> {
    dp_count_with_cap(chamber, steps, eta, lambda, k, DEFAULT_STATE_CAP)
}

pub fn dp_count_with_cap(
    chamber: &ChamberSpec,
    steps: &StepSet,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
    cap: usize,
) -> Result<BigInt> {
    chamber.check_interior(lambda)?;
    let layers = dp_layers(chamber, steps, eta, k, cap)?;
    Ok(layers[k as usize]
        .get(lambda.doubled())
        .cloned()
        .unwrap_or_else(BigInt::zero))
}

/// Enumerates every step sequence; the oracle for the oracle.
pub fn exhaustive_count(
    chamber: &ChamberSpec,
    steps: &StepSet,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
) -> Result<BigInt> {
    exhaustive_count_with_cap(chamber, steps, eta, lambda, k, DEFAULT_SEQUENCE_CAP)
}

pub fn exhaustive_count_with_cap(
    chamber: &ChamberSpec,
    steps: &StepSet,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
    cap: u64,
) -> Result<BigInt> {
    chamber.check_interior(eta)?;
    chamber.check_interior(lambda)?;
    steps.check_lattice(eta)?;
    let total = (steps.count() as f64).powi(k as i32);
    if total > cap as f64 {
        return Err(Error::ResourceCap(format!(
            "{}^{k} step sequences exceed {cap}",
            steps.count()
        )));
    }
    let vectors = steps.vectors_doubled();
    let mut pos = eta.doubled().to_vec();
    let mut count = BigInt::zero();
    rec_walk(
        chamber,
        &vectors,
        &mut pos,
        lambda.doubled(),
        k,
        &mut count,
    );
    Ok(count)
}

fn rec_walk(
    chamber: &ChamberSpec,
    vectors: &[Vec<i64>],
    pos: &mut Vec<i64>,
    target: &[i64],
    left: u64,
    count: &mut BigInt,
) {
    if left == 0 {
        if pos == target {
            *count += 1;
        }
        return;
    }
    for v in vectors {
        for (p, d) in pos.iter_mut().zip(v) {
            *p += d;
        }
        if chamber.in_interior(&LatticePoint::from_doubled(pos.clone())) {
            rec_walk(chamber, vectors, pos, target, left - 1, count);
        }
        for (p, d) in pos.iter_mut().zip(v) {
            *p -= d;
        }
    }
}

/// Labeled non-colliding particles on a circle of circumference `m`:
/// DP over tuples of distinct doubled positions mod `2m`.
///
/// Transitions per step model: `Forward` moves one particle by `+1`,
/// `Coordinate` moves one particle by `±1`, `Diagonal` moves every particle
/// by `±1/2` simultaneously. Collisions are forbidden at every integer time.
pub fn circle_dp_count(
    m: i64,
    n: usize,
    steps: &StepSet,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
) -> Result<BigInt> {
    let layers = circle_dp_layers(m, n, steps, eta, k, DEFAULT_STATE_CAP)?;
    let target = normalize_circle(m, lambda, n)?;
    Ok(layers[k as usize]
        .get(&target)
        .cloned()
        .unwrap_or_else(BigInt::zero))
}

pub fn circle_dp_layers(
    m: i64,
    n: usize,
    steps: &StepSet,
    eta: &LatticePoint,
    kmax: u64,
    cap: usize,
) -> Result<Vec<Layer>> {
    if m < 1 {
        return Err(Error::InvalidInput("circle size must be positive".into()));
    }
    steps.check_lattice(eta)?;
    let start = normalize_circle(m, eta, n)?;
    let md = 2 * m; // doubled circumference

    let mut layers = Vec::with_capacity(kmax as usize + 1);
    let mut first = Layer::new();
    first.insert(start, BigInt::from(1));
    layers.push(first);
    let mut visited = 1usize;

    for _ in 0..kmax {
        let mut next = Layer::new();
        for (pos, ways) in layers.last().unwrap() {
            let mut push = |candidate: Vec<i64>, ways: &BigInt| {
                if distinct_positions(&candidate) {
                    *next.entry(candidate).or_insert_with(BigInt::zero) += ways;
                }
            };
            match steps.kind {
                StepKind::Forward => {
                    for i in 0..n {
                        let mut c = pos.clone();
                        c[i] = (c[i] + 2).rem_euclid(md);
                        push(c, ways);
                    }
                }
                StepKind::Coordinate => {
                    for i in 0..n {
                        for d in [2i64, -2] {
                            let mut c = pos.clone();
                            c[i] = (c[i] + d).rem_euclid(md);
                            push(c, ways);
                        }
                    }
                }
                StepKind::Diagonal => {
                    for mask in 0..(1u32 << n) {
                        let c: Vec<i64> = (0..n)
                            .map(|i| {
                                let d = if mask >> i & 1 == 0 { 1 } else { -1 };
                                (pos[i] + d).rem_euclid(md)
                            })
                            .collect();
                        push(c, ways);
                    }
                }
            }
            if steps.include_zero_step {
                push(pos.clone(), ways);
            }
        }
        visited += next.len();
        if visited > cap {
            return Err(Error::ResourceCap(format!(
                "circle dp state count exceeded {cap}"
            )));
        }
        layers.push(next);
    }
    Ok(layers)
}

fn distinct_positions(pos: &[i64]) -> bool {
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] == pos[j] {
                return false;
            }
        }
    }
    true
}

fn normalize_circle(m: i64, point: &LatticePoint, n: usize) -> Result<Vec<i64>> {
    point.check_dim(n)?;
    let md = 2 * m;
    let pos: Vec<i64> = point.doubled().iter().map(|d| d.rem_euclid(md)).collect();
    if !distinct_positions(&pos) {
        return Err(Error::CollidingConfiguration);
    }
    Ok(pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber::Family;

    #[test]
    fn interval_walk_examples() {
        let c = ChamberSpec::with_integer_m(Family::AffineC, 1, 3).unwrap();
        let coord = StepSet::new(StepKind::Coordinate, 1);
        let one = LatticePoint::from_ints(&[1]);
        assert_eq!(dp_count(&c, &coord, &one, &one, 2).unwrap(), 1.into());
        assert_eq!(dp_count(&c, &coord, &one, &one, 0).unwrap(), 1.into());
        // forced zig-zag
        assert_eq!(
            exhaustive_count(&c, &coord, &one, &one, 4).unwrap(),
            1.into()
        );
    }

    #[test]
    fn frozen_forward_walk() {
        let a = ChamberSpec::with_integer_m(Family::AffineA, 2, 2).unwrap();
        let fwd = StepSet::new(StepKind::Forward, 2);
        assert_eq!(
            dp_count(
                &a,
                &fwd,
                &LatticePoint::from_ints(&[1, 0]),
                &LatticePoint::from_ints(&[2, 1]),
                2
            )
            .unwrap(),
            0.into()
        );
    }

    #[test]
    fn dp_matches_exhaustive_on_sampled_instances() {
        // cheap deterministic sample over families, steps, and endpoints
        let mut checked = 0;
        for (family, m2) in [
            (Family::AffineC, 6),
            (Family::AffineB, 4),
            (Family::AffineD, 4),
            (Family::AffineA, 6),
            (Family::FiniteA, 6),
        ] {
            for n in 1..=2usize {
                let Ok(chamber) = ChamberSpec::new(family, n, m2) else {
                    continue;
                };
                for kind in [StepKind::Coordinate, StepKind::Diagonal, StepKind::Forward] {
                    let steps = StepSet::new(kind, n);
                    let pts = small_interior_points(&chamber, &steps);
                    for eta in pts.iter().take(3) {
                        for lambda in pts.iter().take(3) {
                            for k in 0..=4u64 {
                                let dp = dp_count(&chamber, &steps, eta, lambda, k).unwrap();
                                let ex =
                                    exhaustive_count(&chamber, &steps, eta, lambda, k).unwrap();
                                assert_eq!(dp, ex, "{family} n={n} {kind:?} k={k}");
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    fn small_interior_points(chamber: &ChamberSpec, steps: &StepSet) -> Vec<LatticePoint> {
        let bound = 2 * chamber.m2;
        let mut out = Vec::new();
        let n = chamber.n;
        let mut x = vec![-bound; n];
        loop {
            let p = LatticePoint::from_doubled(x.clone());
            if chamber.in_interior(&p) && steps.check_lattice(&p).is_ok() {
                out.push(p);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                x[i] += 1;
                if x[i] <= bound {
                    break;
                }
                x[i] = -bound;
            }
        }
    }

    #[test]
    fn monotone_in_chamber_size() {
        let coord = StepSet::new(StepKind::Coordinate, 2);
        let eta = LatticePoint::from_ints(&[2, 1]);
        for m in 4..7i64 {
            let small = ChamberSpec::with_integer_m(Family::AffineC, 2, m).unwrap();
            let large = ChamberSpec::with_integer_m(Family::AffineC, 2, m + 1).unwrap();
            for k in [2u64, 4, 6] {
                let a = dp_count(&small, &coord, &eta, &eta, k).unwrap();
                let b = dp_count(&large, &coord, &eta, &eta, k).unwrap();
                assert!(a <= b);
            }
        }
    }

    #[test]
    fn layer_totals_bounded_by_free_walks() {
        let c = ChamberSpec::with_integer_m(Family::AffineC, 2, 4).unwrap();
        let coord = StepSet::new(StepKind::Coordinate, 2);
        let eta = LatticePoint::from_ints(&[2, 1]);
        let layers = dp_layers(&c, &coord, &eta, 6, DEFAULT_STATE_CAP).unwrap();
        for (k, layer) in layers.iter().enumerate() {
            let total: BigInt = layer.values().sum();
            assert!(total <= BigInt::from(4u64).pow(k as u32));
        }
    }

    #[test]
    fn circle_examples() {
        let fwd = StepSet::new(StepKind::Forward, 2);
        assert_eq!(
            circle_dp_count(
                4,
                2,
                &fwd,
                &LatticePoint::from_ints(&[1, 0]),
                &LatticePoint::from_ints(&[2, 1]),
                2
            )
            .unwrap(),
            1.into()
        );
        let coord = StepSet::new(StepKind::Coordinate, 2);
        assert_eq!(
            circle_dp_count(
                3,
                2,
                &coord,
                &LatticePoint::from_ints(&[1, 0]),
                &LatticePoint::from_ints(&[1, 0]),
                2
            )
            .unwrap(),
            2.into()
        );
        let diag = StepSet::new(StepKind::Diagonal, 2);
        assert_eq!(
            circle_dp_count(
                2,
                2,
                &diag,
                &LatticePoint::from_ints(&[1, 0]),
                &LatticePoint::from_ints(&[1, 0]),
                2
            )
            .unwrap(),
            2.into()
        );
    }

    #[test]
    fn colliding_configuration_is_rejected() {
        let coord = StepSet::new(StepKind::Coordinate, 2);
        let err = circle_dp_count(
            3,
            2,
            &coord,
            &LatticePoint::from_ints(&[4, 1]), // 4 ≡ 1 mod 3
            &LatticePoint::from_ints(&[1, 0]),
            2,
        )
        .unwrap_err();
        assert_eq!(err, Error::CollidingConfiguration);
    }
}
