//! Exact counts of unconstrained walks, and the modified Bessel series that
//! packages the coordinate-step counts into an exponential generating
//! function.
//!
//! All fixed-length counts are exact big integers. Binomials with a
//! fractional, negative, or out-of-range lower index are zero; that single
//! convention encodes every parity vanishing uniformly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::point::LatticePoint;
use crate::steps::{StepKind, StepSet};

/// `C(k, b)` where `b` is given doubled; zero unless `b` is an integer in
/// `[0, k]`.
pub fn binomial_doubled(k: u64, twice_bottom: i64) -> BigInt {
    if twice_bottom % 2 != 0 {
        return BigInt::zero();
    }
    let b = twice_bottom / 2;
    if b < 0 || b as u64 > k {
        return BigInt::zero();
    }
    binomial(k, b as u64)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut res = BigInt::one();
    for i in 0..k {
        res = res * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    res
}

pub fn factorial(n: u64) -> BigInt {
    let mut res = BigInt::one();
    for i in 2..=n {
        res *= BigInt::from(i);
    }
    res
}

/// Diagonal steps: each coordinate is an independent `±1/2` walk, so the
/// count is a product of binomials `C(k, k/2 + γ_i)`.
pub fn free_diagonal(gamma: &LatticePoint, k: u64) -> BigInt {
    let mut res = BigInt::one();
    for &gd in gamma.doubled() {
        let factor = binomial_doubled(k, k as i64 + gd);
        if factor.is_zero() {
            return BigInt::zero();
        }
        res *= factor;
    }
    res
}

/// Coordinate steps `±e_i`: the coefficient of `u^γ` in `(Σ u_i + u_i^{-1})^k`,
/// computed by distributing the `k` steps over the coordinates.
pub fn free_coordinate(gamma: &LatticePoint, k: u64) -> BigInt {
    if !gamma.is_integral() {
        return BigInt::zero();
    }
    let g: Vec<i64> = gamma.doubled().iter().map(|d| d / 2).collect();
    free_coordinate_raw(&g, k)
}

fn free_coordinate_raw(gamma: &[i64], k: u64) -> BigInt {
    // Σ over (k_1,…,k_n) with Σk_i = k of  Π C(rem_i, k_i) · C(k_i, (k_i+γ_i)/2).
    fn go(gamma: &[i64], remaining: u64, acc: &BigInt) -> BigInt {
        match gamma {
            [] => {
                if remaining == 0 {
                    acc.clone()
                } else {
                    BigInt::zero()
                }
            }
            [g, rest @ ..] => {
                let mut total = BigInt::zero();
                let lo = g.unsigned_abs();
                // need k_i ≥ |γ_i| and k_i ≡ γ_i (mod 2); and enough steps
                // must be left for the remaining coordinates.
                let min_rest: u64 = rest.iter().map(|r| r.unsigned_abs()).sum();
                if lo + min_rest > remaining {
                    return total;
                }
                let mut ki = lo;
                while ki + min_rest <= remaining {
                    // C(k_i, (k_i+γ_i)/2): doubled lower index is k_i + γ_i
                    let ways = binomial(remaining, ki) * binomial_doubled(ki, ki as i64 + g);
                    if !ways.is_zero() {
                        total += go(rest, remaining - ki, &(acc * ways));
                    }
                    ki += 2;
                }
                total
            }
        }
    }
    go(gamma, k, &BigInt::one())
}

/// Forward steps `+e_i`: the multinomial `k!/(γ_1!…γ_n!)`, zero unless every
/// `γ_i ≥ 0` and `Σγ_i = k`.
pub fn free_forward(gamma: &LatticePoint, k: u64) -> BigInt {
    if !gamma.is_integral() {
        return BigInt::zero();
    }
    let g: Vec<i64> = gamma.doubled().iter().map(|d| d / 2).collect();
    if g.iter().any(|&v| v < 0) || g.iter().sum::<i64>() != k as i64 {
        return BigInt::zero();
    }
    let mut res = factorial(k);
    for v in g {
        res /= factorial(v as u64);
    }
    res
}

/// Unconstrained count for any supported step set. The optional zero step is
/// absorbed by choosing which of the `k` slots hold real steps.
pub fn free_count(steps: &StepSet, gamma: &LatticePoint, k: u64) -> BigInt {
    let base = |j: u64| match steps.kind {
        StepKind::Coordinate => free_coordinate(gamma, j),
        StepKind::Diagonal => free_diagonal(gamma, j),
        StepKind::Forward => free_forward(gamma, j),
    };
    if !steps.include_zero_step {
        return base(k);
    }
    let mut total = BigInt::zero();
    for j in 0..=k {
        let c = base(j);
        if !c.is_zero() {
            total += binomial(k, k - j) * c;
        }
    }
    total
}

/// Same as [`free_count`] but on a raw doubled displacement vector.
pub fn free_count_doubled(steps: &StepSet, gamma_doubled: &[i64], k: u64) -> BigInt {
    free_count(steps, &LatticePoint::from_doubled(gamma_doubled.to_vec()), k)
}

/// Modified Bessel function `I_order(argument)` by its ascending series,
/// truncated once the next term drops below `tolerance·(1 + |partial|)`.
pub fn bessel_i(order: i64, argument: f64, tolerance: f64) -> f64 {
    let m = order.unsigned_abs();
    let x = argument / 2.0;
    // term_t = x^(2t+m) / (t! (t+m)!)
    let mut term = x.powi(m as i32);
    for j in 1..=m {
        term /= j as f64;
    }
    let mut sum = 0.0;
    let mut t = 0u64;
    loop {
        sum += term;
        t += 1;
        term *= x * x / (t as f64 * (t + m) as f64);
        if term.abs() < tolerance * (1.0 + sum.abs()) || t > 1000 {
            return sum;
        }
    }
}

/// Power-series coefficients of `I_{|order|}(2x)` up to `x^kmax`:
/// the coefficient of `x^(2t+m)` is `1/(t!(t+m)!)`.
pub fn bessel_egf_coefficients(order: i64, kmax: usize) -> Vec<f64> {
    let m = order.unsigned_abs() as usize;
    let mut coeffs = vec![0.0; kmax + 1];
    let mut t = 0usize;
    while 2 * t + m <= kmax {
        let mut c = 1.0;
        for j in 1..=t {
            c /= j as f64;
        }
        for j in 1..=(t + m) {
            c /= j as f64;
        }
        coeffs[2 * t + m] = c;
        t += 1;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: enumerate every step sequence.
    fn exhaustive_free(steps: &StepSet, gamma: &LatticePoint, k: u64) -> BigInt {
        let vecs = steps.vectors_doubled();
        let target = gamma.doubled();
        let n = steps.n;
        let mut count = BigInt::zero();
        let mut pos = vec![0i64; n];
        fn rec(
            vecs: &[Vec<i64>],
            pos: &mut Vec<i64>,
            left: u64,
            target: &[i64],
            count: &mut BigInt,
        ) {
            if left == 0 {
                if pos == target {
                    *count += 1;
                }
                return;
            }
            for v in vecs {
                for (p, d) in pos.iter_mut().zip(v) {
                    *p += d;
                }
                rec(vecs, pos, left - 1, target, count);
                for (p, d) in pos.iter_mut().zip(v) {
                    *p -= d;
                }
            }
        }
        rec(&vecs, &mut pos, k, target, &mut count);
        count
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(free_diagonal(&LatticePoint::from_ints(&[0]), 2), 2.into());
        assert_eq!(
            free_diagonal(&LatticePoint::from_ints(&[1, 0]), 2),
            2.into()
        );
        // half-integer displacement with even k: parity zero
        assert_eq!(
            free_diagonal(&LatticePoint::from_doubled(vec![1]), 2),
            0.into()
        );
    }

    #[test]
    fn coordinate_examples() {
        assert_eq!(free_coordinate(&LatticePoint::from_ints(&[0]), 2), 2.into());
        // 4² sequences in two dimensions, those returning to the origin
        let z = LatticePoint::from_ints(&[0, 0]);
        let by_formula = free_coordinate(&z, 2);
        let by_enumeration = exhaustive_free(&StepSet::new(StepKind::Coordinate, 2), &z, 2);
        assert_eq!(by_formula, by_enumeration);
        assert_eq!(by_formula, 4.into());
        assert_eq!(
            free_coordinate(&LatticePoint::from_ints(&[1, 1]), 2),
            2.into()
        );
    }

    #[test]
    fn forward_examples() {
        assert_eq!(
            free_forward(&LatticePoint::from_ints(&[1, 1]), 2),
            2.into()
        );
        assert_eq!(
            free_forward(&LatticePoint::from_ints(&[2, 0]), 2),
            1.into()
        );
        assert_eq!(
            free_forward(&LatticePoint::from_ints(&[-1, 3]), 2),
            0.into()
        );
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        for kind in [StepKind::Coordinate, StepKind::Diagonal, StepKind::Forward] {
            for zero in [false, true] {
                let steps = StepSet {
                    kind,
                    include_zero_step: zero,
                    n: 2,
                };
                for k in 0..=4u64 {
                    for a in -4..=4i64 {
                        for b in -4..=4i64 {
                            let gamma = if kind == StepKind::Diagonal {
                                LatticePoint::from_doubled(vec![a, b])
                            } else {
                                LatticePoint::from_ints(&[a, b])
                            };
                            assert_eq!(
                                free_count(&steps, &gamma, k),
                                exhaustive_free(&steps, &gamma, k),
                                "kind={kind:?} zero={zero} k={k} gamma=({a},{b})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn totals_are_step_count_powers() {
        // Σ_γ free(γ, k) = (#steps)^k, summing over every reachable γ.
        for kind in [StepKind::Coordinate, StepKind::Diagonal, StepKind::Forward] {
            for n in 1..=3usize {
                let steps = StepSet::new(kind, n);
                for k in 0..=6u64 {
                    let reach = k as i64 * steps.max_step_doubled();
                    let mut total = BigInt::zero();
                    let mut gamma = vec![-reach; n];
                    loop {
                        total += free_count_doubled(&steps, &gamma, k);
                        let mut i = 0;
                        loop {
                            if i == n {
                                break;
                            }
                            gamma[i] += 1;
                            if gamma[i] <= reach {
                                break;
                            }
                            gamma[i] = -reach;
                            i += 1;
                        }
                        if i == n {
                            break;
                        }
                    }
                    assert_eq!(total, BigInt::from(steps.count()).pow(k as u32));
                }
            }
        }
    }

    #[test]
    fn coordinate_counts_are_signed_permutation_invariant() {
        let steps = StepSet::new(StepKind::Coordinate, 3);
        let k = 5;
        let gamma = [1i64, -2, 0];
        let base = free_count_doubled(&steps, &[2, -4, 0], k);
        // all signed permutations of gamma
        let perms = [[0usize, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            for mask in 0..8u32 {
                let image: Vec<i64> = (0..3)
                    .map(|i| {
                        let s = if mask >> i & 1 == 0 { 1 } else { -1 };
                        2 * s * gamma[p[i]]
                    })
                    .collect();
                assert_eq!(free_count_doubled(&steps, &image, k), base);
            }
        }
    }

    #[test]
    fn bessel_values() {
        assert_eq!(bessel_i(0, 0.0, 1e-12), 1.0);
        assert_eq!(bessel_i(1, 0.0, 1e-12), 0.0);
        let i1 = bessel_i(1, 1.0, 1e-12);
        assert!((i1 - 0.5651591039924850).abs() < 1e-9);
        // recurrence I_0(x) - (2/x)I_1(x) - I_2(x) = 0 at x = 1
        let lhs = bessel_i(0, 1.0, 1e-12) - 2.0 * i1 - bessel_i(2, 1.0, 1e-12);
        assert!(lhs.abs() < 1e-12);
        // negative order
        assert_eq!(bessel_i(-3, 0.7, 1e-12), bessel_i(3, 0.7, 1e-12));
    }

    #[test]
    fn bessel_egf_matches_coordinate_counts() {
        // k![x^k] Π_i I_{γ_i}(2x) = free_coordinate(γ, k)
        for gamma in [[0i64, 0], [1, 0], [2, 1], [-1, 1]] {
            let series: Vec<Vec<f64>> = gamma
                .iter()
                .map(|&g| bessel_egf_coefficients(g, 6))
                .collect();
            for k in 0..=6usize {
                let mut coeff = 0.0;
                for a in 0..=k {
                    coeff += series[0][a] * series[1][k - a];
                }
                let mut kfact = 1.0;
                for j in 1..=k {
                    kfact *= j as f64;
                }
                let expected: BigInt =
                    free_coordinate(&LatticePoint::from_ints(&gamma), k as u64);
                let expected_f = expected.to_string().parse::<f64>().unwrap();
                let got = coeff * kfact;
                let rel = (got - expected_f).abs() / expected_f.abs().max(1.0);
                assert!(rel < 1e-6, "gamma={gamma:?} k={k} got={got} want={expected_f}");
            }
        }
    }
}
