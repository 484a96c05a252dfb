//! Determinants by Leibniz expansion over rings without division.
//!
//! The closed-form determinants have entries in rings where elimination is
//! unavailable (exponential polynomials) or undesirable (exact rationals of
//! factorials), and the matrices are small (`n ≤ 8`), so the permutation
//! expansion is the right tool.

use crate::group::permutations_with_sign;

/// A value that can be summed and multiplied; enough for a determinant.
pub trait Ring: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
}

pub const MAX_LEIBNIZ_DIM: usize = 8;

/// `det` of an `n×n` matrix given by an entry generator.
///
/// Panics if `n > 8`: the expansion has `n!` terms and larger sizes are out
/// of the supported range.
pub fn det_leibniz<T: Ring>(n: usize, entry: impl Fn(usize, usize) -> T) -> T {
    assert!(
        n <= MAX_LEIBNIZ_DIM,
        "Leibniz determinant limited to n ≤ {MAX_LEIBNIZ_DIM}"
    );
    if n == 0 {
        return T::ring_one();
    }
    let mut matrix = Vec::with_capacity(n);
    for i in 0..n {
        matrix.push((0..n).map(|j| entry(i, j)).collect::<Vec<T>>());
    }
    let mut total = T::ring_zero();
    for (sigma, sign) in permutations_with_sign(n) {
        let mut prod = matrix[0][sigma[0]].clone();
        for (i, &s) in sigma.iter().enumerate().skip(1) {
            prod = prod.ring_mul(&matrix[i][s]);
        }
        if sign < 0 {
            prod = prod.ring_neg();
        }
        total = total.ring_add(&prod);
    }
    total
}

impl Ring for f64 {
    fn ring_zero() -> Self {
        0.0
    }
    fn ring_one() -> Self {
        1.0
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
}

impl Ring for num_complex::Complex64 {
    fn ring_zero() -> Self {
        num_complex::Complex64::new(0.0, 0.0)
    }
    fn ring_one() -> Self {
        num_complex::Complex64::new(1.0, 0.0)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
}

impl Ring for num_rational::BigRational {
    fn ring_zero() -> Self {
        num_rational::BigRational::from_integer(0.into())
    }
    fn ring_one() -> Self {
        num_rational::BigRational::from_integer(1.into())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
}
