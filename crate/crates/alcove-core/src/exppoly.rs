//! Finite sums of exponentials `Σ_j c_j · exp(a_j · x)`.
//!
//! This is the value type of the coordinate-step generating functions: the
//! determinant entries are sums of `exp(2cos(θ)·x)` terms, the ring
//! operations keep the representation finite (frequencies add under
//! multiplication), and the count of `k`-step walks is recovered as
//! `k![x^k] = Σ_j c_j a_j^k`.
//!
//! Frequencies are floats coalesced at tolerance `1e-9`; at the supported
//! sizes distinct frequencies are separated by far more than that.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Ring;

pub const FREQ_COALESCE_TOL: f64 = 1e-9;

/// Real exponential polynomial.
pub type ExpPoly = ExpPolyGen<f64>;
/// Complex-coefficient intermediate used by the circle formulas.
pub type CxExpPoly = ExpPolyGen<Complex64>;

pub trait Coefficient: Clone + Copy + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn neg(self) -> Self;
    fn scale(self, by: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl Coefficient for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn neg(self) -> Self {
        -self
    }
    fn scale(self, by: f64) -> Self {
        self * by
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn neg(self) -> Self {
        -self
    }
    fn scale(self, by: f64) -> Self {
        self * by
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// `Σ terms.0 · exp(terms.1 · x)`, terms sorted by frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolyGen<C: Coefficient> {
    terms: Vec<(C, f64)>,
}

impl<C: Coefficient> ExpPolyGen<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::single(c, 0.0)
    }

    pub fn single(coefficient: C, frequency: f64) -> Self {
        Self::from_terms(vec![(coefficient, frequency)])
    }

    pub fn from_terms(terms: Vec<(C, f64)>) -> Self {
        let mut p = Self { terms };
        p.coalesce();
        p
    }

    pub fn terms(&self) -> &[(C, f64)] {
        &self.terms
    }

    fn coalesce(&mut self) {
        self.terms
            .sort_by(|a, b| a.1.partial_cmp(&b.1).expect("frequencies are finite"));
        let mut out: Vec<(C, f64)> = Vec::with_capacity(self.terms.len());
        for &(c, f) in &self.terms {
            match out.last_mut() {
                Some(last) if (last.1 - f).abs() <= FREQ_COALESCE_TOL => {
                    last.0 = last.0.add(c);
                }
                _ => out.push((c, f)),
            }
        }
        out.retain(|(c, _)| c.magnitude() != 0.0);
        self.terms = out;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms(terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(c1, f1) in &self.terms {
            for &(c2, f2) in &other.terms {
                terms.push((c1.mul(c2), f1 + f2));
            }
        }
        Self::from_terms(terms)
    }

    pub fn scale(&self, by: f64) -> Self {
        Self {
            terms: self.terms.iter().map(|&(c, f)| (c.scale(by), f)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|&(c, f)| (c.neg(), f)).collect(),
        }
    }

    /// `k![x^k]`: evaluates `Σ c_j a_j^k` with the `0^0 = 1` convention.
    pub fn extract(&self, k: u64) -> C {
        let mut total = C::zero();
        for &(c, f) in &self.terms {
            let p = if k == 0 { 1.0 } else { f.powi(k as i32) };
            total = total.add(c.scale(p));
        }
        total
    }
}

impl CxExpPoly {
    /// Largest coefficient imaginary part in absolute value.
    pub fn max_abs_imag(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, _)| c.im.abs())
            .fold(0.0, f64::max)
    }

    /// Drops imaginary parts after checking they vanish within `tol`.
    pub fn into_real(self, tol: f64) -> Result<ExpPoly> {
        let residual = self.max_abs_imag();
        if residual > tol {
            return Err(Error::Inconsistency(format!(
                "residual imaginary part {residual:.3e} exceeds {tol:.1e}"
            )));
        }
        Ok(ExpPoly::from_terms(
            self.terms.into_iter().map(|(c, f)| (c.re, f)).collect(),
        ))
    }
}

impl From<ExpPoly> for CxExpPoly {
    fn from(p: ExpPoly) -> Self {
        CxExpPoly::from_terms(
            p.terms
                .into_iter()
                .map(|(c, f)| (Complex64::new(c, 0.0), f))
                .collect(),
        )
    }
}

impl<C: Coefficient> Ring for ExpPolyGen<C> {
    fn ring_zero() -> Self {
        Self::zero()
    }
    fn ring_one() -> Self {
        Self::constant(C::one())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
}
