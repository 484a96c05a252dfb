//! Elements of the affine reflection groups acting on walk endpoints.
//!
//! An element is a triple (σ, ε, t): a permutation, a sign vector, and a
//! translation vector. It acts by
//!
//! ```text
//! w(λ)_i = ε_i · λ_{σ(i)} + T · t_i
//! ```
//!
//! with translation unit `T = 2m` for the B/C/D families and `T = m` for the
//! A family. The family decides which triples belong to the group:
//!
//! * `AffineC`: ε and t unconstrained
//! * `AffineB`: Σt_i even
//! * `AffineD`: Σt_i even and Πε_i = +1
//! * `AffineA`: all ε_i = +1 and Σt_i = 0
//! * `FiniteA`: all ε_i = +1 and t = 0
//!
//! The sign of an element is the determinant of its linear part:
//! `sgn(σ)·Πε_i` (which is just `sgn(σ)` whenever ε is trivial).

use crate::chamber::{ChamberSpec, Family};
use crate::error::{Error, Result};
use crate::point::LatticePoint;
use crate::steps::{StepKind, StepSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGroupElement {
    /// 0-based permutation: σ maps slot `i` to source `sigma[i]`.
    pub sigma: Vec<usize>,
    pub epsilon: Vec<i8>,
    pub t: Vec<i64>,
    pub sign: i8,
}

/// Sign of a permutation by inversion count.
pub fn permutation_sign(sigma: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` in lexicographic order, with signs.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        out.push((sigma.clone(), permutation_sign(&sigma)));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| sigma[i] < sigma[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| sigma[j] > sigma[i]).unwrap();
        sigma.swap(i, j);
        sigma[i + 1..].reverse();
    }
    out
}

impl SignedGroupElement {
    pub fn identity(n: usize) -> Self {
        Self {
            sigma: (0..n).collect(),
            epsilon: vec![1; n],
            t: vec![0; n],
            sign: 1,
        }
    }

    pub fn new(sigma: Vec<usize>, epsilon: Vec<i8>, t: Vec<i64>, family: Family) -> Result<Self> {
        let n = sigma.len();
        if epsilon.len() != n || t.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: epsilon.len().max(t.len()),
            });
        }
        let elem = Self {
            sign: element_sign(&sigma, &epsilon, family),
            sigma,
            epsilon,
            t,
        };
        if elem.is_valid_for(family) {
            Ok(elem)
        } else {
            Err(Error::InvalidInput(format!(
                "triple is not an element of the {family} group"
            )))
        }
    }

    pub fn is_valid_for(&self, family: Family) -> bool {
        let t_sum: i64 = self.t.iter().sum();
        let eps_prod: i64 = self.epsilon.iter().map(|&e| e as i64).product();
        match family {
            Family::AffineC => true,
            Family::AffineB => t_sum % 2 == 0,
            Family::AffineD => t_sum % 2 == 0 && eps_prod == 1,
            Family::AffineA => self.epsilon.iter().all(|&e| e == 1) && t_sum == 0,
            Family::FiniteA => {
                self.epsilon.iter().all(|&e| e == 1) && self.t.iter().all(|&t| t == 0)
            }
        }
    }

    /// Compose `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self, family: Family) -> Self {
        let n = self.sigma.len();
        // (self∘other)(λ)_i = ε_i · (other(λ))_{σ(i)} + T t_i
        let sigma: Vec<usize> = (0..n).map(|i| other.sigma[self.sigma[i]]).collect();
        let epsilon: Vec<i8> = (0..n)
            .map(|i| self.epsilon[i] * other.epsilon[self.sigma[i]])
            .collect();
        let t: Vec<i64> = (0..n)
            .map(|i| self.t[i] + self.epsilon[i] as i64 * other.t[self.sigma[i]])
            .collect();
        Self {
            sign: element_sign(&sigma, &epsilon, family),
            sigma,
            epsilon,
            t,
        }
    }
}

fn element_sign(sigma: &[usize], epsilon: &[i8], family: Family) -> i8 {
    let base = permutation_sign(sigma);
    match family {
        Family::AffineA | Family::FiniteA => base,
        _ => base * epsilon.iter().product::<i8>(),
    }
}

/// Action of a group element on a point.
pub fn apply(
    element: &SignedGroupElement,
    point: &LatticePoint,
    chamber: &ChamberSpec,
) -> Result<LatticePoint> {
    point.check_dim(chamber.n)?;
    if element.sigma.len() != chamber.n {
        return Err(Error::DimensionMismatch {
            expected: chamber.n,
            got: element.sigma.len(),
        });
    }
    let unit = chamber.translation_unit_doubled().unwrap_or(0);
    let x = point.doubled();
    let image = (0..chamber.n)
        .map(|i| element.epsilon[i] as i64 * x[element.sigma[i]] + unit * element.t[i])
        .collect();
    Ok(LatticePoint::from_doubled(image))
}

/// Reflectability verdict with the failing wall named.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflectability {
    pub reflectable: bool,
    pub failing_root: Option<String>,
}

impl Reflectability {
    fn ok() -> Self {
        Self {
            reflectable: true,
            failing_root: None,
        }
    }
    fn fail(root: &str) -> Self {
        Self {
            reflectable: false,
            failing_root: Some(root.to_string()),
        }
    }
}

/// Decides whether the walk type (steps, chamber) can be reflected off every
/// wall: the steps must be symmetric under the finite group, each wall
/// functional must change by a fixed quantum per step, and each affine wall
/// must sit on the lattice of attainable functional values.
pub fn is_reflectable(steps: &StepSet, chamber: &ChamberSpec) -> Reflectability {
    if steps.n != chamber.n {
        return Reflectability::fail("dimension mismatch");
    }
    let bcd = matches!(
        chamber.family,
        Family::AffineB | Family::AffineC | Family::AffineD
    );
    if steps.kind == StepKind::Forward && bcd {
        // forward steps are not closed under sign flips
        return Reflectability::fail("e_n (steps not symmetric under sign change)");
    }
    match chamber.family {
        Family::FiniteA => Reflectability::ok(),
        Family::AffineA => {
            // walls x_i - x_j = m·Z; every step changes the functional by 0 or ±1
            // on an integer lattice, so m itself must be an integer.
            if chamber.m_is_integer() {
                Reflectability::ok()
            } else {
                Reflectability::fail("e_1 - e_n (wall x_1 - x_n = m needs integer m)")
            }
        }
        Family::AffineC => match steps.kind {
            // walls x_i = m·Z with unit increments on the integer lattice
            StepKind::Coordinate => {
                if chamber.m_is_integer() {
                    Reflectability::ok()
                } else {
                    Reflectability::fail("e_1 (wall x_1 = m needs integer m)")
                }
            }
            // half-unit increments on the half-integer lattice: any m with 2m ∈ Z
            StepKind::Diagonal => Reflectability::ok(),
            StepKind::Forward => unreachable!(),
        },
        // B/D walls are spaced 2m apart on every functional, and 2m is an
        // integer by construction.
        Family::AffineB | Family::AffineD => Reflectability::ok(),
    }
}

/// Every group element whose image of `lambda` is within walking range of
/// `eta`, in lexicographic (t, ε, σ) order.
pub fn enumerate_elements(
    chamber: &ChamberSpec,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
) -> Result<Vec<SignedGroupElement>> {
    enumerate_elements_padded(chamber, eta, lambda, k, 0)
}

/// Same stream with the translation box enlarged by `extra` in every
/// coordinate; used to test that the default bound already captures every
/// nonzero term.
pub fn enumerate_elements_padded(
    chamber: &ChamberSpec,
    eta: &LatticePoint,
    lambda: &LatticePoint,
    k: u64,
    extra: i64,
) -> Result<Vec<SignedGroupElement>> {
    eta.check_dim(chamber.n)?;
    lambda.check_dim(chamber.n)?;
    let n = chamber.n;
    // max per-coordinate step magnitude over the supported step sets (doubled)
    let smax2 = 2i64;
    let reach = k as i64 * smax2;
    let lam_max = lambda.doubled().iter().map(|d| d.abs()).max().unwrap_or(0);

    let bounds: Vec<i64> = match chamber.translation_unit_doubled() {
        None => vec![0; n],
        Some(unit) => eta
            .doubled()
            .iter()
            .map(|&e| (reach + e.abs() + lam_max + unit - 1) / unit + 1 + extra)
            .collect(),
    };

    let perms = permutations_with_sign(n);
    let eps_choices = epsilon_choices(n, chamber.family);
    let mut out = Vec::new();

    let mut t = bounds.iter().map(|b| -b).collect::<Vec<i64>>();
    let unit = chamber.translation_unit_doubled().unwrap_or(0);
    loop {
        let admissible = match chamber.family {
            Family::AffineC => true,
            Family::AffineB | Family::AffineD => t.iter().sum::<i64>() % 2 == 0,
            Family::AffineA => t.iter().sum::<i64>() == 0,
            Family::FiniteA => true,
        };
        if admissible {
            for eps in &eps_choices {
                for (sigma, psign) in &perms {
                    let within = (0..n).all(|i| {
                        let img = eps[i] as i64 * lambda.doubled()[sigma[i]] + unit * t[i];
                        (img - eta.doubled()[i]).abs() <= reach
                    });
                    if within {
                        let sign = match chamber.family {
                            Family::AffineA | Family::FiniteA => *psign,
                            _ => *psign * eps.iter().product::<i8>(),
                        };
                        out.push(SignedGroupElement {
                            sigma: sigma.clone(),
                            epsilon: eps.clone(),
                            t: t.clone(),
                            sign,
                        });
                    }
                }
            }
        }
        // advance t lexicographically (last coordinate fastest)
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            t[i] += 1;
            if t[i] <= bounds[i] {
                break;
            }
            t[i] = -bounds[i];
        }
    }
}

fn epsilon_choices(n: usize, family: Family) -> Vec<Vec<i8>> {
    match family {
        Family::AffineA | Family::FiniteA => vec![vec![1; n]],
        Family::AffineD => (0..(1u32 << n))
            .map(|mask| {
                (0..n)
                    .map(|i| if mask >> i & 1 == 0 { 1i8 } else { -1 })
                    .collect::<Vec<i8>>()
            })
            .filter(|eps| eps.iter().product::<i8>() == 1)
            .collect(),
        Family::AffineB | Family::AffineC => (0..(1u32 << n))
            .map(|mask| {
                (0..n)
                    .map(|i| if mask >> i & 1 == 0 { 1i8 } else { -1 })
                    .collect()
            })
            .collect(),
    }
}
