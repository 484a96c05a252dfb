//! Chambers: the bounded alcoves of the four classical affine families and
//! the order cone of the symmetric group.
//!
//! Scales follow the rescaled convention in which the interesting region has
//! integer (or half-integer) width `m`:
//!
//! * `AffineC`:  `m > x_1 > x_2 > … > x_n > 0`
//! * `AffineB`:  `x_1 > … > x_n > 0`, `x_1 + x_2 < 2m`  (for `n = 1`: `0 < x_1 < 2m`)
//! * `AffineD`:  `x_1 > … > x_n`, `x_{n-1} > -x_n`, `x_1 + x_2 < 2m`
//!               (for `n = 2` also `x_1 - x_2 < 2m`, which is implied for `n ≥ 3`)
//! * `AffineA`:  `x_1 > x_2 > … > x_n > x_1 - m`
//! * `FiniteA`:  `x_1 > x_2 > … > x_n` (no affine wall; `m` is ignored)
//!
//! The `AffineD` region above with `n = 2` carries all four walls of the
//! product of two one-dimensional alcoves; dropping `x_1 - x_2 < 2m` would
//! leave a strip that is a union of infinitely many alcoves and the signed
//! reflection sum would no longer count confined walks.

use std::fmt;

use crate::error::{Error, Result};
use crate::point::LatticePoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    AffineA,
    AffineB,
    AffineC,
    AffineD,
    FiniteA,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::AffineA => "atilde",
            Family::AffineB => "btilde",
            Family::AffineC => "ctilde",
            Family::AffineD => "dtilde",
            Family::FiniteA => "finite-a",
        };
        write!(f, "{s}")
    }
}

/// A chamber: family, rank, and scale. The scale is stored doubled so
/// half-integer `m` is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChamberSpec {
    pub family: Family,
    pub n: usize,
    /// `2m`; always a positive integer.
    pub m2: i64,
}

impl ChamberSpec {
    pub fn new(family: Family, n: usize, m2: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank n must be positive".into()));
        }
        if m2 <= 0 && family != Family::FiniteA {
            return Err(Error::InvalidInput(
                "scale m must be a positive integer or half-integer".into(),
            ));
        }
        if family == Family::AffineD && n < 2 {
            return Err(Error::InvalidInput(
                "the D-family chamber needs rank at least 2".into(),
            ));
        }
        Ok(Self { family, n, m2 })
    }

    /// Convenience constructor for integer `m`.
    pub fn with_integer_m(family: Family, n: usize, m: i64) -> Result<Self> {
        Self::new(family, n, 2 * m)
    }

    /// True scale as a float.
    pub fn m_f64(&self) -> f64 {
        self.m2 as f64 / 2.0
    }

    pub fn m_is_integer(&self) -> bool {
        self.m2 % 2 == 0
    }

    /// Translation unit of the affine part, doubled: `2m` for the B/C/D
    /// families, `m` for the A family, none for the finite chamber.
    pub fn translation_unit_doubled(&self) -> Option<i64> {
        match self.family {
            Family::AffineB | Family::AffineC | Family::AffineD => Some(2 * self.m2),
            Family::AffineA => Some(self.m2),
            Family::FiniteA => None,
        }
    }

    /// Strict interior test.
    pub fn in_interior(&self, point: &LatticePoint) -> bool {
        let x = point.doubled();
        if x.len() != self.n {
            return false;
        }
        let n = self.n;
        let decreasing = x.windows(2).all(|w| w[0] > w[1]);
        match self.family {
            Family::FiniteA => decreasing,
            Family::AffineA => {
                // For n = 1 the difference walls are vacuous.
                decreasing && (n == 1 || x[n - 1] > x[0] - self.m2)
            }
            Family::AffineC => decreasing && x[n - 1] > 0 && x[0] < self.m2,
            Family::AffineB => {
                if !decreasing || x[n - 1] <= 0 {
                    return false;
                }
                if n == 1 {
                    x[0] < 2 * self.m2
                } else {
                    x[0] + x[1] < 2 * self.m2
                }
            }
            Family::AffineD => {
                decreasing
                    && x[n - 2] > -x[n - 1]
                    && x[0] + x[1] < 2 * self.m2
                    && (n > 2 || x[0] - x[1] < 2 * self.m2)
            }
        }
    }

    pub fn check_interior(&self, point: &LatticePoint) -> Result<()> {
        point.check_dim(self.n)?;
        if self.in_interior(point) {
            Ok(())
        } else {
            Err(Error::NotInterior(point.to_string()))
        }
    }
}
