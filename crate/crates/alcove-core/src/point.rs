//! Lattice points with exact half-integer coordinates.
//!
//! Every coordinate is stored doubled, so the half-integer grids used by
//! diagonal walks (and half-integer chamber scales) stay in exact integer
//! arithmetic. A stored value of `3` means the true coordinate `3/2`.

use std::fmt;

use crate::error::{Error, Result};

/// A point of the walk lattice, coordinates stored as `2×` their true value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    doubled: Vec<i64>,
}

impl LatticePoint {
    /// Point from true integer coordinates.
    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            doubled: coords.iter().map(|c| 2 * c).collect(),
        }
    }

    /// Point from doubled coordinates (`5` means `5/2`).
    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        Self { doubled }
    }

    pub fn n(&self) -> usize {
        self.doubled.len()
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    /// True coordinates as floats (for the trigonometric formulas).
    pub fn as_f64(&self) -> Vec<f64> {
        self.doubled.iter().map(|&d| d as f64 / 2.0).collect()
    }

    /// All coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|d| d % 2 == 0)
    }

    /// All coordinates lie on a common grid: either all integer or all
    /// half-odd-integer. This is the lattice a diagonal walk lives on.
    pub fn has_uniform_parity(&self) -> bool {
        match self.doubled.first() {
            None => true,
            Some(first) => self.doubled.iter().all(|d| (d - first) % 2 == 0),
        }
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.n() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                got: self.n(),
            })
        }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.doubled.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if d % 2 == 0 {
                write!(f, "{}", d / 2)?;
            } else {
                write!(f, "{}/2", d)?;
            }
        }
        write!(f, ")")
    }
}
