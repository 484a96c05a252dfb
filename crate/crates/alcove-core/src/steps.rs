//! Step sets of the supported walk models.

use crate::error::{Error, Result};
use crate::point::LatticePoint;

/// The three step geometries with counting formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// `±e_i`: one coordinate moves by one unit per step.
    Coordinate,
    /// `±½e_1 ± … ± ½e_n`: every coordinate moves by a half unit per step.
    Diagonal,
    /// `+e_i`: one coordinate moves forward per step.
    Forward,
}

/// A step set: geometry, dimension, and an optional zero step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StepSet {
    pub kind: StepKind,
    pub include_zero_step: bool,
    pub n: usize,
}

impl StepSet {
    pub fn new(kind: StepKind, n: usize) -> Self {
        Self {
            kind,
            include_zero_step: false,
            n,
        }
    }

    pub fn with_zero_step(kind: StepKind, n: usize) -> Self {
        Self {
            kind,
            include_zero_step: true,
            n,
        }
    }

    /// Number of distinct steps.
    pub fn count(&self) -> u64 {
        let base = match self.kind {
            StepKind::Coordinate => 2 * self.n as u64,
            StepKind::Diagonal => 1u64 << self.n,
            StepKind::Forward => self.n as u64,
        };
        base + if self.include_zero_step { 1 } else { 0 }
    }

    /// Largest per-coordinate displacement of a single step, doubled.
    pub fn max_step_doubled(&self) -> i64 {
        match self.kind {
            StepKind::Coordinate | StepKind::Forward => 2,
            StepKind::Diagonal => 1,
        }
    }

    /// The step vectors in doubled coordinates.
    pub fn vectors_doubled(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut out = Vec::new();
        match self.kind {
            StepKind::Coordinate => {
                for i in 0..n {
                    for sgn in [2i64, -2] {
                        let mut v = vec![0i64; n];
                        v[i] = sgn;
                        out.push(v);
                    }
                }
            }
            StepKind::Diagonal => {
                for mask in 0..(1u32 << n) {
                    let v = (0..n)
                        .map(|i| if mask >> i & 1 == 0 { 1 } else { -1 })
                        .collect();
                    out.push(v);
                }
            }
            StepKind::Forward => {
                for i in 0..n {
                    let mut v = vec![0i64; n];
                    v[i] = 2;
                    out.push(v);
                }
            }
        }
        if self.include_zero_step {
            out.push(vec![0; n]);
        }
        out
    }

    /// Checks that a point lies on the lattice this step set walks on.
    pub fn check_lattice(&self, point: &LatticePoint) -> Result<()> {
        point.check_dim(self.n)?;
        let ok = match self.kind {
            StepKind::Diagonal => point.has_uniform_parity(),
            StepKind::Coordinate | StepKind::Forward => point.is_integral(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "point {point} is not on the lattice of {:?} steps",
                self.kind
            )))
        }
    }
}
