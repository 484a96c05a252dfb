//! Exact counting of confined lattice walks.
//!
//! A walk takes `k` steps between lattice points while staying strictly
//! inside a region: a bounded alcove of one of the classical affine
//! reflection groups, the order cone `x_1 > … > x_n`, or — in the particle
//! picture — the configuration space of `n` non-colliding labeled particles
//! on an interval or a circle.
//!
//! Three independent routes to every number:
//!
//! * [`reflect`] — signed sums over group elements, exact big integers;
//!   the reference implementation.
//! * [`closed`] — the finite trigonometric determinant formulas
//!   (float-valued, validated at desk scale against the exact route).
//! * [`oracle`] — brute-force dynamic programming and step-sequence
//!   enumeration, sharing no counting code with the other two.
//!
//! Coordinates are stored doubled throughout so half-integer grids and
//! half-integer chamber scales stay exact.

pub mod chamber;
pub mod closed;
pub mod error;
pub mod exppoly;
pub mod free;
pub mod grid;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod point;
pub mod reflect;
pub mod steps;

pub use chamber::{ChamberSpec, Family};
pub use error::{Error, Result};
pub use exppoly::ExpPoly;
pub use group::{is_reflectable, Reflectability, SignedGroupElement};
pub use point::LatticePoint;
pub use steps::{StepKind, StepSet};

/// Rounds a float that should be an exact count; refuses values that are not
/// within `1e-4` of an integer (silent rounding of a wrong value must fail).
pub fn round_to_count(value: f64) -> Result<num_bigint::BigInt> {
    let rounded = value.round();
    if (value - rounded).abs() > 1e-4 {
        return Err(Error::Inconsistency(format!(
            "value {value} is not within 1e-4 of an integer"
        )));
    }
    if rounded < 0.0 {
        if rounded < -0.5 {
            return Err(Error::Inconsistency(format!(
                "count rounded to a negative value {rounded}"
            )));
        }
        return Ok(num_bigint::BigInt::from(0));
    }
    // exact in f64 up to 2^53; the float-validated range ends well before
    let as_u = rounded as i64;
    Ok(num_bigint::BigInt::from(as_u))
}
