//! Benchmark-only crate; see `benches/counting.rs`.

/// Medium-sized instances the benchmarks share.
pub mod instances {
    use alcove_core::{ChamberSpec, Family, LatticePoint, StepKind, StepSet};

    pub fn interval_family() -> (ChamberSpec, StepSet, LatticePoint, LatticePoint) {
        let chamber = ChamberSpec::with_integer_m(Family::AffineC, 3, 4).unwrap();
        let steps = StepSet::new(StepKind::Coordinate, 3);
        let p = LatticePoint::from_ints(&[3, 2, 1]);
        (chamber, steps, p.clone(), p)
    }

    pub fn circle_instance() -> (i64, usize, StepSet, LatticePoint, LatticePoint) {
        let steps = StepSet::new(StepKind::Coordinate, 3);
        (
            5,
            3,
            steps,
            LatticePoint::from_ints(&[2, 1, 0]),
            LatticePoint::from_ints(&[3, 2, 0]),
        )
    }
}
