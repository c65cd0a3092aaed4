//! Veech construction of a translation surface from an embedded suspension,
//! and the invariants read off the glued polygon.

mod homology;
mod polygon;
mod symplectic;

use thiserror::Error;

pub use homology::{
    cycle_basis, fundamental_cycles, intersection, spin_parity, turning_index, ClosedWalk,
    CycleBasis, EdgeStep,
};
pub use polygon::{
    area, build_polygon, cone_degrees, ConeDegrees, Corner, Germ, Point, PolygonSurface,
    VertexClass, CLASS_ANGLE_TOLERANCE, ROUNDING_TOLERANCE,
};
pub use symplectic::{symplectic_reduction, Coefficients};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("heights do not satisfy the suspension inequalities")]
    NotASuspension,
    #[error("the top and bottom broken lines cross")]
    Crossing,
    #[error("corners of vertex class {0} do not form a single cycle")]
    BrokenLink(usize),
    #[error("angle {angle} of vertex class {class} is not a positive multiple of 2pi")]
    AngleSum { class: usize, angle: f64 },
    #[error("{vertices} vertices and {edges} edges do not give a closed orientable surface")]
    EulerCharacteristic { vertices: usize, edges: usize },
    #[error("Euler genus {euler} disagrees with degree sum {degree_sum}")]
    GenusMismatch { euler: usize, degree_sum: usize },
    #[error("turning number {0} is not an integer")]
    TurningResidue(f64),
    #[error("intersection matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("intersection form is not unimodular")]
    NotUnimodular,
    #[error("spin parity needs even degrees, found a zero of degree {0}")]
    OddDegree(u32),
}

#[cfg(test)]
mod tests;
