use thiserror::Error;

use crate::num::Lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("support spans a degenerate polygon (need a 2-dimensional convex hull)")]
    DegeneratePolygon,
    #[error("subdivision is singular: {0}")]
    SingularSubdivision(String),
    #[error("curve has no degree: its Newton polygon is not a standard triangle")]
    DegreeUnset,
    #[error("lattice point {0} is not in the Newton polygon")]
    UnknownPoint(Lattice),
    #[error("twist set is not admissible")]
    NotAdmissible,
    #[error("twist set is not dividing")]
    NotDividing,
    #[error("curve is not a honeycomb")]
    NotHoneycomb,
    #[error("phase lines of the host edges differ")]
    PhasesDiffer,
    #[error("operation not defined for this intersection kind")]
    WrongKind,
    #[error("directions are parallel")]
    ParallelDirections,
    #[error("unsupported intersection configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("point lies on the curve")]
    PointOnCurve,
    #[error("no generic point found in component {0}")]
    NotGenericAfterRetries(Lattice),
    #[error("invalid phase structure: {0}")]
    InvalidPhase(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
