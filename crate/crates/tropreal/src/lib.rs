//! Exact combinatorics of non-singular real tropical plane curves: dual
//! subdivisions, patchworked real parts, twisted edges over GF(2), real
//! lifts of tropical intersections, and hyperbolicity decisions.

pub mod curve;
pub mod error;
pub mod gf2;
pub mod hyperbolic;
pub mod io;
pub mod intersect;
pub mod num;
pub mod realstruct;
pub mod sample;

pub use curve::{ComplementComponent, EdgeId, PrimitiveCycle, TropicalCurve, TropicalPolynomial, VertexId};
pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Subspace, Gf2Vector, PhaseLine, Z2Pair};
pub use num::{Lattice, Point, Q};
