//! Exact local invariants of hypersurface singularities `f = 0` at the
//! origin of affine space over an exact field.
//!
//! Computes the multiplicity, the directrix and ridge of the tangent cone,
//! the Hironaka polyhedron and its `δ` invariant, the asymptotic Samuel
//! function `ν̄` (with independent oracles), the Samuel slope, and the
//! refined Samuel slope through generic linear cuts.

pub mod cone;
pub mod corpus;
pub mod cpx;
pub mod cuts;
pub mod error;
pub mod hord;
pub mod hpoly;
mod linalg;
pub mod mpoly;
pub mod nubar;
pub mod scalars;
pub mod value;
pub mod wprep;

pub use error::{Error, Result};
pub use mpoly::{parse_poly, Exponent, Frame, Poly, TruncSeries};
pub use scalars::{FieldSpec, Scalar};
pub use value::NuValue;
