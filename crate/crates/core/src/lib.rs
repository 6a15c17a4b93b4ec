//! Exact symbolic computation with the vertex superalgebras built from free
//! fields: the bcβγ system and its `GL_n` invariants, the universal algebra of
//! the Lie superalgebra of super differential operators on the circle, the
//! screening realization of the deformable family, and the affine commutant.

pub mod coeff;
pub mod commutant;
pub mod error;
pub mod free_systems;
pub mod invariant_oracle;
pub mod lattice_screening;
pub mod linalg;
pub mod report;
pub mod swinf;
pub mod vertex;

pub use coeff::{RatFunc, ScalarCoeff};
pub use error::{Error, Result};
pub use vertex::{parse_field, parse_field_with, Algebra, AlgebraHandle, FieldExpr, OpeResult};
