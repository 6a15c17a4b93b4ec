//! Normally ordered products, circle products and operator products for
//! vertex superalgebras with linear generator OPEs.

mod algebra;
mod expr;
mod parse;
pub mod properties;
mod table;

pub use algebra::{Algebra, AlgebraHandle, Mode, Momentum, Mono, OpeResult, VacId};
pub use expr::{FieldExpr, Letter};
pub use parse::{parse_field, parse_field_at, parse_field_with, Env};
pub use table::{GenId, GeneratorSymbol, GeneratorTable, LinearField, PairOpe, StaticTable, Weight};

#[cfg(test)]
mod tests;
