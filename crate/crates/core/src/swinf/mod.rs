//! The universal enveloping vertex superalgebra of the centrally extended Lie
//! superalgebra of super differential operators, its free-field realization
//! at `c = n`, and the relations of the simple quotient.

mod bracket;
mod realize;
mod relations;
mod table;
#[cfg(test)]
mod tests;

pub use crate::free_systems::JLabel;
pub use bracket::{bracket, cocycle, falling_poly, matmul, pi, sd_bracket, SdBracket, SdElem, SdMode};
pub use realize::{verify_realization, verify_weakfg, verify_with, weakfg_identities, Realization};
pub use relations::{
    decouple, howe_check, lowering_stays_relation, omega_change, omega_field, relation_space, singular_check,
    verify_decoupling_n2, verify_nonlinear_n2, verify_relations, RelationVector, DECOUPLING_N2, NONLINEAR_N2,
};
pub use table::{gen_id, gen_of, jgen, label, pair_ope, sd_algebra, SdTable};

use crate::coeff::RatFunc;
use crate::vertex::OpeResult;
use crate::Result;

/// `J^{a,k}(z) J^{b,l}(w)` in `ℳ_c`.
pub fn abstract_ope(a: JLabel, k: u32, b: JLabel, l: u32, c: &RatFunc) -> Result<OpeResult> {
    let alg = sd_algebra(c.clone());
    alg.ope(&jgen(&alg, a, k), &jgen(&alg, b, l))
}
