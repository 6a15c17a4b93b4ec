//! The lazily generated OPE table of the fields `J^{a,k}`.

use super::bracket::{sd_bracket, SdMode};
use crate::coeff::{factorial, RatFunc};
use crate::free_systems::JLabel;
use crate::vertex::{Algebra, AlgebraHandle, FieldExpr, GenId, GeneratorSymbol, GeneratorTable, LinearField, PairOpe, Weight};
use crate::Result;
use num_rational::BigRational;

pub fn gen_id(a: JLabel, k: u32) -> GenId {
    4 * k + a.index()
}

pub fn gen_of(id: GenId) -> (JLabel, u32) {
    (JLabel::from_index(id % 4), id / 4)
}

pub fn label(a: JLabel, k: u32) -> String {
    format!("J[{a},{k}]")
}

pub struct SdTable {
    c: RatFunc,
}

impl SdTable {
    pub fn new(c: RatFunc) -> Self {
        SdTable { c }
    }
}

/// `J^{a,k}∘_j J^{b,l}` for all `j ≥ 0`, read off from `[J^{a,k}_{j−k}, J^{b,l}_{−1−l}]|0⟩`.
pub fn pair_ope(a: JLabel, k: u32, b: JLabel, l: u32, c: &RatFunc) -> PairOpe {
    let top = (a.weight_halves(k) + b.weight_halves(l)) / 2 - 1;
    let mut poles = Vec::new();
    for j in 0..=top.max(-1) {
        let br = sd_bracket(SdMode::field_mode(a, k, j), SdMode::new(b, l, -1 - l as i64), c);
        let mut f = LinearField::scalar(br.central);
        for (m, x) in br.modes {
            let i = -(m.n + m.k as i64) - 1;
            if i < 0 {
                continue;
            }
            let coeff = x / BigRational::from_integer(factorial(i as u32));
            f.terms.push((gen_id(m.a, m.k), i as u32, RatFunc::from_rational(coeff)));
        }
        f.normalize();
        poles.push(f);
    }
    PairOpe::new(poles)
}

impl GeneratorTable for SdTable {
    fn symbol(&self, id: GenId) -> Result<GeneratorSymbol> {
        let (a, k) = gen_of(id);
        Ok(GeneratorSymbol::new("J", &[a.index() as i32, k as i32], a.is_odd(), Weight::new(a.weight_halves(k), 2))
            .with_label(label(a, k)))
    }

    fn lookup(&self, s: &str) -> Option<GenId> {
        let inner = s.trim().strip_prefix("J[")?.strip_suffix(']')?;
        let (a, k) = inner.split_once(',')?;
        Some(gen_id(JLabel::parse(a)?, k.trim().parse().ok()?))
    }

    fn odd(&self, id: GenId) -> bool {
        gen_of(id).0.is_odd()
    }

    fn weight_units(&self, id: GenId) -> i64 {
        let (a, k) = gen_of(id);
        a.weight_halves(k)
    }

    fn weight_unit(&self) -> i64 {
        2
    }

    fn pair(&self, x: GenId, y: GenId) -> Result<PairOpe> {
        let ((a, k), (b, l)) = (gen_of(x), gen_of(y));
        Ok(pair_ope(a, k, b, l, &self.c))
    }

    fn generators_up_to(&self, w: Weight) -> Vec<GenId> {
        let halves = (w * Weight::from_integer(2)).floor().to_integer();
        let mut out = Vec::new();
        for k in 0.. {
            let ids: Vec<GenId> = JLabel::ALL.iter().filter(|a| a.weight_halves(k) <= halves).map(|a| gen_id(*a, k)).collect();
            if ids.is_empty() {
                break;
            }
            out.extend(ids);
        }
        out.sort();
        out
    }
}

/// The universal vertex superalgebra `ℳ_c` generated by the `J^{a,k}`.
pub fn sd_algebra(c: RatFunc) -> AlgebraHandle {
    let tag = format!("swinf:{c}");
    Algebra::new(&tag, Box::new(SdTable::new(c)))
}

pub fn jgen(alg: &AlgebraHandle, a: JLabel, k: u32) -> FieldExpr {
    alg.gen_id(gen_id(a, k))
}
