//! Field expressions: finite linear combinations of canonical monomials.

use super::algebra::{AlgebraHandle, Mode, Mono, VacId};
use super::table::{GenId, Weight};
use crate::coeff::{factorial, RatFunc};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A letter `∂^deriv gen` of a normally ordered monomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: GenId,
    pub deriv: u32,
}

/// Coefficients are stored against PBW states; [`FieldExpr::terms`] converts them to
/// the `:∂^{k1}g1 ⋯:` normalization.
#[derive(Clone)]
pub struct FieldExpr {
    alg: AlgebraHandle,
    vac: VacId,
    terms: BTreeMap<Mono, RatFunc>,
}

fn state_factor(m: &[Mode]) -> BigRational {
    let mut d = num_bigint::BigInt::from(1);
    for x in m {
        d *= factorial(x.deriv());
    }
    BigRational::from_integer(d)
}

impl FieldExpr {
    pub(crate) fn from_terms(alg: &AlgebraHandle, vac: VacId, terms: Vec<(Mono, RatFunc)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            let e = map.entry(m).or_insert_with(RatFunc::zero);
            *e += &c;
        }
        map.retain(|_, c: &mut RatFunc| !c.is_zero());
        FieldExpr { alg: alg.clone(), vac, terms: map }
    }

    pub(crate) fn from_map(alg: &AlgebraHandle, vac: VacId, terms: BTreeMap<Mono, RatFunc>) -> Self {
        FieldExpr { alg: alg.clone(), vac, terms }
    }

    /// Build `c · :∂^{k1}g1 ⋯ ∂^{km}gm:` from letters that are already in canonical order.
    pub fn from_canonical_letters(alg: &AlgebraHandle, letters: &[Letter], c: RatFunc) -> Result<Self> {
        let modes: Vec<Mode> = letters.iter().map(|l| Mode::letter(l.gen, l.deriv)).collect();
        if modes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("letters not in canonical order".into()));
        }
        if modes.windows(2).any(|w| w[0] == w[1] && alg.is_odd(w[0].gen)) {
            return Ok(alg.zero());
        }
        let c = c.scale_rational(&state_factor(&modes));
        Ok(FieldExpr::from_terms(alg, 0, vec![(alg.intern(&modes), c)]))
    }

    pub fn algebra(&self) -> &AlgebraHandle {
        &self.alg
    }

    pub fn vac(&self) -> VacId {
        self.vac
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&Mono, &RatFunc)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(letters, coefficient)` in the `:∂^{k}g ⋯:` normalization.
    pub fn terms(&self) -> Vec<(Vec<Letter>, RatFunc)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let letters = m.iter().map(|x| Letter { gen: x.gen, deriv: x.deriv() }).collect();
                (letters, c.scale_rational(&state_factor(m).recip()))
            })
            .collect()
    }

    /// Coefficient of the identity field.
    pub fn scalar_part(&self) -> RatFunc {
        self.terms.iter().find(|(m, _)| m.is_empty()).map(|(_, c)| c.clone()).unwrap_or_else(RatFunc::zero)
    }

    /// True when the expression is `c · 1` (including zero).
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub(crate) fn max_units(&self) -> Option<i64> {
        self.terms.keys().map(|m| self.alg.mono_units(m)).max()
    }

    pub(crate) fn weight_units(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| self.alg.mono_units(m));
        let first = it.next()?;
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Weight if homogeneous and nonzero.
    pub fn weight(&self) -> Option<Weight> {
        self.weight_units().map(|u| self.alg.units_to_weight(u))
    }

    /// Parity if homogeneous and nonzero: `Some(true)` for odd.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| self.alg.mono_odd(m));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Some(true)
    }

    /// True when any letter uses a generator satisfying `pred`.
    pub fn uses(&self, pred: impl Fn(GenId) -> bool) -> bool {
        self.terms.keys().any(|m| m.iter().any(|x| pred(x.gen)))
    }

    /// Keep only terms whose letters all satisfy `keep`.
    pub fn filter_letters(&self, keep: impl Fn(GenId) -> bool) -> FieldExpr {
        let terms = self.terms.iter().filter(|(m, _)| m.iter().all(|x| keep(x.gen))).map(|(m, c)| (m.clone(), c.clone())).collect();
        FieldExpr { alg: self.alg.clone(), vac: self.vac, terms }
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<FieldExpr> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let x = f(c)?;
            if !x.is_zero() {
                terms.insert(m.clone(), x);
            }
        }
        Ok(FieldExpr { alg: self.alg.clone(), vac: self.vac, terms })
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &RatFunc> {
        self.terms.values()
    }

    /// Internal monomial keys with their stored coefficients.
    pub fn monomials(&self) -> Vec<(Mono, RatFunc)> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    fn same(&self, o: &FieldExpr) -> Result<()> {
        if !Arc::ptr_eq(&self.alg, &o.alg) {
            return Err(Error::MixedAlgebra);
        }
        if self.vac != o.vac && !(self.is_zero() || o.is_zero()) {
            return Err(Error::InvalidArgument("fields in different Fock sectors".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &FieldExpr) -> Result<FieldExpr> {
        self.same(o)?;
        let vac = if self.is_zero() { o.vac } else { self.vac };
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            let e = terms.entry(m.clone()).or_insert_with(RatFunc::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(FieldExpr { alg: self.alg.clone(), vac, terms })
    }

    pub fn try_sub(&self, o: &FieldExpr) -> Result<FieldExpr> {
        self.try_add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> FieldExpr {
        if c.is_zero() {
            return FieldExpr { alg: self.alg.clone(), vac: self.vac, terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        FieldExpr { alg: self.alg.clone(), vac: self.vac, terms }
    }

    pub fn scale_int(&self, n: i64) -> FieldExpr {
        self.scale(&RatFunc::from_int(n))
    }

    pub fn scale_frac(&self, n: i64, d: i64) -> FieldExpr {
        self.scale(&RatFunc::frac(n, d))
    }

    /// Sum of fields over the same algebra; the empty sum needs the algebra handle.
    pub fn sum<'a>(alg: &AlgebraHandle, items: impl IntoIterator<Item = &'a FieldExpr>) -> Result<FieldExpr> {
        let mut acc = alg.zero();
        for x in items {
            acc = acc.try_add(x)?;
        }
        Ok(acc)
    }

    fn fmt_letter(&self, l: &Mode) -> String {
        let label = self.alg.symbol(l.gen).label;
        match l.deriv() {
            0 => label,
            1 => format!("d({label})"),
            d => format!("d^{d}({label})"),
        }
    }

    fn fmt_atom(&self, m: &Mono) -> String {
        match m.len() {
            0 => "one".to_string(),
            1 => self.fmt_letter(&m[0]),
            _ => {
                let parts: Vec<String> = m.iter().map(|l| self.fmt_letter(l)).collect();
                format!("no({})", parts.join(","))
            }
        }
    }
}

impl PartialEq for FieldExpr {
    fn eq(&self, o: &FieldExpr) -> bool {
        Arc::ptr_eq(&self.alg, &o.alg) && (self.vac == o.vac || self.is_zero()) && self.terms == o.terms
    }
}

impl Eq for FieldExpr {}

impl fmt::Display for FieldExpr {
    /// Prints in the expression grammar accepted by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let c = c.scale_rational(&state_factor(m).recip());
            let atom = self.fmt_atom(m);
            let (neg, mag) = match c.as_rational() {
                Some(q) => (q.is_negative(), RatFunc::from_rational(q.abs())),
                None => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{atom}")?;
            } else if let Some(q) = mag.as_rational() {
                if q.is_integer() {
                    write!(f, "{q}*{atom}")?;
                } else {
                    write!(f, "({q})*{atom}")?;
                }
            } else {
                write!(f, "({mag})*{atom}")?;
            }
        }
        if self.vac != 0 {
            let mom: Vec<String> = self
                .alg
                .momentum(self.vac)
                .iter()
                .map(|(g, c)| format!("({c})*{}", self.alg.symbol(*g).label))
                .collect();
            write!(f, " @ e^[{}]", mom.join(" + "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! field_ops {
    ($tr:ident, $m:ident, $call:ident) => {
        impl<'a> std::ops::$tr<&'a FieldExpr> for &'a FieldExpr {
            type Output = FieldExpr;
            /// Panics if the operands belong to different algebras.
            fn $m(self, o: &FieldExpr) -> FieldExpr {
                self.$call(o).expect("operands over the same algebra")
            }
        }
        impl std::ops::$tr<FieldExpr> for FieldExpr {
            type Output = FieldExpr;
            fn $m(self, o: FieldExpr) -> FieldExpr {
                self.$call(&o).expect("operands over the same algebra")
            }
        }
        impl<'a> std::ops::$tr<&'a FieldExpr> for FieldExpr {
            type Output = FieldExpr;
            fn $m(self, o: &FieldExpr) -> FieldExpr {
                self.$call(o).expect("operands over the same algebra")
            }
        }
    };
}
field_ops!(Add, add, try_add);
field_ops!(Sub, sub, try_sub);

impl std::ops::Neg for &FieldExpr {
    type Output = FieldExpr;
    fn neg(self) -> FieldExpr {
        self.scale_int(-1)
    }
}

impl std::ops::Neg for FieldExpr {
    type Output = FieldExpr;
    fn neg(self) -> FieldExpr {
        self.scale_int(-1)
    }
}

impl std::ops::Mul<&FieldExpr> for &RatFunc {
    type Output = FieldExpr;
    fn mul(self, f: &FieldExpr) -> FieldExpr {
        f.scale(self)
    }
}

impl std::ops::Mul<FieldExpr> for RatFunc {
    type Output = FieldExpr;
    fn mul(self, f: FieldExpr) -> FieldExpr {
        f.scale(&self)
    }
}
