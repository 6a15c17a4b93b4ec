//! Generator registries and their pairwise operator products.

use crate::coeff::{factorial, RatFunc};
use crate::error::{Error, Result};
use num_rational::{BigRational, Rational64};
use num_traits::Signed;
use std::collections::HashMap;

pub type GenId = u32;
pub type Weight = Rational64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub indices: Vec<i32>,
    pub odd: bool,
    pub weight: Weight,
    /// Printed form, e.g. `beta[2]` or `J[+,1]`; also the parser key.
    pub label: String,
}

impl GeneratorSymbol {
    pub fn new(name: &str, indices: &[i32], odd: bool, weight: Weight) -> Self {
        let label = if indices.is_empty() {
            name.to_string()
        } else {
            let parts: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
            format!("{name}[{}]", parts.join(","))
        };
        GeneratorSymbol { name: name.into(), indices: indices.to_vec(), odd, weight, label }
    }

    pub fn with_label(mut self, label: String) -> Self {
        self.label = label;
        self
    }
}

/// A field that is linear in the generators: `scalar·1 + Σ c ∂^d g`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearField {
    pub scalar: RatFunc,
    pub terms: Vec<(GenId, u32, RatFunc)>,
}

impl LinearField {
    pub fn scalar(c: RatFunc) -> Self {
        LinearField { scalar: c, terms: Vec::new() }
    }

    pub fn gen(g: GenId, c: RatFunc) -> Self {
        LinearField { scalar: RatFunc::zero(), terms: vec![(g, 0, c)] }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.terms.is_empty()
    }

    pub fn plus(mut self, other: &LinearField) -> Self {
        self.scalar += &other.scalar;
        self.terms.extend(other.terms.iter().cloned());
        self.normalize();
        self
    }

    pub fn scaled(&self, c: &RatFunc) -> Self {
        let mut out = LinearField {
            scalar: &self.scalar * c,
            terms: self.terms.iter().map(|(g, d, x)| (*g, *d, x * c)).collect(),
        };
        out.normalize();
        out
    }

    /// `∂^j` of the field.
    pub fn derivative(&self, j: u32) -> Self {
        if j == 0 {
            return self.clone();
        }
        LinearField { scalar: RatFunc::zero(), terms: self.terms.iter().map(|(g, d, c)| (*g, d + j, c.clone())).collect() }
    }

    pub fn normalize(&mut self) {
        let mut merged: Vec<(GenId, u32, RatFunc)> = Vec::new();
        self.terms.sort_by_key(|(g, d, _)| (*g, *d));
        for (g, d, c) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((g0, d0, c0)) if *g0 == g && *d0 == d => *c0 += &c,
                _ => merged.push((g, d, c)),
            }
        }
        merged.retain(|(_, _, c)| !c.is_zero());
        self.terms = merged;
    }
}

/// `a∘_j b` for `j = 0..poles.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PairOpe {
    pub poles: Vec<LinearField>,
}

impl PairOpe {
    pub fn new(mut poles: Vec<LinearField>) -> Self {
        for p in poles.iter_mut() {
            p.normalize();
        }
        while poles.last().is_some_and(|p| p.is_zero()) {
            poles.pop();
        }
        PairOpe { poles }
    }

    pub fn is_regular(&self) -> bool {
        self.poles.is_empty()
    }

    /// The operator product `b(z)a(w)` given `a(z)b(w)`, by skew-symmetry.
    pub fn reversed(&self, a_odd: bool, b_odd: bool) -> PairOpe {
        let sign = if a_odd && b_odd { -1 } else { 1 };
        let top = self.poles.len();
        let mut out = Vec::with_capacity(top);
        for n in 0..top {
            let mut acc = LinearField::default();
            for (j, p) in self.poles.iter().enumerate().skip(n) {
                let jj = (j - n) as u32;
                let s = if (n + jj as usize + 1) % 2 == 0 { sign } else { -sign };
                let c = RatFunc::from_rational(BigRational::new(s.into(), factorial(jj)));
                acc = acc.plus(&p.derivative(jj).scaled(&c));
            }
            out.push(acc);
        }
        PairOpe::new(out)
    }
}

/// Source of generators and their pairwise operator products.
pub trait GeneratorTable: Send + Sync {
    fn symbol(&self, id: GenId) -> Result<GeneratorSymbol>;
    fn lookup(&self, label: &str) -> Option<GenId>;
    fn odd(&self, id: GenId) -> bool;
    /// Weight of the generator in units of `1/weight_unit()`.
    fn weight_units(&self, id: GenId) -> i64;
    fn weight_unit(&self) -> i64;
    fn pair(&self, a: GenId, b: GenId) -> Result<PairOpe>;
    /// All generators of weight at most `w`.
    fn generators_up_to(&self, w: Weight) -> Vec<GenId>;
}

/// An explicitly listed, finite generator table.
pub struct StaticTable {
    symbols: Vec<GeneratorSymbol>,
    by_label: HashMap<String, GenId>,
    pairs: HashMap<(GenId, GenId), PairOpe>,
    unit: i64,
    units: Vec<i64>,
}

impl StaticTable {
    /// Register generators and operator products supplied for one orientation of each pair.
    /// Reverse orientations are derived; a supplied reverse that disagrees is an error.
    pub fn new(symbols: Vec<GeneratorSymbol>, supplied: Vec<(GenId, GenId, PairOpe)>) -> Result<Self> {
        let mut by_label = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if s.weight.is_negative() {
                return Err(Error::InvalidArgument(format!("negative weight for {}", s.label)));
            }
            if by_label.insert(s.label.clone(), i as GenId).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate generator {}", s.label)));
            }
        }
        let unit = symbols.iter().fold(1i64, |acc, s| num_integer::lcm(acc, *s.weight.denom()));
        let units = symbols.iter().map(|s| (s.weight * Rational64::from_integer(unit)).to_integer()).collect();
        let mut pairs: HashMap<(GenId, GenId), PairOpe> = HashMap::new();
        let n = symbols.len() as GenId;
        for (a, b, ope) in supplied {
            if a >= n || b >= n {
                return Err(Error::UnknownGenerator(format!("id {}", a.max(b))));
            }
            for p in &ope.poles {
                for (g, _, _) in &p.terms {
                    if *g >= n {
                        return Err(Error::UnknownGenerator(format!("id {g}")));
                    }
                }
            }
            let ope = PairOpe::new(ope.poles);
            let rev = ope.reversed(symbols[a as usize].odd, symbols[b as usize].odd);
            for (key, val) in [((a, b), ope), ((b, a), rev)] {
                if let Some(prev) = pairs.get(&key) {
                    if *prev != val {
                        return Err(Error::InconsistentTable(format!(
                            "{} with {}",
                            symbols[key.0 as usize].label, symbols[key.1 as usize].label
                        )));
                    }
                } else {
                    pairs.insert(key, val);
                }
            }
        }
        Ok(StaticTable { symbols, by_label, pairs, unit, units })
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.symbols
    }
}

impl GeneratorTable for StaticTable {
    fn symbol(&self, id: GenId) -> Result<GeneratorSymbol> {
        self.symbols.get(id as usize).cloned().ok_or_else(|| Error::UnknownGenerator(format!("id {id}")))
    }

    fn lookup(&self, label: &str) -> Option<GenId> {
        self.by_label.get(label).copied()
    }

    fn odd(&self, id: GenId) -> bool {
        self.symbols[id as usize].odd
    }

    fn weight_units(&self, id: GenId) -> i64 {
        self.units[id as usize]
    }

    fn weight_unit(&self) -> i64 {
        self.unit
    }

    fn pair(&self, a: GenId, b: GenId) -> Result<PairOpe> {
        Ok(self.pairs.get(&(a, b)).cloned().unwrap_or_default())
    }

    fn generators_up_to(&self, w: Weight) -> Vec<GenId> {
        (0..self.symbols.len() as GenId).filter(|&i| self.symbols[i as usize].weight <= w).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: i64, d: i64) -> Weight {
        Weight::new(n, d)
    }

    #[test]
    fn reverse_betagamma_and_bc() {
        let bg = PairOpe::new(vec![LinearField::scalar(RatFunc::one())]);
        assert_eq!(bg.reversed(false, false).poles[0].scalar, RatFunc::from_int(-1));
        assert_eq!(bg.reversed(true, true).poles[0].scalar, RatFunc::one());
    }

    #[test]
    fn inconsistent_supply_is_rejected() {
        let syms = vec![GeneratorSymbol::new("beta", &[1], false, w(1, 2)), GeneratorSymbol::new("gamma", &[1], false, w(1, 2))];
        let one = PairOpe::new(vec![LinearField::scalar(RatFunc::one())]);
        let res = StaticTable::new(syms, vec![(0, 1, one.clone()), (1, 0, one)]);
        assert!(matches!(res, Err(Error::InconsistentTable(_))));
    }

    #[test]
    fn abelian_registry() {
        let syms = vec![GeneratorSymbol::new("x", &[], false, w(1, 1))];
        let t = StaticTable::new(syms, vec![]).unwrap();
        assert!(t.pair(0, 0).unwrap().is_regular());
        assert_eq!(t.lookup("x"), Some(0));
    }
}
