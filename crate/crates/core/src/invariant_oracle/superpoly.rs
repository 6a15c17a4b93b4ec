//! Supercommutative polynomials over ℚ.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub id: u32,
    pub odd: bool,
}

/// Variables in increasing order with exponents; odd exponents are 1.
pub type SMono = Vec<(Var, u32)>;

/// Product of two canonical monomials with its Koszul sign, or `None` if an odd variable repeats.
pub fn mul_mono(a: &SMono, b: &SMono) -> Option<(SMono, bool)> {
    let mut neg = false;
    for (vb, _) in b.iter().filter(|(v, _)| v.odd) {
        let after = a.iter().filter(|(va, _)| va.odd && va.id > vb.id).count();
        neg ^= after % 2 == 1;
    }
    let mut out: SMono = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                if x.0.odd {
                    return None;
                }
                out.push((x.0, x.1 + y.1));
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                out.push(*x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some((out, neg))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuperPoly {
    pub terms: BTreeMap<SMono, BigRational>,
}

impl SuperPoly {
    pub fn zero() -> Self {
        SuperPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), BigRational::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(vec![(v, 1)], BigRational::one())
    }

    pub fn monomial(m: SMono, c: BigRational) -> Self {
        let mut p = SuperPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: SMono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, o: &SuperPoly) -> SuperPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &BigRational) -> SuperPoly {
        let mut p = SuperPoly::zero();
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x * c);
        }
        p
    }

    pub fn mul(&self, o: &SuperPoly) -> SuperPoly {
        let mut p = SuperPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((m, neg)) = mul_mono(a, b) {
                    let c = x * y;
                    p.add_term(m, if neg { -c } else { c });
                }
            }
        }
        p
    }

    /// Ordered product of the factors.
    pub fn product<'a>(fs: impl IntoIterator<Item = &'a SuperPoly>) -> SuperPoly {
        fs.into_iter().fold(SuperPoly::one(), |acc, f| acc.mul(f))
    }

    /// Ring homomorphism determined by the images of the variables.
    pub fn substitute(&self, image: impl Fn(Var) -> SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (m, c) in &self.terms {
            let mut t = SuperPoly::one();
            for (v, e) in m {
                let iv = image(*v);
                for _ in 0..*e {
                    t = t.mul(&iv);
                }
            }
            out = out.add(&t.scale(c));
        }
        out
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (v, e) in m {
                write!(f, "*v{}", v.id)?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(id: u32) -> SuperPoly {
        SuperPoly::var(Var { id, odd: true })
    }

    fn even(id: u32) -> SuperPoly {
        SuperPoly::var(Var { id, odd: false })
    }

    #[test]
    fn supercommutativity() {
        let (a, b, x) = (odd(1), odd(2), even(3));
        assert_eq!(a.mul(&b), b.mul(&a).scale(&BigRational::from_integer((-1).into())));
        assert!(a.mul(&a).is_zero());
        assert_eq!(a.mul(&x), x.mul(&a));
        let s = a.add(&b);
        assert!(s.mul(&s).is_zero());
        assert_eq!(x.mul(&x).terms.len(), 1);
    }

    #[test]
    fn associativity_with_signs() {
        let fs = [odd(5), odd(2), even(4), odd(3), odd(1)];
        let left = fs.iter().fold(SuperPoly::one(), |acc, f| acc.mul(f));
        let right = fs.iter().rev().fold(SuperPoly::one(), |acc, f| f.mul(&acc));
        assert_eq!(left, right);
    }
}
