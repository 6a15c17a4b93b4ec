//! Exact sparse linear algebra over ℚ and ℚ(k).
//!
//! [`Echelon`] keeps an incrementally reduced family of keyed sparse vectors and
//! remembers how each reduced vector combines the inputs, which gives ranks,
//! kernels (linear relations) and decompositions in one pass.

use crate::coeff::RatFunc;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `o` must be nonzero.
    fn div(&self, o: &Self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

pub type SparseVec<K, F> = HashMap<K, F>;

fn axpy<K: Hash + Eq + Clone, F: Field>(y: &mut SparseVec<K, F>, a: &F, x: &SparseVec<K, F>) {
    for (k, v) in x {
        let add = a.mul(v);
        match y.get_mut(k) {
            Some(e) => {
                *e = e.add(&add);
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    y.insert(k.clone(), add);
                }
            }
        }
    }
}

struct Pivot<K, F> {
    key: K,
    vec: SparseVec<K, F>,
    combo: SparseVec<usize, F>,
}

/// Incremental row echelon form over keyed sparse vectors.
pub struct Echelon<K: Hash + Eq + Clone, F: Field> {
    pivots: Vec<Pivot<K, F>>,
    index: HashMap<K, usize>,
    inputs: usize,
    relations: Vec<SparseVec<usize, F>>,
}

impl<K: Hash + Eq + Clone + Ord, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Hash + Eq + Clone + Ord, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Echelon { pivots: Vec::new(), index: HashMap::new(), inputs: 0, relations: Vec::new() }
    }

    fn reduce(&self, mut v: SparseVec<K, F>, mut combo: SparseVec<usize, F>) -> (SparseVec<K, F>, SparseVec<usize, F>) {
        loop {
            let next = v.keys().filter_map(|k| self.index.get(k).copied()).min();
            let Some(pi) = next else { break };
            let p = &self.pivots[pi];
            let a = v[&p.key].div(&p.vec[&p.key]);
            let neg = F::zero().sub(&a);
            axpy(&mut v, &neg, &p.vec);
            axpy(&mut combo, &neg, &p.combo);
        }
        (v, combo)
    }

    /// Insert input vector number `self.inputs()`; returns true if it was independent.
    pub fn push(&mut self, v: SparseVec<K, F>) -> bool {
        let i = self.inputs;
        self.inputs += 1;
        let mut combo = SparseVec::new();
        combo.insert(i, F::one());
        let (v, combo) = self.reduce(v, combo);
        if v.is_empty() {
            self.relations.push(combo);
            return false;
        }
        let key = v.keys().min().unwrap().clone();
        self.index.insert(key.clone(), self.pivots.len());
        self.pivots.push(Pivot { key, vec: v, combo });
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// A basis of linear relations `Σ c_i v_i = 0` among the inputs.
    pub fn relations(&self) -> &[SparseVec<usize, F>] {
        &self.relations
    }

    /// Coefficients `c_i` with `Σ c_i v_i = t`, if `t` lies in the span.
    pub fn decompose(&self, t: SparseVec<K, F>) -> Option<SparseVec<usize, F>> {
        let (rest, combo) = self.reduce(t, SparseVec::new());
        if !rest.is_empty() {
            return None;
        }
        let mut out = SparseVec::new();
        axpy(&mut out, &F::zero().sub(&F::one()), &combo);
        Some(out)
    }

    pub fn contains(&self, t: SparseVec<K, F>) -> bool {
        self.reduce(t, SparseVec::new()).0.is_empty()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Hash + Eq + Clone + Ord, F: Field>(vs: impl IntoIterator<Item = SparseVec<K, F>>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.push(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32, BigRational> {
        entries.iter().map(|&(k, x)| (k, q(x))).collect()
    }

    #[test]
    fn rank_and_relations() {
        let mut e = Echelon::new();
        assert!(e.push(v(&[(0, 1), (1, 2)])));
        assert!(e.push(v(&[(1, 1), (2, 1)])));
        assert!(!e.push(v(&[(0, 2), (1, 6), (2, 2)])));
        assert_eq!(e.rank(), 2);
        let r = &e.relations()[0];
        assert_eq!(r[&2], q(1));
        assert_eq!(r[&0], q(-2));
        assert_eq!(r[&1], q(-2));
    }

    #[test]
    fn decomposition() {
        let mut e = Echelon::new();
        e.push(v(&[(0, 1), (1, 1)]));
        e.push(v(&[(1, 1)]));
        let c = e.decompose(v(&[(0, 3), (1, 5)])).unwrap();
        assert_eq!(c[&0], q(3));
        assert_eq!(c[&1], q(2));
        assert!(e.decompose(v(&[(2, 1)])).is_none());
    }

    #[test]
    fn over_rational_functions() {
        let mut e: Echelon<u32, RatFunc> = Echelon::new();
        let k = RatFunc::kappa();
        e.push([(0, k.clone()), (1, RatFunc::one())].into_iter().collect());
        let t: SparseVec<u32, RatFunc> = [(0, RatFunc::one()), (1, &RatFunc::one() / &k)].into_iter().collect();
        let c = e.decompose(t).unwrap();
        assert_eq!(c[&0], &RatFunc::one() / &k);
    }
}
