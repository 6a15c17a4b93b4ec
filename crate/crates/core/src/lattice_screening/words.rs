//! Normally ordered words in a finite family of named fields, and
//! decomposition of fields into such words.

use crate::coeff::RatFunc;
use crate::linalg::{Echelon, SparseVec};
use crate::vertex::{AlgebraHandle, FieldExpr, Mono, Weight};
use crate::{Error, Result};
use dashmap::DashMap;
use std::fmt::Write;

/// A letter `∂^d g` is `(g, d)`; a word is a nondecreasing list of letters,
/// evaluated as the right-nested product.
pub type Word = Vec<(usize, u32)>;

pub struct Words {
    pub alg: AlgebraHandle,
    pub names: Vec<String>,
    pub fields: Vec<FieldExpr>,
    weights: Vec<Weight>,
    odd: Vec<bool>,
    letters: DashMap<(usize, u32), FieldExpr>,
}

pub struct WordBasis {
    pub weight: Weight,
    pub words: Vec<Word>,
    pub values: Vec<FieldExpr>,
    ech: Echelon<Mono, RatFunc>,
}

fn as_vec(x: &FieldExpr) -> SparseVec<Mono, RatFunc> {
    x.monomials().into_iter().collect()
}

impl Words {
    /// Every field must be nonzero and homogeneous in weight and parity.
    pub fn new(alg: &AlgebraHandle, named: Vec<(String, FieldExpr)>) -> Result<Self> {
        let mut weights = Vec::new();
        let mut odd = Vec::new();
        for (name, f) in &named {
            let w = f.weight().ok_or_else(|| Error::InvalidArgument(format!("{name} is not homogeneous")))?;
            if w <= Weight::from_integer(0) {
                return Err(Error::InvalidArgument(format!("{name} needs positive weight")));
            }
            weights.push(w);
            odd.push(f.parity().ok_or_else(|| Error::InvalidArgument(format!("{name} has mixed parity")))?);
        }
        let (names, fields) = named.into_iter().unzip();
        Ok(Words { alg: alg.clone(), names, fields, weights, odd, letters: DashMap::new() })
    }

    pub fn letter(&self, g: usize, d: u32) -> Result<FieldExpr> {
        if let Some(x) = self.letters.get(&(g, d)) {
            return Ok(x.clone());
        }
        let x = self.alg.derivative_n(&self.fields[g], d)?;
        self.letters.insert((g, d), x.clone());
        Ok(x)
    }

    pub fn eval(&self, w: &Word) -> Result<FieldExpr> {
        let fs = w.iter().map(|&(g, d)| self.letter(g, d)).collect::<Result<Vec<_>>>()?;
        self.alg.nprod(&fs)
    }

    pub fn label(&self, w: &Word) -> String {
        if w.is_empty() {
            return "one".into();
        }
        let parts: Vec<String> = w
            .iter()
            .map(|&(g, d)| match d {
                0 => self.names[g].clone(),
                1 => format!("d({})", self.names[g]),
                _ => format!("d^{d}({})", self.names[g]),
            })
            .collect();
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            let mut s = String::from("no(");
            let _ = write!(s, "{})", parts.join(","));
            s
        }
    }

    /// All words of total weight `w`.
    pub fn enumerate(&self, w: Weight) -> Vec<Word> {
        let mut letters = Vec::new();
        for g in 0..self.fields.len() {
            let mut d = 0u32;
            while self.weights[g] + Weight::from_integer(d as i64) <= w {
                letters.push((g, d));
                d += 1;
            }
        }
        letters.sort();
        let mut out = Vec::new();
        self.rec(&letters, 0, w, &mut Vec::new(), &mut out);
        out
    }

    fn rec(&self, letters: &[(usize, u32)], start: usize, left: Weight, cur: &mut Word, out: &mut Vec<Word>) {
        if left == Weight::from_integer(0) {
            out.push(cur.clone());
            return;
        }
        for i in start..letters.len() {
            let (g, d) = letters[i];
            let lw = self.weights[g] + Weight::from_integer(d as i64);
            if lw > left {
                continue;
            }
            cur.push((g, d));
            self.rec(letters, if self.odd[g] { i + 1 } else { i }, left - lw, cur, out);
            cur.pop();
        }
    }

    pub fn basis(&self, w: Weight) -> Result<WordBasis> {
        let words = self.enumerate(w);
        let mut ech = Echelon::new();
        let mut values = Vec::new();
        for word in &words {
            let v = self.eval(word)?;
            ech.push(as_vec(&v));
            values.push(v);
        }
        Ok(WordBasis { weight: w, words, values, ech })
    }
}

impl WordBasis {
    /// Coefficients of `x` against the words, or an error if `x` is not in their span.
    pub fn decompose(&self, x: &FieldExpr) -> Result<Vec<(usize, RatFunc)>> {
        let combo = self
            .ech
            .decompose(as_vec(x))
            .ok_or_else(|| Error::NoSolution(format!("{x} is not a combination of words of weight {}", self.weight)))?;
        let mut out: Vec<(usize, RatFunc)> = combo.into_iter().collect();
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }
}
