//! Classical invariant theory of the associated graded of the bcβγ system:
//! `GL_n`-invariant weight spaces, the span of the quadratic invariants, and
//! the relations `d_{I,J}` among them.
//!
//! Weights are measured in sixths: `b_j ↦ 6j+2`, `c_j ↦ 6j+4`, `β_j ↦ 6j+5`,
//! `γ_j ↦ 6j+1`.

mod superpoly;

pub use superpoly::{mul_mono, SMono, SuperPoly, Var};

use crate::free_systems::JLabel;
use crate::linalg::Echelon;
use crate::vertex::Weight;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt::Write as _;

pub const DEFAULT_CUTOFF: Weight = Weight::new_raw(4, 1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    B,
    Beta,
    C,
    Gamma,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::B, Family::Beta, Family::C, Family::Gamma];

    pub fn odd(self) -> bool {
        matches!(self, Family::B | Family::C)
    }

    /// Standard (`b`, `β`) or dual (`c`, `γ`) representation.
    pub fn standard(self) -> bool {
        matches!(self, Family::B | Family::Beta)
    }

    fn sixths(self) -> i64 {
        match self {
            Family::B => 2,
            Family::Beta => 5,
            Family::C => 4,
            Family::Gamma => 1,
        }
    }
}

/// The variable `∂^j x^i` of the associated graded, with `1 ≤ i ≤ 15`.
pub fn gr_var(f: Family, i: usize, j: u32) -> Var {
    Var { id: (j * 4 + f as u32) * 16 + i as u32, odd: f.odd() }
}

pub fn gr_var_parts(v: Var) -> (Family, usize, u32) {
    let i = (v.id % 16) as usize;
    let rest = v.id / 16;
    (Family::ALL[(rest % 4) as usize], i, rest / 4)
}

fn var_sixths(v: Var) -> i64 {
    let (f, _, j) = gr_var_parts(v);
    6 * j as i64 + f.sixths()
}

fn to_sixths(w: Weight, cutoff: Weight) -> Result<Option<i64>> {
    if w > cutoff {
        return Err(Error::InvalidArgument(format!("weight {w} exceeds the cutoff {cutoff}")));
    }
    if w < Weight::zero() {
        return Err(Error::InvalidArgument("negative weight".into()));
    }
    let s = w * Weight::from_integer(6);
    Ok(s.is_integer().then(|| s.to_integer()))
}

fn enumerate(vars: &[(Var, i64)], start: usize, left: i64, cur: &mut SMono, out: &mut Vec<SMono>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for idx in start..vars.len() {
        let (v, u) = vars[idx];
        if u > left {
            continue;
        }
        match cur.last_mut() {
            Some((last, e)) if *last == v => {
                if v.odd {
                    continue;
                }
                *e += 1;
                enumerate(vars, idx, left - u, cur, out);
                let (_, e) = cur.last_mut().unwrap();
                *e -= 1;
            }
            _ => {
                cur.push((v, 1));
                enumerate(vars, idx, left - u, cur, out);
                cur.pop();
            }
        }
    }
}

/// All monomials of `gr(ℱ)` of the given weight (in sixths).
pub fn graded_monomials(n: usize, sixths: i64) -> Vec<SMono> {
    let mut vars = Vec::new();
    for f in Family::ALL {
        for i in 1..=n {
            for j in 0.. {
                let v = gr_var(f, i, j);
                if var_sixths(v) > sixths {
                    break;
                }
                vars.push((v, var_sixths(v)));
            }
        }
    }
    vars.sort();
    let mut out = Vec::new();
    enumerate(&vars, 0, sixths, &mut Vec::new(), &mut out);
    out
}

fn torus_weight_zero(m: &SMono, n: usize) -> bool {
    let mut bal = vec![0i64; n + 1];
    for (v, e) in m {
        let (f, i, _) = gr_var_parts(*v);
        bal[i] += if f.standard() { *e as i64 } else { -(*e as i64) };
    }
    bal.iter().all(|b| *b == 0)
}

/// The derivation `E_{pq}`: `x_q ↦ x_p` on standard variables, `x'_p ↦ −x'_q` on duals.
pub fn e_action(m: &SMono, p: usize, q: usize) -> SuperPoly {
    let mut flat: Vec<Var> = Vec::new();
    for (v, e) in m {
        for _ in 0..*e {
            flat.push(*v);
        }
    }
    let mut out = SuperPoly::zero();
    for pos in 0..flat.len() {
        let (f, i, j) = gr_var_parts(flat[pos]);
        let (target, sign) = if f.standard() && i == q {
            (gr_var(f, p, j), 1)
        } else if !f.standard() && i == p {
            (gr_var(f, q, j), -1)
        } else {
            continue;
        };
        let factors: Vec<SuperPoly> = flat
            .iter()
            .enumerate()
            .map(|(k, v)| SuperPoly::var(if k == pos { target } else { *v }))
            .collect();
        out = out.add(&SuperPoly::product(factors.iter()).scale(&BigRational::from_integer(sign.into())));
    }
    out
}

/// Dimension of the `GL_n`-invariants of weight `w` in `gr(ℱ)`.
pub fn invariant_dim(n: usize, w: Weight) -> Result<usize> {
    invariant_dim_with_cutoff(n, w, DEFAULT_CUTOFF)
}

pub fn invariant_dim_with_cutoff(n: usize, w: Weight, cutoff: Weight) -> Result<usize> {
    let Some(s) = to_sixths(w, cutoff)? else { return Ok(0) };
    let basis: Vec<SMono> = graded_monomials(n, s).into_iter().filter(|m| torus_weight_zero(m, n)).collect();
    let mut ech: Echelon<(usize, usize, SMono), BigRational> = Echelon::new();
    for m in &basis {
        let mut v = HashMap::new();
        for p in 1..=n {
            for q in 1..=n {
                if p != q {
                    for (mm, c) in e_action(m, p, q).terms {
                        v.insert((p, q, mm), c);
                    }
                }
            }
        }
        ech.push(v);
    }
    Ok(basis.len() - ech.rank())
}

/// Sparse triplets `row col value` of the stacked `E_{pq}` action on the
/// torus-weight-zero monomials of weight `w`; columns index the monomials,
/// rows index (p, q, image monomial) in first-appearance order.
pub fn dump_triplets(n: usize, w: Weight) -> Result<String> {
    let Some(s) = to_sixths(w, DEFAULT_CUTOFF)? else { return Ok(String::new()) };
    let basis: Vec<SMono> = graded_monomials(n, s).into_iter().filter(|m| torus_weight_zero(m, n)).collect();
    let mut rows: HashMap<(usize, usize, SMono), usize> = HashMap::new();
    let mut out = String::new();
    for (col, m) in basis.iter().enumerate() {
        for p in 1..=n {
            for q in (1..=n).filter(|q| *q != p) {
                for (mm, c) in e_action(m, p, q).terms {
                    let next = rows.len();
                    let row = *rows.entry((p, q, mm)).or_insert(next);
                    let _ = writeln!(out, "{row} {col} {c}");
                }
            }
        }
    }
    Ok(out)
}

/// The formal variable `Q^a_{k,l}`.
pub fn q_var(a: JLabel, k: u32, l: u32) -> Var {
    Var { id: (k * 64 + l) * 4 + a.index(), odd: a.is_odd() }
}

pub fn q_var_parts(v: Var) -> (JLabel, u32, u32) {
    let a = JLabel::from_index(v.id % 4);
    let kl = v.id / 4;
    (a, kl / 64, kl % 64)
}

fn q_sixths(a: JLabel, k: u32, l: u32) -> i64 {
    6 * (k + l) as i64 + [6, 6, 3, 9][a as usize]
}

/// `q^a_{k,l} = Σ_i u_{i,k} u'_{i,l}`.
pub fn q_image(n: usize, a: JLabel, k: u32, l: u32) -> SuperPoly {
    let (x, y) = match a {
        JLabel::Zero => (Family::B, Family::C),
        JLabel::One => (Family::Beta, Family::Gamma),
        JLabel::Plus => (Family::B, Family::Gamma),
        JLabel::Minus => (Family::Beta, Family::C),
    };
    let mut out = SuperPoly::zero();
    for i in 1..=n {
        out = out.add(&SuperPoly::var(gr_var(x, i, k)).mul(&SuperPoly::var(gr_var(y, i, l))));
    }
    out
}

/// Monomials in the formal `Q`'s of the given weight.
pub fn free_model(sixths: i64) -> Vec<SMono> {
    let mut vars = Vec::new();
    for a in JLabel::ALL {
        for k in 0..64u32 {
            for l in 0..64u32 {
                let u = q_sixths(a, k, l);
                if u > sixths {
                    break;
                }
                vars.push((q_var(a, k, l), u));
            }
            if q_sixths(a, k, 0) > sixths {
                break;
            }
        }
    }
    vars.sort();
    let mut out = Vec::new();
    enumerate(&vars, 0, sixths, &mut Vec::new(), &mut out);
    out
}

pub fn free_model_dim(w: Weight) -> Result<usize> {
    Ok(to_sixths(w, DEFAULT_CUTOFF)?.map_or(0, |s| free_model(s).len()))
}

fn substitute_q(n: usize, p: &SuperPoly) -> SuperPoly {
    p.substitute(|v| {
        let (a, k, l) = q_var_parts(v);
        q_image(n, a, k, l)
    })
}

/// Dimension of the span of products of the `q^a_{k,l}` of weight `w`.
pub fn weyl_span_dim(n: usize, w: Weight) -> Result<usize> {
    let Some(s) = to_sixths(w, DEFAULT_CUTOFF)? else { return Ok(0) };
    let mut ech: Echelon<SMono, BigRational> = Echelon::new();
    for m in free_model(s) {
        let img = substitute_q(n, &SuperPoly::monomial(m, BigRational::one()));
        ech.push(img.terms.into_iter().collect());
    }
    Ok(ech.rank())
}

/// The least weight at which the products of the `q`'s satisfy a relation,
/// searching half-integer weights up to `cutoff`.
pub fn first_relation_weight(n: usize) -> Result<Weight> {
    first_relation_weight_with(n, DEFAULT_CUTOFF, |w| free_model_dim(w))
}

pub fn first_relation_weight_with(n: usize, cutoff: Weight, free_dim: impl Fn(Weight) -> Result<usize>) -> Result<Weight> {
    let mut h = 0;
    loop {
        let w = Weight::new(h, 2);
        if w > cutoff {
            return Err(Error::NoSolution(format!("no relation up to weight {cutoff}")));
        }
        if weyl_span_dim(n, w)? < free_dim(w)? {
            return Ok(w);
        }
        h += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Index {
    pub value: u32,
    pub bosonic: bool,
}

impl Index {
    pub fn bos(value: u32) -> Self {
        Index { value, bosonic: true }
    }

    pub fn fer(value: u32) -> Self {
        Index { value, bosonic: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalRelation {
    pub n: usize,
    pub rows: Vec<Index>,
    pub cols: Vec<Index>,
    pub poly: SuperPoly,
}

impl ClassicalRelation {
    pub fn weight(&self) -> Weight {
        let mut s = 0;
        for r in 0..self.rows.len() {
            let a = entry_label(self.rows[r], self.cols[r]);
            s += q_sixths(a, self.rows[r].value, self.cols[r].value);
        }
        Weight::new(s, 6)
    }

    pub fn vanishes(&self) -> bool {
        substitute_q(self.n, &self.poly).is_zero()
    }
}

fn entry_label(row: Index, col: Index) -> JLabel {
    match (row.bosonic, col.bosonic) {
        (true, true) => JLabel::One,
        (false, false) => JLabel::Zero,
        (false, true) => JLabel::Plus,
        (true, false) => JLabel::Minus,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

/// Sign of sorting a sequence of parity-tagged keys into increasing key order.
fn koszul(seq: &[(usize, bool)]) -> bool {
    let mut neg = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i].0 > seq[j].0 && seq[i].1 && seq[j].1 {
                neg = !neg;
            }
        }
    }
    neg
}

/// `d_{I,J} = Σ_σ sgn(σ) κ(σ) Π_r Q(r, σ(r))`, where κ is the Koszul sign of
/// reordering `u_0 u'_{σ0} … u_n u'_{σn}` into `u_0 … u_n u'_0 … u'_n`.
pub fn build_classical_relation(n: usize, rows: &[Index], cols: &[Index]) -> Result<ClassicalRelation> {
    if rows.len() != n + 1 || cols.len() != n + 1 {
        return Err(Error::InvalidArgument(format!("I and J need n+1 = {} entries", n + 1)));
    }
    for side in [rows, cols] {
        for (i, x) in side.iter().enumerate() {
            if x.bosonic && side[..i].iter().any(|y| y.bosonic && y.value == x.value) {
                return Err(Error::InvalidArgument(format!("repeated bosonic index {}", x.value)));
            }
        }
    }
    let mut poly = SuperPoly::zero();
    for sigma in permutations(n + 1) {
        let mut seq = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            seq.push((r, !row.bosonic));
            seq.push((n + 1 + sigma[r], !cols[sigma[r]].bosonic));
        }
        let neg = (inversions(&sigma) % 2 == 1) ^ koszul(&seq);
        let factors: Vec<SuperPoly> = rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let col = cols[sigma[r]];
                SuperPoly::var(q_var(entry_label(*row, col), row.value, col.value))
            })
            .collect();
        let t = SuperPoly::product(factors.iter());
        poly = poly.add(&if neg { t.scale(&-BigRational::one()) } else { t });
    }
    Ok(ClassicalRelation { n, rows: rows.to_vec(), cols: cols.to_vec(), poly })
}

/// All `(I, J)` configurations of `n+1` entries with values `< vmax`, up to the
/// symmetries (each side nondecreasing within each parity class).
pub fn all_configurations(n: usize, vmax: u32) -> Vec<(Vec<Index>, Vec<Index>)> {
    fn side(len: usize, vmax: u32) -> Vec<Vec<Index>> {
        let mut out = Vec::new();
        for nb in 0..=len {
            let nf = len - nb;
            for bos in combos(vmax, nb, true) {
                for fer in combos(vmax, nf, false) {
                    let mut v: Vec<Index> = bos.iter().map(|x| Index::bos(*x)).collect();
                    v.extend(fer.iter().map(|x| Index::fer(*x)));
                    out.push(v);
                }
            }
        }
        out
    }
    fn combos(vmax: u32, len: usize, strict: bool) -> Vec<Vec<u32>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in combos(vmax, len - 1, strict) {
            let lo = rest.last().map_or(0, |x| if strict { x + 1 } else { *x });
            for v in lo..vmax {
                let mut r = rest.clone();
                r.push(v);
                out.push(r);
            }
        }
        out
    }
    let s = side(n + 1, vmax);
    let mut out = Vec::new();
    for i in &s {
        for j in &s {
            out.push((i.clone(), j.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests;

/// `invariant_dim = weyl_span_dim` at every half-integer weight up to `wmax`,
/// the first relation at `n + 1/2`, and vanishing of every `d_{I,J}` with entries `< 2`.
pub fn verify_weyl(n: usize, wmax: Weight) -> crate::report::Report {
    let mut r = crate::report::Report::new("weyl", format!("n={n}"));
    let top = (wmax * Weight::from_integer(2)).floor().to_integer();
    for h in 0..=top {
        let w = Weight::new(h, 2);
        match (invariant_dim(n, w), weyl_span_dim(n, w)) {
            (Ok(a), Ok(b)) => r.push_bool(format!("invariant_dim = weyl_span_dim at weight {w}"), a == b, (a != b).then(|| format!("{a} vs {b}"))),
            (Err(e), _) | (_, Err(e)) => r.push_bool(format!("weight {w}"), false, Some(e.to_string())),
        }
    }
    let want = Weight::new(2 * n as i64 + 1, 2);
    match first_relation_weight(n) {
        Ok(w) => r.push_bool(format!("first relation at weight {want}"), w == want, (w != want).then(|| format!("found {w}"))),
        Err(e) => r.push_bool(format!("first relation at weight {want}"), false, Some(e.to_string())),
    }
    let mut bad = Vec::new();
    let configs = all_configurations(n, 2);
    for (i, j) in &configs {
        match build_classical_relation(n, i, j) {
            Ok(rel) if rel.vanishes() => {}
            Ok(_) => bad.push(format!("{i:?} {j:?}")),
            Err(e) => bad.push(e.to_string()),
        }
    }
    r.push_bool(format!("all {} d_IJ vanish", configs.len()), bad.is_empty(), (!bad.is_empty()).then(|| bad.join("\n")));
    r.finish()
}
