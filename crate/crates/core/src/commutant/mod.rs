//! Affine currents of gl(m|n), the tensor product `V_k(gl(n)) ⊗ ℱ` with its
//! diagonal currents, the commutant `B_{n,k}`, and its identification with
//! `𝒲_{2,k+2}`.

mod identify;

pub use identify::{identify_w2_b2, gl22_check, gl22_fields, b_to_w2_fields};

use crate::coeff::RatFunc;
use crate::free_systems::{free_table, j_field, FreeSystemSpec, JLabel};
use crate::linalg::{Echelon, SparseVec};
use crate::report::Report;
use crate::vertex::{Algebra, AlgebraHandle, FieldExpr, GenId, GeneratorSymbol, LinearField, Mono, PairOpe, Weight};
use crate::{Error, Result};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

type Vector = BTreeMap<usize, RatFunc>;

/// A Lie superalgebra with an invariant form, and the level of its affinization.
#[derive(Debug, Clone)]
pub struct AffineSpec {
    pub name: String,
    pub basis: Vec<GeneratorSymbol>,
    /// `[a, b] = Σ c·e`, listed for every ordered pair with a nonzero bracket.
    pub bracket: BTreeMap<(usize, usize), Vector>,
    pub form: BTreeMap<(usize, usize), RatFunc>,
    pub level: RatFunc,
}

impl AffineSpec {
    /// `gl(m|n)` in matrix units `E_{ij}` with the supertrace form; `gl(n)` is `gl(n|0)`.
    pub fn gl_super(m: usize, n: usize, symbol: &str, level: RatFunc) -> Self {
        let size = m + n;
        let odd_row = |i: usize| i > m;
        let odd = |i: usize, j: usize| odd_row(i) != odd_row(j);
        let id = |i: usize, j: usize| (i - 1) * size + (j - 1);
        let mut basis = Vec::new();
        for i in 1..=size {
            for j in 1..=size {
                basis.push(GeneratorSymbol::new(symbol, &[i as i32, j as i32], odd(i, j), Weight::from_integer(1)));
            }
        }
        let mut bracket: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        let mut form = BTreeMap::new();
        for i in 1..=size {
            for j in 1..=size {
                for k in 1..=size {
                    for l in 1..=size {
                        let mut v = Vector::new();
                        if j == k {
                            add(&mut v, id(i, l), &RatFunc::one());
                        }
                        if i == l {
                            let s = if odd(i, j) && odd(k, l) { 1 } else { -1 };
                            add(&mut v, id(k, j), &RatFunc::from_int(s));
                        }
                        if !v.is_empty() {
                            bracket.insert((id(i, j), id(k, l)), v);
                        }
                        if j == k && i == l {
                            form.insert((id(i, j), id(k, l)), RatFunc::from_int(if odd_row(i) { -1 } else { 1 }));
                        }
                    }
                }
            }
        }
        let name = if n == 0 { format!("gl({m})") } else { format!("gl({m}|{n})") };
        AffineSpec { name, basis, bracket, form, level }
    }

    pub fn gl(n: usize, level: RatFunc) -> Self {
        Self::gl_super(n, 0, "X", level)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn odd(&self, a: usize) -> bool {
        self.basis[a].odd
    }

    fn sign(&self, a: usize, b: usize) -> RatFunc {
        RatFunc::from_int(if self.odd(a) && self.odd(b) { -1 } else { 1 })
    }

    fn br(&self, a: usize, b: usize) -> Vector {
        self.bracket.get(&(a, b)).cloned().unwrap_or_default()
    }

    fn br_left(&self, a: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (e, c) in v {
            for (f, d) in self.br(a, *e) {
                add(&mut out, f, &(c * &d));
            }
        }
        out
    }

    fn br_right(&self, v: &Vector, b: usize) -> Vector {
        let mut out = Vector::new();
        for (e, c) in v {
            for (f, d) in self.br(*e, b) {
                add(&mut out, f, &(c * &d));
            }
        }
        out
    }

    fn b(&self, a: usize, b: usize) -> RatFunc {
        self.form.get(&(a, b)).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn b_vec(&self, v: &Vector, c: usize) -> RatFunc {
        v.iter().fold(RatFunc::zero(), |acc, (e, x)| &acc + &(x * &self.b(*e, c)))
    }

    /// Graded skew-symmetry, Jacobi, parity, and graded symmetry and invariance of the form.
    pub fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        let label = |a: usize| self.basis[a].label.clone();
        let fail = |what: &str, t: &[usize]| {
            let names: Vec<String> = t.iter().map(|&a| label(a)).collect();
            Err(Error::InvalidArgument(format!("{what} fails for ({})", names.join(", "))))
        };
        for ((a, b), v) in &self.bracket {
            if v.keys().any(|&e| self.odd(e) != (self.odd(*a) != self.odd(*b))) {
                return fail("bracket parity", &[*a, *b]);
            }
        }
        for ((a, b), x) in &self.form {
            if self.odd(*a) != self.odd(*b) && !x.is_zero() {
                return fail("form parity", &[*a, *b]);
            }
        }
        for a in 0..d {
            for b in 0..d {
                let mut s = self.br(a, b);
                let sg = self.sign(a, b);
                for (e, c) in self.br(b, a) {
                    add(&mut s, e, &(&sg * &c));
                }
                if !s.is_empty() {
                    return fail("skew-symmetry", &[a, b]);
                }
                if self.b(a, b) != &sg * &self.b(b, a) {
                    return fail("form symmetry", &[a, b]);
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let ab = self.br(a, b);
                for c in 0..d {
                    let mut s = self.br_left(a, &self.br(b, c));
                    for (e, x) in self.br_right(&ab, c) {
                        add(&mut s, e, &-&x);
                    }
                    let sg = self.sign(a, b);
                    for (e, x) in self.br_left(b, &self.br(a, c)) {
                        add(&mut s, e, &-&(&sg * &x));
                    }
                    if !s.is_empty() {
                        return fail("Jacobi", &[a, b, c]);
                    }
                    let bc = self.br(b, c);
                    let rhs = bc.iter().fold(RatFunc::zero(), |acc, (e, x)| &acc + &(x * &self.b(a, *e)));
                    if self.b_vec(&ab, c) != rhs {
                        return fail("form invariance", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    /// `X^a(z)X^b(w) ∼ k B(a,b)(z−w)^{−2} + [a,b](w)(z−w)^{−1}`, ids shifted by `offset`.
    pub(crate) fn pair_table(&self, offset: u32) -> Vec<(u32, u32, PairOpe)> {
        let d = self.dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let mut p1 = LinearField::default();
                for (e, c) in self.br(a, b) {
                    p1 = p1.plus(&LinearField::gen(offset + e as u32, c));
                }
                let p2 = LinearField::scalar(&self.level * &self.b(a, b));
                if p1.is_zero() && p2.is_zero() {
                    continue;
                }
                out.push((offset + a as u32, offset + b as u32, PairOpe::new(vec![p1, p2])));
            }
        }
        out
    }
}

fn add(v: &mut Vector, e: usize, c: &RatFunc) {
    if c.is_zero() {
        return;
    }
    let x = v.entry(e).or_insert_with(RatFunc::zero);
    *x += c;
    if x.is_zero() {
        v.remove(&e);
    }
}

/// Registers the affine vertex algebra after checking the Lie superalgebra axioms.
pub fn build_affine(spec: &AffineSpec) -> Result<AlgebraHandle> {
    spec.check_axioms()?;
    Algebra::register(&format!("V[{}]:k={}", spec.name, spec.level), spec.basis.clone(), spec.pair_table(0))
}

/// `V_k(gl(n)) ⊗ ℱ` as one algebra: `X[i,j]` first, then `b, β, c, γ`.
pub struct TensorModel {
    pub n: usize,
    pub k: RatFunc,
    pub alg: AlgebraHandle,
    pub affine: AffineSpec,
    /// The images of `X^{ij}` in `ℱ`, indexed `(i−1)n + (j−1)`.
    pub free_currents: Vec<FieldExpr>,
    /// `X̄^{ij} = X̃^{ij} ⊗ 1 + 1 ⊗ X^{ij}`.
    pub currents: Vec<FieldExpr>,
}

impl TensorModel {
    pub fn new(n: usize, k: RatFunc) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        let affine = AffineSpec::gl(n, k.clone());
        affine.check_axioms()?;
        let mut gens = affine.basis.clone();
        let mut pairs = affine.pair_table(0);
        let (fg, fp) = free_table(&FreeSystemSpec::bcbg(n), gens.len() as u32)?;
        gens.extend(fg);
        pairs.extend(fp);
        let alg = Algebra::register(&format!("gl{n}+bcbg:{n}:k={k}"), gens, pairs)?;
        let mut m = TensorModel { n, k, alg, affine, free_currents: Vec::new(), currents: Vec::new() };
        for i in 1..=n {
            for j in 1..=n {
                let f = m.wick(&m.g("c", i)?, &m.g("b", j)?)?.try_add(&m.wick(&m.g("gamma", i)?, &m.g("beta", j)?)?)?;
                m.currents.push(m.x(i, j)?.try_add(&f)?);
                m.free_currents.push(f);
            }
        }
        Ok(m)
    }

    pub fn symbolic(n: usize) -> Result<Self> {
        Self::new(n, RatFunc::kappa())
    }

    pub fn x(&self, i: usize, j: usize) -> Result<FieldExpr> {
        self.alg.gen(&format!("X[{i},{j}]"))
    }

    pub fn g(&self, name: &str, i: usize) -> Result<FieldExpr> {
        self.alg.gen(&format!("{name}[{i}]"))
    }

    fn wick(&self, a: &FieldExpr, b: &FieldExpr) -> Result<FieldExpr> {
        self.alg.wick(a, b)
    }

    pub fn is_affine(&self, g: GenId) -> bool {
        (g as usize) < self.n * self.n
    }

    pub fn current_label(&self, a: usize) -> String {
        format!("Xbar[{},{}]", a / self.n + 1, a % self.n + 1)
    }

    /// Nonzero `X̄ ∘_m v` for `m ≥ 0`, labelled by current and mode.
    pub fn defects(&self, v: &FieldExpr) -> Result<Vec<(String, FieldExpr)>> {
        let mut out = Vec::new();
        for (a, x) in self.currents.iter().enumerate() {
            let ope = self.alg.ope(x, v)?;
            for order in 1..=ope.max_order() {
                if let Some(p) = ope.pole(order).filter(|p| !p.is_zero()) {
                    out.push((format!("{} o{} v", self.current_label(a), order - 1), p.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn in_commutant(&self, v: &FieldExpr) -> Result<bool> {
        Ok(self.defects(v)?.is_empty())
    }

    /// `ω ↦ ω_0`: keeps the terms free of affine letters.
    pub fn phi(&self, v: &FieldExpr) -> FieldExpr {
        v.filter_letters(|g| !self.is_affine(g))
    }

    /// The six fields `Ẽ, Ñ, Ψ̃^±, F̃^±`.
    pub fn b_generators(&self) -> Result<Vec<(String, FieldExpr)>> {
        self.b_generators_with(&(&RatFunc::from_int(2) / &self.k))
    }

    /// As [`Self::b_generators`], with `Ñ = Σ (ν X^{ll} − :c^l b^l: + :γ^l β^l:)`.
    pub fn b_generators_with(&self, nu: &RatFunc) -> Result<Vec<(String, FieldExpr)>> {
        let n = self.n;
        let ik = self.k.recip()?;
        let z = self.alg.zero();
        let (mut e, mut nn, mut pp, mut pm, mut fp, mut fm) = (z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z);
        for l in 1..=n {
            let (b, c, be, ga) = (self.g("b", l)?, self.g("c", l)?, self.g("beta", l)?, self.g("gamma", l)?);
            let cb = self.wick(&c, &b)?;
            let gb = self.wick(&ga, &be)?;
            pm = pm.try_add(&self.wick(&c, &be)?)?;
            pp = pp.try_sub(&self.wick(&ga, &b)?)?;
            e = e.try_sub(&cb.try_add(&gb)?)?;
            nn = nn.try_add(&self.x(l, l)?.scale(nu).try_sub(&cb)?.try_add(&gb)?)?;
            fm = fm.try_add(&self.wick(&c, &self.alg.derivative(&be)?)?)?;
            fp = fp.try_add(&self.wick(&ga, &self.alg.derivative(&b)?)?)?;
            for j in 1..=n {
                let x = self.x(j, l)?;
                fm = fm.try_add(&self.alg.nprod(&[x.clone(), c.clone(), self.g("beta", j)?])?.scale(&ik))?;
                fp = fp.try_add(&self.alg.nprod(&[x, ga.clone(), self.g("b", j)?])?.scale(&ik))?;
            }
        }
        Ok(vec![
            ("E".into(), e),
            ("N".into(), nn),
            ("Psi[+]".into(), pp),
            ("Psi[-]".into(), pm),
            ("F[+]".into(), fp),
            ("F[-]".into(), fm),
        ])
    }

    /// `t = 1⊗j − (1/k) Σ_{ij} X̃^{ij} ⊗ (X^{ji} ∘_1 j)`, the dual basis taken for the trace form.
    pub fn t_field(&self, j: &FieldExpr) -> Result<FieldExpr> {
        let ik = self.k.recip()?;
        let mut acc = j.clone();
        for i in 1..=self.n {
            for l in 1..=self.n {
                let inner = self.alg.circle(&self.free_currents[(l - 1) * self.n + (i - 1)], j, 1)?;
                if inner.is_zero() {
                    continue;
                }
                acc = acc.try_sub(&self.wick(&self.x(i, l)?, &inner)?.scale(&ik))?;
            }
        }
        Ok(acc)
    }

    /// The unique commutant element `t` of the weight of `j` with `φ(t) = j`.
    pub fn commutant_lift(&self, j: &FieldExpr) -> Result<FieldExpr> {
        let w = j.weight().ok_or_else(|| Error::InvalidArgument("inhomogeneous field".into()))?;
        let basis = self.commutant_basis(w)?;
        let mut ech = Echelon::new();
        for b in &basis {
            ech.push(self.phi(b).monomials().into_iter().collect::<SparseVec<Mono, RatFunc>>());
        }
        if ech.rank() != basis.len() {
            return Err(Error::NoSolution(format!("phi is not injective at weight {w}")));
        }
        let sol = ech
            .decompose(j.monomials().into_iter().collect())
            .ok_or_else(|| Error::NoSolution(format!("{j} is not a projection of the commutant")))?;
        let mut acc = self.alg.zero();
        for (i, c) in sol {
            acc = acc.try_add(&basis[i].scale(&c))?;
        }
        Ok(acc)
    }

    /// `t^{0,0}, t^{1,0}, t^{+,0}, t^{-,0}, t^{0,1}`.
    pub fn t_fields(&self) -> Result<Vec<(String, FieldExpr)>> {
        let mut out = Vec::new();
        for (a, l) in [(JLabel::Zero, 0), (JLabel::One, 0), (JLabel::Plus, 0), (JLabel::Minus, 0), (JLabel::Zero, 1)] {
            let j = j_field(&self.alg, self.n, a, l)?;
            out.push((format!("t[{a},{l}]"), self.t_field(&j)?));
        }
        Ok(out)
    }

    /// Torus weight under `X̄^{ll} ∘_0`, and the bc and βγ charges, of a monomial.
    fn sector(&self, m: &Mono) -> Vec<i32> {
        let n = self.n;
        let mut s = vec![0i32; n + 2];
        for l in m.iter() {
            let g = l.gen as usize;
            if g < n * n {
                s[g / n] += 1;
                s[g % n] -= 1;
                continue;
            }
            let f = (g - n * n) / n;
            let i = (g - n * n) % n;
            let (t, slot, q) = match f {
                0 => (-1, n, -1),
                1 => (-1, n + 1, -1),
                2 => (1, n, 1),
                _ => (1, n + 1, 1),
            };
            s[i] += t;
            s[slot] += q;
        }
        s
    }

    /// Basis of the weight-`w` part of the commutant, by exact linear algebra
    /// on the torus-neutral sectors.
    pub fn commutant_basis(&self, w: Weight) -> Result<Vec<FieldExpr>> {
        self.commutant_basis_with_cutoff(w, Weight::new(5, 2))
    }

    pub fn commutant_basis_with_cutoff(&self, w: Weight, cutoff: Weight) -> Result<Vec<FieldExpr>> {
        if w > cutoff {
            return Err(Error::InvalidArgument(format!("weight {w} exceeds the cutoff {cutoff}")));
        }
        let mut sectors: BTreeMap<Vec<i32>, Vec<(Mono, FieldExpr)>> = BTreeMap::new();
        for v in self.alg.weight_basis(w)? {
            let (m, _) = v.monomials().into_iter().next().ok_or_else(|| Error::Internal("empty basis vector".into()))?;
            let s = self.sector(&m);
            if s[..self.n].iter().all(|&t| t == 0) {
                sectors.entry(s).or_default().push((m, v));
            }
        }
        let per: Vec<Result<Vec<FieldExpr>>> = sectors.into_par_iter().map(|(_, vs)| self.sector_kernel(&vs)).collect();
        let mut out = Vec::new();
        for p in per {
            out.extend(p?);
        }
        Ok(out)
    }

    fn sector_kernel(&self, vs: &[(Mono, FieldExpr)]) -> Result<Vec<FieldExpr>> {
        let images: Vec<Result<SparseVec<(usize, u32, Mono), RatFunc>>> = vs
            .par_iter()
            .map(|(_, v)| {
                let mut img = SparseVec::new();
                for (a, x) in self.currents.iter().enumerate() {
                    let ope = self.alg.ope(x, v)?;
                    for order in 1..=ope.max_order() {
                        if let Some(p) = ope.pole(order) {
                            for (m, c) in p.monomials() {
                                img.insert((a, order, m), c);
                            }
                        }
                    }
                }
                Ok(img)
            })
            .collect();
        let mut ech = Echelon::new();
        for img in images {
            ech.push(img?);
        }
        let mut out = Vec::new();
        for rel in ech.relations() {
            let mut acc = self.alg.zero();
            let mut terms: Vec<_> = rel.iter().collect();
            terms.sort_by_key(|(i, _)| **i);
            for (i, c) in terms {
                acc = acc.try_add(&vs[*i].1.scale(c))?;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Each `B_{n,k}` generator is annihilated by every nonnegative mode of every
/// diagonal current; the diagonal currents have level `k`.
pub fn verify_b_generators(n: usize, k: RatFunc) -> Result<Report> {
    let m = TensorModel::new(n, k)?;
    let mut r = Report::new("bgens", format!("n={n}, k={}", m.k));
    diagonal_level_checks(&m, &mut r)?;
    for (name, f) in m.b_generators()? {
        let d = m.defects(&f)?;
        let detail = d.first().map(|(id, p)| format!("{id} = {p}"));
        r.push_bool(format!("{name} in commutant"), d.is_empty(), detail);
    }
    Ok(r.finish())
}

fn diagonal_level_checks(m: &TensorModel, r: &mut Report) -> Result<()> {
    let n = m.n;
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    for (family, level) in [(&m.currents, m.k.clone()), (&m.free_currents, RatFunc::zero())] {
        let tag = if level.is_zero() { "free" } else { "diagonal" };
        for i in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    for q in 1..=n {
                        let mut p1 = m.alg.zero();
                        if j == l {
                            p1 = p1.try_add(&family[idx(i, q)])?;
                        }
                        if i == q {
                            p1 = p1.try_sub(&family[idx(l, j)])?;
                        }
                        let p2 = if j == l && i == q { m.alg.scalar(level.clone()) } else { m.alg.zero() };
                        r.check_ope(format!("{tag} X[{i},{j}] X[{l},{q}]"), &m.alg, &family[idx(i, j)], &family[idx(l, q)], &[(2, p2), (1, p1)]);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Each pole among `Ẽ, Ñ, Ψ̃^±, F̃^±`, written in normally ordered words of
/// these fields, has a limit as `k → ∞` that reproduces the pole among their
/// `φ`-projections.
pub fn b_limit_check(n: usize) -> Result<Report> {
    let m = TensorModel::symbolic(n)?;
    let gens = m.b_generators()?;
    let images: Vec<(String, FieldExpr)> = gens.iter().map(|(s, f)| (s.clone(), m.phi(f))).collect();
    crate::lattice_screening::limit_report("b-limit", n, &m.alg, &gens, &m.alg, &images)
}

/// `φ` is injective on the weight-`w` commutant, and the commutant has the
/// dimension of the weight-`w` invariants of `ℱ`.
pub fn verify_commutant_invariants(n: usize, ws: &[Weight]) -> Result<Report> {
    let m = TensorModel::symbolic(n)?;
    let mut r = Report::new("commutant", format!("n={n}, k={}", m.k));
    for &w in ws {
        let basis = m.commutant_basis(w)?;
        let proj: Vec<SparseVec<Mono, RatFunc>> = basis.iter().map(|v| m.phi(v).monomials().into_iter().collect()).collect();
        let rank = crate::linalg::rank(proj);
        r.push_bool(format!("phi injective at weight {w}"), rank == basis.len(), Some(format!("rank {rank} of {}", basis.len())));
        let inv = crate::invariant_oracle::invariant_dim(n, w)?;
        r.push_bool(format!("dim at weight {w}"), inv == basis.len(), Some(format!("{} vs {inv}", basis.len())));
    }
    let ts = m.t_fields()?;
    for (name, t) in &ts[..4] {
        let d = m.defects(t)?;
        r.push_bool(format!("{name} in commutant"), d.is_empty(), d.first().map(|(id, p)| format!("{id} = {p}")));
    }
    let (name, t01) = &ts[4];
    let j01 = j_field(&m.alg, n, JLabel::Zero, 1)?;
    let lift = m.commutant_lift(&j01)?;
    let diff = lift.try_sub(t01)?;
    r.push_bool(format!("{name} lifts to the commutant"), m.in_commutant(&lift)? && m.phi(&lift) == j01, None);
    let vanishing = diff.coefficients().all(|c| c.limit_at_infinity().is_ok_and(|x| x.is_zero()));
    r.push_bool(format!("{name} lift differs by affine terms vanishing as k -> oo"), m.phi(&diff).is_zero() && vanishing, Some(diff.to_string()));
    Ok(r.finish())
}

#[cfg(test)]
mod tests;
