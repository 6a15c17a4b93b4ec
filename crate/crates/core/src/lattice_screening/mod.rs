//! Heisenberg fields with a prescribed pairing, exponential fields, and the
//! screening charges of the purely odd root system of gl(n|n).
//!
//! Only `∂φ` is a generator. An exponential `e^λ` is the Fock vacuum of
//! momentum `λ`, so products with a vacuum-module field on the left are engine
//! products; products with the exponential on the left go through
//! skew-symmetry, and exponential against exponential through the expansion
//! of `:e^{λφ(z)}e^{μφ(w)}:`.

mod w2;
mod wfields;
mod words;

pub use w2::{verify_w2_opes, verify_w2_table, verify_w2_table_with, NamedFields, W2Basis, W2_GENERATORS, W2_TABLE, X0_DEF, X2_DEF, XM_DEF, XP_DEF};
pub use wfields::{
    free_images, verify_kernel_theorem, verify_kernels_of, verify_lemma_q1, verify_lemma_q2, w_limit_check, ScreeningModel, WGenerators,
};
pub(crate) use wfields::limit_report;
pub use words::{Words, WordBasis};

use crate::coeff::{factorial, RatFunc};
use crate::report::Report;
use crate::vertex::{Algebra, AlgebraHandle, FieldExpr, GenId, GeneratorSymbol, LinearField, Momentum, PairOpe, Weight};
use crate::{Error, Result};
use num_rational::{BigRational, Rational64};

#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergLattice {
    /// Labels of the registered currents `∂φ_a`.
    pub labels: Vec<String>,
    /// `φ_a(z)φ_b(w) ∼ G_{ab} ln(z−w)`.
    pub pairing: Vec<Vec<Rational64>>,
    pub bc_rank: usize,
}

impl HeisenbergLattice {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// The `X/Y` basis: `Y_i(z)X_j(w) ∼ δ_{ij} ln(z−w)`, plus `n` bc pairs.
    pub fn xy(n: usize) -> Self {
        let mut labels: Vec<String> = (1..=n).map(|i| format!("dX[{i}]")).collect();
        labels.extend((1..=n).map(|i| format!("dY[{i}]")));
        let mut pairing = vec![vec![Rational64::from_integer(0); 2 * n]; 2 * n];
        for i in 0..n {
            pairing[i][n + i] = Rational64::from_integer(1);
            pairing[n + i][i] = Rational64::from_integer(1);
        }
        HeisenbergLattice { labels, pairing, bc_rank: n }
    }

    /// Orthonormal bosons `dphi[i]` without bc pairs.
    pub fn orthonormal(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("dphi[{i}]")).collect();
        let pairing = (0..n)
            .map(|i| (0..n).map(|j| Rational64::from_integer((i == j) as i64)).collect())
            .collect();
        HeisenbergLattice { labels, pairing, bc_rank: 0 }
    }
}

/// Registers `∂φ_a` (weight 1) and the bc pairs (`b` of weight 1, `c` of weight 0).
pub fn build_lattice(lat: &HeisenbergLattice, tag: &str) -> Result<AlgebraHandle> {
    let r = lat.rank();
    if lat.pairing.len() != r || lat.pairing.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidArgument("pairing matrix has the wrong shape".into()));
    }
    for a in 0..r {
        for b in 0..a {
            if lat.pairing[a][b] != lat.pairing[b][a] {
                return Err(Error::InvalidArgument("pairing matrix is not symmetric".into()));
            }
        }
    }
    let mut gens: Vec<GeneratorSymbol> =
        lat.labels.iter().map(|l| GeneratorSymbol::new(l, &[], false, Weight::from_integer(1)).with_label(l.clone())).collect();
    for i in 1..=lat.bc_rank {
        gens.push(GeneratorSymbol::new("b", &[i as i32], true, Weight::from_integer(1)));
    }
    for i in 1..=lat.bc_rank {
        gens.push(GeneratorSymbol::new("c", &[i as i32], true, Weight::from_integer(0)));
    }
    let mut pairs = Vec::new();
    for a in 0..r {
        for b in a..r {
            let g = lat.pairing[a][b];
            if g != Rational64::from_integer(0) {
                let ope = PairOpe::new(vec![LinearField::default(), LinearField::scalar(RatFunc::frac(*g.numer(), *g.denom()))]);
                pairs.push((a as GenId, b as GenId, ope));
            }
        }
    }
    let unit = PairOpe::new(vec![LinearField::scalar(RatFunc::one())]);
    for i in 0..lat.bc_rank {
        pairs.push(((r + i) as GenId, (r + lat.bc_rank + i) as GenId, unit.clone()));
    }
    Algebra::register(tag, gens, pairs)
}

/// The algebra `M` generated by `∂X_i, ∂Y_i, b^i, c^i`.
pub fn build_m(n: usize) -> Result<AlgebraHandle> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    build_lattice(&HeisenbergLattice::xy(n), &format!("M:{n}"))
}

/// `λᵀGμ`, read off from the double poles of the registered currents.
pub fn pairing(alg: &AlgebraHandle, l: &Momentum, m: &Momentum) -> Result<RatFunc> {
    let mut acc = RatFunc::zero();
    for (a, x) in l {
        for (b, y) in m {
            if let Some(f) = alg.pair(*a, *b)?.poles.get(1) {
                acc += &(&(&f.scalar * x) * y);
            }
        }
    }
    Ok(acc)
}

fn integral(p: &RatFunc) -> Result<i64> {
    p.as_rational()
        .filter(|q| q.is_integer())
        .and_then(|q| i64::try_from(q.to_integer()).ok())
        .ok_or_else(|| Error::NonIntegralPairing(p.to_string()))
}

/// `:P e^{λφ}:` with `P` a field of the vacuum module.
#[derive(Debug, Clone)]
pub struct ExponentialField {
    pub momentum: Momentum,
    pub prefactor: FieldExpr,
}

impl ExponentialField {
    pub fn new(momentum: Momentum, prefactor: FieldExpr) -> Self {
        ExponentialField { momentum, prefactor }
    }

    pub fn pure(alg: &AlgebraHandle, momentum: Momentum) -> Self {
        ExponentialField { momentum, prefactor: alg.one() }
    }

    pub fn algebra(&self) -> &AlgebraHandle {
        self.prefactor.algebra()
    }

    /// The state `P_(−1) e^λ`.
    pub fn state(&self) -> Result<FieldExpr> {
        let alg = self.algebra();
        alg.circle(&self.prefactor, &alg.exponential(&self.momentum), -1)
    }

    /// Parity of `e^λ` is that of `⟨λ,λ⟩`, which must be an integer.
    pub fn is_odd(&self) -> Result<bool> {
        let self_pairing = integral(&pairing(self.algebra(), &self.momentum, &self.momentum)?)?;
        Ok(self.prefactor.is_odd() ^ (self_pairing.rem_euclid(2) == 1))
    }
}

/// `X∘_n A` for an exponential field `X` and a vacuum-module field `A`, from
/// `X_(n)A = ±Σ_j (−1)^{n+j+1} ∂^{(j)}(A_(n+j)X)`.
pub fn exp_circle(x: &ExponentialField, a: &FieldExpr, n: i32) -> Result<FieldExpr> {
    let alg = x.algebra().clone();
    if a.vac() != 0 {
        let mom = alg.momentum(a.vac());
        integral(&pairing(&alg, &x.momentum, &mom)?)?;
        return Err(Error::InvalidArgument("the argument must lie in the vacuum module".into()));
    }
    if n < 0 {
        return Err(Error::InvalidArgument("only nonnegative products are supported".into()));
    }
    let xs = x.state()?;
    if a.is_zero() || xs.is_zero() {
        return Ok(alg.zero());
    }
    let a_odd = a.parity().ok_or_else(|| Error::InvalidArgument("argument of mixed parity".into()))?;
    let sign = if x.is_odd()? && a_odd { -1 } else { 1 };
    let bound = (max_weight(a) + max_weight(&xs)).ceil().to_integer() as i32;
    let mut acc = alg.zero();
    for j in 0..=bound {
        let inner = alg.circle(a, &xs, n + j)?;
        if inner.is_zero() {
            continue;
        }
        let d = alg.derivative_n(&inner, j as u32)?;
        let s = if (n + j + 1) % 2 == 0 { sign } else { -sign };
        let c = BigRational::new(s.into(), factorial(j as u32));
        acc = acc.try_add(&d.scale(&RatFunc::from_rational(c)))?;
    }
    Ok(acc)
}

fn max_weight(x: &FieldExpr) -> Weight {
    x.terms()
        .iter()
        .map(|(ls, _)| {
            ls.iter().fold(Weight::from_integer(0), |acc, l| {
                acc + x.algebra().symbol(l.gen).weight + Weight::from_integer(l.deriv as i64)
            })
        })
        .max()
        .unwrap_or_default()
}

/// `Q = norm · Res_z X(z)`.
#[derive(Debug, Clone)]
pub struct ScreeningCharge {
    pub label: String,
    pub current: ExponentialField,
    /// Kept as metadata; kernels do not depend on it.
    pub normalization: RatFunc,
}

impl ScreeningCharge {
    pub fn apply(&self, a: &FieldExpr) -> Result<FieldExpr> {
        screening_apply(self, a)
    }
}

/// The residue of `X(z)A(w)`, i.e. the coefficient of `(z−w)^{−1}`.
pub fn screening_apply(q: &ScreeningCharge, a: &FieldExpr) -> Result<FieldExpr> {
    exp_circle(&q.current, a, 0)
}

/// `Σ_{r≥0} x^r S_r = exp(Σ_{m≥1} x^m ∂^{m−1}(λ·∂φ)/m!)`, computed up to `r = top`.
fn schur_fields(alg: &AlgebraHandle, l: &Momentum, top: usize) -> Result<Vec<FieldExpr>> {
    let mut lin = alg.zero();
    for (g, c) in l {
        lin = lin.try_add(&alg.gen_id(*g).scale(c))?;
    }
    let mut a = vec![alg.zero()];
    for m in 1..=top {
        let d = alg.derivative_n(&lin, m as u32 - 1)?;
        a.push(d.scale(&RatFunc::from_rational(BigRational::new(1.into(), factorial(m as u32)))));
    }
    let mut s = vec![alg.one()];
    for r in 1..=top {
        let mut acc = alg.zero();
        for m in 1..=r {
            let t = alg.wick(&a[m], &s[r - m])?;
            acc = acc.try_add(&t.scale_int(m as i64))?;
        }
        s.push(acc.scale_frac(1, r as i64));
    }
    Ok(s)
}

/// `e^λ∘_n e^μ` from `e^λ(z)e^μ(w) = (z−w)^{⟨λ,μ⟩} :e^{λφ(z)}e^{μφ(w)}:`.
/// The pairing must be an integer.
pub fn exp_exp_circle(alg: &AlgebraHandle, l: &Momentum, m: &Momentum, n: i32) -> Result<FieldExpr> {
    let p = integral(&pairing(alg, l, m)?)?;
    let r = -(n as i64) - 1 - p;
    if r < 0 {
        return Ok(alg.zero());
    }
    let s = schur_fields(alg, l, r as usize)?;
    let mut sum = l.clone();
    sum.extend(m.iter().cloned());
    let mut merged: Momentum = Vec::new();
    for (g, c) in sum {
        match merged.iter_mut().find(|(h, _)| *h == g) {
            Some(e) => e.1 = &e.1 + &c,
            None => merged.push((g, c)),
        }
    }
    alg.circle(&s[r as usize], &alg.exponential(&merged), -1)
}

/// Bosonization of a single bc pair by `e^{∓φ}` with `φφ ∼ ln`.
pub fn bosonization_check() -> Result<Report> {
    let mut r = Report::new("bosonization", "dphi[1]");
    let alg = build_lattice(&HeisenbergLattice::orthonormal(1), "H:1")?;
    let g = alg.lookup("dphi[1]")?;
    let (plus, minus): (Momentum, Momentum) = (vec![(g, RatFunc::one())], vec![(g, RatFunc::from_int(-1))]);
    let dphi = alg.gen_id(g);
    r.push_eq("e^-phi o0 e^phi = 1", &exp_exp_circle(&alg, &minus, &plus, 0)?, &alg.one());
    r.push_eq("e^-phi o(-1) e^phi = -dphi", &exp_exp_circle(&alg, &minus, &plus, -1)?, &dphi.scale_int(-1));
    r.push_eq("e^phi o0 e^-phi = 1", &exp_exp_circle(&alg, &plus, &minus, 0)?, &alg.one());
    r.push_eq("e^phi o(-1) e^-phi = dphi", &exp_exp_circle(&alg, &plus, &minus, -1)?, &dphi);
    for n in 0..4 {
        r.push_bool(format!("e^phi o{n} e^phi = 0"), exp_exp_circle(&alg, &plus, &plus, n)?.is_zero(), None);
    }
    r.push_scalar("pairing (-1)(+1) is the integer -1", &pairing(&alg, &minus, &plus)?, &RatFunc::from_int(-1));
    let half: Momentum = vec![(g, RatFunc::frac(1, 2))];
    r.push_bool(
        "non-integral pairing is refused",
        matches!(exp_exp_circle(&alg, &half, &plus, 0), Err(Error::NonIntegralPairing(_))),
        None,
    );
    let t = alg.wick(&dphi, &dphi)?.scale_frac(1, 2);
    for (name, mom) in [("e^phi", &plus), ("e^-phi", &minus)] {
        let e = alg.exponential(mom);
        r.push_eq(format!("T o1 {name} = (1/2) {name}"), &alg.circle(&t, &e, 1)?, &e.scale_frac(1, 2));
        r.push_eq(format!("T o0 {name} = d {name}"), &alg.circle(&t, &e, 0)?, &alg.derivative(&e)?);
        r.push_bool(format!("T o2 {name} = 0"), alg.circle(&t, &e, 2)?.is_zero(), None);
    }
    Ok(r.finish())
}

#[cfg(test)]
mod tests;
