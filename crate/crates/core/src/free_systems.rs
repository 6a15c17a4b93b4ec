//! The rank-n bc system, βγ system and their tensor product, with the
//! conformal structures and the gl(1|1) and N=2 subalgebras inside the
//! `GL_n` invariants.

use crate::coeff::RatFunc;
use crate::report::Report;
use crate::vertex::{Algebra, AlgebraHandle, FieldExpr, GeneratorSymbol, LinearField, PairOpe, Weight};
use crate::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeKind {
    Bc,
    BetaGamma,
    Bcbg,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreeSystemSpec {
    pub rank: usize,
    pub kind: FreeKind,
    pub lambda_s: Weight,
    pub lambda_e: Weight,
}

impl FreeSystemSpec {
    pub fn new(rank: usize, kind: FreeKind) -> Self {
        FreeSystemSpec { rank, kind, lambda_s: Weight::new(5, 6), lambda_e: Weight::new(1, 3) }
    }

    pub fn bcbg(rank: usize) -> Self {
        Self::new(rank, FreeKind::Bcbg)
    }
}

fn has_bc(kind: FreeKind) -> bool {
    kind != FreeKind::BetaGamma
}

fn has_bg(kind: FreeKind) -> bool {
    kind != FreeKind::Bc
}

pub(crate) fn w2r(w: Weight) -> RatFunc {
    RatFunc::frac(*w.numer(), *w.denom())
}

/// Registers the free system. Generators are ordered b, β, c, γ (each by index).
pub fn build_free(spec: &FreeSystemSpec) -> Result<AlgebraHandle> {
    let (gens, pairs) = free_table(spec, 0)?;
    let tag = match spec.kind {
        FreeKind::Bc => "bc",
        FreeKind::BetaGamma => "betagamma",
        FreeKind::Bcbg => "bcbg",
    };
    Algebra::register(&format!("{tag}:{}", spec.rank), gens, pairs)
}

/// Generators and pairings of the free system, with ids starting at `offset`.
pub(crate) fn free_table(spec: &FreeSystemSpec, offset: u32) -> Result<(Vec<GeneratorSymbol>, Vec<(u32, u32, PairOpe)>)> {
    let n = spec.rank;
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let one = Weight::new(1, 1);
    let mut families: Vec<(&str, bool, Weight)> = Vec::new();
    if has_bc(spec.kind) {
        families.push(("b", true, spec.lambda_e));
    }
    if has_bg(spec.kind) {
        families.push(("beta", false, spec.lambda_s));
    }
    if has_bc(spec.kind) {
        families.push(("c", true, one - spec.lambda_e));
    }
    if has_bg(spec.kind) {
        families.push(("gamma", false, one - spec.lambda_s));
    }
    let mut gens = Vec::new();
    for (name, odd, w) in &families {
        for i in 1..=n {
            gens.push(GeneratorSymbol::new(name, &[i as i32], *odd, *w));
        }
    }
    let pos = |name: &str| families.iter().position(|f| f.0 == name).map(|p| offset + (p * n) as u32);
    let unit = PairOpe::new(vec![LinearField::scalar(RatFunc::one())]);
    let mut pairs = Vec::new();
    for (x, y) in [("b", "c"), ("beta", "gamma")] {
        if let (Some(px), Some(py)) = (pos(x), pos(y)) {
            for i in 0..n as u32 {
                pairs.push((px + i, py + i, unit.clone()));
            }
        }
    }
    Ok((gens, pairs))
}

/// Number of indices of the family `name` present in the algebra.
pub fn rank_of(alg: &AlgebraHandle, name: &str) -> usize {
    (1..).take_while(|i| alg.lookup(&format!("{name}[{i}]")).is_ok()).count()
}

fn family(alg: &AlgebraHandle, name: &str, i: usize) -> Result<FieldExpr> {
    alg.gen(&format!("{name}[{i}]"))
}

/// Σ_i :x^i ∂^k y^i:
pub fn bilinear(alg: &AlgebraHandle, n: usize, x: &str, y: &str, k: u32) -> Result<FieldExpr> {
    let mut acc = alg.zero();
    for i in 1..=n {
        let dy = alg.derivative_n(&family(alg, y, i)?, k)?;
        acc = acc.try_add(&alg.wick(&family(alg, x, i)?, &dy)?)?;
    }
    Ok(acc)
}

/// `λ Σ :β∂γ: + (λ−1) Σ :∂βγ:`
pub fn conformal_vector_s(alg: &AlgebraHandle, lambda: Weight) -> Result<FieldExpr> {
    let n = rank_of(alg, "beta");
    let mut acc = alg.zero();
    let l = w2r(lambda);
    let lm1 = &l - &RatFunc::one();
    for i in 1..=n {
        let (b, g) = (family(alg, "beta", i)?, family(alg, "gamma", i)?);
        acc = acc.try_add(&alg.wick(&b, &alg.derivative(&g)?)?.scale(&l))?;
        acc = acc.try_add(&alg.wick(&alg.derivative(&b)?, &g)?.scale(&lm1))?;
    }
    Ok(acc)
}

/// `(1−λ) Σ :∂b c: − λ Σ :b∂c:`
pub fn conformal_vector_e(alg: &AlgebraHandle, lambda: Weight) -> Result<FieldExpr> {
    let n = rank_of(alg, "b");
    let mut acc = alg.zero();
    let l = w2r(lambda);
    let om = &RatFunc::one() - &l;
    for i in 1..=n {
        let (b, c) = (family(alg, "b", i)?, family(alg, "c", i)?);
        acc = acc.try_add(&alg.wick(&alg.derivative(&b)?, &c)?.scale(&om))?;
        acc = acc.try_sub(&alg.wick(&b, &alg.derivative(&c)?)?.scale(&l))?;
    }
    Ok(acc)
}

/// Sum of the βγ and bc conformal vectors for whichever systems are present.
pub fn conformal_vector(alg: &AlgebraHandle, lambda_s: Weight, lambda_e: Weight) -> Result<FieldExpr> {
    let mut l = alg.zero();
    if rank_of(alg, "beta") > 0 {
        l = l.try_add(&conformal_vector_s(alg, lambda_s)?)?;
    }
    if rank_of(alg, "b") > 0 {
        l = l.try_add(&conformal_vector_e(alg, lambda_e)?)?;
    }
    Ok(l)
}

/// `L^ℱ = L^𝒮_{5/6} + L^ℰ_{1/3}`
pub fn default_conformal_vector(alg: &AlgebraHandle) -> Result<FieldExpr> {
    conformal_vector(alg, Weight::new(5, 6), Weight::new(1, 3))
}

/// Twice the vacuum coefficient of `L∘₃L`, after checking the Virasoro OPE.
pub fn central_charge(l: &FieldExpr) -> Result<RatFunc> {
    let alg = l.algebra().clone();
    let not = |why: &str| Err(Error::NotVirasoro(why.into()));
    if l.is_zero() {
        return not("zero field");
    }
    let ope = alg.ope(l, l)?;
    if ope.max_order() > 4 {
        return not("pole of order > 4 in L(z)L(w)");
    }
    let p = |o: u32| ope.pole(o).cloned().unwrap_or_else(|| alg.zero());
    if !p(1).try_sub(&alg.derivative(l)?)?.is_zero() {
        return not("L∘₀L ≠ ∂L");
    }
    if !p(2).try_sub(&l.scale_int(2))?.is_zero() {
        return not("L∘₁L ≠ 2L");
    }
    if !p(3).is_zero() {
        return not("L∘₂L ≠ 0");
    }
    let c4 = p(4);
    if !c4.is_scalar() {
        return not("L∘₃L is not a multiple of the identity");
    }
    Ok(c4.scalar_part().scale_rational(&crate::coeff::q(2, 1)))
}

/// `L∘₁a = w·a`, `L∘₀a = ∂a` and no higher poles.
pub fn check_primary(l: &FieldExpr, a: &FieldExpr, w: Weight) -> Result<bool> {
    let alg = l.algebra().clone();
    let ope = alg.ope(l, a)?;
    if ope.max_order() > 2 {
        return Ok(false);
    }
    let p = |o: u32| ope.pole(o).cloned().unwrap_or_else(|| alg.zero());
    Ok(p(2).try_sub(&a.scale(&w2r(w)))?.is_zero() && p(1).try_sub(&alg.derivative(a)?)?.is_zero())
}

/// The four families of `GL_n`-invariant bilinears.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JLabel {
    Zero,
    One,
    Plus,
    Minus,
}

impl JLabel {
    pub const ALL: [JLabel; 4] = [JLabel::Zero, JLabel::One, JLabel::Plus, JLabel::Minus];

    pub fn is_odd(self) -> bool {
        matches!(self, JLabel::Plus | JLabel::Minus)
    }

    pub fn index(self) -> u32 {
        self as u32
    }

    pub fn from_index(i: u32) -> JLabel {
        Self::ALL[i as usize % 4]
    }

    pub fn symbol(self) -> &'static str {
        ["0", "1", "+", "-"][self as usize]
    }

    pub fn parse(s: &str) -> Option<JLabel> {
        match s.trim() {
            "0" => Some(JLabel::Zero),
            "1" => Some(JLabel::One),
            "+" | "p" | "plus" => Some(JLabel::Plus),
            "-" | "m" | "minus" => Some(JLabel::Minus),
            _ => None,
        }
    }

    /// Weight of the generator `J^{a,k}`, in halves.
    pub fn weight_halves(self, k: u32) -> i64 {
        2 * k as i64 + [2, 2, 1, 3][self as usize]
    }

    /// Label swap `0↔1`, `+↔−`.
    pub fn swapped(self) -> JLabel {
        [JLabel::One, JLabel::Zero, JLabel::Minus, JLabel::Plus][self as usize]
    }
}

impl fmt::Display for JLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The free-field image of `j^{a,k}`.
pub fn j_field(alg: &AlgebraHandle, n: usize, a: JLabel, k: u32) -> Result<FieldExpr> {
    Ok(match a {
        JLabel::Zero => bilinear(alg, n, "b", "c", k)?.scale_int(-1),
        JLabel::One => bilinear(alg, n, "beta", "gamma", k)?,
        JLabel::Plus => bilinear(alg, n, "b", "gamma", k)?.scale_int(-1),
        JLabel::Minus => bilinear(alg, n, "beta", "c", k)?,
    })
}

#[derive(Debug, Clone)]
pub struct Gl11Fields {
    pub j00: FieldExpr,
    pub j10: FieldExpr,
    pub jp: FieldExpr,
    pub jm: FieldExpr,
}

pub fn gl11_fields(alg: &AlgebraHandle, n: usize) -> Result<Gl11Fields> {
    Ok(Gl11Fields {
        j00: j_field(alg, n, JLabel::Zero, 0)?,
        j10: j_field(alg, n, JLabel::One, 0)?,
        jp: j_field(alg, n, JLabel::Plus, 0)?,
        jm: j_field(alg, n, JLabel::Minus, 0)?,
    })
}

pub fn verify_gl11(f: &Gl11Fields, c: &RatFunc) -> Report {
    let alg = f.j00.algebra().clone();
    let mut r = Report::new("gl11", alg.tag());
    let cc = alg.scalar(c.clone());
    let Gl11Fields { j00, j10, jp, jm } = f;
    r.check_ope("J00 J00", &alg, j00, j00, &[(2, cc.clone())]);
    r.check_ope("J10 J10", &alg, j10, j10, &[(2, -cc.clone())]);
    r.check_ope("J00 J-0", &alg, j00, jm, &[(1, jm.clone())]);
    r.check_ope("J00 J+0", &alg, j00, jp, &[(1, -jp.clone())]);
    r.check_ope("J10 J-0", &alg, j10, jm, &[(1, -jm.clone())]);
    r.check_ope("J10 J+0", &alg, j10, jp, &[(1, jp.clone())]);
    r.check_ope("J+0 J-0", &alg, jp, jm, &[(2, cc), (1, -(j00.clone() + j10.clone()))]);
    r.finish()
}

#[derive(Debug, Clone)]
pub struct N2Fields {
    pub f: FieldExpr,
    pub l: FieldExpr,
    pub gp: FieldExpr,
    pub gm: FieldExpr,
}

/// Images of `F, L, G^±` under the embedding into the invariant bilinears.
pub fn n2_fields(alg: &AlgebraHandle, n: usize) -> Result<N2Fields> {
    let j = |a, k| j_field(alg, n, a, k);
    let (j00, j10) = (j(JLabel::Zero, 0)?, j(JLabel::One, 0)?);
    let f = j00.scale_frac(2, 3) - j10.scale_frac(1, 3);
    let l = j(JLabel::Zero, 1)? + j(JLabel::One, 1)?
        - alg.derivative(&j00)?.scale_frac(2, 3)
        - alg.derivative(&j10)?.scale_frac(1, 6);
    let gp = j(JLabel::Minus, 0)?;
    let gm = alg.derivative(&j(JLabel::Plus, 0)?)?.scale_frac(1, 3) - j(JLabel::Plus, 1)?;
    Ok(N2Fields { f, l, gp, gm })
}

pub fn verify_n2(fs: &N2Fields, c: &RatFunc) -> Report {
    let alg = fs.f.algebra().clone();
    let mut r = Report::new("n2", alg.tag());
    let c3 = alg.scalar(c / &RatFunc::from_int(3));
    let N2Fields { f, l, gp, gm } = fs;
    match central_charge(l) {
        Ok(cl) => r.push_scalar("L Virasoro, central charge c", &cl, c),
        Err(e) => r.push_bool("L Virasoro, central charge c", false, Some(e.to_string())),
    }
    for (id, x, w) in [("F primary of weight 1", f, Weight::new(1, 1)), ("G+ primary of weight 3/2", gp, Weight::new(3, 2)), ("G- primary of weight 3/2", gm, Weight::new(3, 2))] {
        let ok = check_primary(l, x, w);
        r.push_bool(id, matches!(ok, Ok(true)), ok.err().map(|e| e.to_string()));
    }
    r.check_ope("F F", &alg, f, f, &[(2, c3.clone())]);
    r.check_ope("G+ G+", &alg, gp, gp, &[]);
    r.check_ope("G- G-", &alg, gm, gm, &[]);
    r.check_ope("F G+", &alg, f, gp, &[(1, gp.clone())]);
    r.check_ope("F G-", &alg, f, gm, &[(1, -gm.clone())]);
    let res = alg.derivative(f).map(|df| l.clone() + df.scale_frac(1, 2));
    match res {
        Ok(res) => r.check_ope("G+ G-", &alg, gp, gm, &[(3, c3), (2, f.clone()), (1, res)]),
        Err(e) => r.push_bool("G+ G-", false, Some(e.to_string())),
    }
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_field;

    fn w(n: i64, d: i64) -> Weight {
        Weight::new(n, d)
    }

    #[test]
    fn generators_and_weights() {
        let a = build_free(&FreeSystemSpec::bcbg(1)).unwrap();
        let ws: Vec<_> = ["b[1]", "c[1]", "beta[1]", "gamma[1]"].iter().map(|s| a.gen(s).unwrap().weight().unwrap()).collect();
        assert_eq!(ws, vec![w(1, 3), w(2, 3), w(5, 6), w(1, 6)]);
        let a2 = build_free(&FreeSystemSpec::bcbg(2)).unwrap();
        assert!(a2.ope(&a2.gen("b[1]").unwrap(), &a2.gen("c[2]").unwrap()).unwrap().is_regular());
        let bg = build_free(&FreeSystemSpec::new(1, FreeKind::BetaGamma)).unwrap();
        let beta = bg.gen("beta[1]").unwrap();
        assert!(bg.ope(&beta, &beta).unwrap().is_regular());
        assert!(bg.gen("b[1]").is_err());
        assert!(build_free(&FreeSystemSpec::bcbg(0)).is_err());
    }

    #[test]
    fn conformal_vectors() {
        let a = build_free(&FreeSystemSpec::new(1, FreeKind::BetaGamma)).unwrap();
        let l = conformal_vector(&a, w(5, 6), w(1, 3)).unwrap();
        assert_eq!(l, parse_field(&a, "(5/6)*no(beta[1],d(gamma[1])) - (1/6)*no(d(beta[1]),gamma[1])").unwrap());
        let a2 = build_free(&FreeSystemSpec::new(2, FreeKind::BetaGamma)).unwrap();
        assert_eq!(central_charge(&conformal_vector_s(&a2, w(5, 6)).unwrap()).unwrap(), RatFunc::frac(2, 3));
        let e = build_free(&FreeSystemSpec::new(1, FreeKind::Bc)).unwrap();
        assert_eq!(central_charge(&conformal_vector_e(&e, w(1, 3)).unwrap()).unwrap(), RatFunc::frac(2, 3));
        let f = build_free(&FreeSystemSpec::bcbg(2)).unwrap();
        assert_eq!(central_charge(&default_conformal_vector(&f).unwrap()).unwrap(), RatFunc::from_int(2));
        assert!(matches!(central_charge(&f.zero()), Err(Error::NotVirasoro(_))));
    }

    #[test]
    fn central_charge_family() {
        for n in 1..=3usize {
            let s = build_free(&FreeSystemSpec::new(n, FreeKind::BetaGamma)).unwrap();
            let e = build_free(&FreeSystemSpec::new(n, FreeKind::Bc)).unwrap();
            for (p, d) in [(0, 1), (1, 3), (1, 2), (5, 6), (1, 1)] {
                let lam = w(p, d);
                let l = RatFunc::frac(p, d);
                let expect = RatFunc::from_int(n as i64) * (RatFunc::from_int(12) * &l * &l - RatFunc::from_int(12) * &l + RatFunc::from_int(2));
                assert_eq!(central_charge(&conformal_vector_s(&s, lam).unwrap()).unwrap(), expect);
                assert_eq!(central_charge(&conformal_vector_e(&e, lam).unwrap()).unwrap(), -expect);
            }
        }
    }

    #[test]
    fn primaries() {
        let a = build_free(&FreeSystemSpec::bcbg(1)).unwrap();
        let l = default_conformal_vector(&a).unwrap();
        assert!(check_primary(&l, &a.gen("beta[1]").unwrap(), w(5, 6)).unwrap());
        assert!(check_primary(&l, &a.gen("c[1]").unwrap(), w(2, 3)).unwrap());
        assert!(check_primary(&l, &a.one(), w(0, 1)).unwrap());
        let bc = parse_field(&a, "no(b[1],c[1])").unwrap();
        assert!(!check_primary(&l, &bc, w(1, 1)).unwrap());
    }

    #[test]
    fn gl11_and_n2() {
        for n in 1..=3usize {
            let a = build_free(&FreeSystemSpec::bcbg(n)).unwrap();
            let r = verify_gl11(&gl11_fields(&a, n).unwrap(), &RatFunc::from_int(n as i64));
            assert!(r.passed(), "{r}");
            assert_eq!(r.checks.len(), 7);
        }
        for n in 1..=2usize {
            let a = build_free(&FreeSystemSpec::bcbg(n)).unwrap();
            let fs = n2_fields(&a, n).unwrap();
            let r = verify_n2(&fs, &RatFunc::from_int(n as i64));
            assert!(r.passed(), "{r}");
            assert_eq!(fs.l, default_conformal_vector(&a).unwrap());
        }
        let a = build_free(&FreeSystemSpec::bcbg(1)).unwrap();
        let r = verify_gl11(&gl11_fields(&a, 1).unwrap(), &RatFunc::from_int(2));
        assert!(!r.passed());
    }

    #[test]
    fn gl11_spot_values() {
        let a = build_free(&FreeSystemSpec::bcbg(2)).unwrap();
        let g = gl11_fields(&a, 2).unwrap();
        assert_eq!(a.circle(&g.jp, &g.jm, 1).unwrap(), a.one().scale_int(2));
        assert_eq!(a.circle(&g.jp, &g.jm, 0).unwrap(), -(g.j00.clone() + g.j10.clone()));
        let a1 = build_free(&FreeSystemSpec::bcbg(1)).unwrap();
        let g1 = gl11_fields(&a1, 1).unwrap();
        assert!(a1.circle(&g1.j00, &g1.j10, 1).unwrap().is_zero());
    }
}
