//! Relations of the simple quotient at `c = n`, computed against the
//! free-field realization.

use super::realize::Realization;
use super::table::{gen_of, jgen};
use crate::coeff::RatFunc;
use crate::free_systems::{bilinear, JLabel};
use crate::linalg::{Echelon, SparseVec};
use crate::report::Report;
use crate::vertex::{AlgebraHandle, FieldExpr, Mono, Weight};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct RelationVector {
    pub expr: FieldExpr,
    pub weight: Weight,
    pub image_zero: bool,
}

pub(crate) fn as_vec(x: &FieldExpr) -> SparseVec<Mono, RatFunc> {
    x.monomials().into_iter().collect()
}

fn combine(alg: &AlgebraHandle, basis: &[FieldExpr], combo: &SparseVec<usize, RatFunc>) -> Result<FieldExpr> {
    let mut idx: Vec<_> = combo.iter().collect();
    idx.sort_by_key(|(i, _)| **i);
    let mut acc = alg.zero();
    for (i, c) in idx {
        acc = acc.try_add(&basis[*i].scale(c))?;
    }
    Ok(acc)
}

/// Kernel of the realization on the weight-`w` PBW subspace.
pub fn relation_space(real: &Realization, w: Weight) -> Result<Vec<RelationVector>> {
    let basis = real.src.weight_basis(w)?;
    let mut ech = Echelon::new();
    for b in &basis {
        ech.push(as_vec(&real.apply(b)?));
    }
    let mut out = Vec::new();
    for rel in ech.relations() {
        let expr = combine(&real.src, &basis, rel)?;
        let image_zero = real.apply(&expr)?.is_zero();
        out.push(RelationVector { expr, weight: w, image_zero });
    }
    Ok(out)
}

/// The listed annihilation operators `J^{a,k}∘_m` (`m > k`, and `m ≥ k` for
/// `a = +`) that keep the weight nonnegative, up to `k ≤ max(2, ⌈w⌉ + 1)`.
pub fn singular_check(v: &FieldExpr) -> Result<bool> {
    let alg = v.algebra().clone();
    let w = v.weight().ok_or_else(|| Error::InvalidArgument("singular_check needs a homogeneous vector".into()))?;
    let wh = (w * Weight::from_integer(2)).to_integer();
    let kmax = 2.max((wh + 1) / 2 + 1) as u32;
    for k in 0..=kmax {
        for a in JLabel::ALL {
            let first = if a == JLabel::Plus { k } else { k + 1 };
            let top = (wh + a.weight_halves(k)) / 2 - 1;
            let op = jgen(&alg, a, k);
            for m in first as i64..=top {
                if !alg.circle(&op, v, m as i32)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Solves `j^{a,m} = P(j^{b,k} : k < n)` in the weight space of `J^{a,m}`.
pub fn decouple(real: &Realization, a: JLabel, m: u32) -> Result<FieldExpr> {
    let n = real.n as u32;
    if m < n {
        return Err(Error::InvalidArgument(format!("decoupling needs m ≥ n = {n}")));
    }
    let w = Weight::new(a.weight_halves(m), 2);
    let basis: Vec<FieldExpr> =
        real.src.weight_basis(w)?.into_iter().filter(|b| !b.uses(|g| gen_of(g).1 >= n)).collect();
    let mut ech = Echelon::new();
    for b in &basis {
        ech.push(as_vec(&real.apply(b)?));
    }
    let target = real.j(a, m)?;
    let combo = ech
        .decompose(as_vec(&target))
        .ok_or_else(|| Error::NoSolution(format!("j^{{{a},{m}}} is not a polynomial in the generators of index < {n}")))?;
    combine(&real.src, &basis, &combo)
}

/// `ω^a_{k,l}` in the basis `∂^i J^{a,k+l−i}`.
pub fn omega_change(real: &Realization, a: JLabel, k: u32, l: u32) -> Result<FieldExpr> {
    let dst = &real.dst;
    let (x, y) = match a {
        JLabel::Zero => ("b", "c"),
        JLabel::One => ("beta", "gamma"),
        JLabel::Plus => ("b", "gamma"),
        JLabel::Minus => ("beta", "c"),
    };
    let mut omega = dst.zero();
    for i in 1..=real.n {
        let xi = dst.derivative_n(&dst.gen(&format!("{x}[{i}]"))?, k)?;
        let yi = dst.derivative_n(&dst.gen(&format!("{y}[{i}]"))?, l)?;
        omega = omega.try_add(&dst.wick(&xi, &yi)?)?;
    }
    let m = k + l;
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    for i in 0..=m {
        let b = real.src.derivative_n(&jgen(&real.src, a, m - i), i)?;
        ech.push(as_vec(&real.apply(&b)?));
        basis.push(b);
    }
    let combo = ech.decompose(as_vec(&omega)).ok_or_else(|| Error::NoSolution("ω not in the span".into()))?;
    combine(&real.src, &basis, &combo)
}

/// `Σ :x^i ∂^k y^i:` helper used by the tests of `omega_change`.
pub fn omega_field(real: &Realization, x: &str, y: &str, k: u32) -> Result<FieldExpr> {
    bilinear(&real.dst, real.n, x, y, k)
}

/// Elements of weight `w` in the invariant algebra annihilated by all
/// nonnegative modes of `j^{0,0}, j^{0,1}, j^{0,2}` lie in the span of the words
/// in the `j^{1,k}`; returns (commutant dimension, span dimension).
pub fn howe_check(real: &Realization, w: Weight) -> Result<(usize, usize)> {
    let basis = real.src.weight_basis(w)?;
    let mut images = Vec::new();
    let mut ech = Echelon::new();
    for b in &basis {
        let img = real.apply(b)?;
        if ech.push(as_vec(&img)) {
            images.push(img);
        }
    }
    // Linear conditions: stack every j^{0,i}∘_m x into one keyed vector.
    let ops: Vec<FieldExpr> = (0..3).map(|i| real.j(JLabel::Zero, i)).collect::<Result<_>>()?;
    let wu = (w * Weight::from_integer(2)).to_integer();
    let mut cond = Echelon::<(usize, i32, Mono), RatFunc>::new();
    for img in &images {
        let mut v = SparseVec::new();
        for (oi, op) in ops.iter().enumerate() {
            let top = (wu + 2 * (oi as i64 + 1)) / 2 - 1;
            for m in 0..=top as i32 {
                for (mono, c) in real.dst.circle(op, img, m)?.monomials() {
                    v.insert((oi, m, mono), c);
                }
            }
        }
        cond.push(v);
    }
    let kernel: Vec<FieldExpr> = cond
        .relations()
        .iter()
        .map(|rel| combine(&real.dst, &images, rel))
        .collect::<Result<_>>()?;
    let mut span = Echelon::new();
    for b in &basis {
        if !b.uses(|g| gen_of(g).0 != JLabel::One) {
            span.push(as_vec(&real.apply(b)?));
        }
    }
    for x in &kernel {
        if !span.contains(as_vec(x)) {
            return Err(Error::Internal(format!("commutant element outside the j^1 span at weight {w}")));
        }
    }
    Ok((kernel.len(), span.rank()))
}

/// Displayed decoupling relations for `n = 2`.
pub const DECOUPLING_N2: [(JLabel, &str); 4] = [
    (
        JLabel::Zero,
        "-(1/6)*no(J[0,0],J[0,0],J[0,0]) - (1/2)*no(J[0,0],d(J[0,0])) + no(J[0,0],J[0,1]) + d(J[0,1]) - (1/6)*d^2(J[0,0])",
    ),
    (
        JLabel::Plus,
        "-(1/2)*no(J[+,0],J[0,0],J[0,0]) - (1/2)*no(J[+,0],d(J[0,0])) + no(J[+,1],J[0,0]) + no(J[+,0],J[0,1])",
    ),
    (
        JLabel::Minus,
        "-(1/2)*no(J[-,0],J[0,0],J[0,0]) - (1/2)*no(J[-,0],d(J[0,0])) - no(d(J[-,0]),J[0,0]) + no(J[-,1],J[0,0]) \
         + no(J[-,0],J[0,1]) - d^2(J[-,0]) + 2*d(J[-,1])",
    ),
    (
        JLabel::One,
        "-no(J[-,0],J[+,0],J[0,0]) - (1/2)*no(J[1,0],J[0,0],J[0,0]) - (1/3)*no(J[0,0],J[0,0],J[0,0]) \
         - no(d(J[-,0]),J[+,0]) + no(J[-,1],J[+,0]) + no(J[-,0],J[+,1]) - no(d(J[1,0]),J[0,0]) \
         - (1/2)*no(J[1,0],d(J[0,0])) + no(J[1,1],J[0,0]) + no(J[1,0],J[0,1]) - no(J[0,0],d(J[0,0])) \
         + no(J[0,0],J[0,1]) - (1/3)*d^2(J[0,0]) + d(J[0,1]) - d^2(J[1,0]) + 2*d(J[1,1])",
    ),
];

/// Displayed nonlinear OPEs for `n = 2`: (left, right, [(pole order, field)]).
pub const NONLINEAR_N2: [(&str, &str, &[(u32, &str)]); 5] = [
    (
        "J[-,1]",
        "J[+,1]",
        &[
            (4, "2"),
            (2, "J[1,1] - J[0,1]"),
            (
                1,
                "no(J[-,0],J[+,0],J[0,0]) + (1/2)*no(J[1,0],J[0,0],J[0,0]) + (1/2)*no(J[0,0],J[0,0],J[0,0]) \
                 + no(d(J[-,0]),J[+,0]) - no(J[-,1],J[+,0]) - no(J[-,0],J[+,1]) + no(d(J[1,0]),J[0,0]) \
                 + (1/2)*no(J[1,0],d(J[0,0])) - no(J[1,1],J[0,0]) - no(J[1,0],J[0,1]) \
                 + (3/2)*no(J[0,0],d(J[0,0])) - 2*no(J[0,0],J[0,1]) + (1/2)*d^2(J[0,0]) - 2*d(J[0,1]) \
                 + d^2(J[1,0]) - d(J[1,1])",
            ),
        ],
    ),
    (
        "J[0,1]",
        "J[-,1]",
        &[
            (2, "J[-,1]"),
            (
                1,
                "-(1/2)*no(J[-,0],J[0,0],J[0,0]) - (1/2)*no(J[-,0],d(J[0,0])) - no(d(J[-,0]),J[0,0]) \
                 + no(J[-,1],J[0,0]) + no(J[-,0],J[0,1]) - d^2(J[-,0]) + 2*d(J[-,1])",
            ),
        ],
    ),
    (
        "J[1,1]",
        "J[-,1]",
        &[
            (2, "J[-,1]"),
            (
                1,
                "(1/2)*no(J[-,0],J[0,0],J[0,0]) + (1/2)*no(J[-,0],d(J[0,0])) + no(d(J[-,0]),J[0,0]) \
                 - no(J[-,1],J[0,0]) - no(J[-,0],J[0,1]) + d^2(J[-,0]) - d(J[-,1])",
            ),
        ],
    ),
    (
        "J[0,1]",
        "J[+,1]",
        &[
            (2, "J[+,1]"),
            (
                1,
                "(1/2)*no(J[+,0],J[0,0],J[0,0]) + (1/2)*no(J[+,0],d(J[0,0])) - no(J[+,1],J[0,0]) \
                 - no(J[+,0],J[0,1]) + d(J[+,1])",
            ),
        ],
    ),
    (
        "J[1,1]",
        "J[+,1]",
        &[
            (2, "J[+,1]"),
            (1, "-(1/2)*no(J[+,0],J[0,0],J[0,0]) - (1/2)*no(J[+,0],d(J[0,0])) + no(J[+,1],J[0,0]) + no(J[+,0],J[0,1])"),
        ],
    ),
];

/// The `n = 2` decoupling relations: solver output and displayed formula both
/// realize to `j^{a,2}`.
pub fn verify_decoupling_n2(real: &Realization) -> Report {
    let mut r = Report::new("decouple2", format!("n={}", real.n));
    for (a, text) in DECOUPLING_N2 {
        let res = (|| -> Result<(FieldExpr, FieldExpr, FieldExpr)> {
            let target = real.j(a, 2)?;
            let solved = real.apply(&decouple(real, a, 2)?)?;
            let shown = real.realize_str(text)?;
            Ok((target, solved, shown))
        })();
        match res {
            Ok((t, s, d)) => {
                r.push_eq(format!("solver j^{{{a},2}}"), &s, &t);
                r.push_eq(format!("displayed j^{{{a},2}}"), &d, &t);
            }
            Err(e) => r.push_bool(format!("j^{{{a},2}}"), false, Some(e.to_string())),
        }
    }
    r.merge(verify_nonlinear_n2(real));
    r.finish()
}

pub fn verify_nonlinear_n2(real: &Realization) -> Report {
    let mut r = Report::new("nonlinear", format!("n={}", real.n));
    for (x, y, poles) in NONLINEAR_N2 {
        let id = format!("{x} {y}");
        let res = (|| -> Result<(FieldExpr, FieldExpr, Vec<(u32, FieldExpr)>)> {
            let expected = poles.iter().map(|(o, s)| Ok((*o, real.realize_str(s)?))).collect::<Result<_>>()?;
            Ok((real.realize_str(x)?, real.realize_str(y)?, expected))
        })();
        match res {
            Ok((a, b, e)) => r.check_ope(id, &real.dst, &a, &b, &e),
            Err(e) => r.push_bool(id, false, Some(e.to_string())),
        }
    }
    // The linear form of the first-order pole before decoupling.
    let lin = real.realize_str("d(J[1,1]) - J[1,2] - J[0,2]");
    match (lin, real.j(JLabel::Minus, 1), real.j(JLabel::Plus, 1)) {
        (Ok(l), Ok(a), Ok(b)) => match real.dst.circle(&a, &b, 0) {
            Ok(p) => r.push_eq("j-1 ∘0 j+1 = ∂j11 - j12 - j02", &p, &l),
            Err(e) => r.push_bool("j-1 ∘0 j+1", false, Some(e.to_string())),
        },
        _ => r.push_bool("j-1 ∘0 j+1", false, Some("realization failed".into())),
    }
    r.finish()
}

/// Dimension of the relation space at each weight `0, 1/2, …, n + 1/2`, and
/// a singular check of the weight-`(n+1/2)` relation.
pub fn verify_relations(real: &Realization) -> Report {
    let n = real.n as i64;
    let mut r = Report::new("relations", format!("n={n}"));
    for h in 0..=2 * n + 1 {
        let w = Weight::new(h, 2);
        let expect = if h == 2 * n + 1 { 1 } else { 0 };
        match relation_space(real, w) {
            Ok(rels) => {
                let ok = rels.len() == expect && rels.iter().all(|v| v.image_zero);
                r.push_bool(format!("dim relations at weight {w} = {expect}"), ok, (!ok).then(|| format!("dimension {}", rels.len())));
                if h == 2 * n + 1 {
                    if let Some(v) = rels.first() {
                        let s = singular_check(&v.expr);
                        r.push_bool(format!("relation at weight {w} is singular"), matches!(s, Ok(true)), s.err().map(|e| e.to_string()));
                    }
                }
            }
            Err(e) => r.push_bool(format!("relations at weight {w}"), false, Some(e.to_string())),
        }
    }
    r.finish()
}

/// `J^{-,0}∘_0` applied to the minimal relation stays in the relation space.
pub fn lowering_stays_relation(real: &Realization, v: &FieldExpr) -> Result<bool> {
    let x = real.src.circle(&jgen(&real.src, JLabel::Minus, 0), v, 0)?;
    Ok(real.apply(&x)?.is_zero() && !x.is_zero())
}
