//! The free-field realization `J^{a,k} ↦ j^{a,k}` at `c = n`.

use super::table::{gen_id, gen_of, jgen, label, sd_algebra};
use crate::coeff::RatFunc;
use crate::free_systems::{build_free, j_field, FreeSystemSpec, JLabel};
use crate::report::Report;
use crate::vertex::{AlgebraHandle, FieldExpr, GenId};
use crate::{Error, Result};
use dashmap::DashMap;

pub struct Realization {
    pub n: usize,
    pub src: AlgebraHandle,
    pub dst: AlgebraHandle,
    flip_zero: bool,
    images: DashMap<(GenId, u32), FieldExpr>,
}

impl Realization {
    pub fn new(n: usize) -> Result<Self> {
        Self::build(n, false)
    }

    /// A deliberately wrong map with the sign of every `j^{0,k}` flipped.
    pub fn mutated(n: usize) -> Result<Self> {
        Self::build(n, true)
    }

    fn build(n: usize, flip_zero: bool) -> Result<Self> {
        let dst = build_free(&FreeSystemSpec::bcbg(n))?;
        Ok(Realization { n, src: sd_algebra(RatFunc::from_int(n as i64)), dst, flip_zero, images: DashMap::new() })
    }

    /// The image of `∂^d J^{a,k}`.
    pub fn letter_image(&self, g: GenId, d: u32) -> Result<FieldExpr> {
        if let Some(x) = self.images.get(&(g, d)) {
            return Ok(x.clone());
        }
        let x = if d == 0 {
            let (a, k) = gen_of(g);
            let j = j_field(&self.dst, self.n, a, k)?;
            if self.flip_zero && a == JLabel::Zero {
                -j
            } else {
                j
            }
        } else {
            self.dst.derivative(&self.letter_image(g, d - 1)?)?
        };
        self.images.insert((g, d), x.clone());
        Ok(x)
    }

    pub fn j(&self, a: JLabel, k: u32) -> Result<FieldExpr> {
        self.letter_image(gen_id(a, k), 0)
    }

    pub fn abstract_j(&self, a: JLabel, k: u32) -> FieldExpr {
        jgen(&self.src, a, k)
    }

    /// Extends the generator map to normally ordered polynomials.
    pub fn apply(&self, x: &FieldExpr) -> Result<FieldExpr> {
        if !std::sync::Arc::ptr_eq(x.algebra(), &self.src) {
            return Err(Error::MixedAlgebra);
        }
        let mut acc = self.dst.zero();
        for (letters, c) in x.terms() {
            let factors = letters.iter().map(|l| self.letter_image(l.gen, l.deriv)).collect::<Result<Vec<_>>>()?;
            acc = acc.try_add(&self.dst.nprod(&factors)?.scale(&c))?;
        }
        Ok(acc)
    }

    /// Parses an expression in the `J[a,k]` generators and realizes it.
    pub fn realize_str(&self, s: &str) -> Result<FieldExpr> {
        self.apply(&crate::parse_field(&self.src, s)?)
    }
}

/// The structure constants quoted in the finite-generation lemma, as
/// `(id, lhs, rhs)` expressions in the `J[a,k]` generators.
pub fn weakfg_identities(alg: &AlgebraHandle, kmax: u32) -> Result<Vec<(String, FieldExpr, FieldExpr)>> {
    use JLabel::*;
    let j = |a, k| jgen(alg, a, k);
    let circ = |x: &FieldExpr, y: &FieldExpr, n: i32| alg.circle(x, y, n);
    let d = |x: &FieldExpr| alg.derivative(x);
    let mut out = vec![
        ("J+0 ∘0 J01 = J+1".to_string(), circ(&j(Plus, 0), &j(Zero, 1), 0)?, j(Plus, 1)),
        ("J-0 ∘0 J01 = -J-1".into(), circ(&j(Minus, 0), &j(Zero, 1), 0)?, -j(Minus, 1)),
        ("J+0 ∘0 J-1 = -J01 - J11".into(), circ(&j(Plus, 0), &j(Minus, 1), 0)?, -(j(Zero, 1) + j(One, 1))),
        ("J01 ∘0 J-1 = J-2".into(), circ(&j(Zero, 1), &j(Minus, 1), 0)?, j(Minus, 2)),
        ("J11 ∘0 J+1 = J+2".into(), circ(&j(One, 1), &j(Plus, 1), 0)?, j(Plus, 2)),
        (
            "J-2 ∘2 J+2 - J-1 ∘1 J+2 = -3 J12".into(),
            circ(&j(Minus, 2), &j(Plus, 2), 2)? - circ(&j(Minus, 1), &j(Plus, 2), 1)?,
            j(One, 2).scale_int(-3),
        ),
        (
            "J-2 ∘2 J+2 + 2 J-1 ∘1 J+2 = -6 J02".into(),
            circ(&j(Minus, 2), &j(Plus, 2), 2)? + circ(&j(Minus, 1), &j(Plus, 2), 1)?.scale_int(2),
            j(Zero, 2).scale_int(-6),
        ),
        (
            "(J-1 ∘0 J+1) ∘1 J+1 = -4 J+2 + 2 ∂J+1".into(),
            circ(&circ(&j(Minus, 1), &j(Plus, 1), 0)?, &j(Plus, 1), 1)?,
            j(Plus, 2).scale_int(-4) + d(&j(Plus, 1))?.scale_int(2),
        ),
        ("J-0 ∘1 J+2 = -2 J01".into(), circ(&j(Minus, 0), &j(Plus, 2), 1)?, j(Zero, 1).scale_int(-2)),
    ];
    for k in 1..=kmax.max(1) {
        out.push((
            format!("J02 ∘1 J0{} = {} J0{k} - 2 ∂J0{}", k - 1, k + 1, k - 1),
            circ(&j(Zero, 2), &j(Zero, k - 1), 1)?,
            j(Zero, k).scale_int(k as i64 + 1) - d(&j(Zero, k - 1))?.scale_int(2),
        ));
    }
    for k in 0..=kmax {
        out.push((format!("J01 ∘0 J0{k} = ∂J0{k}"), circ(&j(Zero, 1), &j(Zero, k), 0)?, d(&j(Zero, k))?));
        out.push((format!("J+0 ∘0 J0{k} = J+{k}"), circ(&j(Plus, 0), &j(Zero, k), 0)?, j(Plus, k)));
        out.push((format!("J-0 ∘0 J0{k} = -J-{k}"), circ(&j(Minus, 0), &j(Zero, k), 0)?, -j(Minus, k)));
        out.push((format!("J+0 ∘0 J-{k} = -J0{k} - J1{k}"), circ(&j(Plus, 0), &j(Minus, k), 0)?, -(j(Zero, k) + j(One, k))));
    }
    Ok(out)
}

pub fn verify_weakfg(alg: &AlgebraHandle, kmax: u32) -> Report {
    let mut r = Report::new("weakfg", alg.tag());
    match weakfg_identities(alg, kmax) {
        Ok(ids) => {
            for (id, l, rhs) in ids {
                r.push_eq(id, &l, &rhs);
            }
        }
        Err(e) => r.push_bool("weakfg", false, Some(e.to_string())),
    }
    r.finish()
}

fn cross_check(real: &Realization, kmax: u32, r: &mut Report) {
    for a in JLabel::ALL {
        for k in 0..=kmax {
            for b in JLabel::ALL {
                for l in 0..=kmax {
                    let id = format!("{} {}", label(a, k), label(b, l));
                    let res = (|| -> Result<Vec<(u32, FieldExpr)>> {
                        let o = real.src.ope(&real.abstract_j(a, k), &real.abstract_j(b, l))?;
                        o.poles.iter().map(|(ord, x)| Ok((*ord, real.apply(x)?))).collect()
                    })();
                    match (res, real.j(a, k), real.j(b, l)) {
                        (Ok(expected), Ok(x), Ok(y)) => r.check_ope(id, &real.dst, &x, &y, &expected),
                        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => r.push_bool(id, false, Some(e.to_string())),
                    }
                }
            }
        }
    }
}

/// Abstract OPEs from the cocycle, realized, against the free-field OPEs, plus
/// the finite-generation structure constants.
pub fn verify_realization(n: usize, kmax: u32) -> Result<Report> {
    let real = Realization::new(n)?;
    Ok(verify_with(&real, kmax))
}

pub fn verify_with(real: &Realization, kmax: u32) -> Report {
    let mut r = Report::new("realization", format!("n={}, kmax={kmax}", real.n));
    cross_check(real, kmax, &mut r);
    r.merge(verify_weakfg(&real.src, kmax));
    r.finish()
}
