//! Randomized identities every vertex superalgebra must satisfy, checked on
//! fields drawn from the bcβγ system, affine gl(1|1) at symbolic level and the
//! algebra of the `J^{a,k}` at symbolic central charge.

use super::{AlgebraHandle, FieldExpr, Weight};
use crate::coeff::RatFunc;
use crate::commutant::{build_affine, AffineSpec};
use crate::free_systems::{build_free, FreeSystemSpec};
use crate::report::Report;
use crate::swinf::sd_algebra;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    SkewSymmetry,
    Derivative,
    Derivation,
    WeightAdditivity,
    Confluence,
}

impl Property {
    pub const ALL: [Property; 5] = [Property::SkewSymmetry, Property::Derivative, Property::Derivation, Property::WeightAdditivity, Property::Confluence];

    pub fn name(self) -> &'static str {
        match self {
            Property::SkewSymmetry => "skew-symmetry",
            Property::Derivative => "derivative compatibility",
            Property::Derivation => "o0 is a derivation",
            Property::WeightAdditivity => "weight additivity",
            Property::Confluence => "canonical-form confluence",
        }
    }
}

fn algebras() -> &'static [AlgebraHandle] {
    static ALGS: OnceLock<Vec<AlgebraHandle>> = OnceLock::new();
    ALGS.get_or_init(|| {
        vec![
            build_free(&FreeSystemSpec::bcbg(2)).expect("bcbg registers"),
            build_affine(&AffineSpec::gl_super(1, 1, "E", RatFunc::kappa())).expect("gl(1|1) registers"),
            sd_algebra(RatFunc::kappa()),
        ]
    })
}

fn coeff(rng: &mut ChaCha8Rng) -> RatFunc {
    let q = RatFunc::frac(rng.gen_range(-4..=4i64).max(1) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3));
    if rng.gen_bool(0.3) {
        q + RatFunc::kappa() * RatFunc::from_int(rng.gen_range(-2..=2))
    } else {
        q
    }
}

fn monomial(alg: &AlgebraHandle, rng: &mut ChaCha8Rng, gens: &[FieldExpr]) -> Result<FieldExpr> {
    let len = rng.gen_range(1..=2);
    let mut factors = Vec::new();
    for _ in 0..len {
        let g = gens.choose(rng).ok_or_else(|| Error::Internal("no generators".into()))?;
        factors.push(alg.derivative_n(g, rng.gen_range(0..=1))?);
    }
    Ok(alg.nprod(&factors)?.scale(&coeff(rng)))
}

/// A nonzero field homogeneous in weight and parity.
fn field(alg: &AlgebraHandle, rng: &mut ChaCha8Rng) -> Result<FieldExpr> {
    let gens: Vec<FieldExpr> = alg.table().generators_up_to(Weight::new(3, 2)).into_iter().map(|g| alg.gen_id(g)).collect();
    loop {
        let x = monomial(alg, rng, &gens)?;
        if x.is_zero() {
            continue;
        }
        let (w, p) = (x.weight(), x.parity());
        let mut acc = x;
        for _ in 0..rng.gen_range(0..=2) {
            let y = monomial(alg, rng, &gens)?;
            if !y.is_zero() && y.weight() == w && y.parity() == p {
                acc = acc.try_add(&y)?;
            }
        }
        if !acc.is_zero() {
            return Ok(acc);
        }
    }
}

fn parity_sign(a: &FieldExpr, b: &FieldExpr) -> i64 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

fn divided_power(alg: &AlgebraHandle, x: &FieldExpr, j: u32) -> Result<FieldExpr> {
    let f = crate::coeff::factorial(j);
    let d = alg.derivative_n(x, j)?;
    Ok(d.scale(&RatFunc::from_rational(num_rational::BigRational::new(1.into(), f))))
}

fn expect_eq(lhs: &FieldExpr, rhs: &FieldExpr, what: &str) -> std::result::Result<(), String> {
    match lhs.try_sub(rhs) {
        Ok(d) if d.is_zero() => Ok(()),
        Ok(_) => Err(format!("{what}: {lhs} != {rhs}")),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

/// One randomized instance of `prop` drawn from `seed`.
pub fn check_instance(prop: Property, seed: u64) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = algebras().choose(&mut rng).expect("nonempty").clone();
    run_instance(prop, &alg, &mut rng).map_err(|e| format!("seed {seed} in {}: {e}", alg.tag()))?
        .map_err(|e| format!("seed {seed} in {}: {e}", alg.tag()))
}

fn run_instance(prop: Property, alg: &AlgebraHandle, rng: &mut ChaCha8Rng) -> Result<std::result::Result<(), String>> {
    let a = field(alg, rng)?;
    let b = field(alg, rng)?;
    Ok(match prop {
        Property::SkewSymmetry => {
            let ab = alg.ope(&a, &b)?;
            let top = ab.max_order() as i32;
            let sign = parity_sign(&a, &b);
            let mut res = Ok(());
            for n in -1..=top {
                let lhs = alg.circle(&b, &a, n)?;
                let mut rhs = alg.zero();
                for j in 0..=(top - n).max(0) as u32 {
                    let term = divided_power(alg, &alg.circle(&a, &b, n + j as i32)?, j)?;
                    let s = sign * if (n + j as i32 + 1) % 2 == 0 { 1 } else { -1 };
                    rhs = rhs.try_add(&term.scale_int(s))?;
                }
                res = res.and(expect_eq(&lhs, &rhs, &format!("b o{n} a")));
            }
            res
        }
        Property::Derivative => {
            let da = alg.derivative(&a)?;
            let db = alg.derivative(&b)?;
            let top = alg.ope(&a, &b)?.max_order() as i32 + 1;
            let mut res = Ok(());
            for n in 0..=top {
                let lhs = alg.circle(&da, &b, n)?;
                let rhs = if n == 0 { alg.zero() } else { alg.circle(&a, &b, n - 1)?.scale_int(-(n as i64)) };
                res = res.and(expect_eq(&lhs, &rhs, &format!("(da) o{n} b")));
                let lhs = alg.circle(&a, &db, n)?;
                let mut rhs = alg.derivative(&alg.circle(&a, &b, n)?)?;
                if n > 0 {
                    rhs = rhs.try_add(&alg.circle(&a, &b, n - 1)?.scale_int(n as i64))?;
                }
                res = res.and(expect_eq(&lhs, &rhs, &format!("a o{n} (db)")));
            }
            res
        }
        Property::Derivation => {
            let c = field(alg, rng)?;
            let sign = parity_sign(&a, &b);
            let a0b = alg.circle(&a, &b, 0)?;
            let a0c = alg.circle(&a, &c, 0)?;
            let mut res = Ok(());
            for n in -1..=1 {
                let lhs = alg.circle(&a, &alg.circle(&b, &c, n)?, 0)?;
                let rhs = alg.circle(&a0b, &c, n)?.try_add(&alg.circle(&b, &a0c, n)?.scale_int(sign))?;
                res = res.and(expect_eq(&lhs, &rhs, &format!("a o0 (b o{n} c)")));
            }
            res
        }
        Property::WeightAdditivity => {
            let (wa, wb) = (a.weight().unwrap_or_default(), b.weight().unwrap_or_default());
            let mut res = Ok(());
            let da = alg.derivative(&a)?;
            if !da.is_zero() && da.weight() != Some(wa + Weight::from_integer(1)) {
                res = Err(format!("weight of d({a})"));
            }
            for n in -2..=alg.ope(&a, &b)?.max_order() as i32 {
                let x = alg.circle(&a, &b, n)?;
                let want = wa + wb - Weight::from_integer(n as i64 + 1);
                if !x.is_zero() && x.weight() != Some(want) {
                    res = Err(format!("a o{n} b = {x} has weight {:?}, want {want}", x.weight()));
                }
            }
            res
        }
        Property::Confluence => {
            let c = field(alg, rng)?;
            let mut res = expect_eq(&alg.wick(&a, &alg.wick(&b, &c)?)?, &alg.nprod(&[a.clone(), b.clone(), c.clone()])?, "right-nested product");
            res = res.and(expect_eq(&alg.wick(&a, &b)?, &alg.circle(&a, &b, -1)?, "wick = o(-1)"));
            let mut terms: Vec<FieldExpr> = [&a, &b, &c].iter().flat_map(|x| x.terms()).map(|(ls, k)| FieldExpr::from_canonical_letters(alg, &ls, k)).collect::<Result<_>>()?;
            let forward = FieldExpr::sum(alg, terms.iter())?;
            terms.shuffle(rng);
            let shuffled = FieldExpr::sum(alg, terms.iter())?;
            if forward != shuffled {
                res = res.and(Err("summation order changed the canonical form".to_string()));
            }
            let printed = forward.to_string();
            match crate::parse_field(alg, &printed) {
                Ok(back) if back == forward && back.to_string() == printed => {}
                Ok(back) => res = res.and(Err(format!("reparse of {printed} gave {back}"))),
                Err(e) => res = res.and(Err(format!("reparse of {printed}: {e}"))),
            }
            let x = alg.wick(&a, &b)?;
            if !x.try_sub(&x)?.is_zero() {
                res = res.and(Err("x - x is nonzero".to_string()));
            }
            res
        }
    })
}

/// Runs `cases` instances of each property with seeds `seed, seed + 1, …`.
pub fn property_report(cases: u64, seed: u64) -> Report {
    use rayon::prelude::*;
    let mut r = Report::new("properties", format!("{cases} instances each"));
    for prop in Property::ALL {
        let failures: Vec<String> = (seed..seed + cases).into_par_iter().filter_map(|s| check_instance(prop, s).err()).collect();
        let detail = failures.first().cloned().or_else(|| Some(format!("{cases} instances")));
        r.push_bool(prop.name(), failures.is_empty(), detail);
    }
    r.finish()
}
