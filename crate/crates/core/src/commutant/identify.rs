//! `B_{2,k}` against the `𝒲_{2,k+2}` table, and the realization of `𝒲_{2,−1}`
//! inside `V_{−2}(gl(2|2))`.

use super::{build_affine, AffineSpec, TensorModel};
use crate::coeff::RatFunc;
use crate::lattice_screening::{verify_w2_table, verify_w2_table_with, NamedFields, W2_GENERATORS, X0_DEF, X2_DEF, XM_DEF, XP_DEF};
use crate::report::Report;
use crate::vertex::{parse_field_at, AlgebraHandle, FieldExpr};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

const G_PLUS_MAP: &str = "(4*S-1)*F[+] + S*d(Psi[+]) + (2*S-1)*no(Nw,Psi[+])";
const G_MINUS_MAP: &str = "(4*S-1)*F[-] - (3*S-1)*d(Psi[-]) - (2*S-1)*no(Nw,Psi[-])";

/// `T` from `Ψ^+ ∘_0 G^-`, `H` from the second pole of `G^+ G^-`.
fn derive_t_h(f: &mut NamedFields) -> Result<()> {
    let alg = f.alg.clone();
    let get = |s: &str| f.get(s).cloned().ok_or_else(|| Error::UnknownGenerator(s.into()));
    let t = alg.circle(&get("Psi[+]")?, &get("G[-]")?, 0)?;
    let p2 = alg.circle(&get("G[+]")?, &get("G[-]")?, 1)?;
    let h = p2.try_add(&alg.derivative(&get("E")?)?.scale_frac(1, 4))?.scale_frac(1, 2);
    f.insert("T", t);
    f.insert("H", h);
    Ok(())
}

/// The images of the `𝒲_{2,k+2}` generators in `B_{2,k}`, named as in the table,
/// with `T, H` derived and the composites `X0, X^±, X2` defined; the level is `k+2`.
pub fn b_to_w2_fields(m: &TensorModel) -> Result<NamedFields> {
    if m.n != 2 {
        return Err(Error::InvalidArgument("the identification needs n = 2".into()));
    }
    let b = m.b_generators()?;
    let mut src = NamedFields::new(&m.alg, m.k.clone());
    for (name, f) in &b {
        src.insert(name, f.clone());
    }
    let nw = src.parse("(1/2)*(N - (1/k)*E)")?;
    src.insert("Nw", nw.clone());
    let with_s = |def: &str| def.replace('S', "((1+k)/(4+2*k))");
    let mut w = NamedFields::new(&m.alg, &m.k + &RatFunc::from_int(2));
    w.insert("E", b[0].1.clone());
    w.insert("N", nw);
    w.insert("Psi[+]", b[2].1.clone());
    w.insert("Psi[-]", b[3].1.clone());
    w.insert("G[+]", src.parse(&with_s(G_PLUS_MAP))?);
    w.insert("G[-]", src.parse(&with_s(G_MINUS_MAP))?);
    derive_t_h(&mut w)?;
    w.define_composites()?;
    Ok(w)
}

/// The `𝒲_{2,k+2}` table for the images of its generators in `B_{2,k}`.
pub fn identify_w2_b2(k: RatFunc) -> Result<Report> {
    let m = TensorModel::new(2, k)?;
    let w = b_to_w2_fields(&m)?;
    Ok(verify_w2_table(&w, "w2b2", &format!("B(2,k) at k={}, W(2,k+2)", m.k)))
}

const G_PLUS_GL22: &str = "-(1/2)*no(E[1,1],E[1,3]) + (1/2)*no(E[1,1],E[2,4]) - no(E[1,2],E[2,3]) + (1/2)*d(E[1,3]) \
    + (1/2)*no(E[1,3],E[2,2]) + (1/2)*no(E[1,3],E[3,3]) + (1/2)*no(E[1,3],E[4,4]) - no(E[1,4],E[2,1]) \
    - (1/2)*no(E[2,2],E[2,4]) - (1/2)*d(E[2,4]) + (1/2)*no(E[2,4],E[3,3]) + (1/2)*no(E[2,4],E[4,4])";

const G_MINUS_GL22: &str = "(1/2)*no(E[1,1],E[3,1]) - (1/2)*no(E[1,1],E[4,2]) + no(E[1,2],E[4,1]) + no(E[2,1],E[3,2]) \
    - (1/2)*no(E[2,2],E[3,1]) + (1/2)*no(E[2,2],E[4,2]) + (1/2)*d(E[3,1]) - (1/2)*no(E[3,1],E[3,3]) \
    - (1/2)*no(E[3,1],E[4,4]) - (1/2)*no(E[3,3],E[4,2]) + (1/2)*d(E[4,2]) - (1/2)*no(E[4,2],E[4,4])";

/// Fields of `V_{−2}(gl(2|2))` with every odd field stored multiplied by `√−2`.
pub struct Gl22Fields {
    pub alg: AlgebraHandle,
    fields: HashMap<String, (FieldExpr, bool)>,
}

impl Gl22Fields {
    pub fn get(&self, name: &str) -> Option<&FieldExpr> {
        self.fields.get(name).map(|(f, _)| f)
    }

    /// Parses `src` in the true fields and returns `√−2^p` times it, where the
    /// odd stored fields carry a marker `κ` that is traded for powers of `√−2`.
    pub fn parse_scaled(&self, src: &str, p: u32) -> Result<FieldExpr> {
        let kappa = RatFunc::kappa();
        let env = |s: &str| self.fields.get(s).map(|(f, odd)| if *odd { f.scale(&kappa) } else { f.clone() });
        let raw = parse_field_at(&self.alg, &env, &RatFunc::from_int(-1), src)?;
        raw.map_coeffs(|c| {
            if !c.denom().is_one() {
                return Err(Error::Internal(format!("unexpected denominator in {c}")));
            }
            let mut out = BigRational::zero();
            for (q, a) in c.numer().coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let e = p as i64 - q as i64;
                if e % 2 != 0 {
                    return Err(Error::Internal(format!("odd power of the square root in {src}")));
                }
                out += a * minus_two_pow(e / 2);
            }
            Ok(RatFunc::from_rational(out))
        })
    }

    fn define(&mut self, name: &str, src: &str, odd: bool) -> Result<()> {
        let f = self.parse_scaled(src, odd as u32)?;
        self.fields.insert(name.into(), (f, odd));
        Ok(())
    }
}

fn minus_two_pow(e: i64) -> BigRational {
    let base = BigRational::from_integer((-2).into());
    let x = num_traits::pow(base, e.unsigned_abs() as usize);
    if e < 0 {
        BigRational::one() / x
    } else {
        x
    }
}

/// `E', N', Ψ^±', G^±'` at level `−2`, with `T', H'` derived and the composites defined.
pub fn gl22_fields() -> Result<Gl22Fields> {
    let alg = build_affine(&AffineSpec::gl_super(2, 2, "E", RatFunc::from_int(-2)))?;
    let mut f = Gl22Fields { alg: alg.clone(), fields: HashMap::new() };
    let plain = |src: &str| parse_field_at(&alg, &|_| None, &RatFunc::from_int(-2), src);
    f.fields.insert("E".into(), (plain("-(1/2)*(E[1,1] + E[2,2] + E[3,3] + E[4,4])")?, false));
    f.fields.insert("N".into(), (plain("(1/2)*(E[1,1] + E[2,2] - E[3,3] - E[4,4])")?, false));
    f.fields.insert("Psi[+]".into(), (plain("E[1,3] + E[2,4]")?, true));
    f.fields.insert("Psi[-]".into(), (plain("E[3,1] + E[4,2]")?, true));
    f.fields.insert("G[+]".into(), (plain(G_PLUS_GL22)?, true));
    f.fields.insert("G[-]".into(), (plain(G_MINUS_GL22)?, true));
    let get = |s: &str| f.fields[s].0.clone();
    let t = alg.circle(&get("Psi[+]"), &get("G[-]"), 0)?.scale_frac(-1, 2);
    let p2 = alg.circle(&get("G[+]"), &get("G[-]"), 1)?.scale_frac(-1, 2);
    let h = p2.try_add(&alg.derivative(&get("E"))?.scale_frac(1, 4))?.scale_frac(1, 2);
    f.fields.insert("T".into(), (t, false));
    f.fields.insert("H".into(), (h, false));
    for (name, def, odd) in [
        ("X0", X0_DEF, false),
        ("X[+]", XP_DEF, true),
        ("X[-]", XM_DEF, true),
        ("X2", X2_DEF, false),
    ] {
        f.define(name, def, odd)?;
    }
    debug_assert!(W2_GENERATORS.iter().all(|s| f.fields.contains_key(*s)));
    Ok(f)
}

/// The `𝒲_{2,−1}` table for the primed fields, with both sides scaled by `√−2`
/// per odd field of the pair.
pub fn gl22_check() -> Result<Report> {
    let f = gl22_fields()?;
    Ok(verify_w2_table_with(&f.alg, |s| f.get(s).cloned(), |s, p| f.parse_scaled(s, p), "gl22remark", "V(gl(2|2)) at k=-2, W(2,-1)"))
}
