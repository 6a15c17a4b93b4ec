//! The strong generators `E, N, Ψ^±, T, H, G^±` of `𝒲_{2,k}` and their
//! operator product table.

use super::wfields::{ScreeningModel, WGenerators};
use crate::coeff::RatFunc;
use crate::report::Report;
use crate::vertex::{parse_field_at, AlgebraHandle, FieldExpr};
use crate::Result;
use std::collections::HashMap;

const T_DEF: &str = "no(E[1],N[1]) + no(E[2],N[2]) - no(Psi[+,1],Psi[-,1]) - no(Psi[+,2],Psi[-,2]) \
    - ((1+k)/(2*k))*d(E[1]) + ((1-k)/(2*k))*d(E[2])";

const H_DEF: &str = "-(1/2)*(no(N[1],N[1]) + no(N[2],N[2]) - no(E[1],N[1]) - no(E[2],N[2]) \
    + no(Psi[+,1],Psi[-,1]) + no(Psi[+,2],Psi[-,2])) \
    + (1/(2*k))*(no(E[1],N[2]) - no(E[2],N[1]) + no(Psi[+,1],Psi[-,2]) - no(Psi[+,2],Psi[-,1]) \
    + (1/k)*no(E[1],E[2]) + d(N[1]) - d(N[2])) \
    - (1/(8*k^2))*((2*k^2+2*k+1)*d(E[1]) + (2*k^2-2*k+1)*d(E[2]))";

const G_PLUS_DEF: &str = "F[+] + (1/(2*k) - 1/2)*d(Psi[+])";
const G_MINUS_DEF: &str = "-F[-] - (1/(2*k) - 1/2)*d(Psi[-])";
const N_DEF: &str = "N + (1/(2*k) - 1/2)*E";

pub const X0_DEF: &str = "(1/2)*(2*no(H,E) - 2*no(T,E) - 2*no(T,N) - 2*no(G[+],Psi[-]) - 2*no(G[-],Psi[+]) \
    + no(d(Psi[-]),Psi[+]) + no(d(Psi[+]),Psi[-]) + no(d(E),N) - 2*no(N,Psi[+],Psi[-]) + no(N,N,E) \
    - no(E,Psi[+],Psi[-]) + no(N,E,E)) \
    - (1/(8*k^2))*((1-2*k^2)*d^2(E) + (3-2*k^2)*no(d(E),E) + (1-k^2)*no(E,E,E))";

pub const XP_DEF: &str = "(1/2)*(no(N,d(Psi[+])) - 2*no(H,Psi[+]) - 2*no(N,G[+]) + no(T,Psi[+]) - no(E,G[+]) \
    - no(N,N,Psi[+]) - no(N,E,Psi[+])) \
    - (1/(8*k^2))*((2+2*k^2)*d^2(Psi[+]) - no(d(E),Psi[+]) - (2+2*k^2)*no(E,d(Psi[+])) - (1-k^2)*no(E,E,Psi[+]))";

pub const XM_DEF: &str = "(1/2)*(2*no(N,G[-]) - no(N,d(Psi[-])) - 2*no(H,Psi[-]) + no(T,Psi[-]) + no(E,G[-]) \
    - no(N,N,Psi[-]) - no(N,E,Psi[-])) \
    + (1/(8*k^2))*(-(2+2*k^2)*d^2(Psi[-]) + 5*no(d(E),Psi[-]) - (2+2*k^2)*no(E,d(Psi[-])) + (1-k^2)*no(E,E,Psi[-]))";

pub const X2_DEF: &str = "3*d^2(N) - (2+2*k^2)*d(T) + 4*no(d(Psi[-]),Psi[+]) - 4*no(d(Psi[+]),Psi[-]) \
    + 4*no(d(N),E) + 4*no(d(E),N) + 2*no(d(E),E)";

/// `(lhs, rhs, [(pole order, expected)])`; absent orders must vanish.
pub type W2Entry = (&'static str, &'static str, &'static [(u32, &'static str)]);

pub const W2_TABLE: &[W2Entry] = &[
    ("E", "E", &[]),
    ("N", "E", &[(2, "2*one")]),
    ("N", "N", &[]),
    ("N", "Psi[+]", &[(1, "Psi[+]")]),
    ("N", "Psi[-]", &[(1, "-Psi[-]")]),
    ("E", "Psi[+]", &[]),
    ("E", "Psi[-]", &[]),
    ("Psi[+]", "Psi[-]", &[(2, "2*one"), (1, "E")]),
    ("Psi[+]", "Psi[+]", &[]),
    ("Psi[-]", "Psi[-]", &[]),
    ("T", "T", &[(2, "2*T"), (1, "d(T)")]),
    ("T", "G[+]", &[(2, "2*G[+]"), (1, "d(G[+])")]),
    ("T", "G[-]", &[(2, "2*G[-]"), (1, "d(G[-])")]),
    ("T", "H", &[(4, "(3/k^2 - 1)*one"), (3, "(3/(4*k^2))*E"), (2, "2*H"), (1, "d(H)")]),
    ("N", "H", &[(3, "(3/(2*k^2))*one"), (2, "-(1/4 - 3/(4*k^2))*E")]),
    ("N", "G[+]", &[(1, "G[+]")]),
    ("N", "G[-]", &[(1, "-G[-]")]),
    ("Psi[+]", "H", &[(1, "-G[+]")]),
    ("Psi[-]", "H", &[(1, "-G[-]")]),
    ("Psi[+]", "G[-]", &[(2, "N"), (1, "T")]),
    ("Psi[-]", "G[+]", &[(2, "N"), (1, "-T")]),
    ("E", "H", &[(2, "-N")]),
    ("E", "G[+]", &[(2, "-Psi[+]")]),
    ("E", "G[-]", &[(2, "Psi[-]")]),
    (
        "H",
        "H",
        &[
            (2, "-(1/(4*k^2))*(2*d(E) + 3*d(N) - (2*k^2+2)*T + 4*no(N,E) + no(E,E) - 4*no(Psi[+],Psi[-]))"),
            (1, "-(1/(8*k^2))*X2"),
        ],
    ),
    (
        "H",
        "G[+]",
        &[(3, "(1/2 - 3/(4*k^2))*Psi[+]"), (2, "(1/4 - 3/(4*k^2))*d(Psi[+])"), (1, "d(G[+]) + X[+]")],
    ),
    (
        "H",
        "G[-]",
        &[(3, "(1/2 - 9/(4*k^2))*Psi[-]"), (2, "(1/4 - 3/(4*k^2))*d(Psi[-])"), (1, "d(G[-]) + X[-]")],
    ),
    (
        "G[+]",
        "G[-]",
        &[(4, "-(1 - 3/k^2)*one"), (3, "-(1/2 - 3/(2*k^2))*E"), (2, "-(1/4)*(d(E) - 8*H)"), (1, "d(H) + X0")],
    ),
];

/// Named fields in one algebra at level `k`, with expressions parsed against them.
#[derive(Clone)]
pub struct NamedFields {
    pub alg: AlgebraHandle,
    pub k: RatFunc,
    fields: HashMap<String, FieldExpr>,
}

impl NamedFields {
    pub fn new(alg: &AlgebraHandle, k: RatFunc) -> Self {
        NamedFields { alg: alg.clone(), k, fields: HashMap::new() }
    }

    pub fn get(&self, name: &str) -> Option<&FieldExpr> {
        self.fields.get(name)
    }

    pub fn insert(&mut self, name: &str, f: FieldExpr) {
        self.fields.insert(name.to_string(), f);
    }

    /// Parses an expression in the named fields, `k`, and the generators of the algebra.
    pub fn parse(&self, src: &str) -> Result<FieldExpr> {
        let env = |s: &str| self.fields.get(s).cloned();
        parse_field_at(&self.alg, &env, &self.k, src)
    }

    pub fn define(&mut self, name: &str, src: &str) -> Result<()> {
        let f = self.parse(src)?;
        self.insert(name, f);
        Ok(())
    }

    /// Adds `X0, X^±, X2` from `E, N, Ψ^±, T, H, G^±`.
    pub fn define_composites(&mut self) -> Result<()> {
        for (name, def) in [("X0", X0_DEF), ("X[+]", XP_DEF), ("X[-]", XM_DEF), ("X2", X2_DEF)] {
            self.define(name, def)?;
        }
        Ok(())
    }

    /// The eight strong generators in the order `E, N, Ψ^+, Ψ^-, T, H, G^+, G^-`.
    pub fn strong_generators(&self) -> Vec<(String, FieldExpr)> {
        W2_GENERATORS.iter().map(|s| (s.to_string(), self.fields[*s].clone())).collect()
    }
}

pub const W2_GENERATORS: [&str; 8] = ["E", "N", "Psi[+]", "Psi[-]", "T", "H", "G[+]", "G[-]"];

/// The fields of `𝒲_{2,k}` inside `M`, addressable by name.
pub struct W2Basis {
    pub model: ScreeningModel,
    pub gens: WGenerators,
    pub named: NamedFields,
}

impl W2Basis {
    pub fn new(k: RatFunc) -> Result<Self> {
        let model = ScreeningModel::new(2, k)?;
        let gens = model.w_generators()?;
        let mut named = NamedFields::new(&model.alg, model.k.clone());
        for (name, f) in gens.named() {
            named.insert(&name, f);
        }
        for i in 1..=2 {
            named.insert(&format!("E[{i}]"), model.e(i)?);
            named.insert(&format!("N[{i}]"), model.n_i(i)?);
            named.insert(&format!("Psi[+,{i}]"), model.psi_plus(i)?);
            named.insert(&format!("Psi[-,{i}]"), model.psi_minus(i)?);
        }
        for (name, def) in [("N", N_DEF), ("T", T_DEF), ("H", H_DEF), ("G[+]", G_PLUS_DEF), ("G[-]", G_MINUS_DEF)] {
            named.define(name, def)?;
        }
        named.define_composites()?;
        Ok(W2Basis { model, gens, named })
    }

    pub fn symbolic() -> Result<Self> {
        Self::new(RatFunc::kappa())
    }

    pub fn alg(&self) -> &AlgebraHandle {
        &self.model.alg
    }

    pub fn get(&self, name: &str) -> Option<&FieldExpr> {
        self.named.get(name)
    }

    pub fn parse(&self, src: &str) -> Result<FieldExpr> {
        self.named.parse(src)
    }

    pub fn strong_generators(&self) -> Vec<(String, FieldExpr)> {
        self.named.strong_generators()
    }
}

/// Checks every entry of [`W2_TABLE`] at level `k`.
pub fn verify_w2_opes(k: RatFunc) -> Result<Report> {
    let b = W2Basis::new(k)?;
    Ok(verify_w2_table(&b.named, "w2opes", &format!("k={}", b.model.k)))
}

/// Checks the table for the named fields, at their level.
pub fn verify_w2_table(f: &NamedFields, suite: &str, context: &str) -> Report {
    verify_w2_table_with(&f.alg, |s| f.get(s).cloned(), |s, _| f.parse(s), suite, context)
}

/// Checks the table for fields supplied by `lookup`; `expect(src, p)` builds the
/// expected pole from its source, where `p` counts the odd fields among the pair.
pub fn verify_w2_table_with(
    alg: &AlgebraHandle,
    lookup: impl Fn(&str) -> Option<FieldExpr> + Sync,
    expect: impl Fn(&str, u32) -> Result<FieldExpr> + Sync,
    suite: &str,
    context: &str,
) -> Report {
    use rayon::prelude::*;
    let mut r = Report::new(suite, context);
    let rows: Vec<_> = W2_TABLE
        .par_iter()
        .map(|(x, y, poles)| -> Result<crate::report::Check> {
            let id = format!("{x} {y}");
            let (Some(fx), Some(fy)) = (lookup(x), lookup(y)) else {
                return Err(crate::Error::UnknownGenerator(id));
            };
            let p = fx.is_odd() as u32 + fy.is_odd() as u32;
            let expected = poles.iter().map(|(o, s)| Ok((*o, expect(s, p)?))).collect::<Result<Vec<_>>>()?;
            let got = alg.ope(&fx, &fy)?;
            Ok(crate::report::ope_check(id, &got, &expected))
        })
        .collect();
    for (row, (x, y, _)) in rows.into_iter().zip(W2_TABLE) {
        match row {
            Ok(c) => r.push(c),
            Err(e) => r.push_bool(format!("{x} {y}"), false, Some(e.to_string())),
        }
    }
    r.finish()
}
