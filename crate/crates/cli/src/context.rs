//! Algebra contexts selected by `--algebra`, and parsing within them.

use swcalc_core::commutant::{build_affine, AffineSpec, TensorModel};
use swcalc_core::free_systems::{build_free, FreeKind, FreeSystemSpec};
use swcalc_core::lattice_screening::{build_m, NamedFields, ScreeningModel, W2Basis};
use swcalc_core::swinf::{sd_algebra, Realization};
use swcalc_core::vertex::parse_field_at;
use swcalc_core::{AlgebraHandle, Error, FieldExpr, RatFunc, Result};

pub enum Context {
    Plain { alg: AlgebraHandle, level: RatFunc, name: String },
    Named { fields: NamedFields, name: String },
    Realized { real: Realization, name: String },
}

pub const CONTEXTS: &str = "bcbg:N, bc:N, betagamma:N, M:N, swinf[:C], V:N, gl:N, W:N, B:N, W2";

fn rank(arg: Option<&str>, spec: &str) -> Result<usize> {
    let n: usize = arg
        .ok_or_else(|| Error::InvalidArgument(format!("{spec} needs a rank, e.g. {spec}:2")))?
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad rank in {spec}")))?;
    if n == 0 {
        return Err(Error::InvalidArgument("the rank must be positive".into()));
    }
    Ok(n)
}

impl Context {
    /// `level` is the value of the symbol `k`.
    pub fn open(spec: &str, level: RatFunc) -> Result<Context> {
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (spec, None),
        };
        let name = spec.to_string();
        let plain = |alg: AlgebraHandle, level: RatFunc| Ok(Context::Plain { alg, level, name: name.clone() });
        match head {
            "bcbg" | "bc" | "betagamma" => {
                let kind = match head {
                    "bc" => FreeKind::Bc,
                    "betagamma" => FreeKind::BetaGamma,
                    _ => FreeKind::Bcbg,
                };
                plain(build_free(&FreeSystemSpec::new(rank(arg, head)?, kind))?, level)
            }
            "M" => plain(build_m(rank(arg, head)?)?, level),
            "swinf" => {
                let c = match arg {
                    Some(a) => RatFunc::parse(a)?,
                    None => level.clone(),
                };
                plain(sd_algebra(c), level)
            }
            "V" => Ok(Context::Realized { real: Realization::new(rank(arg, head)?)?, name }),
            "gl" => plain(build_affine(&AffineSpec::gl(rank(arg, head)?, level.clone()))?, level),
            "W" => {
                let m = ScreeningModel::new(rank(arg, head)?, level)?;
                let mut fields = NamedFields::new(&m.alg, m.k.clone());
                for (s, f) in m.w_generators()?.named() {
                    fields.insert(&s, f);
                }
                Ok(Context::Named { fields, name })
            }
            "B" => {
                let m = TensorModel::new(rank(arg, head)?, level)?;
                let mut fields = NamedFields::new(&m.alg, m.k.clone());
                for (s, f) in m.b_generators()? {
                    fields.insert(&s, f);
                }
                Ok(Context::Named { fields, name })
            }
            "W2" => Ok(Context::Named { fields: W2Basis::new(level)?.named, name }),
            _ => Err(Error::InvalidArgument(format!("unknown algebra {spec}; expected one of {CONTEXTS}"))),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Context::Plain { name, .. } | Context::Named { name, .. } | Context::Realized { name, .. } => name,
        }
    }

    /// The algebra in which parsed fields live.
    pub fn alg(&self) -> &AlgebraHandle {
        match self {
            Context::Plain { alg, .. } => alg,
            Context::Named { fields, .. } => &fields.alg,
            Context::Realized { real, .. } => &real.dst,
        }
    }

    pub fn parse(&self, src: &str) -> Result<FieldExpr> {
        let src = alias(src.trim());
        match self {
            Context::Plain { alg, level, .. } => parse_field_at(alg, &|_| None, level, &src),
            Context::Named { fields, .. } => fields.parse(&src),
            Context::Realized { real, .. } => real.realize_str(&src),
        }
    }
}

/// Short names such as `G+` for `G[+]`.
fn alias(src: &str) -> String {
    for stem in ["G", "Psi", "F", "X"] {
        for sign in ["+", "-"] {
            if src == format!("{stem}{sign}") {
                return format!("{stem}[{sign}]");
            }
        }
    }
    src.to_string()
}
