//! Parser for the field-expression grammar:
//! `b[1]`, `J[+,2]`, `d(e)`, `d^m(e)`, `no(e1,…,em)`, `one`, scalars in coefficient syntax.

use super::algebra::AlgebraHandle;
use super::expr::FieldExpr;
use crate::coeff::{Cursor, RatFunc};
use crate::error::{Error, Result};

enum Val {
    Scalar(RatFunc),
    Field(FieldExpr),
}

impl Val {
    fn into_field(self, alg: &AlgebraHandle) -> FieldExpr {
        match self {
            Val::Scalar(c) => alg.scalar(c),
            Val::Field(f) => f,
        }
    }
}

/// Names resolved before the generator registry, e.g. composite fields `T` or `G[+]`.
pub type Env<'a> = &'a dyn Fn(&str) -> Option<FieldExpr>;

struct Ctx<'a> {
    alg: &'a AlgebraHandle,
    env: Option<Env<'a>>,
    level: Option<&'a RatFunc>,
}

pub fn parse_field(alg: &AlgebraHandle, src: &str) -> Result<FieldExpr> {
    parse(&Ctx { alg, env: None, level: None }, src)
}

/// Parses with atoms looked up in `env` first.
pub fn parse_field_with(alg: &AlgebraHandle, env: Env<'_>, src: &str) -> Result<FieldExpr> {
    parse(&Ctx { alg, env: Some(env), level: None }, src)
}

/// As [`parse_field_with`], with the symbol `k` standing for `level`.
pub fn parse_field_at(alg: &AlgebraHandle, env: Env<'_>, level: &RatFunc, src: &str) -> Result<FieldExpr> {
    parse(&Ctx { alg, env: Some(env), level: Some(level) }, src)
}

fn parse(cx: &Ctx, src: &str) -> Result<FieldExpr> {
    let mut c = Cursor::new(src);
    let v = expr(cx, &mut c)?;
    if !c.at_end() {
        return Err(c.err("trailing input"));
    }
    Ok(v.into_field(cx.alg))
}

fn expr(cx: &Ctx, c: &mut Cursor) -> Result<Val> {
    let mut acc = term(cx, c)?;
    loop {
        let plus = if c.eat('+') {
            true
        } else if c.eat('-') {
            false
        } else {
            return Ok(acc);
        };
        let rhs = term(cx, c)?;
        acc = match (acc, rhs) {
            (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(if plus { a + b } else { a - b }),
            (a, b) => {
                let (a, b) = (a.into_field(cx.alg), b.into_field(cx.alg));
                Val::Field(if plus { a.try_add(&b)? } else { a.try_sub(&b)? })
            }
        };
    }
}

fn term(cx: &Ctx, c: &mut Cursor) -> Result<Val> {
    let mut acc = unary(cx, c)?;
    loop {
        let pos = c.pos();
        if c.eat('*') {
            let rhs = unary(cx, c)?;
            acc = match (acc, rhs) {
                (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(a * b),
                (Val::Scalar(a), Val::Field(f)) | (Val::Field(f), Val::Scalar(a)) => Val::Field(f.scale(&a)),
                (Val::Field(_), Val::Field(_)) => {
                    return Err(Error::Parse { pos, msg: "product of two fields; use no(...)".into() })
                }
            };
        } else if c.eat('/') {
            let rhs = unary(cx, c)?;
            let d = match rhs {
                Val::Scalar(d) => d,
                Val::Field(_) => return Err(Error::Parse { pos, msg: "division by a field".into() }),
            };
            let inv = d.recip()?;
            acc = match acc {
                Val::Scalar(a) => Val::Scalar(a * inv),
                Val::Field(f) => Val::Field(f.scale(&inv)),
            };
        } else {
            return Ok(acc);
        }
    }
}

fn unary(cx: &Ctx, c: &mut Cursor) -> Result<Val> {
    if c.eat('-') {
        return Ok(match unary(cx, c)? {
            Val::Scalar(a) => Val::Scalar(-a),
            Val::Field(f) => Val::Field(-f),
        });
    }
    if c.eat('+') {
        return unary(cx, c);
    }
    let base = atom(cx, c)?;
    if c.eat('^') {
        let e = c.integer().ok_or_else(|| c.err("expected exponent"))?;
        let e: u32 = e.try_into().map_err(|_| c.err("exponent too large"))?;
        return match base {
            Val::Scalar(a) => Ok(Val::Scalar(a.pow(e))),
            Val::Field(_) => Err(c.err("powers of fields are not supported; use no(...)")),
        };
    }
    Ok(base)
}

fn atom(cx: &Ctx, c: &mut Cursor) -> Result<Val> {
    if c.eat('(') {
        let v = expr(cx, c)?;
        c.expect(')')?;
        return Ok(v);
    }
    if let Some(n) = c.integer() {
        return Ok(Val::Scalar(RatFunc::from_rational(num_rational::BigRational::from_integer(n))));
    }
    let pos = c.pos();
    let id = c.ident().ok_or_else(|| Error::Parse { pos, msg: "expected an atom".into() })?;
    match id {
        "k" => Ok(Val::Scalar(cx.level.cloned().unwrap_or_else(RatFunc::kappa))),
        "one" => Ok(Val::Field(cx.alg.one())),
        "d" if matches!(c.peek(), Some('(') | Some('^')) => {
            let mut m = 1u32;
            if c.eat('^') {
                let e = c.integer().ok_or_else(|| c.err("expected derivative order"))?;
                m = e.try_into().map_err(|_| c.err("derivative order too large"))?;
            }
            c.expect('(')?;
            let inner = expr(cx, c)?.into_field(cx.alg);
            c.expect(')')?;
            Ok(Val::Field(cx.alg.derivative_n(&inner, m)?))
        }
        "no" if c.peek() == Some('(') => {
            c.expect('(')?;
            let mut items = vec![expr(cx, c)?.into_field(cx.alg)];
            while c.eat(',') {
                items.push(expr(cx, c)?.into_field(cx.alg));
            }
            c.expect(')')?;
            Ok(Val::Field(cx.alg.nprod(&items)?))
        }
        name => {
            let label = if c.eat('[') {
                let mut parts = Vec::new();
                loop {
                    if c.eat('+') {
                        parts.push("+".to_string());
                    } else if c.eat('-') {
                        match c.integer() {
                            Some(n) => parts.push(format!("-{n}")),
                            None => parts.push("-".to_string()),
                        }
                    } else if let Some(n) = c.integer() {
                        parts.push(n.to_string());
                    } else {
                        return Err(c.err("expected index"));
                    }
                    if c.eat(']') {
                        break;
                    }
                    c.expect(',')?;
                }
                format!("{name}[{}]", parts.join(","))
            } else {
                name.to_string()
            };
            if let Some(f) = cx.env.and_then(|e| e(&label)) {
                return Ok(Val::Field(f));
            }
            let g = cx.alg.table().lookup(&label).ok_or(Error::UnknownGenerator(label))?;
            Ok(Val::Field(cx.alg.gen_id(g)))
        }
    }
}
