use super::*;
use crate::coeff::RatFunc;
use std::sync::Arc;

fn w(n: i64, d: i64) -> Weight {
    Weight::new(n, d)
}

/// Rank-1 bc and βγ with the default weights, built directly from the registry API.
fn bcbg() -> AlgebraHandle {
    let gens = vec![
        GeneratorSymbol::new("b", &[1], true, w(1, 3)),
        GeneratorSymbol::new("beta", &[1], false, w(5, 6)),
        GeneratorSymbol::new("c", &[1], true, w(2, 3)),
        GeneratorSymbol::new("gamma", &[1], false, w(1, 6)),
    ];
    let one = PairOpe::new(vec![LinearField::scalar(RatFunc::one())]);
    Algebra::register("bcbg", gens, vec![(0, 2, one.clone()), (1, 3, one)]).unwrap()
}

fn p(a: &AlgebraHandle, s: &str) -> FieldExpr {
    parse_field(a, s).unwrap()
}

#[test]
fn generator_products() {
    let a = bcbg();
    let (beta, gamma) = (p(&a, "beta[1]"), p(&a, "gamma[1]"));
    assert_eq!(a.circle(&beta, &gamma, 0).unwrap(), a.one());
    assert_eq!(a.circle(&gamma, &beta, 0).unwrap(), a.one().scale_int(-1));
    let (b, c) = (p(&a, "b[1]"), p(&a, "c[1]"));
    assert_eq!(a.circle(&c, &b, 0).unwrap(), a.one());
    for n in 0..4 {
        assert!(a.circle(&b, &b, n).unwrap().is_zero());
    }
    assert!(a.ope(&gamma, &gamma).unwrap().is_regular());
}

#[test]
fn identity_and_negative_products() {
    let a = bcbg();
    let x = p(&a, "no(b[1],d(gamma[1]))");
    assert_eq!(a.circle(&x, &a.one(), -1).unwrap(), x);
    assert_eq!(a.circle(&a.one(), &x, -1).unwrap(), x);
    assert!(a.circle(&a.one(), &x, 0).unwrap().is_zero());
    let (beta, gamma) = (p(&a, "beta[1]"), p(&a, "gamma[1]"));
    assert_eq!(a.circle(&beta, &gamma, -2).unwrap(), p(&a, "no(d(beta[1]),gamma[1])"));
    // m! a∘_{-m-1} b = :(∂^m a) b:
    let lhs = a.circle(&beta, &gamma, -3).unwrap().scale_int(2);
    assert_eq!(lhs, p(&a, "no(d^2(beta[1]),gamma[1])"));
}

#[test]
fn normal_ordering() {
    let a = bcbg();
    assert_eq!(p(&a, "no(gamma[1],beta[1])"), p(&a, "no(beta[1],gamma[1])"));
    assert!(p(&a, "no(b[1],b[1])").is_zero());
    assert_eq!(p(&a, "no(c[1],b[1])"), p(&a, "-no(b[1],c[1])"));
    let x = p(&a, "no(b[1],gamma[1])");
    assert_eq!(a.derivative(&x).unwrap(), p(&a, "no(d(b[1]),gamma[1]) + no(b[1],d(gamma[1]))"));
}

#[test]
fn current_current() {
    let a = bcbg();
    let j = p(&a, "no(b[1],c[1])");
    let o = a.ope(&j, &j).unwrap();
    assert_eq!(o.poles.len(), 1);
    assert_eq!(o.pole(2).unwrap(), &a.one());
    let s = p(&a, "no(beta[1],gamma[1])");
    let o = a.ope(&s, &s).unwrap();
    assert_eq!(o.pole(2).unwrap(), &a.one().scale_int(-1));
}

#[test]
fn weight_bases() {
    let a = bcbg();
    assert_eq!(a.weight_basis(w(1, 3)).unwrap(), vec![p(&a, "b[1]"), p(&a, "no(gamma[1],gamma[1])")]);
    let basis = a.weight_basis(w(1, 1)).unwrap();
    assert!(basis.contains(&p(&a, "no(beta[1],gamma[1])")));
    assert!(basis.contains(&p(&a, "no(b[1],c[1])")));
    assert!(basis.iter().all(|x| x.weight() == Some(w(1, 1))));
    assert!(a.weight_basis(w(-1, 2)).is_err());
}

#[test]
fn mixed_algebras_rejected() {
    let a = bcbg();
    let b = bcbg();
    let x = p(&a, "b[1]");
    let y = p(&b, "c[1]");
    assert!(matches!(a.circle(&x, &y, 0), Err(crate::Error::MixedAlgebra)));
    assert!(x.try_add(&y).is_err());
    assert!(!Arc::ptr_eq(&a, &b));
}

#[test]
fn printer_roundtrip() {
    let a = bcbg();
    for s in ["-(1/6)*no(d(beta[1]),gamma[1]) + 2*b[1]", "one", "3*d^2(c[1])", "0"] {
        let x = p(&a, s);
        assert_eq!(p(&a, &x.to_string()), x, "{s} -> {x}");
    }
}

#[test]
fn property_suites_small() {
    let r = super::properties::property_report(40, 1000);
    assert!(r.passed(), "{r}");
}
