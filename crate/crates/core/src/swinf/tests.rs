use super::*;
use crate::parse_field;
use JLabel::*;

#[test]
fn generator_labels_and_weights() {
    let alg = sd_algebra(RatFunc::kappa());
    let x = parse_field(&alg, "J[-,1]").unwrap();
    assert_eq!(x, jgen(&alg, Minus, 1));
    assert_eq!(x.weight(), Some(crate::vertex::Weight::new(5, 2)));
    assert_eq!(jgen(&alg, Plus, 0).weight(), Some(crate::vertex::Weight::new(1, 2)));
    assert_eq!(x.to_string(), "J[-,1]");
}

#[test]
fn gl11_subalgebra_abstract() {
    let c = RatFunc::kappa();
    let alg = sd_algebra(c.clone());
    let j = |a, k| jgen(&alg, a, k);
    let o = alg.ope(&j(Zero, 0), &j(Zero, 0)).unwrap();
    assert_eq!(o.pole(2).unwrap(), &alg.scalar(c.clone()));
    let o = alg.ope(&j(One, 0), &j(One, 0)).unwrap();
    assert_eq!(o.pole(2).unwrap(), &alg.scalar(-c.clone()));
    let o = alg.ope(&j(Plus, 0), &j(Minus, 0)).unwrap();
    assert_eq!(o.pole(2).unwrap(), &alg.scalar(c.clone()));
    assert_eq!(o.pole(1).unwrap(), &-(j(Zero, 0) + j(One, 0)));
    let o = alg.ope(&j(Zero, 0), &j(Minus, 0)).unwrap();
    assert_eq!(o.pole(1).unwrap(), &j(Minus, 0));
}

#[test]
fn weakfg_constants() {
    let r = verify_weakfg(&sd_algebra(RatFunc::kappa()), 3);
    assert!(r.passed(), "{r}");
}

#[test]
fn realization_small() {
    for n in 1..=2 {
        let r = verify_realization(n, 1).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn relations_n1() {
    let real = Realization::new(1).unwrap();
    let r = verify_relations(&real);
    assert!(r.passed(), "{r}");
    let rel = relation_space(&real, crate::vertex::Weight::new(3, 2)).unwrap();
    assert!(lowering_stays_relation(&real, &rel[0].expr).unwrap());
    assert!(!singular_check(&jgen(&real.src, Zero, 1)).unwrap());
    let zero = sd_algebra(RatFunc::zero());
    assert!(singular_check(&jgen(&zero, Plus, 0)).unwrap());
}

#[test]
fn omega_changes() {
    let real = Realization::new(2).unwrap();
    let p = |s: &str| parse_field(&real.src, s).unwrap();
    for k in 0..3 {
        assert_eq!(omega_change(&real, Zero, 0, k).unwrap(), -jgen(&real.src, Zero, k));
        assert_eq!(omega_change(&real, One, 0, k).unwrap(), jgen(&real.src, One, k));
    }
    assert_eq!(omega_change(&real, Zero, 1, 0).unwrap(), p("-d(J[0,0]) + J[0,1]"));
    let w = omega_change(&real, Minus, 2, 1).unwrap();
    let direct = real.dst.derivative_n(&real.dst.gen("beta[1]").unwrap(), 2).unwrap();
    let direct = real.dst.wick(&direct, &real.dst.derivative(&real.dst.gen("c[1]").unwrap()).unwrap()).unwrap();
    let d2 = real.dst.derivative_n(&real.dst.gen("beta[2]").unwrap(), 2).unwrap();
    let direct = direct + real.dst.wick(&d2, &real.dst.derivative(&real.dst.gen("c[2]").unwrap()).unwrap()).unwrap();
    assert_eq!(real.apply(&w).unwrap(), direct);
}

#[test]
fn decoupling_n1() {
    let real = Realization::new(1).unwrap();
    let p = decouple(&real, One, 1).unwrap();
    assert_eq!(real.apply(&p).unwrap(), real.j(One, 1).unwrap());
    assert!(!p.uses(|g| gen_of(g).1 >= 1));
}

#[test]
fn mutation_is_caught() {
    let real = Realization::mutated(1).unwrap();
    let r = verify_with(&real, 0);
    let first = r.failures().next().expect("mutation must fail");
    assert!(r.failures().any(|c| c.id == "J[0,0] J[+,0]"), "first failure {}", first.id);
}

#[test]
fn decoupling_and_nonlinear_n2() {
    let real = Realization::new(2).unwrap();
    let r = verify_decoupling_n2(&real);
    assert!(r.passed(), "{r}");
    assert_eq!(r.checks.len(), 14);
    let sol = decouple(&real, Zero, 2).unwrap();
    assert_eq!(sol, parse_field(&real.src, DECOUPLING_N2[0].1).unwrap());
}

#[test]
fn relations_n2() {
    let real = Realization::new(2).unwrap();
    let r = verify_relations(&real);
    assert!(r.passed(), "{r}");
}

#[test]
fn even_subsectors_close() {
    let c = RatFunc::kappa();
    let alg = sd_algebra(c.clone());
    for (lab, level) in [(Zero, c.clone()), (One, -c.clone())] {
        for k in 0..3 {
            for l in 0..3 {
                let o = alg.ope(&jgen(&alg, lab, k), &jgen(&alg, lab, l)).unwrap();
                for x in o.poles.values() {
                    assert!(!x.uses(|g| gen_of(g).0 != lab));
                }
                if k == 0 && l == 0 {
                    assert_eq!(o.pole(2).unwrap(), &alg.scalar(level.clone()));
                }
            }
        }
    }
}

#[test]
fn howe_pair_low_weight() {
    for n in 1..=2 {
        let real = Realization::new(n).unwrap();
        for h in 0..=6 {
            let (comm, span) = howe_check(&real, crate::vertex::Weight::new(h, 2)).unwrap();
            assert_eq!(comm, span, "n={n} weight {h}/2");
        }
    }
}
