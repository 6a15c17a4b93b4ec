use super::*;
use crate::coeff::RatFunc;

fn show(r: &Report) {
    if !r.passed() {
        println!("{r}");
    }
}

#[test]
fn bosonization() {
    let r = bosonization_check().unwrap();
    show(&r);
    assert!(r.passed());
}

#[test]
fn lemma_q1_and_q2() {
    for n in 1..=3 {
        let m = ScreeningModel::symbolic(n).unwrap();
        let r = verify_lemma_q1(&m).unwrap();
        show(&r);
        assert!(r.passed());
        let r = verify_lemma_q2(&m).unwrap();
        show(&r);
        assert!(r.passed());
    }
}

#[test]
fn kernel_theorem() {
    for n in 1..=3 {
        let r = verify_kernel_theorem(n, RatFunc::kappa()).unwrap();
        show(&r);
        assert!(r.passed(), "n = {n}");
        assert_eq!(r.checks.len(), 6 * (2 * n - 1));
    }
}

#[test]
fn w2_table() {
    let r = verify_w2_opes(RatFunc::kappa()).unwrap();
    show(&r);
    assert!(r.passed());
}

#[test]
fn build_m_pairings() {
    let m = build_m(2).unwrap();
    let g = |s: &str| m.gen(s).unwrap();
    let o = m.ope(&g("dY[1]"), &g("dX[1]")).unwrap();
    assert_eq!(o.pole(2), Some(&m.one()));
    assert_eq!(o.max_order(), 2);
    assert!(m.ope(&g("dY[1]"), &g("dY[2]")).unwrap().is_regular());
    assert!(m.ope(&g("dY[1]"), &g("dX[2]")).unwrap().is_regular());
    let o = m.ope(&g("b[1]"), &g("c[1]")).unwrap();
    assert_eq!(o.pole(1), Some(&m.one()));
    assert_eq!(o.max_order(), 1);
    assert!(m.ope(&g("b[1]"), &g("c[2]")).unwrap().is_regular());
}

#[test]
fn generator_examples() {
    let m = ScreeningModel::symbolic(1).unwrap();
    assert_eq!(m.w_generators().unwrap().psi_plus, m.alg.gen("b[1]").unwrap());
    let m = ScreeningModel::symbolic(2).unwrap();
    let w = m.w_generators().unwrap();
    let want = crate::parse_field_with(&m.alg, &|s: &str| match s {
        "N1" => m.n_i(1).ok(),
        "N2" => m.n_i(2).ok(),
        _ => None,
    }, "-N1 - N2")
    .unwrap()
    .try_add(&m.e(1).unwrap().scale(&RatFunc::kappa().recip().unwrap()))
    .unwrap();
    assert_eq!(w.n, want);
}

#[test]
fn integrality_guard() {
    let alg = build_lattice(&HeisenbergLattice::orthonormal(1), "guard").unwrap();
    let phi = alg.lookup("dphi[1]").unwrap();
    let half = vec![(phi, RatFunc::from_rational(crate::coeff::q(1, 2)))];
    let one = vec![(phi, RatFunc::one())];
    assert!(matches!(exp_exp_circle(&alg, &half, &one, 0), Err(crate::Error::NonIntegralPairing(_))));
    assert!(exp_exp_circle(&alg, &one, &one, 0).unwrap().is_zero());
}

#[test]
fn mutated_f_plus_fails_at_q_beta1() {
    let m = ScreeningModel::symbolic(2).unwrap();
    let r = verify_kernels_of(&m, &m.w_generators_mutated().unwrap()).unwrap();
    let failed: Vec<&str> = r.checks.iter().filter(|c| c.status != crate::report::Status::Pass).map(|c| c.id.as_str()).collect();
    assert_eq!(failed, vec!["Q_beta1 F[+]"]);
}

#[test]
fn w2_table_numeric() {
    for k in [3, -5] {
        let r = verify_w2_opes(RatFunc::from_int(k)).unwrap();
        show(&r);
        assert!(r.passed(), "k = {k}");
    }
}

#[test]
fn w2_basis_examples() {
    let b = W2Basis::symbolic().unwrap();
    let t = b.get("T").unwrap();
    let h = b.get("H").unwrap();
    let o = b.alg().ope(t, t).unwrap();
    assert!(o.pole(4).is_none());
    let o = b.alg().ope(t, h).unwrap();
    assert_eq!(o.pole(2), Some(&h.scale_int(2)));
    assert_eq!(o.pole(1), Some(&b.alg().derivative(h).unwrap()));
    assert_eq!(o.pole(4), Some(&b.parse("(3/k^2 - 1)*one").unwrap()));
    for s in ["T", "H", "G[+]", "G[-]"] {
        let x = b.get(s).unwrap();
        for q in b.model.screenings().unwrap() {
            assert!(screening_apply(&q, x).unwrap().is_zero(), "{} {s}", q.label);
        }
    }
}

#[test]
fn w_limit() {
    for n in 1..=2 {
        let r = w_limit_check(n).unwrap();
        show(&r);
        assert!(r.passed(), "n = {n}");
    }
}

#[test]
fn free_image_forms() {
    use crate::free_systems::bilinear;
    let (f, im) = free_images(2).unwrap();
    let get = |s: &str| im.iter().find(|(n, _)| n == s).unwrap().1.clone();
    println!("F+ = {}\nF- = {}", get("F[+]"), get("F[-]"));
    assert_eq!(get("N"), bilinear(&f, 2, "b", "c", 0).unwrap());
}
