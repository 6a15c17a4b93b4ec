use super::*;

fn k() -> RatFunc {
    RatFunc::kappa()
}

#[test]
fn affine_examples() {
    let alg = build_affine(&AffineSpec::gl(2, k())).unwrap();
    let x = |s: &str| alg.gen(s).unwrap();
    assert_eq!(alg.circle(&x("X[1,2]"), &x("X[2,1]"), 1).unwrap(), alg.scalar(k()));
    assert_eq!(alg.circle(&x("X[1,1]"), &x("X[1,2]"), 0).unwrap(), x("X[1,2]"));
    let s = build_affine(&AffineSpec::gl_super(2, 2, "E", RatFunc::from_int(-2))).unwrap();
    let e = |l: &str| s.gen(l).unwrap();
    assert_eq!(s.circle(&e("E[1,3]"), &e("E[3,1]"), 1).unwrap(), s.scalar(RatFunc::from_int(-2)));
}

#[test]
fn broken_jacobi_is_reported() {
    let mut spec = AffineSpec::gl(2, k());
    spec.bracket.insert((0, 1), [(1, RatFunc::from_int(2))].into_iter().collect());
    spec.bracket.insert((1, 0), [(1, RatFunc::from_int(-2))].into_iter().collect());
    let err = build_affine(&spec).unwrap_err();
    assert!(err.to_string().contains("fails for"), "{err}");
}

#[test]
fn b_generators_symbolic() {
    for n in 1..=2 {
        let r = verify_b_generators(n, k()).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn mutated_n_leaves_commutant() {
    let m = TensorModel::symbolic(2).unwrap();
    let gens = m.b_generators_with(&RatFunc::zero()).unwrap();
    assert!(!m.in_commutant(&gens[1].1).unwrap());
    let x = m.alg.circle(&m.currents[1], &m.b_generators().unwrap()[4].1, 0).unwrap();
    assert!(x.is_zero());
    let x = m.alg.circle(&m.currents[0], &m.b_generators().unwrap()[1].1, 1).unwrap();
    assert!(x.is_zero());
}

#[test]
fn commutant_examples() {
    let m = TensorModel::symbolic(2).unwrap();
    let half = m.commutant_basis(Weight::new(1, 2)).unwrap();
    assert_eq!(half.len(), 1);
    let gens = m.b_generators().unwrap();
    let span = |basis: &[FieldExpr], x: &FieldExpr| {
        let mut e = Echelon::new();
        for b in basis {
            e.push(b.monomials().into_iter().collect::<SparseVec<Mono, RatFunc>>());
        }
        e.contains(x.monomials().into_iter().collect())
    };
    assert!(span(&half, &gens[2].1));
    let one = m.commutant_basis(Weight::new(1, 1)).unwrap();
    assert!(span(&one, &gens[0].1) && span(&one, &gens[1].1));
    let m1 = TensorModel::symbolic(1).unwrap();
    let g1 = m1.b_generators().unwrap();
    assert!(span(&m1.commutant_basis(Weight::new(5, 2)).unwrap(), &g1[5].1));
    assert!(span(&m1.commutant_basis(Weight::new(3, 2)).unwrap(), &g1[4].1));
    assert!(m.commutant_basis(Weight::new(3, 1)).is_err());
}

#[test]
fn phi_examples() {
    let m = TensorModel::symbolic(2).unwrap();
    let t = m.t_fields().unwrap();
    let j00 = crate::free_systems::j_field(&m.alg, 2, JLabel::Zero, 0).unwrap();
    assert_eq!(m.phi(&t[0].1), j00);
    let gens = m.b_generators().unwrap();
    assert_eq!(m.phi(&gens[2].1), gens[2].1);
    let xb = m.alg.wick(&m.x(1, 2).unwrap(), &m.g("b", 1).unwrap()).unwrap();
    assert!(m.phi(&xb).is_zero());
}

#[test]
fn commutant_invariants_low_weight() {
    let ws: Vec<Weight> = (1..=4).map(|h| Weight::new(h, 2)).collect();
    let r = verify_commutant_invariants(2, &ws).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn printed_t01_needs_an_affine_correction() {
    let m = TensorModel::symbolic(2).unwrap();
    let t01 = m.t_fields().unwrap().remove(4).1;
    assert!(!m.in_commutant(&t01).unwrap());
    let lift = m.commutant_lift(&m.phi(&t01)).unwrap();
    assert!(m.in_commutant(&lift).unwrap());
    assert!(m.phi(&lift.try_sub(&t01).unwrap()).is_zero());
}

#[test]
fn b_limits() {
    for n in 1..=2 {
        let r = b_limit_check(n).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn identification_symbolic() {
    let r = identify_w2_b2(k()).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn identification_numeric() {
    for k0 in [1, 3, -5] {
        let r = identify_w2_b2(RatFunc::from_int(k0)).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn gl22_realization() {
    let r = gl22_check().unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.checks.len(), crate::lattice_screening::W2_TABLE.len());
}
