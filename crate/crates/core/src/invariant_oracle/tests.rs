use super::*;
use crate::free_systems::{build_free, FreeSystemSpec};

fn w(n: i64, d: i64) -> Weight {
    Weight::new(n, d)
}

#[test]
fn small_invariant_dimensions() {
    assert_eq!(invariant_dim(1, w(0, 1)).unwrap(), 1);
    assert_eq!(invariant_dim(1, w(1, 2)).unwrap(), 1);
    assert_eq!(invariant_dim(2, w(1, 2)).unwrap(), 1);
    assert_eq!(weyl_span_dim(2, w(1, 1)).unwrap(), 2);
    assert_eq!(invariant_dim(2, w(1, 3)).unwrap(), 0);
    assert!(invariant_dim(1, w(9, 2)).is_err());
}

#[test]
fn first_relation_at_weight_three_halves() {
    assert_eq!(free_model_dim(w(3, 2)).unwrap(), 5);
    assert_eq!(weyl_span_dim(1, w(3, 2)).unwrap(), 4);
    assert_eq!(first_relation_weight(1).unwrap(), w(3, 2));
    let err = first_relation_weight_with(1, w(2, 1), |x| weyl_span_dim(1, x));
    assert!(matches!(err, Err(Error::NoSolution(_))));
}

#[test]
fn graded_dimensions_match_weight_bases() {
    for n in 1..=2 {
        let alg = build_free(&FreeSystemSpec::bcbg(n)).unwrap();
        for s in 0..=12 {
            let ws = w(s, 6);
            assert_eq!(graded_monomials(n, s).len(), alg.weight_basis(ws).unwrap().len(), "n={n} weight {ws}");
        }
    }
}

#[test]
fn bosonic_determinant() {
    let rel = build_classical_relation(1, &[Index::bos(0), Index::bos(1)], &[Index::bos(0), Index::bos(1)]).unwrap();
    let q = |k, l| SuperPoly::var(q_var(JLabel::One, k, l));
    let det = q(0, 0).mul(&q(1, 1)).add(&q(0, 1).mul(&q(1, 0)).scale(&-BigRational::one()));
    assert_eq!(rel.poly, det);
    assert!(rel.vanishes());
    assert!(build_classical_relation(1, &[Index::bos(0), Index::bos(0)], &[Index::bos(0), Index::bos(1)]).is_err());
}

#[test]
fn d_plus_configuration() {
    let rel = build_classical_relation(1, &[Index::fer(0), Index::fer(0)], &[Index::bos(0), Index::fer(0)]).unwrap();
    assert!(!rel.poly.is_zero());
    assert_eq!(rel.weight(), w(3, 2));
    assert!(rel.vanishes());
}

#[test]
fn symmetry_under_index_swaps() {
    let rows = [Index::bos(0), Index::bos(1), Index::fer(0)];
    let cols = [Index::fer(1), Index::bos(0), Index::fer(0)];
    let base = build_classical_relation(2, &rows, &cols).unwrap().poly;
    let swapped_b = build_classical_relation(2, &[rows[1], rows[0], rows[2]], &cols).unwrap().poly;
    assert_eq!(swapped_b, base.scale(&-BigRational::one()));
    let swapped_f = build_classical_relation(2, &rows, &[cols[2], cols[1], cols[0]]).unwrap().poly;
    assert_eq!(swapped_f, base);
}

#[test]
fn all_relations_vanish_n1() {
    for (i, j) in all_configurations(1, 2) {
        let rel = build_classical_relation(1, &i, &j).unwrap();
        assert!(rel.vanishes(), "{i:?} {j:?}");
    }
}

#[test]
fn fft_desk_scale_n1() {
    for h in 0..=6 {
        let ww = w(h, 2);
        assert_eq!(invariant_dim(1, ww).unwrap(), weyl_span_dim(1, ww).unwrap(), "weight {ww}");
    }
}

#[test]
fn triplet_dump() {
    let t = dump_triplets(2, w(1, 2)).unwrap();
    assert!(!t.is_empty());
    assert!(t.lines().all(|l| l.split(' ').count() == 3));
}

#[test]
fn no_relations_below_n_plus_half_n2() {
    assert_eq!(first_relation_weight(2).unwrap(), w(5, 2));
}

#[test]
fn fft_desk_scale_n2() {
    for h in 0..=6 {
        let ww = w(h, 2);
        assert_eq!(invariant_dim(2, ww).unwrap(), weyl_span_dim(2, ww).unwrap(), "weight {ww}");
    }
}

#[test]
fn all_relations_vanish_n2() {
    let mut count = 0;
    for (i, j) in all_configurations(2, 2) {
        let rel = build_classical_relation(2, &i, &j).unwrap();
        assert!(rel.vanishes(), "{i:?} {j:?}");
        count += 1;
    }
    assert!(count > 50);
}

