mod common;

use common::{quiver_and_pair, quiver_and_string, quivers};
use gentle_ext::corpus::qstar_quiver;
use gentle_ext::oracle::{ext1_presented, hom_dim, path_tree, present, projective, string_to_representation};
use gentle_ext::{ext1_dim_oracle, parse_string, Error};
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn string_modules_satisfy_the_relations((i, w) in quiver_and_string(10)) {
        let q = &quivers()[i];
        let m = string_to_representation::<Rational64>(q, &w);
        prop_assert_eq!(m.total_dim(), w.total_dim());
        prop_assert!(m.satisfies_relations(q).unwrap());
        prop_assert!(hom_dim(q, &m, &m).unwrap() >= 1);
    }

    #[test]
    fn results_do_not_depend_on_bases((i, a, b) in quiver_and_pair(6)) {
        let q = &quivers()[i];
        let m = string_to_representation::<Rational64>(q, &a);
        let n = string_to_representation::<Rational64>(q, &b);
        let (mr, nr) = (m.reversed_bases(q), n.reversed_bases(q));
        prop_assert_eq!(hom_dim(q, &m, &n).unwrap(), hom_dim(q, &mr, &nr).unwrap());
        let e = ext1_presented(q, &present(q, &m).unwrap().unwrap(), &n).unwrap();
        let er = ext1_presented(q, &present(q, &mr).unwrap().unwrap(), &nr).unwrap();
        prop_assert_eq!(e, er);
    }

    #[test]
    fn a_string_and_its_inverse_give_one_module((i, a, b) in quiver_and_pair(6)) {
        let q = &quivers()[i];
        let e = ext1_dim_oracle(q, &a, &b).unwrap();
        prop_assert_eq!(ext1_dim_oracle(q, &a.invert(q), &b).unwrap(), e);
        prop_assert_eq!(ext1_dim_oracle(q, &a, &b.invert(q)).unwrap(), e);
    }

    #[test]
    fn projectives_have_no_extensions_and_pick_out_vertices((i, w) in quiver_and_string(8)) {
        let q = &quivers()[i];
        let n = string_to_representation::<Rational64>(q, &w);
        for v in q.vertices() {
            let p = projective::<Rational64>(q, v).unwrap();
            prop_assert!(p.satisfies_relations(q).unwrap());
            prop_assert_eq!(hom_dim(q, &p, &n).unwrap(), n.dims[v.0]);
            let pp = present(q, &p).unwrap().unwrap();
            prop_assert_eq!(ext1_presented(q, &pp, &n).unwrap(), 0);
        }
    }

    #[test]
    fn exact_arithmetic_backends_agree((i, a, b) in quiver_and_pair(6)) {
        let q = &quivers()[i];
        let small = {
            let m = string_to_representation::<Rational64>(q, &a);
            let n = string_to_representation::<Rational64>(q, &b);
            ext1_presented(q, &present(q, &m).unwrap().unwrap(), &n).unwrap()
        };
        let big = {
            let m = string_to_representation::<BigRational>(q, &a);
            let n = string_to_representation::<BigRational>(q, &b);
            ext1_presented(q, &present(q, &m).unwrap().unwrap(), &n).unwrap()
        };
        prop_assert_eq!(small, big);
    }
}

#[test]
fn qstar_oracle_values() {
    let q = qstar_quiver();
    let w = |s: &str| parse_string(&q, s).unwrap();
    let (m1, m2) = (w("1>2<3<4>5>6<2"), w("6>3<4<8>7"));
    assert_eq!(ext1_dim_oracle(&q, &m1, &m2).unwrap(), 2);
    assert_eq!(ext1_dim_oracle(&q, &m2, &m1).unwrap(), 1);
    assert_eq!(ext1_dim_oracle(&q, &m1, &m1).unwrap(), 1);
    assert_eq!(ext1_dim_oracle(&q, &m2, &m2).unwrap(), 0);
}

#[test]
fn projective_at_7_stops_at_the_relation() {
    let q = qstar_quiver();
    let v = q.vertex_by_label("7").unwrap();
    assert_eq!(path_tree(&q, v, 100).unwrap().ends.len(), 2);
    assert!(matches!(path_tree(&q, v, 1), Err(Error::PathBound { bound: 1, .. })));
}
