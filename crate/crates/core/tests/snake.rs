mod common;

use common::{quiver_and_pair, quiver_and_string, quivers};
use gentle_ext::corpus::qstar;
use gentle_ext::extensions::snake_graph;
use gentle_ext::snake::{
    enumerate_overlaps, is_crossing_overlap, sign_function_from_string, string_from_signed_snake_graph, Sign,
};
use gentle_ext::{build_snake_graph, enumerate_crossings, CrossingKind, Direction, Error, Walk};
use proptest::prelude::*;

proptest! {
    #[test]
    fn one_tile_per_vertex_of_the_string((i, w) in quiver_and_string(10)) {
        let q = &quivers()[i];
        let g = snake_graph(q, &w).unwrap();
        prop_assert_eq!(g.len(), w.len() + 1);
        let diags: Vec<_> = w.vertices(q).iter().map(|&v| q.edge_of(v)).collect();
        prop_assert_eq!(g.diagonals(), diags);
    }

    #[test]
    fn inverse_string_gives_the_rotated_graph((i, w) in quiver_and_string(10)) {
        let q = &quivers()[i];
        let g = snake_graph(q, &w).unwrap();
        let h = snake_graph(q, &w.invert(q)).unwrap();
        prop_assert!(g.same_up_to_symmetry(&h));
        prop_assert_eq!(g.canonical(), h.canonical());
    }

    #[test]
    fn exactly_one_sign_function_reads_back((i, w) in quiver_and_string(10)) {
        let q = &quivers()[i];
        let (g, f) = sign_function_from_string(q, &Walk::new(q, &w)).unwrap();
        prop_assert_eq!(string_from_signed_snake_graph(q, &g, f).unwrap(), w.clone());
        let other = string_from_signed_snake_graph(q, &g, f.negated());
        if w.is_empty() {
            prop_assert_eq!(other.unwrap(), w);
        } else {
            prop_assert!(other.is_err());
        }
    }

    #[test]
    fn interior_signs_follow_letter_directions((i, w) in quiver_and_string(10)) {
        let q = &quivers()[i];
        let (g, f) = sign_function_from_string(q, &Walk::new(q, &w)).unwrap();
        let want: Vec<Sign> = w
            .letters
            .iter()
            .map(|l| if l.inverse { Sign::Minus } else { Sign::Plus })
            .collect();
        prop_assert_eq!(f.interior_signs(&g), want);
    }

    #[test]
    fn overlaps_are_symmetric((i, a, b) in quiver_and_pair(8)) {
        let q = &quivers()[i];
        let (ga, gb) = (snake_graph(q, &a).unwrap(), snake_graph(q, &b).unwrap());
        let mut ab: Vec<_> = enumerate_overlaps(&ga, &gb, false)
            .into_iter()
            .map(|o| o.swapped(ga.len(), gb.len()))
            .collect();
        ab.sort();
        prop_assert_eq!(ab, enumerate_overlaps(&gb, &ga, false));
    }

    #[test]
    fn crossing_overlaps_match_module_crossings((i, a, b) in quiver_and_pair(8)) {
        let q = &quivers()[i];
        let same = a.same_module(q, &b);
        let ga = snake_graph(q, &a).unwrap();
        let gb = if same { ga.clone() } else { snake_graph(q, &b).unwrap() };
        let overlaps = enumerate_overlaps(&ga, &gb, same)
            .into_iter()
            .filter(|o| is_crossing_overlap(&ga, &gb, o).unwrap())
            .count();
        let modules = enumerate_crossings(q, &a, &b)
            .iter()
            .filter(|c| matches!(c.kind, CrossingKind::Module { .. }))
            .filter(|c| !same || c.direction == Direction::Forward)
            .count();
        prop_assert_eq!(overlaps, modules);
    }
}

#[test]
fn crossing_sequences_are_checked() {
    let t = qstar();
    let id = |s: &str| t.edge_id(s).unwrap();
    assert_eq!(build_snake_graph(&t, &[]), Err(Error::EmptySequence));
    assert!(matches!(
        build_snake_graph(&t, &[id("1"), id("5")]),
        Err(Error::NotAdjacent { position: 0 })
    ));
    assert!(matches!(
        build_snake_graph(&t, &[id("1"), id("b1")]),
        Err(Error::Precondition(_))
    ));
    let g = build_snake_graph(&t, &[id("6"), id("3"), id("4"), id("8"), id("7")]).unwrap();
    assert_eq!(g.len(), 5);
    assert!(!g.render(&t).is_empty());
}

#[test]
fn rotation_and_mirror_are_involutions() {
    let q = &quivers()[0];
    let w = gentle_ext::parse_string(q, "1>2<3<4>5>6<2").unwrap();
    let g = snake_graph(q, &w).unwrap();
    assert_eq!(g.rotated().rotated(), g);
    assert_eq!(g.mirrored().mirrored(), g);
    assert!(g.same_up_to_symmetry(&g.mirrored().rotated()));
}

#[test]
fn a_string_against_its_inverse_counts_as_a_self_crossing() {
    let q = gentle_ext::corpus::annulus_quiver();
    let a = gentle_ext::parse_string(&q, "b<c>d<a>b<c").unwrap();
    let b = a.invert(&q);
    let g = snake_graph(&q, &a).unwrap();
    let overlaps = enumerate_overlaps(&g, &g, true)
        .into_iter()
        .filter(|o| is_crossing_overlap(&g, &g, o).unwrap())
        .count();
    assert_eq!(overlaps, 1);
    assert_eq!(enumerate_crossings(&q, &a, &b).len(), 1);
    assert_eq!(enumerate_crossings(&q, &a, &a).len(), 1);
}
