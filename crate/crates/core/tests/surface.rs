use std::collections::BTreeSet;

use gentle_ext::corpus::{annulus, flip_closure, pentagon, qstar, qstar_quiver};
use gentle_ext::surface::Edge;
use gentle_ext::{derive_quiver, load_triangulation, Error, Quiver, Triangulation};

fn edge(id: &str, boundary: bool) -> Edge {
    Edge {
        id: id.to_string(),
        boundary,
    }
}

fn triangle_set(t: &Triangulation) -> BTreeSet<BTreeSet<String>> {
    t.triangles()
        .iter()
        .map(|s| s.iter().map(|&e| t.label(e).to_string()).collect())
        .collect()
}

/// The axioms of a gentle quiver, checked directly on the arrow list.
fn assert_gentle(q: &Quiver) {
    for v in q.vertices() {
        assert!(q.out_arrows(v).len() <= 2);
        assert!(q.in_arrows(v).len() <= 2);
        for &a in q.in_arrows(v) {
            let zero = q.out_arrows(v).iter().filter(|&&b| q.is_relation(a, b)).count();
            let nonzero = q.out_arrows(v).len() - zero;
            assert!(zero <= 1 && nonzero <= 1);
        }
        for &b in q.out_arrows(v) {
            let zero = q.in_arrows(v).iter().filter(|&&a| q.is_relation(a, b)).count();
            assert!(zero <= 1 && q.in_arrows(v).len() - zero <= 1);
        }
    }
    for &(a, b) in q.relations() {
        assert_eq!(q.arrow(a).target, q.arrow(b).source);
        assert_eq!(q.arrow(a).triangle, q.arrow(b).triangle);
    }
}

#[test]
fn flips_preserve_gentleness_and_marked_points() {
    for (t, depth) in [(annulus(), 3), (qstar(), 2), (pentagon(), 3)] {
        let points = t.marked_points();
        let all = flip_closure(&t, depth);
        assert!(all.len() > 1);
        for f in &all {
            assert_eq!(f.marked_points(), points);
            let q = derive_quiver(f).unwrap();
            assert_gentle(&q);
            assert_eq!(q.vertex_count(), derive_quiver(&t).unwrap().vertex_count());
        }
    }
}

#[test]
fn flipping_twice_restores_the_triangles() {
    for t in [annulus(), qstar(), pentagon()] {
        for e in 0..t.edges().len() {
            match t.flip(e) {
                None => assert!(t.is_boundary(e) || t.triangles_of(e).len() < 2),
                Some(f) => {
                    assert_ne!(triangle_set(&f), triangle_set(&t));
                    let back = f.flip(e).unwrap();
                    assert_eq!(triangle_set(&back), triangle_set(&t));
                }
            }
        }
    }
}

#[test]
fn qstar_quiver_shape() {
    let q = qstar_quiver();
    assert_eq!(q.vertex_count(), 8);
    assert_eq!(q.cycles().len(), 3);
    assert_gentle(&q);
    let name = |a| q.arrow_name(a);
    let rels: BTreeSet<(String, String)> = q.relations().iter().map(|&(a, b)| (name(a), name(b))).collect();
    assert!(rels.contains(&("7>1".to_string(), "1>2".to_string())));
    assert!(rels.contains(&("1>2".to_string(), "2>7".to_string())));
}

#[test]
fn json_roundtrip() {
    for t in [annulus(), qstar(), pentagon()] {
        let back = load_triangulation(&t.to_json()).unwrap();
        assert_eq!(triangle_set(&back), triangle_set(&t));
        assert_eq!(back.edges(), t.edges());
    }
}

#[test]
fn punctured_triangle_is_rejected() {
    let edges = vec![
        edge("p0", false),
        edge("p1", false),
        edge("p2", false),
        edge("b0", true),
        edge("b1", true),
        edge("b2", true),
    ];
    let t = Triangulation::new(edges, vec![["b0", "p1", "p0"], ["b1", "p2", "p1"], ["b2", "p0", "p2"]]);
    assert!(matches!(t, Err(Error::Puncture { corners: 3 })));
}

#[test]
fn malformed_inputs_are_rejected() {
    assert!(matches!(load_triangulation("{"), Err(Error::Schema(_))));
    assert!(matches!(load_triangulation(r#"{"edges": []}"#), Err(Error::Schema(_))));

    let unknown = Triangulation::new(vec![edge("a", false)], vec![["a", "x", "y"]]);
    assert!(matches!(unknown, Err(Error::UnknownEdge(e)) if e == "x"));

    let dup = Triangulation::new(vec![edge("a", false), edge("a", true)], vec![]);
    assert!(matches!(dup, Err(Error::DuplicateEdge(e)) if e == "a"));

    let boundary = |ids: &[&str]| ids.iter().map(|s| edge(s, true)).collect::<Vec<_>>();
    let mut edges = boundary(&["b0", "b1"]);
    edges.push(edge("d", false));
    let repeated = Triangulation::new(edges.clone(), vec![["d", "d", "b0"]]);
    assert!(matches!(repeated, Err(Error::RepeatedEdge { triangle: 0, .. })));

    let once = Triangulation::new(edges, vec![["d", "b0", "b1"]]);
    assert!(matches!(once, Err(Error::Incidence { count: 1, expected: 2, .. })));

    let bare = Triangulation::new(boundary(&["b0", "b1", "b2"]), vec![["b0", "b1", "b2"]]);
    assert!(matches!(bare, Err(Error::NoInternalEdge)));
}
