//! Bundled triangulations and generators for test corpora.

use std::collections::BTreeSet;

use crate::surface::{derive_quiver, load_triangulation, Edge, Quiver, Triangulation};

pub const QSTAR_JSON: &str = include_str!("../fixtures/qstar.json");
pub const ANNULUS_JSON: &str = include_str!("../fixtures/annulus.json");
pub const PENTAGON_JSON: &str = include_str!("../fixtures/pentagon.json");
pub const QUADRILATERAL_JSON: &str = include_str!("../fixtures/quadrilateral.json");

/// Sphere with three boundary components carrying three, one and one marked
/// points, with eight arcs. Its quiver has three 3-cycles.
pub fn qstar() -> Triangulation {
    load_triangulation(QSTAR_JSON).expect("bundled triangulation is valid")
}

pub fn qstar_quiver() -> Quiver {
    derive_quiver(&qstar()).expect("bundled quiver is gentle")
}

/// Annulus with two marked points on each boundary component.
pub fn annulus() -> Triangulation {
    load_triangulation(ANNULUS_JSON).expect("bundled triangulation is valid")
}

pub fn annulus_quiver() -> Quiver {
    derive_quiver(&annulus()).expect("bundled quiver is gentle")
}

pub fn pentagon() -> Triangulation {
    load_triangulation(PENTAGON_JSON).expect("bundled triangulation is valid")
}

pub fn quadrilateral() -> Triangulation {
    load_triangulation(QUADRILATERAL_JSON).expect("bundled triangulation is valid")
}

fn diag(a: usize, b: usize) -> String {
    format!("d{a}_{b}")
}

fn side(n: usize, a: usize, b: usize) -> String {
    let (a, b) = (a.min(b), a.max(b));
    if b == a + 1 {
        format!("b{a}")
    } else if a == 0 && b == n - 1 {
        format!("b{}", n - 1)
    } else {
        diag(a, b)
    }
}

fn triangulate(verts: &[usize], out: &mut Vec<Vec<[usize; 3]>>) {
    if verts.len() < 3 {
        out.push(Vec::new());
        return;
    }
    let (first, last) = (verts[0], verts[verts.len() - 1]);
    for k in 1..verts.len() - 1 {
        let mut left = Vec::new();
        triangulate(&verts[..=k], &mut left);
        let mut right = Vec::new();
        triangulate(&verts[k..], &mut right);
        for l in &left {
            for r in &right {
                let mut t = vec![[first, verts[k], last]];
                t.extend(l.iter().copied());
                t.extend(r.iter().copied());
                out.push(t);
            }
        }
    }
}

/// Triangulation of a polygon with `n` vertices from its triangles, given by
/// their corners. Vertices are numbered counterclockwise, so a triangle with
/// corners `a < b < c` has sides `ab, bc, ca` in counterclockwise order.
pub fn polygon_triangulation(n: usize, tris: &[[usize; 3]]) -> Triangulation {
    let mut diags = BTreeSet::new();
    for t in tris {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            let s = side(n, a, b);
            if s.starts_with('d') {
                diags.insert(s);
            }
        }
    }
    let mut edges: Vec<Edge> = diags
        .into_iter()
        .map(|id| Edge { id, boundary: false })
        .collect();
    edges.extend((0..n).map(|i| Edge {
        id: format!("b{i}"),
        boundary: true,
    }));
    let names: Vec<[String; 3]> = tris
        .iter()
        .map(|t| {
            let mut c = *t;
            c.sort();
            [side(n, c[0], c[1]), side(n, c[1], c[2]), side(n, c[0], c[2])]
        })
        .collect();
    let refs: Vec<[&str; 3]> = names
        .iter()
        .map(|t| [t[0].as_str(), t[1].as_str(), t[2].as_str()])
        .collect();
    Triangulation::new(edges, refs).expect("polygon triangulation is valid")
}

/// Every triangulation of a polygon with `n >= 4` vertices.
pub fn polygon_triangulations(n: usize) -> Vec<Triangulation> {
    let verts: Vec<usize> = (0..n).collect();
    let mut all = Vec::new();
    triangulate(&verts, &mut all);
    all.iter().map(|t| polygon_triangulation(n, t)).collect()
}

/// Quivers of all triangulations of polygons with 5 to 8 vertices, i.e.
/// all gentle algebras of types A2 to A5 arising from disks.
pub fn disk_quivers() -> Vec<(usize, Quiver)> {
    let mut out = Vec::new();
    for n in 5..=8 {
        for t in polygon_triangulations(n) {
            out.push((n, derive_quiver(&t).expect("polygon quivers are gentle")));
        }
    }
    out
}

/// Triangulations reachable from `t` by up to `depth` flips, deduplicated
/// by their triangle sets.
pub fn flip_closure(t: &Triangulation, depth: usize) -> Vec<Triangulation> {
    let key = |t: &Triangulation| {
        let mut v: Vec<[String; 3]> = t
            .triangles()
            .iter()
            .map(|s| {
                let mut names = s.map(|e| t.label(e).to_string());
                let k = (0..3).min_by_key(|&i| names[i].clone()).unwrap();
                names.rotate_left(k);
                names
            })
            .collect();
        v.sort();
        v
    };
    let mut seen = BTreeSet::new();
    seen.insert(key(t));
    let mut frontier = vec![t.clone()];
    let mut all = vec![t.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for cur in &frontier {
            for e in 0..cur.edges().len() {
                if let Some(f) = cur.flip(e) {
                    if seen.insert(key(&f)) {
                        next.push(f.clone());
                        all.push(f);
                    }
                }
            }
        }
        frontier = next;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        assert_eq!(polygon_triangulations(4).len(), 2);
        assert_eq!(polygon_triangulations(5).len(), 5);
        assert_eq!(polygon_triangulations(6).len(), 14);
        assert_eq!(polygon_triangulations(8).len(), 132);
    }

    #[test]
    fn marked_point_counts() {
        assert_eq!(qstar().marked_points(), 5);
        assert_eq!(annulus().marked_points(), 4);
        assert_eq!(pentagon().marked_points(), 5);
        for t in polygon_triangulations(7) {
            assert_eq!(t.marked_points(), 7);
        }
    }

    #[test]
    fn flips_stay_valid() {
        let all = flip_closure(&annulus(), 3);
        assert!(all.len() > 1);
        for t in all {
            assert_eq!(t.marked_points(), 4);
        }
    }
}
