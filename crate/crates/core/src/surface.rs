//! Triangulated marked surfaces and their gentle quivers with potential.
//!
//! A triangulation is a list of labelled edges, each either internal or on the
//! boundary, and a list of triangles whose three sides are listed
//! counterclockwise. Every internal edge bounds two distinct triangles and
//! every boundary edge bounds one.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type EdgeId = usize;
pub type TriId = usize;
pub type ArrowId = usize;

/// Index of a vertex of the quiver, i.e. of an internal edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    #[serde(default)]
    pub boundary: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TriangulationDoc {
    edges: Vec<Edge>,
    triangles: Vec<[String; 3]>,
}

#[derive(Debug, Clone)]
pub struct Triangulation {
    edges: Vec<Edge>,
    triangles: Vec<[EdgeId; 3]>,
    index: HashMap<String, EdgeId>,
    /// For each edge, the triangles containing it and the slot it occupies.
    incidence: Vec<Vec<(TriId, usize)>>,
}

/// Parse and validate a triangulation from its JSON form.
pub fn load_triangulation(json: &str) -> Result<Triangulation> {
    let doc: TriangulationDoc =
        serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    Triangulation::new(
        doc.edges,
        doc.triangles
            .iter()
            .map(|t| [t[0].as_str(), t[1].as_str(), t[2].as_str()])
            .collect::<Vec<_>>(),
    )
}

impl Triangulation {
    pub fn new(edges: Vec<Edge>, triangles: Vec<[&str; 3]>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if e.id.is_empty() || e.id.contains(['<', '>', '(', ')']) || e.id.trim() != e.id {
                return Err(Error::Schema(format!("edge id `{}` is not allowed", e.id)));
            }
            if index.insert(e.id.clone(), i).is_some() {
                return Err(Error::DuplicateEdge(e.id.clone()));
            }
        }
        let mut tris = Vec::with_capacity(triangles.len());
        for (t, sides) in triangles.iter().enumerate() {
            let mut ids = [0; 3];
            for k in 0..3 {
                ids[k] = *index
                    .get(sides[k])
                    .ok_or_else(|| Error::UnknownEdge(sides[k].to_string()))?;
            }
            for k in 0..3 {
                if ids[k] == ids[(k + 1) % 3] {
                    return Err(Error::RepeatedEdge {
                        triangle: t,
                        edge: sides[k].to_string(),
                    });
                }
            }
            tris.push(ids);
        }
        let mut incidence = vec![Vec::new(); edges.len()];
        for (t, sides) in tris.iter().enumerate() {
            for (slot, &e) in sides.iter().enumerate() {
                incidence[e].push((t, slot));
            }
        }
        for (e, inc) in incidence.iter().enumerate() {
            let expected = if edges[e].boundary { 1 } else { 2 };
            if inc.len() != expected {
                return Err(Error::Incidence {
                    edge: edges[e].id.clone(),
                    count: inc.len(),
                    expected,
                });
            }
        }
        if edges.iter().all(|e| e.boundary) {
            return Err(Error::NoInternalEdge);
        }
        let tri = Triangulation {
            edges,
            triangles: tris,
            index,
            incidence,
        };
        tri.check_no_punctures()?;
        Ok(tri)
    }

    pub fn to_json(&self) -> String {
        let doc = TriangulationDoc {
            edges: self.edges.clone(),
            triangles: self
                .triangles
                .iter()
                .map(|t| t.map(|e| self.edges[e].id.clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("triangulation serializes")
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[EdgeId; 3]] {
        &self.triangles
    }

    pub fn edge_id(&self, label: &str) -> Option<EdgeId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, e: EdgeId) -> &str {
        &self.edges[e].id
    }

    pub fn is_boundary(&self, e: EdgeId) -> bool {
        self.edges[e].boundary
    }

    /// Triangles containing `e`, in the order they appear in the input.
    pub fn triangles_of(&self, e: EdgeId) -> Vec<TriId> {
        self.incidence[e].iter().map(|&(t, _)| t).collect()
    }

    /// The triangle on the other side of `e` from `t`, if `e` is internal.
    pub fn other_triangle(&self, e: EdgeId, t: TriId) -> Option<TriId> {
        let inc = &self.incidence[e];
        if inc.len() != 2 {
            return None;
        }
        if inc[0].0 == t {
            Some(inc[1].0)
        } else if inc[1].0 == t {
            Some(inc[0].0)
        } else {
            None
        }
    }

    pub fn contains(&self, t: TriId, e: EdgeId) -> bool {
        self.triangles[t].contains(&e)
    }

    /// Sides of `t` counterclockwise starting from `e`.
    pub fn rotate_to(&self, t: TriId, e: EdgeId) -> [EdgeId; 3] {
        let s = self.triangles[t];
        let k = s
            .iter()
            .position(|&x| x == e)
            .unwrap_or_else(|| panic!("edge {} is not a side of triangle {t}", self.label(e)));
        [s[k], s[(k + 1) % 3], s[(k + 2) % 3]]
    }

    /// The side of `t` that is neither `a` nor `b`.
    pub fn third_side(&self, t: TriId, a: EdgeId, b: EdgeId) -> EdgeId {
        *self.triangles[t]
            .iter()
            .find(|&&x| x != a && x != b)
            .expect("triangle has three distinct sides")
    }

    /// Triangles containing both `a` and `b`.
    pub fn shared_triangles(&self, a: EdgeId, b: EdgeId) -> Vec<TriId> {
        let ta: BTreeSet<TriId> = self.triangles_of(a).into_iter().collect();
        self.triangles_of(b)
            .into_iter()
            .filter(|t| ta.contains(t))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Walk the corners around each marked point. A corner is a pair of
    /// consecutive sides of a triangle. Around a point on the boundary the
    /// walk runs into a boundary edge; around an interior point it closes up.
    fn check_no_punctures(&self) -> Result<()> {
        let n = self.triangles.len();
        for t0 in 0..n {
            for k0 in 0..3 {
                let (mut t, mut k) = (t0, k0);
                for steps in 1..=3 * n {
                    let f = self.triangles[t][(k + 1) % 3];
                    match self.other_triangle(f, t) {
                        None => break,
                        Some(t2) => {
                            k = self.triangles[t2].iter().position(|&x| x == f).unwrap();
                            t = t2;
                        }
                    }
                    if (t, k) == (t0, k0) {
                        return Err(Error::Puncture { corners: steps });
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of marked points: orbits of corners, counted once each.
    pub fn marked_points(&self) -> usize {
        let n = self.triangles.len();
        let mut seen = vec![[false; 3]; n];
        let mut count = 0;
        for t0 in 0..n {
            for k0 in 0..3 {
                if seen[t0][k0] {
                    continue;
                }
                count += 1;
                // Rewind to the start of the fan, then sweep forward.
                let (mut t, mut k) = (t0, k0);
                for _ in 0..3 * n {
                    let e = self.triangles[t][k];
                    match self.other_triangle(e, t) {
                        None => break,
                        Some(t2) => {
                            let slot = self.triangles[t2].iter().position(|&x| x == e).unwrap();
                            t = t2;
                            k = (slot + 2) % 3;
                        }
                    }
                    if (t, k) == (t0, k0) {
                        break;
                    }
                }
                loop {
                    if seen[t][k] {
                        break;
                    }
                    seen[t][k] = true;
                    let f = self.triangles[t][(k + 1) % 3];
                    match self.other_triangle(f, t) {
                        None => break,
                        Some(t2) => {
                            let slot = self.triangles[t2].iter().position(|&x| x == f).unwrap();
                            t = t2;
                            k = slot;
                        }
                    }
                }
            }
        }
        count
    }

    /// Flip the internal edge `e`, replacing it by the other diagonal of the
    /// quadrilateral formed by its two triangles. The new edge keeps the label.
    /// Returns `None` when the flip would produce a degenerate triangle.
    pub fn flip(&self, e: EdgeId) -> Option<Triangulation> {
        if self.is_boundary(e) {
            return None;
        }
        let ts = self.triangles_of(e);
        let (t1, t2) = (ts[0], ts[1]);
        let [_, a, b] = self.rotate_to(t1, e);
        let [_, c, d] = self.rotate_to(t2, e);
        let new1 = [b, c, e];
        let new2 = [d, a, e];
        let mut tris: Vec<[&str; 3]> = Vec::with_capacity(self.triangles.len());
        for (t, sides) in self.triangles.iter().enumerate() {
            let s = if t == t1 {
                new1
            } else if t == t2 {
                new2
            } else {
                *sides
            };
            if s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
                return None;
            }
            tris.push([self.label(s[0]), self.label(s[1]), self.label(s[2])]);
        }
        Triangulation::new(self.edges.clone(), tris).ok()
    }
}

/// A gentle quiver with potential read off a triangulation.
#[derive(Debug, Clone)]
pub struct Quiver {
    tri: Triangulation,
    vertex_edge: Vec<EdgeId>,
    edge_vertex: Vec<Option<Vertex>>,
    arrows: Vec<Arrow>,
    relations: Vec<(ArrowId, ArrowId)>,
    cycles: Vec<[ArrowId; 3]>,
    out_arrows: Vec<Vec<ArrowId>>,
    in_arrows: Vec<Vec<ArrowId>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub source: Vertex,
    pub target: Vertex,
    pub triangle: TriId,
}

/// Build the quiver of a triangulation: one vertex per internal edge, an
/// arrow x -> y whenever y follows x counterclockwise in a triangle, and a
/// length-two relation for each pair of consecutive arrows inside the same
/// triangle.
pub fn derive_quiver(tri: &Triangulation) -> Result<Quiver> {
    let mut vertex_edge = Vec::new();
    let mut edge_vertex = vec![None; tri.edges().len()];
    for (e, edge) in tri.edges().iter().enumerate() {
        if !edge.boundary {
            edge_vertex[e] = Some(Vertex(vertex_edge.len()));
            vertex_edge.push(e);
        }
    }
    let mut arrows = Vec::new();
    let mut per_triangle: Vec<Vec<ArrowId>> = vec![Vec::new(); tri.triangles().len()];
    for (t, sides) in tri.triangles().iter().enumerate() {
        for k in 0..3 {
            let (x, y) = (sides[k], sides[(k + 1) % 3]);
            if let (Some(vx), Some(vy)) = (edge_vertex[x], edge_vertex[y]) {
                per_triangle[t].push(arrows.len());
                arrows.push(Arrow {
                    source: vx,
                    target: vy,
                    triangle: t,
                });
            }
        }
    }
    let mut relations = Vec::new();
    let mut cycles = Vec::new();
    for ids in &per_triangle {
        for &a in ids {
            for &b in ids {
                if a != b && arrows[a].target == arrows[b].source {
                    relations.push((a, b));
                }
            }
        }
        if ids.len() == 3 {
            cycles.push([ids[0], ids[1], ids[2]]);
        }
    }
    relations.sort();
    let n = vertex_edge.len();
    let mut out_arrows = vec![Vec::new(); n];
    let mut in_arrows = vec![Vec::new(); n];
    for (i, a) in arrows.iter().enumerate() {
        out_arrows[a.source.0].push(i);
        in_arrows[a.target.0].push(i);
    }
    let q = Quiver {
        tri: tri.clone(),
        vertex_edge,
        edge_vertex,
        arrows,
        relations,
        cycles,
        out_arrows,
        in_arrows,
    };
    q.check_gentle()?;
    Ok(q)
}

impl Quiver {
    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_edge.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.vertex_edge.len()).map(Vertex)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn relations(&self) -> &[(ArrowId, ArrowId)] {
        &self.relations
    }

    pub fn is_relation(&self, a: ArrowId, b: ArrowId) -> bool {
        self.relations.binary_search(&(a, b)).is_ok()
    }

    /// The oriented 3-cycles, one for each internal triangle.
    pub fn cycles(&self) -> &[[ArrowId; 3]] {
        &self.cycles
    }

    pub fn out_arrows(&self, v: Vertex) -> &[ArrowId] {
        &self.out_arrows[v.0]
    }

    pub fn in_arrows(&self, v: Vertex) -> &[ArrowId] {
        &self.in_arrows[v.0]
    }

    pub fn edge_of(&self, v: Vertex) -> EdgeId {
        self.vertex_edge[v.0]
    }

    pub fn vertex_of(&self, e: EdgeId) -> Option<Vertex> {
        self.edge_vertex[e]
    }

    pub fn label(&self, v: Vertex) -> &str {
        self.tri.label(self.vertex_edge[v.0])
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.tri.edge_id(label).and_then(|e| self.edge_vertex[e])
    }

    pub fn arrow_name(&self, a: ArrowId) -> String {
        let ar = &self.arrows[a];
        format!("{}>{}", self.label(ar.source), self.label(ar.target))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let name = |a: ArrowId| self.arrow_name(a);
        serde_json::json!({
            "vertices": self.vertices().map(|v| self.label(v)).collect::<Vec<_>>(),
            "arrows": (0..self.arrows.len()).map(name).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|&(a, b)| [name(a), name(b)]).collect::<Vec<_>>(),
            "cycles": self.cycles.iter().map(|c| c.map(name)).collect::<Vec<_>>(),
        })
    }

    /// All arrows from `x` to `y`.
    pub fn arrows_between(&self, x: Vertex, y: Vertex) -> Vec<ArrowId> {
        self.out_arrows[x.0]
            .iter()
            .copied()
            .filter(|&a| self.arrows[a].target == y)
            .collect()
    }

    /// The arrow from `x` to `y` lying in triangle `t`, if any.
    pub fn arrow_in(&self, x: Vertex, y: Vertex, t: TriId) -> Option<ArrowId> {
        self.out_arrows[x.0]
            .iter()
            .copied()
            .find(|&a| self.arrows[a].target == y && self.arrows[a].triangle == t)
    }

    /// Check the gentle axioms and that the path algebra is finite dimensional.
    pub fn check_gentle(&self) -> Result<()> {
        for v in self.vertices() {
            if self.out_arrows(v).len() > 2 || self.in_arrows(v).len() > 2 {
                return Err(Error::NotGentle(format!(
                    "vertex {} has more than two incoming or outgoing arrows",
                    self.label(v)
                )));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            let outs = self.out_arrows(a.target);
            let rel_after = outs.iter().filter(|&&b| self.is_relation(i, b)).count();
            let free_after = outs.len() - rel_after;
            let ins = self.in_arrows(a.source);
            let rel_before = ins.iter().filter(|&&b| self.is_relation(b, i)).count();
            let free_before = ins.len() - rel_before;
            if rel_after > 1 || free_after > 1 || rel_before > 1 || free_before > 1 {
                return Err(Error::NotGentle(format!(
                    "arrow {} has too many continuations",
                    self.arrow_name(i)
                )));
            }
        }
        // Finite dimension: no cycle of arrows avoiding relations. Follow the
        // unique relation-free continuation from each arrow.
        for start in 0..self.arrows.len() {
            let mut a = start;
            for _ in 0..=self.arrows.len() {
                let next = self
                    .out_arrows(self.arrows[a].target)
                    .iter()
                    .copied()
                    .find(|&b| !self.is_relation(a, b));
                match next {
                    None => break,
                    Some(b) if b == start => {
                        return Err(Error::NotGentle(
                            "path algebra is infinite dimensional".into(),
                        ))
                    }
                    Some(b) => a = b,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vertices().map(|v| self.label(v)).collect();
        writeln!(f, "vertices: {}", names.join(" "))?;
        let arrows: Vec<String> = (0..self.arrows.len()).map(|a| self.arrow_name(a)).collect();
        writeln!(f, "arrows: {}", arrows.join(" "))?;
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|&(a, b)| format!("({} ; {})", self.arrow_name(a), self.arrow_name(b)))
            .collect();
        writeln!(f, "relations: {}", rels.join(" "))?;
        let cycles: Vec<String> = self
            .cycles
            .iter()
            .map(|c| format!("({})", c.map(|a| self.arrow_name(a)).join(" ")))
            .collect();
        write!(f, "potential: {}", cycles.join(" + "))
    }
}
