//! Crossings of string modules, their smoothings, and extension counts.
//!
//! Three kinds of crossing are recognised: two strings sharing a substring
//! with the right pattern of arrows at its ends (a module crossing), an
//! arrow joining an end of one string to an end of the other (an arrow
//! crossing), and a string starting at the third vertex of a 3-cycle that the
//! other string passes through (a 3-cycle crossing).

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::snake::{self, Overlap, Piece, Resolution, Role, SignFunction, SnakeGraph};
use crate::strings::{Letter, StringWord, Walk};
use crate::surface::{ArrowId, EdgeId, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Direction {
    /// The first string crosses the second.
    Forward,
    /// The second string crosses the first.
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CrossingKind {
    /// The crosser and crossee share the substring between the given vertex
    /// positions (inclusive) of their oriented walks.
    Module {
        crosser_span: (usize, usize),
        crossee_span: (usize, usize),
    },
    /// The crosser ends where the arrow starts and the crossee starts where
    /// it ends.
    Arrow { arrow: ArrowId },
    /// The crosser passes through `alpha` (direct, letter `position`) in the
    /// 3-cycle `gamma, alpha, beta`; the crossee starts at the source of `gamma`.
    ThreeCycle {
        gamma: ArrowId,
        alpha: ArrowId,
        beta: ArrowId,
        position: usize,
    },
}

impl CrossingKind {
    fn rank(&self) -> u8 {
        match self {
            CrossingKind::Module { .. } => 0,
            CrossingKind::Arrow { .. } => 1,
            CrossingKind::ThreeCycle { .. } => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CrossingKind::Module { .. } => "module",
            CrossingKind::Arrow { .. } => "arrow",
            CrossingKind::ThreeCycle { .. } => "3-cycle",
        }
    }
}

/// A crossing with both strings oriented the way the smoothing formulas
/// read them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub direction: Direction,
    pub kind: CrossingKind,
    pub crosser: Walk,
    pub crossee: Walk,
    /// Whether the crosser and crossee walks are the inverses of the input strings.
    pub crosser_inverted: bool,
    pub crossee_inverted: bool,
}

impl Crossing {
    pub fn is_extension(&self) -> bool {
        !matches!(self.kind, CrossingKind::ThreeCycle { .. })
    }

    /// Position key in terms of the input strings, used for ordering.
    fn sort_key(&self) -> (u8, Direction, Vec<usize>) {
        let n1 = self.crosser.word.len();
        let n2 = self.crossee.word.len();
        let flip = |(a, b): (usize, usize), n: usize, inv: bool| if inv { (n - b, n - a) } else { (a, b) };
        let pos = match &self.kind {
            CrossingKind::Module {
                crosser_span,
                crossee_span,
            } => {
                let a = flip(*crosser_span, n1, self.crosser_inverted);
                let b = flip(*crossee_span, n2, self.crossee_inverted);
                vec![a.0, a.1, b.0, b.1]
            }
            CrossingKind::Arrow { arrow } => vec![
                self.crosser_inverted as usize,
                self.crossee_inverted as usize,
                *arrow,
            ],
            CrossingKind::ThreeCycle { position, .. } => {
                let p = if self.crosser_inverted { n1 - 1 - position } else { *position };
                vec![p, self.crossee_inverted as usize]
            }
        };
        (self.kind.rank(), self.direction, pos)
    }

    pub fn describe(&self, q: &Quiver) -> String {
        let what = match &self.kind {
            CrossingKind::Module { crosser_span, .. } => {
                let w = self.crosser.word.slice(q, crosser_span.0, crosser_span.1);
                format!("module ({})", w.ascii(q).trim_matches(['(', ')']))
            }
            CrossingKind::Arrow { arrow } => format!("arrow {}", q.arrow_name(*arrow)),
            CrossingKind::ThreeCycle { gamma, alpha, .. } => {
                let a = q.arrow(*alpha);
                let c = q.arrow(*gamma).source;
                format!("3-cycle ({},{},{})", q.label(a.source), q.label(a.target), q.label(c))
            }
        };
        format!(
            "{} crosses {} in {}",
            self.crosser.word.ascii(q),
            self.crossee.word.ascii(q),
            what
        )
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let data = match &self.kind {
            CrossingKind::Module {
                crosser_span,
                crossee_span,
            } => json!({
                "overlap": self.crosser.word.slice(q, crosser_span.0, crosser_span.1).ascii(q),
                "crosser_span": [crosser_span.0, crosser_span.1],
                "crossee_span": [crossee_span.0, crossee_span.1],
                "pred_crosser_empty": crosser_span.0 == 0,
                "succ_crosser_empty": crosser_span.1 == self.crosser.word.len(),
                "pred_crossee_empty": crossee_span.0 == 0,
                "succ_crossee_empty": crossee_span.1 == self.crossee.word.len(),
            }),
            CrossingKind::Arrow { arrow } => json!({
                "arrow": q.arrow_name(*arrow),
                "source": match self.direction { Direction::Forward => "first", Direction::Backward => "second" },
            }),
            CrossingKind::ThreeCycle {
                gamma,
                alpha,
                beta,
                position,
            } => json!({
                "cycle": [q.arrow_name(*gamma), q.arrow_name(*alpha), q.arrow_name(*beta)],
                "position": position,
            }),
        };
        json!({
            "kind": self.kind.name(),
            "direction": match self.direction { Direction::Forward => "MN", Direction::Backward => "NM" },
            "crosser": self.crosser.word.ascii(q),
            "crossee": self.crossee.word.ascii(q),
            "data": data,
        })
    }
}

/// One of the strings produced by a smoothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Term {
    Module(StringWord),
    /// An arc of the triangulation, or a boundary segment when `boundary`
    /// is set. Either way its module is zero.
    Arc { edge: EdgeId, boundary: bool },
    Zero,
}

impl Term {
    pub fn module_dim(&self) -> usize {
        match self {
            Term::Module(w) => w.total_dim(),
            _ => 0,
        }
    }

    pub fn module(&self) -> Option<&StringWord> {
        match self {
            Term::Module(w) => Some(w),
            _ => None,
        }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> TermDisplay<'a> {
        TermDisplay { term: self, q }
    }

    pub fn canonical(&self, q: &Quiver) -> Term {
        match self {
            Term::Module(w) => Term::Module(w.canonicalize(q)),
            other => other.clone(),
        }
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        match self {
            Term::Module(w) => json!({"module": w.ascii(q)}),
            Term::Arc { edge, boundary } => json!({
                "module": "0",
                "arc": q.triangulation().label(*edge),
                "boundary": boundary,
            }),
            Term::Zero => json!({"module": "0"}),
        }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    q: &'a Quiver,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.q.triangulation();
        match self.term {
            Term::Module(w) => f.write_str(&w.ascii(self.q)),
            Term::Arc {
                edge,
                boundary: true,
            } => write!(f, "0 (boundary segment {})", t.label(*edge)),
            Term::Arc { edge, .. } => write!(f, "0 (arc {} of the triangulation)", t.label(*edge)),
            Term::Zero => f.write_str("0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Smoothing {
    pub w3: Term,
    pub w4: Term,
    pub w5: Term,
    pub w6: Term,
}

impl Smoothing {
    pub fn terms(&self) -> [&Term; 4] {
        [&self.w3, &self.w4, &self.w5, &self.w6]
    }
}

fn check(q: &Quiver, w: StringWord) -> Result<StringWord> {
    crate::strings::validate_string(q, Some(w.base), &w.letters).map_err(|e| {
        Error::Consistency(format!("smoothing produced an invalid string {}: {e}", w.ascii(q)))
    })
}

fn module_term(q: &Quiver, w: StringWord) -> Result<Term> {
    Ok(Term::Module(check(q, w)?))
}

fn arc_term(q: &Quiver, e: EdgeId) -> Term {
    Term::Arc {
        edge: e,
        boundary: q.triangulation().is_boundary(e),
    }
}

/// The side following the first crossed arc in the starting triangle.
fn start_succ(q: &Quiver, w: &Walk) -> EdgeId {
    q.triangulation().rotate_to(w.start_triangle(), q.edge_of(w.word.base))[1]
}

/// The side preceding the first crossed arc in the starting triangle.
fn start_pred(q: &Quiver, w: &Walk) -> EdgeId {
    q.triangulation().rotate_to(w.start_triangle(), q.edge_of(w.word.base))[2]
}

fn end_succ(q: &Quiver, w: &Walk) -> EdgeId {
    q.triangulation().rotate_to(w.end_triangle(), q.edge_of(w.word.end(q)))[1]
}

fn end_pred(q: &Quiver, w: &Walk) -> EdgeId {
    q.triangulation().rotate_to(w.end_triangle(), q.edge_of(w.word.end(q)))[2]
}

/// Given arrows `a: x -> y` and `b: y -> z` forming a relation, the arrow
/// `z -> x` closing the 3-cycle.
pub fn find_cycle_completion(q: &Quiver, a: ArrowId, b: ArrowId) -> Result<ArrowId> {
    let (aa, bb) = (q.arrow(a), q.arrow(b));
    if aa.target != bb.source {
        return Err(Error::Precondition(format!(
            "{} and {} do not compose",
            q.arrow_name(a),
            q.arrow_name(b)
        )));
    }
    if !q.is_relation(a, b) {
        return Err(Error::Precondition(format!(
            "{} {} is not a relation",
            q.arrow_name(a),
            q.arrow_name(b)
        )));
    }
    q.arrow_in(bb.target, aa.source, aa.triangle).ok_or_else(|| {
        Error::Consistency(format!(
            "no arrow closes {} {} to a 3-cycle",
            q.arrow_name(a),
            q.arrow_name(b)
        ))
    })
}

/// Does position `i` of `a` and position `j` of `b` pass through the same arc
/// between the same triangles?
fn same_step(q: &Quiver, a: &Walk, i: usize, b: &Walk, j: usize) -> bool {
    let va = if i == 0 { a.word.base } else { a.word.letters[i - 1].end(q) };
    let vb = if j == 0 { b.word.base } else { b.word.letters[j - 1].end(q) };
    va == vb && a.around(i) == b.around(j)
}

/// Module crossings where `w1` crosses `w2`.
fn module_crossings(q: &Quiver, w1: &Walk, w2: &Walk, direction: Direction, out: &mut Vec<Crossing>) {
    let n1 = w1.word.len();
    for inverted in [false, true] {
        let o2 = if inverted { w2.inverse(q) } else { w2.clone() };
        let n2 = o2.word.len();
        for i in 0..=n1 {
            for j in 0..=n2 {
                if !same_step(q, w1, i, &o2, j) {
                    continue;
                }
                if i > 0 && j > 0 && same_step(q, w1, i - 1, &o2, j - 1) {
                    continue;
                }
                let mut k = 0;
                while i + k < n1 && j + k < n2 && same_step(q, w1, i + k + 1, &o2, j + k + 1) {
                    k += 1;
                }
                let (s, t, s2, t2) = (i, i + k, j, j + k);
                if s == 0 && s2 == 0 || t == n1 && t2 == n2 {
                    continue;
                }
                let into = |l: &Letter| !l.inverse;
                let ok = (s == 0 || into(&w1.word.letters[s - 1]))
                    && (t == n1 || w1.word.letters[t].inverse)
                    && (s2 == 0 || o2.word.letters[s2 - 1].inverse)
                    && (t2 == n2 || !o2.word.letters[t2].inverse);
                if ok {
                    out.push(Crossing {
                        direction,
                        kind: CrossingKind::Module {
                            crosser_span: (s, t),
                            crossee_span: (s2, t2),
                        },
                        crosser: w1.clone(),
                        crossee: o2.clone(),
                        crosser_inverted: false,
                        crossee_inverted: inverted,
                    });
                }
            }
        }
    }
}

fn arrow_crossings(q: &Quiver, w1: &Walk, w2: &Walk, direction: Direction, out: &mut Vec<Crossing>) {
    for inv1 in [false, true] {
        // The crosser is oriented to end at the crossing.
        let o1 = if inv1 { w1.inverse(q) } else { w1.clone() };
        for inv2 in [false, true] {
            let o2 = if inv2 { w2.inverse(q) } else { w2.clone() };
            let tri = o1.end_triangle();
            if o2.start_triangle() != tri {
                continue;
            }
            let (x, y) = (o1.word.end(q), o2.word.base);
            if x == y {
                continue;
            }
            if let Some(a) = q.arrow_in(x, y, tri) {
                out.push(Crossing {
                    direction,
                    kind: CrossingKind::Arrow { arrow: a },
                    crosser: o1.clone(),
                    crossee: o2,
                    crosser_inverted: inv1,
                    crossee_inverted: inv2,
                });
            }
        }
    }
}

fn three_cycle_crossings(q: &Quiver, w1: &Walk, w2: &Walk, direction: Direction, out: &mut Vec<Crossing>) {
    let n1 = w1.word.len();
    for k in 0..n1 {
        let l = w1.word.letters[k];
        let tri = q.arrow(l.arrow).triangle;
        let (o1, pos, inv1) = if l.inverse {
            (w1.inverse(q), n1 - 1 - k, true)
        } else {
            (w1.clone(), k, false)
        };
        let alpha = o1.word.letters[pos].arrow;
        let (a, b) = (q.arrow(alpha).source, q.arrow(alpha).target);
        let sides = q.triangulation().triangles()[tri];
        let third = sides
            .iter()
            .copied()
            .find(|&e| e != q.edge_of(a) && e != q.edge_of(b))
            .unwrap();
        let Some(c) = q.vertex_of(third) else { continue };
        let (Some(gamma), Some(beta)) = (q.arrow_in(c, a, tri), q.arrow_in(b, c, tri)) else {
            continue;
        };
        for inv2 in [false, true] {
            let o2 = if inv2 { w2.inverse(q) } else { w2.clone() };
            if o2.word.base == c && o2.start_triangle() == tri {
                out.push(Crossing {
                    direction,
                    kind: CrossingKind::ThreeCycle {
                        gamma,
                        alpha,
                        beta,
                        position: pos,
                    },
                    crosser: o1.clone(),
                    crossee: o2,
                    crosser_inverted: inv1,
                    crossee_inverted: inv2,
                });
            }
        }
    }
}

fn crossings_one_way(q: &Quiver, w1: &Walk, w2: &Walk, direction: Direction) -> Vec<Crossing> {
    let mut out = Vec::new();
    module_crossings(q, w1, w2, direction, &mut out);
    arrow_crossings(q, w1, w2, direction, &mut out);
    three_cycle_crossings(q, w1, w2, direction, &mut out);
    out
}

/// All crossings between the arcs of two strings, in a fixed order: by kind
/// (module, arrow, 3-cycle), then direction, then positions in the input
/// strings. When both strings give the same module the self-crossings are
/// listed once each.
pub fn enumerate_crossings(q: &Quiver, w1: &StringWord, w2: &StringWord) -> Vec<Crossing> {
    let (a, b) = (Walk::new(q, w1), Walk::new(q, w2));
    let mut out = crossings_one_way(q, &a, &b, Direction::Forward);
    if !w1.same_module(q, w2) {
        out.extend(crossings_one_way(q, &b, &a, Direction::Backward));
    }
    out.sort_by_key(|c| c.sort_key());
    out
}

/// Apply the smoothing formulas to a crossing.
pub fn smooth(q: &Quiver, c: &Crossing) -> Result<Smoothing> {
    let (o1, o2) = (&c.crosser, &c.crossee);
    let (w1, w2) = (&o1.word, &o2.word);
    let (n1, n2) = (w1.len(), w2.len());
    match c.kind {
        CrossingKind::Module {
            crosser_span: (s, t),
            crossee_span: (s2, t2),
        } => {
            let w3 = module_term(q, w1.slice(q, 0, t).join(&[], &w2.slice(q, t2, n2)))?;
            let w4 = module_term(q, w2.slice(q, 0, t2).join(&[], &w1.slice(q, t, n1)))?;
            let w5 = if s > 0 && s2 > 0 {
                let (alpha, gamma) = (w1.letters[s - 1], w2.letters[s2 - 1]);
                let sigma = find_cycle_completion(q, alpha.arrow, gamma.arrow)?;
                module_term(
                    q,
                    w1.slice(q, 0, s - 1)
                        .join(&[Letter::inverse(sigma)], &w2.slice(q, 0, s2 - 1).invert(q)),
                )?
            } else if s2 == 0 && s > 0 {
                let pred = o1.slice(q, 0, s - 1);
                match pred.word.delete_cohook_end(q) {
                    Some(w) => module_term(q, w)?,
                    None => arc_term(q, start_succ(q, &pred)),
                }
            } else if s == 0 && s2 > 0 {
                let pred = o2.slice(q, 0, s2 - 1);
                match pred.word.delete_hook_end(q) {
                    Some(w) => module_term(q, w)?,
                    None => arc_term(q, start_pred(q, &pred)),
                }
            } else {
                return Err(Error::Consistency("both strings start at the overlap".into()));
            };
            let w6 = if t < n1 && t2 < n2 {
                let (beta, delta) = (w1.letters[t], w2.letters[t2]);
                let rho = find_cycle_completion(q, beta.arrow, delta.arrow)?;
                module_term(
                    q,
                    w1.slice(q, t + 1, n1)
                        .invert(q)
                        .join(&[Letter::inverse(rho)], &w2.slice(q, t2 + 1, n2)),
                )?
            } else if t2 == n2 && t < n1 {
                let succ = o1.slice(q, t + 1, n1);
                match succ.word.delete_cohook_start(q) {
                    Some(w) => module_term(q, w)?,
                    None => arc_term(q, end_succ(q, &succ)),
                }
            } else if t == n1 && t2 < n2 {
                let succ = o2.slice(q, t2 + 1, n2);
                match succ.word.delete_hook_start(q) {
                    Some(w) => module_term(q, w)?,
                    None => arc_term(q, end_pred(q, &succ)),
                }
            } else {
                return Err(Error::Consistency("both strings end at the overlap".into()));
            };
            Ok(Smoothing { w3, w4, w5, w6 })
        }
        CrossingKind::Arrow { arrow } => {
            let w3 = module_term(q, w1.join(&[Letter::direct(arrow)], w2))?;
            let a = q.arrow(arrow);
            let third = q
                .triangulation()
                .third_side(a.triangle, q.edge_of(a.source), q.edge_of(a.target));
            let w4 = arc_term(q, third);
            let w5 = match w1.delete_cohook_end(q) {
                Some(w) => module_term(q, w)?,
                None => arc_term(q, start_succ(q, o1)),
            };
            let w6 = match w2.delete_hook_start(q) {
                Some(w) => module_term(q, w)?,
                None => arc_term(q, end_pred(q, o2)),
            };
            Ok(Smoothing { w3, w4, w5, w6 })
        }
        CrossingKind::ThreeCycle {
            gamma,
            beta,
            position: k,
            ..
        } => {
            let w3 = module_term(q, w1.slice(q, 0, k).join(&[Letter::inverse(gamma)], w2))?;
            let tail = o1.slice(q, k, n1);
            let w4 = match tail.word.delete_cohook_start(q) {
                Some(w) => module_term(q, w)?,
                None => arc_term(q, end_succ(q, &tail)),
            };
            let head = o1.slice(q, 0, k + 1);
            let w5 = match head.word.delete_hook_end(q) {
                Some(w) => module_term(q, w)?,
                None => arc_term(q, start_pred(q, &head)),
            };
            let w6 = module_term(
                q,
                w2.invert(q).join(&[Letter::inverse(beta)], &w1.slice(q, k + 1, n1)),
            )?;
            Ok(Smoothing { w3, w4, w5, w6 })
        }
    }
}

/// Resolve the crossing on the snake graph side.
pub fn snake_resolution(q: &Quiver, c: &Crossing) -> Result<Resolution> {
    let g1 = snake::snake_graph_of_walk(q, &c.crosser)?;
    let g2 = snake::snake_graph_of_walk(q, &c.crossee)?;
    match c.kind {
        CrossingKind::Module {
            crosser_span: (s, t),
            crossee_span: (s2, t2),
        } => {
            let ov = Overlap {
                s1: s,
                t1: t,
                s2,
                t2,
                reversed: false,
            };
            match snake::crossing_role(&g1, &g2, &ov)? {
                Some(Role::FirstCrossesSecond) => {}
                other => {
                    return Err(Error::Consistency(format!(
                        "string test found a module crossing, snake graph test says {other:?}"
                    )))
                }
            }
            snake::resolve_overlap(&g1, &g2, &ov)
        }
        CrossingKind::Arrow { arrow } => {
            let a = q.arrow(arrow);
            let third = q
                .triangulation()
                .third_side(a.triangle, q.edge_of(a.source), q.edge_of(a.target));
            snake::graft(
                &g1,
                SignFunction::standard(&g1),
                &g2,
                SignFunction::standard(&g2),
                g1.len() - 1,
                third,
            )
        }
        CrossingKind::ThreeCycle { alpha, position, .. } => {
            let b = q.edge_of(q.arrow(alpha).target);
            snake::graft(
                &g1,
                SignFunction::standard(&g1),
                &g2,
                SignFunction::standard(&g2),
                position,
                b,
            )
        }
    }
}

fn term_matches_piece(q: &Quiver, term: &Term, piece: &Piece) -> Result<bool> {
    Ok(match (term, piece) {
        (Term::Module(w), Piece::Graph(g)) => {
            let gw = snake::snake_graph_of_walk(q, &Walk::new(q, w))?;
            gw.same_up_to_symmetry(g)
        }
        (Term::Arc { edge, .. }, Piece::Edge(e)) => edge == e,
        _ => false,
    })
}

/// Smooth a crossing and check the result against the snake graph
/// resolution. Any disagreement is a consistency fault.
pub fn smooth_checked(q: &Quiver, c: &Crossing) -> Result<(Smoothing, Resolution)> {
    let sm = smooth(q, c)?;
    let res = snake_resolution(q, c)?;
    let pieces = [&res.g3, &res.g4, &res.g5, &res.g6];
    for (i, (term, piece)) in sm.terms().into_iter().zip(pieces).enumerate() {
        if !term_matches_piece(q, term, piece)? {
            return Err(Error::Consistency(format!(
                "w{} = {} does not match its snake graph piece ({})",
                i + 3,
                term.display(q),
                c.describe(q)
            )));
        }
    }
    Ok((sm, res))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortExactSequence {
    pub sub: StringWord,
    pub middle: Vec<StringWord>,
    pub quotient: StringWord,
    pub crossing: Crossing,
}

/// One non-split short exact sequence `0 -> N -> E -> M -> 0` for each
/// module or arrow crossing of `M` over `N`.
pub fn ext_basis(q: &Quiver, wm: &StringWord, wn: &StringWord) -> Result<Vec<ShortExactSequence>> {
    let mut out = Vec::new();
    for c in enumerate_crossings(q, wm, wn) {
        if c.direction != Direction::Forward || !c.is_extension() {
            continue;
        }
        let sm = smooth(q, &c)?;
        let middle: Vec<StringWord> = [&sm.w3, &sm.w4]
            .into_iter()
            .filter_map(|t| t.module().map(|w| w.canonicalize(q)))
            .collect();
        let (sub, quotient) = (c.crossee.word.canonicalize(q), c.crosser.word.canonicalize(q));
        let mid_dim: usize = middle.iter().map(|w| w.total_dim()).sum();
        if sub.total_dim() + quotient.total_dim() != mid_dim {
            return Err(Error::Consistency(format!(
                "dimensions do not add up for {}",
                c.describe(q)
            )));
        }
        out.push(ShortExactSequence {
            sub,
            middle,
            quotient,
            crossing: c,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtReport {
    pub dim_mn: usize,
    pub dim_nm: usize,
    pub int: usize,
    pub k: usize,
    pub k_prime: usize,
    pub same_module: bool,
}

/// Count extensions both ways and check them against the intersection
/// number of the arcs.
pub fn ext_report(q: &Quiver, wm: &StringWord, wn: &StringWord) -> Result<ExtReport> {
    let cs = enumerate_crossings(q, wm, wn);
    let same = wm.same_module(q, wn);
    let count = |d: Direction, ext: bool| {
        cs.iter()
            .filter(|c| c.direction == d && c.is_extension() == ext)
            .count()
    };
    let dim_mn = count(Direction::Forward, true);
    let k = count(Direction::Forward, false);
    let report = if same {
        ExtReport {
            dim_mn,
            dim_nm: dim_mn,
            int: 2 * cs.len(),
            k,
            k_prime: k,
            same_module: true,
        }
    } else {
        ExtReport {
            dim_mn,
            dim_nm: count(Direction::Backward, true),
            int: cs.len(),
            k,
            k_prime: count(Direction::Backward, false),
            same_module: false,
        }
    };
    let lhs = report.dim_mn + report.dim_nm;
    let rhs = report.int as isize - report.k as isize - report.k_prime as isize;
    if lhs as isize != rhs {
        return Err(Error::Consistency(format!(
            "extension count {lhs} differs from Int - k - k' = {rhs}"
        )));
    }
    Ok(report)
}

pub fn ext_dim(q: &Quiver, wm: &StringWord, wn: &StringWord) -> Result<usize> {
    Ok(ext_report(q, wm, wn)?.dim_mn)
}

/// An object of the cluster category: the arc of a string module, or an
/// arc of the triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum ArcObject {
    String(StringWord),
    Arc(EdgeId),
}

impl ArcObject {
    pub fn display(&self, q: &Quiver) -> String {
        match self {
            ArcObject::String(w) => w.ascii(q),
            ArcObject::Arc(e) => format!("arc {}", q.triangulation().label(*e)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub source: ArcObject,
    pub middle: Vec<ArcObject>,
    pub target: ArcObject,
    pub direction: Direction,
}

impl Triangle {
    pub fn display(&self, q: &Quiver) -> String {
        let mid = if self.middle.is_empty() {
            "0".to_string()
        } else {
            self.middle
                .iter()
                .map(|m| m.display(q))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let (s, t) = (self.source.display(q), self.target.display(q));
        format!("{s} -> {mid} -> {t} -> {t}[1]")
    }
}

fn object(term: &Term, q: &Quiver) -> Option<ArcObject> {
    match term {
        Term::Module(w) => Some(ArcObject::String(w.canonicalize(q))),
        Term::Arc {
            edge,
            boundary: false,
        } => Some(ArcObject::Arc(*edge)),
        _ => None,
    }
}

/// For each crossing, the two non-split triangles of the cluster category.
/// Boundary segments are zero objects there and are dropped.
pub fn cluster_triangles(q: &Quiver, wm: &StringWord, wn: &StringWord) -> Result<Vec<(Crossing, [Triangle; 2])>> {
    let mut out = Vec::new();
    for c in enumerate_crossings(q, wm, wn) {
        let sm = smooth(q, &c)?;
        let g1 = ArcObject::String(c.crosser.word.canonicalize(q));
        let g2 = ArcObject::String(c.crossee.word.canonicalize(q));
        let first = Triangle {
            source: g2.clone(),
            middle: [&sm.w3, &sm.w4].into_iter().filter_map(|t| object(t, q)).collect(),
            target: g1.clone(),
            direction: c.direction,
        };
        let second = Triangle {
            source: g1,
            middle: [&sm.w5, &sm.w6].into_iter().filter_map(|t| object(t, q)).collect(),
            target: g2,
            direction: c.direction,
        };
        out.push((c, [first, second]));
    }
    Ok(out)
}

/// Snake graph of a string module.
pub fn snake_graph(q: &Quiver, w: &StringWord) -> Result<SnakeGraph> {
    snake::snake_graph_of_walk(q, &Walk::new(q, w))
}
