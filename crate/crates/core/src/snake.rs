//! Snake graphs of arcs and their resolutions.
//!
//! The snake graph of an arc has one square tile for each arc of the
//! triangulation it crosses. Tile `j` has the crossed arc as its diagonal,
//! drawn from the north-west to the south-east corner. Its south and west
//! sides are the other two sides of the triangle before the crossing, and its
//! north and east sides those of the triangle after it. Consecutive tiles are
//! glued along the third side of the triangle between them, either on the
//! north or on the east of the earlier tile.
//!
//! `rel` records whether a tile is drawn with the orientation of the surface
//! (`+1`) or mirrored (`-1`). It alternates along the graph.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::strings::{Letter, StringWord, Walk};
use crate::surface::{EdgeId, Quiver, TriId, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Sign {
        if v > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    N,
    E,
    S,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Glue {
    North,
    East,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tile {
    pub diag: EdgeId,
    pub n: EdgeId,
    pub e: EdgeId,
    pub s: EdgeId,
    pub w: EdgeId,
    pub rel: i8,
}

impl Tile {
    pub fn side(&self, side: Side) -> EdgeId {
        match side {
            Side::N => self.n,
            Side::E => self.e,
            Side::S => self.s,
            Side::W => self.w,
        }
    }

    fn rotated(&self) -> Tile {
        Tile {
            diag: self.diag,
            n: self.s,
            e: self.w,
            s: self.n,
            w: self.e,
            rel: self.rel,
        }
    }

    fn mirrored(&self) -> Tile {
        Tile {
            diag: self.diag,
            n: self.e,
            e: self.n,
            s: self.w,
            w: self.s,
            rel: -self.rel,
        }
    }

    /// Tiles agree up to mirroring: same diagonal and same triangles on
    /// each side of it.
    pub fn matches(&self, other: &Tile) -> bool {
        let pair = |a: EdgeId, b: EdgeId| if a < b { (a, b) } else { (b, a) };
        self.diag == other.diag
            && pair(self.s, self.w) == pair(other.s, other.w)
            && pair(self.n, self.e) == pair(other.n, other.e)
    }
}

/// A snake graph with at least one tile.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SnakeGraph {
    pub tiles: Vec<Tile>,
    pub glue: Vec<Glue>,
}

/// Output of a resolution: a snake graph, or a single edge standing for an
/// arc that crosses nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Piece {
    Graph(SnakeGraph),
    Edge(EdgeId),
}

/// One of the two sign functions of a snake graph. It is pinned down by the
/// sign of the south and east sides of the first tile. Along the graph the
/// south and east signs alternate, and north and west carry the opposite sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SignFunction {
    pub first_se: Sign,
}

impl SignFunction {
    /// The sign function whose south and east sides are negative on tiles
    /// drawn with the orientation of the surface.
    pub fn standard(g: &SnakeGraph) -> SignFunction {
        SignFunction {
            first_se: Sign::from_i8(-g.tiles[0].rel),
        }
    }

    pub fn negated(self) -> SignFunction {
        SignFunction {
            first_se: -self.first_se,
        }
    }

    pub fn side(&self, j: usize, side: Side) -> Sign {
        let se = if j.is_multiple_of(2) {
            self.first_se
        } else {
            -self.first_se
        };
        match side {
            Side::S | Side::E => se,
            Side::N | Side::W => -se,
        }
    }

    /// Sign of the interior edge between tiles `k` and `k + 1`.
    pub fn interior(&self, g: &SnakeGraph, k: usize) -> Sign {
        match g.glue[k] {
            Glue::North => self.side(k, Side::N),
            Glue::East => self.side(k, Side::E),
        }
    }

    pub fn interior_signs(&self, g: &SnakeGraph) -> Vec<Sign> {
        (0..g.glue.len()).map(|k| self.interior(g, k)).collect()
    }
}

impl SnakeGraph {
    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn diagonals(&self) -> Vec<EdgeId> {
        self.tiles.iter().map(|t| t.diag).collect()
    }

    /// The edge between tiles `k` and `k + 1`.
    pub fn interior_edge(&self, k: usize) -> EdgeId {
        match self.glue[k] {
            Glue::North => self.tiles[k].n,
            Glue::East => self.tiles[k].e,
        }
    }

    /// Build the tiles for a walk given by its crossed arcs and the
    /// `diags.len() + 1` triangles it passes through.
    pub fn from_walk_parts(t: &Triangulation, diags: &[EdgeId], tris: &[TriId]) -> Result<Self> {
        if diags.is_empty() {
            return Err(Error::EmptySequence);
        }
        assert_eq!(tris.len(), diags.len() + 1);
        let mut tiles = Vec::with_capacity(diags.len());
        for (j, &d) in diags.iter().enumerate() {
            let (before, after) = (tris[j], tris[j + 1]);
            if before == after || !t.contains(before, d) || !t.contains(after, d) {
                return Err(Error::Precondition(format!(
                    "walk does not cross arc {} between two triangles",
                    t.label(d)
                )));
            }
            let rel: i8 = if j % 2 == 0 { 1 } else { -1 };
            let [_, x, y] = t.rotate_to(before, d);
            let [_, x2, y2] = t.rotate_to(after, d);
            let (w, s) = if rel > 0 { (x, y) } else { (y, x) };
            let (e, n) = if rel > 0 { (x2, y2) } else { (y2, x2) };
            tiles.push(Tile {
                diag: d,
                n,
                e,
                s,
                w,
                rel,
            });
        }
        let mut glue = Vec::with_capacity(diags.len().saturating_sub(1));
        for j in 0..diags.len().saturating_sub(1) {
            let after = tris[j + 1];
            if !t.contains(after, diags[j + 1]) {
                return Err(Error::NotAdjacent { position: j });
            }
            let sigma = t.third_side(after, diags[j], diags[j + 1]);
            let (cur, next) = (&tiles[j], &tiles[j + 1]);
            let g = if cur.n == sigma {
                if next.s != sigma {
                    return Err(Error::Consistency(format!(
                        "tile {} glued north along {} but tile {} has it elsewhere",
                        j,
                        t.label(sigma),
                        j + 1
                    )));
                }
                Glue::North
            } else if cur.e == sigma {
                if next.w != sigma {
                    return Err(Error::Consistency(format!(
                        "tile {} glued east along {} but tile {} has it elsewhere",
                        j,
                        t.label(sigma),
                        j + 1
                    )));
                }
                Glue::East
            } else {
                return Err(Error::Consistency(format!(
                    "gluing edge {} is not on the north-east of tile {j}",
                    t.label(sigma)
                )));
            };
            glue.push(g);
        }
        Ok(SnakeGraph { tiles, glue })
    }

    /// Tiles `i..=j`.
    pub fn sub(&self, i: usize, j: usize) -> SnakeGraph {
        SnakeGraph {
            tiles: self.tiles[i..=j].to_vec(),
            glue: self.glue[i..j].to_vec(),
        }
    }

    /// The same graph traversed backwards (a half turn).
    pub fn rotated(&self) -> SnakeGraph {
        SnakeGraph {
            tiles: self.tiles.iter().rev().map(Tile::rotated).collect(),
            glue: self.glue.iter().rev().copied().collect(),
        }
    }

    /// Reflection in the south-west to north-east axis.
    pub fn mirrored(&self) -> SnakeGraph {
        SnakeGraph {
            tiles: self.tiles.iter().map(Tile::mirrored).collect(),
            glue: self
                .glue
                .iter()
                .map(|g| match g {
                    Glue::North => Glue::East,
                    Glue::East => Glue::North,
                })
                .collect(),
        }
    }

    /// Glue `b` after `a` along the single edge shared by the north-east of
    /// the last tile of `a` and the south-west of the first tile of `b`.
    pub fn concat(a: &SnakeGraph, b: &SnakeGraph) -> Result<SnakeGraph> {
        let last = a.tiles.last().unwrap();
        let mut b = b.clone();
        if b.tiles[0].rel == last.rel {
            b = b.mirrored();
        }
        let first = &b.tiles[0];
        let common: Vec<EdgeId> = [last.n, last.e]
            .into_iter()
            .filter(|&x| x == first.s || x == first.w)
            .collect();
        let glue = match common.as_slice() {
            [x] if last.n == *x && first.s == *x => Glue::North,
            [x] if last.e == *x && first.w == *x => Glue::East,
            [_] => {
                return Err(Error::Gluing(
                    "shared edge sits on non-opposite sides".into(),
                ))
            }
            [] => return Err(Error::Gluing("pieces share no edge".into())),
            _ => return Err(Error::Gluing("pieces share two edges".into())),
        };
        let mut tiles = a.tiles.clone();
        tiles.extend(b.tiles.iter().copied());
        let mut glues = a.glue.clone();
        glues.push(glue);
        glues.extend(b.glue.iter().copied());
        Ok(SnakeGraph {
            tiles,
            glue: glues,
        })
    }

    fn normalized(&self) -> SnakeGraph {
        if self.tiles[0].rel < 0 {
            self.mirrored()
        } else {
            self.clone()
        }
    }

    /// Key identifying the graph up to mirroring and traversal direction.
    pub fn canonical(&self) -> SnakeGraph {
        let a = self.normalized();
        let b = self.rotated().normalized();
        let key = |g: &SnakeGraph| (g.tiles.clone(), g.glue.clone());
        if key(&a) <= key(&b) {
            a
        } else {
            b
        }
    }

    pub fn same_up_to_symmetry(&self, other: &SnakeGraph) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    /// The south-west side of the first tile carrying sign `sign` under `f`.
    pub fn sw_with_sign(&self, f: SignFunction, sign: Sign) -> EdgeId {
        if f.side(0, Side::S) == sign {
            self.tiles[0].s
        } else {
            self.tiles[0].w
        }
    }

    /// The north-east side of the last tile carrying sign `sign` under `f`.
    pub fn ne_with_sign(&self, f: SignFunction, sign: Sign) -> EdgeId {
        let j = self.len() - 1;
        if f.side(j, Side::N) == sign {
            self.tiles[j].n
        } else {
            self.tiles[j].e
        }
    }

    /// Sign under `f` of the south-west side of the first tile labelled `e`.
    fn sign_of_sw(&self, f: SignFunction, e: EdgeId) -> Result<Sign> {
        let t = &self.tiles[0];
        if t.s == e {
            Ok(f.side(0, Side::S))
        } else if t.w == e {
            Ok(f.side(0, Side::W))
        } else {
            Err(Error::Consistency("expected edge missing from south-west".into()))
        }
    }

    fn sign_of_ne(&self, f: SignFunction, e: EdgeId) -> Result<Sign> {
        let j = self.len() - 1;
        let t = &self.tiles[j];
        if t.n == e {
            Ok(f.side(j, Side::N))
        } else if t.e == e {
            Ok(f.side(j, Side::E))
        } else {
            Err(Error::Consistency("expected edge missing from north-east".into()))
        }
    }

    /// Remove the tiles after the last interior edge with index in `glues`
    /// and sign `target`. Falls back to the south-west side with that sign.
    fn cut_after_last(&self, f: SignFunction, target: Sign, glues: std::ops::Range<usize>) -> Piece {
        for k in glues.rev() {
            if f.interior(self, k) == target {
                return Piece::Graph(self.sub(0, k));
            }
        }
        Piece::Edge(self.sw_with_sign(f, target))
    }

    /// Remove the tiles before the first interior edge with index in `glues`
    /// and sign `target`. Falls back to the north-east side with that sign.
    fn cut_before_first(&self, f: SignFunction, target: Sign, glues: std::ops::Range<usize>) -> Piece {
        for k in glues {
            if f.interior(self, k) == target {
                return Piece::Graph(self.sub(k + 1, self.len() - 1));
            }
        }
        Piece::Edge(self.ne_with_sign(f, target))
    }

    /// Draw the graph with box characters, one cell per tile.
    pub fn render(&self, t: &Triangulation) -> String {
        let mut pos = vec![(0i32, 0i32)];
        for g in &self.glue {
            let (x, y) = *pos.last().unwrap();
            pos.push(match g {
                Glue::North => (x, y + 1),
                Glue::East => (x + 1, y),
            });
        }
        let max_x = pos.iter().map(|p| p.0).max().unwrap();
        let max_y = pos.iter().map(|p| p.1).max().unwrap();
        const W: usize = 6;
        const H: usize = 3;
        let cols = (max_x as usize + 1) * W + 1;
        let rows = (max_y as usize + 1) * H + 1;
        let mut canvas = vec![vec![' '; cols]; rows];
        for (i, &(x, y)) in pos.iter().enumerate() {
            let c0 = x as usize * W;
            let r0 = (max_y - y) as usize * H;
            for c in c0..=c0 + W {
                canvas[r0][c] = '-';
                canvas[r0 + H][c] = '-';
            }
            for r in r0..=r0 + H {
                canvas[r][c0] = '|';
                canvas[r][c0 + W] = '|';
            }
            for (r, c) in [(r0, c0), (r0, c0 + W), (r0 + H, c0), (r0 + H, c0 + W)] {
                canvas[r][c] = '+';
            }
            let label: Vec<char> = t.label(self.tiles[i].diag).chars().take(W - 1).collect();
            let start = c0 + 1 + (W - 1 - label.len()) / 2;
            for (k, ch) in label.into_iter().enumerate() {
                canvas[r0 + 1][start + k] = ch;
            }
        }
        let mut out: Vec<String> = canvas
            .into_iter()
            .map(|row| row.into_iter().collect::<String>().trim_end().to_string())
            .collect();
        for (i, tile) in self.tiles.iter().enumerate() {
            out.push(format!(
                "tile {i}: diagonal {} N={} E={} S={} W={} rel={}",
                t.label(tile.diag),
                t.label(tile.n),
                t.label(tile.e),
                t.label(tile.s),
                t.label(tile.w),
                if tile.rel > 0 { "+" } else { "-" }
            ));
        }
        out.join("\n")
    }
}

/// Snake graph of the arc crossing the given sequence of arcs. Consecutive
/// arcs must share exactly one triangle.
pub fn build_snake_graph(t: &Triangulation, seq: &[EdgeId]) -> Result<SnakeGraph> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    for &e in seq {
        if t.is_boundary(e) {
            return Err(Error::Precondition(format!(
                "boundary edge {} cannot be crossed",
                t.label(e)
            )));
        }
    }
    let mut tris = Vec::with_capacity(seq.len() + 1);
    let mut between = Vec::with_capacity(seq.len().saturating_sub(1));
    for j in 0..seq.len() - 1 {
        let shared = t.shared_triangles(seq[j], seq[j + 1]);
        match shared.len() {
            0 => return Err(Error::NotAdjacent { position: j }),
            1 => between.push(shared[0]),
            _ => return Err(Error::AmbiguousSequence { position: j }),
        }
    }
    if seq.len() == 1 {
        tris.extend(t.triangles_of(seq[0]));
    } else {
        tris.push(t.other_triangle(seq[0], between[0]).unwrap());
        tris.extend(between.iter().copied());
        let last = *between.last().unwrap();
        tris.push(t.other_triangle(*seq.last().unwrap(), last).unwrap());
    }
    SnakeGraph::from_walk_parts(t, seq, &tris)
}

/// The string of the arc crossing the given sequence of arcs: consecutive
/// arcs share a triangle, and the arrow between them in that triangle gives
/// the letter.
pub fn string_from_sequence(q: &Quiver, seq: &[EdgeId]) -> Result<StringWord> {
    let t = q.triangulation();
    build_snake_graph(t, seq)?;
    let vert = |e: EdgeId| q.vertex_of(e).expect("crossed arcs are internal");
    let mut letters = Vec::with_capacity(seq.len().saturating_sub(1));
    for (j, pair) in seq.windows(2).enumerate() {
        let (x, y) = (vert(pair[0]), vert(pair[1]));
        let tri = t.shared_triangles(pair[0], pair[1])[0];
        let letter = q
            .arrow_in(x, y, tri)
            .map(Letter::direct)
            .or_else(|| q.arrow_in(y, x, tri).map(Letter::inverse))
            .ok_or(Error::NotAdjacent { position: j })?;
        letters.push(letter);
    }
    crate::strings::validate_string(q, Some(vert(seq[0])), &letters)
}

pub fn snake_graph_of_walk(q: &Quiver, w: &Walk) -> Result<SnakeGraph> {
    let diags: Vec<EdgeId> = w.word.vertices(q).iter().map(|&v| q.edge_of(v)).collect();
    SnakeGraph::from_walk_parts(q.triangulation(), &diags, &w.tris)
}

/// The sign function read off the letters of a string: the interior edge
/// between tiles `k` and `k + 1` is positive exactly when letter `k` is
/// direct. Fails if the letters do not define a sign function.
pub fn sign_function_from_string(q: &Quiver, w: &Walk) -> Result<(SnakeGraph, SignFunction)> {
    let g = snake_graph_of_walk(q, w)?;
    if w.word.is_empty() {
        return Ok((g.clone(), SignFunction::standard(&g)));
    }
    let want = |k: usize| {
        if w.word.letters[k].inverse {
            Sign::Minus
        } else {
            Sign::Plus
        }
    };
    let f = SignFunction {
        first_se: Sign::Plus,
    };
    let f = if f.interior(&g, 0) == want(0) {
        f
    } else {
        f.negated()
    };
    for k in 1..w.word.len() {
        if f.interior(&g, k) != want(k) {
            return Err(Error::Consistency(format!(
                "letter {k} of {} disagrees with the snake graph signs",
                w.word.ascii(q)
            )));
        }
    }
    Ok((g, f))
}

/// Inverse of [`sign_function_from_string`]: read the vertex sequence off
/// the diagonals and the letter directions off the interior signs.
pub fn string_from_signed_snake_graph(q: &Quiver, g: &SnakeGraph, f: SignFunction) -> Result<StringWord> {
    let t = q.triangulation();
    let vert = |e: EdgeId| {
        q.vertex_of(e)
            .ok_or_else(|| Error::Precondition(format!("diagonal {} is a boundary edge", t.label(e))))
    };
    let base = vert(g.tiles[0].diag)?;
    let mut letters = Vec::with_capacity(g.glue.len());
    for k in 0..g.glue.len() {
        let (x, y) = (vert(g.tiles[k].diag)?, vert(g.tiles[k + 1].diag)?);
        let sigma = g.interior_edge(k);
        let tri = t
            .shared_triangles(g.tiles[k].diag, g.tiles[k + 1].diag)
            .into_iter()
            .find(|&tr| t.contains(tr, sigma))
            .ok_or_else(|| Error::Consistency("consecutive diagonals share no triangle".into()))?;
        let letter = match f.interior(g, k) {
            Sign::Plus => q.arrow_in(x, y, tri).map(Letter::direct),
            Sign::Minus => q.arrow_in(y, x, tri).map(Letter::inverse),
        };
        letters.push(letter.ok_or_else(|| {
            Error::Consistency(format!("no arrow between tiles {k} and {} with the given sign", k + 1))
        })?);
    }
    crate::strings::validate_string(q, Some(base), &letters)
        .map_err(|e| Error::Consistency(format!("snake graph reads back to an invalid string: {e}")))
}

/// A maximal common piece of two snake graphs. `s1..=t1` are tiles of the
/// first graph; `s2..=t2` are tiles of the second graph, traversed backwards
/// when `reversed` is set, in which case they index the rotated graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Overlap {
    pub s1: usize,
    pub t1: usize,
    pub s2: usize,
    pub t2: usize,
    pub reversed: bool,
}

impl Overlap {
    pub fn len(&self) -> usize {
        self.t1 - self.s1 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Tile range of the second graph in its own direction.
    pub fn second_span(&self, len2: usize) -> (usize, usize) {
        if self.reversed {
            (len2 - 1 - self.t2, len2 - 1 - self.s2)
        } else {
            (self.s2, self.t2)
        }
    }

    /// The same overlap with the roles of the graphs exchanged.
    pub fn swapped(&self, len1: usize, len2: usize) -> Overlap {
        if self.reversed {
            Overlap {
                s1: len2 - 1 - self.t2,
                t1: len2 - 1 - self.s2,
                s2: len1 - 1 - self.t1,
                t2: len1 - 1 - self.s1,
                reversed: true,
            }
        } else {
            Overlap {
                s1: self.s2,
                t1: self.t2,
                s2: self.s1,
                t2: self.t1,
                reversed: false,
            }
        }
    }
}

/// The second graph as it is traversed along the overlap.
pub fn oriented(g2: &SnakeGraph, ov: &Overlap) -> SnakeGraph {
    if ov.reversed {
        g2.rotated()
    } else {
        g2.clone()
    }
}

/// All maximal common sub-graphs. With `same` set the two graphs are two
/// copies of one arc: the trivial overlap is skipped and each unordered pair
/// of occurrences is reported once.
pub fn enumerate_overlaps(g1: &SnakeGraph, g2: &SnakeGraph, same: bool) -> Vec<Overlap> {
    let mut out = Vec::new();
    for reversed in [false, true] {
        let h = if reversed { g2.rotated() } else { g2.clone() };
        let (n1, n2) = (g1.len(), h.len());
        for i in 0..n1 {
            for j in 0..n2 {
                if !g1.tiles[i].matches(&h.tiles[j]) {
                    continue;
                }
                if i > 0 && j > 0 && g1.tiles[i - 1].matches(&h.tiles[j - 1]) {
                    continue;
                }
                let mut k = 0;
                while i + k + 1 < n1 && j + k + 1 < n2 && g1.tiles[i + k + 1].matches(&h.tiles[j + k + 1]) {
                    k += 1;
                }
                let ov = Overlap {
                    s1: i,
                    t1: i + k,
                    s2: j,
                    t2: j + k,
                    reversed,
                };
                if same {
                    let other = ov.second_span(n2);
                    if !reversed && other == (i, i + k) {
                        continue;
                    }
                    if (i, i + k) > other {
                        continue;
                    }
                }
                out.push(ov);
            }
        }
    }
    out.sort();
    out
}

/// Which graph crosses the other at an overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Role {
    FirstCrossesSecond,
    SecondCrossesFirst,
}

/// Decide whether an overlap is a crossing overlap, using the standard
/// sign functions of the two graphs. Returns which graph does the crossing.
pub fn crossing_role(g1: &SnakeGraph, g2: &SnakeGraph, ov: &Overlap) -> Result<Option<Role>> {
    let h = oriented(g2, ov);
    let (f1, f2) = (SignFunction::standard(g1), SignFunction::standard(&h));
    // The two sign functions must agree on the common piece.
    for k in 0..ov.len() {
        let (a, b) = (&g1.tiles[ov.s1 + k], &h.tiles[ov.s2 + k]);
        for side_a in [Side::N, Side::E, Side::S, Side::W] {
            let e = a.side(side_a);
            let side_b = [Side::N, Side::E, Side::S, Side::W]
                .into_iter()
                .find(|&sd| b.side(sd) == e)
                .ok_or_else(|| Error::Consistency("overlap tiles have different sides".into()))?;
            if f1.side(ov.s1 + k, side_a) != f2.side(ov.s2 + k, side_b) {
                return Err(Error::Consistency(
                    "sign functions disagree on the overlap".into(),
                ));
            }
        }
    }
    let (d1, d2) = (g1.len() - 1, h.len() - 1);
    let before1 = (ov.s1 > 0).then(|| f1.interior(g1, ov.s1 - 1));
    let after1 = (ov.t1 < d1).then(|| f1.interior(g1, ov.t1));
    let before2 = (ov.s2 > 0).then(|| f2.interior(&h, ov.s2 - 1));
    let after2 = (ov.t2 < d2).then(|| f2.interior(&h, ov.t2));
    let opposite = |a: Option<Sign>, b: Option<Sign>| matches!((a, b), (Some(x), Some(y)) if x != y);
    let equal = |a: Option<Sign>, b: Option<Sign>| matches!((a, b), (Some(x), Some(y)) if x == y);
    let crossing = opposite(before1, after1)
        || opposite(before2, after2)
        || (before2.is_none() && after1.is_none() && equal(before1, after2))
        || (before1.is_none() && after2.is_none() && equal(before2, after1));
    if !crossing {
        return Ok(None);
    }
    // The first graph crosses when it enters the overlap along a positive edge.
    let first = match (before1, before2) {
        (Some(s), _) => s == Sign::Plus,
        (None, Some(s)) => s == Sign::Minus,
        (None, None) => unreachable!("a crossing overlap cannot start both graphs"),
    };
    Ok(Some(if first {
        Role::FirstCrossesSecond
    } else {
        Role::SecondCrossesFirst
    }))
}

pub fn is_crossing_overlap(g1: &SnakeGraph, g2: &SnakeGraph, ov: &Overlap) -> Result<bool> {
    Ok(crossing_role(g1, g2, ov)?.is_some())
}

/// The four pieces obtained by resolving a crossing overlap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub g3: Piece,
    pub g4: Piece,
    pub g5: Piece,
    pub g6: Piece,
}

/// Resolve a crossing overlap of `g1` and `g2`. The first graph should be
/// the one doing the crossing; the pieces then line up with the smoothing
/// of the corresponding module crossing.
pub fn resolve_overlap(g1: &SnakeGraph, g2: &SnakeGraph, ov: &Overlap) -> Result<Resolution> {
    if !is_crossing_overlap(g1, g2, ov)? {
        return Err(Error::NotCrossingOverlap);
    }
    let h = oriented(g2, ov);
    let (d1, d2) = (g1.len() - 1, h.len() - 1);
    let (s, t, s2, t2) = (ov.s1, ov.t1, ov.s2, ov.t2);

    let g3 = if t2 < d2 {
        SnakeGraph::concat(&g1.sub(0, t), &h.sub(t2 + 1, d2))?
    } else {
        g1.sub(0, t)
    };
    let g4 = if t < d1 {
        SnakeGraph::concat(&h.sub(0, t2), &g1.sub(t + 1, d1))?
    } else {
        h.sub(0, t2)
    };

    let g5 = if s > 0 && s2 > 0 {
        Piece::Graph(SnakeGraph::concat(&g1.sub(0, s - 1), &h.sub(0, s2 - 1).rotated())?)
    } else if s2 == 0 {
        let p = g1.sub(0, s - 1);
        let f = SignFunction::standard(&p);
        let target = p.sign_of_ne(f, g1.interior_edge(s - 1))?;
        p.cut_after_last(f, target, 0..p.glue.len())
    } else {
        let p = h.sub(0, s2 - 1).rotated();
        let f = SignFunction::standard(&p);
        let target = p.sign_of_sw(f, h.interior_edge(s2 - 1))?;
        p.cut_before_first(f, target, 0..p.glue.len())
    };

    let g6 = if t < d1 && t2 < d2 {
        Piece::Graph(SnakeGraph::concat(&h.sub(t2 + 1, d2).rotated(), &g1.sub(t + 1, d1))?)
    } else if t2 == d2 {
        let p = g1.sub(t + 1, d1);
        let f = SignFunction::standard(&p);
        let target = p.sign_of_sw(f, g1.interior_edge(t))?;
        p.cut_before_first(f, target, 0..p.glue.len())
    } else {
        let p = h.sub(t2 + 1, d2).rotated();
        let f = SignFunction::standard(&p);
        let target = p.sign_of_ne(f, h.interior_edge(t2))?;
        p.cut_after_last(f, target, 0..p.glue.len())
    };

    Ok(Resolution {
        g3: Piece::Graph(g3),
        g4: Piece::Graph(g4),
        g5,
        g6,
    })
}

/// Graft `g2` onto `g1` at tile `s` along the edge `delta`.
///
/// When `s` is the last tile, `delta` is a north-east side of it and a
/// south-west side of the first tile of `g2`. Otherwise `delta` is the
/// north-east side of tile `s` that is not the gluing edge to tile `s + 1`.
/// The sign functions must agree on `delta`.
pub fn graft(
    g1: &SnakeGraph,
    f1: SignFunction,
    g2: &SnakeGraph,
    f2: SignFunction,
    s: usize,
    delta: EdgeId,
) -> Result<Resolution> {
    let d = g1.len() - 1;
    if s > d {
        return Err(Error::Grafting(format!("tile {s} is out of range")));
    }
    let ts = &g1.tiles[s];
    let (n_side, e_side) = (ts.n, ts.e);
    let delta_side = if n_side == delta {
        Side::N
    } else if e_side == delta {
        Side::E
    } else {
        return Err(Error::Grafting("delta is not a north-east side of the tile".into()));
    };
    if s < d && g1.interior_edge(s) == delta {
        return Err(Error::Grafting("delta is the gluing edge to the next tile".into()));
    }
    let g2_first = &g2.tiles[0];
    let delta_side2 = if g2_first.s == delta {
        Side::S
    } else if g2_first.w == delta {
        Side::W
    } else {
        return Err(Error::Grafting("delta is not a south-west side of the grafted graph".into()));
    };
    let sign = f1.side(s, delta_side);
    if f2.side(0, delta_side2) != sign {
        return Err(Error::Grafting("sign functions disagree on delta".into()));
    }
    if s == d {
        let g3 = SnakeGraph::concat(g1, g2)?;
        let g5 = g1.cut_after_last(f1, sign, 0..g1.glue.len());
        let g6 = g2.cut_before_first(f2, sign, 0..g2.glue.len());
        Ok(Resolution {
            g3: Piece::Graph(g3),
            g4: Piece::Edge(delta),
            g5,
            g6,
        })
    } else {
        let g3 = SnakeGraph::concat(&g1.sub(0, s), g2)?;
        let g4 = g1.cut_before_first(f1, sign, s + 1..g1.glue.len());
        let g5 = g1.cut_after_last(f1, sign, 0..s);
        let g6 = SnakeGraph::concat(&g2.rotated(), &g1.sub(s + 1, d))?;
        Ok(Resolution {
            g3: Piece::Graph(g3),
            g4,
            g5,
            g6: Piece::Graph(g6),
        })
    }
}
