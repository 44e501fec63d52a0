//! String modules over a gentle quiver.
//!
//! A string is a walk in the quiver that uses arrows forwards (direct letters)
//! or backwards (inverse letters), never cancels itself and never passes
//! through a relation in either direction. Its ASCII form lists vertex labels
//! separated by `>` for a direct letter and `<` for an inverse one; a string
//! with no letters is written `(v)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{ArrowId, Quiver, TriId, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Letter {
            arrow,
            inverse: false,
        }
    }

    pub fn inverse(arrow: ArrowId) -> Self {
        Letter {
            arrow,
            inverse: true,
        }
    }

    pub fn flipped(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn start(self, q: &Quiver) -> Vertex {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn end(self, q: &Quiver) -> Vertex {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StringWord {
    pub base: Vertex,
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn trivial(v: Vertex) -> Self {
        StringWord {
            base: v,
            letters: Vec::new(),
        }
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Dimension of the string module: one more than the number of letters.
    pub fn total_dim(&self) -> usize {
        self.letters.len() + 1
    }

    pub fn vertices(&self, q: &Quiver) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.letters.len() + 1);
        out.push(self.base);
        for l in &self.letters {
            out.push(l.end(q));
        }
        out
    }

    pub fn start(&self) -> Vertex {
        self.base
    }

    pub fn end(&self, q: &Quiver) -> Vertex {
        self.letters.last().map_or(self.base, |l| l.end(q))
    }

    pub fn invert(&self, q: &Quiver) -> StringWord {
        StringWord {
            base: self.end(q),
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    /// Sub-string between vertex positions `i` and `j` inclusive.
    pub fn slice(&self, q: &Quiver, i: usize, j: usize) -> StringWord {
        assert!(i <= j && j <= self.letters.len());
        let base = if i == 0 {
            self.base
        } else {
            self.letters[i - 1].end(q)
        };
        StringWord {
            base,
            letters: self.letters[i..j].to_vec(),
        }
    }

    /// Concatenation `self · middle · other`, without validation.
    pub fn join(&self, middle: &[Letter], other: &StringWord) -> StringWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(middle);
        letters.extend_from_slice(&other.letters);
        StringWord {
            base: self.base,
            letters,
        }
    }

    pub fn dimension_vector(&self, q: &Quiver) -> Vec<usize> {
        let mut dv = vec![0; q.vertex_count()];
        for v in self.vertices(q) {
            dv[v.0] += 1;
        }
        dv
    }

    /// True when the first letter is direct. A string without letters counts
    /// as both direct and inverse.
    pub fn starts_direct(&self) -> bool {
        self.letters.first().is_none_or(|l| !l.inverse)
    }

    pub fn starts_inverse(&self) -> bool {
        self.letters.first().is_none_or(|l| l.inverse)
    }

    pub fn ascii(&self, q: &Quiver) -> String {
        if self.letters.is_empty() {
            return format!("({})", q.label(self.base));
        }
        let mut s = String::from(q.label(self.base));
        for l in &self.letters {
            s.push(if l.inverse { '<' } else { '>' });
            s.push_str(q.label(l.end(q)));
        }
        s
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> StringDisplay<'a> {
        StringDisplay { w: self, q }
    }

    /// Deleting a hook at the start: drop everything up to and including the
    /// first direct letter. `None` when there is no direct letter.
    pub fn delete_hook_start(&self, q: &Quiver) -> Option<StringWord> {
        let k = self.letters.iter().position(|l| !l.inverse)?;
        Some(self.slice(q, k + 1, self.letters.len()))
    }

    /// Deleting a cohook at the start: drop everything up to and including
    /// the first inverse letter.
    pub fn delete_cohook_start(&self, q: &Quiver) -> Option<StringWord> {
        let k = self.letters.iter().position(|l| l.inverse)?;
        Some(self.slice(q, k + 1, self.letters.len()))
    }

    /// Deleting a hook at the end: keep the part before the last inverse letter.
    pub fn delete_hook_end(&self, q: &Quiver) -> Option<StringWord> {
        let k = self.letters.iter().rposition(|l| l.inverse)?;
        Some(self.slice(q, 0, k))
    }

    /// Deleting a cohook at the end: keep the part before the last direct letter.
    pub fn delete_cohook_end(&self, q: &Quiver) -> Option<StringWord> {
        let k = self.letters.iter().rposition(|l| !l.inverse)?;
        Some(self.slice(q, 0, k))
    }

    fn tokens(&self, q: &Quiver) -> Vec<(usize, usize)> {
        let mut t = Vec::with_capacity(2 * self.letters.len() + 1);
        t.push((self.base.0, 0));
        for l in &self.letters {
            t.push((l.inverse as usize, l.arrow));
            t.push((l.end(q).0, 0));
        }
        t
    }

    /// The representative of `{w, w⁻¹}` that is smaller in token order.
    pub fn canonicalize(&self, q: &Quiver) -> StringWord {
        let inv = self.invert(q);
        match self.tokens(q).cmp(&inv.tokens(q)) {
            Ordering::Greater => inv,
            _ => self.clone(),
        }
    }

    /// True when `self` and `other` give isomorphic modules.
    pub fn same_module(&self, q: &Quiver, other: &StringWord) -> bool {
        self == other || *self == other.invert(q)
    }
}

pub struct StringDisplay<'a> {
    w: &'a StringWord,
    q: &'a Quiver,
}

impl fmt::Display for StringDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.w.ascii(self.q))
    }
}

/// Check a raw letter list against the string axioms and build the word.
pub fn validate_string(q: &Quiver, base: Option<Vertex>, letters: &[Letter]) -> Result<StringWord> {
    let base = match (base, letters.first()) {
        (Some(b), Some(l)) => {
            if l.start(q) != b {
                return Err(Error::NotComposable { position: 0 });
            }
            b
        }
        (Some(b), None) => b,
        (None, Some(l)) => l.start(q),
        (None, None) => return Err(Error::MissingBase),
    };
    for i in 1..letters.len() {
        let (p, l) = (letters[i - 1], letters[i]);
        if p.end(q) != l.start(q) {
            return Err(Error::NotComposable { position: i });
        }
        if p.arrow == l.arrow && p.inverse != l.inverse {
            return Err(Error::Cancellation { position: i });
        }
        let rel = match (p.inverse, l.inverse) {
            (false, false) => q.is_relation(p.arrow, l.arrow),
            (true, true) => q.is_relation(l.arrow, p.arrow),
            _ => false,
        };
        if rel {
            return Err(Error::Relation {
                position: i,
                first: q.arrow_name(p.arrow),
                second: q.arrow_name(l.arrow),
            });
        }
    }
    Ok(StringWord {
        base,
        letters: letters.to_vec(),
    })
}

/// Parse the ASCII form and validate it.
pub fn parse_string(q: &Quiver, input: &str) -> Result<StringWord> {
    let s = input.trim();
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let lookup = |name: &str| {
        q.vertex_by_label(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    };
    if s.is_empty() {
        return Err(err("empty input"));
    }
    if let Some(inner) = s.strip_prefix('(') {
        let inner = inner.strip_suffix(')').ok_or_else(|| err("unbalanced parenthesis"))?;
        if inner.contains(['<', '>']) {
            return Err(err("parentheses are only for strings without letters"));
        }
        return Ok(StringWord::trivial(lookup(inner.trim())?));
    }
    let mut names = Vec::new();
    let mut dirs = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '<' | '>' => {
                names.push(std::mem::take(&mut cur));
                dirs.push(ch == '<');
            }
            _ => cur.push(ch),
        }
    }
    names.push(cur);
    let mut verts = Vec::with_capacity(names.len());
    for n in &names {
        let n = n.trim();
        if n.is_empty() {
            return Err(err("missing vertex label"));
        }
        verts.push(lookup(n)?);
    }
    let mut letters = Vec::with_capacity(dirs.len());
    for (i, &inv) in dirs.iter().enumerate() {
        let (x, y) = (verts[i], verts[i + 1]);
        let (from, to) = if inv { (y, x) } else { (x, y) };
        let arrows = q.arrows_between(from, to);
        match arrows.len() {
            0 => {
                return Err(Error::NoArrow {
                    from: q.label(from).to_string(),
                    to: q.label(to).to_string(),
                    position: i,
                })
            }
            1 => letters.push(Letter {
                arrow: arrows[0],
                inverse: inv,
            }),
            _ => {
                return Err(Error::AmbiguousArrow {
                    from: q.label(from).to_string(),
                    to: q.label(to).to_string(),
                })
            }
        }
    }
    validate_string(q, Some(verts[0]), &letters)
}

/// Letters that may follow a string ending with `last` at vertex `v`.
pub fn continuations(q: &Quiver, v: Vertex, last: Option<Letter>) -> Vec<Letter> {
    let mut out = Vec::new();
    for &a in q.out_arrows(v) {
        out.push(Letter::direct(a));
    }
    for &a in q.in_arrows(v) {
        out.push(Letter::inverse(a));
    }
    if let Some(p) = last {
        out.retain(|&l| {
            if p.arrow == l.arrow {
                return false;
            }
            match (p.inverse, l.inverse) {
                (false, false) => !q.is_relation(p.arrow, l.arrow),
                (true, true) => !q.is_relation(l.arrow, p.arrow),
                _ => true,
            }
        });
    }
    out
}

/// Every string module with at most `max_len` letters, one canonical
/// representative each, sorted.
pub fn all_strings(q: &Quiver, max_len: usize) -> Vec<StringWord> {
    let mut found = BTreeSet::new();
    let mut stack: Vec<StringWord> = q.vertices().map(StringWord::trivial).collect();
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            for l in continuations(q, w.end(q), w.letters.last().copied()) {
                let mut next = w.clone();
                next.letters.push(l);
                stack.push(next);
            }
        }
        found.insert(w.canonicalize(q));
    }
    found.into_iter().collect()
}

/// A string together with the triangles it passes through.
///
/// A string with `d` letters crosses the arcs of its vertices in order and
/// visits `d + 2` triangles: the triangle before the first arc, the
/// triangle of each letter, and the triangle after the last arc. For a
/// string without letters the direction of travel is extra data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    pub word: StringWord,
    pub tris: Vec<TriId>,
}

impl Walk {
    /// The walk of `w`. A string without letters is traversed from the first
    /// listed triangle of its arc to the second.
    pub fn new(q: &Quiver, w: &StringWord) -> Walk {
        let t = q.triangulation();
        let verts = w.vertices(q);
        if w.letters.is_empty() {
            let ts = t.triangles_of(q.edge_of(w.base));
            return Walk {
                word: w.clone(),
                tris: vec![ts[0], ts[1]],
            };
        }
        let mut tris = Vec::with_capacity(w.len() + 2);
        let first = q.arrow(w.letters[0].arrow).triangle;
        tris.push(
            t.other_triangle(q.edge_of(verts[0]), first)
                .expect("internal arc has two triangles"),
        );
        for l in &w.letters {
            tris.push(q.arrow(l.arrow).triangle);
        }
        let last = *tris.last().unwrap();
        tris.push(
            t.other_triangle(q.edge_of(*verts.last().unwrap()), last)
                .expect("internal arc has two triangles"),
        );
        Walk {
            word: w.clone(),
            tris,
        }
    }

    /// A walk along a string without letters, from triangle `from`.
    pub fn trivial_from(q: &Quiver, v: Vertex, from: TriId) -> Walk {
        let e = q.edge_of(v);
        let to = q
            .triangulation()
            .other_triangle(e, from)
            .expect("triangle borders the arc");
        Walk {
            word: StringWord::trivial(v),
            tris: vec![from, to],
        }
    }

    pub fn inverse(&self, q: &Quiver) -> Walk {
        Walk {
            word: self.word.invert(q),
            tris: self.tris.iter().rev().copied().collect(),
        }
    }

    pub fn start_triangle(&self) -> TriId {
        self.tris[0]
    }

    pub fn end_triangle(&self) -> TriId {
        *self.tris.last().unwrap()
    }

    /// Triangles on either side of vertex position `i`.
    pub fn around(&self, i: usize) -> (TriId, TriId) {
        (self.tris[i], self.tris[i + 1])
    }

    /// Sub-walk between vertex positions `i` and `j` inclusive.
    pub fn slice(&self, q: &Quiver, i: usize, j: usize) -> Walk {
        Walk {
            word: self.word.slice(q, i, j),
            tris: self.tris[i..=j + 1].to_vec(),
        }
    }
}
