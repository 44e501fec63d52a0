#![allow(dead_code)]

use gentle_ext::corpus::{annulus_quiver, polygon_triangulations, qstar_quiver};
use gentle_ext::strings::continuations;
use gentle_ext::{derive_quiver, Quiver, StringWord};
use proptest::prelude::*;
use std::sync::OnceLock;

/// Quivers used by the property tests: Q*, the annulus and one hexagon.
pub fn quivers() -> &'static [Quiver] {
    static Q: OnceLock<Vec<Quiver>> = OnceLock::new();
    Q.get_or_init(|| {
        let hexagon = derive_quiver(&polygon_triangulations(6)[3]).unwrap();
        vec![qstar_quiver(), annulus_quiver(), hexagon]
    })
}

/// Grow a string from a start vertex, letting `choices` pick each letter
/// among the legal continuations.
pub fn grow(q: &Quiver, start: usize, choices: &[usize]) -> StringWord {
    let mut w = StringWord::trivial(gentle_ext::surface::Vertex(start % q.vertex_count()));
    for &c in choices {
        let next = continuations(q, w.end(q), w.letters.last().copied());
        if next.is_empty() {
            break;
        }
        w.letters.push(next[c % next.len()]);
    }
    w
}

/// A quiver index and a valid string over it.
pub fn quiver_and_string(max_len: usize) -> impl Strategy<Value = (usize, StringWord)> {
    (0..quivers().len(), any::<usize>(), prop::collection::vec(any::<usize>(), 0..=max_len))
        .prop_map(|(i, s, c)| (i, grow(&quivers()[i], s, &c)))
}

/// A quiver index and two valid strings over it.
pub fn quiver_and_pair(max_len: usize) -> impl Strategy<Value = (usize, StringWord, StringWord)> {
    (
        0..quivers().len(),
        any::<usize>(),
        prop::collection::vec(any::<usize>(), 0..=max_len),
        any::<usize>(),
        prop::collection::vec(any::<usize>(), 0..=max_len),
    )
        .prop_map(|(i, s1, c1, s2, c2)| {
            let q = &quivers()[i];
            (i, grow(q, s1, &c1), grow(q, s2, &c2))
        })
}
