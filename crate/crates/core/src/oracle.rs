//! Extension groups computed from scratch with linear algebra.
//!
//! Modules are representations of the bound quiver: a vector space per
//! vertex and a matrix per arrow. `Ext¹(M, N)` comes from a projective
//! presentation `0 -> ΩM -> P0 -> M -> 0` and the exact sequence
//! `0 -> Hom(M,N) -> Hom(P0,N) -> Hom(ΩM,N) -> Ext¹(M,N) -> 0`.

use num_rational::{BigRational, Rational64};

use crate::error::{Error, Result};
use crate::linalg::{null_space, Checked, Matrix, Overflow, Scalar};
use crate::strings::StringWord;
use crate::surface::{ArrowId, Quiver, Vertex};

pub const DEFAULT_PATH_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Representation<T> {
    pub dims: Vec<usize>,
    /// Matrix of each arrow, of shape `dims[target] x dims[source]`.
    pub maps: Vec<Matrix<T>>,
}

impl<T: Scalar> Representation<T> {
    pub fn zero(q: &Quiver) -> Self {
        Representation {
            dims: vec![0; q.vertex_count()],
            maps: q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// True when every relation acts as zero.
    pub fn satisfies_relations(&self, q: &Quiver) -> Checked<bool> {
        for &(a, b) in q.relations() {
            if !self.maps[b].mul(&self.maps[a])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same representation with the basis of each space permuted by
    /// reversing it. Used to check that results do not depend on bases.
    pub fn reversed_bases(&self, q: &Quiver) -> Self {
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let m = &self.maps[i];
                let (r, c) = (self.dims[a.target.0], self.dims[a.source.0]);
                let mut out = Matrix::zeros(r, c);
                for x in 0..r {
                    for y in 0..c {
                        out.set(r - 1 - x, c - 1 - y, m.get(x, y).clone());
                    }
                }
                out
            })
            .collect();
        Representation {
            dims: self.dims.clone(),
            maps,
        }
    }
}

/// One basis vector per vertex of the string; a direct letter maps the
/// vector at its start to the vector at its end, an inverse letter the
/// other way round.
pub fn string_to_representation<T: Scalar>(q: &Quiver, w: &StringWord) -> Representation<T> {
    let verts = w.vertices(q);
    let mut dims = vec![0; q.vertex_count()];
    let mut local = Vec::with_capacity(verts.len());
    for v in &verts {
        local.push(dims[v.0]);
        dims[v.0] += 1;
    }
    let mut maps: Vec<Matrix<T>> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target.0], dims[a.source.0]))
        .collect();
    for (i, l) in w.letters.iter().enumerate() {
        let (src, dst) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        maps[l.arrow].set(local[dst], local[src], T::one());
    }
    Representation { dims, maps }
}

/// Paths out of a vertex with no relation inside them.
#[derive(Debug, Clone)]
pub struct PathTree {
    /// End vertex of each path; path 0 is the trivial path.
    pub ends: Vec<Vertex>,
    /// `children[p]` lists `(arrow, extended path)` for each allowed extension.
    pub children: Vec<Vec<(ArrowId, usize)>>,
}

pub fn path_tree(q: &Quiver, v: Vertex, bound: usize) -> Result<PathTree> {
    let mut ends = vec![v];
    let mut last: Vec<Option<ArrowId>> = vec![None];
    let mut children = vec![Vec::new()];
    let mut p = 0;
    while p < ends.len() {
        for &b in q.out_arrows(ends[p]) {
            if let Some(a) = last[p] {
                if q.is_relation(a, b) {
                    continue;
                }
            }
            if ends.len() >= bound {
                return Err(Error::PathBound {
                    vertex: q.label(v).to_string(),
                    bound,
                });
            }
            children[p].push((b, ends.len()));
            ends.push(q.arrow(b).target);
            last.push(Some(b));
            children.push(Vec::new());
        }
        p += 1;
    }
    Ok(PathTree { ends, children })
}

fn local_indices(q: &Quiver, ends: &[Vertex]) -> (Vec<usize>, Vec<usize>) {
    let mut dims = vec![0; q.vertex_count()];
    let mut local = Vec::with_capacity(ends.len());
    for v in ends {
        local.push(dims[v.0]);
        dims[v.0] += 1;
    }
    (dims, local)
}

/// The indecomposable projective at `v`.
pub fn projective<T: Scalar>(q: &Quiver, v: Vertex) -> Result<Representation<T>> {
    let tree = path_tree(q, v, DEFAULT_PATH_BOUND)?;
    let (dims, local) = local_indices(q, &tree.ends);
    let mut maps: Vec<Matrix<T>> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target.0], dims[a.source.0]))
        .collect();
    for (p, ch) in tree.children.iter().enumerate() {
        for &(b, c) in ch {
            maps[b].set(local[c], local[p], T::one());
        }
    }
    Ok(Representation { dims, maps })
}

/// Dimension of the space of homomorphisms `M -> N`.
pub fn hom_dim<T: Scalar>(q: &Quiver, m: &Representation<T>, n: &Representation<T>) -> Checked<usize> {
    let nv = q.vertex_count();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Ok(0);
    }
    // f_v is stored row-major: entry (r, c) at offset[v] + r * m.dims[v] + c.
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<(usize, T)>> = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        let (x, y) = (a.source.0, a.target.0);
        let (ma, na) = (&m.maps[i], &n.maps[i]);
        for r in 0..n.dims[y] {
            for c in 0..m.dims[x] {
                // (f_y M_a)[r][c] - (N_a f_x)[r][c] = 0
                let mut eq: Vec<(usize, T)> = Vec::new();
                for k in 0..m.dims[y] {
                    let coef = ma.get(k, c);
                    if !coef.is_zero() {
                        eq.push((var(y, r, k), coef.clone()));
                    }
                }
                for k in 0..n.dims[x] {
                    let coef = na.get(r, k);
                    if !coef.is_zero() {
                        eq.push((var(x, k, c), coef.neg()));
                    }
                }
                if !eq.is_empty() {
                    rows.push(eq);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(unknowns);
    }
    let mut mat: Matrix<T> = Matrix::zeros(rows.len(), unknowns);
    for (i, eq) in rows.into_iter().enumerate() {
        for (j, v) in eq {
            let cur = mat.get(i, j).add(&v)?;
            mat.set(i, j, cur);
        }
    }
    Ok(unknowns - mat.rank()?)
}

/// A module with a projective presentation `0 -> ΩM -> P0 -> M -> 0`, where
/// `P0` is the projective cover.
#[derive(Debug, Clone)]
pub struct Presented<T> {
    pub module: Representation<T>,
    pub syzygy: Representation<T>,
    /// Multiplicity of each indecomposable projective in `P0`.
    pub top: Vec<usize>,
}

fn column_rank<T: Scalar>(rows: usize, cols: &[Vec<T>]) -> Checked<usize> {
    if cols.is_empty() || rows == 0 {
        return Ok(0);
    }
    Matrix::from_columns(rows, cols).rank()
}

pub fn present<T: Scalar>(q: &Quiver, m: &Representation<T>) -> Result<Checked<Presented<T>>> {
    match present_inner(q, m) {
        Ok(r) => Ok(Ok(r?)),
        Err(Overflow) => Ok(Err(Overflow)),
    }
}

fn present_inner<T: Scalar>(q: &Quiver, m: &Representation<T>) -> Checked<Result<Presented<T>>> {
    let nv = q.vertex_count();
    // Generators: basis vectors completing the radical at each vertex.
    let mut gens: Vec<(Vertex, usize)> = Vec::new();
    let mut top = vec![0; nv];
    for v in q.vertices() {
        let d = m.dims[v.0];
        let mut cols: Vec<Vec<T>> = Vec::new();
        for &a in q.in_arrows(v) {
            let mat = &m.maps[a];
            for c in 0..mat.cols {
                cols.push(mat.column(c));
            }
        }
        let mut rank = column_rank(d, &cols)?;
        for i in 0..d {
            let mut e = vec![T::zero(); d];
            e[i] = T::one();
            cols.push(e);
            let r = column_rank(d, &cols)?;
            if r > rank {
                rank = r;
                gens.push((v, i));
                top[v.0] += 1;
            } else {
                cols.pop();
            }
        }
    }
    // P0 is a sum of projectives, one per generator. Index its basis by
    // (generator, path) and record the image of each basis vector in M.
    let mut trees = Vec::with_capacity(gens.len());
    for &(v, _) in &gens {
        match path_tree(q, v, DEFAULT_PATH_BOUND) {
            Ok(t) => trees.push(t),
            Err(e) => return Ok(Err(e)),
        }
    }
    let mut p0_dims = vec![0; nv];
    // index[g][p] = local index of path p of generator g in P0 at its end vertex
    let mut index: Vec<Vec<usize>> = Vec::with_capacity(gens.len());
    let mut images: Vec<Vec<Vec<T>>> = vec![Vec::new(); nv];
    for (g, tree) in trees.iter().enumerate() {
        let (v, i) = gens[g];
        let mut idx = vec![0; tree.ends.len()];
        let mut img: Vec<Vec<T>> = vec![Vec::new(); tree.ends.len()];
        let mut e = vec![T::zero(); m.dims[v.0]];
        e[i] = T::one();
        img[0] = e;
        for p in 0..tree.ends.len() {
            let y = tree.ends[p].0;
            idx[p] = p0_dims[y];
            p0_dims[y] += 1;
            images[y].push(img[p].clone());
            for &(b, c) in &tree.children[p] {
                let col = Matrix::from_columns(m.dims[y], &[img[p].clone()]);
                img[c] = m.maps[b].mul(&col)?.column(0);
            }
        }
        index.push(idx);
    }
    // Kernel of P0 -> M at each vertex.
    let mut kernels = Vec::with_capacity(nv);
    for y in 0..nv {
        let pi = Matrix::from_columns(m.dims[y], &images[y]);
        let pi = if images[y].is_empty() {
            Matrix::zeros(m.dims[y], 0)
        } else {
            pi
        };
        if pi.rank()? != m.dims[y] {
            return Ok(Err(Error::Consistency(format!(
                "projective cover does not map onto vertex {}",
                q.label(Vertex(y))
            ))));
        }
        kernels.push(null_space(&pi)?);
    }
    let omega_dims: Vec<usize> = kernels.iter().map(|k| k.basis.len()).collect();
    // Arrow action on P0, restricted to the kernel.
    let mut omega_maps = Vec::with_capacity(q.arrows().len());
    for (b, arrow) in q.arrows().iter().enumerate() {
        let (y, z) = (arrow.source.0, arrow.target.0);
        // P0 map at arrow b as a sparse list (from local index at y, to local index at z).
        let mut moves: Vec<(usize, usize)> = Vec::new();
        for (g, tree) in trees.iter().enumerate() {
            for p in 0..tree.ends.len() {
                if tree.ends[p].0 != y {
                    continue;
                }
                for &(bb, c) in &tree.children[p] {
                    if bb == b {
                        moves.push((index[g][p], index[g][c]));
                    }
                }
            }
        }
        let mut mat = Matrix::zeros(omega_dims[z], omega_dims[y]);
        for (k, vec) in kernels[y].basis.iter().enumerate() {
            let mut image = vec![T::zero(); p0_dims[z]];
            for &(from, to) in &moves {
                if !vec[from].is_zero() {
                    image[to] = image[to].add(&vec[from])?;
                }
            }
            for (r, &f) in kernels[z].free.iter().enumerate() {
                mat.set(r, k, image[f].clone());
            }
        }
        omega_maps.push(mat);
    }
    Ok(Ok(Presented {
        module: m.clone(),
        syzygy: Representation {
            dims: omega_dims,
            maps: omega_maps,
        },
        top,
    }))
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// `dim Ext¹(M, N)` from a presentation of `M`.
pub fn ext1_presented<T: Scalar>(q: &Quiver, m: &Presented<T>, n: &Representation<T>) -> Checked<usize> {
    let hom_p0: usize = m.top.iter().zip(&n.dims).map(|(a, b)| a * b).sum();
    let hom_omega = if disjoint(&m.syzygy.dims, &n.dims) {
        0
    } else {
        hom_dim(q, &m.syzygy, n)?
    };
    let hom_m = if disjoint(&m.module.dims, &n.dims) {
        0
    } else {
        hom_dim(q, &m.module, n)?
    };
    let v = hom_omega + hom_m;
    if v < hom_p0 {
        // Impossible for an exact sequence; surfaced by the caller.
        return Ok(usize::MAX);
    }
    Ok(v - hom_p0)
}

fn finish(q: &Quiver, v: usize, m: &StringWord, n: &StringWord) -> Result<usize> {
    if v == usize::MAX {
        return Err(Error::Consistency(format!(
            "negative extension dimension for ({}, {})",
            m.ascii(q),
            n.ascii(q)
        )));
    }
    Ok(v)
}

fn ext1_with<T: Scalar>(q: &Quiver, m: &StringWord, n: &StringWord) -> Result<Checked<usize>> {
    let rm = string_to_representation::<T>(q, m);
    let rn = string_to_representation::<T>(q, n);
    let pm = match present(q, &rm)? {
        Ok(p) => p,
        Err(o) => return Ok(Err(o)),
    };
    Ok(ext1_presented(q, &pm, &rn))
}

/// `dim Ext¹(M(m), M(n))` by linear algebra.
pub fn ext1_dim_oracle(q: &Quiver, m: &StringWord, n: &StringWord) -> Result<usize> {
    let v = match ext1_with::<Rational64>(q, m, n)? {
        Ok(v) => v,
        Err(Overflow) => ext1_with::<BigRational>(q, m, n)?.expect("big rationals do not overflow"),
    };
    finish(q, v, m, n)
}

/// Presentations prepared once per module, for sweeps over many pairs.
pub struct Prepared {
    pub word: StringWord,
    small: Option<Presented<Rational64>>,
    module: Representation<Rational64>,
}

impl Prepared {
    pub fn new(q: &Quiver, w: &StringWord) -> Result<Prepared> {
        let module = string_to_representation::<Rational64>(q, w);
        let small = present(q, &module)?.ok();
        Ok(Prepared {
            word: w.clone(),
            small,
            module,
        })
    }

    /// `dim Ext¹(self, other)`.
    pub fn ext1(&self, q: &Quiver, other: &Prepared) -> Result<usize> {
        if let Some(p) = &self.small {
            if let Ok(v) = ext1_presented(q, p, &other.module) {
                return finish(q, v, &self.word, &other.word);
            }
        }
        ext1_dim_oracle(q, &self.word, &other.word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::strings::parse_string;

    #[test]
    fn string_representation_has_one_vector_per_position() {
        let q = corpus::qstar_quiver();
        let w = parse_string(&q, "1>2<3<4>5>6<2").unwrap();
        let r = string_to_representation::<Rational64>(&q, &w);
        assert_eq!(r.total_dim(), 7);
        assert_eq!(r.dims[q.vertex_by_label("2").unwrap().0], 2);
        assert!(r.satisfies_relations(&q).unwrap());
    }

    #[test]
    fn projective_dimension_counts_paths() {
        let q = corpus::qstar_quiver();
        for v in q.vertices() {
            let p = projective::<Rational64>(&q, v).unwrap();
            let tree = path_tree(&q, v, DEFAULT_PATH_BOUND).unwrap();
            assert_eq!(p.total_dim(), tree.ends.len());
            assert!(p.satisfies_relations(&q).unwrap());
        }
    }

    #[test]
    fn path_bound_is_enforced() {
        let q = corpus::qstar_quiver();
        let v = q.vertex_by_label("7").unwrap();
        assert_eq!(path_tree(&q, v, DEFAULT_PATH_BOUND).unwrap().ends.len(), 2);
        assert!(matches!(path_tree(&q, v, 1), Err(Error::PathBound { .. })));
    }
}
