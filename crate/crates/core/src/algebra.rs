//! Quivers, paths and finite-dimensional monomial path algebras `KQ/I`.
//!
//! Paths compose left to right: the word `xy` is "x, then y", so the target of
//! `x` must be the source of `y`. Vertices are 0-based in the API and 1-based
//! in every textual form.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};

/// Default cap on the number of basis paths before an algebra is declared
/// infinite dimensional.
pub const DEFAULT_BASIS_BOUND: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver(
                "a quiver needs at least one vertex".into(),
            ));
        }
        for (k, a) in arrows.iter().enumerate() {
            if a.label.is_empty() {
                return Err(Error::InvalidQuiver("empty arrow label".into()));
            }
            if arrows[..k].iter().any(|b| b.label == a.label) {
                return Err(Error::InvalidQuiver(format!(
                    "duplicate arrow label `{}`",
                    a.label
                )));
            }
            for v in [a.source, a.target] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v + 1,
                        count: vertex_count,
                    });
                }
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    /// Convenience constructor from `(label, source, target)` triples with 0-based vertices.
    pub fn from_triples(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        Self::new(
            vertex_count,
            arrows
                .iter()
                .map(|&(l, s, t)| Arrow {
                    label: l.to_string(),
                    source: s,
                    target: t,
                })
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, index: usize) -> &Arrow {
        &self.arrows[index]
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Same vertices and labels, every arrow reversed. Arrow indices are preserved.
    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    label: a.label.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// The path along the given arrows. Fails if the word is empty or does not compose.
    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::InvalidRelation("empty word".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::InvalidRelation(format!(
                    "`{}` cannot be followed by `{}`",
                    self.arrows[w[0]].label, self.arrows[w[1]].label
                )));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    /// The path spelled by arrow labels, e.g. `["x", "y"]`.
    pub fn path_from_labels(&self, labels: &[&str]) -> Result<Path> {
        let idx = labels
            .iter()
            .map(|l| {
                self.arrow_index(l)
                    .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.path(&idx)
    }

    /// Compact label form: `e1` for trivial paths, `x^2*y` otherwise.
    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", p.source + 1);
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < p.arrows.len() {
            let a = p.arrows[i];
            let mut run = 1;
            while i + run < p.arrows.len() && p.arrows[i + run] == a {
                run += 1;
            }
            let label = &self.arrows[a].label;
            parts.push(if run > 1 {
                format!("{label}^{run}")
            } else {
                label.clone()
            });
            i += run;
        }
        parts.join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    /// Arrow indices in order of traversal; empty for a trivial path.
    pub arrows: Vec<usize>,
}

#[allow(clippy::len_without_is_empty)]
impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

    /// Concatenation `self` then `other`, if composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    fn contains_word(&self, word: &[usize]) -> bool {
        !word.is_empty() && self.arrows.windows(word.len()).any(|w| w == word)
    }
}

/// A finite-dimensional quotient `KQ/I` of a path algebra by monomial relations.
///
/// The basis consists of all paths avoiding every relation as a consecutive
/// subword, ordered by length, then lexicographically by arrow labels, with the
/// trivial paths first.
pub struct MonomialAlgebra {
    name: String,
    quiver: Quiver,
    relations: Vec<Path>,
    field: PrimeField,
    basis: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    /// Basis indices of paths `i → j`, in basis order.
    between: Vec<Vec<Vec<usize>>>,
    /// Position of each basis path among the basis paths with the same source and target.
    local_pos: Vec<usize>,
    opposite_of: Option<Weak<MonomialAlgebra>>,
    opposite: OnceLock<Arc<MonomialAlgebra>>,
}

impl fmt::Debug for MonomialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonomialAlgebra")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("vertices", &self.quiver.vertex_count)
            .field("dimension", &self.basis.len())
            .finish()
    }
}

impl PartialEq for MonomialAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.relations == other.relations
    }
}

impl Eq for MonomialAlgebra {}

impl MonomialAlgebra {
    pub fn new(
        name: impl Into<String>,
        quiver: Quiver,
        relations: Vec<Path>,
        field: PrimeField,
    ) -> Result<Arc<Self>> {
        Self::with_bound(name, quiver, relations, field, DEFAULT_BASIS_BOUND)
    }

    /// Build the algebra, failing with [`Error::InfiniteDimensional`] once more
    /// than `bound` basis paths have been generated.
    pub fn with_bound(
        name: impl Into<String>,
        quiver: Quiver,
        relations: Vec<Path>,
        field: PrimeField,
        bound: usize,
    ) -> Result<Arc<Self>> {
        for r in &relations {
            if r.len() < 2 {
                return Err(Error::InvalidRelation(format!(
                    "relation `{}` has length {} (< 2)",
                    quiver.path_name(r),
                    r.len()
                )));
            }
            // revalidate composability, callers may hand-build paths
            let p = quiver.path(&r.arrows)?;
            if p != *r {
                return Err(Error::InvalidRelation(format!(
                    "relation `{}` has inconsistent endpoints",
                    quiver.path_name(r)
                )));
            }
        }
        let mut rels: Vec<Path> = Vec::new();
        for r in relations {
            if !rels.contains(&r) {
                rels.push(r);
            }
        }
        Ok(Arc::new(Self::assemble(
            name.into(),
            quiver,
            rels,
            field,
            bound,
            None,
        )?))
    }

    fn assemble(
        name: String,
        quiver: Quiver,
        relations: Vec<Path>,
        field: PrimeField,
        bound: usize,
        opposite_of: Option<Weak<MonomialAlgebra>>,
    ) -> Result<Self> {
        let basis = compute_basis(&quiver, &relations, bound)?;
        let n = quiver.vertex_count();
        let mut index = HashMap::with_capacity(basis.len());
        let mut between = vec![vec![Vec::new(); n]; n];
        let mut local_pos = Vec::with_capacity(basis.len());
        for (k, p) in basis.iter().enumerate() {
            index.insert((p.source, p.arrows.clone()), k);
            let list: &mut Vec<usize> = &mut between[p.source][p.target];
            local_pos.push(list.len());
            list.push(k);
        }
        Ok(MonomialAlgebra {
            name,
            quiver,
            relations,
            field,
            basis,
            index,
            between,
            local_pos,
            opposite_of,
            opposite: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn path_name(&self, p: &Path) -> String {
        self.quiver.path_name(p)
    }

    pub fn basis_names(&self) -> Vec<String> {
        self.basis.iter().map(|p| self.path_name(p)).collect()
    }

    /// Index of a path in the basis; `None` if it contains a relation.
    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(&(p.source, p.arrows.clone())).copied()
    }

    /// Basis indices of the paths from `i` to `j`.
    pub fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        &self.between[i][j]
    }

    /// Position of basis path `k` within [`Self::paths_between`] of its endpoints.
    pub fn local_position(&self, k: usize) -> usize {
        self.local_pos[k]
    }

    /// Basis indices of all paths starting at `i`.
    pub fn paths_from(&self, i: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&k| self.basis[k].source == i)
            .collect()
    }

    /// Basis indices of all paths ending at `j`.
    pub fn paths_into(&self, j: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&k| self.basis[k].target == j)
            .collect()
    }

    /// Product of two paths: their concatenation when composable and relation free.
    pub fn multiply(&self, p: &Path, q: &Path) -> Option<Path> {
        let c = p.concat(q)?;
        self.basis_index(&c).map(|_| c)
    }

    pub fn multiply_basis(&self, i: usize, j: usize) -> Option<usize> {
        let (p, q) = (&self.basis[i], &self.basis[j]);
        if p.target != q.source {
            return None;
        }
        if p.is_trivial() {
            return Some(j);
        }
        if q.is_trivial() {
            return Some(i);
        }
        let mut w = p.arrows.clone();
        w.extend_from_slice(&q.arrows);
        self.index.get(&(p.source, w)).copied()
    }

    /// `A^op`: reversed arrows and reversed relation words over the same field.
    ///
    /// The result is cached, and the opposite of the opposite is this algebra
    /// again (as long as it is alive).
    pub fn opposite(self: &Arc<Self>) -> Arc<Self> {
        if let Some(orig) = self.opposite_of.as_ref().and_then(Weak::upgrade) {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let name = match self.name.strip_suffix("^op") {
                    Some(base) => base.to_string(),
                    None => format!("{}^op", self.name),
                };
                let op = Self::assemble(
                    name,
                    self.quiver.reversed(),
                    self.relations.iter().map(Path::reversed).collect(),
                    self.field,
                    usize::MAX,
                    Some(Arc::downgrade(self)),
                )
                .expect("opposite of a finite-dimensional algebra is finite dimensional");
                Arc::new(op)
            })
            .clone()
    }

    /// True when both handles denote the same algebra.
    pub fn same_as(&self, other: &MonomialAlgebra) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    /// The same quiver and relations over a different prime field.
    pub fn over_field(&self, field: PrimeField) -> Result<Arc<Self>> {
        Self::new(
            self.name.clone(),
            self.quiver.clone(),
            self.relations.clone(),
            field,
        )
    }

    /// Basis of the right ideal `Σ gᵢ·A`, in reduced echelon form over the path basis.
    pub fn right_ideal_basis(self: &Arc<Self>, gens: &[AlgebraElement]) -> Vec<AlgebraElement> {
        let d = self.dimension();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for g in gens {
            for b in 0..d {
                let prod = g.mul_basis(b);
                if !prod.is_zero() {
                    rows.push(prod.coeffs);
                }
            }
        }
        let data: Vec<u32> = rows.concat();
        let m = Matrix::from_vec(self.field, rows.len(), d, data).row_space();
        (0..m.rows())
            .map(|i| AlgebraElement {
                algebra: self.clone(),
                coeffs: m.row(i).to_vec(),
            })
            .collect()
    }
}

fn compute_basis(q: &Quiver, rels: &[Path], bound: usize) -> Result<Vec<Path>> {
    let label_key =
        |p: &Path| -> Vec<String> { p.arrows.iter().map(|&a| q.arrow(a).label.clone()).collect() };
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    if all.len() > bound {
        return Err(Error::InfiniteDimensional { bound });
    }
    // Extending a relation-free path depends only on its last `l - 1` arrows.
    // A relation-free path of length `l - 1 + s`, with `s` such suffix states,
    // repeats a state and can be pumped, so the algebra is infinite.
    let l = rels.iter().map(Path::len).max().unwrap_or(1);
    let mut states: Option<usize> = None;
    let mut depth = 0;
    let mut layer = all.clone();
    while !layer.is_empty() {
        if depth == l - 1 {
            states = Some(layer.len());
        }
        if states.is_some_and(|s| depth >= l - 1 + s) {
            return Err(Error::InfiniteDimensional { bound });
        }
        depth += 1;
        let mut next = Vec::new();
        for p in &layer {
            for a in q.arrows_from(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                // p itself is relation free, so only suffixes can match
                if rels.iter().any(|r| arrows.ends_with(&r.arrows)) {
                    continue;
                }
                next.push(Path {
                    source: p.source,
                    target: q.arrow(a).target,
                    arrows,
                });
                if all.len() + next.len() > bound {
                    return Err(Error::InfiniteDimensional { bound });
                }
            }
        }
        next.sort_by_cached_key(label_key);
        all.extend(next.iter().cloned());
        layer = next;
    }
    debug_assert!(all
        .iter()
        .all(|p| rels.iter().all(|r| !p.contains_word(&r.arrows))));
    Ok(all)
}

/// An element of a monomial algebra, stored densely over the path basis.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Arc<MonomialAlgebra>,
    coeffs: Vec<u32>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(algebra: &Arc<MonomialAlgebra>) -> Self {
        AlgebraElement {
            algebra: algebra.clone(),
            coeffs: vec![0; algebra.dimension()],
        }
    }

    pub fn basis_element(algebra: &Arc<MonomialAlgebra>, k: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[k] = 1;
        e
    }

    /// A path as an element; zero if the path contains a relation.
    pub fn from_path(algebra: &Arc<MonomialAlgebra>, p: &Path) -> Self {
        match algebra.basis_index(p) {
            Some(k) => Self::basis_element(algebra, k),
            None => Self::zero(algebra),
        }
    }

    /// `Σ cᵢ·pᵢ` with integer coefficients reduced into the field.
    pub fn from_terms(algebra: &Arc<MonomialAlgebra>, terms: &[(i64, Path)]) -> Self {
        let f = algebra.field();
        let mut e = Self::zero(algebra);
        for (c, p) in terms {
            if let Some(k) = algebra.basis_index(p) {
                e.coeffs[k] = f.add(e.coeffs[k], f.reduce(*c));
            }
        }
        e
    }

    pub fn from_coeffs(algebra: &Arc<MonomialAlgebra>, coeffs: Vec<u32>) -> Self {
        assert_eq!(coeffs.len(), algebra.dimension());
        let p = algebra.field().modulus();
        AlgebraElement {
            algebra: algebra.clone(),
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        }
    }

    pub fn algebra(&self) -> &Arc<MonomialAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.algebra.field();
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.algebra.field();
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self · b` for the basis path with index `b`.
    pub fn mul_basis(&self, b: usize) -> Self {
        let f = self.algebra.field();
        let mut out = Self::zero(&self.algebra);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if let Some(t) = self.algebra.multiply_basis(k, b) {
                out.coeffs[t] = f.add(out.coeffs[t], c);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.algebra.field();
        let mut out = Self::zero(&self.algebra);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (l, &d) in other.coeffs.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                if let Some(t) = self.algebra.multiply_basis(k, l) {
                    out.coeffs[t] = f.add(out.coeffs[t], f.mul(c, d));
                }
            }
        }
        out
    }

    /// The component `self·e_j` made of the paths ending at `j`.
    pub fn times_idempotent(&self, j: usize) -> Self {
        let mut out = self.clone();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            if self.algebra.basis()[k].target != j {
                *c = 0;
            }
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.algebra.field();
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let s = field.signed(c);
            let name = self.algebra.path_name(&self.algebra.basis()[k]);
            let (sign, mag) = if s < 0 { ("-", -s) } else { ("+", s) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn gf3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    fn el(a: &Arc<MonomialAlgebra>, terms: &[(i64, &[&str])]) -> AlgebraElement {
        let terms: Vec<(i64, Path)> = terms
            .iter()
            .map(|(c, w)| (*c, a.quiver().path_from_labels(w).unwrap()))
            .collect();
        AlgebraElement::from_terms(a, &terms)
    }

    #[test]
    fn counterexample_algebra_has_seven_basis_paths() {
        let a = catalog::counterexample_algebra(gf3());
        assert_eq!(a.dimension(), 7);
        assert_eq!(a.basis_names(), ["e1", "e2", "x", "y", "z", "x^2", "z*y"]);
    }

    #[test]
    fn truncated_loop() {
        let a = catalog::truncated_loop(gf3(), 2);
        assert_eq!(a.basis_names(), ["e1", "a"]);
    }

    #[test]
    fn dropping_cube_relation_is_infinite() {
        let q = catalog::counterexample_quiver();
        let rels = ["x y", "y z", "z x"]
            .iter()
            .map(|w| {
                q.path_from_labels(&w.split(' ').collect::<Vec<_>>())
                    .unwrap()
            })
            .collect();
        let err = MonomialAlgebra::with_bound("A", q, rels, gf3(), 10_000).unwrap_err();
        assert_eq!(err, Error::InfiniteDimensional { bound: 10_000 });
    }

    #[test]
    fn cycles_are_detected_without_enumerating_the_bound() {
        let q = Quiver::from_triples(1, &[("a", 0, 0)]).unwrap();
        let err = MonomialAlgebra::new("A", q, Vec::new(), gf3()).unwrap_err();
        assert!(matches!(err, Error::InfiniteDimensional { .. }));

        let q = Quiver::from_triples(2, &[("a", 0, 1), ("b", 1, 0)]).unwrap();
        let aba = q.path_from_labels(&["a", "b", "a"]).unwrap();
        let a = MonomialAlgebra::new("A", q.clone(), vec![aba], gf3()).unwrap();
        assert_eq!(
            a.basis_names(),
            ["e1", "e2", "a", "b", "a*b", "b*a", "b*a*b"]
        );
        let abab = q.path_from_labels(&["a", "b", "a", "b"]).unwrap();
        assert!(MonomialAlgebra::new("A", q, vec![abab], gf3()).is_ok());
    }

    #[test]
    fn rejects_bad_relations() {
        let q = catalog::counterexample_quiver();
        let x = q.arrow_index("x").unwrap();
        let z = q.arrow_index("z").unwrap();
        assert!(q.path(&[x, z]).is_err());
        let short = Path {
            source: 0,
            target: 0,
            arrows: vec![x],
        };
        assert!(matches!(
            MonomialAlgebra::new("A", q, vec![short], gf3()),
            Err(Error::InvalidRelation(_))
        ));
    }

    #[test]
    fn multiplication_follows_relations() {
        let a = catalog::counterexample_algebra(gf3());
        let q = a.quiver();
        let p = |w: &[&str]| q.path_from_labels(w).unwrap();
        assert_eq!(a.multiply(&Path::trivial(0), &p(&["x"])), Some(p(&["x"])));
        assert_eq!(a.multiply(&p(&["x"]), &p(&["y"])), None);
        assert_eq!(a.multiply(&p(&["z"]), &p(&["y"])), Some(p(&["z", "y"])));
        assert_eq!(a.multiply(&p(&["y"]), &p(&["y"])), None);
    }

    #[test]
    fn multiplication_is_associative_and_graded() {
        let a = catalog::counterexample_algebra(gf3());
        let d = a.dimension();
        for i in 0..d {
            for j in 0..d {
                if let Some(ij) = a.multiply_basis(i, j) {
                    let (bi, bj, bij) = (&a.basis()[i], &a.basis()[j], &a.basis()[ij]);
                    assert_eq!(bij.len(), bi.len() + bj.len());
                    assert_eq!((bij.source, bij.target), (bi.source, bj.target));
                }
                for k in 0..d {
                    let left = a
                        .multiply_basis(i, j)
                        .and_then(|ij| a.multiply_basis(ij, k));
                    let right = a
                        .multiply_basis(j, k)
                        .and_then(|jk| a.multiply_basis(i, jk));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn opposite_reverses_everything() {
        let a = catalog::counterexample_algebra(gf3());
        let op = a.opposite();
        assert_eq!(op.dimension(), 7);
        let q = op.quiver();
        let y = q.arrow(q.arrow_index("y").unwrap());
        assert_eq!((y.source, y.target), (1, 0));
        let z = q.arrow(q.arrow_index("z").unwrap());
        assert_eq!((z.source, z.target), (0, 1));
        let words: Vec<String> = op.relations().iter().map(|r| op.path_name(r)).collect();
        assert_eq!(words, ["y*x", "z*y", "x*z", "x^3"]);
        let back = op.opposite();
        assert!(Arc::ptr_eq(&back, &a));
        assert_eq!(back.basis(), a.basis());
    }

    #[test]
    fn opposite_survives_dropped_original() {
        let op = catalog::counterexample_algebra(gf3()).opposite();
        let back = op.opposite();
        assert_eq!(
            back.basis_names(),
            ["e1", "e2", "x", "y", "z", "x^2", "z*y"]
        );
        assert!(Arc::ptr_eq(&back.opposite(), &op));
    }

    #[test]
    fn truncated_loop_is_self_opposite() {
        let a = catalog::truncated_loop(gf3(), 2);
        let op = a.opposite();
        assert_eq!(op.quiver(), a.quiver());
        assert_eq!(op.relations(), a.relations());
    }

    #[test]
    fn right_ideal_of_x_plus_z() {
        let a = catalog::counterexample_algebra(gf3());
        let g = el(&a, &[(1, &["x"]), (1, &["z"])]);
        let basis = a.right_ideal_basis(&[g]);
        let shown: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, ["x + z", "x^2", "z*y"]);
    }

    #[test]
    fn right_ideal_of_idempotent_is_projective() {
        let a = catalog::counterexample_algebra(gf3());
        let e1 = AlgebraElement::from_path(&a, &Path::trivial(0));
        let basis = a.right_ideal_basis(&[e1]);
        let shown: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, ["e1", "x", "y", "x^2"]);
    }

    #[test]
    fn right_ideal_of_x_plus_y_plus_z() {
        let a = catalog::counterexample_algebra(gf3());
        let g = el(&a, &[(1, &["x"]), (1, &["y"]), (1, &["z"])]);
        assert_eq!(a.right_ideal_basis(&[g]).len(), 4);
    }

    #[test]
    fn element_arithmetic_and_display() {
        let a = catalog::counterexample_algebra(gf3());
        let g = el(&a, &[(1, &["x"]), (-1, &["z"])]);
        assert_eq!(g.to_string(), "x - z");
        let sq = g.mul(&g);
        // (x - z)^2 = x^2 - xz - zx + z^2 = x^2 (xz, z^2 do not compose; zx = 0)
        assert_eq!(sq.to_string(), "x^2");
        assert_eq!(g.times_idempotent(1).to_string(), "0");
        assert_eq!(g.scale(2).add(&g).to_string(), "0");
    }
}
