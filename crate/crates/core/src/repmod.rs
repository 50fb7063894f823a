//! Right modules as quiver representations, and the maps between them.
//!
//! A module `M` stores one vector space `M e_i` per vertex (as a dimension) and
//! one matrix per arrow `a: i → j` of shape `dim M e_i × dim M e_j`, acting on
//! row vectors from the right. Homomorphisms store one matrix per vertex.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, MonomialAlgebra, Path};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};

#[derive(Clone)]
pub struct Representation {
    algebra: Arc<MonomialAlgebra>,
    dims: Vec<usize>,
    actions: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra)
            && self.dims == other.dims
            && self.actions == other.actions
    }
}

impl Eq for Representation {}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Representation{:?} over {}",
            self.dims,
            self.algebra.name()
        )
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dims {:?}", self.dims)?;
        for (a, m) in self.algebra.quiver().arrows().iter().zip(&self.actions) {
            writeln!(f, "{} ({} -> {}):", a.label, a.source + 1, a.target + 1)?;
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

impl Representation {
    /// Validates shapes and that every relation acts as zero.
    pub fn new(
        algebra: Arc<MonomialAlgebra>,
        dims: Vec<usize>,
        actions: Vec<Matrix>,
    ) -> Result<Self> {
        let rep = Representation {
            algebra,
            dims,
            actions,
        };
        rep.validate()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(
        algebra: Arc<MonomialAlgebra>,
        dims: Vec<usize>,
        actions: Vec<Matrix>,
    ) -> Self {
        let rep = Representation {
            algebra,
            dims,
            actions,
        };
        debug_assert_eq!(rep.validate(), Ok(()));
        rep
    }

    fn validate(&self) -> Result<()> {
        let q = self.algebra.quiver();
        let f = self.algebra.field();
        if self.dims.len() != q.vertex_count() {
            return Err(Error::Shape(format!(
                "{} dimensions for {} vertices",
                self.dims.len(),
                q.vertex_count()
            )));
        }
        if self.actions.len() != q.arrows().len() {
            return Err(Error::Shape(format!(
                "{} matrices for {} arrows",
                self.actions.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&self.actions) {
            let want = (self.dims[a.source], self.dims[a.target]);
            if m.shape() != want || m.field() != f {
                return Err(Error::Shape(format!(
                    "arrow {} needs a {}x{} matrix over {}, got {}x{} over {}",
                    a.label,
                    want.0,
                    want.1,
                    f,
                    m.rows(),
                    m.cols(),
                    m.field()
                )));
            }
        }
        for r in self.algebra.relations() {
            if !self.path_action(r).is_zero() {
                return Err(Error::RelationViolated {
                    relation: self.algebra.path_name(r),
                });
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<MonomialAlgebra>) -> Self {
        let n = algebra.vertex_count();
        let f = algebra.field();
        let actions = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(f, 0, 0))
            .collect();
        Representation::new_unchecked(algebra.clone(), vec![0; n], actions)
    }

    pub fn algebra(&self) -> &Arc<MonomialAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.actions[arrow]
    }

    /// The action of a path: the product of its arrow matrices, or the identity
    /// for a trivial path.
    pub fn path_action(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.field(), self.dims[p.source]);
        for &a in &p.arrows {
            acc = &acc * &self.actions[a];
        }
        acc
    }

    fn same_algebra(&self, other: &Representation) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// The same module viewed over an equal algebra handle.
    pub fn rebase(&self, algebra: &Arc<MonomialAlgebra>) -> Result<Self> {
        if !self.algebra.same_as(algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Representation {
            algebra: algebra.clone(),
            dims: self.dims.clone(),
            actions: self.actions.clone(),
        })
    }
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone)]
pub struct ModuleHom {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl PartialEq for ModuleHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.maps == other.maps
    }
}

impl fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModuleHom({:?} -> {:?}, {:?})",
            self.source.dims, self.target.dims, self.maps
        )
    }
}

impl ModuleHom {
    /// Validates shapes and the intertwining identity `F_i·N_a = M_a·F_j`.
    pub fn new(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self> {
        source.same_algebra(&target)?;
        let h = ModuleHom {
            source,
            target,
            maps,
        };
        h.validate()?;
        Ok(h)
    }

    pub(crate) fn new_unchecked(
        source: Representation,
        target: Representation,
        maps: Vec<Matrix>,
    ) -> Self {
        let h = ModuleHom {
            source,
            target,
            maps,
        };
        debug_assert_eq!(h.validate(), Ok(()));
        h
    }

    fn validate(&self) -> Result<()> {
        let n = self.source.algebra.vertex_count();
        if self.maps.len() != n {
            return Err(Error::Shape(format!(
                "{} vertex maps for {} vertices",
                self.maps.len(),
                n
            )));
        }
        for (v, m) in self.maps.iter().enumerate() {
            if m.shape() != (self.source.dims[v], self.target.dims[v]) {
                return Err(Error::Shape(format!(
                    "vertex {} map is {}x{}, expected {}x{}",
                    v + 1,
                    m.rows(),
                    m.cols(),
                    self.source.dims[v],
                    self.target.dims[v]
                )));
            }
        }
        for (k, a) in self.source.algebra.quiver().arrows().iter().enumerate() {
            let lhs = &self.maps[a.source] * &self.target.actions[k];
            let rhs = &self.source.actions[k] * &self.maps[a.target];
            if lhs != rhs {
                return Err(Error::NotIntertwining {
                    arrow: a.label.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn identity(m: &Representation) -> Self {
        let maps = m
            .dims
            .iter()
            .map(|&d| Matrix::identity(m.field(), d))
            .collect();
        ModuleHom::new_unchecked(m.clone(), m.clone(), maps)
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let f = source.field();
        let maps = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&a, &b)| Matrix::zeros(f, a, b))
            .collect();
        ModuleHom::new_unchecked(source.clone(), target.clone(), maps)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ModuleHom) -> ModuleHom {
        assert_eq!(
            self.target.dims, g.source.dims,
            "composition of incompatible maps"
        );
        let maps = self.maps.iter().zip(&g.maps).map(|(a, b)| a * b).collect();
        ModuleHom::new_unchecked(self.source.clone(), g.target.clone(), maps)
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a + b)
            .collect();
        ModuleHom::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn sub(&self, other: &ModuleHom) -> ModuleHom {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a - b)
            .collect();
        ModuleHom::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn scale(&self, c: u32) -> ModuleHom {
        let maps = self.maps.iter().map(|a| a.scale(c)).collect();
        ModuleHom::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<ModuleHom> {
        let maps = self
            .maps
            .iter()
            .map(Matrix::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(ModuleHom::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            maps,
        ))
    }

    /// For an endomorphism: the power `self^e`.
    pub fn pow(&self, e: u64) -> ModuleHom {
        let maps = self.maps.iter().map(|m| m.pow(e)).collect();
        ModuleHom::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    /// All vertex matrices concatenated in row-major order.
    pub fn to_vector(&self) -> Vec<u32> {
        self.maps
            .iter()
            .flat_map(|m| m.data().iter().copied())
            .collect()
    }

    /// Inverse of [`Self::to_vector`]. Does not check the intertwining identity.
    pub(crate) fn from_vector(source: &Representation, target: &Representation, v: &[u32]) -> Self {
        let f = source.field();
        let mut off = 0;
        let maps = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&a, &b)| {
                let m = Matrix::from_vec(f, a, b, v[off..off + a * b].to_vec());
                off += a * b;
                m
            })
            .collect();
        assert_eq!(off, v.len());
        ModuleHom::new_unchecked(source.clone(), target.clone(), maps)
    }
}

/// Number of scalar entries in a homomorphism `m → n`.
pub(crate) fn hom_vector_len(m: &Representation, n: &Representation) -> usize {
    m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum()
}

/// `Σ cᵢ·fᵢ` over a list of homomorphisms sharing source and target.
pub fn linear_combination(
    source: &Representation,
    target: &Representation,
    homs: &[ModuleHom],
    coeffs: &[u32],
) -> ModuleHom {
    let f = source.field();
    let mut acc = vec![0u32; hom_vector_len(source, target)];
    for (h, &c) in homs.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (a, v) in acc.iter_mut().zip(h.to_vector()) {
            *a = f.add(*a, f.mul(c, v));
        }
    }
    ModuleHom::from_vector(source, target, &acc)
}

/// The simple module `S_i`.
pub fn simple(algebra: &Arc<MonomialAlgebra>, i: usize) -> Result<Representation> {
    check_vertex(algebra, i)?;
    let mut dims = vec![0; algebra.vertex_count()];
    dims[i] = 1;
    Ok(zero_actions(algebra, dims))
}

fn zero_actions(algebra: &Arc<MonomialAlgebra>, dims: Vec<usize>) -> Representation {
    let f = algebra.field();
    let actions = algebra
        .quiver()
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(f, dims[a.source], dims[a.target]))
        .collect();
    Representation::new_unchecked(algebra.clone(), dims, actions)
}

fn check_vertex(algebra: &MonomialAlgebra, i: usize) -> Result<()> {
    if i >= algebra.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: i + 1,
            count: algebra.vertex_count(),
        });
    }
    Ok(())
}

/// The indecomposable projective `P_i = e_i A`: basis the paths starting at
/// `i`, graded by their target, with arrows acting by right multiplication.
pub fn projective(algebra: &Arc<MonomialAlgebra>, i: usize) -> Result<Representation> {
    check_vertex(algebra, i)?;
    let n = algebra.vertex_count();
    let f = algebra.field();
    let dims: Vec<usize> = (0..n).map(|k| algebra.paths_between(i, k).len()).collect();
    let actions = algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let mut m = Matrix::zeros(f, dims[arrow.source], dims[arrow.target]);
            for (r, &p) in algebra.paths_between(i, arrow.source).iter().enumerate() {
                let mut w = algebra.basis()[p].clone();
                w.arrows.push(a);
                w.target = arrow.target;
                if let Some(k) = algebra.basis_index(&w) {
                    m.set(r, algebra.local_position(k), 1);
                }
            }
            m
        })
        .collect();
    Ok(Representation::new_unchecked(
        algebra.clone(),
        dims,
        actions,
    ))
}

/// The indecomposable injective `I_i = D(A e_i)`.
pub fn injective(algebra: &Arc<MonomialAlgebra>, i: usize) -> Result<Representation> {
    let op = algebra.opposite();
    Ok(crate::homology::dual(&projective(&op, i)?))
}

/// The regular module `A_A`; vertex `j` holds the paths ending at `j`.
pub fn regular(algebra: &Arc<MonomialAlgebra>) -> Representation {
    let n = algebra.vertex_count();
    let f = algebra.field();
    let into: Vec<Vec<usize>> = (0..n).map(|j| algebra.paths_into(j)).collect();
    let mut pos = vec![0usize; algebra.dimension()];
    for list in &into {
        for (r, &k) in list.iter().enumerate() {
            pos[k] = r;
        }
    }
    let dims: Vec<usize> = into.iter().map(Vec::len).collect();
    let actions = algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let mut m = Matrix::zeros(f, dims[arrow.source], dims[arrow.target]);
            for (r, &k) in into[arrow.source].iter().enumerate() {
                let mut w = algebra.basis()[k].clone();
                w.arrows.push(a);
                w.target = arrow.target;
                if let Some(t) = algebra.basis_index(&w) {
                    m.set(r, pos[t], 1);
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(algebra.clone(), dims, actions)
}

/// Coordinates of `e·e_j` in the vertex-`j` space of [`regular`].
fn regular_coordinates(algebra: &MonomialAlgebra, e: &AlgebraElement, j: usize) -> Vec<u32> {
    algebra.paths_into(j).iter().map(|&k| e.coeff(k)).collect()
}

/// `A / Σ gᵢ·A` as a right module. An empty generator list gives `A_A`.
pub fn quotient_by_right_ideal(
    algebra: &Arc<MonomialAlgebra>,
    gens: &[AlgebraElement],
) -> Result<Representation> {
    let a = regular(algebra);
    let mut vectors = Vec::new();
    for g in gens {
        if !g.algebra().same_as(algebra) {
            return Err(Error::AlgebraMismatch);
        }
        for j in 0..algebra.vertex_count() {
            let v = regular_coordinates(algebra, g, j);
            if v.iter().any(|&c| c != 0) {
                vectors.push((j, v));
            }
        }
    }
    let (_, incl) = submodule_generated(&a, &vectors)?;
    Ok(cokernel(&incl).module)
}

/// The submodule spanned by the given subspaces, one basis matrix per vertex.
/// The subspaces must be closed under the arrow actions.
pub(crate) fn subrepresentation(
    m: &Representation,
    bases: Vec<Matrix>,
) -> (Representation, ModuleHom) {
    let f = m.field();
    let bases: Vec<Matrix> = bases.into_iter().map(|b| b.row_space()).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::rows).collect();
    let actions = m
        .algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let img = &bases[a.source] * &m.actions[k];
            bases[a.target]
                .solve_left(&img)
                .unwrap_or_else(|| Matrix::zeros(f, dims[a.source], dims[a.target]))
        })
        .collect();
    let sub = Representation::new_unchecked(m.algebra.clone(), dims, actions);
    let incl = ModuleHom::new_unchecked(sub.clone(), m.clone(), bases);
    (sub, incl)
}

/// A quotient module with its projection and a choice of representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: Representation,
    pub projection: ModuleHom,
    /// Per vertex, rows lifting the quotient basis back to the ambient module.
    pub lifts: Vec<Matrix>,
}

impl Quotient {
    /// The map induced on the quotient by `h`, which must vanish on the
    /// submodule that was factored out.
    pub fn factor(&self, h: &ModuleHom) -> ModuleHom {
        let maps = self
            .lifts
            .iter()
            .zip(h.maps())
            .map(|(l, m)| l * m)
            .collect();
        ModuleHom::new_unchecked(self.module.clone(), h.target().clone(), maps)
    }
}

/// `m / N` where `N` is given by closed per-vertex subspaces.
///
/// The quotient keeps the earliest basis vectors of `m`: pivots of the
/// subspace are taken on the last possible coordinates.
pub(crate) fn quotient(m: &Representation, sub: &[Matrix]) -> Quotient {
    let f = m.field();
    let mut proj = Vec::new();
    let mut lifts = Vec::new();
    let mut dims = Vec::new();
    for (v, s) in sub.iter().enumerate() {
        let n = m.dims[v];
        let rev: Vec<usize> = (0..n).rev().collect();
        let r = s.select_cols(&rev).rref();
        let pivots: Vec<usize> = r.pivots.iter().map(|&c| n - 1 - c).collect();
        let keep: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let q = keep.len();
        let mut p = Matrix::zeros(f, n, q);
        for (t, &c) in keep.iter().enumerate() {
            p.set(c, t, 1);
        }
        for (row, &pc) in pivots.iter().enumerate() {
            // e_pc ≡ e_pc − (row) which only involves kept coordinates
            for (t, &c) in keep.iter().enumerate() {
                let val = r.matrix.get(row, n - 1 - c);
                p.set(pc, t, f.neg(val));
            }
        }
        let mut l = Matrix::zeros(f, q, n);
        for (t, &c) in keep.iter().enumerate() {
            l.set(t, c, 1);
        }
        dims.push(q);
        proj.push(p);
        lifts.push(l);
    }
    let actions = m
        .algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| &(&lifts[a.source] * &m.actions[k]) * &proj[a.target])
        .collect();
    let module = Representation::new_unchecked(m.algebra.clone(), dims, actions);
    let projection = ModuleHom::new_unchecked(m.clone(), module.clone(), proj);
    Quotient {
        module,
        projection,
        lifts,
    }
}

/// The smallest submodule containing the given `(vertex, vector)` pairs.
pub fn submodule_generated(
    m: &Representation,
    vectors: &[(usize, Vec<u32>)],
) -> Result<(Representation, ModuleHom)> {
    let f = m.field();
    let n = m.algebra.vertex_count();
    let mut bases: Vec<Matrix> = m.dims.iter().map(|&d| Matrix::zeros(f, 0, d)).collect();
    let mut queue: Vec<(usize, Vec<u32>)> = Vec::new();
    for (v, vec) in vectors {
        check_vertex(&m.algebra, *v)?;
        if vec.len() != m.dims[*v] {
            return Err(Error::Shape(format!(
                "vector of length {} at vertex {} of dimension {}",
                vec.len(),
                v + 1,
                m.dims[*v]
            )));
        }
        let p = f.modulus();
        queue.push((*v, vec.iter().map(|c| c % p).collect()));
    }
    while let Some((v, vec)) = queue.pop() {
        if vec.iter().all(|&c| c == 0) {
            continue;
        }
        let row = Matrix::row_vector(f, &vec);
        if bases[v].spans(&row) {
            continue;
        }
        bases[v] = Matrix::vstack(f, m.dims[v], &[&bases[v], &row]);
        for a in m.algebra.quiver().arrows_from(v) {
            let t = m.algebra.quiver().arrow(a).target;
            queue.push((t, m.actions[a].apply(&vec)));
        }
    }
    debug_assert_eq!(bases.len(), n);
    Ok(subrepresentation(m, bases))
}

/// `rad M`: the sum of the images of all arrow actions.
pub fn radical(m: &Representation) -> (Representation, ModuleHom) {
    subrepresentation(m, radical_bases(m))
}

fn radical_bases(m: &Representation) -> Vec<Matrix> {
    let f = m.field();
    let q = m.algebra.quiver();
    (0..q.vertex_count())
        .map(|j| {
            let parts: Vec<&Matrix> = q.arrows_into(j).map(|a| &m.actions[a]).collect();
            Matrix::vstack(f, m.dims[j], &parts).row_space()
        })
        .collect()
}

/// `soc M`: the common kernel of all arrow actions.
pub fn socle(m: &Representation) -> (Representation, ModuleHom) {
    let f = m.field();
    let q = m.algebra.quiver();
    let bases = (0..q.vertex_count())
        .map(|i| {
            let parts: Vec<&Matrix> = q.arrows_from(i).map(|a| &m.actions[a]).collect();
            Matrix::hstack(f, m.dims[i], &parts).kernel_basis()
        })
        .collect();
    subrepresentation(m, bases)
}

/// `top M = M / rad M`.
pub fn top(m: &Representation) -> Quotient {
    quotient(m, &radical_bases(m))
}

/// A basis of `Hom_A(m, n)`, the solution space of the intertwining equations.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<ModuleHom>> {
    m.same_algebra(n)?;
    let f = m.field();
    let q = m.algebra.quiver();
    let nv = q.vertex_count();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + m.dims[v] * n.dims[v];
    }
    let unknowns = offset[nv];
    let mut eq_off = Vec::with_capacity(q.arrows().len());
    let mut equations = 0;
    for a in q.arrows() {
        eq_off.push(equations);
        equations += m.dims[a.source] * n.dims[a.target];
    }
    let mut sys = Matrix::zeros(f, unknowns, equations);
    for (k, a) in q.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (mi, ni, mj, nj) = (m.dims[i], n.dims[i], m.dims[j], n.dims[j]);
        let na = &n.actions[k];
        let ma = &m.actions[k];
        let base = eq_off[k];
        // equation (r, c') of arrow k: (F_i N_a - M_a F_j)[r][c'] = 0
        for r in 0..mi {
            for c in 0..ni {
                let u = offset[i] + r * ni + c;
                for c2 in 0..nj {
                    let val = na.get(c, c2);
                    if val != 0 {
                        let e = base + r * nj + c2;
                        sys.set(u, e, f.add(sys.get(u, e), val));
                    }
                }
            }
        }
        for r in 0..mj {
            for c in 0..nj {
                let u = offset[j] + r * nj + c;
                for r2 in 0..mi {
                    let val = ma.get(r2, r);
                    if val != 0 {
                        let e = base + r2 * nj + c;
                        sys.set(u, e, f.sub(sys.get(u, e), val));
                    }
                }
            }
        }
    }
    let ker = sys.kernel_basis();
    Ok((0..ker.rows())
        .map(|r| ModuleHom::from_vector(m, n, ker.row(r)))
        .collect())
}

/// The kernel of `f` with its inclusion into the source.
pub fn kernel(f: &ModuleHom) -> (Representation, ModuleHom) {
    let bases = f.maps.iter().map(Matrix::kernel_basis).collect();
    subrepresentation(&f.source, bases)
}

/// The image of `f` with its inclusion into the target.
pub fn image(f: &ModuleHom) -> (Representation, ModuleHom) {
    let bases = f.maps.iter().map(Matrix::row_space).collect();
    subrepresentation(&f.target, bases)
}

/// The cokernel of `f` with its projection from the target.
pub fn cokernel(f: &ModuleHom) -> Quotient {
    let bases: Vec<Matrix> = f.maps.iter().map(Matrix::row_space).collect();
    quotient(&f.target, &bases)
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Representation,
    pub inclusions: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

/// Block-diagonal direct sum. Summand `k` occupies the `k`-th block at every vertex.
pub fn direct_sum(algebra: &Arc<MonomialAlgebra>, parts: &[Representation]) -> Result<DirectSum> {
    for p in parts {
        if !p.algebra.same_as(algebra) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let f = algebra.field();
    let n = algebra.vertex_count();
    let dims: Vec<usize> = (0..n)
        .map(|v| parts.iter().map(|p| p.dims[v]).sum())
        .collect();
    let actions = (0..algebra.quiver().arrows().len())
        .map(|k| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.actions[k]).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    let module = Representation::new_unchecked(algebra.clone(), dims.clone(), actions);
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut off = vec![0usize; n];
    for p in parts {
        let mut inc = Vec::new();
        let mut pro = Vec::new();
        for v in 0..n {
            let mut a = Matrix::zeros(f, p.dims[v], dims[v]);
            let mut b = Matrix::zeros(f, dims[v], p.dims[v]);
            for t in 0..p.dims[v] {
                a.set(t, off[v] + t, 1);
                b.set(off[v] + t, t, 1);
            }
            inc.push(a);
            pro.push(b);
            off[v] += p.dims[v];
        }
        inclusions.push(ModuleHom::new_unchecked(p.clone(), module.clone(), inc));
        projections.push(ModuleHom::new_unchecked(module.clone(), p.clone(), pro));
    }
    Ok(DirectSum {
        module,
        inclusions,
        projections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn alg() -> Arc<MonomialAlgebra> {
        catalog::counterexample_algebra(PrimeField::new(3).unwrap())
    }

    fn elem(a: &Arc<MonomialAlgebra>, words: &[&[&str]]) -> AlgebraElement {
        let terms: Vec<(i64, Path)> = words
            .iter()
            .map(|w| (1, a.quiver().path_from_labels(w).unwrap()))
            .collect();
        AlgebraElement::from_terms(a, &terms)
    }

    #[test]
    fn projective_dimension_vectors() {
        let a = alg();
        assert_eq!(projective(&a, 0).unwrap().dims(), &[3, 1]);
        assert_eq!(projective(&a, 1).unwrap().dims(), &[1, 2]);
        assert_eq!(injective(&a, 0).unwrap().dims(), &[3, 1]);
        assert!(projective(&a, 2).is_err());
    }

    #[test]
    fn quotients_by_right_ideals() {
        let a = alg();
        let m1 = quotient_by_right_ideal(&a, &[elem(&a, &[&["x"], &["z"]])]).unwrap();
        assert_eq!(m1.dims(), &[2, 2]);
        let u = quotient_by_right_ideal(&a, &[elem(&a, &[&["x"], &["y"], &["z"]])]).unwrap();
        assert_eq!(u.dims(), &[2, 1]);
        let whole = quotient_by_right_ideal(&a, &[]).unwrap();
        assert_eq!(whole.dims(), &[4, 3]);
        assert_eq!(whole, regular(&a));
    }

    #[test]
    fn socle_of_second_projective() {
        let a = alg();
        let p2 = projective(&a, 1).unwrap();
        // basis of P2 at vertex 2 is (e2, zy); zy spans the socle
        let (s, incl) = submodule_generated(&p2, &[(1, vec![0, 1])]).unwrap();
        assert_eq!(s.dims(), &[0, 1]);
        assert!(incl.is_injective());
        let (soc, _) = socle(&p2);
        assert_eq!(soc.dims(), &[0, 1]);
        let m2 = cokernel(&incl).module;
        assert_eq!(m2.dims(), &[1, 1]);
    }

    #[test]
    fn submodule_generated_edge_cases() {
        let a = alg();
        let p1 = projective(&a, 0).unwrap();
        let (all, incl) = submodule_generated(&p1, &[(0, vec![1, 0, 0])]).unwrap();
        assert_eq!(all.dims(), p1.dims());
        assert!(incl.is_isomorphism());
        let (zero, _) = submodule_generated(&p1, &[(0, vec![0, 0, 0])]).unwrap();
        assert!(zero.is_zero());
        assert!(submodule_generated(&p1, &[(0, vec![1])]).is_err());
    }

    #[test]
    fn radical_socle_top() {
        let a = alg();
        let p2 = projective(&a, 1).unwrap();
        assert_eq!(radical(&p2).0.dims(), &[1, 1]);
        let p1 = projective(&a, 0).unwrap();
        let (soc, incl) = socle(&p1);
        assert_eq!(soc.dims(), &[1, 1]);
        assert_eq!(cokernel(&incl).module.dims(), &[2, 0]);
        let s1 = simple(&a, 0).unwrap();
        assert_eq!(top(&s1).module, s1);
        assert!(radical(&s1).0.is_zero());
    }

    #[test]
    fn hom_dimensions() {
        let a = alg();
        let p1 = projective(&a, 0).unwrap();
        assert_eq!(hom_basis(&p1, &p1).unwrap().len(), 3);
        let s1 = simple(&a, 0).unwrap();
        let s2 = simple(&a, 1).unwrap();
        assert!(hom_basis(&s1, &s2).unwrap().is_empty());
        assert_eq!(hom_basis(&s1, &s1).unwrap().len(), 1);
        for h in hom_basis(&p1, &regular(&a)).unwrap() {
            assert!(
                ModuleHom::new(h.source().clone(), h.target().clone(), h.maps().to_vec()).is_ok()
            );
        }
    }

    #[test]
    fn identity_kernel_and_cokernel_vanish() {
        let a = alg();
        let p1 = projective(&a, 0).unwrap();
        let id = ModuleHom::identity(&p1);
        assert!(kernel(&id).0.is_zero());
        assert!(cokernel(&id).module.is_zero());
        assert_eq!(image(&id).0.dims(), p1.dims());
    }

    #[test]
    fn direct_sums() {
        let a = alg();
        let s1 = simple(&a, 0).unwrap();
        let s2 = simple(&a, 1).unwrap();
        let ds = direct_sum(&a, &[s1.clone(), s2]).unwrap();
        assert_eq!(ds.module.dims(), &[1, 1]);
        let empty = direct_sum(&a, &[]).unwrap();
        assert!(empty.module.is_zero());
        let id = ds.inclusions[0].then(&ds.projections[0]);
        assert_eq!(id, ModuleHom::identity(&s1));
        assert!(ds.inclusions[0].then(&ds.projections[1]).is_zero());
    }

    #[test]
    fn invalid_representations_are_rejected() {
        let a = alg();
        let f = a.field();
        // y nonzero on the image of x breaks the relation xy
        let x = Matrix::from_rows(f, 2, &[vec![0, 1], vec![0, 0]]).unwrap();
        let y = Matrix::from_rows(f, 1, &[vec![0], vec![1]]).unwrap();
        let z = Matrix::zeros(f, 1, 2);
        let err = Representation::new(a.clone(), vec![2, 1], vec![x, y, z]).unwrap_err();
        assert_eq!(
            err,
            Error::RelationViolated {
                relation: "x*y".into()
            }
        );
        let bad_shape = Representation::new(a, vec![2, 1], vec![Matrix::zeros(f, 1, 1); 3]);
        assert!(matches!(bad_shape, Err(Error::Shape(_))));
    }

    #[test]
    fn non_intertwining_map_is_rejected() {
        let a = alg();
        let p2 = projective(&a, 1).unwrap();
        let s2 = simple(&a, 1).unwrap();
        let f = a.field();
        // sending the socle vector zy to S2 but killing e2 is not a module map
        let maps = vec![
            Matrix::zeros(f, 1, 0),
            Matrix::from_rows(f, 1, &[vec![0], vec![1]]).unwrap(),
        ];
        assert!(matches!(
            ModuleHom::new(p2, s2, maps),
            Err(Error::NotIntertwining { .. })
        ));
    }
}
