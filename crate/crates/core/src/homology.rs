//! Projective covers, syzygies, the duality `D`, the transpose `Tr`, the
//! Auslander-Reiten translates and `Ext¹` with explicit extensions.
//!
//! Everything is computed from minimal projective presentations. Left
//! `A`-modules never appear directly: `Hom_A(-, A)` and `D` both land in right
//! modules over the opposite algebra.

use std::sync::Arc;

use crate::algebra::MonomialAlgebra;
use crate::decomp::{self, Decomposition, SearchConfig};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::repmod::{
    self, direct_sum, hom_basis, linear_combination, projective, DirectSum, ModuleHom,
    Representation,
};

/// `P_0 → M` with `P_0 = ⊕ P_{vertices[k]}` and kernel inside `rad P_0`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: Representation,
    /// Vertex of each indecomposable summand of `projective`, in block order.
    pub vertices: Vec<usize>,
    pub map: ModuleHom,
}

/// A minimal presentation `P_1 → P_0 → M → 0`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub cover: ProjectiveCover,
    /// `Ω¹M`, the kernel of the cover.
    pub syzygy: Representation,
    pub syzygy_inclusion: ModuleHom,
    pub syzygy_cover: ProjectiveCover,
    /// The composite `P_1 → Ω¹M → P_0`.
    pub map: ModuleHom,
}

/// Maps out of `⊕ P_{vertices[s]}` sending the generator `e_{vertices[s]}` to
/// `gens[s]`, a vector in the vertex space of `target`.
pub(crate) fn hom_from_projectives(
    algebra: &Arc<MonomialAlgebra>,
    vertices: &[usize],
    gens: &[Vec<u32>],
    target: &Representation,
) -> Result<(DirectSum, ModuleHom)> {
    let f = algebra.field();
    let parts = vertices
        .iter()
        .map(|&v| projective(algebra, v))
        .collect::<Result<Vec<_>>>()?;
    let ds = direct_sum(algebra, &parts)?;
    let n = algebra.vertex_count();
    let mut maps = Vec::with_capacity(n);
    for k in 0..n {
        let mut rows: Vec<Matrix> = Vec::new();
        for (s, &v) in vertices.iter().enumerate() {
            let g = Matrix::row_vector(f, &gens[s]);
            for &p in algebra.paths_between(v, k) {
                rows.push(&g * &target.path_action(&algebra.basis()[p]));
            }
        }
        let refs: Vec<&Matrix> = rows.iter().collect();
        maps.push(Matrix::vstack(f, target.dim(k), &refs));
    }
    let h = ModuleHom::new_unchecked(ds.module.clone(), target.clone(), maps);
    Ok((ds, h))
}

/// The minimal projective cover, generated by lifts of a basis of `top M`.
pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let algebra = m.algebra();
    let t = repmod::top(m);
    let mut vertices = Vec::new();
    let mut gens = Vec::new();
    for (v, lift) in t.lifts.iter().enumerate() {
        for r in 0..lift.rows() {
            vertices.push(v);
            gens.push(lift.row(r).to_vec());
        }
    }
    let (ds, map) = hom_from_projectives(algebra, &vertices, &gens, m)
        .expect("vertices come from the module itself");
    debug_assert!(map.is_surjective());
    ProjectiveCover {
        projective: ds.module,
        vertices,
        map,
    }
}

pub fn projective_presentation(m: &Representation) -> ProjectivePresentation {
    let cover = projective_cover(m);
    let (syzygy, syzygy_inclusion) = repmod::kernel(&cover.map);
    let syzygy_cover = projective_cover(&syzygy);
    let map = syzygy_cover.map.then(&syzygy_inclusion);
    ProjectivePresentation {
        cover,
        syzygy,
        syzygy_inclusion,
        syzygy_cover,
        map,
    }
}

/// True when `m` is projective, i.e. equal in dimension to its projective cover.
pub fn is_projective(m: &Representation) -> bool {
    projective_cover(m).projective.dims() == m.dims()
}

pub fn is_injective(m: &Representation) -> bool {
    is_projective(&dual(m))
}

/// `Ωⁿ(m)`, iterating kernels of minimal projective covers.
pub fn syzygy(m: &Representation, n: usize) -> Representation {
    let mut cur = m.clone();
    for _ in 0..n {
        let cover = projective_cover(&cur);
        cur = repmod::kernel(&cover.map).0;
    }
    cur
}

/// `D = Hom_K(-, K)`: transpose every arrow matrix and reverse the arrow.
pub fn dual(m: &Representation) -> Representation {
    let op = m.algebra().opposite();
    let actions = m.actions().iter().map(Matrix::transpose).collect();
    Representation::new_unchecked(op, m.dims().to_vec(), actions)
}

/// `Ω⁻ⁿ(m) = D Ωⁿ D (m)`, the n-th cokernel of a minimal injective coresolution.
pub fn cosyzygy(m: &Representation, n: usize) -> Representation {
    dual(&syzygy(&dual(m), n))
}

/// The Auslander-Bridger transpose, a right module over the opposite algebra.
///
/// From a minimal presentation `P_1 → P_0 → M → 0`, apply `Hom_A(-, A)` and
/// take the cokernel of `Hom(P_0, A) → Hom(P_1, A)`. `Hom(e_a A, A) = A e_a`
/// is the projective at `a` over `A^op`, and a map `e_b A → e_a A` given by
/// left multiplication with `λ ∈ e_a A e_b` becomes left multiplication with
/// the reversed path `λ^op` on the `A^op` side.
pub fn transpose(m: &Representation) -> Representation {
    let algebra = m.algebra();
    let op = algebra.opposite();
    let pres = projective_presentation(m);
    let p0v = &pres.cover.vertices;
    let p1v = &pres.syzygy_cover.vertices;
    let n = algebra.vertex_count();

    // block offsets of a direct sum of projectives at every vertex
    let offsets = |alg: &MonomialAlgebra, vs: &[usize]| -> Vec<Vec<usize>> {
        let mut out = vec![vec![0; vs.len()]; n];
        for (k, row) in out.iter_mut().enumerate() {
            let mut acc = 0;
            for (s, &v) in vs.iter().enumerate() {
                row[s] = acc;
                acc += alg.paths_between(v, k).len();
            }
        }
        out
    };
    let p0_off = offsets(algebra, p0v);
    let p1_off_op = offsets(&op, p1v);

    let q1_parts = p1v
        .iter()
        .map(|&v| projective(&op, v))
        .collect::<Result<Vec<_>>>()
        .expect("vertices in range");
    let q1 = direct_sum(&op, &q1_parts).expect("same algebra").module;

    let mut gens: Vec<Vec<u32>> = p0v.iter().map(|&a| vec![0; q1.dim(a)]).collect();
    for (s, &b) in p1v.iter().enumerate() {
        // image of the generator e_b of the s-th summand of P_1; it sits at
        // position 0 of its block since trivial paths come first
        let row = pres.map.map(b).row(p1_off(algebra, p1v, b, s)).to_vec();
        for (r, &a) in p0v.iter().enumerate() {
            for (t, &k) in algebra.paths_between(a, b).iter().enumerate() {
                let c = row[p0_off[b][r] + t];
                if c == 0 {
                    continue;
                }
                let rev = algebra.basis()[k].reversed();
                let kop = op.basis_index(&rev).expect("reversed basis path");
                let pos = p1_off_op[a][s] + op.local_position(kop);
                gens[r][pos] = c;
            }
        }
    }
    let (_, dual_map) = hom_from_projectives(&op, p0v, &gens, &q1).expect("vertices in range");
    repmod::cokernel(&dual_map).module
}

fn p1_off(algebra: &MonomialAlgebra, vs: &[usize], at: usize, s: usize) -> usize {
    vs[..s]
        .iter()
        .map(|&v| algebra.paths_between(v, at).len())
        .sum()
}

/// `τ = D Tr`. Projective summands are annihilated.
pub fn tau(m: &Representation) -> Representation {
    dual(&transpose(m))
}

/// `τ⁻¹ = Tr D`. Injective summands are annihilated.
pub fn tau_inverse(m: &Representation) -> Representation {
    transpose(&dual(m))
}

/// The higher translate `τ_i = τ Ω^{i-1}`; `τ_1 = τ`.
pub fn tau_n(m: &Representation, i: usize) -> Representation {
    assert!(i >= 1, "tau_n needs i >= 1");
    tau(&syzygy(m, i - 1))
}

/// Data shared by all classes of one `Ext¹(X, Y)` computation.
#[derive(Debug)]
pub struct ExtContext {
    pub x: Representation,
    pub y: Representation,
    pub cover: ProjectiveCover,
    pub syzygy: Representation,
    pub inclusion: ModuleHom,
    /// Row space of the restrictions `Hom(P_0, Y) → Hom(Ω¹X, Y)`, flattened.
    coboundaries: Matrix,
}

/// A class in `Ext¹(X, Y) = Hom(Ω¹X, Y) / (maps factoring through P_0)`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    representative: ModuleHom,
    context: Arc<ExtContext>,
}

impl ExtClass {
    pub fn representative(&self) -> &ModuleHom {
        &self.representative
    }

    pub fn context(&self) -> &Arc<ExtContext> {
        &self.context
    }

    pub fn is_zero(&self) -> bool {
        let v = Matrix::row_vector(
            self.representative.source().field(),
            &self.representative.to_vector(),
        );
        self.context.coboundaries.spans(&v)
    }

    /// Equal as classes: the difference factors through the cover.
    pub fn same_class(&self, other: &ExtClass) -> bool {
        Arc::ptr_eq(&self.context, &other.context)
            && ExtClass {
                representative: self.representative.sub(&other.representative),
                context: self.context.clone(),
            }
            .is_zero()
    }

    pub fn scale(&self, c: u32) -> ExtClass {
        ExtClass {
            representative: self.representative.scale(c),
            context: self.context.clone(),
        }
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        assert!(
            Arc::ptr_eq(&self.context, &other.context),
            "classes from different Ext computations"
        );
        ExtClass {
            representative: self.representative.add(&other.representative),
            context: self.context.clone(),
        }
    }
}

/// `Ext¹(X, Y)` with a chosen basis.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub context: Arc<ExtContext>,
    pub basis: Vec<ExtClass>,
}

impl Ext1 {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> ExtClass {
        ExtClass {
            representative: ModuleHom::zero(&self.context.syzygy, &self.context.y),
            context: self.context.clone(),
        }
    }
}

pub fn ext1(x: &Representation, y: &Representation) -> Result<Ext1> {
    if !x.algebra().same_as(y.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = x.field();
    let cover = projective_cover(x);
    let (omega, inclusion) = repmod::kernel(&cover.map);
    let len = repmod::hom_vector_len(&omega, y);
    let restricted: Vec<Vec<u32>> = hom_basis(&cover.projective, y)?
        .iter()
        .map(|g| inclusion.then(g).to_vector())
        .collect();
    let coboundaries = Matrix::from_vec(f, restricted.len(), len, restricted.concat()).row_space();
    let mut span = coboundaries.clone();
    let mut reps = Vec::new();
    for h in hom_basis(&omega, y)? {
        let v = Matrix::row_vector(f, &h.to_vector());
        if !span.spans(&v) {
            span = Matrix::vstack(f, len, &[&span, &v]);
            reps.push(h);
        }
    }
    let context = Arc::new(ExtContext {
        x: x.clone(),
        y: y.clone(),
        cover,
        syzygy: omega,
        inclusion,
        coboundaries,
    });
    let basis = reps
        .into_iter()
        .map(|representative| ExtClass {
            representative,
            context: context.clone(),
        })
        .collect();
    Ok(Ext1 { context, basis })
}

/// A basis of `Ext¹(x, y)`; empty when the group vanishes.
pub fn ext1_basis(x: &Representation, y: &Representation) -> Result<Vec<ExtClass>> {
    Ok(ext1(x, y)?.basis)
}

/// `0 → Y → W → X → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub left: ModuleHom,
    pub right: ModuleHom,
}

impl ShortExactSequence {
    pub fn middle(&self) -> &Representation {
        self.left.target()
    }

    pub fn is_exact(&self) -> bool {
        let left_dims = self.left.source().dims();
        let right_dims = self.right.target().dims();
        self.left.is_injective()
            && self.right.is_surjective()
            && self.left.then(&self.right).is_zero()
            && self
                .middle()
                .dims()
                .iter()
                .zip(left_dims.iter().zip(right_dims))
                .all(|(w, (y, x))| *w == y + x)
    }

    /// A map `s: X → W` with `s ; right = id`, if one exists.
    pub fn section(&self) -> Option<ModuleHom> {
        let x = self.right.target();
        let w = self.middle();
        let f = x.field();
        let homs = hom_basis(x, w).expect("same algebra");
        let len = repmod::hom_vector_len(x, x);
        let comps: Vec<Vec<u32>> = homs
            .iter()
            .map(|h| h.then(&self.right).to_vector())
            .collect();
        let sys = Matrix::from_vec(f, comps.len(), len, comps.concat());
        let id = Matrix::row_vector(f, &ModuleHom::identity(x).to_vector());
        let coeffs = sys.solve_left(&id)?;
        Some(linear_combination(x, w, &homs, coeffs.row(0)))
    }

    pub fn splits(&self) -> bool {
        self.section().is_some()
    }
}

/// The pushout of `0 → Ω¹X → P_0 → X → 0` along the class representative.
pub fn extension_from_class(
    x: &Representation,
    y: &Representation,
    class: &ExtClass,
) -> Result<ShortExactSequence> {
    let ctx = &class.context;
    if ctx.x != *x || ctx.y != *y {
        return Err(Error::ForeignExtClass);
    }
    let f = x.field();
    let algebra = x.algebra();
    let sum = direct_sum(algebra, &[ctx.cover.projective.clone(), y.clone()])?;
    let maps = ctx
        .inclusion
        .maps()
        .iter()
        .zip(class.representative.maps())
        .enumerate()
        .map(|(v, (i, c))| Matrix::hstack(f, ctx.syzygy.dim(v), &[i, &(-c)]))
        .collect();
    let glue = ModuleHom::new_unchecked(ctx.syzygy.clone(), sum.module.clone(), maps);
    let q = repmod::cokernel(&glue);
    let left = sum.inclusions[1].then(&q.projection);
    let right = q.factor(&sum.projections[0].then(&ctx.cover.map));
    Ok(ShortExactSequence { left, right })
}

/// Outcome of the n-th syzygy test `X | P' ⊕ Ωⁿ Ω⁻ⁿ X`.
#[derive(Clone, Debug)]
pub struct SyzygyCriterion {
    pub holds: bool,
    pub n: usize,
    /// `Ω⁻ⁿ(X)`.
    pub cosyzygy: Representation,
    /// `T = Ωⁿ(Ω⁻ⁿ(X))` and its decomposition.
    pub witness: Decomposition,
    /// Non-projective indecomposable summands of `X` that `T` cannot absorb.
    pub missing: Vec<Representation>,
}

/// Decides whether `x` is a direct summand of an n-th syzygy module: every
/// indecomposable summand must be projective or a summand of `Ωⁿ(Ω⁻ⁿ(x))`,
/// counted with multiplicity.
pub fn is_nth_syzygy(x: &Representation, n: usize, cfg: &SearchConfig) -> Result<SyzygyCriterion> {
    assert!(n >= 1, "is_nth_syzygy needs n >= 1");
    let co = cosyzygy(x, n);
    let t = syzygy(&co, n);
    let dx = decomp::decompose(x, cfg)?;
    let dt = decomp::decompose(&t, cfg)?;
    let mut available: Vec<usize> = dt.summands.iter().map(|s| s.multiplicity).collect();
    let mut missing = Vec::new();
    for s in &dx.summands {
        if is_projective(&s.module) {
            continue;
        }
        let mut need = s.multiplicity;
        for (k, ts) in dt.summands.iter().enumerate() {
            if need == 0 {
                break;
            }
            if available[k] > 0
                && decomp::indecomposables_isomorphic(&s.module, &ts.module)?.is_some()
            {
                let take = need.min(available[k]);
                available[k] -= take;
                need -= take;
            }
        }
        for _ in 0..need {
            missing.push(s.module.clone());
        }
    }
    Ok(SyzygyCriterion {
        holds: missing.is_empty(),
        n,
        cosyzygy: co,
        witness: dt,
        missing,
    })
}

/// Verdict for one indecomposable summand in [`in_tau_omega`].
#[derive(Clone, Debug)]
pub struct SummandMembership {
    pub module: Representation,
    pub multiplicity: usize,
    pub injective: bool,
    pub tau_inverse: Option<Representation>,
    pub criterion: Option<SyzygyCriterion>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct TauOmegaMembership {
    pub holds: bool,
    pub i: usize,
    pub summands: Vec<SummandMembership>,
}

/// Membership in `τ(Ωⁱ(mod A))`, read as closed under direct summands.
///
/// Injective indecomposables belong (they are `D` of projective `A^op`
/// modules). Any other indecomposable `Z` belongs iff `τ⁻¹Z` is a direct
/// summand of an i-th syzygy.
pub fn in_tau_omega(
    x: &Representation,
    i: usize,
    cfg: &SearchConfig,
) -> Result<TauOmegaMembership> {
    assert!(i >= 1, "in_tau_omega needs i >= 1");
    let d = decomp::decompose(x, cfg)?;
    let mut summands = Vec::new();
    for s in &d.summands {
        if is_injective(&s.module) {
            summands.push(SummandMembership {
                module: s.module.clone(),
                multiplicity: s.multiplicity,
                injective: true,
                tau_inverse: None,
                criterion: None,
                holds: true,
            });
            continue;
        }
        let ti = tau_inverse(&s.module);
        let crit = is_nth_syzygy(&ti, i, cfg)?;
        summands.push(SummandMembership {
            module: s.module.clone(),
            multiplicity: s.multiplicity,
            injective: false,
            tau_inverse: Some(ti),
            holds: crit.holds,
            criterion: Some(crit),
        });
    }
    Ok(TauOmegaMembership {
        holds: summands.iter().all(|s| s.holds),
        i,
        summands,
    })
}
