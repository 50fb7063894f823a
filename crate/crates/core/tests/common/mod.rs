//! Random modules and homomorphisms shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use arquiver::catalog;
use arquiver::dsl;
use arquiver::repmod::{self, hom_basis, linear_combination};
use arquiver::{Matrix, ModuleHom, MonomialAlgebra, PrimeField, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn paper(p: u32) -> Arc<MonomialAlgebra> {
    catalog::counterexample_algebra(gf(p))
}

/// A small zoo of finite-dimensional algebras with different shapes.
pub fn algebras() -> Vec<Arc<MonomialAlgebra>> {
    vec![
        paper(3),
        paper(2),
        catalog::truncated_loop(gf(5), 3),
        dsl::parse_algebra("algebra A3\nvertices 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelation a*b\nfield GF(3)\n")
            .unwrap(),
        dsl::parse_algebra("algebra kronecker\nvertices 2\narrow a : 1 -> 2\narrow b : 1 -> 2\nfield GF(2)\n")
            .unwrap(),
    ]
}

pub fn random_matrix(f: PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let p = f.modulus();
    Matrix::from_fn(f, rows, cols, |_, _| rng.gen_range(0..p))
}

pub fn random_invertible(f: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let g = random_matrix(f, n, n, rng);
        if g.is_invertible() {
            return g;
        }
    }
}

/// `m` transported along a random base change at every vertex, with the isomorphism `m → m'`.
pub fn random_base_change(m: &Representation, rng: &mut ChaCha8Rng) -> (Representation, ModuleHom) {
    let f = m.field();
    let gs: Vec<Matrix> = m
        .dims()
        .iter()
        .map(|&d| random_invertible(f, d, rng))
        .collect();
    let inv: Vec<Matrix> = gs.iter().map(|g| g.inverse().unwrap()).collect();
    let q = m.algebra().quiver();
    let actions = q
        .arrows()
        .iter()
        .zip(m.actions())
        .map(|(a, act)| &(&inv[a.source] * act) * &gs[a.target])
        .collect();
    let n = Representation::new(m.algebra().clone(), m.dims().to_vec(), actions).unwrap();
    let iso = ModuleHom::new(m.clone(), n.clone(), gs).unwrap();
    (n, iso)
}

fn standard(a: &Arc<MonomialAlgebra>, rng: &mut ChaCha8Rng) -> Representation {
    let i = rng.gen_range(0..a.vertex_count());
    match rng.gen_range(0..3) {
        0 => repmod::projective(a, i).unwrap(),
        1 => repmod::injective(a, i).unwrap(),
        _ => repmod::simple(a, i).unwrap(),
    }
}

/// A random module of total dimension in `1..=max_total`: a submodule or
/// quotient of a sum of one or two standard modules, in a random basis.
pub fn random_module(
    a: &Arc<MonomialAlgebra>,
    max_total: usize,
    rng: &mut ChaCha8Rng,
) -> Representation {
    let f = a.field();
    loop {
        let parts: Vec<Representation> = (0..rng.gen_range(1..=2))
            .map(|_| standard(a, rng))
            .collect();
        let base = repmod::direct_sum(a, &parts).unwrap().module;
        let gens: Vec<(usize, Vec<u32>)> = (0..rng.gen_range(0..=2))
            .filter_map(|_| {
                let v = rng.gen_range(0..a.vertex_count());
                let d = base.dim(v);
                (d > 0).then(|| (v, random_matrix(f, 1, d, rng).row(0).to_vec()))
            })
            .collect();
        let (sub, incl) = repmod::submodule_generated(&base, &gens).unwrap();
        let m = if rng.gen_bool(0.5) && !sub.is_zero() {
            sub
        } else {
            repmod::cokernel(&incl).module
        };
        if (1..=max_total).contains(&m.total_dim()) {
            return random_base_change(&m, rng).0;
        }
    }
}

pub fn random_hom(m: &Representation, n: &Representation, rng: &mut ChaCha8Rng) -> ModuleHom {
    let basis = hom_basis(m, n).unwrap();
    let p = m.field().modulus();
    let coeffs: Vec<u32> = basis.iter().map(|_| rng.gen_range(0..p)).collect();
    linear_combination(m, n, &basis, &coeffs)
}

pub fn all_matrices(f: PrimeField) -> Vec<Matrix> {
    let p = f.modulus();
    (0..p.pow(4))
        .map(|mut code| {
            Matrix::from_fn(f, 2, 2, |_, _| {
                let c = code % p;
                code /= p;
                c
            })
        })
        .collect()
}

/// Oracle for `K[a]/(a²)`: extensions `0 → S → K² → S → 0` with `S` included as `(0, 1)` and the
/// quotient given by the first coordinate, as the action matrices `N`.
pub fn extension_structures(f: PrimeField) -> Vec<Matrix> {
    let incl = Matrix::row_vector(f, &[0, 1]);
    all_matrices(f)
        .into_iter()
        .filter(|n| (n * n).is_zero())
        .filter(|n| (&incl * n).is_zero())
        .filter(|n| (0..2).all(|r| n.get(r, 0) == 0))
        .collect()
}

/// Base changes fixing the inclusion and the projection.
pub fn equivalences(f: PrimeField) -> Vec<Matrix> {
    all_matrices(f)
        .into_iter()
        .filter(|g| g.is_invertible() && g.row(1) == [0, 1] && g.get(0, 0) == 1 && g.get(1, 0) == 0)
        .collect()
}

pub fn brute_iso(n1: &Matrix, n2: &Matrix, f: PrimeField) -> bool {
    all_matrices(f)
        .iter()
        .any(|g| g.is_invertible() && (n1 * g) == (g * n2))
}

pub fn ext_classes(f: PrimeField) -> Vec<Matrix> {
    let eqs = equivalences(f);
    let mut reps: Vec<Matrix> = Vec::new();
    for n in extension_structures(f) {
        if !reps.iter().any(|r| eqs.iter().any(|g| (&n * g) == (g * r))) {
            reps.push(n);
        }
    }
    reps
}
