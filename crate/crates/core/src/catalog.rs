//! Ready-made algebras used by the verifier, the CLI defaults and the tests.

use std::sync::Arc;

use crate::algebra::{MonomialAlgebra, Path, Quiver};
use crate::linalg::PrimeField;

/// Two vertices with arrows `x: 1 → 1`, `y: 1 → 2`, `z: 2 → 1`.
pub fn counterexample_quiver() -> Quiver {
    Quiver::from_triples(2, &[("x", 0, 0), ("y", 0, 1), ("z", 1, 0)]).expect("valid quiver")
}

/// The seven-dimensional algebra `KQ/⟨xy, yz, zx, x³⟩` on [`counterexample_quiver`],
/// whose category `τ(Ω²(mod A))` fails to be closed under extensions.
pub fn counterexample_algebra(field: PrimeField) -> Arc<MonomialAlgebra> {
    let q = counterexample_quiver();
    let rels: Vec<Path> = [&["x", "y"][..], &["y", "z"], &["z", "x"], &["x", "x", "x"]]
        .iter()
        .map(|w| q.path_from_labels(w).expect("relations compose"))
        .collect();
    MonomialAlgebra::new("counterexample", q, rels, field).expect("finite dimensional")
}

/// `K[a]/(a^n)` for `n ≥ 2`.
pub fn truncated_loop(field: PrimeField, n: usize) -> Arc<MonomialAlgebra> {
    assert!(n >= 2, "relation must have length at least 2");
    let q = Quiver::from_triples(1, &[("a", 0, 0)]).expect("valid quiver");
    let rel = q.path(&vec![0; n]).expect("loop composes");
    MonomialAlgebra::new(format!("loop{n}"), q, vec![rel], field).expect("finite dimensional")
}

/// `K × … × K` with `n` factors: `n` vertices and no arrows.
pub fn semisimple(field: PrimeField, n: usize) -> Arc<MonomialAlgebra> {
    let q = Quiver::new(n, Vec::new()).expect("valid quiver");
    MonomialAlgebra::new(format!("semisimple{n}"), q, Vec::new(), field)
        .expect("finite dimensional")
}
