//! Exact homological algebra over finite-dimensional monomial quiver algebras.
//!
//! Modules are right modules given as quiver representations over a prime
//! field `GF(p)`. On top of them the crate computes minimal projective covers,
//! syzygies, the transpose and the Auslander-Reiten translates, `Ext¹` with
//! explicit middle terms, and Krull-Schmidt decompositions. The [`verify`]
//! module replays the construction showing that `Tr(Ω²(mod A))` need not be
//! closed under extensions.
//!
//! Vertices are 0-based in the Rust API and 1-based in all textual forms
//! (the DSL, the CLI and reports).

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod decomp;
pub mod dsl;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod repmod;
pub mod verify;

pub use algebra::{AlgebraElement, Arrow, MonomialAlgebra, Path, Quiver};
pub use decomp::{Decomposition, SearchConfig};
pub use error::{Error, ParseError, Result};
pub use homology::{ExtClass, ShortExactSequence};
pub use linalg::{Matrix, PrimeField};
pub use repmod::{ModuleHom, Representation};
