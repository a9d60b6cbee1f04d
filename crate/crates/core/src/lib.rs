//! Finite adjoint modal algebras.
//!
//! Lattices with computed Galois adjoints, multi-agent appearance and
//! information operators, action dynamics with a bounded action quantale,
//! a backward-chaining derivation engine, and a small scenario language.

pub mod cli;
pub mod derivation;
pub mod dynamics;
pub mod epistemic;
pub mod error;
pub mod lattice;
pub mod operators;
pub mod scenario;
pub mod semantics;

pub use error::{AlgebraError, Result};
pub use lattice::{Elem, FiniteLattice};
pub use operators::{AdjointPair, LatticeMap};
