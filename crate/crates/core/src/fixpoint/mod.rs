//! A μ-calculus evaluator over pluggable complete lattices.
//!
//! The three pieces: term syntax ([`MuTerm`]), the lattice abstraction with
//! its operator registry ([`Lattice`]), and the iterative evaluator with
//! approximant traces, a guardedness check, unfolding, and the contractive
//! ν–μ identity as an executable property.

mod eval;
mod powerset;
mod term;

pub use eval::{
    check_guarded, eval, validate, verify_contractive_identity, ApproximantTrace, EvalError,
    EvalOptions, FixKind, FixpointTrace, GuardKind, Lattice, OperatorInfo,
};
pub use powerset::{FinSet, PowersetLattice};
pub use term::MuTerm;
