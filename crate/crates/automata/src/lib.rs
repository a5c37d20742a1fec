//! Finite-automata toolkit for symbolic sets of channel contents.
//!
//! The crate provides complete DFAs over small indexed alphabets with the
//! Boolean algebra, canonical minimization, single-letter quotients, and the
//! order-theoretic constructions needed for reasoning about unreliable FIFO
//! channels: supersequence/subword closures and the preimage of the
//! letter-doubling transduction.

pub mod dfa;
pub mod dump;
pub mod nfa;
pub mod regex;

pub use dfa::Dfa;
pub use dump::{parse_dfa, print_dfa, DumpError};
pub use nfa::{down_closure, dup_preimage, up_closure, Nfa};
pub use regex::{parse_regex, render_simple, RegexError};
