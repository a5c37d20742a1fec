pub mod arena;
pub mod fixpoint;
pub mod region;
