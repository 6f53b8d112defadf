pub mod semantics;
pub mod syntax;
pub mod interpreter;
pub mod mutation;
pub mod analysis;
pub mod cli;
