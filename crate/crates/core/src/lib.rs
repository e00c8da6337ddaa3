//! Chu-construction semantics for affine logic over finite Heyting algebras.

pub mod chu;
pub mod cli;
pub mod lattice;
pub mod models;
pub mod semantics;
pub mod syntax;
pub mod translate;
