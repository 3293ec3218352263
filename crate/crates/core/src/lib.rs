//! Exact models of Pin(2)-monopole Floer groups and the intersection-form
//! constraints they force on indefinite Stein fillings.

pub mod catalog;
pub mod cli;
pub mod cobordism;
pub mod floer;
pub mod graded;
pub mod lattice;
pub mod obstruct;
