//! Exact homological invariants of edge ideals, splitting graphs, and the
//! stretching operator on monomial ideals.

pub mod betti;
pub mod classes;
pub mod complex;
pub mod covers;
pub mod error;
pub mod families;
pub mod field;
pub mod graph;
pub mod harness;
pub mod iso;
pub mod linalg;
pub mod monomial;
pub mod report;
pub mod splitting;
