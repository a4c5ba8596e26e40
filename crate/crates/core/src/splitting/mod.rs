//! Splitting graphs: verification, enumeration, specialness, the σ-stable
//! graph and comparison of invariants.

pub mod compare;
pub mod enumerate;
pub mod map;
pub mod sigma;

pub use compare::{compare, compare_with, ComparisonRecord, Deltas, Inequality, Verdicts};
pub use enumerate::{bell, enumerate_splittings, raw_splitting_count, EnumerateOptions, SpecialFilter, Splittings};
pub use map::{specialness, verify_splitting, SplitDiagnostics, Specialness, SplittingMap};
pub use sigma::{cg_set, cg_set_with_cap, gamma, sigma_graph, sigma_stable, stretched_edges, stretched_graph, CgSet};
