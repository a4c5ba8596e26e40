//! Sweeps over graph families, witness collection and result files.

pub mod config;
pub mod output;
pub mod sweep;

pub use config::{Caps, Family, Format, OutputSpec, SplitFilter, SweepConfig};
pub use output::{persist, Manifest, ENGINE_VERSION};
pub use sweep::{family_graphs, load_graphs, parse_graph, replay, run, run_one, Row, Summary, SweepResult, Tally, Witness};
