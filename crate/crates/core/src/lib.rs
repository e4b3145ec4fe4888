//! Temporal motif counting on timestamped directed multigraphs.
//!
//! A motif is a small directed pattern whose edges carry a time order; a
//! match maps it onto graph edges with strictly increasing timestamps that
//! all fit in a window of length `delta`. Counts are estimated by drawing
//! uniform time-windowed 3-paths (or wedges, for 3-vertex motifs) matching a
//! spanning path of the motif, counting the matches each sample extends to,
//! and scaling by the number of such paths. An exact backtracking counter is
//! included for validation.
//!
//! ```
//! use temporal_motifs::{estimate, exact_count, EstimateConfig, Motif, TemporalGraph, TieMode};
//!
//! let g = TemporalGraph::from_edges([(0, 1, 10), (1, 2, 20), (2, 3, 30), (3, 0, 40)]).unwrap();
//! let cycle = Motif::preset("M4-0").unwrap();
//! let cfg = EstimateConfig { delta: 60, samples: 10_000, ..Default::default() };
//! let report = estimate(&g, &cycle, &cfg).unwrap();
//! assert_eq!(report.w_delta, 2);
//! assert!((report.estimate - 1.0).abs() < 0.1);
//! assert_eq!(exact_count(&g, &cycle, 60, TieMode::Strict, u64::MAX).unwrap(), 1);
//! ```

pub mod cli;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod extend;
pub mod graph;
mod mem;
pub mod motif;
pub mod sampler;
pub mod synth;

pub use error::{Error, Result};
pub use estimate::{
    b_statistics, estimate, exhaustive_estimate, required_samples, two_phase, BStats, EstimateConfig,
    EstimateReport, Estimator,
};
pub use exact::{exact_count, exact_count_parallel};
pub use extend::{check_motif, list_count, Extender, ListOrder};
pub use graph::{load_graph, EdgeFormat, LoadOptions, TemporalEdge, TemporalGraph, Timestamp, VertexId};
pub use motif::{choose_anchor, build_extension_plan, parse_motif, Anchor, ExtensionPlan, Motif, SamplingClass, TieMode};
pub use sampler::{enumerate_paths, preprocess, sample_path, SampledPath, WeightTable};
