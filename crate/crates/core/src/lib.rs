//! Link-structure rankings for weighted directed networks.
//!
//! PageRank, HITS, a HITS variant weighted by preferential-attachment
//! constants, and a ranking for trading networks (with buyer/seller splits
//! and reserved-resource blending), together with the metrics, generators
//! and degree analyses used to evaluate them.
//!
//! ```
//! use linkrank::{ingest_edge_list, traderank, EdgeRow, Mode, Ordering, RunConfig};
//!
//! let rows = vec![
//!     EdgeRow::new("Norway", "Germany", 120.0),
//!     EdgeRow::new("Germany", "France", 80.0),
//!     EdgeRow::new("France", "Norway", 15.0),
//! ];
//! let net = ingest_edge_list(&rows, Mode::Trading)?;
//! let r = traderank(&net, &RunConfig::default())?;
//! assert!(r.converged);
//! let order = Ordering::from_scores(&r.scores);
//! assert_eq!(order.ranks.len(), 3);
//! # Ok::<(), linkrank::Error>(())
//! ```

pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod eval;
pub mod graph;
pub mod hits;
pub mod netanalysis;
pub mod pagerank;
pub mod sparse;
pub mod traderank;

pub use config::{DegreeWeighting, RunConfig};
pub use engine::{power_iterate, smooth, stochasticize, ConvergenceTrace, LinearOperator, RankResult};
pub use error::{Error, Result};
pub use eval::{benchmark, cosine, spearman, total_volume, BenchmarkReport, Ordering};
pub use graph::{degree_summary, ingest_edge_list, split_by_resource, DegreeSummary, EdgeRow, Mode, Network};
pub use hits::{hits, hits_accelerated, HitsResult};
pub use pagerank::pagerank;
pub use traderank::{blend_reserved, buyer_seller, pa_constants, traderank, BlendInput, PAConstants};
