//! Graph powers, extremal layered constructions, exact edge-growth lower
//! bounds, and executable audits of the sufficiency argument behind them.
//!
//! ```
//! use powergraph::{bounds, generators, Rational};
//!
//! let (g, _) = generators::build_gm(7, 5).unwrap();
//! let verdict = bounds::verify(&g, 7);
//! assert!(verdict.holds);
//! assert_eq!(verdict.observed, Some(Rational::new(21, 5)));
//! ```

pub mod bounds;
pub mod diagnostics;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod power;
pub mod rational;

pub use bounds::{BoundValue, Theorem, Verdict, VerdictStatus};
pub use diagnostics::{ClaimId, ClaimStatus, ClaimsReport};
pub use error::{Error, Result};
pub use fixedbitset::FixedBitSet;
pub use generators::{ConstructionAudit, Family, LayeredBlueprint};
pub use graph::{DistanceVector, Geodesic, Graph};
pub use power::{graph_power, power_edge_count, power_ratio, PowerResult};
pub use rational::Rational;
