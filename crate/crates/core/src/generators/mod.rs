//! Graph families: the layered extremal constructions, Cayley graphs of
//! `Z_p`, and random connected regular graphs.

mod cayley;
mod layered;
mod random;

pub use cayley::{cayley_graph, is_prime};
pub use layered::{
    audit, build, build_gm, build_hm, convergence_table, gaps_positive_and_decreasing,
    ConstructionAudit, ConvergenceRow, Family, LayeredBlueprint,
};
pub use random::{random_regular_connected, random_regular_connected_with_budget, DEFAULT_ATTEMPTS};
