//! r-th powers of graphs.
//!
//! `G^r` keeps the vertex set of `G` and joins two vertices when they are at
//! distance at most `r`. For a loops-allowed input every vertex of the power
//! carries a loop (distance 0), so `e(G^r) = (Σ_v |N^r(v)| + n) / 2`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{parse_graph_lines, parse_key, significant_lines};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerResult {
    pub power_graph: Graph,
    pub r: usize,
    pub base_edges: usize,
    pub power_edges: usize,
}

impl PowerResult {
    /// `e(G^r) / e(G)`; `None` when the base graph has no edges.
    pub fn ratio(&self) -> Option<Rational> {
        (self.base_edges > 0)
            .then(|| Rational::new(self.power_edges as i128, self.base_edges as i128))
    }

    pub fn stats_line(&self) -> String {
        format!(
            "r={} e_base={} e_power={}",
            self.r, self.base_edges, self.power_edges
        )
    }

    /// Stats header followed by the power graph in edge-list format.
    pub fn to_text(&self) -> String {
        format!("{}\n{}", self.stats_line(), self.power_graph.to_edge_list())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = significant_lines(text);
        let (line, stats) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing stats header".into(),
        })?;
        let tokens: Vec<&str> = stats.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::Parse {
                line,
                message: "stats header must be `r=<r> e_base=<int> e_power=<int>`".into(),
            });
        }
        let r = parse_key(line, tokens[0], "r")?;
        let base_edges = parse_key(line, tokens[1], "e_base")?;
        let power_edges = parse_key(line, tokens[2], "e_power")?;
        let power_graph = parse_graph_lines(lines)?;
        if power_graph.edge_count() != power_edges {
            return Err(Error::Parse {
                line,
                message: format!(
                    "e_power={power_edges} but the edge list has {} edges",
                    power_graph.edge_count()
                ),
            });
        }
        Ok(Self {
            power_graph,
            r,
            base_edges,
            power_edges,
        })
    }
}

/// Computes `G^r` with one depth-`r` BFS per vertex, run in parallel.
pub fn graph_power(g: &Graph, r: usize) -> Result<PowerResult> {
    if r < 1 {
        return Err(Error::InvalidPower(r));
    }
    let loops = g.loops_allowed();
    let rows: Vec<FixedBitSet> = (0..g.order())
        .into_par_iter()
        .map(|v| {
            let mut ball = g.ball(v, r);
            if !loops {
                ball.set(v, false);
            }
            ball
        })
        .collect();
    let power_graph = Graph::from_rows(rows, loops);
    Ok(PowerResult {
        r,
        base_edges: g.edge_count(),
        power_edges: power_graph.edge_count(),
        power_graph,
    })
}

/// Number of edges of `G^r` without materialising the power graph.
pub fn power_edge_count(g: &Graph, r: usize) -> Result<usize> {
    if r < 1 {
        return Err(Error::InvalidPower(r));
    }
    let loops = g.loops_allowed();
    let sum: usize = (0..g.order())
        .into_par_iter()
        .map(|v| g.ball(v, r).count_ones(..))
        .sum();
    let n = g.order();
    // each ball includes its centre; loops count once, other pairs twice
    Ok(if loops { (sum + n) / 2 } else { (sum - n) / 2 })
}

/// `e(G^r) / e(G)` as an exact rational.
pub fn power_ratio(g: &Graph, r: usize) -> Result<Rational> {
    let base = g.edge_count();
    if base == 0 {
        return Err(Error::Edgeless);
    }
    Ok(Rational::new(power_edge_count(g, r)? as i128, base as i128))
}
