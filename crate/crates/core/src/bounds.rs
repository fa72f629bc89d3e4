//! Exact lower bounds on the edge count of graph powers, and verdicts on
//! whether a concrete graph meets them.
//!
//! Writing `c(r)` for the per-vertex coefficient
//!
//! ```text
//! c(r) = (r + 3)/6 - 3/(4(r + 3))   if r ≡ 0 (mod 3)
//! c(r) = ⌈r/3⌉ / 2                  otherwise
//! ```
//!
//! the bounds are `e(G^r)/e(G) ≥ 2c(r)` for connected regular `G`,
//! `e(G^r) ≥ c(r)·δ·n` for connected loopless `G`, and
//! `e(G^r) ≥ c(r)·δ·n + n/2` when loops are allowed and `r ≥ 6`. All three
//! need `diam(G) ≥ r`. Every comparison here is on exact rationals.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::power::power_edge_count;
use crate::rational::Rational;

pub type BoundValue = Rational;

/// Source of the `r = 3` case, which is used but not re-derived here.
pub const R3_PROVENANCE: &str = "external: DeVos–Thomassé";

fn ceil_third(r: usize) -> i128 {
    r.div_ceil(3) as i128
}

/// `c(r)`, the coefficient of `δ·n` in the edge bounds.
pub fn edge_bound_coefficient(r: usize) -> Rational {
    let r_ = r as i128;
    if r.is_multiple_of(3) {
        Rational::new(r_ + 3, 6) - Rational::new(3, 4 * (r_ + 3))
    } else {
        Rational::new(ceil_third(r), 2)
    }
}

/// Lower bound on `e(G^r)/e(G)` for connected regular graphs with
/// `diam(G) ≥ r`.
pub fn regular_ratio_bound(r: usize) -> Result<BoundValue> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!(
            "regular ratio bound needs r ≥ 3, got r={r}"
        )));
    }
    Ok(edge_bound_coefficient(r) * Rational::integer(2))
}

fn check_degree_and_order(delta: usize, n: usize) -> Result<()> {
    if delta < 1 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "need δ ≥ 1 and n ≥ 1, got δ={delta}, n={n}"
        )));
    }
    Ok(())
}

/// Lower bound on `e(G^r)` for connected loopless graphs with minimum
/// degree `delta`, `n` vertices and `diam(G) ≥ r`.
pub fn min_degree_edge_bound(r: usize, delta: usize, n: usize) -> Result<BoundValue> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!(
            "minimum-degree bound needs r ≥ 3, got r={r}"
        )));
    }
    check_degree_and_order(delta, n)?;
    Ok(edge_bound_coefficient(r) * Rational::from(delta) * Rational::from(n))
}

/// Lower bound on `e(G^r)` for connected loops-allowed graphs, `r ≥ 6`.
pub fn loops_edge_bound(r: usize, delta: usize, n: usize) -> Result<BoundValue> {
    if r < 6 {
        return Err(Error::InvalidParameter(format!(
            "loops-allowed bound needs r ≥ 6, got r={r}"
        )));
    }
    check_degree_and_order(delta, n)?;
    Ok(edge_bound_coefficient(r) * Rational::from(delta) * Rational::from(n)
        + Rational::new(n as i128, 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// `e(G^r)/e(G)` for connected regular loopless graphs.
    RegularRatio,
    /// `e(G^r)` against `δ·|G|` for connected loopless graphs.
    MinDegree,
    /// `e(G^r)` against `δ·|G|` plus `|G|/2` when loops are allowed.
    LoopsAllowed,
    /// `e(G^r)/e(G) ≥ r` for Cayley graphs of `Z_p` with `r < diam`.
    CayleyRatio,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::RegularRatio => "regular-ratio",
            Theorem::MinDegree => "min-degree",
            Theorem::LoopsAllowed => "loops-allowed",
            Theorem::CayleyRatio => "cayley-ratio",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Holds,
    Violation,
    Inapplicable,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Holds => "holds",
            VerdictStatus::Violation => "violation",
            VerdictStatus::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub theorem: Theorem,
    pub applicable: bool,
    /// The first failed hypothesis, or `"hypotheses met"`.
    pub reason: String,
    pub bound: Option<BoundValue>,
    pub observed: Option<BoundValue>,
    pub holds: bool,
    pub margin: Option<BoundValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl Verdict {
    fn inapplicable(theorem: Theorem, reason: impl Into<String>) -> Self {
        Self {
            theorem,
            applicable: false,
            reason: reason.into(),
            bound: None,
            observed: None,
            holds: false,
            margin: None,
            provenance: None,
        }
    }

    fn compare(theorem: Theorem, bound: Rational, observed: Rational) -> Self {
        Self {
            theorem,
            applicable: true,
            reason: "hypotheses met".into(),
            bound: Some(bound),
            observed: Some(observed),
            holds: observed >= bound,
            margin: Some(observed - bound),
            provenance: None,
        }
    }

    pub fn status(&self) -> VerdictStatus {
        match (self.applicable, self.holds) {
            (false, _) => VerdictStatus::Inapplicable,
            (true, true) => VerdictStatus::Holds,
            (true, false) => VerdictStatus::Violation,
        }
    }

    /// `holds bound=3 observed=21/5 margin=6/5 theorem=regular-ratio`, or
    /// `inapplicable reason=<hypothesis> theorem=<id>`.
    pub fn summary_line(&self) -> String {
        match (&self.bound, &self.observed, &self.margin) {
            (Some(b), Some(o), Some(m)) => format!(
                "{} bound={b} observed={o} margin={m} theorem={}",
                self.status(),
                self.theorem
            ),
            _ => format!(
                "{} reason={} theorem={}",
                self.status(),
                self.reason,
                self.theorem
            ),
        }
    }
}

/// Checks one theorem's hypotheses on `g` and, when they hold, compares the
/// observed quantity with the bound.
pub fn verify_theorem(g: &Graph, r: usize, theorem: Theorem) -> Verdict {
    let min_r = match theorem {
        Theorem::RegularRatio | Theorem::MinDegree => 3,
        Theorem::LoopsAllowed => 6,
        Theorem::CayleyRatio => 1,
    };
    if r < min_r {
        return Verdict::inapplicable(theorem, format!("r < {min_r}"));
    }
    match (theorem, g.loops_allowed()) {
        (Theorem::LoopsAllowed, false) => return Verdict::inapplicable(theorem, "loopless graph"),
        (Theorem::LoopsAllowed, true) => {}
        (_, true) => return Verdict::inapplicable(theorem, "loops-allowed graph"),
        (_, false) => {}
    }
    if g.edge_count() == 0 {
        return Verdict::inapplicable(theorem, "edgeless graph");
    }
    let Some(diameter) = g.diameter() else {
        return Verdict::inapplicable(theorem, "disconnected");
    };
    if theorem == Theorem::RegularRatio && !g.is_regular() {
        return Verdict::inapplicable(theorem, "not regular");
    }
    if theorem == Theorem::CayleyRatio {
        if r >= diameter {
            return Verdict::inapplicable(theorem, "diameter <= r");
        }
    } else if diameter < r {
        return Verdict::inapplicable(theorem, "diameter < r");
    }

    let n = g.order();
    let power_edges = power_edge_count(g, r).expect("r ≥ 1");
    let observed_edges = Rational::from(power_edges);
    let ratio = Rational::new(power_edges as i128, g.edge_count() as i128);
    let mut verdict = match theorem {
        Theorem::RegularRatio => {
            Verdict::compare(theorem, regular_ratio_bound(r).expect("r ≥ 3"), ratio)
        }
        Theorem::MinDegree => Verdict::compare(
            theorem,
            min_degree_edge_bound(r, g.min_degree(), n).expect("connected with an edge"),
            observed_edges,
        ),
        Theorem::LoopsAllowed => Verdict::compare(
            theorem,
            loops_edge_bound(r, g.min_degree(), n).expect("connected with an edge"),
            observed_edges,
        ),
        Theorem::CayleyRatio => Verdict::compare(theorem, Rational::from(r), ratio),
    };
    if r == 3 && matches!(theorem, Theorem::RegularRatio | Theorem::MinDegree) {
        verdict.provenance = Some(R3_PROVENANCE.into());
    }
    verdict
}

/// The most specific theorem for `g`: the loops-allowed bound for
/// loops-allowed graphs, the ratio bound for regular graphs, and the
/// minimum-degree bound otherwise.
pub fn primary_theorem(g: &Graph) -> Theorem {
    if g.loops_allowed() {
        Theorem::LoopsAllowed
    } else if g.is_regular() {
        Theorem::RegularRatio
    } else {
        Theorem::MinDegree
    }
}

pub fn verify(g: &Graph, r: usize) -> Verdict {
    verify_theorem(g, r, primary_theorem(g))
}

/// Verdicts for every theorem that concerns graphs of this kind.
pub fn verify_all(g: &Graph, r: usize) -> Vec<Verdict> {
    let theorems: &[Theorem] = if g.loops_allowed() {
        &[Theorem::LoopsAllowed]
    } else {
        &[Theorem::RegularRatio, Theorem::MinDegree]
    };
    theorems.iter().map(|&t| verify_theorem(g, r, t)).collect()
}

/// For a graph the caller knows to be a Cayley graph of `Z_p`.
pub fn verify_cayley(g: &Graph, r: usize) -> Verdict {
    verify_theorem(g, r, Theorem::CayleyRatio)
}
