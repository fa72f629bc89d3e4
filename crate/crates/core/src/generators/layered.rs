//! Layered clique-join constructions that make the regular-graph ratio
//! bounds tight.
//!
//! Both families start from disjoint layers `N_0, ..., N_k`, each a clique,
//! with every edge present between consecutive layers. `Gm` then deletes a
//! Hamiltonian cycle of the internal layers; `Hm` deletes a perfect matching
//! from the two layers adjacent to the end layers.

use std::fmt::{self, Write as _};
use std::ops::Range;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::bounds::regular_ratio_bound;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::power::graph_power;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gm,
    Hm,
}

impl Family {
    /// The family whose construction matches the residue of `r` mod 3.
    pub fn for_power(r: usize) -> Self {
        if r.is_multiple_of(3) {
            Family::Hm
        } else {
            Family::Gm
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gm => "Gm",
            Family::Hm => "Hm",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Gm" => Ok(Family::Gm),
            "Hm" => Ok(Family::Hm),
            _ => Err(Error::InvalidParameter(format!("unknown family `{s}`"))),
        }
    }
}

/// Layer structure of a constructed graph. Layer vertices are numbered
/// contiguously in increasing layer order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredBlueprint {
    pub family: Family,
    pub r: usize,
    pub m: usize,
    pub layer_sizes: Vec<usize>,
    pub layer_of: Vec<usize>,
    pub removed_cycle: Option<Vec<usize>>,
    pub removed_matchings: Vec<(usize, Vec<(usize, usize)>)>,
}

impl LayeredBlueprint {
    fn new(family: Family, r: usize, m: usize, layer_sizes: Vec<usize>) -> Self {
        let layer_of = layer_sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect();
        Self {
            family,
            r,
            m,
            layer_sizes,
            layer_of,
            removed_cycle: None,
            removed_matchings: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.layer_of.len()
    }

    pub fn layer_count(&self) -> usize {
        self.layer_sizes.len()
    }

    pub fn layer(&self, i: usize) -> Range<usize> {
        let start: usize = self.layer_sizes[..i].iter().sum();
        start..start + self.layer_sizes[i]
    }

    fn removed_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        if let Some(cycle) = &self.removed_cycle {
            for (i, &u) in cycle.iter().enumerate() {
                pairs.push((u, cycle[(i + 1) % cycle.len()]));
            }
        }
        for (_, matching) in &self.removed_matchings {
            pairs.extend(matching.iter().copied());
        }
        pairs
    }

    /// Cliques on every layer, complete joins between consecutive layers,
    /// minus the removed cycle and matchings.
    fn realize(&self) -> Graph {
        let n = self.order();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, row) in rows.iter_mut().enumerate() {
            let li = self.layer_of[u];
            let lo = li.saturating_sub(1);
            let hi = (li + 1).min(self.layer_count() - 1);
            row.insert_range(self.layer(lo).start..self.layer(hi).end);
            row.set(u, false);
        }
        for (u, v) in self.removed_pairs() {
            rows[u].set(v, false);
            rows[v].set(u, false);
        }
        Graph::from_rows(rows, false)
    }

    /// Checks the structural invariants of the blueprint against `g`.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        if g.order() != self.order() {
            return Err(format!("order {} != blueprint {}", g.order(), self.order()));
        }
        let mut removed = vec![FixedBitSet::with_capacity(g.order()); g.order()];
        for (u, v) in self.removed_pairs() {
            if self.layer_of[u].abs_diff(self.layer_of[v]) > 1 {
                return Err(format!("removed pair {u}-{v} is not a legal edge"));
            }
            removed[u].insert(v);
            removed[v].insert(u);
        }
        for u in 0..g.order() {
            for v in 0..g.order() {
                if u == v {
                    continue;
                }
                let near = self.layer_of[u].abs_diff(self.layer_of[v]) <= 1;
                let expected = near && !removed[u].contains(v);
                if g.has_edge(u, v) != expected {
                    return Err(format!("edge {u}-{v}: expected present={expected}"));
                }
            }
        }
        if let Some(cycle) = &self.removed_cycle {
            let internal: Vec<usize> = (1..self.layer_count() - 1)
                .flat_map(|i| self.layer(i))
                .collect();
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            if sorted != internal {
                return Err("removed cycle does not visit each internal vertex once".into());
            }
            // a repeated undirected edge would only reduce degrees by one
            let mut seen = std::collections::HashSet::new();
            for (i, &u) in cycle.iter().enumerate() {
                let v = cycle[(i + 1) % cycle.len()];
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(format!("removed cycle repeats edge {u}-{v}"));
                }
            }
        }
        for (layer, matching) in &self.removed_matchings {
            let mut covered: Vec<usize> = matching.iter().flat_map(|&(u, v)| [u, v]).collect();
            covered.sort_unstable();
            if covered != self.layer(*layer).collect::<Vec<_>>() {
                return Err(format!("matching on layer {layer} is not perfect"));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("family={} r={} m={}\n", self.family, self.r, self.m);
        for i in 0..self.layer_count() {
            let range = self.layer(i);
            writeln!(out, "layer {i} {}..{}", range.start, range.end - 1).unwrap();
        }
        if let Some(cycle) = &self.removed_cycle {
            let vs: Vec<String> = cycle.iter().map(usize::to_string).collect();
            writeln!(out, "cycle {}", vs.join(" ")).unwrap();
        }
        for (layer, matching) in &self.removed_matchings {
            let pairs: Vec<String> = matching.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            writeln!(out, "matching {layer} {}", pairs.join(" ")).unwrap();
        }
        out
    }

    /// Closed-form vertex count for the family.
    pub fn claimed_order(&self) -> usize {
        let (r, m) = (self.r, self.m);
        match (self.family, r % 3) {
            (Family::Gm, 1) => (r * m + 2 * m + 3 * r) / 3,
            (Family::Gm, _) => (r + 1) * (m + 3) / 3,
            (Family::Hm, _) => (4 * r * m + r + 12 * m + 6) / 3,
        }
    }

    pub fn claimed_degree(&self) -> usize {
        match self.family {
            Family::Gm => self.m,
            Family::Hm => 4 * self.m,
        }
    }

    pub fn claimed_diameter(&self) -> usize {
        match self.family {
            Family::Gm => self.r,
            Family::Hm => self.r + 1,
        }
    }

    /// Closed-form `e(G^r)`: complete for `Gm`, complete minus the
    /// `N_0 × N_{r+1}` pairs for `Hm`.
    pub fn claimed_power_edges(&self) -> usize {
        let n = self.claimed_order();
        let complete = n * (n - 1) / 2;
        match self.family {
            Family::Gm => complete,
            Family::Hm => complete - (2 * self.m + 1).pow(2),
        }
    }
}

/// Builds `Gm` for `r ≢ 0 (mod 3)`, `r ≥ 4`, `m ≥ 3`: layers `N_0..N_r` of
/// size `m - 1` when `i ≡ 1 (mod 3)` and 2 otherwise, with a Hamiltonian
/// cycle of `N_1 ∪ ... ∪ N_{r-1}` removed.
pub fn build_gm(r: usize, m: usize) -> Result<(Graph, LayeredBlueprint)> {
    if r.is_multiple_of(3) {
        return Err(Error::InvalidParameter("Gm requires r ≢ 0 mod 3".into()));
    }
    if r < 4 {
        return Err(Error::InvalidParameter("Gm requires r ≥ 4".into()));
    }
    if m < 3 {
        return Err(Error::InvalidParameter("Gm requires m ≥ 3".into()));
    }
    let sizes = (0..=r).map(|i| if i % 3 == 1 { m - 1 } else { 2 }).collect();
    let mut bp = LayeredBlueprint::new(Family::Gm, r, m, sizes);

    // Forward sweep over N_1..N_{r-1}, holding back the last vertex of each
    // middle layer N_2..N_{r-2}; the return path runs back through those.
    let mut cycle: Vec<usize> = bp.layer(1).collect();
    let mut reserved = Vec::new();
    for i in 2..=r - 2 {
        let layer = bp.layer(i);
        cycle.extend(layer.start..layer.end - 1);
        reserved.push(layer.end - 1);
    }
    cycle.extend(bp.layer(r - 1));
    cycle.extend(reserved.into_iter().rev());
    bp.removed_cycle = Some(cycle);

    Ok((bp.realize(), bp))
}

/// Builds `Hm` for `r ≡ 0 (mod 3)`, `r ≥ 3`, `m ≥ 1`: end layers of size
/// `2m + 1`, singletons at `i ≡ 2 (mod 3)`, `2m` elsewhere, with perfect
/// matchings removed from `N_1` and `N_r`.
pub fn build_hm(r: usize, m: usize) -> Result<(Graph, LayeredBlueprint)> {
    if !r.is_multiple_of(3) {
        return Err(Error::InvalidParameter("Hm requires r ≡ 0 mod 3".into()));
    }
    if r < 3 {
        return Err(Error::InvalidParameter("Hm requires r ≥ 3".into()));
    }
    if m < 1 {
        return Err(Error::InvalidParameter("Hm requires m ≥ 1".into()));
    }
    let sizes = (0..=r + 1)
        .map(|i| match i {
            0 => 2 * m + 1,
            i if i == r + 1 => 2 * m + 1,
            i if i % 3 == 2 => 1,
            _ => 2 * m,
        })
        .collect();
    let mut bp = LayeredBlueprint::new(Family::Hm, r, m, sizes);
    for layer in [1, r] {
        let start = bp.layer(layer).start;
        let matching = (0..m).map(|j| (start + 2 * j, start + 2 * j + 1)).collect();
        bp.removed_matchings.push((layer, matching));
    }
    Ok((bp.realize(), bp))
}

pub fn build(family: Family, r: usize, m: usize) -> Result<(Graph, LayeredBlueprint)> {
    match family {
        Family::Gm => build_gm(r, m),
        Family::Hm => build_hm(r, m),
    }
}

/// Closed-form claims next to the values measured on the built graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionAudit {
    pub family: Family,
    pub r: usize,
    pub m: usize,
    pub claimed_order: usize,
    pub actual_order: usize,
    pub claimed_degree: usize,
    pub regular_degree: Option<usize>,
    pub claimed_diameter: usize,
    pub diameter: Option<usize>,
    pub claimed_power_edges: usize,
    pub power_edges: usize,
    /// `Hm` only: every `N_0 × N_{r+1}` pair is absent from the power.
    pub end_layers_separated: bool,
    pub ratio: Rational,
    pub blueprint_error: Option<String>,
    pub notes: Vec<String>,
}

impl ConstructionAudit {
    pub fn passed(&self) -> bool {
        self.claimed_order == self.actual_order
            && self.regular_degree == Some(self.claimed_degree)
            && self.diameter == Some(self.claimed_diameter)
            && self.claimed_power_edges == self.power_edges
            && self.end_layers_separated
            && self.blueprint_error.is_none()
    }

    /// `order=<n> degree=<d> diameter=<D> PASS|FAIL`
    pub fn summary_line(&self) -> String {
        let degree = self
            .regular_degree
            .map_or_else(|| "irregular".to_string(), |d| d.to_string());
        let diameter = self
            .diameter
            .map_or_else(|| "infinite".to_string(), |d| d.to_string());
        format!(
            "order={} degree={degree} diameter={diameter} {}",
            self.actual_order,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.summary_line());
        writeln!(out, "family={} r={} m={}", self.family, self.r, self.m).unwrap();
        writeln!(out, "claimed_order={} actual_order={}", self.claimed_order, self.actual_order).unwrap();
        writeln!(
            out,
            "claimed_power_edges={} power_edges={} ratio={}",
            self.claimed_power_edges, self.power_edges, self.ratio
        )
        .unwrap();
        if let Some(err) = &self.blueprint_error {
            writeln!(out, "blueprint_error={err}").unwrap();
        }
        for note in &self.notes {
            writeln!(out, "note: {note}").unwrap();
        }
        out
    }
}

pub fn audit(g: &Graph, bp: &LayeredBlueprint) -> ConstructionAudit {
    let power = graph_power(g, bp.r).expect("r ≥ 3 for both families");
    let end_layers_separated = match bp.family {
        Family::Gm => true,
        Family::Hm => {
            let last = bp.layer(bp.layer_count() - 1);
            bp.layer(0)
                .all(|u| last.clone().all(|v| !power.power_graph.has_edge(u, v)))
        }
    };
    let mut notes = Vec::new();
    if bp.family == Family::Hm {
        notes.push(format!(
            "matchings removed from N_1 and N_{}; N_2 is a singleton so it cannot carry one",
            bp.r
        ));
    }
    ConstructionAudit {
        family: bp.family,
        r: bp.r,
        m: bp.m,
        claimed_order: bp.claimed_order(),
        actual_order: g.order(),
        claimed_degree: bp.claimed_degree(),
        regular_degree: g.regular_degree(),
        claimed_diameter: bp.claimed_diameter(),
        diameter: g.diameter(),
        claimed_power_edges: bp.claimed_power_edges(),
        power_edges: power.power_edges,
        end_layers_separated,
        ratio: power.ratio().expect("constructions have edges"),
        blueprint_error: bp.check(g).err(),
        notes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub m: usize,
    pub order: usize,
    pub ratio: Rational,
    pub bound: Rational,
    pub gap: Rational,
    pub audit_passed: bool,
}

/// One audited row per `m` for the family matching `r mod 3`, comparing the
/// ratio `e(G^r)/e(G)` with the regular-graph lower bound.
pub fn convergence_table(r: usize, m_values: &[usize]) -> Result<Vec<ConvergenceRow>> {
    let family = Family::for_power(r);
    let bound = regular_ratio_bound(r)?;
    m_values
        .par_iter()
        .map(|&m| {
            let (g, bp) = build(family, r, m)?;
            let audit = audit(&g, &bp);
            Ok(ConvergenceRow {
                m,
                order: g.order(),
                ratio: audit.ratio,
                bound,
                gap: audit.ratio - bound,
                audit_passed: audit.passed(),
            })
        })
        .collect()
}

/// True when every gap is positive and the gaps strictly decrease row to row.
pub fn gaps_positive_and_decreasing(rows: &[ConvergenceRow]) -> bool {
    rows.iter().all(|row| row.gap > Rational::zero())
        && rows.windows(2).all(|w| w[1].gap < w[0].gap)
}
