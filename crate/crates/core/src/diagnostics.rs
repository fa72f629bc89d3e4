//! Executable audit of the sufficiency argument for loops-allowed graphs.
//!
//! For `r ≡ 0 (mod 3)`, `r ≥ 6`, a vertex `v` is *sufficient* when
//! `|N^r(v)| ≥ (r/3 + 1)·δ`. Insufficient vertices are grouped by the
//! relation `d(x, y) ≤ 2`, and eight claims about geodesics, insufficient
//! vertices and their classes are checked tuple by tuple on a concrete
//! graph. The last one is the summation inequality
//!
//! ```text
//! 2e(G^r) − B(r)·δ·n − n ≥ Σ_i (|X_i| − δ/2)²,   B(r) = (r+3)/3 − 3/(2(r+3))
//! ```
//!
//! A claim that fails carries a witness that can be re-checked with the
//! primitives in [`crate::graph`].

use std::fmt::{self, Write as _};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::regular_ratio_bound;
use crate::error::{Error, Result};
use crate::graph::{DistanceVector, Geodesic, Graph};
use crate::power::power_edge_count;
use crate::rational::Rational;

fn check_hypotheses(g: &Graph, r: usize) -> Result<()> {
    if !g.loops_allowed() {
        return Err(Error::Hypothesis("graph must allow loops".into()));
    }
    if !r.is_multiple_of(3) || r < 6 {
        return Err(Error::Hypothesis(format!("need r ≡ 0 mod 3 and r ≥ 6, got r={r}")));
    }
    common_hypotheses(g, r)
}

fn common_hypotheses(g: &Graph, r: usize) -> Result<()> {
    match g.diameter() {
        None => Err(Error::Hypothesis("graph is disconnected".into())),
        Some(d) if d < r => Err(Error::Hypothesis(format!("diameter {d} < r={r}"))),
        Some(_) => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SufficiencyMap {
    pub r: usize,
    pub delta: usize,
    /// `(r/3 + 1)·δ`
    pub threshold: usize,
    /// `|N^r(v)|` for every vertex.
    pub ball_sizes: Vec<usize>,
}

impl SufficiencyMap {
    pub fn is_sufficient(&self, v: usize) -> bool {
        self.ball_sizes[v] >= self.threshold
    }

    pub fn insufficient(&self) -> Vec<usize> {
        (0..self.ball_sizes.len())
            .filter(|&v| !self.is_sufficient(v))
            .collect()
    }
}

pub fn classify(g: &Graph, r: usize) -> Result<SufficiencyMap> {
    check_hypotheses(g, r)?;
    let delta = g.min_degree();
    let ball_sizes = (0..g.order())
        .into_par_iter()
        .map(|v| g.ball(v, r).count_ones(..))
        .collect();
    Ok(SufficiencyMap {
        r,
        delta,
        threshold: (r / 3 + 1) * delta,
        ball_sizes,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InsufficientPartition {
    /// Sorted classes, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
}

impl InsufficientPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&v).is_ok())
    }

    /// `d(X_i, X_j)` for every pair of classes `i < j`.
    pub fn class_distances(&self, g: &Graph) -> Vec<((usize, usize), usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let reach = multi_source_distances(g, &self.classes[i]);
            for j in i + 1..self.len() {
                let d = self.classes[j]
                    .iter()
                    .filter_map(|&v| reach[v])
                    .min()
                    .expect("connected graph");
                out.push(((i, j), d));
            }
        }
        out
    }
}

fn multi_source_distances(g: &Graph, sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    let mut frontier = Vec::new();
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            frontier.push(s);
        }
    }
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(depth);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

fn all_pairs(g: &Graph) -> Vec<DistanceVector> {
    (0..g.order())
        .into_par_iter()
        .map(|v| g.bfs_distances(v))
        .collect()
}

fn partition_with(
    map: &SufficiencyMap,
    dist: &[DistanceVector],
) -> Result<InsufficientPartition> {
    let d = |x: usize, y: usize| dist[x].get(y).unwrap_or(usize::MAX);
    let bad = map.insufficient();
    let mut class_id: Vec<Option<usize>> = vec![None; map.ball_sizes.len()];
    let mut classes = Vec::new();
    for &seed in &bad {
        if class_id[seed].is_some() {
            continue;
        }
        let id = classes.len();
        class_id[seed] = Some(id);
        let mut members = vec![seed];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &y in &bad {
                if class_id[y].is_none() && d(x, y) <= 2 {
                    class_id[y] = Some(id);
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }

    // every class must be a clique of the relation
    for class in &classes {
        for (a, &x) in class.iter().enumerate() {
            for &z in &class[a + 1..] {
                if d(x, z) > 2 {
                    return Err(transitivity_witness(class, x, z, &d));
                }
            }
        }
    }
    Ok(InsufficientPartition { classes })
}

/// A shortest chain `x = v0, v1, v2, ...` in the relation graph has
/// `d(v0, v2) > 2`, so `(v0, v1, v2)` breaks transitivity.
fn transitivity_witness(
    class: &[usize],
    x: usize,
    z: usize,
    d: &impl Fn(usize, usize) -> usize,
) -> Error {
    let mut parent = vec![None; class.len()];
    let pos = |v: usize| class.binary_search(&v).unwrap();
    let mut queue = std::collections::VecDeque::from([x]);
    parent[pos(x)] = Some(x);
    while let Some(u) = queue.pop_front() {
        if u == z {
            break;
        }
        for &w in class {
            if parent[pos(w)].is_none() && d(u, w) <= 2 {
                parent[pos(w)] = Some(u);
                queue.push_back(w);
            }
        }
    }
    let mut chain = vec![z];
    while *chain.last().unwrap() != x {
        chain.push(parent[pos(*chain.last().unwrap())].unwrap());
    }
    chain.reverse();
    Error::TransitivityViolation {
        x: chain[0],
        y: chain[1],
        z: chain[2],
    }
}

/// Groups insufficient vertices by `d(x, y) ≤ 2`. Fails with a witness
/// triple if the relation is not transitive.
pub fn partition_insufficient(map: &SufficiencyMap, g: &Graph) -> Result<InsufficientPartition> {
    partition_with(map, &all_pairs(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClaimId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Vacuous,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Vacuous => "vacuous",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub id: ClaimId,
    pub status: ClaimStatus,
    /// Number of qualifying tuples examined.
    pub checked: usize,
    pub witness: Option<Vec<usize>>,
    /// `(lhs, rhs)` of the checked inequality with the least slack.
    pub tightest: Option<(Rational, Rational)>,
}

impl ClaimOutcome {
    pub fn to_line(&self) -> String {
        let mut line = format!("{} {}", self.id, self.status);
        if let Some(w) = &self.witness {
            let vs: Vec<String> = w.iter().map(usize::to_string).collect();
            write!(line, " witness={}", vs.join(",")).unwrap();
        }
        line
    }
}

/// Tracks the first failure and the tightest instance of one claim.
struct Tally {
    id: ClaimId,
    checked: usize,
    witness: Option<Vec<usize>>,
    tightest: Option<(Rational, Rational)>,
}

impl Tally {
    fn new(id: ClaimId) -> Self {
        Self {
            id,
            checked: 0,
            witness: None,
            tightest: None,
        }
    }

    /// Records one instance of `lhs ≥ rhs`.
    fn inequality(&mut self, lhs: Rational, rhs: Rational, witness: impl FnOnce() -> Vec<usize>) {
        self.checked += 1;
        if self.tightest.is_none_or(|(l, r)| lhs - rhs < l - r) {
            self.tightest = Some((lhs, rhs));
        }
        if lhs < rhs && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn predicate(&mut self, ok: bool, witness: impl FnOnce() -> Vec<usize>) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self.tightest = match (self.tightest, other.tightest) {
            (Some(a), Some(b)) => Some(if b.0 - b.1 < a.0 - a.1 { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }

    fn finish(self) -> ClaimOutcome {
        let status = if self.witness.is_some() {
            ClaimStatus::Fail
        } else if self.checked == 0 {
            ClaimStatus::Vacuous
        } else {
            ClaimStatus::Pass
        };
        ClaimOutcome {
            id: self.id,
            status,
            checked: self.checked,
            witness: self.witness,
            tightest: self.tightest,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    /// Pairwise claims are checked on every pair up to this order.
    pub exhaustive_limit: usize,
    /// Number of uniformly sampled pairs above the limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            exhaustive_limit: 300,
            samples: 100_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimsReport {
    pub r: usize,
    pub order: usize,
    pub delta: usize,
    /// Set when the graph does not meet the audit's hypotheses.
    pub inapplicable: Option<String>,
    pub exhaustive: bool,
    pub classes: Vec<Vec<usize>>,
    pub claims: Vec<ClaimOutcome>,
}

impl ClaimsReport {
    pub fn claim(&self, id: ClaimId) -> Option<&ClaimOutcome> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn is_applicable(&self) -> bool {
        self.inapplicable.is_none()
    }

    /// Applicable and no claim failed.
    pub fn all_pass(&self) -> bool {
        self.is_applicable() && self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }

    pub fn to_text(&self) -> String {
        match &self.inapplicable {
            Some(reason) => format!("inapplicable reason={reason}\n"),
            None => self.claims.iter().map(|c| c.to_line() + "\n").collect(),
        }
    }
}

pub fn audit_claims(g: &Graph, r: usize) -> ClaimsReport {
    audit_claims_with(g, r, &AuditOptions::default())
}

pub fn audit_claims_with(g: &Graph, r: usize, options: &AuditOptions) -> ClaimsReport {
    let n = g.order();
    let map = match classify(g, r) {
        Ok(map) => map,
        Err(err) => {
            return ClaimsReport {
                r,
                order: n,
                delta: g.min_degree(),
                inapplicable: Some(err.to_string()),
                exhaustive: false,
                classes: Vec::new(),
                claims: Vec::new(),
            }
        }
    };
    let delta = map.delta;
    let dist = all_pairs(g);
    let d = |x: usize, y: usize| dist[x].get(y).expect("connected");
    let suff = |v: usize| map.is_sufficient(v);
    let q = |v: usize| Rational::from(v);

    let exhaustive = n <= options.exhaustive_limit;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        (0..options.samples)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect()
    };

    // C1, C3, C4, C5 range over vertex pairs
    let pairwise = pairs
        .par_iter()
        .fold(
            || {
                [ClaimId::C1, ClaimId::C3, ClaimId::C4, ClaimId::C5].map(Tally::new)
            },
            |[mut c1, mut c3, mut c4, mut c5], &(x, y)| {
                let k = d(x, y);
                let path = Geodesic::trace(g, &dist[x], y).expect("connected");
                let covered = path.neighborhood(g).count_ones(..);
                c1.inequality(q(covered), q((k / 3 + 1) * delta), || path.vertices().to_vec());

                if x != y {
                    let either = suff(x) || suff(y);
                    if 2 < k && k < r {
                        c3.predicate(either, || vec![x, y]);
                    }
                    if k == r || k == r + 1 {
                        let far = (0..n).find(|&z| d(z, x) + 1 >= r && d(z, y) + 1 >= r);
                        if let Some(z) = far {
                            c4.predicate(either, || vec![x, y, z]);
                        }
                    }
                    if k == r {
                        c5.predicate(either, || vec![x, y]);
                    }
                }
                [c1, c3, c4, c5]
            },
        )
        .reduce(
            || [ClaimId::C1, ClaimId::C3, ClaimId::C4, ClaimId::C5].map(Tally::new),
            |a, b| {
                let [a1, a3, a4, a5] = a;
                let [b1, b3, b4, b5] = b;
                [a1.merge(b1), a3.merge(b3), a4.merge(b4), a5.merge(b5)]
            },
        );
    let [c1, c3, c4, c5] = pairwise;

    let insufficient = map.insufficient();
    let mut c2 = Tally::new(ClaimId::C2);
    for &v in &insufficient {
        let ecc = dist[v].eccentricity().expect("connected");
        c2.inequality(q(ecc), q(r + 1), || vec![v]);
    }

    let mut c6 = Tally::new(ClaimId::C6);
    let mut c7 = Tally::new(ClaimId::C7);
    let mut c8 = Tally::new(ClaimId::C8);
    let power_edges = power_edge_count(g, r).expect("r ≥ 6");
    let b = regular_ratio_bound(r).expect("r ≥ 6");
    let half_delta = Rational::new(delta as i128, 2);
    let lhs8 = q(2 * power_edges) - b * q(delta) * q(n) - q(n);

    let classes = match partition_with(&map, &dist) {
        Ok(partition) => {
            let l = partition.len();
            if l > 0 {
                let rhs = Rational::new((r as i128) + 3, 6) * q(delta) * q(l);
                c6.inequality(q(n), rhs, || partition.classes.iter().map(|c| c[0]).collect());
            }
            for class in &partition.classes {
                for &x in class {
                    let rhs = q(class.len()) + q(r / 3) * q(delta);
                    c7.inequality(q(map.ball_sizes[x]), rhs, || vec![x]);
                }
            }
            let rhs8: Rational = partition
                .classes
                .iter()
                .map(|c| (q(c.len()) - half_delta).square())
                .sum();
            c8.inequality(lhs8, rhs8, || insufficient.clone());
            partition.classes
        }
        Err(Error::TransitivityViolation { x, y, z }) => {
            for tally in [&mut c6, &mut c7, &mut c8] {
                tally.predicate(false, || vec![x, y, z]);
            }
            Vec::new()
        }
        Err(other) => unreachable!("partition only fails on transitivity: {other}"),
    };

    ClaimsReport {
        r,
        order: n,
        delta,
        inapplicable: None,
        exhaustive,
        classes,
        claims: [c1, c2, c3, c4, c5, c6, c7, c8].into_iter().map(Tally::finish).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EasyCaseCertificate {
    /// A geodesic of length `r − 1` from the vertex; its neighbourhood lies
    /// inside `N^r(v)`.
    Geodesic(Geodesic),
    /// Every vertex is within distance `r − 1`, so `N^r(v)` is the whole
    /// graph.
    WholeGraph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EasyCaseWitness {
    pub vertex: usize,
    pub certificate: EasyCaseCertificate,
    /// Size of the certified subset of `N^r(v)`.
    pub certified_count: usize,
    /// `⌈r/3⌉·δ`
    pub threshold: usize,
    /// The certified set was re-checked to lie inside `N^r(v)`.
    pub contained: bool,
}

impl EasyCaseWitness {
    pub fn holds(&self) -> bool {
        self.contained && self.certified_count >= self.threshold
    }
}

/// For `r ≢ 0 (mod 3)`: certifies `|N^r(v)| ≥ ⌈r/3⌉·δ` at every vertex,
/// either by a length `r − 1` geodesic from `v` or because `v` reaches the
/// whole graph.
pub fn easy_case_witness(g: &Graph, r: usize) -> Result<Vec<EasyCaseWitness>> {
    if !g.loops_allowed() {
        return Err(Error::Hypothesis("graph must allow loops".into()));
    }
    if r.is_multiple_of(3) || r < 4 {
        return Err(Error::Hypothesis(format!("need r ≢ 0 mod 3 and r ≥ 4, got r={r}")));
    }
    common_hypotheses(g, r)?;
    let threshold = r.div_ceil(3) * g.min_degree();
    Ok((0..g.order())
        .into_par_iter()
        .map(|v| {
            let ball = g.ball(v, r);
            let (certificate, certified): (_, FixedBitSet) = match g.geodesic_from(v, r - 1) {
                Some(path) => {
                    let nbhd = path.neighborhood(g);
                    (EasyCaseCertificate::Geodesic(path), nbhd)
                }
                None => {
                    let mut all = FixedBitSet::with_capacity(g.order());
                    all.insert_range(..);
                    (EasyCaseCertificate::WholeGraph, all)
                }
            };
            EasyCaseWitness {
                vertex: v,
                certificate,
                certified_count: certified.count_ones(..),
                threshold,
                contained: certified.is_subset(&ball),
            }
        })
        .collect())
}
