//! Immutable undirected graphs with optional loops, and the distance
//! primitives everything else is built on.
//!
//! Vertices are dense indices `0..n`. Every vertex keeps its neighbourhood
//! twice: as a fixed-width bit set (for fast unions and membership tests) and
//! as a sorted list (for BFS). A loop at `v` is stored as `v ∈ N(v)`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    loops_allowed: bool,
    adjacency: Vec<FixedBitSet>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Repeated pairs (in either
    /// orientation) collapse to a single edge.
    pub fn new(n: usize, edges: &[(usize, usize)], loops_allowed: bool) -> Result<Self> {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v && !loops_allowed {
                return Err(Error::LoopNotAllowed(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows, loops_allowed))
    }

    /// Caller guarantees the rows are symmetric and loop-free when
    /// `loops_allowed` is false.
    pub(crate) fn from_rows(adjacency: Vec<FixedBitSet>, loops_allowed: bool) -> Self {
        let neighbors = adjacency.iter().map(|row| row.ones().collect()).collect();
        Self {
            loops_allowed,
            adjacency,
            neighbors,
        }
    }

    pub fn empty(n: usize, loops_allowed: bool) -> Self {
        Self::from_rows(vec![FixedBitSet::with_capacity(n); n], loops_allowed)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops_allowed
    }

    /// Sorted neighbours of `v`, including `v` itself when it carries a loop.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn adjacency(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.adjacency[v].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.order()).filter(|&v| self.has_loop(v)).count()
    }

    /// Number of edges, counting a loop as a single edge.
    pub fn edge_count(&self) -> usize {
        let degree_sum: usize = self.neighbors.iter().map(Vec::len).sum();
        (degree_sum + self.loop_count()) / 2
    }

    /// Edges as pairs `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    /// Minimum degree; zero for the graph with no vertices.
    pub fn min_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree();
        (self.max_degree() == d).then_some(d)
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree().is_some()
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.bfs_distances(0).all_reachable()
    }

    /// Union of the neighbourhoods of the given vertices.
    pub fn neighborhood_of(&self, vertices: &[usize]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.order());
        for &v in vertices {
            out.union_with(&self.adjacency[v]);
        }
        out
    }

    /// Returns a copy with a loop added at every vertex.
    pub fn add_loops(&self) -> Result<Self> {
        if self.loops_allowed && self.loop_count() > 0 {
            return Err(Error::AlreadyLooped);
        }
        let rows = self
            .adjacency
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut row = row.clone();
                row.insert(v);
                row
            })
            .collect();
        Ok(Self::from_rows(rows, true))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            })
        }
    }

    /// Writes into `reached` every vertex adjacent to the frontier that is not
    /// yet in `seen`. High-degree vertices contribute their whole bit-set
    /// row; low-degree ones are walked through their neighbour lists.
    fn expand(&self, frontier: &[usize], seen: &FixedBitSet, reached: &mut FixedBitSet) {
        let words = self.order().div_ceil(64);
        reached.clear();
        for &u in frontier {
            if self.neighbors[u].len() > words {
                reached.union_with(&self.adjacency[u]);
            } else {
                for &w in &self.neighbors[u] {
                    reached.insert(w);
                }
            }
        }
        reached.difference_with(seen);
    }

    /// Level-synchronous BFS from `sources`, at most `depth` levels. Calls
    /// `visit(level, vertices)` for each newly reached level, starting at 1.
    fn sweep(
        &self,
        sources: &[usize],
        depth: usize,
        mut visit: impl FnMut(usize, &[usize]),
    ) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut frontier = Vec::with_capacity(sources.len());
        for &s in sources {
            if !seen.put(s) {
                frontier.push(s);
            }
        }
        let mut reached = FixedBitSet::with_capacity(self.order());
        for level in 1..=depth {
            self.expand(&frontier, &seen, &mut reached);
            frontier.clear();
            frontier.extend(reached.ones());
            if frontier.is_empty() {
                break;
            }
            seen.union_with(&reached);
            visit(level, &frontier);
        }
        seen
    }

    /// Exact hop distances from `source`.
    ///
    /// # Panics
    /// If `source` is not a vertex.
    pub fn bfs_distances(&self, source: usize) -> DistanceVector {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        self.sweep(&[source], usize::MAX, |level, vs| {
            for &v in vs {
                dist[v] = Some(level);
            }
        });
        DistanceVector { source, dist }
    }

    /// Vertices within distance `depth` of `source`, as a bit set. The
    /// source itself is always included.
    pub fn ball(&self, source: usize, depth: usize) -> FixedBitSet {
        self.sweep(&[source], depth, |_, _| {})
    }

    /// `N^r(X)`: every vertex at distance at most `r` from the set `X`.
    pub fn r_neighborhood(&self, set: &[usize], r: usize) -> Result<FixedBitSet> {
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for &v in set {
            self.check_vertex(v)?;
        }
        Ok(self.sweep(set, r, |_, _| {}))
    }

    /// Largest distance from `v`, or `None` if some vertex is unreachable.
    pub fn eccentricity(&self, v: usize) -> Option<usize> {
        let mut ecc = 0;
        let seen = self.sweep(&[v], usize::MAX, |level, _| ecc = level);
        (seen.count_ones(..) == self.order()).then_some(ecc)
    }

    /// Largest pairwise distance, or `None` for a disconnected graph.
    pub fn diameter(&self) -> Option<usize> {
        (0..self.order())
            .into_par_iter()
            .map(|v| self.eccentricity(v))
            .try_reduce(|| 0, |a, b| Some(a.max(b)))
    }

    /// Shortest path from `x` to `y`. Each vertex on the path is preceded by
    /// its lowest-numbered neighbour one step closer to `x`.
    pub fn find_geodesic(&self, x: usize, y: usize) -> Result<Geodesic> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let dist = self.bfs_distances(x);
        Geodesic::trace(self, &dist, y).ok_or(Error::Disconnected(x, y))
    }

    /// A geodesic of length exactly `k` starting at `v`, ending at the
    /// lowest-numbered vertex at distance `k`, if any vertex is that far.
    pub fn geodesic_from(&self, v: usize, k: usize) -> Option<Geodesic> {
        let dist = self.bfs_distances(v);
        let target = (0..self.order()).find(|&w| dist.get(w) == Some(k))?;
        Geodesic::trace(self, &dist, target)
    }
}

/// Distances from a single source; `None` marks an unreachable vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVector {
    source: usize,
    dist: Vec<Option<usize>>,
}

impl DistanceVector {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.dist[v]
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.dist
    }

    pub fn all_reachable(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    pub fn eccentricity(&self) -> Option<usize> {
        self.dist
            .iter()
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// Number of vertices at distance at most `r`.
    pub fn count_within(&self, r: usize) -> usize {
        self.dist.iter().filter(|d| matches!(d, Some(d) if *d <= r)).count()
    }
}

/// A shortest path, stored as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geodesic {
    vertices: Vec<usize>,
}

impl Geodesic {
    /// Walks back from `target` to the source of `dist`, always stepping to
    /// the lowest-numbered neighbour one level closer.
    pub(crate) fn trace(g: &Graph, dist: &DistanceVector, target: usize) -> Option<Self> {
        let mut level = dist.get(target)?;
        let mut vertices = vec![target];
        let mut cur = target;
        while level > 0 {
            cur = *g
                .neighbors(cur)
                .iter()
                .find(|&&w| dist.get(w) == Some(level - 1))
                .expect("BFS levels are contiguous");
            vertices.push(cur);
            level -= 1;
        }
        vertices.reverse();
        Some(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges on the path.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    /// `N(P)`: union of the neighbourhoods of the path's vertices.
    pub fn neighborhood(&self, g: &Graph) -> FixedBitSet {
        g.neighborhood_of(&self.vertices)
    }

    /// Checks adjacency of consecutive vertices, distinctness, and that the
    /// length equals the endpoint distance.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let adjacent = self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]));
        let mut seen = FixedBitSet::with_capacity(g.order());
        let distinct = self.vertices.iter().all(|&v| !seen.put(v));
        adjacent
            && distinct
            && g.bfs_distances(self.source()).get(self.target()) == Some(self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges, false).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges, false).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges, false).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges, false).unwrap()
    }

    fn set(bits: &FixedBitSet) -> Vec<usize> {
        bits.ones().collect()
    }

    #[test]
    fn build_path_and_collapse_duplicates() {
        let g = Graph::new(3, &[(0, 1), (1, 2)], false).unwrap();
        assert_eq!((0..3).map(|v| g.degree(v)).collect::<Vec<_>>(), [1, 2, 1]);
        let g = Graph::new(2, &[(0, 1), (1, 0)], false).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn loop_is_self_membership() {
        let g = Graph::new(1, &[(0, 0)], true).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.neighbors(0), &[0]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::new(2, &[(0, 2)], false),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::new(2, &[(1, 1)], false), Err(Error::LoopNotAllowed(1)));
    }

    #[test]
    fn bfs_examples() {
        let d = cycle(5).bfs_distances(0);
        assert_eq!(d.as_slice(), &[Some(0), Some(1), Some(2), Some(2), Some(1)]);
        let d = path(5).bfs_distances(0);
        assert_eq!(d.as_slice(), &[Some(0), Some(1), Some(2), Some(3), Some(4)]);
        let d = Graph::empty(2, false).bfs_distances(0);
        assert_eq!(d.as_slice(), &[Some(0), None]);
    }

    #[test]
    fn loops_do_not_change_distances() {
        let g = cycle(7);
        let looped = g.add_loops().unwrap();
        for v in 0..7 {
            assert_eq!(g.bfs_distances(v), looped.bfs_distances(v));
        }
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(path(5).diameter(), Some(4));
        assert_eq!(complete(4).diameter(), Some(1));
        assert_eq!(petersen().diameter(), Some(2));
        assert_eq!(Graph::empty(3, false).diameter(), None);
        assert_eq!(Graph::empty(1, false).diameter(), Some(0));
    }

    #[test]
    fn r_neighborhood_examples() {
        let c9 = cycle(9);
        assert_eq!(set(&c9.r_neighborhood(&[0], 2).unwrap()), [0, 1, 2, 7, 8]);
        assert_eq!(c9.r_neighborhood(&[3], 4).unwrap().count_ones(..), 9);
        assert_eq!(set(&path(5).r_neighborhood(&[0, 4], 1).unwrap()), [0, 1, 3, 4]);
        assert_eq!(c9.r_neighborhood(&[], 1), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn find_geodesic_examples() {
        let p = cycle(5).find_geodesic(0, 2).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2]);
        assert_eq!(p.len(), 2);
        let p = cycle(5).find_geodesic(3, 3).unwrap();
        assert_eq!(p.vertices(), &[3]);
        assert!(p.is_empty());
        assert_eq!(complete(4).find_geodesic(0, 3).unwrap().vertices(), &[0, 3]);
        assert_eq!(
            Graph::empty(2, false).find_geodesic(0, 1),
            Err(Error::Disconnected(0, 1))
        );
    }

    #[test]
    fn geodesic_from_examples() {
        assert_eq!(path(5).geodesic_from(0, 3).unwrap().vertices(), &[0, 1, 2, 3]);
        assert_eq!(complete(4).geodesic_from(0, 2), None);
        let p = cycle(9).geodesic_from(0, 4).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2, 3, 4]);
        assert!(p.is_valid_in(&cycle(9)));
    }

    #[test]
    fn degree_queries() {
        let c9 = cycle(9);
        assert_eq!(c9.min_degree(), 2);
        assert_eq!(c9.regular_degree(), Some(2));
        assert!(c9.is_connected());
        assert_eq!(c9.edge_count(), 9);

        let tri = Graph::new(3, &[(0, 1), (1, 2), (0, 2), (0, 0), (1, 1), (2, 2)], true).unwrap();
        assert_eq!(tri.min_degree(), 3);
        assert_eq!(tri.edge_count(), 6);

        let e4 = Graph::empty(4, false);
        assert!(!e4.is_connected());
        assert_eq!(e4.edge_count(), 0);
        assert!(!path(3).is_regular());
    }

    #[test]
    fn add_loops_rejects_looped_input() {
        let g = cycle(5).add_loops().unwrap();
        assert_eq!(g.add_loops(), Err(Error::AlreadyLooped));
        // loops allowed but none present is fine
        assert!(Graph::empty(2, true).add_loops().is_ok());
    }
}
