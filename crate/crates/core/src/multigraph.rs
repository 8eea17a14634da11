// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Finite multigraphs with explicit degree and multiplicity bounds.
//!
//! Vertices are `0..vertex_count` and edges are densely indexed by [`EdgeId`].
//! Every edge is stored with `u < v` and carries a multiplicity index `k`;
//! the parallel edges of a pair are numbered `1..=m`. A graph never changes
//! after it has been built.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::palette::MAX_PALETTE;

/// Index of an edge in [`Multigraph::edges`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One edge `({u, v}, k)` with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub k: u32,
}

/// The deterministic endpoint selectors: `lo` is the smaller vertex index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Endpoints {
    pub lo: usize,
    pub hi: usize,
}

impl Endpoints {
    pub fn contains(self, x: usize) -> bool {
        self.lo == x || self.hi == x
    }

    pub fn as_array(self) -> [usize; 2] {
        [self.lo, self.hi]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {index} is a self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index} references vertex {vertex}, but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("maximum degree {actual} exceeds the declared bound {declared}")]
    DegreeBound { actual: u32, declared: u32 },
    #[error("maximum multiplicity {actual} exceeds the declared bound {declared}")]
    MultiplicityBound { actual: u32, declared: u32 },
    #[error("palette size {size} exceeds the supported maximum {MAX_PALETTE}")]
    PaletteTooLarge { size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    delta: u32,
    pi: u32,
    adjacency: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    /// Builds a graph whose `Δ` and `π` are the tightest true bounds.
    ///
    /// Triples are `(u, v, k)`; orientation is normalised to `u < v` and the
    /// multiplicity indices of each pair are renumbered `1..=m`, ordered by
    /// the supplied `k` and then by position.
    pub fn build(
        vertex_count: usize,
        triples: &[(usize, usize, u32)],
    ) -> Result<Multigraph, GraphError> {
        let mut g = Self::assemble(vertex_count, triples)?;
        g.delta = g.max_degree();
        g.pi = g.max_multiplicity();
        g.check_palette()?;
        Ok(g)
    }

    /// Builds a graph with declared bounds, which must dominate the true ones.
    pub fn with_bounds(
        vertex_count: usize,
        triples: &[(usize, usize, u32)],
        delta: u32,
        pi: u32,
    ) -> Result<Multigraph, GraphError> {
        let mut g = Self::assemble(vertex_count, triples)?;
        let actual_delta = g.max_degree();
        let actual_pi = g.max_multiplicity();
        if actual_delta > delta {
            return Err(GraphError::DegreeBound {
                actual: actual_delta,
                declared: delta,
            });
        }
        if actual_pi > pi {
            return Err(GraphError::MultiplicityBound {
                actual: actual_pi,
                declared: pi,
            });
        }
        g.delta = delta;
        g.pi = pi;
        g.check_palette()?;
        Ok(g)
    }

    fn check_palette(&self) -> Result<(), GraphError> {
        let size = self.palette_size();
        if size > MAX_PALETTE {
            return Err(GraphError::PaletteTooLarge { size });
        }
        Ok(())
    }

    fn assemble(
        vertex_count: usize,
        triples: &[(usize, usize, u32)],
    ) -> Result<Multigraph, GraphError> {
        let mut edges = Vec::with_capacity(triples.len());
        for (index, &(a, b, k)) in triples.iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        index,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop { index, vertex: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            edges.push(Edge { u, v, k });
        }

        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            by_pair.entry((e.u, e.v)).or_default().push(i);
        }
        for members in by_pair.values_mut() {
            members.sort_by_key(|&i| (edges[i].k, i));
            for (rank, &i) in members.iter().enumerate() {
                edges[i].k = rank as u32 + 1;
            }
        }

        let adjacency = build_adjacency(vertex_count, &edges);
        Ok(Multigraph {
            vertex_count,
            edges,
            delta: 0,
            pi: 0,
            adjacency,
        })
    }

    /// Deterministic random multigraph with `Δ ≤ target_delta` and
    /// `π ≤ target_pi`.
    ///
    /// Every vertex starts with `target_delta` free stubs. Over a fixed number
    /// of passes the free stubs are shuffled and paired; an accepted pair gets
    /// a uniformly drawn number of parallel edges, capped by the remaining
    /// multiplicity and stub budget at both ends. The expected edge count is
    /// slightly below `vertex_count * target_delta / 2`: stubs that cannot be
    /// paired legally after the last pass stay unused.
    pub fn generate_random(
        vertex_count: usize,
        target_delta: u32,
        target_pi: u32,
        seed: u64,
    ) -> Multigraph {
        const PASSES: usize = 8;
        if vertex_count < 2 || target_delta == 0 || target_pi == 0 {
            return Multigraph::build(vertex_count, &[]).expect("empty graph is valid");
        }
        let pi = target_pi.min(target_delta);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut free = vec![target_delta; vertex_count];
        let mut multiplicity: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        let mut triples = Vec::new();

        for _ in 0..PASSES {
            let mut stubs: Vec<usize> = Vec::new();
            for (v, &f) in free.iter().enumerate() {
                for _ in 0..f {
                    stubs.push(v);
                }
            }
            if stubs.len() < 2 {
                break;
            }
            stubs.shuffle(&mut rng);
            for pair in stubs.chunks_exact(2) {
                let (a, b) = (pair[0], pair[1]);
                if a == b || free[a] == 0 || free[b] == 0 {
                    continue;
                }
                let key = if a < b { (a, b) } else { (b, a) };
                let used = multiplicity.get(&key).copied().unwrap_or(0);
                let room = (pi - used).min(free[a]).min(free[b]);
                if room == 0 {
                    continue;
                }
                let m = rng.gen_range(1..=room);
                for _ in 0..m {
                    triples.push((key.0, key.1, used + 1));
                }
                multiplicity.insert(key, used + m);
                free[a] -= m;
                free[b] -= m;
            }
        }
        triples.sort_unstable();
        Multigraph::build(vertex_count, &triples).expect("generator respects its own bounds")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> + Clone {
        (0..self.edges.len()).map(EdgeId)
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.0]
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> Endpoints {
        let edge = self.edges[e.0];
        Endpoints {
            lo: edge.u,
            hi: edge.v,
        }
    }

    /// The endpoint of `e` other than `x`, or `None` if `x ∉ e`.
    #[inline]
    pub fn other(&self, e: EdgeId, x: usize) -> Option<usize> {
        let edge = self.edges[e.0];
        if edge.u == x {
            Some(edge.v)
        } else if edge.v == x {
            Some(edge.u)
        } else {
            None
        }
    }

    #[inline]
    pub fn contains(&self, e: EdgeId, x: usize) -> bool {
        let edge = self.edges[e.0];
        edge.u == x || edge.v == x
    }

    /// `true` iff `e` and `f` share a vertex.
    #[inline]
    pub fn intersects(&self, e: EdgeId, f: EdgeId) -> bool {
        let a = self.edges[e.0];
        self.contains(f, a.u) || self.contains(f, a.v)
    }

    /// Edges incident to `x`, in increasing index order.
    #[inline]
    pub fn incident(&self, x: usize) -> &[EdgeId] {
        &self.adjacency[x]
    }

    #[inline]
    pub fn degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    /// Declared degree bound `Δ`.
    #[inline]
    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Declared multiplicity bound `π`.
    #[inline]
    pub fn pi(&self) -> u32 {
        self.pi
    }

    /// Size of the palette `[Δ + π]`.
    #[inline]
    pub fn palette_size(&self) -> usize {
        (self.delta + self.pi) as usize
    }

    pub fn max_degree(&self) -> u32 {
        self.adjacency
            .iter()
            .map(|a| a.len() as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.edges.iter().map(|e| e.k).max().unwrap_or(0)
    }

    /// Number of edges between `a` and `b`.
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.adjacency[a]
            .iter()
            .filter(|&&e| self.other(e, a) == Some(b))
            .count()
    }

    /// Re-derives every structural invariant from the edge list.
    pub fn validate(&self) -> bool {
        if build_adjacency(self.vertex_count, &self.edges) != self.adjacency {
            return false;
        }
        let mut by_pair: BTreeMap<(usize, usize), BTreeSet<u32>> = BTreeMap::new();
        for e in &self.edges {
            if e.u >= e.v || e.v >= self.vertex_count {
                return false;
            }
            by_pair.entry((e.u, e.v)).or_default().insert(e.k);
        }
        let multiplicities_dense = by_pair
            .values()
            .all(|ks| ks.iter().copied().eq(1..=ks.len() as u32));
        let counts_match = by_pair.values().map(|s| s.len()).sum::<usize>() == self.edges.len();
        multiplicities_dense
            && counts_match
            && self.max_degree() <= self.delta
            && self.max_multiplicity() <= self.pi
    }

    /// Vertex distances from the endpoints of `e`, up to `radius`.
    pub fn vertex_ball(&self, e: EdgeId, radius: usize) -> BTreeMap<usize, usize> {
        let ends = self.endpoints(e);
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        for x in ends.as_array() {
            dist.insert(x, 0usize);
            queue.push_back(x);
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            if d == radius {
                continue;
            }
            for &h in self.incident(x) {
                let y = self.other(h, x).expect("incident edge contains x");
                if let alloc::collections::btree_map::Entry::Vacant(slot) = dist.entry(y) {
                    slot.insert(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

fn build_adjacency(vertex_count: usize, edges: &[Edge]) -> Vec<Vec<EdgeId>> {
    let mut adjacency = vec![Vec::new(); vertex_count];
    for (i, e) in edges.iter().enumerate() {
        adjacency[e.u].push(EdgeId(i));
        adjacency[e.v].push(EdgeId(i));
    }
    adjacency
}

/// Distance between `e` and `f` in the line graph: the fewest edges in a
/// chain from `e` to `f`, minus one. Returns `None` when it exceeds `cap`.
pub fn line_graph_distance(g: &Multigraph, e: EdgeId, f: EdgeId, cap: usize) -> Option<usize> {
    if e == f {
        return Some(0);
    }
    if cap == 0 {
        return None;
    }
    // dist(e, f) = 1 + min vertex distance between their endpoints.
    let ball = g.vertex_ball(e, cap - 1);
    let ends = g.endpoints(f);
    ends.as_array()
        .iter()
        .filter_map(|x| ball.get(x))
        .min()
        .map(|d| d + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Multigraph {
        let triples: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
        Multigraph::build(n, &triples).unwrap()
    }

    #[test]
    fn build_fixtures() {
        let p3 = Multigraph::build(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!((p3.delta(), p3.pi()), (2, 1));
        let dbl = Multigraph::build(2, &[(0, 1, 1), (0, 1, 2)]).unwrap();
        assert_eq!((dbl.delta(), dbl.pi()), (2, 2));
        let star = Multigraph::build(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        assert_eq!((star.delta(), star.pi()), (3, 1));
        assert!(p3.validate() && dbl.validate() && star.validate());
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            Multigraph::build(3, &[(0, 1, 1), (2, 2, 1)]),
            Err(GraphError::SelfLoop {
                index: 1,
                vertex: 2
            })
        );
        assert_eq!(
            Multigraph::build(2, &[(0, 5, 1)]),
            Err(GraphError::VertexOutOfRange {
                index: 0,
                vertex: 5,
                vertex_count: 2
            })
        );
    }

    #[test]
    fn build_normalises_orientation_and_multiplicity() {
        let g = Multigraph::build(3, &[(1, 0, 7), (0, 1, 3), (2, 1, 1)]).unwrap();
        assert_eq!(g.edge(EdgeId(0)), Edge { u: 0, v: 1, k: 2 });
        assert_eq!(g.edge(EdgeId(1)), Edge { u: 0, v: 1, k: 1 });
        assert_eq!(g.edge(EdgeId(2)), Edge { u: 1, v: 2, k: 1 });
        assert_eq!(g.multiplicity(1, 0), 2);
        assert!(g.validate());
    }

    #[test]
    fn declared_bounds_must_dominate() {
        assert!(Multigraph::with_bounds(3, &[(0, 1, 1), (1, 2, 1)], 3, 2).is_ok());
        assert_eq!(
            Multigraph::with_bounds(3, &[(0, 1, 1), (1, 2, 1)], 1, 1),
            Err(GraphError::DegreeBound {
                actual: 2,
                declared: 1
            })
        );
    }

    #[test]
    fn generator_is_deterministic_and_bounded() {
        assert_eq!(Multigraph::generate_random(0, 3, 1, 9).edge_count(), 0);
        let a = Multigraph::generate_random(100, 3, 1, 7);
        let b = Multigraph::generate_random(100, 3, 1, 7);
        assert_eq!(a, b);
        assert!(a.delta() <= 3 && a.pi() <= 1);
        assert!(a.edge_count() > 120, "got {}", a.edge_count());
        let m = Multigraph::generate_random(300, 6, 3, 2);
        assert!(m.validate());
        assert!(m.delta() <= 6 && m.pi() <= 3 && m.pi() >= 2);
    }

    #[test]
    fn distances_on_paths() {
        let p3 = path(3);
        assert_eq!(line_graph_distance(&p3, EdgeId(0), EdgeId(1), 10), Some(1));
        assert_eq!(line_graph_distance(&p3, EdgeId(0), EdgeId(0), 0), Some(0));
        let p8 = path(8);
        assert_eq!(line_graph_distance(&p8, EdgeId(0), EdgeId(6), 10), Some(6));
        assert_eq!(line_graph_distance(&p8, EdgeId(0), EdgeId(6), 5), None);
        assert_eq!(line_graph_distance(&p8, EdgeId(0), EdgeId(6), 6), Some(6));
    }
}
