//! Simple undirected graphs: automorphisms and isomorphism by partition
//! refinement, strongly regular and distance-regular parameters, text I/O.

mod io;
mod params;
mod refine;
mod search;

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::group::{GroupError, Perm};

pub use params::{drg_params, srg_params, DrgFailure, IntersectionArray, SrgFailure, SrgParams};
pub use search::{automorphism_group, automorphism_generators, graph_isomorphism, Automorphisms};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("coloring has {found} entries for {expected} vertices")]
    ColoringLength { expected: usize, found: usize },
    #[error("orbit-length product {product} disagrees with the enumerated order {enumerated}")]
    OrderMismatch { product: u128, enumerated: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    lists: Vec<Vec<u32>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![FixedBitSet::with_capacity(n); n], lists: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Graph on `0..n` with `a ~ b` iff `adjacent(a, b)`, for `a < b`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Graph::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                if adjacent(a, b) {
                    g.add_edge(a, b).expect("in range, no loops");
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        let n = self.order();
        for v in [a, b] {
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
        }
        if a == b {
            return Err(GraphError::Loop(a));
        }
        if !self.adj[a].put(b) {
            self.adj[b].insert(a);
            self.lists[a].push(b as u32);
            self.lists[b].push(a as u32);
        }
        Ok(())
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.lists.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.lists[v].len()
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.lists[v]
    }

    pub fn neighbour_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn common_neighbours(&self, a: usize, b: usize) -> usize {
        self.adj[a].intersection(&self.adj[b]).count()
    }

    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.lists[x] {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x] + 1;
                    queue.push_back(y as usize);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Whether `p` maps edges onto edges.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.order() && is_isomorphism(self, self, p)
    }

    /// The graph with vertex `v` renamed `p(v)`.
    pub fn relabel(&self, p: &Perm) -> Graph {
        let mut g = Graph::empty(self.order());
        for a in 0..self.order() {
            for &b in &self.lists[a] {
                if (b as usize) > a {
                    g.add_edge(p.apply(a), p.apply(b as usize)).expect("bijection");
                }
            }
        }
        g
    }

    /// Subgraph induced on `vertices`, renumbered by position.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j]))
    }
}

/// Whether `p` maps `g1` onto `g2`.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, p: &Perm) -> bool {
    g1.order() == g2.order()
        && g1.edge_count() == g2.edge_count()
        && (0..g1.order()).all(|a| g1.lists[a].iter().all(|&b| g2.has_edge(p.apply(a), p.apply(b as usize))))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn petersen() -> Graph {
        // 2-subsets of {0..4}, adjacent when disjoint.
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        Graph::from_fn(10, |i, j| {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            a != c && a != d && b != c && b != d
        })
    }
}
