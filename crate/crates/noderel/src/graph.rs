//! Explicit simple undirected graphs with bitset adjacency, and the graph
//! constructions used throughout: paths, cliques, clique substitution, and
//! one-vertex extensions.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A simple undirected graph on vertices 0..n, n >= 1, with per-vertex
/// neighbor bitsets. Symmetric, loop-free adjacency is maintained by
/// construction; values are immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    fn empty_of_order(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::new(n); n],
        })
    }

    /// The path P_n with edges {i, i+1}.
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Self::empty_of_order(n)?;
        for i in 0..n.saturating_sub(1) {
            g.add_edge_unchecked(i, i + 1);
        }
        Ok(g)
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Self::empty_of_order(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge_unchecked(u, v);
            }
        }
        Ok(g)
    }

    /// Graph with exactly the listed edges. Duplicate edges collapse
    /// silently; self-loops and out-of-range endpoints are errors.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Self::empty_of_order(n)?;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }

    /// Edges as (u, v) pairs with u < v, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The clique substitution G[K_l]: vertex v becomes the block
    /// {v*l, ..., v*l + l - 1}, each block is a clique, and blocks of
    /// adjacent vertices are completely joined. Requires l >= 1.
    pub fn lex_product_clique(&self, l: usize) -> Graph {
        assert!(l >= 1, "clique size must be at least 1");
        let mut g = Self::empty_of_order(self.n * l).expect("order >= 1");
        for v in 0..self.n {
            for a in 0..l {
                for b in (a + 1)..l {
                    g.add_edge_unchecked(v * l + a, v * l + b);
                }
            }
        }
        for (u, v) in self.edges() {
            for a in 0..l {
                for b in 0..l {
                    g.add_edge_unchecked(u * l + a, v * l + b);
                }
            }
        }
        g
    }

    /// G with one new vertex n of degree 0.
    pub fn add_isolated(&self) -> Graph {
        let mut g = Self::empty_of_order(self.n + 1).expect("order >= 1");
        for (u, v) in self.edges() {
            g.add_edge_unchecked(u, v);
        }
        g
    }

    /// G with one new vertex n adjacent to every old vertex.
    pub fn add_universal(&self) -> Graph {
        let mut g = self.add_isolated();
        for v in 0..self.n {
            g.add_edge_unchecked(v, self.n);
        }
        g
    }

    /// True iff s is nonempty and the subgraph induced by s is connected.
    pub fn induced_connected(&self, s: &VertexSet) -> bool {
        assert_eq!(s.capacity(), self.n, "vertex set capacity mismatch");
        let Some(start) = s.iter().next() else {
            return false;
        };
        if let Some(masks) = self.adjacency_masks() {
            let sm = s.words()[0];
            return connected_mask(&masks, sm);
        }
        let nw = self.n.div_ceil(64);
        let mut visited = VertexSet::new(self.n);
        visited.insert(start);
        let mut frontier = visited.clone();
        loop {
            let mut expand = vec![0u64; nw];
            for v in frontier.iter() {
                for (e, w) in expand.iter_mut().zip(self.adj[v].words()) {
                    *e |= w;
                }
            }
            let mut any = false;
            let next_words: Vec<u64> = expand
                .iter()
                .zip(s.words().iter().zip(visited.words()))
                .map(|(&e, (&sw, &vw))| e & sw & !vw)
                .collect();
            for (vw, &nw2) in visited.words_mut().iter_mut().zip(&next_words) {
                if nw2 != 0 {
                    any = true;
                    *vw |= nw2;
                }
            }
            if !any {
                break;
            }
            frontier = VertexSet::new(self.n);
            for (fw, &nw2) in frontier.words_mut().iter_mut().zip(&next_words) {
                *fw = nw2;
            }
        }
        visited
            .words()
            .iter()
            .zip(s.words())
            .all(|(&vw, &sw)| vw == sw)
    }

    /// Convenience wrapper over [`Graph::induced_connected`]; panics on an
    /// out-of-range vertex.
    pub fn induced_connected_by<I: IntoIterator<Item = usize>>(&self, s: I) -> bool {
        self.induced_connected(&VertexSet::from_indices(self.n, s))
    }

    pub fn is_connected(&self) -> bool {
        self.induced_connected(&VertexSet::full(self.n))
    }

    /// One adjacency word per vertex, available when n <= 64. This is the
    /// fast path for subset enumeration and Monte-Carlo trials.
    pub(crate) fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(self.adj.iter().map(|s| s.words()[0]).collect())
    }
}

/// Flood fill from the lowest bit of s over single-word adjacency masks.
pub(crate) fn connected_mask(adj: &[u64], s: u64) -> bool {
    if s == 0 {
        return false;
    }
    let start = s & s.wrapping_neg();
    let mut visited = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut expand = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            expand |= adj[v];
        }
        frontier = expand & s & !visited;
        visited |= frontier;
    }
    visited == s
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
