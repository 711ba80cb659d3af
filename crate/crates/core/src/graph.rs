//! Immutable simple graphs stored as bitset adjacency rows.

use std::collections::VecDeque;
use std::fmt;

use crate::error::GraphError;

/// A fixed-size set of vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(n: usize) -> Self {
        Bitset { words: vec![0; n.div_ceil(64)] }
    }

    pub fn from_iter(n: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bitset::new(n);
        for i in it {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn intersect_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= !b;
        }
    }

    pub fn iter(&self) -> BitIter<'_> {
        iter_words(&self.words)
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

pub fn iter_words(words: &[u64]) -> BitIter<'_> {
    BitIter { words, idx: 0, cur: words.first().copied().unwrap_or(0) }
}

#[inline]
pub fn count_common(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph { n, words, rows: vec![0; n * words], labels: None }
    }

    /// Builds a graph from an edge list; loops and repeated edges are ignored.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u != v {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from a symmetric adjacency predicate evaluated on pairs `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.rows[u * self.words + (v >> 6)] |= 1 << (v & 63);
        self.rows[v * self.words + (u >> 6)] |= 1 << (u & 63);
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + (v >> 6)] >> (v & 63) & 1 == 1
    }

    pub fn neighbours(&self, u: usize) -> BitIter<'_> {
        iter_words(self.row(u))
    }

    pub fn neighbour_set(&self, u: usize) -> Bitset {
        Bitset { words: self.row(u).to_vec() }
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    /// Common valency, or `None` for irregular graphs.
    pub fn valency(&self) -> Option<usize> {
        let k = if self.n == 0 { 0 } else { self.degree(0) };
        (1..self.n).all(|u| self.degree(u) == k).then_some(k)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbours(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn common_neighbours(&self, u: usize, v: usize) -> usize {
        count_common(self.row(u), self.row(v))
    }

    /// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |i, j| self.adjacent(vertices[i], vertices[j]))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for w in 0..self.words {
                g.rows[u * self.words + w] = !self.rows[u * self.words + w];
            }
            g.rows[u * self.words + (u >> 6)] &= !(1 << (u & 63));
            if !self.n.is_multiple_of(64) {
                g.rows[u * self.words + self.words - 1] &= (1u64 << (self.n % 64)) - 1;
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::from_edges(self.n, self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])));
        if let Some(labels) = &self.labels {
            let mut l = vec![String::new(); self.n];
            for (v, s) in labels.iter().enumerate() {
                l[perm[v]] = s.clone();
            }
            g.labels = Some(l);
        }
        g
    }

    /// True iff the adjacency relation is symmetric and loopless and labels are unique.
    pub fn validate(&self) -> bool {
        let sym = (0..self.n).all(|u| !self.adjacent(u, u) && self.neighbours(u).all(|v| v < self.n && self.adjacent(v, u)));
        let labels_ok = self.labels.as_ref().is_none_or(|l| {
            let mut s: Vec<_> = l.iter().collect();
            s.sort();
            s.windows(2).all(|w| w[0] != w[1])
        });
        sym && labels_ok
    }

    /// BFS distances from `src`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([src]);
        dist[src] = 0;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbours(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|u| self.distances_from(u)).collect()
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let d = self.distances_from(s);
            let comp: Vec<usize> = (0..self.n).filter(|&v| d[v] != usize::MAX).collect();
            for &v in &comp {
                seen[v] = true;
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for v in self.neighbours(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        best = best.min(dist[u] + dist[v] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Two-colouring of a bipartite graph (`false` side contains the least vertex of each component).
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for v in self.neighbours(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * (self.n.saturating_sub(1))
    }

    /// Local graph at `u`: the subgraph induced on the neighbourhood, in increasing vertex order.
    pub fn local_graph(&self, u: usize) -> Graph {
        let nbrs: Vec<usize> = self.neighbours(u).collect();
        self.induced_subgraph(&nbrs)
    }
}

/// Error helper for constructions.
pub(crate) fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_iteration() {
        let b = Bitset::from_iter(200, [0, 5, 63, 64, 130, 199]);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 5, 63, 64, 130, 199]);
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn basic_queries() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.valency(), Some(2));
        assert_eq!(g.girth(), Some(4));
        assert!(g.validate());
        assert!(g.is_connected());
        assert_eq!(g.bipartition().unwrap(), vec![false, true, false, true]);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(path.girth(), None);
        assert_eq!(path.distances_from(0), vec![0, 1, 2]);
    }

    #[test]
    fn complement_involution_on_odd_sizes() {
        for n in [1, 5, 63, 64, 65, 130] {
            let g = Graph::from_fn(n, |u, v| (u * 7 + v * 3) % 5 == 1);
            let c = g.complement();
            assert!(c.validate());
            assert_eq!(c.edge_count() + g.edge_count(), n * (n - 1) / 2);
            assert_eq!(c.complement(), g);
        }
    }

    #[test]
    fn girth_of_odd_cycle_with_chord() {
        let g = Graph::from_edges(7, (0..7).map(|i| (i, (i + 1) % 7)).chain([(0, 3)]));
        assert_eq!(g.girth(), Some(4));
    }
}
