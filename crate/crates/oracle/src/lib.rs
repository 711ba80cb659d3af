//! Definition-level reference computations on graphs with at most 16
//! vertices: exhaustive isomorphism classes, automorphisms by exhaustive
//! search, and k-(connected-)homogeneity by enumerating every isomorphism
//! between induced subgraphs.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    pub n: usize,
    /// `adj[u]` has bit `v` set when `u ~ v`.
    pub adj: Vec<u16>,
}

impl SmallGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16);
        SmallGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SmallGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// Connectivity of the subgraph induced on `mask`.
    pub fn induces_connected(&self, mask: u16) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = mask & mask.wrapping_neg();
        loop {
            let mut next = seen;
            for u in bits(seen) {
                next |= self.adj[u] & mask;
            }
            if next == seen {
                return seen == mask;
            }
            seen = next;
        }
    }

    pub fn is_connected(&self) -> bool {
        self.induces_connected(((1u32 << self.n) - 1) as u16)
    }

    fn upper_bits(&self, perm: &[usize]) -> u128 {
        let mut code = 0u128;
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.adjacent(perm[i], perm[j]) {
                    code |= 1 << k;
                }
                k += 1;
            }
        }
        code
    }

    /// Smallest adjacency code over all vertex orderings.
    pub fn canonical_code(&self) -> u128 {
        let mut best = u128::MAX;
        let mut perm: Vec<usize> = (0..self.n).collect();
        permutations(&mut perm, 0, &mut |p| best = best.min(self.upper_bits(p)));
        best
    }
}

pub fn bits(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |i| mask >> i & 1 == 1)
}

fn permutations(p: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// One graph from every isomorphism class on `n` vertices, built by adding
/// a vertex to each class on `n - 1` vertices in every possible way.
pub fn all_graphs(n: usize) -> Vec<SmallGraph> {
    if n == 0 {
        return vec![SmallGraph::new(0)];
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for base in all_graphs(n - 1) {
        for nbrs in 0u16..1 << (n - 1) {
            let mut g = SmallGraph::new(n);
            for (u, v) in base.edges() {
                g.add_edge(u, v);
            }
            for u in bits(nbrs) {
                g.add_edge(u, n - 1);
            }
            if seen.insert(g.canonical_code()) {
                out.push(g);
            }
        }
    }
    out
}

/// Connected graphs with `1..=max_n` vertices, one per isomorphism class.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<SmallGraph> {
    (1..=max_n).flat_map(all_graphs).filter(SmallGraph::is_connected).collect()
}

/// A connected graph on `n` vertices with edge probability drawn from
/// `[0.2, 0.8]`.
pub fn random_connected(n: usize, rng: &mut impl Rng) -> SmallGraph {
    loop {
        let p: f64 = rng.gen_range(0.2..0.8);
        let mut g = SmallGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

/// Every automorphism, as image vectors, by extending partial maps one
/// vertex at a time.
pub fn automorphisms(g: &SmallGraph) -> Vec<Vec<usize>> {
    fn extend(g: &SmallGraph, map: &mut Vec<usize>, used: u16, out: &mut Vec<Vec<usize>>) {
        let u = map.len();
        if u == g.n {
            out.push(map.clone());
            return;
        }
        for w in 0..g.n {
            if used >> w & 1 == 1 || g.degree(w) != g.degree(u) {
                continue;
            }
            if (0..u).all(|v| g.adjacent(u, v) == g.adjacent(w, map[v])) {
                map.push(w);
                extend(g, map, used | 1 << w, out);
                map.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), 0, &mut out);
    out
}

/// Ordered tuples `b` of distinct vertices with `b_i ~ b_j` exactly when
/// `a_i ~ a_j`: the isomorphisms from the subgraph induced on `a`.
pub fn induced_embeddings(g: &SmallGraph, a: &[usize]) -> Vec<Vec<usize>> {
    fn extend(g: &SmallGraph, a: &[usize], b: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = b.len();
        if i == a.len() {
            out.push(b.clone());
            return;
        }
        for w in 0..g.n {
            if b.contains(&w) {
                continue;
            }
            if (0..i).all(|j| g.adjacent(a[i], a[j]) == g.adjacent(w, b[j])) {
                b.push(w);
                extend(g, a, b, out);
                b.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g, a, &mut Vec::new(), &mut out);
    out
}

/// `result[m - 1]` is true when every isomorphism between induced subgraphs
/// of order `m` (connected ones when `connected_only`) is the restriction
/// of an automorphism in `auts`.
pub fn extension_levels(g: &SmallGraph, auts: &[Vec<usize>], max_m: usize, connected_only: bool) -> Vec<bool> {
    let mut ok = vec![true; max_m];
    for mask in 1u32..1 << g.n {
        let mask = mask as u16;
        let m = mask.count_ones() as usize;
        if m > max_m || !ok[m - 1] || (connected_only && !g.induces_connected(mask)) {
            continue;
        }
        let a: Vec<usize> = bits(mask).collect();
        let restrictions: BTreeSet<Vec<usize>> = auts.iter().map(|p| a.iter().map(|&x| p[x]).collect()).collect();
        if induced_embeddings(g, &a).iter().any(|b| !restrictions.contains(b)) {
            ok[m - 1] = false;
        }
    }
    ok
}

/// `result[k - 1]`: k-CH (or k-homogeneous when `connected_only` is
/// false) with respect to `auts`, i.e. every level up to `k` extends.
pub fn homogeneity_verdicts(g: &SmallGraph, auts: &[Vec<usize>], max_k: usize, connected_only: bool) -> Vec<bool> {
    let levels = extension_levels(g, auts, max_k, connected_only);
    let mut acc = true;
    levels.iter().map(|&l| {
        acc &= l;
        acc
    }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let totals: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(totals, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn cycle_automorphisms() {
        let c5 = SmallGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(automorphisms(&c5).len(), 10);
        assert_eq!(homogeneity_verdicts(&c5, &automorphisms(&c5), 5, true), vec![true; 5]);
        let p3 = SmallGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(homogeneity_verdicts(&p3, &automorphisms(&p3), 2, true), vec![false, false]);
    }
}
