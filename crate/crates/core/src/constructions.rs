//! Named graph constructions.

use crate::error::{FormError, GraphError};
use crate::forms::{FormKind, FormedSpace};
use crate::galois::Field;
use crate::graph::{invalid, Graph};
use crate::permgrp::{GroupChain, Perm};

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("complete graph needs n >= 1"));
    }
    Ok(Graph::from_fn(n, |_, _| true))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("path needs n >= 1"));
    }
    Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i))))
}

/// `K_{m[r]}`: `m` parts of size `r`, vertices of a part contiguous.
pub fn complete_multipartite(m: usize, r: usize) -> Result<Graph, GraphError> {
    if m == 0 || r == 0 {
        return Err(invalid("complete multipartite graph needs m, r >= 1"));
    }
    Ok(Graph::from_fn(m * r, |u, v| u / r != v / r))
}

/// `copies` disjoint copies of `g`, copy `i` on `i*n..(i+1)*n`.
pub fn disjoint_union(g: &Graph, copies: usize) -> Result<Graph, GraphError> {
    if copies == 0 || g.order() == 0 {
        return Err(invalid("disjoint union needs a non-empty graph and at least one copy"));
    }
    let n = g.order();
    let edges = g.edges();
    Ok(Graph::from_edges(n * copies, (0..copies).flat_map(|c| edges.iter().map(move |&(u, v)| (u + c * n, v + c * n)))))
}

/// `K_n □ K_m`; vertex `(i, j)` is `i*m + j`.
pub fn grid(n: usize, m: usize) -> Result<Graph, GraphError> {
    if n < 2 || m < 2 {
        return Err(invalid("grid needs n, m >= 2"));
    }
    Ok(Graph::from_fn(n * m, |u, v| u / m == v / m || u % m == v % m))
}

/// `K_n × K_m`, the complement of the grid.
pub fn cross(n: usize, m: usize) -> Result<Graph, GraphError> {
    Ok(grid(n, m)?.complement())
}

pub fn hypercube(n: usize) -> Result<Graph, GraphError> {
    if !(2..=12).contains(&n) {
        return Err(invalid("hypercube needs 2 <= n <= 12"));
    }
    Ok(Graph::from_fn(1 << n, |u, v| (u ^ v).count_ones() == 1))
}

/// `Q_n` with antipodal vertices identified; vertices are the words of
/// length `n-1`.
pub fn folded_cube(n: usize) -> Result<Graph, GraphError> {
    if !(3..=13).contains(&n) {
        return Err(invalid("folded cube needs 3 <= n <= 13"));
    }
    let all = (1usize << (n - 1)) - 1;
    Ok(Graph::from_fn(1 << (n - 1), |u, v| {
        let d = u ^ v;
        d.count_ones() == 1 || d == all
    }))
}

/// Even-weight words of length `n`, adjacent at Hamming distance 2, in
/// increasing numeric order.
pub fn halved_cube(n: usize) -> Result<Graph, GraphError> {
    if !(3..=13).contains(&n) {
        return Err(invalid("halved cube needs 3 <= n <= 13"));
    }
    let words: Vec<usize> = (0..1usize << n).filter(|w| w.count_ones() % 2 == 0).collect();
    Ok(Graph::from_fn(words.len(), |u, v| (words[u] ^ words[v]).count_ones() == 2))
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

/// Vertices are the edges `(u, v)`, `u < v`, in lexicographic order.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(invalid("line graph needs at least one edge"));
    }
    Ok(Graph::from_fn(edges.len(), |i, j| {
        let (a, b) = (edges[i], edges[j]);
        a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
    }))
}

/// The distance-2 graph on one side of a connected bipartite graph. Side 0
/// is the side containing vertex 0.
pub fn halved(g: &Graph, side: usize) -> Result<Graph, GraphError> {
    if side > 1 {
        return Err(invalid("side must be 0 or 1"));
    }
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    let colour = g.bipartition().ok_or(GraphError::NotBipartite)?;
    let verts: Vec<usize> = (0..g.order()).filter(|&v| colour[v] == (side == 1)).collect();
    let dist: Vec<Vec<usize>> = verts.iter().map(|&v| g.distances_from(v)).collect();
    Ok(Graph::from_fn(verts.len(), |i, j| dist[i][verts[j]] == 2))
}

/// `VO^ε_{2m}(q)`: all vectors, adjacent when their difference is singular.
pub fn affine_polar(m: usize, q: usize, plus: bool) -> Result<Graph, GraphError> {
    if m == 0 {
        return Err(invalid("affine polar graph needs m >= 1"));
    }
    let kind = if plus { FormKind::QuadraticPlus } else { FormKind::QuadraticMinus };
    let space = FormedSpace::standard(kind, 2 * m, q)?;
    let n = space.vector_count();
    if n > 5000 {
        return Err(invalid(format!("VO({m},{q}) would have {n} vertices")));
    }
    let fld = space.field();
    let vectors: Vec<_> = space.vectors().collect();
    let singular: Vec<_> = vectors.iter().filter(|v| v.iter().any(|&c| c != 0) && space.is_singular(v)).collect();
    let mut edges = Vec::new();
    for (u, vu) in vectors.iter().enumerate() {
        for s in &singular {
            let w: Vec<_> = vu.iter().zip(s.iter()).map(|(&a, &b)| fld.add(a, b)).collect();
            let v = space.index_of(&w);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    let labels = vectors.iter().map(|v| format!("({})", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))).collect();
    Ok(Graph::from_edges(n, edges).with_labels(labels))
}

/// Points then lines of PG(2, q); a point is incident with a line when the
/// dot product of their normalised coordinates vanishes.
pub fn projective_plane_incidence(q: usize) -> Result<Graph, GraphError> {
    if !(2..=5).contains(&q) {
        return Err(invalid(format!("projective plane incidence graph supports q in 2..=5, got {q}")));
    }
    let fld = Field::new(q).map_err(FormError::from)?;
    let mut pts = Vec::new();
    for a in fld.elements() {
        for b in fld.elements() {
            for c in fld.elements() {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    pts.push(v);
                }
            }
        }
    }
    let n = pts.len();
    let mut edges = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            let dot = (0..3).fold(0, |acc, k| fld.add(acc, fld.mul(p[k], l[k])));
            if dot == 0 {
                edges.push((i, n + j));
            }
        }
    }
    Ok(Graph::from_edges(2 * n, edges))
}

/// `k`-subsets of `0..n`, as bitmasks in increasing numeric order, adjacent
/// when they meet in `k-1` elements.
pub fn johnson(n: usize, k: usize) -> Result<Graph, GraphError> {
    if k == 0 || k >= n || n > 16 {
        return Err(invalid("johnson graph needs 1 <= k < n <= 16"));
    }
    let sets: Vec<u32> = (0..1u32 << n).filter(|s| s.count_ones() as usize == k).collect();
    Ok(Graph::from_fn(sets.len(), |i, j| (sets[i] & sets[j]).count_ones() as usize == k - 1))
}

/// Complement of the local graph of the halved 5-cube.
pub fn petersen() -> Graph {
    let h = halved_cube(5).expect("valid parameters");
    h.local_graph(0).complement()
}

/// Apex, upper pentagon, lower pentagon, apex.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for j in 0..5 {
        let (up, up_next) = (1 + j, 1 + (j + 1) % 5);
        let (lo, lo_next) = (6 + j, 6 + (j + 1) % 5);
        edges.extend([(0, up), (up, up_next), (lo, lo_next), (lo, 11), (up, lo), (up, lo_next)]);
    }
    Graph::from_edges(12, edges)
}

#[derive(Clone, Debug)]
pub struct OrbitalGraph {
    /// Least point of the suborbit of the stabiliser of 0.
    pub representative: usize,
    pub valency: usize,
    pub graph: Graph,
}

#[derive(Clone, Debug)]
pub struct Orbitals {
    /// Self-paired non-trivial orbitals, by valency then representative.
    pub graphs: Vec<OrbitalGraph>,
    /// Representatives of suborbits whose orbital is not self-paired.
    pub skipped: Vec<usize>,
    pub rank: usize,
}

/// One graph per non-trivial self-paired orbital of a transitive group.
pub fn orbital_graphs(gens: &[Perm], degree: usize) -> Result<Orbitals, GraphError> {
    let chain = GroupChain::new(degree, gens.to_vec())?;
    orbital_graphs_of(&chain)
}

pub fn orbital_graphs_of(chain: &GroupChain) -> Result<Orbitals, GraphError> {
    let degree = chain.degree();
    if degree == 0 || !chain.is_transitive() {
        return Err(crate::error::GroupError::Intransitive { degree }.into());
    }
    let chain = chain.with_base_prefix(&[0])?;
    let stab = chain.pointwise_stabilizer(&[0])?;
    let suborbits = stab.orbits();
    let mut graphs = Vec::new();
    let mut skipped = Vec::new();
    let mut suborbit_of = vec![0usize; degree];
    for (i, orb) in suborbits.iter().enumerate() {
        for &x in orb {
            suborbit_of[x] = i;
        }
    }
    let reps: Vec<&Perm> = (0..degree).map(|u| chain.transversal(0, u).expect("transitive")).collect();
    for orb in &suborbits {
        if orb == &[0] {
            continue;
        }
        let delta = orb[0];
        // the pair (0, delta) reversed is (delta, 0) ~ (0, 0^(t^-1))
        let back = reps[delta].inverse().image(0);
        if suborbit_of[back] != suborbit_of[delta] {
            skipped.push(delta);
            continue;
        }
        let mut edges = Vec::with_capacity(degree * orb.len() / 2);
        for (u, t) in reps.iter().enumerate() {
            for &x in orb {
                let v = t.image(x);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        graphs.push(OrbitalGraph { representative: delta, valency: orb.len(), graph: Graph::from_edges(degree, edges) });
    }
    graphs.sort_by_key(|o| (o.valency, o.representative));
    Ok(Orbitals { graphs, skipped, rank: suborbits.len() })
}
