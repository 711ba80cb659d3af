//! Combinatorial invariants: distance parameters, strongly regular and
//! distance-regular recognition, local graphs, μ-graphs and the unique x
//! property.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{CheckError, GroupError};
use crate::graph::{count_common, Bitset, Graph};
use crate::permgrp::{isomorphism, orbits_of, GroupChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Srg {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl Srg {
    /// Parameters of the complementary graph.
    pub fn complement(self) -> Srg {
        let Srg { v, k, lambda, mu } = self;
        Srg { v, k: v - k - 1, lambda: v + mu - 2 * k - 2, mu: v + lambda - 2 * k }
    }
}

/// `{b_0, ..., b_{d-1}; c_1, ..., c_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

/// Distance parameters of a graph. Per-distance quantities are indexed by
/// the distance `i` and are `None` when they depend on the chosen vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterReport {
    pub order: usize,
    pub edges: usize,
    pub connected: bool,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub valency: Option<usize>,
    pub k: Vec<Option<usize>>,
    pub c: Vec<Option<usize>>,
    pub a: Vec<Option<usize>>,
    pub b: Vec<Option<usize>>,
    pub srg: Option<Srg>,
    pub intersection_array: Option<IntersectionArray>,
    /// One report per component when the graph is disconnected.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub components: Vec<ParameterReport>,
}

fn merge(slot: &mut Option<Option<usize>>, value: usize) {
    match slot {
        None => *slot = Some(Some(value)),
        Some(Some(v)) if *v != value => *slot = Some(None),
        _ => {}
    }
}

fn flatten(v: Vec<Option<Option<usize>>>) -> Vec<Option<usize>> {
    v.into_iter().map(|x| x.flatten()).collect()
}

pub fn parameters(g: &Graph) -> ParameterReport {
    let n = g.order();
    let connected = g.is_connected();
    let mut report = ParameterReport {
        order: n,
        edges: g.edge_count(),
        connected,
        girth: g.girth(),
        diameter: None,
        valency: g.valency(),
        k: Vec::new(),
        c: Vec::new(),
        a: Vec::new(),
        b: Vec::new(),
        srg: None,
        intersection_array: None,
        components: Vec::new(),
    };
    if n == 0 {
        return report;
    }
    if !connected {
        report.components = g.components().iter().map(|comp| parameters(&g.induced_subgraph(comp))).collect();
        return report;
    }
    let dist = g.distance_matrix();
    let diam = dist.iter().flat_map(|r| r.iter()).copied().max().unwrap_or(0);
    let mut k = vec![None; diam + 1];
    let mut c = vec![None; diam + 1];
    let mut a = vec![None; diam + 1];
    let mut b = vec![None; diam + 1];
    for u in 0..n {
        let mut layer = vec![0usize; diam + 1];
        for v in 0..n {
            let i = dist[u][v];
            layer[i] += 1;
            let (mut ci, mut ai, mut bi) = (0, 0, 0);
            for w in g.neighbours(v) {
                match dist[u][w] {
                    d if d + 1 == i => ci += 1,
                    d if d == i => ai += 1,
                    _ => bi += 1,
                }
            }
            merge(&mut c[i], ci);
            merge(&mut a[i], ai);
            merge(&mut b[i], bi);
        }
        for (i, &cnt) in layer.iter().enumerate() {
            merge(&mut k[i], cnt);
        }
    }
    report.diameter = Some(diam);
    report.k = flatten(k);
    report.c = flatten(c);
    report.a = flatten(a);
    report.b = flatten(b);
    if diam >= 1 && report.b.iter().take(diam).chain(report.c.iter().skip(1)).all(Option::is_some) {
        report.intersection_array = Some(IntersectionArray {
            b: report.b[..diam].iter().map(|x| x.unwrap()).collect(),
            c: report.c[1..].iter().map(|x| x.unwrap()).collect(),
        });
    }
    if diam == 2 {
        if let (Some(kv), Some(lambda), Some(mu)) = (report.valency, report.a[1], report.c[2]) {
            report.srg = Some(Srg { v: n, k: kv, lambda, mu });
        }
    }
    report
}

/// Short names for the small graphs that appear as local graphs and
/// μ-graphs: `3K1`, `K4`, `2K3`, `K3[2]`, `C5`; otherwise order and size.
pub fn describe(g: &Graph) -> String {
    let n = g.order();
    let m = g.edge_count();
    if n == 0 {
        return "K0".into();
    }
    if m == 0 {
        return format!("{n}K1");
    }
    if g.is_complete() {
        return format!("K{n}");
    }
    if let Some((copies, size)) = clique_union(g) {
        return format!("{copies}K{size}");
    }
    if let Some((parts, size)) = clique_union(&g.complement()) {
        return format!("K{parts}[{size}]");
    }
    if g.valency() == Some(2) && g.is_connected() {
        return format!("C{n}");
    }
    format!("graph on {n} vertices with {m} edges")
}

/// `(t, s)` when `g` is `t` disjoint copies of `K_s`.
pub fn clique_union(g: &Graph) -> Option<(usize, usize)> {
    let comps = g.components();
    let s = comps[0].len();
    let ok = comps.iter().all(|c| c.len() == s && g.induced_subgraph(c).is_complete());
    ok.then_some((comps.len(), s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalStructure {
    /// No edges at a vertex.
    Empty,
    /// `copies` disjoint cliques of size `size`, i.e. locally (t+1)·K_s with
    /// `copies = t+1`, `size = s`.
    Cliques { copies: usize, size: usize },
    Connected { diameter: usize },
    /// Disconnected but not a union of equal cliques.
    Disconnected,
    /// Local graphs are not all isomorphic.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub structure: LocalStructure,
    pub description: String,
}

fn fingerprint(g: &Graph) -> (usize, usize, Vec<(usize, usize)>) {
    let mut v: Vec<(usize, usize)> = (0..g.order())
        .map(|u| {
            let nb = g.row(u);
            let tri = g.neighbours(u).map(|w| count_common(nb, g.row(w))).sum::<usize>() / 2;
            (g.degree(u), tri)
        })
        .collect();
    v.sort_unstable();
    (g.order(), g.edge_count(), v)
}

fn isomorphic(a: &Graph, b: &Graph) -> Result<bool, GroupError> {
    if fingerprint(a) != fingerprint(b) {
        return Ok(false);
    }
    Ok(isomorphism(a, b)?.is_some())
}

/// Classifies the local graphs. With a vertex-transitive `group`, only one
/// local graph is examined.
pub fn local_structure(g: &Graph, group: Option<&GroupChain>) -> Result<LocalReport, GroupError> {
    let n = g.order();
    if n == 0 {
        return Ok(LocalReport { structure: LocalStructure::Empty, description: "K0".into() });
    }
    let reps: Vec<usize> = match group {
        Some(gr) => orbits_of(n, gr.strong_generators()).iter().map(|o| o[0]).collect(),
        None => (0..n).collect(),
    };
    let first = g.local_graph(reps[0]);
    for &u in &reps[1..] {
        if !isomorphic(&first, &g.local_graph(u))? {
            return Ok(LocalReport { structure: LocalStructure::Mixed, description: "mixed".into() });
        }
    }
    let structure = if first.order() == 0 {
        LocalStructure::Empty
    } else if first.is_connected() {
        let d = first.distance_matrix().iter().flat_map(|r| r.iter()).copied().max().unwrap_or(0);
        LocalStructure::Connected { diameter: d }
    } else if let Some((copies, size)) = clique_union(&first) {
        LocalStructure::Cliques { copies, size }
    } else {
        LocalStructure::Disconnected
    };
    Ok(LocalReport { structure, description: describe(&first) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuClass {
    pub description: String,
    pub order: usize,
    pub edges: usize,
    /// Unordered vertex pairs at distance 2 whose μ-graph lies in this class.
    pub multiplicity: usize,
    /// A pair realising the class.
    pub representative: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuClassReport {
    pub classes: Vec<MuClass>,
    pub pairs: usize,
}

fn mu_graph(g: &Graph, u: usize, v: usize) -> Graph {
    let mut s = g.neighbour_set(u);
    s.intersect_with(g.row(v));
    g.induced_subgraph(&s.iter().collect::<Vec<_>>())
}

/// Isomorphism classes of μ-graphs. With a `group`, pairs are taken up to
/// the group action.
pub fn mu_graph_classes(g: &Graph, group: Option<&GroupChain>) -> Result<MuClassReport, GroupError> {
    let n = g.order();
    // (ordered pair, weight in ordered pairs)
    let mut pairs: Vec<((usize, usize), usize)> = Vec::new();
    match group {
        Some(gr) => {
            for orbit in gr.orbits() {
                let u = orbit[0];
                let stab = gr.pointwise_stabilizer(&[u])?;
                let d = g.distances_from(u);
                for sub in stab.orbits() {
                    if d[sub[0]] == 2 {
                        pairs.push(((u, sub[0]), orbit.len() * sub.len()));
                    }
                }
            }
        }
        None => {
            for u in 0..n {
                let d = g.distances_from(u);
                for v in u + 1..n {
                    if d[v] == 2 {
                        pairs.push(((u, v), 2));
                    }
                }
            }
        }
    }
    let mut reps: Vec<(Graph, MuClass)> = Vec::new();
    let mut total = 0;
    for ((u, v), w) in pairs {
        total += w;
        let mg = mu_graph(g, u, v);
        let mut placed = false;
        for (rg, class) in reps.iter_mut() {
            if isomorphic(rg, &mg)? {
                class.multiplicity += w;
                placed = true;
                break;
            }
        }
        if !placed {
            let class = MuClass { description: describe(&mg), order: mg.order(), edges: mg.edge_count(), multiplicity: w, representative: (u, v) };
            reps.push((mg, class));
        }
    }
    let mut classes: Vec<MuClass> = reps
        .into_iter()
        .map(|(_, mut c)| {
            c.multiplicity /= 2;
            c
        })
        .collect();
    classes.sort_by(|a, b| (a.order, a.edges, &a.description).cmp(&(b.order, b.edges, &b.description)));
    Ok(MuClassReport { classes, pairs: total / 2 })
}

/// A witness `(u, v, w, x)` of the unique x property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueX {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub x: usize,
}

fn vertex_reps(n: usize, group: Option<&GroupChain>) -> Vec<usize> {
    match group {
        Some(gr) => gr.orbits().iter().map(|o| o[0]).collect(),
        None => (0..n).collect(),
    }
}

/// Exhaustive search for the unique x property. A group, when given, is
/// only used to restrict `u` to orbit representatives.
pub fn unique_x(g: &Graph, group: Option<&GroupChain>) -> Result<Option<UniqueX>, CheckError> {
    let n = g.order();
    if g.is_complete() {
        return Err(CheckError::Invalid("the unique x property is defined for non-complete graphs".into()));
    }
    for u in vertex_reps(n, group) {
        let du = g.distances_from(u);
        for v in g.neighbours(u) {
            let dv = g.distances_from(v);
            let mut common = g.neighbour_set(u);
            common.intersect_with(g.row(v));
            let xs: Vec<usize> = g.neighbours(u).filter(|&x| dv[x] == 2).collect();
            let sig = |y: usize| {
                let mut s = common.clone();
                s.intersect_with(g.row(y));
                s
            };
            let xsig: Vec<Bitset> = xs.iter().map(|&x| sig(x)).collect();
            for w in g.neighbours(v).filter(|&w| du[w] == 2) {
                let target = sig(w);
                let mut hits = xs.iter().zip(&xsig).filter(|(_, s)| **s == target);
                if let (Some((&x, _)), None) = (hits.next(), hits.next()) {
                    return Ok(Some(UniqueX { u, v, w, x }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XPlusVerdict {
    /// The unique x property holds and some `Γ(u) ∩ Γ_2(v)` is neither
    /// edgeless nor complete: the graph is not 4-CH.
    NotFourCh { witness: UniqueX, u: usize, v: usize },
    Inconclusive,
}

pub fn xplus_obstruction(g: &Graph, group: Option<&GroupChain>) -> Result<XPlusVerdict, CheckError> {
    if g.is_complete() {
        return Ok(XPlusVerdict::Inconclusive);
    }
    let Some(witness) = unique_x(g, group)? else { return Ok(XPlusVerdict::Inconclusive) };
    for u in vertex_reps(g.order(), group) {
        for v in g.neighbours(u) {
            let dv = g.distances_from(v);
            let set: Vec<usize> = g.neighbours(u).filter(|&x| dv[x] == 2).collect();
            let h = g.induced_subgraph(&set);
            if h.edge_count() > 0 && !h.is_complete() {
                return Ok(XPlusVerdict::NotFourCh { witness, u, v });
            }
        }
    }
    Ok(XPlusVerdict::Inconclusive)
}

/// True iff some four vertices induce `K_4` minus an edge.
pub fn has_induced_k4_minus_edge(g: &Graph) -> bool {
    g.edges().into_iter().any(|(a, b)| {
        let mut common = g.neighbour_set(a);
        common.intersect_with(g.row(b));
        let c: Vec<usize> = common.iter().collect();
        c.iter().enumerate().any(|(i, &x)| c[i + 1..].iter().any(|&y| !g.adjacent(x, y)))
    })
}

/// True iff `group` is transitive on vertices and on ordered pairs at each
/// distance. Disconnected graphs are never distance-transitive here.
pub fn distance_transitive(g: &Graph, group: &GroupChain) -> Result<bool, GroupError> {
    if g.order() == 0 || !g.is_connected() || !group.is_transitive() {
        return Ok(false);
    }
    let d = g.distances_from(0);
    let stab = group.pointwise_stabilizer(&[0])?;
    let orbits = stab.orbits();
    let mut seen = BTreeMap::new();
    for o in &orbits {
        if seen.insert(d[o[0]], ()).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a graph that is locally `(t+1)·K_s` with `c_2 = t+1`: the largest
/// `k >= 3` for which `s^(min(t+1, k-1) - 2)` divides `t`, or `None` when
/// every `k` qualifies. `Some(2)` means even `k = 3` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityBound {
    pub s: usize,
    pub t: usize,
    pub max_k: Option<usize>,
}

pub fn divisibility_bound(report: &ParameterReport, local: &LocalReport) -> Option<DivisibilityBound> {
    let LocalStructure::Cliques { copies, size } = local.structure else { return None };
    let (s, t) = (size, copies - 1);
    if t == 0 || report.c.get(2).copied().flatten() != Some(t + 1) {
        return None;
    }
    let ok = |k: usize| {
        let m = (t + 1).min(k - 1);
        m < 2 || t % s.pow((m - 2) as u32) == 0
    };
    // m stops growing once k - 1 >= t + 1
    let last = t + 2;
    let max_k = (3..=last).take_while(|&k| ok(k)).last();
    Some(DivisibilityBound { s, t, max_k: if max_k == Some(last) { None } else { Some(max_k.unwrap_or(2)) } })
}

/// Lengths `r > 3` of induced cycles through `start` with `r <= max_len`.
pub fn induced_cycle_lengths(g: &Graph, start: usize, max_len: usize) -> Vec<usize> {
    let mut found = vec![false; max_len + 1];
    let mut path = vec![start];
    let mut on_path = vec![false; g.order()];
    on_path[start] = true;
    fn rec(g: &Graph, path: &mut Vec<usize>, on_path: &mut [bool], found: &mut [bool], max_len: usize) {
        let last = *path.last().unwrap();
        let start = path[0];
        let inner_end = path.len().saturating_sub(1).max(1);
        for w in g.neighbours(last) {
            if on_path[w] || path[1..inner_end].iter().any(|&p| g.adjacent(p, w)) {
                continue;
            }
            if path.len() >= 2 && g.adjacent(start, w) {
                let r = path.len() + 1;
                if r > 3 && r <= max_len {
                    found[r] = true;
                }
                continue;
            }
            if path.len() + 1 < max_len {
                path.push(w);
                on_path[w] = true;
                rec(g, path, on_path, found, max_len);
                on_path[w] = false;
                path.pop();
            }
        }
    }
    rec(g, &mut path, &mut on_path, &mut found, max_len);
    (4..=max_len).filter(|&r| found[r]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    #[test]
    fn cycle_six_parameters() {
        let p = parameters(&cycle(6).unwrap());
        assert_eq!(p.girth, Some(6));
        assert_eq!(p.diameter, Some(3));
        assert_eq!(p.c, vec![Some(0), Some(1), Some(1), Some(2)]);
        assert_eq!(p.intersection_array, Some(IntersectionArray { b: vec![2, 1, 1], c: vec![1, 1, 2] }));
    }

    #[test]
    fn disconnected_reports_components() {
        let g = disjoint_union(&cycle(5).unwrap(), 2).unwrap();
        let p = parameters(&g);
        assert!(!p.connected);
        assert_eq!(p.components.len(), 2);
        assert_eq!(p.components[0].srg, Some(Srg { v: 5, k: 2, lambda: 0, mu: 1 }));
    }

    #[test]
    fn describe_names() {
        assert_eq!(describe(&complete_multipartite(3, 2).unwrap()), "K3[2]");
        assert_eq!(describe(&Graph::empty(2)), "2K1");
        assert_eq!(describe(&disjoint_union(&complete(2).unwrap(), 5).unwrap()), "5K2");
        assert_eq!(describe(&cycle(5).unwrap()), "C5");
    }

    #[test]
    fn unique_x_examples() {
        assert!(unique_x(&cycle(5).unwrap(), None).unwrap().is_some());
        assert!(unique_x(&petersen(), None).unwrap().is_none());
        assert!(unique_x(&complete(4).unwrap(), None).is_err());
    }

    #[test]
    fn k4_minus_edge() {
        assert!(!has_induced_k4_minus_edge(&complete(4).unwrap()));
        assert!(!has_induced_k4_minus_edge(&grid(3, 3).unwrap()));
        let diamond = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(has_induced_k4_minus_edge(&diamond));
    }

    #[test]
    fn induced_cycles() {
        assert_eq!(induced_cycle_lengths(&cycle(7).unwrap(), 0, 12), vec![7]);
        assert_eq!(induced_cycle_lengths(&petersen(), 0, 12), vec![5, 6]);
    }
}
