//! Level-wise decision procedure for (G,k)-connected-homogeneity and
//! (G,k)-homogeneity.
//!
//! Level `m` takes one representative `Σ` of every G-orbit of induced
//! subgraphs of order `m-1` (connected ones in CH mode). For each set
//! `S ⊆ Σ` realised as `Γ(u) ∩ Σ` by an outside vertex `u`, let `X` be all
//! such `u`. Level `m` holds iff the pointwise stabiliser of `Σ` in G is
//! transitive on every `X`. Level 1 is the case `Σ = ∅`, i.e. vertex
//! transitivity.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::CheckError;
use crate::graph::Graph;
use crate::permgrp::{automorphism_group, orbit_of, validate_automorphisms, GroupChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Connected induced subgraphs.
    Ch,
    /// All induced subgraphs.
    Homogeneous,
}

/// How much the group is known to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trust {
    /// The full automorphism group, computed by search.
    ComputedAut,
    /// Taken from a fixture that claims to be the full automorphism group.
    FixtureTrustedAut,
    /// Some group of automorphisms, possibly proper.
    SubgroupOnly,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub max_k: usize,
    pub mode: Mode,
    pub trust: Trust,
    /// Largest number of subgraph classes allowed per level; `None` uses
    /// [`default_class_cap`].
    pub class_cap: Option<usize>,
}

impl CheckOptions {
    pub fn new(max_k: usize) -> Self {
        CheckOptions { max_k, mode: Mode::Ch, trust: Trust::ComputedAut, class_cap: None }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn trust(mut self, trust: Trust) -> Self {
        self.trust = trust;
        self
    }

    pub fn class_cap(mut self, cap: usize) -> Self {
        self.class_cap = Some(cap);
        self
    }
}

/// Default cap on the number of classes of order `m` when checking up to `k`.
pub fn default_class_cap(k: usize) -> usize {
    10 * k
}

/// A failing extension: the stabiliser of `sigma` has at least two orbits
/// on the vertices attached to `sigma` exactly at `attachment`; `x1` and
/// `x2` lie in different ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub sigma: Vec<usize>,
    pub attachment: Vec<usize>,
    pub x1: usize,
    pub x2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelVerdict {
    pub k: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// Number of G-orbits on the induced subgraphs of order `k` considered
    /// by the mode, when the level passed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classes: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChReport {
    pub mode: Mode,
    pub trust: Trust,
    /// One entry per level up to the first failure or `max_k`.
    pub verdicts: Vec<LevelVerdict>,
    /// Largest `m` with every level `1..=m` passing.
    pub largest_verified: usize,
    /// False when a level failed but the group may be a proper subgroup of
    /// the automorphism group.
    pub negative_conclusive: bool,
}

impl ChReport {
    /// Verdict for level `k`: `Some(true)` if verified, `Some(false)` if
    /// it or a lower level failed, `None` if not examined.
    pub fn holds(&self, k: usize) -> Option<bool> {
        if k <= self.largest_verified {
            Some(true)
        } else if self.verdicts.iter().any(|v| !v.pass) {
            Some(false)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// Outside vertices `u` with `Γ(u) ∩ Σ = S`, sorted.
    pub x: Vec<usize>,
    /// Orbits of the pointwise stabiliser of `Σ` on `x`, by least element.
    pub orbits: Vec<Vec<usize>>,
}

impl Extension {
    pub fn pass(&self) -> bool {
        self.orbits.len() <= 1
    }
}

fn attached(g: &Graph, sigma: &[usize], u: usize) -> Vec<usize> {
    sigma.iter().copied().filter(|&s| g.adjacent(u, s)).collect()
}

fn orbits_on(stab: &GroupChain, x: &[usize]) -> Vec<Vec<usize>> {
    let n = stab.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut in_x = vec![false; n];
    for &u in x {
        in_x[u] = true;
    }
    for &u in x {
        if seen[u] {
            continue;
        }
        let orb: Vec<usize> = orbit_of(n, stab.strong_generators(), u).into_iter().filter(|&y| in_x[y]).collect();
        for &y in &orb {
            seen[y] = true;
        }
        out.push(orb);
    }
    out
}

/// The extension test for one `(Σ, S)` pair.
pub fn check_extension(g: &Graph, group: &GroupChain, sigma: &[usize], attachment: &[usize]) -> Result<Extension, CheckError> {
    let mut sigma_sorted = sigma.to_vec();
    sigma_sorted.sort_unstable();
    let mut s_sorted = attachment.to_vec();
    s_sorted.sort_unstable();
    if s_sorted.iter().any(|s| sigma_sorted.binary_search(s).is_err()) {
        return Err(CheckError::Invalid("attachment set must be a subset of sigma".into()));
    }
    let stab = group.pointwise_stabilizer(&sigma_sorted)?;
    let x: Vec<usize> = (0..g.order())
        .filter(|u| sigma_sorted.binary_search(u).is_err() && attached(g, &sigma_sorted, *u) == s_sorted)
        .collect();
    let orbits = orbits_on(&stab, &x);
    Ok(Extension { x, orbits })
}

/// Re-derives a witness from scratch: true iff `x1` and `x2` lie in `X`
/// and in different orbits of the stabiliser.
pub fn witness_is_valid(g: &Graph, group: &GroupChain, w: &Witness) -> Result<bool, CheckError> {
    let ext = check_extension(g, group, &w.sigma, &w.attachment)?;
    let orbit_of_x = |x: usize| ext.orbits.iter().position(|o| o.contains(&x));
    Ok(matches!((orbit_of_x(w.x1), orbit_of_x(w.x2)), (Some(a), Some(b)) if a != b) && ext.orbits.len() >= 2)
}

struct ClassSet {
    reps: Vec<Vec<usize>>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
}

fn class_invariant(g: &Graph, dist: &[Vec<usize>], set: &[usize]) -> Vec<usize> {
    let mut degs: Vec<usize> = set.iter().map(|&u| set.iter().filter(|&&v| g.adjacent(u, v)).count()).collect();
    degs.sort_unstable();
    let mut ds: Vec<usize> = Vec::new();
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            ds.push(dist[u][v]);
        }
    }
    ds.sort_unstable();
    degs.push(usize::MAX);
    degs.extend(ds);
    degs
}

/// Decides levels `1..=max_k` for `group` acting on `g`.
pub fn check(g: &Graph, group: &GroupChain, opts: &CheckOptions) -> Result<ChReport, CheckError> {
    let n = g.order();
    if group.degree() != n {
        return Err(CheckError::Invalid(format!("group has degree {}, graph has {n} vertices", group.degree())));
    }
    if opts.max_k == 0 {
        return Err(CheckError::Invalid("k must be at least 1".into()));
    }
    validate_automorphisms(g, group.strong_generators())?;
    let cap = opts.class_cap.unwrap_or_else(|| default_class_cap(opts.max_k));
    let dist = g.distance_matrix();
    let mut verdicts = Vec::new();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new()];
    let mut largest = 0;
    for m in 1..=opts.max_k.min(n.max(1)) {
        let mut next = ClassSet { reps: Vec::new(), buckets: HashMap::new() };
        let mut failure = None;
        'classes: for sigma in &classes {
            let stab = group.pointwise_stabilizer(sigma)?;
            let mut by_attachment: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            let in_sigma = |u: &usize| sigma.binary_search(u).is_ok();
            for u in (0..n).filter(|u| !in_sigma(u)) {
                by_attachment.entry(attached(g, sigma, u)).or_default().push(u);
            }
            let mut attachments: Vec<(Vec<usize>, Vec<usize>)> = by_attachment.into_iter().collect();
            attachments.sort();
            for (s, x) in attachments {
                if opts.mode == Mode::Ch && !sigma.is_empty() && s.is_empty() {
                    continue;
                }
                let orbits = orbits_on(&stab, &x);
                if orbits.len() > 1 {
                    failure = Some(Witness { sigma: sigma.clone(), attachment: s, x1: orbits[0][0], x2: orbits[1][0] });
                    break 'classes;
                }
                if m < opts.max_k {
                    let mut delta = sigma.clone();
                    delta.push(x[0]);
                    delta.sort_unstable();
                    add_class(g, group, &dist, &mut next, delta)?;
                    if next.reps.len() > cap {
                        return Err(CheckError::ClassExplosion { level: m, count: next.reps.len(), cap });
                    }
                }
            }
        }
        match failure {
            Some(w) => {
                verdicts.push(LevelVerdict { k: m, pass: false, witness: Some(w), classes: None });
                break;
            }
            None => {
                largest = m;
                let count = (m < opts.max_k).then_some(next.reps.len());
                verdicts.push(LevelVerdict { k: m, pass: true, witness: None, classes: count });
                next.reps.sort();
                classes = next.reps;
            }
        }
    }
    let failed = verdicts.iter().any(|v| !v.pass);
    Ok(ChReport {
        mode: opts.mode,
        trust: opts.trust,
        verdicts,
        largest_verified: largest,
        negative_conclusive: !failed || opts.trust != Trust::SubgroupOnly,
    })
}

fn add_class(g: &Graph, group: &GroupChain, dist: &[Vec<usize>], set: &mut ClassSet, delta: Vec<usize>) -> Result<(), CheckError> {
    let key = class_invariant(g, dist, &delta);
    let bucket = set.buckets.entry(key).or_default();
    if !bucket.is_empty() {
        let prepared = group.with_base_prefix(&delta)?;
        for &i in bucket.iter() {
            if prepared.transport_prepared(&delta, &set.reps[i]).is_some() {
                return Ok(());
            }
        }
    }
    bucket.push(set.reps.len());
    set.reps.push(delta);
    Ok(())
}

/// Automorphism group by search, then [`check`].
pub fn check_with_aut(g: &Graph, opts: &CheckOptions) -> Result<(GroupChain, ChReport), CheckError> {
    let aut = automorphism_group(g)?;
    let report = check(g, &aut.chain, opts)?;
    Ok((aut.chain, report))
}

/// A canonical `s`-arc from vertex 0: each step takes the least neighbour
/// that is not the previous vertex.
fn canonical_arc(g: &Graph, s: usize) -> Option<Vec<usize>> {
    let mut arc = vec![0];
    for i in 0..s {
        let last = arc[i];
        let prev = if i > 0 { Some(arc[i - 1]) } else { None };
        let next = g.neighbours(last).find(|&w| Some(w) != prev)?;
        arc.push(next);
    }
    Some(arc)
}

/// Largest `s <= cap` such that the group is transitive on `s`-arcs (and on
/// `s'`-arcs for every `s' < s`); 0 when not even arc-transitive.
pub fn arc_transitivity_degree(g: &Graph, group: &GroupChain, cap: usize) -> Result<usize, CheckError> {
    let Some(k) = g.valency() else { return Err(CheckError::Invalid("graph is not regular".into())) };
    if k < 2 {
        return Err(CheckError::Invalid("valency must be at least 2".into()));
    }
    if g.order() == 0 || !group.is_transitive() {
        return Ok(0);
    }
    let order = group.order();
    let mut best = 0;
    let mut total = num_bigint::BigUint::from(g.order());
    for s in 1..=cap {
        total *= if s == 1 { k } else { k - 1 };
        let arc = canonical_arc(g, s).expect("regular graph of valency >= 2");
        let stab = group.pointwise_stabilizer(&arc)?;
        if &order / stab.order() != total {
            break;
        }
        best = s;
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GirthBound {
    Pass { s: usize, girth: usize },
    Fail { s: usize, girth: usize },
    /// Valency below 3.
    Skipped,
}

/// Compares the girth with `2s - 2` for the arc-transitivity degree `s`.
pub fn girth_bound_check(g: &Graph, group: &GroupChain) -> Result<GirthBound, CheckError> {
    if g.valency().is_none_or(|k| k < 3) {
        return Ok(GirthBound::Skipped);
    }
    let s = arc_transitivity_degree(g, group, 8)?;
    let girth = g.girth().unwrap_or(usize::MAX);
    Ok(if girth + 2 >= 2 * s { GirthBound::Pass { s, girth } } else { GirthBound::Fail { s, girth } })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferRow {
    pub k: usize,
    pub line_graph_ch: bool,
    pub base_ch: bool,
    pub girth_ok: bool,
    pub consistent: bool,
}

/// Compares `L(Γ)` being k-CH with `Γ` being (k+1)-CH of girth at least
/// `k+2`, for `k = 2..=max_k`, each side with its own computed
/// automorphism group.
pub fn line_graph_transfer(gamma: &Graph, max_k: usize) -> Result<Vec<TransferRow>, CheckError> {
    if !gamma.is_connected() || gamma.valency().is_none_or(|k| k < 3) || gamma.girth().is_some_and(|g| g < 5) {
        return Err(CheckError::Invalid("needs a connected regular graph of valency >= 3 and girth >= 5".into()));
    }
    let line = crate::constructions::line_graph(gamma).map_err(|e| CheckError::Invalid(e.to_string()))?;
    let (_, lhs) = check_with_aut(&line, &CheckOptions::new(max_k))?;
    let (_, rhs) = check_with_aut(gamma, &CheckOptions::new(max_k + 1))?;
    let girth = gamma.girth().unwrap_or(usize::MAX);
    Ok((2..=max_k)
        .map(|k| {
            let line_graph_ch = lhs.holds(k) == Some(true);
            let base_ch = rhs.holds(k + 1) == Some(true);
            let girth_ok = girth >= k + 2;
            TransferRow { k, line_graph_ch, base_ch, girth_ok, consistent: line_graph_ch == (base_ch && girth_ok) }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    fn levels(g: &Graph, k: usize) -> Vec<bool> {
        let (_, r) = check_with_aut(g, &CheckOptions::new(k)).unwrap();
        (1..=k).map(|i| r.holds(i) == Some(true)).collect()
    }

    #[test]
    fn c5_edge_extension() {
        let g = cycle(5).unwrap();
        let aut = automorphism_group(&g).unwrap().chain;
        let ext = check_extension(&g, &aut, &[0, 1], &[1]).unwrap();
        assert_eq!(ext.x, vec![2]);
        assert!(ext.pass());
    }

    #[test]
    fn small_verdicts() {
        assert_eq!(levels(&cycle(6).unwrap(), 6), vec![true; 6]);
        assert_eq!(levels(&petersen(), 4), vec![true, true, true, true]);
        assert_eq!(levels(&icosahedron(), 4), vec![true, true, true, false]);
        let path = path(4).unwrap();
        assert_eq!(levels(&path, 1), vec![false]);
    }

    #[test]
    fn homogeneity_mode_sees_disconnected_pairs() {
        // C6: antipodal and distance-2 non-adjacent pairs are isomorphic as
        // induced subgraphs but lie in different orbits
        let g = cycle(6).unwrap();
        let aut = automorphism_group(&g).unwrap().chain;
        let r = check(&g, &aut, &CheckOptions::new(2).mode(Mode::Homogeneous)).unwrap();
        assert_eq!(r.holds(2), Some(false));
        let w = r.verdicts[1].witness.clone().unwrap();
        assert!(witness_is_valid(&g, &aut, &w).unwrap());
    }

    #[test]
    fn arc_transitivity() {
        let c7 = cycle(7).unwrap();
        let aut = automorphism_group(&c7).unwrap().chain;
        assert_eq!(arc_transitivity_degree(&c7, &aut, 8).unwrap(), 8);
        let p = petersen();
        let aut = automorphism_group(&p).unwrap().chain;
        assert_eq!(arc_transitivity_degree(&p, &aut, 8).unwrap(), 3);
        assert_eq!(girth_bound_check(&p, &aut).unwrap(), GirthBound::Pass { s: 3, girth: 5 });
        assert_eq!(girth_bound_check(&c7, &aut_of(&c7)).unwrap(), GirthBound::Skipped);
    }

    fn aut_of(g: &Graph) -> GroupChain {
        automorphism_group(g).unwrap().chain
    }
}
