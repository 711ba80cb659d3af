//! Combinatorial constructions of the sporadic graphs behind the group
//! fixtures, and the writer for `fixtures/<name>.gens` and
//! `fixtures/<name>.meta.json`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use conhom::census::parameters;
use conhom::geometry::Geometry;
use conhom::permgrp::{automorphism_group_bounded, GroupChain, Perm};
use conhom::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Robertson's pentagons and pentagrams: vertex `j` of pentagon `h` is
/// joined to vertex `h*i + j` of pentagram `i`.
pub fn hoffman_singleton() -> Graph {
    let p = |h: usize, j: usize| 5 * h + j % 5;
    let q = |i: usize, j: usize| 25 + 5 * i + j % 5;
    let mut edges = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, j + 1)));
            edges.push((q(h, j), q(h, j + 2)));
            for i in 0..5 {
                edges.push((p(h, j), q(i, h * i + j)));
            }
        }
    }
    Graph::from_edges(50, edges)
}

/// The 759 octads of the extended binary Golay code, as 24-bit masks.
pub fn golay_octads() -> Vec<u32> {
    // x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
    let g: u32 = (1 << 11) | (1 << 10) | (1 << 6) | (1 << 5) | (1 << 4) | (1 << 2) | 1;
    let mut octads = Vec::new();
    for m in 0u32..1 << 12 {
        let mut word = 0u32;
        for i in 0..12 {
            if m >> i & 1 == 1 {
                word ^= g << i;
            }
        }
        if word.count_ones() % 2 == 1 {
            word |= 1 << 23;
        }
        if word.count_ones() == 8 {
            octads.push(word);
        }
    }
    octads.sort_unstable();
    octads
}

fn mask_points(mask: u32) -> Vec<usize> {
    (0..24).filter(|i| mask >> i & 1 == 1).collect()
}

/// Blocks of S(3,6,22) on points `0..22`: octads through 22 and 23.
pub fn steiner_hexads() -> Vec<u32> {
    let both = (1 << 22) | (1 << 23);
    golay_octads().into_iter().filter(|o| o & both == both).map(|o| o & !both).collect()
}

/// `∞`, the 22 points and the 77 hexads; hexads are adjacent when disjoint.
pub fn higman_sims() -> Graph {
    let hexads = steiner_hexads();
    let n = 100;
    let h = |i: usize| 23 + i;
    let mut edges = Vec::new();
    for p in 0..22 {
        edges.push((0, 1 + p));
    }
    for (i, &a) in hexads.iter().enumerate() {
        for p in mask_points(a) {
            edges.push((1 + p, h(i)));
        }
        for (j, &b) in hexads.iter().enumerate().skip(i + 1) {
            if a & b == 0 {
                edges.push((h(i), h(j)));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// The 22 points, the 77 hexads and the 176 heptads (octads through 23 but
/// not 22, with 23 removed).
pub fn mclaughlin() -> Graph {
    let hexads = steiner_hexads();
    let heptads: Vec<u32> =
        golay_octads().into_iter().filter(|o| o >> 23 & 1 == 1 && o >> 22 & 1 == 0).map(|o| o & !(1 << 23)).collect();
    let mut sets = Vec::new();
    sets.extend((0..22).map(|p| (0u8, 1u32 << p)));
    sets.extend(hexads.iter().map(|&h| (1u8, h)));
    sets.extend(heptads.iter().map(|&o| (2u8, o)));
    Graph::from_fn(sets.len(), |u, v| {
        let ((ku, a), (kv, b)) = if sets[u].0 <= sets[v].0 { (sets[u], sets[v]) } else { (sets[v], sets[u]) };
        let meet = (a & b).count_ones();
        match (ku, kv) {
            (0, 0) => false,
            (0, 1) => meet == 0,
            (0, 2) => meet == 1,
            (1, 1) => meet == 0,
            (1, 2) => meet == 3,
            _ => meet == 1,
        }
    })
}

/// Zorn vector-matrix `(a, u, v, b)` over GF(2) with `u`, `v` packed in
/// three bits each.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Zorn {
    a: u8,
    u: u8,
    v: u8,
    b: u8,
}

fn dot3(x: u8, y: u8) -> u8 {
    (x & y).count_ones() as u8 & 1
}

fn cross3(x: u8, y: u8) -> u8 {
    let c = |i: usize| x >> i & 1;
    let d = |i: usize| y >> i & 1;
    ((c(1) & d(2)) ^ (c(2) & d(1))) | ((c(2) & d(0)) ^ (c(0) & d(2))) << 1 | ((c(0) & d(1)) ^ (c(1) & d(0))) << 2
}

impl Zorn {
    /// Trace-zero elements: `a = b`, coordinates `a, u, v` in 7 bits.
    fn trace_zero(bits: u8) -> Zorn {
        let a = bits & 1;
        Zorn { a, u: bits >> 1 & 7, v: bits >> 4 & 7, b: a }
    }

    fn mul(self, o: Zorn) -> Zorn {
        let scale = |s: u8, x: u8| if s == 1 { x } else { 0 };
        Zorn {
            a: (self.a & o.a) ^ dot3(self.u, o.v),
            u: scale(self.a, o.u) ^ scale(o.b, self.u) ^ cross3(self.v, o.v),
            v: scale(o.a, self.v) ^ scale(self.b, o.v) ^ cross3(self.u, o.u),
            b: (self.b & o.b) ^ dot3(self.v, o.u),
        }
    }

    fn norm(self) -> u8 {
        (self.a & self.b) ^ dot3(self.u, self.v)
    }

    fn is_zero(self) -> bool {
        self == Zorn { a: 0, u: 0, v: 0, b: 0 }
    }
}

/// The split Cayley hexagon of order (2,2): points are the trace-zero null
/// split octonions over GF(2), lines the 2-spaces on which the product
/// vanishes.
pub fn split_cayley_hexagon() -> Geometry {
    let points: Vec<u8> = (1u8..128).filter(|&x| Zorn::trace_zero(x).norm() == 0).collect();
    let index: HashMap<u8, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut lines = BTreeSet::new();
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            let (zx, zy) = (Zorn::trace_zero(x), Zorn::trace_zero(y));
            if zx.mul(zy).is_zero() && zy.mul(zx).is_zero() {
                let mut line = vec![index[&x], index[&y], index[&(x ^ y)]];
                line.sort_unstable();
                lines.insert(line);
            }
        }
    }
    let labels = points.iter().map(|x| format!("{x:07b}")).collect();
    Geometry::new(points.len(), lines.into_iter().collect()).expect("null lines meet in at most one point").with_point_labels(labels)
}

/// Subgeometries in which every covered point lies on exactly two of the
/// chosen lines, found by extending from point 0; each is
/// returned as its sorted line set.
fn thin_subgeometries(geo: &Geometry) -> BTreeSet<Vec<usize>> {
    let lines = geo.lines();
    let mut on: Vec<Vec<usize>> = vec![Vec::new(); geo.point_count()];
    for (l, line) in lines.iter().enumerate() {
        for &p in line {
            on[p].push(l);
        }
    }
    let mut found = BTreeSet::new();
    let p0 = 0;
    for a in 0..on[p0].len() {
        for b in a + 1..on[p0].len() {
            let mut chosen = vec![false; lines.len()];
            chosen[on[p0][a]] = true;
            chosen[on[p0][b]] = true;
            extend_thin(lines, &on, &mut chosen, &mut found);
        }
    }
    found
}

fn extend_thin(lines: &[Vec<usize>], on: &[Vec<usize>], chosen: &mut Vec<bool>, found: &mut BTreeSet<Vec<usize>>) {
    let mut deficient = None;
    for (l, line) in lines.iter().enumerate() {
        if !chosen[l] {
            continue;
        }
        for &p in line {
            let c = on[p].iter().filter(|&&m| chosen[m]).count();
            if c > 2 {
                return;
            }
            if c == 1 && deficient.is_none() {
                deficient = Some(p);
            }
        }
    }
    let Some(p) = deficient else {
        found.insert((0..lines.len()).filter(|&l| chosen[l]).collect());
        return;
    };
    for &m in &on[p] {
        if !chosen[m] {
            chosen[m] = true;
            extend_thin(lines, on, chosen, found);
            chosen[m] = false;
        }
    }
}

/// Subhexagons of order (2,1) of `hexagon`, as sorted point sets: those
/// through point 0 and their images under the automorphism group of the
/// point graph.
pub fn subhexagons(hexagon: &Geometry) -> Vec<Vec<usize>> {
    let mut seeds: BTreeSet<Vec<usize>> = BTreeSet::new();
    for sub in thin_subgeometries(hexagon) {
        let pts: BTreeSet<usize> = sub.iter().flat_map(|&l| hexagon.lines()[l].iter().copied()).collect();
        if pts.len() == 21 {
            seeds.insert(pts.into_iter().collect());
        }
    }
    let (gens, _) = aut_generators(&hexagon.point_graph());
    let mut out = seeds.clone();
    let mut queue: VecDeque<Vec<usize>> = seeds.into_iter().collect();
    while let Some(s) = queue.pop_front() {
        for g in &gens {
            let mut img = g.image_set(&s);
            img.sort_unstable();
            if out.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    out.into_iter().collect()
}

/// `∞`, the subhexagons `subs` of order (2,1) and the points of `hexagon`.
/// Subhexagons are adjacent when they share `meet` points, a point and a
/// subhexagon when incident, and two points at distance 2 in the point
/// graph.
pub fn hall_janko_with(hexagon: &Geometry, subs: &[Vec<usize>], meet: usize) -> Graph {
    let dist = hexagon.point_graph().distance_matrix();
    let np = hexagon.point_count();
    let s = |i: usize| 1 + i;
    let pt = |p: usize| 1 + subs.len() + p;
    let mut edges = Vec::new();
    for i in 0..subs.len() {
        edges.push((0, s(i)));
        for j in i + 1..subs.len() {
            if subs[i].iter().filter(|p| subs[j].binary_search(p).is_ok()).count() == meet {
                edges.push((s(i), s(j)));
            }
        }
        for &p in &subs[i] {
            edges.push((s(i), pt(p)));
        }
    }
    for a in 0..np {
        for b in a + 1..np {
            if dist[a][b] == 2 {
                edges.push((pt(a), pt(b)));
            }
        }
    }
    Graph::from_edges(1 + subs.len() + np, edges)
}

/// The Hall–Janko graph SRG(100,36,14,12) on `∞`, the 36 subhexagons of
/// order (2,1) of the dual split Cayley hexagon and its 63 points, with the
/// subhexagon intersection size that gives those parameters.
pub fn hall_janko() -> Graph {
    let hex = split_cayley_hexagon().dual().expect("hexagon dual");
    let subs = subhexagons(&hex);
    assert_eq!(subs.len(), 36, "dual hexagon has 36 subhexagons of order (2,1)");
    let mut sizes: BTreeSet<usize> = BTreeSet::new();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            sizes.insert(subs[i].iter().filter(|p| subs[j].binary_search(p).is_ok()).count());
        }
    }
    for meet in sizes {
        let g = hall_janko_with(&hex, &subs, meet);
        if parameters(&g).srg.is_some_and(|s| (s.v, s.k, s.lambda, s.mu) == (100, 36, 14, 12)) {
            return g;
        }
    }
    panic!("no subhexagon intersection size gives SRG(100,36,14,12)");
}

/// A conjugacy class of `group` containing an involution with class size
/// `size`, searched by random products of generators.
pub fn involution_class(group: &GroupChain, size: usize, seed: u64) -> Option<Vec<Perm>> {
    let gens = group.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = HashSet::new();
    for _ in 0..2000 {
        let mut x = Perm::identity(group.degree());
        for _ in 0..40 {
            x = x.then(&gens[rng.gen_range(0..gens.len())]);
        }
        let ord = x.order();
        if !ord.is_multiple_of(2) {
            continue;
        }
        let t = x.pow(ord / 2);
        let fixed = t.images().enumerate().filter(|&(i, y)| i == y).count();
        if !tried.insert(fixed) {
            continue;
        }
        let class = conjugacy_class(&t, gens, size + 1);
        if class.len() == size {
            return Some(class);
        }
        tried.remove(&fixed);
    }
    None
}

/// The conjugacy class of `x` under the group generated by `gens`, stopping
/// once it exceeds `limit`.
pub fn conjugacy_class(x: &Perm, gens: &[Perm], limit: usize) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(x.clone());
    queue.push_back(x.clone());
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = g.inverse().then(&y).then(g);
            if seen.insert(z.clone()) {
                if seen.len() > limit {
                    return seen.into_iter().collect();
                }
                queue.push_back(z);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort_by(|a, b| a.images().cmp(b.images()));
    out
}

/// Commuting graph of an involution class: `x ~ y` when they commute and
/// `xy` lies in the class.
pub fn commuting_involution_graph(class: &[Perm]) -> Graph {
    let members: HashSet<&Perm> = class.iter().collect();
    Graph::from_fn(class.len(), |u, v| {
        let xy = class[u].then(&class[v]);
        xy == class[v].then(&class[u]) && members.contains(&xy)
    })
}

/// The point graph of the Hall–Janko near octagon: the 315 central
/// involutions of J2 acting on the Hall–Janko graph.
pub fn hall_janko_near_octagon(hj_aut: &GroupChain) -> Option<Graph> {
    involution_class(hj_aut, 315, 0).map(|c| commuting_involution_graph(&c))
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureMeta {
    pub name: String,
    pub group: String,
    pub order: String,
    pub degree: usize,
    pub claimed_full_aut: bool,
    /// The fixture graph is the orbital graph of this valency.
    pub orbital_valency: usize,
    pub provenance: String,
}

pub struct Fixture {
    pub meta: FixtureMeta,
    pub generators: Vec<Perm>,
}

/// Automorphism group of `g` by search; returns generators and order.
pub fn aut_generators(g: &Graph) -> (Vec<Perm>, String) {
    let aut = automorphism_group_bounded(g, None, usize::MAX).expect("automorphism search");
    (aut.chain.generators().to_vec(), aut.chain.order().to_string())
}

pub fn fixture(name: &str, group: &str, g: &Graph, provenance: &str) -> Fixture {
    let (generators, order) = aut_generators(g);
    let meta = FixtureMeta {
        name: name.to_string(),
        group: group.to_string(),
        order,
        degree: g.order(),
        claimed_full_aut: true,
        orbital_valency: g.valency().expect("fixture graphs are regular"),
        provenance: provenance.to_string(),
    };
    Fixture { meta, generators }
}

impl Fixture {
    pub fn gens_text(&self) -> String {
        let metadata = vec![
            ("name".to_string(), self.meta.name.clone()),
            ("group".to_string(), self.meta.group.clone()),
            ("order".to_string(), self.meta.order.clone()),
        ];
        conhom::io::write_generators(self.meta.degree, &self.generators, &metadata)
    }

    pub fn meta_text(&self) -> String {
        serde_json::to_string_pretty(&self.meta).expect("meta serialises") + "\n"
    }
}

/// Every fixture, with the group order each construction must produce.
pub fn all_fixtures() -> Vec<Fixture> {
    let hexagon = split_cayley_hexagon();
    let hj = hall_janko();
    let hj_fixture = fixture("hall-janko", "J2:2", &hj, "inf, the 36 subhexagons of order (2,1) of the dual split Cayley hexagon, and its 63 points");
    let hj_aut = GroupChain::new(hj.order(), hj_fixture.generators.clone()).expect("generators act on 100 points");
    let octagon = hall_janko_near_octagon(&hj_aut).expect("J2:2 has a class of 315 involutions");
    let out = vec![
        fixture("hoffman-singleton", "U3(5):2", &hoffman_singleton(), "Robertson pentagons and pentagrams"),
        fixture("higman-sims", "HS:2", &higman_sims(), "inf, 22 points and 77 hexads of S(3,6,22) from the extended Golay code"),
        fixture("mcl2", "McL:2", &mclaughlin(), "22 points, 77 hexads and 176 heptads from the extended Golay code"),
        fixture("hexagon", "G2(2)", &hexagon.point_graph(), "point graph of the split Cayley hexagon from null split octonions over GF(2)"),
        fixture("hexagon-dual", "G2(2)", &hexagon.dual().expect("hexagon dual").point_graph(), "point graph of the dual split Cayley hexagon"),
        hj_fixture,
        fixture("hall-janko-octagon", "J2:2", &octagon, "commuting graph of the 315 central involutions of J2"),
    ];
    let expected = [
        ("hoffman-singleton", "252000"),
        ("higman-sims", "88704000"),
        ("mcl2", "1796256000"),
        ("hexagon", "12096"),
        ("hexagon-dual", "12096"),
        ("hall-janko", "1209600"),
        ("hall-janko-octagon", "1209600"),
    ];
    for (f, (name, order)) in out.iter().zip(expected) {
        assert_eq!((f.meta.name.as_str(), f.meta.order.as_str()), (name, order), "group order of {name}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golay_has_759_octads() {
        let octads = golay_octads();
        assert_eq!(octads.len(), 759);
        assert_eq!(steiner_hexads().len(), 77);
        // S(5,8,24): any five points lie in exactly one octad
        let five = 0b11111u32;
        assert_eq!(octads.iter().filter(|&&o| o & five == five).count(), 1);
    }

    #[test]
    fn hoffman_singleton_parameters() {
        let s = parameters(&hoffman_singleton()).srg.unwrap();
        assert_eq!((s.v, s.k, s.lambda, s.mu), (50, 7, 0, 1));
    }

    #[test]
    fn hexagon_is_generalised_hexagon() {
        let h = split_cayley_hexagon();
        assert_eq!((h.point_count(), h.lines().len()), (63, 63));
        let inc = h.incidence_graph();
        assert_eq!(inc.girth(), Some(12));
        let ia = parameters(&h.point_graph()).intersection_array.unwrap();
        assert_eq!((ia.b, ia.c), (vec![6, 4, 4], vec![1, 1, 3]));
    }
}
