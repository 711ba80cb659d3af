//! Graph automorphism groups by individualisation and equitable refinement.
//!
//! The search follows one "first path" down the tree of refined ordered
//! partitions to a discrete leaf, then revisits each level from the bottom
//! up, looking for a leaf equivalent to the first one below every other
//! vertex of the target cell. Vertices already known to be in one orbit of
//! the generators found so far are skipped.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;

use super::{GroupChain, Perm};
use crate::error::GroupError;
use crate::graph::Graph;

/// Default largest graph accepted by [`automorphism_group`].
pub const DEFAULT_VERTEX_BOUND: usize = 400;

#[derive(Clone, Debug)]
pub struct AutGroup {
    pub chain: GroupChain,
    /// Product of the orbit lengths found along the first path.
    pub search_order: BigUint,
}

#[derive(Clone)]
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell containing each vertex.
    cell: Vec<u32>,
    /// Cell length, valid at cell starts.
    len: Vec<u32>,
    cells: usize,
}

struct Trace<'a> {
    buf: Vec<u32>,
    expected: Option<&'a [u32]>,
    failed: bool,
}

impl<'a> Trace<'a> {
    fn new(expected: Option<&'a [u32]>) -> Self {
        Trace { buf: Vec::new(), expected, failed: false }
    }

    fn push(&mut self, x: u32) {
        if let Some(e) = self.expected {
            if e.get(self.buf.len()) != Some(&x) {
                self.failed = true;
            }
        }
        self.buf.push(x);
    }

    fn finish(&mut self) -> bool {
        if let Some(e) = self.expected {
            if e.len() != self.buf.len() {
                self.failed = true;
            }
        }
        !self.failed
    }
}

struct Engine<'g> {
    g: &'g Graph,
    adj: Vec<Vec<u32>>,
    count: Vec<u32>,
}

impl Partition {
    fn from_colours(colours: &[u64]) -> Partition {
        let n = colours.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| (colours[v as usize], v));
        let mut p = Partition { elems: order, pos: vec![0; n], cell: vec![0; n], len: vec![0; n], cells: 0 };
        let mut start = 0;
        for i in 0..n {
            let v = p.elems[i] as usize;
            p.pos[v] = i as u32;
            if i > 0 && colours[v] != colours[p.elems[i - 1] as usize] {
                p.len[start] = (i - start) as u32;
                p.cells += 1;
                start = i;
            }
            p.cell[v] = start as u32;
        }
        if n > 0 {
            p.len[start] = (n - start) as u32;
            p.cells += 1;
        }
        p
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.n() {
            out.push(s);
            s += self.len[s] as usize;
        }
        out
    }

    /// First non-singleton cell of least size.
    fn target_cell(&self) -> Option<usize> {
        self.cell_starts().into_iter().filter(|&s| self.len[s] > 1).min_by_key(|&s| (self.len[s], s))
    }

    fn cell_members(&self, start: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.elems[start..start + self.len[start] as usize].iter().map(|&x| x as usize).collect();
        v.sort_unstable();
        v
    }

    /// Splits `v` off the front of its cell and returns the new singleton.
    fn individualize(&mut self, v: usize) -> usize {
        let c = self.cell[v] as usize;
        let l = self.len[c] as usize;
        debug_assert!(l > 1);
        let p = self.pos[v] as usize;
        let w = self.elems[c] as usize;
        self.elems.swap(c, p);
        self.pos[w] = p as u32;
        self.pos[v] = c as u32;
        self.len[c] = 1;
        self.len[c + 1] = (l - 1) as u32;
        for i in c + 1..c + l {
            self.cell[self.elems[i] as usize] = (c + 1) as u32;
        }
        self.cells += 1;
        c
    }
}

impl<'g> Engine<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        let adj = (0..n).map(|u| g.neighbours(u).map(|v| v as u32).collect()).collect();
        Engine { g, adj, count: vec![0; n] }
    }

    fn refine(&mut self, p: &mut Partition, splitters: Vec<usize>, trace: &mut Trace) -> bool {
        let n = p.n();
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut in_queue = vec![false; n];
        for s in splitters {
            if !in_queue[s] {
                in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut touched: Vec<u32> = Vec::new();
        let mut touched_cells: Vec<usize> = Vec::new();
        while let Some(w) = queue.pop_front() {
            if p.is_discrete() {
                break;
            }
            in_queue[w] = false;
            let wl = p.len[w] as usize;
            trace.push(w as u32);
            for i in w..w + wl {
                let x = p.elems[i] as usize;
                for &y in &self.adj[x] {
                    if self.count[y as usize] == 0 {
                        touched.push(y);
                    }
                    self.count[y as usize] += 1;
                }
            }
            touched_cells.clear();
            touched_cells.extend(touched.iter().map(|&y| p.cell[y as usize] as usize));
            touched_cells.sort_unstable();
            touched_cells.dedup();
            for &c in &touched_cells {
                let l = p.len[c] as usize;
                if l == 1 {
                    continue;
                }
                let count = &self.count;
                let first = count[p.elems[c] as usize];
                if p.elems[c..c + l].iter().all(|&v| count[v as usize] == first) {
                    continue;
                }
                p.elems[c..c + l].sort_unstable_by_key(|&v| (count[v as usize], v));
                let first = count[p.elems[c] as usize];
                let last = count[p.elems[c + l - 1] as usize];
                if first == last {
                    continue;
                }
                // fragments in ascending count order
                let mut frags: Vec<(usize, usize)> = Vec::new();
                let mut s = c;
                for i in c..c + l {
                    let v = p.elems[i] as usize;
                    p.pos[v] = i as u32;
                    if i > c && count[v] != count[p.elems[i - 1] as usize] {
                        frags.push((s, i - s));
                        s = i;
                    }
                }
                frags.push((s, c + l - s));
                trace.push(c as u32);
                trace.push(frags.len() as u32);
                for &(fs, fl) in &frags {
                    trace.push(count[p.elems[fs] as usize]);
                    trace.push(fl as u32);
                    p.len[fs] = fl as u32;
                    for i in fs..fs + fl {
                        p.cell[p.elems[i] as usize] = fs as u32;
                    }
                }
                p.cells += frags.len() - 1;
                if in_queue[c] {
                    for &(fs, _) in &frags[1..] {
                        in_queue[fs] = true;
                        queue.push_back(fs);
                    }
                } else {
                    let big = frags.iter().enumerate().max_by_key(|&(i, &(_, fl))| (fl, std::cmp::Reverse(i))).unwrap().0;
                    for (i, &(fs, _)) in frags.iter().enumerate() {
                        if i != big {
                            in_queue[fs] = true;
                            queue.push_back(fs);
                        }
                    }
                }
                if trace.failed {
                    break;
                }
            }
            for &y in &touched {
                self.count[y as usize] = 0;
            }
            touched.clear();
            if trace.failed {
                return false;
            }
        }
        trace.finish()
    }

    fn is_automorphism(&self, images: &[u32]) -> bool {
        (0..self.g.order()).all(|u| {
            let iu = images[u] as usize;
            self.adj[u].len() == self.adj[iu].len() && self.adj[u].iter().all(|&v| self.g.adjacent(iu, images[v as usize] as usize))
        })
    }
}

struct Node {
    partition: Partition,
    target: usize,
    choice: usize,
    /// Trace of refining after individualising `choice`.
    trace: Vec<u32>,
}

struct Search<'g> {
    engine: Engine<'g>,
    colours: Vec<u64>,
    path: Vec<Node>,
    leaf: Vec<u32>,
}

impl<'g> Search<'g> {
    /// Looks for a leaf below `p` (after individualising `w` at depth
    /// `depth`) matching the first leaf.
    fn equivalent(&mut self, p: &Partition, w: usize, depth: usize) -> Option<Perm> {
        let mut q = p.clone();
        let s = q.individualize(w);
        let expected = std::mem::take(&mut self.path[depth].trace);
        let mut trace = Trace::new(Some(&expected));
        let ok = self.engine.refine(&mut q, vec![s], &mut trace);
        self.path[depth].trace = expected;
        if !ok {
            return None;
        }
        if depth + 1 == self.path.len() {
            if !q.is_discrete() {
                return None;
            }
            let n = q.n();
            let mut images = vec![0u32; n];
            for i in 0..n {
                images[self.leaf[i] as usize] = q.elems[i];
            }
            if (0..n).any(|v| self.colours[v] != self.colours[images[v] as usize]) || !self.engine.is_automorphism(&images) {
                return None;
            }
            return Some(Perm::from_u32_unchecked(images));
        }
        let target = self.path[depth + 1].target;
        if q.len[target] != self.path[depth + 1].partition.len[target] {
            return None;
        }
        for x in q.cell_members(target) {
            if let Some(g) = self.equivalent(&q, x, depth + 1) {
                return Some(g);
            }
        }
        None
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn initial_colours(g: &Graph, colours: Option<&[u64]>) -> Vec<u64> {
    let n = g.order();
    let mut keys: Vec<(u64, Vec<usize>)> = (0..n)
        .map(|u| {
            let d = g.distances_from(u);
            let mut profile = vec![0usize; n + 1];
            for x in d {
                profile[x.min(n)] += 1;
            }
            (colours.map_or(0, |c| c[u]), profile)
        })
        .collect();
    let mut sorted: Vec<(u64, Vec<usize>)> = keys.clone();
    sorted.sort();
    sorted.dedup();
    keys.iter_mut().map(|k| sorted.binary_search(k).unwrap() as u64).collect()
}

/// Full automorphism group of `g`, for graphs up to [`DEFAULT_VERTEX_BOUND`].
pub fn automorphism_group(g: &Graph) -> Result<AutGroup, GroupError> {
    automorphism_group_bounded(g, None, DEFAULT_VERTEX_BOUND)
}

/// Colour-preserving automorphisms, with a custom vertex bound.
pub fn automorphism_group_bounded(g: &Graph, colours: Option<&[u64]>, bound: usize) -> Result<AutGroup, GroupError> {
    let n = g.order();
    if n > bound {
        return Err(GroupError::TooLarge { n, bound });
    }
    if n == 0 {
        return Ok(AutGroup { chain: GroupChain::trivial(0), search_order: BigUint::one() });
    }
    let colours = initial_colours(g, colours);
    let mut engine = Engine::new(g);
    let mut root = Partition::from_colours(&colours);
    let all = root.cell_starts();
    let mut t = Trace::new(None);
    engine.refine(&mut root, all, &mut t);

    let mut path: Vec<Node> = Vec::new();
    let mut current = root;
    while let Some(target) = current.target_cell() {
        let choice = current.cell_members(target)[0];
        let mut next = current.clone();
        let s = next.individualize(choice);
        let mut t = Trace::new(None);
        engine.refine(&mut next, vec![s], &mut t);
        path.push(Node { partition: current, target, choice, trace: t.buf });
        current = next;
    }
    let leaf = current.elems.clone();
    let mut search = Search { engine, colours, path, leaf };

    let mut generators: Vec<Perm> = Vec::new();
    let mut order = BigUint::one();
    for depth in (0..search.path.len()).rev() {
        let mut uf = UnionFind::new(n);
        for gen in &generators {
            for x in 0..n {
                uf.union(x, gen.image(x));
            }
        }
        let partition = search.path[depth].partition.clone();
        let target = search.path[depth].target;
        let choice = search.path[depth].choice;
        let cell = partition.cell_members(target);
        let mut failed: Vec<usize> = Vec::new();
        for &w in &cell {
            if w == choice || uf.find(w) == uf.find(choice) {
                continue;
            }
            let rw = uf.find(w);
            if failed.iter().any(|&f| uf.find(f) == rw) {
                continue;
            }
            match search.equivalent(&partition, w, depth) {
                Some(gen) => {
                    for x in 0..n {
                        uf.union(x, gen.image(x));
                    }
                    generators.push(gen);
                }
                None => failed.push(w),
            }
        }
        let rc = uf.find(choice);
        let orbit_len = cell.iter().filter(|&&x| uf.find(x) == rc).count();
        order *= BigUint::from(orbit_len);
    }

    let chain = GroupChain::with_known_order(n, generators.clone(), &order)?;
    let chain = if chain.order() == order { chain } else { GroupChain::new(n, generators)? };
    Ok(AutGroup { chain, search_order: order })
}

/// An isomorphism `g1 -> g2` as an image list, or `None`.
pub fn isomorphism(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>, GroupError> {
    let n = g1.order();
    if n != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    // Work with whichever of g, complement(g) is connected; then an
    // automorphism of the disjoint union swapping sides is an isomorphism.
    let (a, b) = if g1.is_connected() { (g1.clone(), g2.clone()) } else { (g1.complement(), g2.complement()) };
    if !b.is_connected() {
        return Ok(None);
    }
    let mut edges = a.edges();
    edges.extend(b.edges().into_iter().map(|(u, v)| (u + n, v + n)));
    let union = Graph::from_edges(2 * n, edges);
    let aut = automorphism_group_bounded(&union, None, usize::MAX)?;
    let chain = aut.chain;
    for g in chain.strong_generators() {
        if g.image(0) >= n {
            return Ok(Some((0..n).map(|x| g.image(x) - n).collect()));
        }
    }
    // the orbit of 0 may reach the other side only through a product
    let orb = chain.orbit(0);
    if let Some(&t) = orb.iter().find(|&&x| x >= n) {
        let base = chain.base();
        let c = if base.first() == Some(&0) { chain } else { chain.with_base_prefix(&[0])? };
        let u = c.transversal(0, t).expect("orbit point has a transversal element");
        return Ok(Some((0..n).map(|x| u.image(x) - n).collect()));
    }
    Ok(None)
}
