use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use super::Perm;
use crate::error::GroupError;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    strong: Vec<Perm>,
    orbit: Vec<usize>,
    /// For each point, index into `reps` or `NONE`.
    slot: Vec<u32>,
    /// `reps[i]` maps `point` to `orbit[i]`.
    reps: Vec<Perm>,
    reps_inv: Vec<Perm>,
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Level {
        let id = Perm::identity(degree);
        let mut slot = vec![NONE; degree];
        slot[point] = 0;
        Level {
            point,
            strong: Vec::new(),
            orbit: vec![point],
            slot,
            reps: vec![id.clone()],
            reps_inv: vec![id],
            checked: HashSet::new(),
        }
    }

    fn push_point(&mut self, x: usize, rep: Perm) {
        self.slot[x] = self.orbit.len() as u32;
        self.orbit.push(x);
        self.reps_inv.push(rep.inverse());
        self.reps.push(rep);
    }

    /// Adds a strong generator and extends the orbit without disturbing
    /// existing transversal elements.
    fn add_strong(&mut self, g: Perm) {
        self.strong.push(g);
        let gi = self.strong.len() - 1;
        let old = self.orbit.len();
        for i in 0..old {
            let y = self.strong[gi].image(self.orbit[i]);
            if self.slot[y] == NONE {
                let rep = self.reps[i].then(&self.strong[gi]);
                self.push_point(y, rep);
            }
        }
        let mut i = old;
        while i < self.orbit.len() {
            for s in 0..self.strong.len() {
                let y = self.strong[s].image(self.orbit[i]);
                if self.slot[y] == NONE {
                    let rep = self.reps[i].then(&self.strong[s]);
                    self.push_point(y, rep);
                }
            }
            i += 1;
        }
    }

    fn rep_of(&self, x: usize) -> Option<&Perm> {
        let s = self.slot[x];
        (s != NONE).then(|| &self.reps[s as usize])
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct GroupChain {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

fn check_degrees(degree: usize, gens: &[Perm]) -> Result<(), GroupError> {
    for (index, g) in gens.iter().enumerate() {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch { index, expected: degree, got: g.degree() });
        }
    }
    Ok(())
}

impl GroupChain {
    /// Deterministic Schreier–Sims on the given generators.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<GroupChain, GroupError> {
        check_degrees(degree, &gens)?;
        Ok(Self::build(degree, gens, &[], None))
    }

    /// Like [`GroupChain::new`], but stops as soon as the chain reaches the
    /// supplied order. A wrong order yields a chain for a subgroup, so only
    /// pass values that are known exactly.
    pub fn with_known_order(degree: usize, gens: Vec<Perm>, order: &BigUint) -> Result<GroupChain, GroupError> {
        check_degrees(degree, &gens)?;
        Ok(Self::build(degree, gens, &[], Some(order)))
    }

    pub fn trivial(degree: usize) -> GroupChain {
        GroupChain { degree, generators: Vec::new(), levels: Vec::new() }
    }

    fn build(degree: usize, gens: Vec<Perm>, prefix: &[usize], known: Option<&BigUint>) -> GroupChain {
        let mut uniq: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        let mut chain = GroupChain { degree, generators: uniq.clone(), levels: Vec::new() };
        for &b in prefix {
            if chain.levels.iter().all(|l| l.point != b) {
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &uniq {
            if chain.levels.iter().all(|l| g.image(l.point) == l.point) {
                let moved = (0..degree).find(|&x| g.image(x) != x).expect("non-identity");
                chain.levels.push(Level::new(moved, degree));
            }
        }
        for g in &uniq {
            for i in 0..chain.levels.len() {
                chain.levels[i].add_strong(g.clone());
                if g.image(chain.levels[i].point) != chain.levels[i].point {
                    break;
                }
            }
        }

        let mut i = chain.levels.len();
        while i > 0 {
            if let Some(k) = known {
                if &chain.order() == k {
                    break;
                }
            }
            let lvl = i - 1;
            match chain.find_failing_schreier(lvl) {
                None => i -= 1,
                Some((residue, fail)) => {
                    if fail == chain.levels.len() {
                        let moved = (0..degree).find(|&x| residue.image(x) != x).expect("non-identity residue");
                        chain.levels.push(Level::new(moved, degree));
                    }
                    for l in lvl + 1..=fail {
                        chain.levels[l].add_strong(residue.clone());
                    }
                    i = fail + 1;
                }
            }
        }
        chain
    }

    fn find_failing_schreier(&mut self, lvl: usize) -> Option<(Perm, usize)> {
        let mut oi = 0;
        while oi < self.levels[lvl].orbit.len() {
            for si in 0..self.levels[lvl].strong.len() {
                let level = &self.levels[lvl];
                let beta = level.orbit[oi];
                if level.checked.contains(&(beta, si)) {
                    continue;
                }
                let s = &level.strong[si];
                let img = s.image(beta);
                let h = level.reps[oi].then(s).then(&level.reps_inv[level.slot[img] as usize]);
                let (residue, fail) = self.sift_from(h, lvl + 1);
                if residue.is_identity() && fail == self.levels.len() {
                    self.levels[lvl].checked.insert((beta, si));
                } else {
                    return Some((residue, fail));
                }
            }
            oi += 1;
        }
        None
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it passed every level).
    fn sift_from(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.image(level.point);
            let s = level.slot[b];
            if s == NONE {
                return (g, i);
            }
            g = g.then(&level.reps_inv[s as usize]);
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Strong generators for the whole group.
    pub fn strong_generators(&self) -> &[Perm] {
        self.levels.first().map(|l| l.strong.as_slice()).unwrap_or(&[])
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn basic_orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    /// Strong generators of the stabiliser of the first `level` base points.
    pub fn level_generators(&self, level: usize) -> &[Perm] {
        self.levels.get(level).map(|l| l.strong.as_slice()).unwrap_or(&[])
    }

    /// Transversal element at `level` mapping the base point to `x`.
    pub fn transversal(&self, level: usize, x: usize) -> Option<&Perm> {
        self.levels[level].rep_of(x)
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, fail) = self.sift_from(g.clone(), 0);
        fail == self.levels.len() && r.is_identity()
    }

    /// Rebuilds the chain so that `prefix` starts the base.
    pub fn with_base_prefix(&self, prefix: &[usize]) -> Result<GroupChain, GroupError> {
        if let Some(&p) = prefix.iter().find(|&&p| p >= self.degree) {
            return Err(GroupError::PointOutOfRange { point: p, degree: self.degree });
        }
        if self.has_base_prefix(prefix) {
            return Ok(self.clone());
        }
        let mut chain = Self::build(self.degree, self.strong_generators().to_vec(), prefix, Some(&self.order()));
        chain.generators = self.generators.clone();
        Ok(chain)
    }

    /// The subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<GroupChain, GroupError> {
        let mut distinct: Vec<usize> = Vec::new();
        for &p in points {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        let chain = self.with_base_prefix(&distinct)?;
        let m = distinct.len();
        if m >= chain.levels.len() {
            return Ok(GroupChain::trivial(self.degree));
        }
        let levels: Vec<Level> = chain.levels[m..].to_vec();
        let generators = levels[0].strong.clone();
        Ok(GroupChain { degree: self.degree, generators, levels })
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(self.degree, self.strong_generators(), point)
    }

    /// Orbits, each sorted, listed by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, self.strong_generators())
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// True iff `set` lies in a single orbit (vacuously true when empty).
    pub fn is_transitive_on(&self, set: &[usize]) -> bool {
        let Some(&m) = set.iter().min() else { return true };
        let orb = self.orbit(m);
        let mut mark = vec![false; self.degree];
        for x in orb {
            mark[x] = true;
        }
        set.iter().all(|&x| mark[x])
    }

    /// Some `g` with `a^g = b` as sets, or `None`. Candidates are tried
    /// smallest image first.
    pub fn set_transporter(&self, a: &[usize], b: &[usize]) -> Result<Option<Perm>, GroupError> {
        for &p in a.iter().chain(b) {
            if p >= self.degree {
                return Err(GroupError::PointOutOfRange { point: p, degree: self.degree });
            }
        }
        let mut a_sorted = a.to_vec();
        a_sorted.sort_unstable();
        a_sorted.dedup();
        if self.has_base_prefix(&a_sorted) {
            return Ok(self.transport_prepared(&a_sorted, b));
        }
        Ok(self.with_base_prefix(&a_sorted)?.transport_prepared(&a_sorted, b))
    }

    pub fn has_base_prefix(&self, prefix: &[usize]) -> bool {
        prefix.len() <= self.levels.len() && self.levels.iter().zip(prefix).all(|(l, &p)| l.point == p)
    }

    /// Transporter search on a chain whose base starts with `a`.
    pub fn transport_prepared(&self, a: &[usize], b: &[usize]) -> Option<Perm> {
        debug_assert!(self.has_base_prefix(a));
        let mut b_sorted = b.to_vec();
        b_sorted.sort_unstable();
        b_sorted.dedup();
        if a.len() != b_sorted.len() {
            return None;
        }
        let mut target = vec![false; self.degree];
        for &x in &b_sorted {
            target[x] = true;
        }
        let mut used = vec![false; self.degree];
        let id = Perm::identity(self.degree);
        self.transport_dfs(a, 0, &id, &b_sorted, &target, &mut used)
    }

    /// `g` is the product of transversal elements chosen for levels below
    /// `i`, applied right to left: the images of `a[..i]` under `g` are fixed.
    fn transport_dfs(&self, a: &[usize], i: usize, g: &Perm, b: &[usize], target: &[bool], used: &mut [bool]) -> Option<Perm> {
        if i == a.len() {
            debug_assert!(a.iter().all(|&x| target[g.image(x)]));
            return Some(g.clone());
        }
        let level = &self.levels[i];
        let ginv = g.inverse();
        for &y in b {
            if used[y] {
                continue;
            }
            // need u in the level transversal with a_i^(u g) = y
            let pre = ginv.image(y);
            let Some(u) = level.rep_of(pre) else { continue };
            let next = u.then(g);
            used[y] = true;
            let found = self.transport_dfs(a, i + 1, &next, b, target, used);
            used[y] = false;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Every element; only for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.reps.len());
            for g in &out {
                for u in &level.reps {
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        out
    }
}

pub fn orbit_of(degree: usize, gens: &[Perm], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orb = vec![point];
    let mut i = 0;
    while i < orb.len() {
        for g in gens {
            let y = g.image(orb[i]);
            if !seen[y] {
                seen[y] = true;
                orb.push(y);
            }
        }
        i += 1;
    }
    orb.sort_unstable();
    orb
}

pub fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for x in 0..degree {
        if !seen[x] {
            let orb = orbit_of(degree, gens, x);
            for &y in &orb {
                seen[y] = true;
            }
            out.push(orb);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> GroupChain {
        let cyc = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let tr = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
        GroupChain::new(n, vec![cyc, tr]).unwrap()
    }

    fn dihedral(n: usize) -> GroupChain {
        let rot = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
        GroupChain::new(n, vec![rot, refl]).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 1..=8usize {
            let expected: usize = (1..=n).product();
            if n == 1 {
                continue;
            }
            assert_eq!(sym(n).order(), BigUint::from(expected), "S_{n}");
        }
        assert_eq!(GroupChain::new(5, vec![Perm::identity(5)]).unwrap().order(), BigUint::one());
    }

    #[test]
    fn membership() {
        let d = dihedral(6);
        assert_eq!(d.order(), BigUint::from(12u32));
        let odd = Perm::from_cycles(6, &[&[0, 1]]).unwrap();
        assert!(!d.contains(&odd));
        for g in d.elements() {
            assert!(d.contains(&g));
        }
    }

    #[test]
    fn pointwise_stabilizer_of_dihedral() {
        let d = dihedral(5);
        assert_eq!(d.pointwise_stabilizer(&[]).unwrap().order(), BigUint::from(10u32));
        assert_eq!(d.pointwise_stabilizer(&[0]).unwrap().order(), BigUint::from(2u32));
        assert!(d.pointwise_stabilizer(&[0, 1]).unwrap().is_trivial());
    }

    #[test]
    fn transporter_in_c6() {
        let d = dihedral(6);
        assert!(d.set_transporter(&[0, 3], &[1, 2]).unwrap().is_none());
        let g = d.set_transporter(&[0, 3], &[2, 5]).unwrap().unwrap();
        assert_eq!(g.image_set(&[0, 3]), vec![2, 5]);
        let g = d.set_transporter(&[1, 2], &[1, 2]).unwrap().unwrap();
        assert_eq!(g.image_set(&[1, 2]), vec![1, 2]);
    }

    #[test]
    fn base_change_preserves_order() {
        let s = sym(7);
        for prefix in [vec![6, 5], vec![3], vec![2, 0, 4, 1]] {
            let c = s.with_base_prefix(&prefix).unwrap();
            assert_eq!(c.order(), s.order());
            assert_eq!(&c.base()[..prefix.len()], &prefix[..]);
        }
    }
}
