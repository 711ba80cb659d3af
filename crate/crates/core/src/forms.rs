//! Formed spaces in standard basis and their totally singular subspaces.
//!
//! Coordinates are taken with respect to the standard basis
//! `e_1..e_m, f_1..f_m` (hyperbolic pairs, `f(e_i, f_j) = δ_ij`), followed by
//! the extra anisotropic vector(s) where the kind needs them:
//!
//! * symplectic, dimension 2m: hyperbolic pairs only;
//! * unitary over GF(q^2): hyperbolic pairs, plus `x` with `f(x, x) = 1` in odd dimension;
//! * quadratic (parabolic), odd dimension, q odd: hyperbolic pairs plus `x` with `Q(x) = 1`;
//! * quadratic plus type, dimension 2m: hyperbolic pairs with every basis vector singular;
//! * quadratic minus type, dimension 2m: `m-1` hyperbolic pairs, then `e_m = x`, `f_m = y`
//!   with `Q(x) = 1`, `f(x, y) = 1`, `Q(y) = α`, where `α` is the least element making
//!   `X^2 + X + α` irreducible.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FormError;
use crate::galois::{Elem, Field};

pub type Vector = Vec<Elem>;

/// Upper bound on the number of vectors a space may have.
pub const MAX_VECTORS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Symplectic,
    Unitary,
    /// Odd-dimensional (parabolic) quadratic space.
    Quadratic,
    QuadraticPlus,
    QuadraticMinus,
}

impl FormKind {
    pub fn is_quadratic(self) -> bool {
        matches!(self, FormKind::Quadratic | FormKind::QuadraticPlus | FormKind::QuadraticMinus)
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormKind::Symplectic => "symplectic",
            FormKind::Unitary => "unitary",
            FormKind::Quadratic => "quadratic",
            FormKind::QuadraticPlus => "quadratic+",
            FormKind::QuadraticMinus => "quadratic-",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct FormedSpace {
    field: Field,
    dim: usize,
    kind: FormKind,
    /// Gram matrix of the (polar) form, row-major.
    gram: Vec<Elem>,
    /// `Q(basis vector)`; all zero for non-quadratic kinds.
    qvals: Vec<Elem>,
    /// `x -> x^(p^conj_power)` is the field involution used by unitary forms.
    conj_power: usize,
}

/// Least `α` (in encoding order) for which `X^2 + X + α` has no root in `field`.
pub fn minus_type_alpha(field: &Field) -> Elem {
    field
        .elements()
        .find(|&a| field.elements().all(|x| field.add(field.add(field.mul(x, x), x), a) != 0))
        .expect("every finite field has an irreducible quadratic X^2 + X + a")
}

impl FormedSpace {
    /// Standard formed space of the given kind. For [`FormKind::Unitary`] the
    /// argument `q` is the square root of the field order: the space lives over GF(q^2).
    pub fn standard(kind: FormKind, dim: usize, q: usize) -> Result<FormedSpace, FormError> {
        let unsupported = |why: &str| Err(FormError::Unsupported(format!("{kind} dimension {dim} over q = {q}: {why}")));
        let field_order = if kind == FormKind::Unitary { q.saturating_mul(q) } else { q };
        let field = Field::new(field_order)?;
        match kind {
            FormKind::Symplectic | FormKind::QuadraticPlus | FormKind::QuadraticMinus if !dim.is_multiple_of(2) || dim == 0 => {
                return unsupported("dimension must be even and positive");
            }
            FormKind::Quadratic if dim.is_multiple_of(2) => return unsupported("parabolic spaces have odd dimension"),
            FormKind::Quadratic if field.characteristic() == 2 => return unsupported("parabolic spaces need odd q"),
            FormKind::Unitary if dim < 2 => return unsupported("dimension must be at least 2"),
            _ => {}
        }
        if (field_order as f64).powi(dim as i32) > MAX_VECTORS as f64 {
            return unsupported("vector space too large to enumerate");
        }

        let m = dim / 2;
        let mut gram = vec![0; dim * dim];
        let mut qvals = vec![0; dim];
        let one: Elem = 1;
        let set = |g: &mut Vec<Elem>, i: usize, j: usize, v: Elem| g[i * dim + j] = v;
        let pairs = if kind == FormKind::QuadraticMinus { m - 1 } else { m };
        // basis order: e_1..e_m, f_1..f_m, [x]
        for i in 0..pairs {
            let (e, f) = (i, m + i);
            set(&mut gram, e, f, one);
            let back = if kind == FormKind::Symplectic { field.neg(one) } else { one };
            set(&mut gram, f, e, back);
        }
        match kind {
            FormKind::QuadraticMinus => {
                let (x, y) = (m - 1, 2 * m - 1);
                let alpha = minus_type_alpha(&field);
                qvals[x] = 1;
                qvals[y] = alpha;
                set(&mut gram, x, y, one);
                set(&mut gram, y, x, one);
                set(&mut gram, x, x, field.add(1, 1));
                set(&mut gram, y, y, field.add(alpha, alpha));
            }
            FormKind::Quadratic => {
                let x = dim - 1;
                qvals[x] = 1;
                set(&mut gram, x, x, field.add(1, 1));
            }
            FormKind::Unitary if dim % 2 == 1 => set(&mut gram, dim - 1, dim - 1, one),
            _ => {}
        }
        let conj_power = if kind == FormKind::Unitary { field.degree() / 2 } else { 0 };
        let space = FormedSpace { field, dim, kind, gram, qvals, conj_power };
        space.validate()?;
        Ok(space)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn gram(&self, i: usize, j: usize) -> Elem {
        self.gram[i * self.dim + j]
    }

    /// `Q` on the i-th basis vector (zero unless the space is quadratic).
    pub fn basis_q(&self, i: usize) -> Elem {
        self.qvals[i]
    }

    pub fn conj(&self, x: Elem) -> Elem {
        self.field.frobenius(x, self.conj_power)
    }

    fn check_dim(&self, v: &[Elem]) -> Result<(), FormError> {
        if v.len() != self.dim {
            return Err(FormError::Dimension { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    pub fn eval_f(&self, u: &[Elem], v: &[Elem]) -> Result<Elem, FormError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok(self.f(u, v))
    }

    pub fn eval_q(&self, v: &[Elem]) -> Result<Elem, FormError> {
        self.check_dim(v)?;
        Ok(self.q(v))
    }

    /// Bilinear / sesquilinear form, unchecked.
    pub(crate) fn f(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let fld = &self.field;
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row = &self.gram[i * self.dim..(i + 1) * self.dim];
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0 && row[j] != 0 {
                    let vj = if self.kind == FormKind::Unitary { self.conj(vj) } else { vj };
                    acc = fld.add(acc, fld.mul(fld.mul(ui, row[j]), vj));
                }
            }
        }
        acc
    }

    /// Quadratic form extended from basis values by polarisation; zero for non-quadratic kinds.
    pub(crate) fn q(&self, v: &[Elem]) -> Elem {
        if !self.kind.is_quadratic() {
            return 0;
        }
        let fld = &self.field;
        let mut acc = 0;
        for i in 0..self.dim {
            if v[i] == 0 {
                continue;
            }
            acc = fld.add(acc, fld.mul(self.qvals[i], fld.mul(v[i], v[i])));
            for j in i + 1..self.dim {
                acc = fld.add(acc, fld.mul(self.gram(i, j), fld.mul(v[i], v[j])));
            }
        }
        acc
    }

    /// Singular in the sense of the form: `Q(v) = 0` for quadratic spaces, `f(v, v) = 0` otherwise.
    pub fn is_singular(&self, v: &[Elem]) -> bool {
        if self.kind.is_quadratic() {
            self.q(v) == 0
        } else {
            self.f(v, v) == 0
        }
    }

    fn validate(&self) -> Result<(), FormError> {
        if gram_rank(&self.field, &self.gram, self.dim) != self.dim {
            return Err(FormError::Inconsistent("Gram matrix is singular".into()));
        }
        let fld = &self.field;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let (a, b) = (self.gram(i, j), self.gram(j, i));
                let ok = match self.kind {
                    FormKind::Symplectic => a == fld.neg(b) && (i != j || a == 0),
                    FormKind::Unitary => a == self.conj(b),
                    _ => a == b && (i != j || a == fld.add(self.qvals[i], self.qvals[i])),
                };
                if !ok {
                    return Err(FormError::Inconsistent(format!("Gram entries ({i},{j}) and ({j},{i}) violate the {} symmetry", self.kind)));
                }
            }
        }
        Ok(())
    }

    pub fn vector_count(&self) -> usize {
        self.field.order().pow(self.dim as u32)
    }

    /// Vector with lexicographic index `idx` (first coordinate most significant).
    pub fn vector(&self, mut idx: usize) -> Vector {
        let s = self.field.order();
        let mut v = vec![0; self.dim];
        for c in v.iter_mut().rev() {
            *c = (idx % s) as Elem;
            idx /= s;
        }
        v
    }

    pub fn index_of(&self, v: &[Elem]) -> usize {
        let s = self.field.order();
        v.iter().fold(0, |acc, &c| acc * s + c as usize)
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.vector_count()).map(|i| self.vector(i))
    }

    /// Scales `v` so that its first non-zero coordinate is 1. `None` for the zero vector.
    pub fn normalize(&self, v: &[Elem]) -> Option<Vector> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        let inv = self.field.inv(lead)?;
        Some(v.iter().map(|&c| self.field.mul(c, inv)).collect())
    }

    /// Singular 1-subspaces, each given by its normalised spanning vector, in lexicographic order.
    pub fn singular_points(&self) -> Vec<Vector> {
        self.vectors().filter(|v| v.iter().find(|&&c| c != 0) == Some(&1) && self.is_singular(v)).collect()
    }

    /// Totally singular 2-subspaces as sorted lists of indices into [`Self::singular_points`].
    /// Lines are ordered by their point lists.
    pub fn ts_lines(&self) -> Vec<Vec<usize>> {
        let points = self.singular_points();
        let lookup: HashMap<&[Elem], usize> = points.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
        let fld = &self.field;
        let mut lines = Vec::new();
        for (a, va) in points.iter().enumerate() {
            for (b, vb) in points.iter().enumerate().skip(a + 1) {
                if self.f(va, vb) != 0 {
                    continue;
                }
                // the other points are <vb + λ va>; keep the line once, from its two least points
                let mut line = vec![a, b];
                let mut least_pair = true;
                for lambda in fld.elements().skip(1) {
                    let w: Vector = va.iter().zip(vb).map(|(&x, &y)| fld.add(y, fld.mul(lambda, x))).collect();
                    let w = self.normalize(&w).expect("independent vectors");
                    let idx = *lookup.get(w.as_slice()).expect("totally singular line contains only singular points");
                    if idx < b {
                        least_pair = false;
                        break;
                    }
                    line.push(idx);
                }
                if least_pair {
                    line.sort_unstable();
                    lines.push(line);
                }
            }
        }
        lines.sort();
        lines
    }

    /// Some `w` with `Q(w) = 0` and `f(v, w) = 1`, first in lexicographic order.
    pub fn hyperbolic_partner(&self, v: &[Elem]) -> Result<Vector, FormError> {
        self.check_dim(v)?;
        if !self.kind.is_quadratic() {
            return Err(FormError::Unsupported("hyperbolic partners are defined for quadratic spaces".into()));
        }
        if v.iter().all(|&c| c == 0) || self.q(v) != 0 {
            return Err(FormError::Unsupported("vector must be non-zero and singular".into()));
        }
        self.vectors()
            .find(|w| self.q(w) == 0 && self.f(v, w) == 1)
            .ok_or_else(|| FormError::Inconsistent("no hyperbolic partner exists; the form is degenerate".into()))
    }
}

/// Rank of a square matrix over `field` by Gaussian elimination.
pub(crate) fn gram_rank(field: &Field, m: &[Elem], n: usize) -> usize {
    let mut a = m.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else { continue };
        for c in 0..n {
            a.swap(rank * n + c, piv * n + c);
        }
        let inv = field.inv(a[rank * n + col]).unwrap();
        for c in 0..n {
            a[rank * n + c] = field.mul(a[rank * n + c], inv);
        }
        for r in 0..n {
            if r != rank && a[r * n + col] != 0 {
                let factor = a[r * n + col];
                for c in 0..n {
                    let sub = field.mul(factor, a[rank * n + c]);
                    a[r * n + c] = field.sub(a[r * n + c], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: usize, i: usize) -> Vector {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    #[test]
    fn minus_type_alpha_values() {
        assert_eq!(minus_type_alpha(&Field::new(2).unwrap()), 1);
        // -1 in GF(3)
        assert_eq!(minus_type_alpha(&Field::new(3).unwrap()), 2);
        let f4 = Field::new(4).unwrap();
        let a = minus_type_alpha(&f4);
        assert!(a != 0 && a != 1);
        let s = FormedSpace::standard(FormKind::QuadraticMinus, 6, 3).unwrap();
        assert_eq!(s.basis_q(5), 2);
    }

    #[test]
    fn plus_type_basis_is_singular() {
        let s = FormedSpace::standard(FormKind::QuadraticPlus, 6, 2).unwrap();
        for i in 0..6 {
            assert_eq!(s.eval_q(&unit(6, i)).unwrap(), 0);
        }
    }

    #[test]
    fn minus_type_polarisation_example() {
        let s = FormedSpace::standard(FormKind::QuadraticMinus, 6, 2).unwrap();
        // e_m + f_m = x + y
        let mut v = vec![0; 6];
        v[2] = 1;
        v[5] = 1;
        let direct = s.eval_q(&v).unwrap();
        let via = s.field().add(s.field().add(s.basis_q(2), s.basis_q(5)), s.gram(2, 5));
        assert_eq!(direct, via);
        assert_eq!(direct, 1);
    }

    #[test]
    fn symplectic_pairing_and_alternating() {
        let s = FormedSpace::standard(FormKind::Symplectic, 4, 2).unwrap();
        assert_eq!(s.eval_f(&unit(4, 0), &unit(4, 2)).unwrap(), 1);
        for v in s.vectors() {
            assert_eq!(s.eval_f(&v, &v).unwrap(), 0);
        }
        assert_eq!(s.singular_points().len(), 15);
        let s3 = FormedSpace::standard(FormKind::Symplectic, 4, 3).unwrap();
        for v in s3.vectors() {
            assert_eq!(s3.f(&v, &v), 0);
        }
    }

    #[test]
    fn zero_vector_and_dimension_errors() {
        let s = FormedSpace::standard(FormKind::QuadraticMinus, 4, 3).unwrap();
        assert_eq!(s.eval_q(&[0, 0, 0, 0]).unwrap(), 0);
        assert!(matches!(s.eval_q(&[0, 0, 0]), Err(FormError::Dimension { expected: 4, got: 3 })));
        assert!(s.eval_f(&[0; 4], &[0; 5]).is_err());
    }

    #[test]
    fn unsupported_combinations() {
        assert!(FormedSpace::standard(FormKind::Quadratic, 5, 2).is_err());
        assert!(FormedSpace::standard(FormKind::Symplectic, 5, 3).is_err());
        assert!(FormedSpace::standard(FormKind::QuadraticPlus, 6, 6).is_err());
        assert!(FormedSpace::standard(FormKind::Unitary, 4, 7).is_err());
    }

    #[test]
    fn polarisation_exhaustive() {
        let cases = [
            (FormKind::QuadraticPlus, 4, 2),
            (FormKind::QuadraticPlus, 6, 2),
            (FormKind::QuadraticMinus, 6, 2),
            (FormKind::QuadraticMinus, 4, 3),
            (FormKind::QuadraticMinus, 4, 4),
            (FormKind::Quadratic, 5, 3),
            (FormKind::QuadraticPlus, 4, 5),
        ];
        for (kind, d, q) in cases {
            let s = FormedSpace::standard(kind, d, q).unwrap();
            let fld = s.field().clone();
            let vs: Vec<_> = s.vectors().collect();
            assert!(vs.len() <= 1 << 16);
            for u in &vs {
                for lambda in fld.elements() {
                    let lu: Vector = u.iter().map(|&c| fld.mul(lambda, c)).collect();
                    assert_eq!(s.q(&lu), fld.mul(fld.mul(lambda, lambda), s.q(u)));
                }
                for v in &vs {
                    let sum: Vector = u.iter().zip(v).map(|(&a, &b)| fld.add(a, b)).collect();
                    let rhs = fld.add(fld.add(s.q(u), s.q(v)), s.f(u, v));
                    assert_eq!(s.q(&sum), rhs, "{kind} d={d} q={q}");
                }
            }
        }
    }

    #[test]
    fn unitary_is_hermitian() {
        for (d, q) in [(4, 2), (5, 2), (4, 3)] {
            let s = FormedSpace::standard(FormKind::Unitary, d, q).unwrap();
            let vs: Vec<_> = s.vectors().step_by(7).collect();
            for u in &vs {
                for v in &vs {
                    assert_eq!(s.f(u, v), s.conj(s.f(v, u)));
                }
            }
        }
    }

    #[test]
    fn gq_point_and_line_counts() {
        // (kind, d, q, points, lines) from the orders (s, t): points (s+1)(st+1), lines (t+1)(st+1)
        let cases = [
            (FormKind::Symplectic, 4, 2, 15, 15),
            (FormKind::Symplectic, 4, 3, 40, 40),
            (FormKind::Quadratic, 5, 3, 40, 40),
            (FormKind::QuadraticMinus, 6, 2, 27, 45),
            (FormKind::QuadraticMinus, 6, 3, 112, 280),
            (FormKind::Unitary, 4, 2, 45, 27),
            (FormKind::Unitary, 5, 2, 165, 297),
        ];
        for (kind, d, q, np, nl) in cases {
            let s = FormedSpace::standard(kind, d, q).unwrap();
            let pts = s.singular_points();
            let lines = s.ts_lines();
            assert_eq!((pts.len(), lines.len()), (np, nl), "{kind} d={d} q={q}");
            for line in &lines {
                for &a in line {
                    assert!(s.is_singular(&pts[a]));
                    for &b in line {
                        assert_eq!(s.f(&pts[a], &pts[b]), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn plus_type_singular_vector_count() {
        let s = FormedSpace::standard(FormKind::QuadraticPlus, 6, 2).unwrap();
        let nonzero_singular = s.vectors().filter(|v| v.iter().any(|&c| c != 0) && s.q(v) == 0).count();
        assert_eq!(nonzero_singular, 35);
    }

    #[test]
    fn minus_type_has_no_totally_singular_planes() {
        for q in [2, 3] {
            let s = FormedSpace::standard(FormKind::QuadraticMinus, 6, q).unwrap();
            let pts = s.singular_points();
            for line in s.ts_lines() {
                let extends = pts.iter().enumerate().any(|(i, p)| !line.contains(&i) && line.iter().all(|&a| s.f(&pts[a], p) == 0));
                assert!(!extends, "q = {q}");
            }
        }
        // plus type of dimension 6 does have totally singular planes
        let s = FormedSpace::standard(FormKind::QuadraticPlus, 6, 2).unwrap();
        let pts = s.singular_points();
        let line = &s.ts_lines()[0];
        assert!(pts.iter().enumerate().any(|(i, p)| !line.contains(&i) && line.iter().all(|&a| s.f(&pts[a], p) == 0)));
    }

    #[test]
    fn hyperbolic_partner_examples() {
        let s = FormedSpace::standard(FormKind::QuadraticPlus, 6, 2).unwrap();
        assert_eq!(s.hyperbolic_partner(&unit(6, 0)).unwrap(), unit(6, 3));
        assert_eq!(s.hyperbolic_partner(&unit(6, 3)).unwrap(), unit(6, 0));
        let s3 = FormedSpace::standard(FormKind::QuadraticMinus, 6, 3).unwrap();
        for v in s3.singular_points().iter().step_by(5) {
            let w = s3.hyperbolic_partner(v).unwrap();
            assert_eq!(s3.q(&w), 0);
            assert_eq!(s3.f(v, &w), 1);
        }
        assert!(s3.hyperbolic_partner(&[0; 6]).is_err());
    }
}
