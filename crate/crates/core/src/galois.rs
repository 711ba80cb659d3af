//! Small finite fields GF(p^e), q <= 32, with full operation tables.
//!
//! Elements are integers `0..q` encoding polynomials over GF(p) in base p:
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` stands for `c_0 + c_1 X + ...`.
//! Arithmetic is modulo the least monic irreducible polynomial of degree e,
//! where polynomials are ordered by the same base-p encoding of their
//! non-leading coefficients.

use std::fmt;

use crate::error::FieldError;

/// Field element, an index in `0..q`.
pub type Elem = u8;

/// Largest supported field order.
pub const MAX_ORDER: usize = 32;

#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: usize,
    e: usize,
    q: usize,
    /// Non-leading coefficients `c_0..c_{e-1}` of the defining polynomial.
    modulus: Vec<usize>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) defined by {}", self.q, self.modulus_string())
    }
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

/// Multiply polynomials over GF(p) given as coefficient vectors (low first).
fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn digits(mut x: usize, p: usize, e: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(e);
    for _ in 0..e {
        d.push(x % p);
        x /= p;
    }
    d
}

/// True iff the monic polynomial `X^e + sum c_i X^i` has no monic factor of
/// degree 1..=e/2. Exhaustive, fine for q <= 32.
fn is_irreducible(coeffs: &[usize], p: usize) -> bool {
    let e = coeffs.len();
    let mut target = coeffs.to_vec();
    target.push(1);
    for d in 1..=e / 2 {
        for enc in 0..p.pow(d as u32) {
            let mut f = digits(enc, p, d);
            f.push(1);
            for genc in 0..p.pow((e - d) as u32) {
                let mut g = digits(genc, p, e - d);
                g.push(1);
                if poly_mul(&f, &g, p) == target {
                    return false;
                }
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(q). Rejects q that is not a prime power or exceeds [`MAX_ORDER`].
    pub fn new(q: usize) -> Result<Field, FieldError> {
        if q < 2 {
            return Err(FieldError::NotPrimePower { q, detail: "order must be at least 2".into() });
        }
        if q > MAX_ORDER {
            return Err(FieldError::TooLarge { q, max: MAX_ORDER });
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(FieldError::NotPrimePower {
                q,
                detail: format!("{q} = {p}^{e} * {rest} has a second prime factor {}", smallest_prime_factor(rest)),
            });
        }

        let modulus = if e == 1 {
            vec![0]
        } else {
            (0..p.pow(e as u32))
                .map(|enc| digits(enc, p, e))
                .find(|c| is_irreducible(c, p))
                .expect("an irreducible polynomial of every degree exists")
        };

        let mut field = Field { p, e, q, modulus, add: vec![0; q * q], mul: vec![0; q * q], neg: vec![0; q], inv: vec![0; q] };
        for a in 0..q {
            for b in 0..q {
                field.add[a * q + b] = field.slow_add(a, b) as Elem;
                field.mul[a * q + b] = field.slow_mul(a, b) as Elem;
            }
        }
        for a in 0..q {
            field.neg[a] = (0..q).find(|&b| field.add[a * q + b] == 0).unwrap() as Elem;
            if a != 0 {
                field.inv[a] = (0..q).find(|&b| field.mul[a * q + b] == 1).expect("field has inverses") as Elem;
            }
        }
        Ok(field)
    }

    fn slow_add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (digits(a, self.p, self.e), digits(b, self.p, self.e));
        da.iter().zip(&db).rev().fold(0, |acc, (x, y)| acc * self.p + (x + y) % self.p)
    }

    fn slow_mul(&self, a: usize, b: usize) -> usize {
        let (p, e) = (self.p, self.e);
        if e == 1 {
            return a * b % p;
        }
        let mut prod = poly_mul(&digits(a, p, e), &digits(b, p, e), p);
        // reduce: X^e = -sum c_i X^i
        for deg in (e..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = deg - e + i;
                prod[idx] = (prod[idx] + c * (p - m % p)) % p;
            }
        }
        prod[..e].iter().rev().fold(0, |acc, &x| acc * p + x)
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Coefficients `c_0..c_{e-1}` of the defining polynomial (monic term omitted).
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut terms = vec![if self.e == 1 { "X".to_string() } else { format!("X^{}", self.e) }];
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|x| x as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Elem, mut k: usize) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x^(p^k)`, the k-th power of the Frobenius automorphism.
    pub fn frobenius(&self, x: Elem, k: usize) -> Elem {
        (0..k % self.e).fold(x, |y, _| self.pow(y, self.p))
    }

    /// The integer `n` reduced into the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    /// Least element (in encoding order) generating the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        (1..self.q as Elem)
            .find(|&a| (1..self.q - 1).all(|k| self.pow(a, k) != 1))
            .expect("multiplicative group is cyclic")
    }

    pub fn is_square(&self, a: Elem) -> bool {
        self.elements().any(|x| self.mul(x, x) == a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [usize; 15] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27];

    #[test]
    fn prime_field_two() {
        let f = Field::new(2).unwrap();
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        // Exhaustive check of the four monic quadratics over GF(2).
        let irreducible: Vec<_> = (0..4).map(|enc| digits(enc, 2, 2)).filter(|c| is_irreducible(c, 2)).collect();
        assert_eq!(irreducible, vec![vec![1, 1]]);
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.modulus_string(), "X^2 + X + 1");
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12, 18, 20, 24, 28, 30] {
            assert!(Field::new(q).is_err(), "q = {q}");
        }
        let msg = Field::new(6).unwrap_err().to_string();
        assert!(msg.contains("6 = 2^1 * 3"), "{msg}");
        assert!(matches!(Field::new(49), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn frobenius_examples() {
        let f4 = Field::new(4).unwrap();
        // ω = X encoded as 2; ω^2 = ω + 1 encoded as 3
        assert_eq!(f4.frobenius(2, 1), f4.mul(2, 2));
        assert_eq!(f4.frobenius(2, 1), 3);
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.frobenius(1, 5), 1);
        let f9 = Field::new(9).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.frobenius(x, 2), x);
            assert_eq!(f9.pow(x, 9), x);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in SUPPORTED {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, q - 1), 1, "Lagrange fails in GF({q})");
                }
                assert_eq!(f.frobenius(a, f.degree()), a);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_bijection() {
        for q in SUPPORTED {
            let f = Field::new(q).unwrap();
            let mut img: Vec<_> = f.elements().map(|x| f.frobenius(x, 1)).collect();
            img.sort_unstable();
            assert_eq!(img, f.elements().collect::<Vec<_>>());
        }
    }
}
