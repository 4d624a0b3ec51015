//! Arithmetic in the finite field F_q, q = p^m <= 64.
//!
//! Elements are stored as the integer `sum coords_i * p^i`, where `coords` are the
//! coordinates in the power basis of a fixed Conway polynomial. All operations go
//! through precomputed addition and multiplication tables held by a shared
//! [`Field`] handle.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of F_q, serialized as its integer code in `[0, q)`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Fq(pub(crate) u8);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Integer code `sum coords_i * p^i`.
    #[inline]
    pub fn to_int(self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Characteristic, degree and defining modulus of F_q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    /// Monic modulus over F_p, coefficients low to high (length m + 1).
    pub modulus: Vec<u32>,
}

/// Conway polynomials for the non-prime fields with q <= 64, low-to-high coefficients.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let factors: Vec<u32> = (2..=order).filter(|d| order.is_multiple_of(*d) && is_prime(*d)).collect();
    (2..p)
        .find(|&g| {
            factors.iter().all(|f| {
                let mut acc = 1u64;
                for _ in 0..order / f {
                    acc = acc * g as u64 % p as u64;
                }
                acc != 1
            })
        })
        .expect("prime field has a primitive root")
}

impl FieldParams {
    /// Parameters for F_q, q a prime power <= 64.
    pub fn new(q: u32) -> Result<Self> {
        if !(2..=64).contains(&q) {
            return Err(Error::Config(format!("q = {q} outside supported range 2..=64")));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut m = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::Config(format!("q = {q} is not a prime power")));
        }
        let modulus = if m == 1 {
            // Conway polynomial of a prime field: x - g for the least primitive root g.
            vec![(p - smallest_primitive_root(p)) % p, 1]
        } else {
            CONWAY
                .iter()
                .find(|(cp, cm, _)| *cp == p && *cm == m)
                .map(|(_, _, c)| c.to_vec())
                .ok_or_else(|| Error::Config(format!("no modulus table entry for q = {q}")))?
        };
        Ok(FieldParams { p, m, q, modulus })
    }
}

struct Tables {
    params: FieldParams,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Shared handle to the arithmetic tables of F_q. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.params == other.0.params
    }
}

impl Eq for Field {}

fn to_coords(x: u32, p: u32, m: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(m as usize);
    let mut x = x;
    for _ in 0..m {
        v.push(x % p);
        x /= p;
    }
    v
}

fn from_coords(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        Ok(Field::from_params(FieldParams::new(q)?))
    }

    pub fn from_params(params: FieldParams) -> Field {
        let (p, m, q) = (params.p, params.m, params.q);
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let coords: Vec<Vec<u32>> = (0..q).map(|x| to_coords(x, p, m)).collect();
        for a in 0..qs {
            for b in 0..qs {
                let s: Vec<u32> = (0..m as usize).map(|i| (coords[a][i] + coords[b][i]) % p).collect();
                add[a * qs + b] = from_coords(&s, p) as u8;
                mul[a * qs + b] = from_coords(&mul_mod(&coords[a], &coords[b], &params.modulus, p), p) as u8;
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..qs)
            .map(|a| if a == 0 { 0 } else { (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8 })
            .collect();
        Field(Arc::new(Tables { params, add, mul, neg, inv }))
    }

    pub fn params(&self) -> &FieldParams {
        &self.0.params
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.params.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.params.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.params.m
    }

    /// Element from its integer code.
    pub fn elem(&self, code: u32) -> Result<Fq> {
        if code >= self.q() {
            return Err(Error::Domain(format!("{code} is not an element code of F_{}", self.q())));
        }
        Ok(Fq(code as u8))
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p() as i64) as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q()).map(|c| Fq(c as u8))
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.0.add[a.0 as usize * self.q() as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.0.mul[a.0 as usize * self.q() as usize + b.0 as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::ZeroDivision { q: self.q() });
        }
        Ok(Fq(self.0.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `(-1)^k`.
    #[inline]
    pub fn sign(&self, k: i64) -> Fq {
        if k.rem_euclid(2) == 0 {
            Fq::ONE
        } else {
            self.neg(Fq::ONE)
        }
    }

    /// Row of the multiplication table for `a`, indexed by the other factor's code.
    #[inline]
    pub(crate) fn mul_row(&self, a: Fq) -> &[u8] {
        let q = self.q() as usize;
        &self.0.mul[a.0 as usize * q..(a.0 as usize + 1) * q]
    }

    #[inline]
    pub(crate) fn add_row(&self, a: Fq) -> &[u8] {
        let q = self.q() as usize;
        &self.0.add[a.0 as usize * q..(a.0 as usize + 1) * q]
    }
}

/// Product of two coordinate vectors reduced modulo a monic polynomial over F_p.
fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (m..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &mc) in modulus[..m].iter().enumerate() {
            let idx = k - m + i;
            prod[idx] = (prod[idx] + (p - c) * mc) % p;
        }
    }
    prod.truncate(m);
    prod
}

/// Whether a monic polynomial over F_p has no factor of degree between 1 and deg/2.
pub fn is_irreducible_over_prime(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut divisor = to_coords(code as u32, p, d as u32);
            divisor.push(1);
            if divides(&divisor, poly, p) {
                return false;
            }
        }
    }
    true
}

fn divides(divisor: &[u32], poly: &[u32], p: u32) -> bool {
    let mut rem = poly.to_vec();
    let d = divisor.len() - 1;
    for k in (d..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        for (i, &dc) in divisor.iter().enumerate() {
            let idx = k - d + i;
            rem[idx] = (rem[idx] + (p - c) * dc) % p;
        }
    }
    rem[..d].iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: &[u32] = &[2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27, 32, 49, 61, 64];

    #[test]
    fn mod3_addition() {
        let f = Field::new(3).unwrap();
        assert_eq!(f.add(Fq(2), Fq(2)), Fq(1));
    }

    #[test]
    fn q4_generator_squares_to_g_plus_one() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.params().modulus, vec![1, 1, 1]);
        // g has code 2 (coords [0, 1]); g + 1 has code 3.
        assert_eq!(f.mul(Fq(2), Fq(2)), Fq(3));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = Field::new(9).unwrap();
        assert_eq!(f.inv(Fq::ZERO), Err(Error::ZeroDivision { q: 9 }));
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(81).is_err());
    }

    #[test]
    fn moduli_are_irreducible() {
        for &q in SUPPORTED {
            let f = Field::new(q).unwrap();
            let pm = f.params();
            assert!(is_irreducible_over_prime(&pm.modulus, pm.p), "q = {q}");
            assert_eq!(pm.p.pow(pm.m), q);
        }
    }

    #[test]
    fn frobenius_is_identity_exhaustive() {
        for &q in SUPPORTED {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, q as u64), a, "q = {q}, a = {a}");
            }
        }
    }

    #[test]
    fn inverses_exhaustive() {
        for &q in SUPPORTED {
            let f = Field::new(q).unwrap();
            for a in f.elements().filter(|a| !a.is_zero()) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Fq::ZERO);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn ring_axioms_random_large(qi in 0usize..4, a in 0u32..64, b in 0u32..64, c in 0u32..64) {
            let q = [25u32, 27, 32, 64][qi];
            let f = Field::new(q).unwrap();
            let (a, b, c) = (Fq((a % q) as u8), Fq((b % q) as u8), Fq((c % q) as u8));
            proptest::prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            proptest::prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            proptest::prop_assert_eq!(f.add(a, b), f.add(b, a));
        }
    }
}
