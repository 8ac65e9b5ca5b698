//! Table-driven arithmetic in GF(p^n).
//!
//! Elements are polynomials over GF(p) of degree below `n`, reduced modulo a
//! monic irreducible polynomial. Each element is identified with its canonical
//! integer encoding `c0 + c1*p + ... + c_{n-1}*p^{n-1}`, which also fixes every
//! ordering used downstream.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which the arithmetic tables are built.
pub const MAX_ORDER: u32 = 1024;

/// An element of a finite field, stored as its canonical encoding.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub fn encoding(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// The field GF(p^n). Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || (self.t.p == other.t.p && self.t.n == other.t.n)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.t.p)
            .field("n", &self.t.n)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

/// Serialized form of a field: characteristic, degree and modulus coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `p^e` if it is a prime power with prime `p`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Polynomials over GF(p), low degree first, no trailing-zero normalisation
// needed by callers.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (j, &mj) in m.iter().enumerate() {
            let idx = dr - dm + j;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * mj as u64) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    mod_pow(a, p - 2, p)
}

fn mod_pow(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = a as u64 % p as u64;
    let mut acc = 1u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Monic polynomials of degree `d`, low coefficients enumerated
/// lexicographically with the constant term most significant.
fn monic_polys(d: u32, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |mut idx| {
        let mut c = vec![0u32; d as usize + 1];
        for j in (0..d as usize).rev() {
            c[j] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        c[d as usize] = 1;
        c
    })
}

/// Irreducibility by exhaustive search for a monic factor of degree at most `deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let deg = poly.len() as u32 - 1;
    (1..=deg / 2).all(|d| monic_polys(d, p).all(|f| !poly_rem(&poly, &f, p).is_empty()))
}

/// Lexicographically smallest monic irreducible polynomial of degree `n`
/// (coefficients compared from the constant term upwards).
pub fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    monic_polys(n, p)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    pub fn new(p: u32, n: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n < 1 {
            return Err(Error::BadDegree(n));
        }
        let q64 = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = smallest_irreducible(p, n);
        let digits = |mut e: u32| -> Vec<u32> {
            let mut c = vec![0u32; n as usize];
            for cj in c.iter_mut() {
                *cj = e % p;
                e /= p;
            }
            c
        };
        let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &cj| acc * p + cj) };
        let coeffs: Vec<Vec<u32>> = (0..q).map(digits).collect();

        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> = coeffs[a]
                    .iter()
                    .zip(&coeffs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = encode(&sum) as u16;

                let mut prod = vec![0u32; 2 * n as usize];
                for (i, &x) in coeffs[a].iter().enumerate() {
                    for (j, &y) in coeffs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(n as usize, 0);
                mul[a * qs + b] = encode(&r) as u16;
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u16;
            }
        }
        Ok(Field {
            t: Arc::new(Tables {
                p,
                n,
                q,
                modulus,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u32) -> Result<Field> {
        match prime_power(q) {
            Some((p, n)) => Field::new(p, n),
            None => Err(Error::NotPrime(q)),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.n
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Modulus coefficients, low degree first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.t.p,
            n: self.t.n,
            modulus: self.t.modulus.clone(),
        }
    }

    pub fn element(&self, encoding: u32) -> Result<FieldElement> {
        if encoding < self.t.q {
            Ok(FieldElement(encoding as u16))
        } else {
            Err(Error::ForeignElement {
                encoding: encoding as u64,
                order: self.t.q,
            })
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.encoding() < self.t.q
    }

    /// Image of an integer under Z -> GF(p) -> GF(q).
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.t.p as i64) as u16)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.t.q as u16).map(FieldElement)
    }

    /// Polynomial coefficients of `a`, low degree first.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        let mut e = a.encoding();
        (0..self.t.n)
            .map(|_| {
                let c = e % self.t.p;
                e /= self.t.p;
                c
            })
            .collect()
    }

    #[inline]
    fn idx(&self, a: FieldElement, b: FieldElement) -> usize {
        debug_assert!(self.contains(a) && self.contains(b), "element from another field");
        a.0 as usize * self.t.q as usize + b.0 as usize
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.t.add[self.idx(a, b)])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.t.mul[self.idx(a, b)])
    }

    #[inline]
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(FieldElement(self.t.inv[a.0 as usize]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Elements of the unique subfield GF(p^i), i.e. the fixed points of
    /// `x -> x^(p^i)`, in encoding order.
    pub fn subfield_elements(&self, i: u32) -> Result<Vec<FieldElement>> {
        self.check_divisor(i)?;
        let e = (self.t.p as u64).pow(i);
        Ok(self.elements().filter(|&x| self.pow(x, e) == x).collect())
    }

    pub fn in_subfield(&self, a: FieldElement, i: u32) -> Result<bool> {
        self.check_divisor(i)?;
        Ok(self.pow(a, (self.t.p as u64).pow(i)) == a)
    }

    pub(crate) fn check_divisor(&self, i: u32) -> Result<()> {
        if i == 0 || self.t.n % i != 0 {
            Err(Error::NotADivisor(i, self.t.n))
        } else {
            Ok(())
        }
    }
}
