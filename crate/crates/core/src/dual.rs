//! Dual numbers `a + b*eps` over GF(q), `eps^2 = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// `a + b*eps`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DualNumber {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl DualNumber {
    pub fn new(a: FieldElement, b: FieldElement) -> Self {
        DualNumber { a, b }
    }

    /// A dual number is invertible exactly when its field part is nonzero.
    #[inline]
    pub fn is_unit(self) -> bool {
        !self.a.is_zero()
    }
}

impl fmt::Debug for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// The ring D(GF(q)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRing {
    field: Field,
}

impl DualRing {
    pub fn new(field: Field) -> Self {
        DualRing { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn zero(&self) -> DualNumber {
        DualNumber::default()
    }

    pub fn one(&self) -> DualNumber {
        self.embed(self.field.one())
    }

    pub fn epsilon(&self) -> DualNumber {
        DualNumber::new(self.field.zero(), self.field.one())
    }

    /// `a + 0*eps`.
    pub fn embed(&self, a: FieldElement) -> DualNumber {
        DualNumber::new(a, self.field.zero())
    }

    #[inline]
    pub fn add(&self, u: DualNumber, v: DualNumber) -> DualNumber {
        DualNumber::new(self.field.add(u.a, v.a), self.field.add(u.b, v.b))
    }

    #[inline]
    pub fn neg(&self, u: DualNumber) -> DualNumber {
        DualNumber::new(self.field.neg(u.a), self.field.neg(u.b))
    }

    #[inline]
    pub fn sub(&self, u: DualNumber, v: DualNumber) -> DualNumber {
        self.add(u, self.neg(v))
    }

    #[inline]
    pub fn mul(&self, u: DualNumber, v: DualNumber) -> DualNumber {
        let f = &self.field;
        DualNumber::new(f.mul(u.a, v.a), f.add(f.mul(u.a, v.b), f.mul(u.b, v.a)))
    }

    /// `(a + b eps)^-1 = a^-1 - a^-2 b eps`.
    #[inline]
    pub fn inverse(&self, u: DualNumber) -> Result<DualNumber> {
        let f = &self.field;
        let ai = f.inv(u.a).map_err(|_| Error::NonUnit)?;
        Ok(DualNumber::new(ai, f.neg(f.mul(f.mul(ai, ai), u.b))))
    }

    pub fn is_unit(&self, u: DualNumber) -> bool {
        u.is_unit()
    }

    /// `a.encoding * q + b.encoding`.
    pub fn encode(&self, u: DualNumber) -> u32 {
        u.a.encoding() * self.field.order() + u.b.encoding()
    }

    pub fn decode(&self, code: u32) -> Result<DualNumber> {
        let q = self.field.order();
        if code >= q * q {
            return Err(Error::ForeignElement {
                encoding: code as u64,
                order: q,
            });
        }
        Ok(DualNumber::new(
            self.field.element(code / q)?,
            self.field.element(code % q)?,
        ))
    }

    /// All q^2 elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = DualNumber> + '_ {
        self.field
            .elements()
            .flat_map(move |a| self.field.elements().map(move |b| DualNumber::new(a, b)))
    }

    /// The maximal ideal N = {b eps}.
    pub fn ideal(&self) -> impl Iterator<Item = DualNumber> + '_ {
        self.field
            .elements()
            .map(move |b| DualNumber::new(self.field.zero(), b))
    }

    pub fn units(&self) -> impl Iterator<Item = DualNumber> + '_ {
        self.elements().filter(|u| u.is_unit())
    }

    /// Exhaustive check that D is a Laguerre algebra over its embedded field:
    /// the non-units are exactly N, N is an ideal, and D = K + N uniquely.
    pub fn is_laguerre_algebra(&self) -> bool {
        let in_ideal = |u: DualNumber| u.a.is_zero();
        // (a) non-units = N; invertibility decided by searching for an inverse
        let units_match = self.elements().all(|u| {
            let invertible = self.elements().any(|v| self.mul(u, v) == self.one());
            invertible != in_ideal(u)
        });
        // (b) N * D within N, N + N within N
        let ideal_closed = self.ideal().all(|n| {
            self.elements().all(|u| in_ideal(self.mul(n, u)))
                && self.ideal().all(|m| in_ideal(self.add(n, m)))
        });
        // (c) unique decomposition u = k + m with k in K, m in N
        let decomposes = self.elements().all(|u| {
            let count = self
                .field
                .elements()
                .flat_map(|k| self.ideal().map(move |m| (k, m)))
                .filter(|&(k, m)| self.add(self.embed(k), m) == u)
                .count();
            count == 1
        });
        units_match && ideal_closed && decomposes
    }
}

/// Whether D(GF(q)) is a Laguerre algebra over `field`.
pub fn laguerre_algebra_check(field: &Field) -> bool {
    DualRing::new(field.clone()).is_laguerre_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, n: u32) -> DualRing {
        DualRing::new(Field::new(p, n).unwrap())
    }

    fn d(r: &DualRing, a: u32, b: u32) -> DualNumber {
        DualNumber::new(r.field().element(a).unwrap(), r.field().element(b).unwrap())
    }

    #[test]
    fn epsilon_squares_to_zero() {
        let r = ring(5, 1);
        assert_eq!(r.mul(r.epsilon(), r.epsilon()), r.zero());
    }

    #[test]
    fn additive_identity_and_product_rule() {
        let r = ring(3, 1);
        for u in r.elements() {
            assert_eq!(r.add(u, r.zero()), u);
        }
        assert_eq!(r.mul(d(&r, 1, 2), d(&r, 2, 1)), d(&r, 2, 2));
    }

    #[test]
    fn unit_test_and_counts() {
        let r = ring(7, 1);
        assert!(d(&r, 1, 5).is_unit());
        assert!(!d(&r, 0, 3).is_unit());

        let r4 = ring(2, 2);
        let by_search = r4
            .elements()
            .filter(|&u| r4.elements().any(|v| r4.mul(u, v) == r4.one()))
            .count();
        assert_eq!(by_search, 12);
        assert_eq!(r4.units().count(), 12);
    }

    #[test]
    fn inverses() {
        let r = ring(5, 1);
        assert_eq!(r.inverse(r.one()).unwrap(), r.one());
        for a in r.field().elements().skip(1) {
            let inv = r.inverse(r.embed(a)).unwrap();
            assert_eq!(inv, r.embed(r.field().inv(a).unwrap()));
        }
        let u = d(&r, 2, 3);
        let searched: Vec<_> = r.elements().filter(|&v| r.mul(u, v) == r.one()).collect();
        assert_eq!(searched, vec![d(&r, 3, 3)]);
        assert_eq!(r.inverse(u).unwrap(), d(&r, 3, 3));
        assert_eq!(r.inverse(d(&r, 0, 4)), Err(Error::NonUnit));
    }

    #[test]
    fn laguerre_algebra() {
        assert!(laguerre_algebra_check(&Field::new(2, 1).unwrap()));
        assert!(laguerre_algebra_check(&Field::new(3, 1).unwrap()));
        assert!(laguerre_algebra_check(&Field::new(3, 2).unwrap()));
    }

    #[test]
    fn encoding_roundtrip() {
        let r = ring(3, 2);
        for (i, u) in r.elements().enumerate() {
            assert_eq!(r.encode(u), i as u32);
            assert_eq!(r.decode(i as u32).unwrap(), u);
        }
        assert!(r.decode(81).is_err());
    }
}
