//! The projective group of the line over the dual numbers: invertible 2x2
//! matrices modulo unit scalars.
//!
//! Points are row vectors and act on the right: `R(x1, x2)` goes to
//! `R(x1 a + x2 c, x1 b + x2 d)` under `(a, b; c, d)`. Consequently
//! `compose(g, h)` (first `g`, then `h`) is the matrix product `g * h`.

use std::fmt;

use crate::dual::{DualNumber, DualRing};
use crate::error::{Error, Result};
use crate::line::{LaguerreLine, LaguerrePoint, PointId};

/// Canonically scaled matrix `(a, b; c, d)`: the first unit entry in the
/// order a, b, c, d equals 1.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Projectivity {
    m: [DualNumber; 4],
}

impl Projectivity {
    pub fn entries(&self) -> [DualNumber; 4] {
        self.m
    }
}

impl fmt::Debug for Projectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[{a:?} {b:?}; {c:?} {d:?}]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveGroup {
    line: LaguerreLine,
}

/// `q^4 (q^2 - 1)`.
pub fn group_order_formula(q: u64) -> u64 {
    q.pow(4) * (q * q - 1)
}

impl ProjectiveGroup {
    pub fn new(line: LaguerreLine) -> Self {
        ProjectiveGroup { line }
    }

    pub fn line(&self) -> &LaguerreLine {
        &self.line
    }

    fn ring(&self) -> &DualRing {
        self.line.ring()
    }

    fn det(&self, m: &[DualNumber; 4]) -> DualNumber {
        let r = self.ring();
        r.sub(r.mul(m[0], m[3]), r.mul(m[1], m[2]))
    }

    #[inline]
    fn canonical(&self, m: [DualNumber; 4]) -> Projectivity {
        let r = self.ring();
        let lead = m
            .iter()
            .copied()
            .find(|e| e.is_unit())
            .expect("regular matrix has a unit entry");
        let s = r.inverse(lead).expect("unit");
        Projectivity {
            m: m.map(|e| r.mul(s, e)),
        }
    }

    pub fn make_projectivity(
        &self,
        a: DualNumber,
        b: DualNumber,
        c: DualNumber,
        d: DualNumber,
    ) -> Result<Projectivity> {
        let m = [a, b, c, d];
        if !self.det(&m).is_unit() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.canonical(m))
    }

    pub fn identity(&self) -> Projectivity {
        let r = self.ring();
        Projectivity {
            m: [r.one(), r.zero(), r.zero(), r.one()],
        }
    }

    /// First `g`, then `h`.
    pub fn compose(&self, g: &Projectivity, h: &Projectivity) -> Projectivity {
        let r = self.ring();
        let [a, b, c, d] = g.m;
        let [e, f, x, y] = h.m;
        self.canonical([
            r.add(r.mul(a, e), r.mul(b, x)),
            r.add(r.mul(a, f), r.mul(b, y)),
            r.add(r.mul(c, e), r.mul(d, x)),
            r.add(r.mul(c, f), r.mul(d, y)),
        ])
    }

    /// Adjugate; the determinant is a scalar and disappears in canonical form.
    pub fn inverse(&self, g: &Projectivity) -> Projectivity {
        let r = self.ring();
        let [a, b, c, d] = g.m;
        self.canonical([d, r.neg(b), r.neg(c), a])
    }

    #[inline]
    pub fn apply(&self, g: &Projectivity, p: LaguerrePoint) -> LaguerrePoint {
        let r = self.ring();
        let (x1, x2) = self.line.representative(p);
        let [a, b, c, d] = g.m;
        let y1 = r.add(r.mul(x1, a), r.mul(x2, c));
        let y2 = r.add(r.mul(x1, b), r.mul(x2, d));
        self.line
            .make_point(y1, y2)
            .expect("regular matrices map admissible pairs to admissible pairs")
    }

    #[inline]
    pub fn apply_id(&self, g: &Projectivity, id: PointId) -> PointId {
        let p = self.line.point(id).expect("valid point id");
        self.line.point_id(self.apply(g, p))
    }

    /// Induced permutation of point ids.
    pub fn permutation(&self, g: &Projectivity) -> Vec<PointId> {
        (0..self.line.point_count() as PointId)
            .map(|id| self.apply_id(g, id))
            .collect()
    }

    /// The unique `g` sending `R(1,0), R(0,1), R(1,1)` to `p1, p2, p3`.
    pub fn map_standard_triple(
        &self,
        p1: LaguerrePoint,
        p2: LaguerrePoint,
        p3: LaguerrePoint,
    ) -> Result<Projectivity> {
        let l = &self.line;
        if !l.is_transversal(&[p1, p2, p3]) {
            return Err(Error::NotTransversal);
        }
        let r = self.ring();
        let (a1, b1) = l.representative(p1);
        let (a2, b2) = l.representative(p2);
        let (a3, b3) = l.representative(p3);
        // solve l1 (a1, b1) + l2 (a2, b2) = (a3, b3) by Cramer's rule
        let det = r.sub(r.mul(a1, b2), r.mul(a2, b1));
        let det_inv = r.inverse(det)?;
        let l1 = r.mul(r.sub(r.mul(a3, b2), r.mul(a2, b3)), det_inv);
        let l2 = r.mul(r.sub(r.mul(a1, b3), r.mul(a3, b1)), det_inv);
        self.make_projectivity(r.mul(l1, a1), r.mul(l1, b1), r.mul(l2, a2), r.mul(l2, b2))
    }

    /// The unique `g` with `src[j] -> dst[j]`.
    pub fn map_triple(&self, src: [LaguerrePoint; 3], dst: [LaguerrePoint; 3]) -> Result<Projectivity> {
        let s = self.map_standard_triple(src[0], src[1], src[2])?;
        let t = self.map_standard_triple(dst[0], dst[1], dst[2])?;
        Ok(self.compose(&self.inverse(&s), &t))
    }

    /// `R(1,0), R(0,1), R(1,1)`.
    pub fn standard_triple(&self) -> [LaguerrePoint; 3] {
        let f = self.line.field();
        [self.line.infinity(), self.line.affine(f.zero()), self.line.affine(f.one())]
    }

    /// All ordered triples of pairwise non-parallel points, lexicographic in ids.
    pub fn transversal_triples(&self) -> Vec<[PointId; 3]> {
        let l = &self.line;
        let v = l.point_count() as PointId;
        let mut out = Vec::new();
        for x in 0..v {
            for y in (0..v).filter(|&y| l.class_of_id(y) != l.class_of_id(x)) {
                for z in (0..v).filter(|&z| {
                    l.class_of_id(z) != l.class_of_id(x) && l.class_of_id(z) != l.class_of_id(y)
                }) {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }

    /// Every element exactly once, one per ordered transversal triple (the
    /// image of the standard triple), in triple order.
    pub fn enumerate(&self) -> Vec<Projectivity> {
        let l = &self.line;
        self.transversal_triples()
            .into_iter()
            .map(|[x, y, z]| {
                let pt = |id| l.point(id).expect("valid id");
                self.map_standard_triple(pt(x), pt(y), pt(z))
                    .expect("triple is transversal")
            })
            .collect()
    }

    /// Enumeration straight from the definition: every matrix with unit
    /// determinant, canonicalised and deduplicated. Costs q^8 and is meant
    /// only as an independent cross-check at small q.
    pub fn enumerate_by_matrices(&self) -> Vec<Projectivity> {
        let r = self.ring();
        let els: Vec<_> = r.elements().collect();
        let mut out = std::collections::BTreeSet::new();
        // canonical forms start with a = 1, or a in N and b = 1, ...; scanning
        // matrices whose first unit is 1 is enough and already canonical
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        let m = [a, b, c, d];
                        if self.det(&m).is_unit() {
                            let first = m.iter().find(|e| e.is_unit()).unwrap();
                            if *first == r.one() {
                                out.insert(Projectivity { m });
                            }
                        }
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Whether `g` has a scalar multiple with all entries in the embedded
    /// subfield GF(p^i).
    pub fn subfield_group_membership(&self, g: &Projectivity, i: u32) -> Result<bool> {
        let f = self.line.field();
        // the canonical representative already has a leading 1, so it is the
        // only candidate multiple
        for e in g.m {
            if !e.b.is_zero() || !f.in_subfield(e.a, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Row-major dual-number encodings.
    pub fn encode(&self, g: &Projectivity) -> [u32; 4] {
        g.m.map(|e| self.ring().encode(e))
    }
}
