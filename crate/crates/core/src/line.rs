//! The projective line over the dual numbers.
//!
//! Proper points are normalised to `R(p, 1)` and improper points to
//! `R(1, delta*eps)`. Point ids follow the canonical listing: proper points
//! by the encoding of `p` (ids `0..q^2`), then improper points by `delta`
//! (ids `q^2..q^2+q`).

use serde::{Deserialize, Serialize};

use crate::dual::{DualNumber, DualRing};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Index of a point in the canonical listing.
pub type PointId = u32;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LaguerrePoint {
    /// `R(p, 1)`.
    Proper(DualNumber),
    /// `R(1, delta*eps)`.
    Improper(FieldElement),
}

impl LaguerrePoint {
    pub fn is_proper(&self) -> bool {
        matches!(self, LaguerrePoint::Proper(_))
    }
}

/// Serialized point: `{"kind": "proper", "rep": int}` or `{"kind": "improper", "delta": int}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PointRepr {
    Proper { rep: u32 },
    Improper { delta: u32 },
}

/// Label of a parallel class: the common field part of its proper points, or
/// the class of improper points.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ClassLabel {
    Proper(FieldElement),
    Improper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelClass {
    pub label: ClassLabel,
    pub members: Vec<LaguerrePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaguerreLine {
    ring: DualRing,
}

impl LaguerreLine {
    pub fn new(field: Field) -> Self {
        LaguerreLine {
            ring: DualRing::new(field),
        }
    }

    pub fn ring(&self) -> &DualRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn q(&self) -> u32 {
        self.field().order()
    }

    pub fn point_count(&self) -> usize {
        let q = self.q() as usize;
        q * q + q
    }

    /// Canonical point of the admissible pair `(x1, x2)`.
    #[inline]
    pub fn make_point(&self, x1: DualNumber, x2: DualNumber) -> Result<LaguerrePoint> {
        let r = &self.ring;
        if x2.is_unit() {
            Ok(LaguerrePoint::Proper(r.mul(x1, r.inverse(x2)?)))
        } else if x1.is_unit() {
            Ok(LaguerrePoint::Improper(r.mul(x2, r.inverse(x1)?).b))
        } else {
            Err(Error::Inadmissible)
        }
    }

    /// The canonical admissible pair of `p`.
    #[inline]
    pub fn representative(&self, p: LaguerrePoint) -> (DualNumber, DualNumber) {
        let f = self.field();
        match p {
            LaguerrePoint::Proper(rep) => (rep, self.ring.one()),
            LaguerrePoint::Improper(delta) => (self.ring.one(), DualNumber::new(f.zero(), delta)),
        }
    }

    /// Parallelism: the determinant of the representatives is a non-unit.
    pub fn is_parallel(&self, p: LaguerrePoint, q: LaguerrePoint) -> bool {
        let r = &self.ring;
        let (p1, p2) = self.representative(p);
        let (q1, q2) = self.representative(q);
        !r.sub(r.mul(p1, q2), r.mul(q1, p2)).is_unit()
    }

    /// `R(x + 0 eps, 1)`.
    pub fn affine(&self, x: FieldElement) -> LaguerrePoint {
        LaguerrePoint::Proper(self.ring.embed(x))
    }

    /// `R(1, 0)`.
    pub fn infinity(&self) -> LaguerrePoint {
        LaguerrePoint::Improper(self.field().zero())
    }

    #[inline]
    pub fn point_id(&self, p: LaguerrePoint) -> PointId {
        let q = self.q();
        match p {
            LaguerrePoint::Proper(rep) => self.ring.encode(rep),
            LaguerrePoint::Improper(delta) => q * q + delta.encoding(),
        }
    }

    #[inline]
    pub fn point(&self, id: PointId) -> Result<LaguerrePoint> {
        let q = self.q();
        if id < q * q {
            Ok(LaguerrePoint::Proper(self.ring.decode(id)?))
        } else if id < q * q + q {
            Ok(LaguerrePoint::Improper(self.field().element(id - q * q)?))
        } else {
            Err(Error::BadPointId(id as u64))
        }
    }

    /// Class index of a point id: the field part for proper points, `q` for
    /// the improper class.
    #[inline]
    pub fn class_of_id(&self, id: PointId) -> u32 {
        let q = self.q();
        if id < q * q {
            id / q
        } else {
            q
        }
    }

    pub fn class_label(&self, p: LaguerrePoint) -> ClassLabel {
        match p {
            LaguerrePoint::Proper(rep) => ClassLabel::Proper(rep.a),
            LaguerrePoint::Improper(_) => ClassLabel::Improper,
        }
    }

    pub fn repr(&self, p: LaguerrePoint) -> PointRepr {
        match p {
            LaguerrePoint::Proper(rep) => PointRepr::Proper {
                rep: self.ring.encode(rep),
            },
            LaguerrePoint::Improper(delta) => PointRepr::Improper {
                delta: delta.encoding(),
            },
        }
    }

    pub fn from_repr(&self, repr: PointRepr) -> Result<LaguerrePoint> {
        match repr {
            PointRepr::Proper { rep } => Ok(LaguerrePoint::Proper(self.ring.decode(rep)?)),
            PointRepr::Improper { delta } => {
                Ok(LaguerrePoint::Improper(self.field().element(delta)?))
            }
        }
    }

    pub fn all_points(&self) -> Vec<LaguerrePoint> {
        let proper = self.ring.elements().map(LaguerrePoint::Proper);
        let improper = self.field().elements().map(LaguerrePoint::Improper);
        proper.chain(improper).collect()
    }

    /// The q+1 parallel classes, the improper class last.
    pub fn parallel_classes(&self) -> Vec<ParallelClass> {
        let f = self.field();
        let mut classes: Vec<ParallelClass> = f
            .elements()
            .map(|a| ParallelClass {
                label: ClassLabel::Proper(a),
                members: f
                    .elements()
                    .map(|b| LaguerrePoint::Proper(DualNumber::new(a, b)))
                    .collect(),
            })
            .collect();
        classes.push(ParallelClass {
            label: ClassLabel::Improper,
            members: f.elements().map(LaguerrePoint::Improper).collect(),
        });
        classes
    }

    /// The embedded line over GF(p^i): `R(x, 1)` for `x` in the subfield, and `R(1, 0)`.
    pub fn embedded_projective_subline(&self, i: u32) -> Result<Vec<LaguerrePoint>> {
        let mut pts: Vec<_> = self
            .field()
            .subfield_elements(i)?
            .into_iter()
            .map(|x| self.affine(x))
            .collect();
        pts.push(self.infinity());
        Ok(pts)
    }

    /// Pairwise non-parallel.
    pub fn is_transversal(&self, pts: &[LaguerrePoint]) -> bool {
        pts.iter()
            .enumerate()
            .all(|(j, &a)| pts[j + 1..].iter().all(|&b| !self.is_parallel(a, b)))
    }
}
