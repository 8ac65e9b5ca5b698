//! Divisible designs from the Laguerre geometry over the dual numbers of a
//! finite field.
//!
//! The point set is the projective line over `GF(q)[eps]/(eps^2)`, split into
//! parallel classes; blocks are orbits of a base block under the projective
//! group, which acts sharply 3-transitively on transversal triples. Parameters
//! come from orbit/stabiliser counting and are checked independently by
//! [`verify`].

pub mod base_block;
pub mod design;
pub mod dual;
pub mod error;
pub mod field;
pub mod group;
pub mod line;
pub mod spera;
pub mod verify;

pub use base_block::{BlockChoice, Case, CaseSpec, QuadrupleClass};
pub use design::{DivisibleDesign, LaguerreAction};
pub use dual::{DualNumber, DualRing};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use group::{ProjectiveGroup, Projectivity};
pub use line::{LaguerreLine, LaguerrePoint, PointId};
pub use spera::{Block, DesignParameters, RGroup};
pub use verify::VerificationReport;
