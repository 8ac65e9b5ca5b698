//! Base blocks obtained from an embedded subline by removing a set `M`, and
//! the cross-ratio classification that decides the stabiliser of a removed
//! quadruple `{inf, 0, 1, x}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::line::{LaguerreLine, PointId};
use crate::spera::Block;

/// Collapse pattern of the six cross-ratios of `{inf, 0, 1, x}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadrupleClass {
    Generic,
    Harmonic,
    Equianharmonic,
    Superharmonic,
}

impl QuadrupleClass {
    pub const ALL: [QuadrupleClass; 4] = [
        QuadrupleClass::Generic,
        QuadrupleClass::Superharmonic,
        QuadrupleClass::Harmonic,
        QuadrupleClass::Equianharmonic,
    ];

    /// Order of the stabiliser of the quadruple in the projective group of the subline:
    /// Z2xZ2, D4, A4 and S4 respectively.
    pub fn stabilizer_order(self) -> u64 {
        match self {
            QuadrupleClass::Generic => 4,
            QuadrupleClass::Harmonic => 8,
            QuadrupleClass::Equianharmonic => 12,
            QuadrupleClass::Superharmonic => 24,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadrupleClass::Generic => "generic",
            QuadrupleClass::Harmonic => "harmonic",
            QuadrupleClass::Equianharmonic => "equianharmonic",
            QuadrupleClass::Superharmonic => "superharmonic",
        }
    }
}

impl fmt::Display for QuadrupleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuadrupleClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        QuadrupleClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

/// Whether a case (v) block is the subline minus the quadruple, or the quadruple itself.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockChoice {
    Long,
    Short,
}

impl FromStr for BlockChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "long" => Ok(BlockChoice::Long),
            "short" => Ok(BlockChoice::Short),
            _ => Err(format!("unknown block choice {s:?}")),
        }
    }
}

impl fmt::Display for BlockChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockChoice::Long => "long",
            BlockChoice::Short => "short",
        })
    }
}

/// The five constructions.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    /// The whole subline.
    I,
    /// Subline minus `inf`.
    II,
    /// Subline minus `inf, 0`.
    III,
    /// Subline minus `inf, 0, 1`.
    IV,
    /// Subline minus `inf, 0, 1, x` (long) or the quadruple itself (short).
    V(QuadrupleClass, BlockChoice),
}

impl Case {
    pub fn tag(&self) -> &'static str {
        match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
            Case::IV => "iv",
            Case::V(..) => "v",
        }
    }

    pub fn variant(&self) -> Option<QuadrupleClass> {
        match self {
            Case::V(c, _) => Some(*c),
            _ => None,
        }
    }

    pub fn block_choice(&self) -> Option<BlockChoice> {
        match self {
            Case::V(_, b) => Some(*b),
            _ => None,
        }
    }

    /// Parse `i`..`v` plus optional variant and block choice; `v_<variant>` is
    /// accepted as a shorthand.
    pub fn parse(case: &str, variant: Option<&str>, block: Option<&str>) -> std::result::Result<Case, String> {
        let (case, inline_variant) = match case.split_once('_') {
            Some((c, v)) => (c, Some(v)),
            None => (case, None),
        };
        let variant = variant.or(inline_variant);
        match case {
            "i" | "ii" | "iii" | "iv" if variant.is_some() || block.is_some() => {
                Err(format!("case {case} takes no variant or block choice"))
            }
            "i" => Ok(Case::I),
            "ii" => Ok(Case::II),
            "iii" => Ok(Case::III),
            "iv" => Ok(Case::IV),
            "v" => {
                let variant = variant
                    .ok_or("case v needs a variant")?
                    .parse::<QuadrupleClass>()?;
                let block = block.unwrap_or("long").parse::<BlockChoice>()?;
                Ok(Case::V(variant, block))
            }
            other => Err(format!("unknown case {other:?}")),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::V(c, b) => write!(f, "v_{c} ({b})"),
            other => f.write_str(other.tag()),
        }
    }
}

/// A case together with the subfield degree `i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct CaseSpec {
    pub case: Case,
    pub i: u32,
}

/// Side condition attached to a case, as it is stated in the table of designs.
pub fn condition_text(case: Case) -> Option<&'static str> {
    match case {
        Case::I => None,
        Case::II => Some("p^i>2"),
        Case::III => Some("p^i>3"),
        Case::IV => Some("p^i>4"),
        Case::V(QuadrupleClass::Generic, _) => Some("p^i>7"),
        Case::V(QuadrupleClass::Superharmonic, _) => Some("p=3 and p^i>5"),
        Case::V(QuadrupleClass::Harmonic, _) => Some("p>3 and p^i>5"),
        Case::V(QuadrupleClass::Equianharmonic, _) => Some("p^i ≡ 1 mod 3 and p^i>5"),
    }
}

/// Evaluate the side condition of `case` for characteristic `p` and subfield order `m = p^i`.
pub fn condition_holds(case: Case, p: u64, m: u64) -> bool {
    match case {
        Case::I => true,
        Case::II => m > 2,
        Case::III => m > 3,
        Case::IV => m > 4,
        Case::V(QuadrupleClass::Generic, _) => m > 7,
        Case::V(QuadrupleClass::Superharmonic, _) => p == 3 && m > 5,
        Case::V(QuadrupleClass::Harmonic, _) => p > 3 && m > 5,
        Case::V(QuadrupleClass::Equianharmonic, _) => m % 3 == 1 && m > 5,
    }
}

/// Check the side condition for `spec` over `field`, naming it on failure.
pub fn check_conditions(field: &Field, spec: &CaseSpec) -> Result<()> {
    field.check_divisor(spec.i)?;
    let p = field.characteristic() as u64;
    let m = p.pow(spec.i);
    if condition_holds(spec.case, p, m) {
        return Ok(());
    }
    Err(Error::Condition {
        condition: condition_text(spec.case).expect("case (i) is unconditional"),
        detail: format!("p = {p}, p^i = {m}"),
    })
}

/// Closed-form block size and index of the 3-design for `case` at subfield
/// order `m`, or `None` when the block would have fewer than three points.
pub fn table_parameters(case: Case, m: u64) -> Option<(u64, u64)> {
    let k = match case {
        Case::I => m + 1,
        Case::II => m,
        Case::III => m.checked_sub(1)?,
        Case::IV => m.checked_sub(2)?,
        Case::V(_, BlockChoice::Long) => m.checked_sub(3)?,
        Case::V(_, BlockChoice::Short) => 4,
    };
    if k < 3 || (matches!(case, Case::V(_, BlockChoice::Short)) && m < 4) {
        return None;
    }
    let lambda = match case {
        Case::I => 1,
        Case::II => m - 2,
        Case::III => (m - 2) * (m - 3) / 2,
        Case::IV => (m - 2) * (m - 3) * (m - 4) / 6,
        Case::V(c, BlockChoice::Long) => (m - 3) * (m - 4) * (m - 5) / c.stabilizer_order(),
        Case::V(c, BlockChoice::Short) => 24 / c.stabilizer_order(),
    };
    Some((k, lambda))
}

/// The values x, 1/x, 1-x, 1/(1-x), (x-1)/x, x/(x-1).
pub fn cross_ratio_orbit(field: &Field, x: FieldElement) -> Result<BTreeSet<FieldElement>> {
    let one = field.one();
    if x.is_zero() || x == one {
        return Err(Error::DegenerateCrossRatio);
    }
    let f = field;
    let one_minus = f.sub(one, x);
    let x_minus = f.sub(x, one);
    Ok([
        x,
        f.inv(x)?,
        one_minus,
        f.inv(one_minus)?,
        f.div(x_minus, x)?,
        f.div(x, x_minus)?,
    ]
    .into_iter()
    .collect())
}

/// Classify `{inf, 0, 1, x}`.
pub fn classify_quadruple(field: &Field, x: FieldElement) -> Result<QuadrupleClass> {
    let orbit = cross_ratio_orbit(field, x)?;
    let f = field;
    let p = f.characteristic();
    let equianharmonic = f.add(f.sub(f.mul(x, x), x), f.one()).is_zero();
    if p == 3 && equianharmonic {
        return Ok(QuadrupleClass::Superharmonic);
    }
    if equianharmonic {
        return Ok(QuadrupleClass::Equianharmonic);
    }
    if p != 2 {
        let two = f.from_int(2);
        let harmonic_values = [f.from_int(-1), f.inv(two)?, two];
        if orbit.iter().all(|v| harmonic_values.contains(v)) {
            return Ok(QuadrupleClass::Harmonic);
        }
    }
    Ok(QuadrupleClass::Generic)
}

/// Smallest `x` in GF(p^i) (by encoding) whose quadruple has class `variant`.
pub fn select_variant_x(field: &Field, i: u32, variant: QuadrupleClass) -> Result<FieldElement> {
    check_conditions(
        field,
        &CaseSpec {
            case: Case::V(variant, BlockChoice::Long),
            i,
        },
    )?;
    field
        .subfield_elements(i)?
        .into_iter()
        .filter(|&x| !x.is_zero() && x != field.one())
        .find(|&x| classify_quadruple(field, x).ok() == Some(variant))
        .ok_or(Error::NoEligibleElement)
}

/// A base block with the data that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseBlock {
    pub spec: CaseSpec,
    pub block: Block,
    /// Points of the subline that were removed (case (v) short: the block itself).
    pub removed: Vec<PointId>,
    pub x: Option<FieldElement>,
}

pub fn base_block_for(line: &LaguerreLine, spec: &CaseSpec) -> Result<BaseBlock> {
    let f = line.field();
    check_conditions(f, spec)?;
    let subline: Vec<PointId> = line
        .embedded_projective_subline(spec.i)?
        .into_iter()
        .map(|p| line.point_id(p))
        .collect();
    let inf = line.point_id(line.infinity());
    let zero = line.point_id(line.affine(f.zero()));
    let one = line.point_id(line.affine(f.one()));
    let mut x = None;
    let removed: Vec<PointId> = match spec.case {
        Case::I => vec![],
        Case::II => vec![inf],
        Case::III => vec![inf, zero],
        Case::IV => vec![inf, zero, one],
        Case::V(variant, _) => {
            let xv = select_variant_x(f, spec.i, variant)?;
            x = Some(xv);
            vec![inf, zero, one, line.point_id(line.affine(xv))]
        }
    };
    let points = match spec.case {
        Case::V(_, BlockChoice::Short) => removed.clone(),
        _ => subline.into_iter().filter(|p| !removed.contains(p)).collect(),
    };
    if points.len() < 3 {
        return Err(Error::BlockSize {
            k: points.len(),
            t: 3,
            v: line.point_count(),
        });
    }
    Ok(BaseBlock {
        spec: *spec,
        block: Block::new(points),
        removed,
        x,
    })
}
