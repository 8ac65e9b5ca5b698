//! Divisible designs on the Laguerre line and their serialized document.

use serde::{Deserialize, Serialize};

use crate::base_block::{base_block_for, BaseBlock, BlockChoice, Case, CaseSpec, QuadrupleClass};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::{ProjectiveGroup, Projectivity};
use crate::line::{LaguerreLine, PointId, PointRepr};
use crate::spera::{derive_lower_t, spera_design, Block, DesignParameters, RGroup};

/// The projective group with its elements listed, acting on point ids.
#[derive(Clone, Debug)]
pub struct LaguerreAction {
    group: ProjectiveGroup,
    elements: Vec<Projectivity>,
}

impl LaguerreAction {
    pub fn new(field: Field) -> Self {
        let group = ProjectiveGroup::new(LaguerreLine::new(field));
        let elements = group.enumerate();
        LaguerreAction { group, elements }
    }

    pub fn group(&self) -> &ProjectiveGroup {
        &self.group
    }

    pub fn line(&self) -> &LaguerreLine {
        self.group.line()
    }

    pub fn elements(&self) -> &[Projectivity] {
        &self.elements
    }
}

impl RGroup for LaguerreAction {
    fn degree(&self) -> usize {
        self.line().point_count()
    }

    fn class_of(&self, point: PointId) -> u32 {
        self.line().class_of_id(point)
    }

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn image(&self, element: usize, point: PointId) -> PointId {
        self.group.apply_id(&self.elements[element], point)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u32,
    pub n: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub id: PointId,
    pub class: u32,
    pub repr: PointRepr,
}

/// Which construction produced the design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub spec: CaseSpec,
    pub x: Option<u32>,
    pub base_block: Block,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibleDesign {
    pub field: FieldInfo,
    pub provenance: Option<Provenance>,
    pub points: Vec<PointRecord>,
    pub blocks: Vec<Block>,
    pub params: DesignParameters,
}

impl DivisibleDesign {
    /// Class labels indexed by point id.
    pub fn classes(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.class).collect()
    }
}

/// Orbit design of `base` under the projective group, read at strength `t`.
pub fn build_design(
    action: &LaguerreAction,
    base: &Block,
    t: usize,
    provenance: Option<Provenance>,
) -> Result<DivisibleDesign> {
    if !(1..=3).contains(&t) {
        return Err(Error::BadStrength { t, min: 1 });
    }
    let line = action.line();
    // the group is sharply 3-R-transitive, so the index formula applies at t = 3
    let mut d = spera_design(action, base, 3)?;
    while d.params.t > t as u64 {
        d.params = derive_lower_t(&d.params)?;
    }
    let f = line.field();
    let points = line
        .all_points()
        .into_iter()
        .map(|p| {
            let id = line.point_id(p);
            PointRecord {
                id,
                class: line.class_of_id(id),
                repr: line.repr(p),
            }
        })
        .collect();
    Ok(DivisibleDesign {
        field: FieldInfo {
            p: f.characteristic(),
            n: f.degree(),
        },
        provenance,
        points,
        blocks: d.blocks,
        params: d.params,
    })
}

/// Construct the design of `spec` over `action`'s field at strength `t`.
pub fn construct_with(action: &LaguerreAction, spec: &CaseSpec, t: usize) -> Result<(DivisibleDesign, BaseBlock)> {
    let base = base_block_for(action.line(), spec)?;
    let provenance = Provenance {
        spec: *spec,
        x: base.x.map(|x| x.encoding()),
        base_block: base.block.clone(),
    };
    let design = build_design(action, &base.block, t, Some(provenance))?;
    Ok((design, base))
}

/// Construct the design of `spec` over GF(p^n) at strength `t`.
pub fn construct(p: u32, n: u32, spec: &CaseSpec, t: usize) -> Result<DivisibleDesign> {
    let field = Field::new(p, n)?;
    crate::base_block::check_conditions(&field, spec)?;
    let action = LaguerreAction::new(field);
    Ok(construct_with(&action, spec, t)?.0)
}

#[derive(Serialize, Deserialize)]
struct DesignDoc {
    field: FieldInfo,
    case: Option<String>,
    i: Option<u32>,
    variant: Option<QuadrupleClass>,
    block_choice: Option<BlockChoice>,
    x: Option<u32>,
    base_block: Option<Block>,
    params: DesignParameters,
    points: Vec<PointRecord>,
    blocks: Vec<Block>,
}

impl DivisibleDesign {
    /// Single-line JSON document followed by a newline; byte-stable for equal designs.
    pub fn to_document(&self) -> String {
        let prov = self.provenance.as_ref();
        let doc = DesignDoc {
            field: self.field,
            case: prov.map(|pr| pr.spec.case.tag().to_string()),
            i: prov.map(|pr| pr.spec.i),
            variant: prov.and_then(|pr| pr.spec.case.variant()),
            block_choice: prov.and_then(|pr| pr.spec.case.block_choice()),
            x: prov.and_then(|pr| pr.x),
            base_block: prov.map(|pr| pr.base_block.clone()),
            params: self.params,
            points: self.points.clone(),
            blocks: self.blocks.clone(),
        };
        let mut s = serde_json::to_string(&doc).expect("design serializes");
        s.push('\n');
        s
    }

    pub fn from_document(text: &str) -> Result<DivisibleDesign> {
        let doc: DesignDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let provenance = match (doc.case.as_deref(), doc.i, doc.base_block) {
            (Some(case), Some(i), Some(base_block)) => {
                let case = match case {
                    "v" => Case::V(
                        doc.variant
                            .ok_or_else(|| Error::Malformed("case v without variant".into()))?,
                        doc.block_choice.unwrap_or(BlockChoice::Long),
                    ),
                    other => Case::parse(other, None, None).map_err(Error::Malformed)?,
                };
                Some(Provenance {
                    spec: CaseSpec { case, i },
                    x: doc.x,
                    base_block,
                })
            }
            _ => None,
        };
        Ok(DivisibleDesign {
            field: doc.field,
            provenance,
            points: doc.points,
            blocks: doc.blocks,
            params: doc.params,
        })
    }
}
