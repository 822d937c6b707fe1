//! Serializable reports. Exact values are written as `{exact, approx}` pairs:
//! the text form of the scalar and an `f64` for plotting.

use serde::Serialize;

use crate::census::{Analysis, FormulaSlot};
use crate::gaps::GapSet;
use crate::orbit::{BilliardOrbit, BoundarySide, Truncation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Value {
    pub exact: Scalar,
    pub approx: f64,
}

impl From<&Scalar> for Value {
    fn from(s: &Scalar) -> Value {
        Value {
            exact: s.clone(),
            approx: s.to_f64(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncationJson {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub squares: Option<u32>,
    #[serde(rename = "M")]
    pub m: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    /// `None` for faces no slot accounts for.
    pub formula_slot: Option<String>,
    pub area: Value,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusJson {
    pub alpha: Value,
    #[serde(rename = "N_or_M")]
    pub n_or_m: TruncationJson,
    pub boundary_side: BoundarySide,
    /// Line spacings, largest first.
    pub gap_set: Vec<Value>,
    pub n_faces: usize,
    pub distinct_areas: usize,
    pub distinct_shapes: usize,
    pub per_class: Vec<ClassJson>,
    pub theorem_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_error: Option<String>,
}

impl CensusJson {
    /// `truncation` is what the user asked for; `a` records where it ended.
    pub fn new(a: &Analysis, truncation: &Truncation) -> CensusJson {
        let squares = match truncation {
            Truncation::Squares(n) => Some(*n),
            Truncation::Abscissa(_) => None,
        };
        let per_class = match &a.formulas {
            Some(f) => f
                .classes
                .iter()
                .map(|c| ClassJson {
                    formula_slot: Some(c.slot.to_string()),
                    area: (&c.area).into(),
                    count: c.count,
                })
                .collect(),
            None => a
                .census
                .areas
                .iter()
                .zip(&a.census.area_counts)
                .map(|(area, &count)| ClassJson {
                    formula_slot: None,
                    area: area.into(),
                    count,
                })
                .collect(),
        };
        CensusJson {
            alpha: (&a.alpha).into(),
            n_or_m: TruncationJson {
                squares,
                m: (&a.m).into(),
            },
            boundary_side: a.side,
            gap_set: a.d.iter().map(Value::from).collect(),
            n_faces: a.census.faces.len(),
            distinct_areas: a.census.distinct_areas,
            distinct_shapes: a.census.distinct_shapes,
            per_class,
            theorem_ok: a.census.distinct_areas <= 13
                && a.census.distinct_shapes <= 16
                && a.formula_error.is_none(),
            formula_error: a.formula_error.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapsJson {
    pub alpha: Value,
    pub n: u32,
    pub lengths: Vec<Value>,
    pub multiplicities: Vec<usize>,
    pub theorem_ok: bool,
}

impl GapsJson {
    pub fn new(alpha: &Scalar, n: u32, gaps: &GapSet, theorem_ok: bool) -> GapsJson {
        GapsJson {
            alpha: alpha.into(),
            n,
            lengths: gaps.lengths.iter().map(Value::from).collect(),
            multiplicities: gaps.multiplicities.clone(),
            theorem_ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceJson {
    pub corners: Vec<[Value; 2]>,
    pub area: Value,
    pub polygon_type: u8,
    pub area_class: usize,
    pub shape_class: usize,
    pub formula_slots: Vec<String>,
}

/// Every face with its exact corners and area.
pub fn faces_json(a: &Analysis) -> Vec<FaceJson> {
    a.census
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| FaceJson {
            corners: f
                .corners
                .iter()
                .map(|p| [(&p.x).into(), (&p.y).into()])
                .collect(),
            area: (&f.area).into(),
            polygon_type: f.polygon_type as u8 + 1,
            area_class: f.area_class,
            shape_class: f.shape_class,
            formula_slots: a
                .formulas
                .as_ref()
                .map(|r| r.matches[i].iter().map(FormulaSlot::to_string).collect())
                .unwrap_or_default(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitJson {
    pub alpha: Value,
    #[serde(rename = "M")]
    pub m: Value,
    pub boundary_side: BoundarySide,
    pub segments: Vec<[[Value; 2]; 2]>,
}

impl From<&BilliardOrbit> for OrbitJson {
    fn from(o: &BilliardOrbit) -> OrbitJson {
        OrbitJson {
            alpha: (&o.alpha).into(),
            m: (&o.m).into(),
            boundary_side: o.side,
            segments: o
                .segments
                .iter()
                .map(|s| {
                    [
                        [(&s.start.x).into(), (&s.start.y).into()],
                        [(&s.end.x).into(), (&s.end.y).into()],
                    ]
                })
                .collect(),
        }
    }
}
