//! JSON-facing analysis report structures.

use crate::darboux::{FoundGreatCircle, Multiplicity};
use crate::dynamics::{Classification, Provenance, SingularityReport};
use crate::field::SphereField;
use crate::stereo::Periodicity;
use num_rational::BigRational;
use serde::Serialize;

fn rational_string(q: &BigRational) -> String {
    q.to_string()
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldInfo {
    pub family: String,
    pub p: String,
    pub q: String,
    pub r: String,
    pub sphere_cofactor: Option<String>,
}

impl FieldInfo {
    pub fn from_field(field: &SphereField) -> Self {
        FieldInfo {
            family: field.family().to_string(),
            p: field.p().to_string(),
            q: field.q().to_string(),
            r: field.r().to_string(),
            sphere_cofactor: field.tangency_cofactor().map(|k| k.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularityJson {
    pub sphere_point: [f64; 3],
    pub exact_point: Option<[String; 3]>,
    pub exact_squares: Option<[String; 3]>,
    pub planar_point: Option<[f64; 2]>,
    pub jacobian: [[f64; 2]; 2],
    pub char_trace: f64,
    pub char_det: f64,
    pub eigenvalues: [[f64; 2]; 2],
    pub classification: Classification,
    pub provenance: Provenance,
}

impl SingularityJson {
    pub fn from_report(r: &SingularityReport) -> Self {
        let exact3 = |v: &Option<[BigRational; 3]>| {
            v.as_ref().map(|a| {
                [
                    rational_string(&a[0]),
                    rational_string(&a[1]),
                    rational_string(&a[2]),
                ]
            })
        };
        SingularityJson {
            sphere_point: r.sphere_point,
            exact_point: exact3(&r.exact_point),
            exact_squares: exact3(&r.exact_squares),
            planar_point: r.planar_point,
            jacobian: r.jacobian,
            char_trace: r.char_trace,
            char_det: r.char_det,
            eigenvalues: [
                [r.eigenvalues[0].0, r.eigenvalues[0].1],
                [r.eigenvalues[1].0, r.eigenvalues[1].1],
            ],
            classification: r.classification,
            provenance: r.provenance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantCircleJson {
    /// Plane coefficients (a, b, c, d); exact strings when certified.
    pub plane: [String; 4],
    pub direction_numeric: [f64; 3],
    pub certified: bool,
    pub cofactor: Option<String>,
    pub defining_polynomial: Option<String>,
    pub multiplicity: Option<Multiplicity>,
}

impl InvariantCircleJson {
    pub fn from_found(c: &FoundGreatCircle) -> Self {
        let plane = match &c.rational_direction {
            Some(coords) => [
                rational_string(&coords[0]),
                rational_string(&coords[1]),
                rational_string(&coords[2]),
                "0".to_string(),
            ],
            None => [
                format!("{:.12}", c.direction[0]),
                format!("{:.12}", c.direction[1]),
                format!("{:.12}", c.direction[2]),
                "0".to_string(),
            ],
        };
        InvariantCircleJson {
            plane,
            direction_numeric: c.direction,
            certified: c.is_certified(),
            cofactor: c.report.as_ref().map(|r| r.cofactor.to_string()),
            defining_polynomial: c.report.as_ref().map(|r| r.polynomial.to_string()),
            multiplicity: c.report.as_ref().and_then(|r| r.multiplicity),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryJson {
    /// Whether the unit circle (the image of z = 0) is invariant.
    pub invariant: bool,
    /// Whether every boundary point is singular.
    pub singular_curve: bool,
    pub periodicity: Option<Periodicity>,
}

/// The complete analysis report the portrait pipeline emits alongside the
/// drawing.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub field: FieldInfo,
    pub singularities: Vec<SingularityJson>,
    pub boundary: BoundaryJson,
    pub invariant_circles: Vec<InvariantCircleJson>,
    pub infinitely_many_great_circles: bool,
    pub no_periodic_orbit: Option<crate::dynamics::NoPeriodicOrbitVerdict>,
    pub warnings: Vec<String>,
}
