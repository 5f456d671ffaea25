//! End-to-end phase portraits: analyze a field, integrate a deterministic
//! seed pattern, and emit an SVG of the closed unit disk plus a JSON
//! analysis report.

mod report;
mod svg;

pub use report::{
    AnalysisReport, BoundaryJson, FieldInfo, InvariantCircleJson, SingularityJson,
};

use crate::darboux::{self, CircleSearch};
use crate::dynamics::{self, Classification, Controls};
use crate::field::{Family, SphereField};
use crate::specfile::PortraitSettings;
use crate::stereo::{great_circle_is_periodic, pushforward, Periodicity};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Everything the portrait pipeline needs: the field and the rendering
/// parameters.
#[derive(Debug, Clone)]
pub struct PortraitSpec {
    pub field: SphereField,
    pub settings: PortraitSettings,
}

pub struct PortraitOutput {
    pub svg: String,
    pub report: AnalysisReport,
}

/// Distance kept between integration seeds and singular points.
const SEED_CLEARANCE: f64 = 1e-3;

/// Run the full pipeline. Integration failures on individual seeds are
/// recorded as warnings, not fatal errors.
pub fn run_portrait(spec: &PortraitSpec) -> Result<PortraitOutput> {
    let field = &spec.field;
    let settings = &spec.settings;
    let mut warnings = Vec::new();

    let planar = pushforward(field)?;

    // Singular points: closed forms for the Kolmogorov family.
    let (singularities, no_periodic) = match field.kolmogorov_params() {
        Some(k) => {
            let analysis = dynamics::kolmogorov_singularities(k)?;
            if analysis.degenerate {
                warnings.push(
                    "a quadratic-part constant is zero: singular points are not isolated".into(),
                );
            }
            (analysis.reports, Some(dynamics::no_periodic_orbit(k)))
        }
        None => (Vec::new(), None),
    };

    // Boundary status and periodicity of the z = 0 great circle.
    let boundary_invariant = planar.unit_circle_invariant();
    let decomposition = field.decompose_cubic().ok();
    let periodicity = decomposition
        .as_ref()
        .filter(|d| darboux::great_circle_form_check(d))
        .map(great_circle_is_periodic)
        .transpose()?;
    let singular_curve = matches!(periodicity, Some(Periodicity::DegenerateBoundary));

    // Invariant great circles, by family.
    let mut circles = Vec::new();
    let mut infinitely_many = false;
    match field.family() {
        Family::HomogeneousCubic => {
            let search = CircleSearch::default();
            let findings = darboux::solve_great_circles_homogeneous(field, &search)?;
            infinitely_many = findings.infinitely_many;
            warnings.extend(findings.warnings.iter().cloned());
            circles.extend(findings.circles.iter().map(InvariantCircleJson::from_found));
        }
        Family::Kolmogorov => {
            // The coordinate planes are invariant by construction.
            for (dir, name) in [
                ([1i64, 0, 0], "x"),
                ([0, 1, 0], "y"),
                ([0, 0, 1], "z"),
            ] {
                let plane =
                    crate::poly::Polynomial::parse(name, crate::poly::VarSpace::Sphere).unwrap();
                if let Some(rep) = darboux::cofactor_of(field, &plane) {
                    circles.push(InvariantCircleJson {
                        plane: [
                            dir[0].to_string(),
                            dir[1].to_string(),
                            dir[2].to_string(),
                            "0".to_string(),
                        ],
                        direction_numeric: [dir[0] as f64, dir[1] as f64, dir[2] as f64],
                        certified: true,
                        cofactor: Some(rep.cofactor.to_string()),
                        defining_polynomial: Some(rep.polynomial.to_string()),
                        multiplicity: None,
                    });
                }
            }
        }
        _ => {
            if let Some(d) = decomposition.as_ref() {
                if darboux::great_circle_form_check(d) {
                    if let Some(rep) = darboux::cofactor_of(
                        field,
                        &crate::poly::Polynomial::variable(crate::poly::Var::Z),
                    ) {
                        circles.push(InvariantCircleJson {
                            plane: ["0".into(), "0".into(), "1".into(), "0".into()],
                            direction_numeric: [0.0, 0.0, 1.0],
                            certified: true,
                            cofactor: Some(rep.cofactor.to_string()),
                            defining_polynomial: Some(rep.polynomial.to_string()),
                            multiplicity: None,
                        });
                    }
                }
            }
        }
    }

    // Deterministic ring-and-spoke seeds with a small seeded jitter.
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut seeds = Vec::new();
    for ring in 1..=settings.rings {
        let base_r = ring as f64 / (settings.rings as f64 + 1.0);
        for spoke in 0..settings.spokes {
            let jr = 1.0 + 0.02 * (rng.gen::<f64>() * 2.0 - 1.0);
            let jt = 0.02 * (rng.gen::<f64>() * 2.0 - 1.0);
            let theta = std::f64::consts::TAU * (spoke as f64 / settings.spokes as f64) + jt;
            let r = (base_r * jr).min(0.995);
            seeds.push([r * theta.cos(), r * theta.sin()]);
        }
    }
    let singular_planar: Vec<[f64; 2]> =
        singularities.iter().filter_map(|s| s.planar_point).collect();
    seeds.retain(|s| {
        singular_planar.iter().all(|p| {
            let d2 = (s[0] - p[0]).powi(2) + (s[1] - p[1]).powi(2);
            d2 > SEED_CLEARANCE * SEED_CLEARANCE
        })
    });

    let controls = Controls {
        rel_tol: settings.tol,
        abs_tol: settings.tol * 1e-2,
        ..Controls::default()
    };
    let mut polylines: Vec<Vec<[f64; 2]>> = Vec::new();
    for seed in &seeds {
        for duration in [settings.duration, -settings.duration] {
            match dynamics::integrate(&planar, *seed, duration, &controls) {
                Ok(traj) => polylines.push(traj.points),
                Err(e) => warnings.push(format!(
                    "seed ({:.3}, {:.3}): integration skipped: {e}",
                    seed[0], seed[1]
                )),
            }
        }
    }

    // Assemble the SVG in a fixed order: boundary, trajectories, arrows,
    // glyphs.
    let mut builder = svg::SvgBuilder::new();
    builder.boundary_circle(singular_curve);
    for line in &polylines {
        builder.trajectory(line);
    }
    if settings.arrowheads {
        for line in &polylines {
            builder.midpoint_arrow(line);
        }
    }
    let mut glyphs: Vec<([f64; 2], Classification)> = singularities
        .iter()
        .filter_map(|s| {
            let p = s.planar_point?;
            (p[0] * p[0] + p[1] * p[1] <= 1.0 + 1e-9).then_some((p, s.classification))
        })
        .collect();
    glyphs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    glyphs.dedup_by(|a, b| {
        (a.0[0] - b.0[0]).abs() < 1e-12 && (a.0[1] - b.0[1]).abs() < 1e-12
    });
    for (p, class) in &glyphs {
        builder.singular_glyph(*p, *class);
    }
    let svg = builder.finish();

    let boundary = BoundaryJson {
        invariant: boundary_invariant,
        singular_curve,
        periodicity,
    };
    let report = AnalysisReport {
        field: FieldInfo::from_field(field),
        singularities: singularities.iter().map(SingularityJson::from_report).collect(),
        boundary,
        invariant_circles: circles,
        infinitely_many_great_circles: infinitely_many,
        no_periodic_orbit: no_periodic,
        warnings,
    };
    Ok(PortraitOutput { svg, report })
}

/// Location classes for the topology signature.
fn location_class(planar: Option<[f64; 2]>) -> Option<&'static str> {
    let p = planar?;
    let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
    if r < 1e-9 {
        Some("origin")
    } else if (r - 1.0).abs() < 1e-9 {
        if p[1].abs() < 1e-9 {
            Some("axis-u")
        } else if p[0].abs() < 1e-9 {
            Some("axis-v")
        } else {
            Some("boundary")
        }
    } else if r < 1.0 {
        Some("interior")
    } else {
        None
    }
}

/// Canonical one-line summary of a portrait's singular-point structure:
/// per location class, the sorted set of classifications. Equal signatures
/// mean the same panel topology.
pub fn topology_signature(report: &AnalysisReport) -> String {
    let classes = ["origin", "axis-u", "axis-v", "interior"];
    let mut per_class: std::collections::BTreeMap<&str, std::collections::BTreeSet<&str>> =
        classes.iter().map(|c| (*c, Default::default())).collect();
    for s in &report.singularities {
        if let Some(class) = location_class(s.planar_point) {
            if let Some(set) = per_class.get_mut(class) {
                set.insert(s.classification.as_str());
            }
        }
    }
    let mut parts: Vec<String> = classes
        .iter()
        .map(|c| {
            let set = &per_class[c];
            if set.is_empty() {
                format!("{c}:none")
            } else {
                format!("{c}:{}", set.iter().cloned().collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    if report.boundary.singular_curve {
        parts.push("boundary:singular-curve".to_string());
    }
    parts.join("|")
}

/// The signature the time-reversed field would produce.
pub fn reverse_stability_signature(signature: &str) -> String {
    signature
        .split('|')
        .map(|part| match part.split_once(':') {
            Some((class, tags)) => {
                let mut reversed: Vec<&str> = tags
                    .split(',')
                    .map(|t| match t {
                        "stable-node" => "unstable-node",
                        "unstable-node" => "stable-node",
                        "stable-focus" => "unstable-focus",
                        "unstable-focus" => "stable-focus",
                        other => other,
                    })
                    .collect();
                reversed.sort_unstable();
                format!("{class}:{}", reversed.join(","))
            }
            None => part.to_string(),
        })
        .collect::<Vec<_>>()
        .join("|")
}
