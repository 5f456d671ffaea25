//! `sphereflow`: analyze cubic vector fields on the unit sphere from the
//! command line.
//!
//! Exit codes: 0 on success, 2 for specification-file problems, 3 for
//! analysis failures.

use clap::{Args, Parser, Subcommand};
use sphereflow::darboux::{self, CircleSearch};
use sphereflow::dynamics::{self, Controls};
use sphereflow::portrait::{run_portrait, PortraitSpec};
use sphereflow::specfile::{self, FieldSpec};
use sphereflow::stereo;
use sphereflow::{Error, Polynomial, VarSpace};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sphereflow",
    about = "Cubic polynomial vector fields tangent to the unit sphere",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Field specification file.
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Render a phase portrait SVG plus a JSON analysis report.
    Portrait {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long = "out-svg")]
        out_svg: PathBuf,
        #[arg(long = "out-json")]
        out_json: PathBuf,
        /// Seed for the deterministic seed-point jitter.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        rings: Option<usize>,
        #[arg(long)]
        spokes: Option<usize>,
        /// Integration time per seed (both directions).
        #[arg(long)]
        duration: Option<f64>,
        /// Relative integration tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Cofactor of an invariant algebraic set, when the set is invariant.
    Cofactor {
        #[command(flatten)]
        spec: SpecArg,
        /// Polynomial in x, y, z.
        #[arg(long)]
        poly: String,
    },
    /// Extactic polynomial for a comma-separated basis.
    Extactic {
        #[command(flatten)]
        spec: SpecArg,
        /// Basis polynomials, comma separated (e.g. "y,z").
        #[arg(long)]
        basis: String,
    },
    /// Test whether a polynomial is a first integral.
    FirstIntegral {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        poly: String,
    },
    /// Find invariant great circles (homogeneous fields).
    Circles {
        #[command(flatten)]
        spec: SpecArg,
        /// Fibonacci-grid resolution for the direction search.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Print the stereographic pushforward components.
    Pushforward {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Decide periodicity of the invariant great circle z = 0.
    Periodic {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Singular points of a Kolmogorov field as JSON.
    Singular {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Integrate one trajectory and print CSV samples.
    Integrate {
        #[command(flatten)]
        spec: SpecArg,
        /// Start point: "u,v" in the disk, or "x,y,z" with --sphere.
        #[arg(long)]
        start: String,
        #[arg(long, default_value_t = 5.0)]
        duration: f64,
        /// Integrate the 3D system on the sphere instead of the disk chart.
        #[arg(long, default_value_t = false)]
        sphere: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn load_spec(path: &PathBuf) -> Result<FieldSpec, Error> {
    let text = std::fs::read_to_string(path)?;
    specfile::parse_spec(&text)
}

fn sphere_poly(src: &str) -> Result<Polynomial, Error> {
    Polynomial::parse(src, VarSpace::Sphere)
}

fn run(cli: Cli) -> Result<(), (u8, Error)> {
    match cli.command {
        Command::Portrait {
            spec,
            out_svg,
            out_json,
            seed,
            rings,
            spokes,
            duration,
            tol,
        } => {
            let mut parsed = load_spec(&spec.spec).map_err(spec_err)?;
            if let Some(s) = seed {
                parsed.portrait.seed = s;
            }
            if let Some(r) = rings {
                parsed.portrait.rings = r;
            }
            if let Some(s) = spokes {
                parsed.portrait.spokes = s;
            }
            if let Some(d) = duration {
                parsed.portrait.duration = d;
            }
            if let Some(t) = tol {
                parsed.portrait.tol = t;
            }
            if parsed.portrait.rings == 0 || parsed.portrait.spokes == 0 {
                return Err(spec_err(Error::SpecFile(
                    "rings and spokes must be positive".into(),
                )));
            }
            let out = run_portrait(&PortraitSpec {
                field: parsed.field,
                settings: parsed.portrait,
            })
            .map_err(analysis_err)?;
            std::fs::write(&out_svg, &out.svg).map_err(|e| analysis_err(e.into()))?;
            let json = serde_json::to_string_pretty(&out.report).expect("serializable report");
            std::fs::write(&out_json, json).map_err(|e| analysis_err(e.into()))?;
            eprintln!(
                "portrait written: {} and {}",
                out_svg.display(),
                out_json.display()
            );
            Ok(())
        }
        Command::Cofactor { spec, poly } => {
            let parsed = load_spec(&spec.spec).map_err(spec_err)?;
            let f = sphere_poly(&poly).map_err(spec_err)?;
            if f.is_zero() {
                return Err(spec_err(Error::SpecFile(
                    "--poly must be a nonzero polynomial".into(),
                )));
            }
            match darboux::cofactor_of(&parsed.field, &f) {
                Some(report) => {
                    let json = serde_json::json!({
                        "invariant": true,
                        "polynomial": report.polynomial.to_string(),
                        "cofactor": report.cofactor.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
                None => {
                    let json = serde_json::json!({
                        "invariant": false,
                        "polynomial": f.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
            }
            Ok(())
        }
        Command::Extactic { spec, basis } => {
            let parsed = load_spec(&spec.spec).map_err(spec_err)?;
            let polys: Vec<Polynomial> = basis
                .split(',')
                .map(|s| sphere_poly(s.trim()))
                .collect::<Result<_, _>>()
                .map_err(spec_err)?;
            let e = darboux::extactic(&parsed.field, &polys).map_err(analysis_err)?;
            let json = serde_json::json!({
                "basis": polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "extactic": e.to_string(),
                "identically_zero": e.is_zero(),
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(())
        }
        Command::FirstIntegral { spec, poly } => {
            let parsed = load_spec(&spec.spec).map_err(spec_err)?;
            let h = sphere_poly(&poly).map_err(spec_err)?;
            let lie = darboux::lie_derivative(&parsed.field, &h);
            let json = serde_json::json!({
                "polynomial": h.to_string(),
                "first_integral": lie.is_zero(),
                "lie_derivative": lie.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(())
        }
        Command::Circles { spec, grid } => {
            let parsed = load_spec(&spec.spec).map_err(spec_err)?;
            let mut search = CircleSearch::default();
            if let Some(g) = grid {
                search.grid_points = g;
            }
            let found = darboux::solve_great_circles_homogeneous(&parsed.field, &search)
                .map_err(analysis_err)?;
            let circles: Vec<_> = found
                .circles
                .iter()
                .map(sphereflow::portrait::InvariantCircleJson::from_found)
                .collect();
            let json = serde_json::json!({
                "infinitely_many": found.infinitely_many,
                "circles": circles,
                "warnings": found.warnings,
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(())
        }
        Command::Pushforward { spec } => {
            let parsed = load_spec(&spec.spec).map_err(spec_err)?;
            let planar = stereo::pushforward(&parsed.field).map_err(analysis_err)?;
            println!("P = {}", planar.pcal());
            println!("Q = {}", planar.qcal());
            Ok(())
        }
        Command::Periodic { spec } => {
            let parsed = load_spec(&spec.spec).map_err(spec_err)?;
            let d = parsed.field.decompose_cubic().map_err(analysis_err)?;
            let verdict = stereo::great_circle_is_periodic(&d).map_err(analysis_err)?;
            let json = serde_json::json!({
                "periodic": verdict.is_periodic(),
                "detail": verdict,
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(())
        }
        Command::Singular { spec } => {
            let parsed = load_spec(&spec.spec).map_err(spec_err)?;
            let k = parsed.field.kolmogorov_params().ok_or_else(|| {
                analysis_err(Error::FamilyMismatch {
                    expected: "kolmogorov".into(),
                    found: parsed.field.family().to_string(),
                })
            })?;
            let analysis = dynamics::kolmogorov_singularities(k).map_err(analysis_err)?;
            let reports: Vec<_> = analysis
                .reports
                .iter()
                .map(sphereflow::portrait::SingularityJson::from_report)
                .collect();
            println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            Ok(())
        }
        Command::Integrate {
            spec,
            start,
            duration,
            sphere,
            tol,
        } => {
            let parsed = load_spec(&spec.spec).map_err(spec_err)?;
            let coords: Vec<f64> = start
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| spec_err(Error::SpecFile(format!("bad start point '{start}'"))))?;
            let controls = Controls {
                rel_tol: tol,
                abs_tol: tol * 1e-2,
                ..Controls::default()
            };
            if sphere {
                if coords.len() != 3 {
                    return Err(spec_err(Error::SpecFile(
                        "--sphere expects start = \"x,y,z\"".into(),
                    )));
                }
                let traj = dynamics::integrate_on_sphere(
                    &parsed.field,
                    [coords[0], coords[1], coords[2]],
                    duration,
                    &controls,
                )
                .map_err(analysis_err)?;
                println!("t,x,y,z");
                for (t, p) in traj.times.iter().zip(traj.points.iter()) {
                    println!("{t:.9},{:.9},{:.9},{:.9}", p[0], p[1], p[2]);
                }
            } else {
                if coords.len() != 2 {
                    return Err(spec_err(Error::SpecFile(
                        "expected start = \"u,v\"".into(),
                    )));
                }
                let planar = stereo::pushforward(&parsed.field).map_err(analysis_err)?;
                let traj =
                    dynamics::integrate(&planar, [coords[0], coords[1]], duration, &controls)
                        .map_err(analysis_err)?;
                println!("t,u,v");
                for (t, p) in traj.times.iter().zip(traj.points.iter()) {
                    println!("{t:.9},{:.9},{:.9}", p[0], p[1]);
                }
            }
            Ok(())
        }
    }
}

fn spec_err(e: Error) -> (u8, Error) {
    (2, e)
}

fn analysis_err(e: Error) -> (u8, Error) {
    (3, e)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, e)) => {
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
