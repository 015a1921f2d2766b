//! Command-line front end: generate domain rasters, run flatness
//! certifications, build and verify connecting curves, compare domains, and
//! emit JSON/CSV reports and SVG renderings.
//!
//! Exit codes: 0 all checks pass, 1 a bound check failed, 2 usage or input
//! error, 3 a lemma hypothesis was not met (check inapplicable).

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use reiflab::domains::{rasterize, Domain, DomainSpec};
use reiflab::error::Error;
use reiflab::flatness::{
    certify_with, flatness_profile_with, normal_angle_check, separation_propagation_check_with,
};
use reiflab::geometry::Point;
use reiflab::jones::{empirical_jones_constant, Polyline};
use reiflab::metrics::{
    check_boundary_vs_sets, check_inner_radius_bound, check_measure_bounds, domain_distance,
    radii, symmetric_difference_measure, CheckOutcome, DistanceMode,
};
use reiflab::render::{render, Overlay};

const EXIT_PASS: u8 = 0;
const EXIT_BOUND_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INAPPLICABLE: u8 = 3;

/// Certification needs the grid fine against the certified scale: aim for
/// res at or below r0/1500 when certifying at eps near 1/600 (the
/// discretization margin 2 res / r0 must fit under eps).
#[derive(Parser)]
#[command(name = "reiflab", version, about = "Flatness certification and curve checks for raster domains")]
struct Cli {
    /// Worker threads; REIFLAB_JOBS overrides, default all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone)]
struct BboxArg([[f64; 2]; 2]);

impl FromStr for BboxArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        if parts.len() != 4 {
            return Err("bbox must be x0,y0,x1,y1".into());
        }
        Ok(BboxArg([[parts[0], parts[1]], [parts[2], parts[3]]]))
    }
}

#[derive(Clone)]
struct PointArg(f64, f64);

impl FromStr for PointArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        if parts.len() != 2 {
            return Err("point must be x,y".into());
        }
        Ok(PointArg(parts[0], parts[1]))
    }
}

#[derive(Args)]
struct RasterArgs {
    /// Cell side length in world units.
    #[arg(long)]
    res: f64,
    /// Bounding box as x0,y0,x1,y1.
    #[arg(long)]
    bbox: BboxArg,
    /// Output domain JSON path.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand)]
enum ShapeCmd {
    /// Points with normal . p > offset
    Halfspace {
        /// Normal as nx,ny.
        #[arg(long, default_value = "0,1")]
        normal: PointArg,
        #[arg(long, default_value_t = 0.0)]
        offset: f64,
        #[command(flatten)]
        raster: RasterArgs,
    },
    Ball {
        /// Center as cx,cy.
        #[arg(long, default_value = "0,0")]
        center: PointArg,
        #[arg(long)]
        radius: f64,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Axis-aligned a x b rectangle centered at the origin
    Rectangle {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Open shell between radius and radius + thickness
    Annulus {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        thickness: f64,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Subgraph of a seeded profile with Lipschitz constant lip
    LipschitzGraph {
        #[arg(long)]
        lip: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Unit square with outward tent bumps of the given angle per side third
    KochFlat {
        #[arg(long)]
        angle_deg: f64,
        #[arg(long)]
        depth: u32,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Unit disk with an attached outward strip, rounded tip
    DiskWithTentacle {
        #[arg(long)]
        width: f64,
        #[arg(long)]
        length: f64,
        #[command(flatten)]
        raster: RasterArgs,
    },
    /// Unit disk with a strip carved inward from the boundary, rounded tip
    DiskWithSlit {
        #[arg(long)]
        width: f64,
        #[arg(long)]
        depth: f64,
        #[command(flatten)]
        raster: RasterArgs,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Boundary distance vs set/complement distances for a certified pair
    Lemma51 {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        r0: f64,
    },
    /// Set/complement distances vs symmetric difference for a certified pair
    Lemma52 {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        r0: f64,
    },
    /// Normal alignment across scales r and m r at a boundary point
    Angle {
        domain: PathBuf,
        /// Queried near-boundary point as x,y (snapped to the nearest sample).
        #[arg(long)]
        point: PointArg,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 4.0)]
        m: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Inner radius lower bound r0/4 for a certified domain
    Radius {
        domain: PathBuf,
        #[arg(long)]
        r0: f64,
    },
    /// Component count bound for a certified domain
    Count {
        domain: PathBuf,
        #[arg(long)]
        r0: f64,
    },
    /// Pairwise component separation bound r0/70
    Separation {
        domain: PathBuf,
        #[arg(long)]
        r0: f64,
    },
    /// Separation audited at every dyadic scale below r0
    Propagation {
        domain: PathBuf,
        #[arg(long)]
        r0: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 500)]
        max_points: usize,
    },
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Rasterize a parameterized shape to a domain JSON
    Gen {
        #[command(subcommand)]
        shape: ShapeCmd,
    },
    /// Flatness profile across the dyadic scale grid below r0
    Flatness {
        domain: PathBuf,
        #[arg(long)]
        r0: f64,
        #[arg(long, default_value_t = 1)]
        scales: usize,
        #[arg(long, default_value_t = 500)]
        max_points: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify flatness at (eps, r0); exit 0 on certificate
    Certify {
        domain: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        r0: f64,
        #[arg(long, default_value_t = 1)]
        scales: usize,
        #[arg(long, default_value_t = 500)]
        max_points: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Empirical curve constant over seeded interior pairs with R0 = r0/7
    Jones {
        domain: PathBuf,
        #[arg(long)]
        pairs: usize,
        #[arg(long)]
        r0: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hausdorff distance between two same-grid domains
    Dist {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        mode: String,
        #[arg(long)]
        csv: bool,
    },
    /// Lebesgue measure of the symmetric difference
    Symdiff {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Inner radius, outer radius and diameter
    Radii {
        domain: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Connected components plus count/separation bounds at r0
    Components {
        domain: PathBuf,
        #[arg(long)]
        r0: f64,
    },
    /// Quantitative inequality checks
    Check {
        #[command(subcommand)]
        which: CheckCmd,
    },
    /// Render a domain (plus an optional curve JSON) to SVG
    Render {
        domain: PathBuf,
        curve: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn emit(json: &serde_json::Value, output: Option<&PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(json)?;
    match output {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn gen(shape: ShapeCmd) -> Result<u8, Error> {
    let (spec, raster) = match shape {
        ShapeCmd::Halfspace { normal, offset, raster } => {
            (DomainSpec::Halfspace { normal: [normal.0, normal.1], offset }, raster)
        }
        ShapeCmd::Ball { center, radius, raster } => {
            (DomainSpec::Ball { center: [center.0, center.1], radius }, raster)
        }
        ShapeCmd::Rectangle { a, b, raster } => (DomainSpec::Rectangle { a, b }, raster),
        ShapeCmd::Annulus { radius, thickness, raster } => {
            (DomainSpec::Annulus { radius, thickness }, raster)
        }
        ShapeCmd::LipschitzGraph { lip, seed, raster } => {
            (DomainSpec::LipschitzGraph { lip, seed }, raster)
        }
        ShapeCmd::KochFlat { angle_deg, depth, raster } => {
            (DomainSpec::KochFlat { angle_deg, depth }, raster)
        }
        ShapeCmd::DiskWithTentacle { width, length, raster } => {
            (DomainSpec::DiskWithTentacle { width, length }, raster)
        }
        ShapeCmd::DiskWithSlit { width, depth, raster } => {
            (DomainSpec::DiskWithSlit { width, depth }, raster)
        }
    };
    let domain = rasterize(&spec, raster.res, raster.bbox.0)?;
    domain.write_json_file(&raster.output)?;
    eprintln!(
        "wrote {} ({}x{} cells, {} boundary samples)",
        raster.output.display(),
        domain.occupancy.width(),
        domain.occupancy.height(),
        domain.boundary.len()
    );
    Ok(EXIT_PASS)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Gen { shape } => gen(shape),
        Command::Flatness { domain, r0, scales, max_points, output } => {
            let d = Domain::read_json_file(&domain)?;
            let report = flatness_profile_with(&d, r0, scales, max_points)?;
            let ok = report.separation_ok;
            emit(&serde_json::to_value(&report)?, output.as_ref())?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
        Command::Certify { domain, eps, r0, scales, max_points, output } => {
            let d = Domain::read_json_file(&domain)?;
            let outcome = certify_with(&d, eps, r0, scales, max_points)?;
            let ok = outcome.is_certificate();
            emit(&serde_json::to_value(&outcome)?, output.as_ref())?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
        Command::Jones { domain, pairs, r0, seed, output } => {
            let d = Domain::read_json_file(&domain)?;
            let estimate = empirical_jones_constant(&d, r0 / 7.0, pairs, seed)?;
            let ok = estimate.delta_star >= 1.0 / 450.0;
            emit(&serde_json::to_value(&estimate)?, output.as_ref())?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
        Command::Dist { x, y, mode, csv } => {
            let dx = Domain::read_json_file(&x)?;
            let dy = Domain::read_json_file(&y)?;
            let mode = DistanceMode::from_str(&mode)?;
            let report = domain_distance(&dx, &dy, mode)?;
            if csv {
                println!("mode,value,witness_from_x,witness_from_y,witness_to_x,witness_to_y,clipped");
                let (a, b) = (&report.witness_pair.0, &report.witness_pair.1);
                println!(
                    "{:?},{},{},{},{},{},{}",
                    report.mode, report.value, a.0[0], a.0[1], b.0[0], b.0[1], report.clipped
                );
            } else {
                emit(&serde_json::to_value(&report)?, None)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Symdiff { x, y, csv } => {
            let dx = Domain::read_json_file(&x)?;
            let dy = Domain::read_json_file(&y)?;
            let measure = symmetric_difference_measure(&dx, &dy)?;
            if csv {
                println!("measure");
                println!("{measure}");
            } else {
                emit(&serde_json::json!({ "measure": measure }), None)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Radii { domain, csv } => {
            let d = Domain::read_json_file(&domain)?;
            let report = radii(&d)?;
            if csv {
                println!("rad,big_rad,diam");
                println!("{},{},{}", report.rad, report.big_rad, report.diam);
            } else {
                emit(&serde_json::to_value(&report)?, None)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Components { domain, r0 } => {
            let d = Domain::read_json_file(&domain)?;
            let report = reiflab::components::components(&d)?;
            let count = reiflab::components::check_count_bound(&d, r0)?;
            let separation = reiflab::components::check_separation_bound(&d, r0)?;
            let ok = count.pass && separation.pass;
            emit(
                &serde_json::json!({
                    "n": report.n,
                    "areas": report.areas,
                    "min_pairwise_separation": report.min_pairwise_separation,
                    "count_bound": count,
                    "separation_bound": separation,
                }),
                None,
            )?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
        Command::Check { which } => check(which),
        Command::Render { domain, curve, output } => {
            let d = Domain::read_json_file(&domain)?;
            let mut overlays = Vec::new();
            if let Some(path) = curve {
                let text = std::fs::read_to_string(path)?;
                overlays.push(Overlay::Curve(Polyline::from_json(&text)?));
            }
            std::fs::write(&output, render(&d, &overlays))?;
            eprintln!("wrote {}", output.display());
            Ok(EXIT_PASS)
        }
    }
}

fn outcome_code(outcome: &CheckOutcome) -> u8 {
    match outcome {
        CheckOutcome::Pass => EXIT_PASS,
        CheckOutcome::Fail => EXIT_BOUND_FAILED,
        CheckOutcome::Inapplicable => EXIT_INAPPLICABLE,
    }
}

fn check(which: CheckCmd) -> Result<u8, Error> {
    match which {
        CheckCmd::Lemma51 { x, y, eps, r0 } => {
            let dx = Domain::read_json_file(&x)?;
            let dy = Domain::read_json_file(&y)?;
            let report = check_boundary_vs_sets(&dx, &dy, eps, r0)?;
            emit(&serde_json::to_value(&report)?, None)?;
            Ok(outcome_code(&report.outcome))
        }
        CheckCmd::Lemma52 { x, y, eps, r0 } => {
            let dx = Domain::read_json_file(&x)?;
            let dy = Domain::read_json_file(&y)?;
            let report = check_measure_bounds(&dx, &dy, eps, r0)?;
            emit(&serde_json::to_value(&report)?, None)?;
            Ok(outcome_code(&report.outcome))
        }
        CheckCmd::Angle { domain, point, r, m, eps } => {
            let d = Domain::read_json_file(&domain)?;
            let (x, _) =
                reiflab::domains::nearest_boundary_point(&d, &Point::new2(point.0, point.1))?;
            let report = normal_angle_check(&d, &x, r, m, eps)?;
            let ok = report.pass;
            emit(&serde_json::to_value(&report)?, None)?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
        CheckCmd::Radius { domain, r0 } => {
            let d = Domain::read_json_file(&domain)?;
            let report = check_inner_radius_bound(&d, r0)?;
            let ok = report.pass;
            emit(&serde_json::to_value(&report)?, None)?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
        CheckCmd::Count { domain, r0 } => {
            let d = Domain::read_json_file(&domain)?;
            let report = reiflab::components::check_count_bound(&d, r0)?;
            let ok = report.pass;
            emit(&serde_json::to_value(&report)?, None)?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
        CheckCmd::Separation { domain, r0 } => {
            let d = Domain::read_json_file(&domain)?;
            let report = reiflab::components::check_separation_bound(&d, r0)?;
            let ok = report.pass;
            emit(&serde_json::to_value(&report)?, None)?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
        CheckCmd::Propagation { domain, r0, eps, max_points } => {
            let d = Domain::read_json_file(&domain)?;
            let report = separation_propagation_check_with(&d, r0, eps, max_points)?;
            let ok = report.pass;
            emit(&serde_json::to_value(&report)?, None)?;
            Ok(if ok { EXIT_PASS } else { EXIT_BOUND_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = std::env::var("REIFLAB_JOBS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(cli.jobs);
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
