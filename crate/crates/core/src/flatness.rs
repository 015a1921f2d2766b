//! Boundary flatness estimation: best hyperplane per (point, scale), the
//! oriented two-sided separation test, multi-scale profiles, certification
//! against a requested `(eps, r0)` pair, and the normal-angle and
//! separation-propagation checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::geometry::{angle_cosine, GridIndex, Hyperplane, Point, PointSet};

/// Scales below this many cells are considered under-resolved.
pub const MIN_SCALE_CELLS: f64 = 10.0;
/// Default cap on profiled boundary points before stratified subsampling.
pub const DEFAULT_PROFILE_POINTS: usize = 500;

const COARSE_ANGLES: usize = 720;
const COARSE_CHORD: usize = 257;
const COARSE_SLICE: usize = 512;
const FINE_CHORD: usize = 4097;
const REFINE_TOL_RAD: f64 = 1e-4;

/// Flatness data of one (boundary point, scale) evaluation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlatnessSample {
    pub x: Point,
    pub r: f64,
    pub plane: Hyperplane,
    /// Normalized two-sided Hausdorff deviation of the boundary slice from
    /// the plane, (1/r) d_H(boundary in B(x,r), plane in B(x,r)).
    pub epsilon: f64,
    /// +1 when the interior lies on the +normal side, -1 on the -normal
    /// side, None before a separation check ran.
    pub orientation: Option<i8>,
}

impl FlatnessSample {
    /// Unit normal pointing into the domain; requires an orientation.
    pub fn oriented_normal(&self) -> Option<[f64; 2]> {
        let s = self.orientation? as f64;
        Some([s * self.plane.normal[0], s * self.plane.normal[1]])
    }
}

/// Witness of a failed separation test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparationViolation {
    pub x: Point,
    pub r: f64,
    pub witness_cell: (usize, usize),
    pub witness_point: Point,
    pub positive_inside: usize,
    pub positive_total: usize,
    pub negative_inside: usize,
    pub negative_total: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum SeparationOutcome {
    Oriented(FlatnessSample),
    Violation(SeparationViolation),
}

/// Per-scale tally of separation outcomes across profiled points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScaleSeparation {
    pub scale: f64,
    pub checked: usize,
    pub passed: usize,
    pub first_failure: Option<SeparationViolation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub r0: f64,
    pub scale_grid: Vec<f64>,
    pub samples: Vec<FlatnessSample>,
    pub sup_epsilon: f64,
    /// All separation checks at scale r0 succeeded.
    pub separation_ok: bool,
    pub worst: Option<(Point, f64)>,
    pub subsampled: bool,
    pub points_evaluated: usize,
    /// Contribution of boundary-sample placement error: 2 res / min scale.
    pub discretization_margin: f64,
    pub separation_by_scale: Vec<ScaleSeparation>,
}

/// Precomputed boundary slice around one (x, r) query.
struct SliceCtx {
    cx: f64,
    cy: f64,
    r: f64,
    set: PointSet,
    idx: GridIndex,
}

impl SliceCtx {
    fn build(d: &Domain, x: &Point, r: f64) -> Result<Self> {
        let (cx, cy) = x.xy();
        let idx = d.boundary_index()?;
        let ids = idx.within(cx, cy, r, &d.boundary);
        if ids.is_empty() {
            return Err(Error::EmptySlice);
        }
        let mut set = PointSet::new(2);
        for &i in &ids {
            let (sx, sy) = d.boundary.xy(i as usize);
            set.push2(sx, sy);
        }
        let idx = GridIndex::build(&set).expect("nonempty slice");
        Ok(SliceCtx { cx, cy, r, set, idx })
    }

    /// Normalized two-sided Hausdorff deviation for the line through (cx,
    /// cy) at angle `theta`. `stride` subsamples the boundary side and
    /// `chord_m` controls the density of the line-segment sample.
    fn epsilon(&self, theta: f64, stride: usize, chord_m: usize) -> f64 {
        let (ux, uy) = (theta.cos(), theta.sin());
        let (nx, ny) = (-uy, ux);
        // Boundary -> chord: every slice point projects inside the chord,
        // so its distance to the segment is the plain normal component.
        let mut a: f64 = 0.0;
        let n = self.set.len();
        let mut i = 0;
        while i < n {
            let (sx, sy) = self.set.xy(i);
            let dist = ((sx - self.cx) * nx + (sy - self.cy) * ny).abs();
            if dist > a {
                a = dist;
            }
            i += stride;
        }
        // Chord -> boundary: nearest slice sample per chord point.
        let mut b: f64 = 0.0;
        for k in 0..chord_m {
            let t = -self.r + 2.0 * self.r * (k as f64) / ((chord_m - 1) as f64);
            let (px, py) = (self.cx + t * ux, self.cy + t * uy);
            let (_, dist) = self.idx.nearest(px, py, &self.set);
            if dist > b {
                b = dist;
            }
        }
        a.max(b) / self.r
    }
}

fn golden_min(mut lo: f64, mut hi: f64, tol: f64, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn check_scale(d: &Domain, r: f64) -> Result<()> {
    if r < MIN_SCALE_CELLS * d.resolution {
        return Err(Error::ScaleOutOfRange(format!(
            "scale {r} is below {MIN_SCALE_CELLS} x resolution {}",
            d.resolution
        )));
    }
    Ok(())
}

/// Best line through `x` for the boundary slice in B(x, r): a coarse sweep
/// over angles followed by golden-section refinement. The plane passes
/// through `x` exactly.
pub fn best_hyperplane(d: &Domain, x: &Point, r: f64) -> Result<FlatnessSample> {
    check_scale(d, r)?;
    let (cx, cy) = x.xy();
    let on_boundary = d.dist_to_boundary(cx, cy)?;
    if on_boundary > d.resolution * std::f64::consts::SQRT_2 * (1.0 + 1e-9) {
        return Err(Error::InvalidParameter(format!(
            "x is {on_boundary} from the boundary, beyond resolution * sqrt(2)"
        )));
    }
    let ctx = SliceCtx::build(d, x, r)?;
    let stride = (ctx.set.len() / COARSE_SLICE).max(1);

    let mut best_theta = 0.0;
    let mut best_eps = f64::INFINITY;
    for a in 0..COARSE_ANGLES {
        let theta = std::f64::consts::PI * (a as f64) / (COARSE_ANGLES as f64);
        let e = ctx.epsilon(theta, stride, COARSE_CHORD);
        if e < best_eps {
            best_eps = e;
            best_theta = theta;
        }
    }
    let delta = std::f64::consts::PI / (COARSE_ANGLES as f64);
    let (theta_ref, eps_ref) =
        golden_min(best_theta - delta, best_theta + delta, REFINE_TOL_RAD, |t| {
            ctx.epsilon(t, 1, FINE_CHORD)
        });
    let eps_coarse_full = ctx.epsilon(best_theta, 1, FINE_CHORD);
    let (theta_star, eps_star) = if eps_ref <= eps_coarse_full {
        (theta_ref, eps_ref)
    } else {
        (best_theta, eps_coarse_full)
    };
    let plane = Hyperplane::new(x.clone(), vec![-theta_star.sin(), theta_star.cos()])?;
    Ok(FlatnessSample { x: x.clone(), r, plane, epsilon: eps_star, orientation: None })
}

/// Deviation of a caller-supplied candidate line (angle in radians) through
/// `x`, evaluated at full precision. Used by the optimizer-dominance tests
/// and the brute-force oracle.
pub fn epsilon_for_angle(d: &Domain, x: &Point, r: f64, theta: f64) -> Result<f64> {
    check_scale(d, r)?;
    let ctx = SliceCtx::build(d, x, r)?;
    Ok(ctx.epsilon(theta, 1, FINE_CHORD))
}

/// Tests the two components of B(x,r) with distance to the plane at least
/// 2 eps r (eroded by one cell diagonal) against the occupancy: one must be
/// entirely inside, the other entirely outside. On success the returned
/// sample records which side of the plane is the interior.
pub fn separation_check(d: &Domain, s: &FlatnessSample) -> Result<SeparationOutcome> {
    let (cx, cy) = s.x.xy();
    let r = s.r;
    let geom = d.geometry();
    let res = d.resolution;
    let threshold = 2.0 * s.epsilon * r + std::f64::consts::SQRT_2 * res;
    let (nx, ny) = (s.plane.normal[0], s.plane.normal[1]);

    let j_lo = (((cy - r - geom.y0) / res).floor().max(0.0)) as usize;
    let j_hi = ((((cy + r - geom.y0) / res).ceil()).max(0.0) as usize).min(geom.height);
    let i_lo = (((cx - r - geom.x0) / res).floor().max(0.0)) as usize;
    let i_hi = ((((cx + r - geom.x0) / res).ceil()).max(0.0) as usize).min(geom.width);

    let mut pos_total = 0usize;
    let mut pos_inside = 0usize;
    let mut neg_total = 0usize;
    let mut neg_inside = 0usize;
    let mut first_pos: Option<bool> = None;
    let mut first_neg: Option<bool> = None;
    let mut pos_first_cell: Option<(usize, usize)> = None;
    let mut neg_first_cell: Option<(usize, usize)> = None;
    let mut pos_witness: Option<(usize, usize)> = None;
    let mut neg_witness: Option<(usize, usize)> = None;

    for j in j_lo..j_hi {
        for i in i_lo..i_hi {
            let (x, y) = geom.center(i, j);
            let (dx, dy) = (x - cx, y - cy);
            if dx * dx + dy * dy > r * r {
                continue;
            }
            let sd = dx * nx + dy * ny;
            if sd.abs() < threshold {
                continue;
            }
            let inside = d.occupancy.get(i, j);
            if sd > 0.0 {
                pos_total += 1;
                pos_inside += inside as usize;
                match first_pos {
                    None => {
                        first_pos = Some(inside);
                        pos_first_cell = Some((i, j));
                    }
                    Some(v) if v != inside && pos_witness.is_none() => {
                        pos_witness = Some((i, j));
                    }
                    _ => {}
                }
            } else {
                neg_total += 1;
                neg_inside += inside as usize;
                match first_neg {
                    None => {
                        first_neg = Some(inside);
                        neg_first_cell = Some((i, j));
                    }
                    Some(v) if v != inside && neg_witness.is_none() => {
                        neg_witness = Some((i, j));
                    }
                    _ => {}
                }
            }
        }
    }

    if pos_total == 0 || neg_total == 0 {
        return Err(Error::DegenerateSlab);
    }
    let pos_all_in = pos_inside == pos_total;
    let pos_all_out = pos_inside == 0;
    let neg_all_in = neg_inside == neg_total;
    let neg_all_out = neg_inside == 0;

    if pos_all_in && neg_all_out {
        let mut oriented = s.clone();
        oriented.orientation = Some(1);
        return Ok(SeparationOutcome::Oriented(oriented));
    }
    if pos_all_out && neg_all_in {
        let mut oriented = s.clone();
        oriented.orientation = Some(-1);
        return Ok(SeparationOutcome::Oriented(oriented));
    }

    let (witness_cell, detail) = if let Some(c) = pos_witness.or(neg_witness) {
        (c, "mixed occupancy within one component".to_string())
    } else {
        // Both sides homogeneous but not opposite, e.g. the slab brackets a
        // boundary sheet with the domain on both sides.
        let cell = if pos_all_in && neg_all_in {
            neg_first_cell.or(pos_first_cell)
        } else {
            pos_first_cell.or(neg_first_cell)
        }
        .unwrap_or((i_lo, j_lo));
        let which = if pos_all_in && neg_all_in {
            "both components inside the domain"
        } else {
            "both components outside the domain"
        };
        (cell, which.to_string())
    };
    let (wx, wy) = geom.center(witness_cell.0, witness_cell.1);
    Ok(SeparationOutcome::Violation(SeparationViolation {
        x: s.x.clone(),
        r,
        witness_cell,
        witness_point: Point::new2(wx, wy),
        positive_inside: pos_inside,
        positive_total: pos_total,
        negative_inside: neg_inside,
        negative_total: neg_total,
        detail,
    }))
}

/// Indices of a stratified boundary subsample of at most about
/// `max_points` points (all of them when the boundary is small).
fn stratified_points(n: usize, max_points: usize) -> (Vec<usize>, bool) {
    if n <= max_points {
        ((0..n).collect(), false)
    } else {
        let stride = (n / max_points).max(1);
        ((0..n).step_by(stride).collect(), true)
    }
}

/// Evaluates best hyperplanes and separation at every profiled boundary
/// point over the dyadic scale grid r0, r0/2, ..., clipped at
/// [`MIN_SCALE_CELLS`] cells.
pub fn flatness_profile(d: &Domain, r0: f64, n_scales: usize) -> Result<FlatnessReport> {
    flatness_profile_with(d, r0, n_scales, DEFAULT_PROFILE_POINTS)
}

pub fn flatness_profile_with(
    d: &Domain,
    r0: f64,
    n_scales: usize,
    max_points: usize,
) -> Result<FlatnessReport> {
    if n_scales < 1 {
        return Err(Error::InvalidParameter("n_scales must be at least 1".into()));
    }
    check_scale(d, r0)?;
    if d.boundary.is_empty() {
        return Err(Error::NoBoundary);
    }
    let mut scale_grid: Vec<f64> = Vec::new();
    for k in 0..n_scales {
        let r = r0 / (1u64 << k.min(62)) as f64;
        if r < MIN_SCALE_CELLS * d.resolution {
            break;
        }
        scale_grid.push(r);
    }
    if scale_grid.is_empty() {
        scale_grid.push(r0);
    }
    // Boundary points whose r0-ball leaves the clipped bbox see a truncated
    // slice and would report the clip edge, not the domain; skip them.
    let [[bx0, by0], [bx1, by1]] = d.bbox;
    let eligible: Vec<usize> = (0..d.boundary.len())
        .filter(|&p| {
            let (x, y) = d.boundary.xy(p);
            x - r0 >= bx0 - 1e-12
                && x + r0 <= bx1 + 1e-12
                && y - r0 >= by0 - 1e-12
                && y + r0 <= by1 + 1e-12
        })
        .collect();
    if eligible.is_empty() {
        return Err(Error::ScaleOutOfRange(format!(
            "no boundary point keeps its r0 = {r0} ball inside the clipped bbox"
        )));
    }
    let (picks, subsampled) = stratified_points(eligible.len(), max_points);
    let points: Vec<usize> = picks.into_iter().map(|k| eligible[k]).collect();

    let tasks: Vec<(usize, usize)> = points
        .iter()
        .flat_map(|&p| (0..scale_grid.len()).map(move |s| (p, s)))
        .collect();
    let evals: Vec<Result<(FlatnessSample, SeparationOutcome)>> = tasks
        .par_iter()
        .map(|&(p, s)| {
            let x = d.boundary.to_point(p);
            let sample = best_hyperplane(d, &x, scale_grid[s])?;
            let sep = separation_check(d, &sample)?;
            Ok((sample, sep))
        })
        .collect();

    let mut samples = Vec::with_capacity(tasks.len());
    let mut by_scale: Vec<ScaleSeparation> = scale_grid
        .iter()
        .map(|&scale| ScaleSeparation { scale, checked: 0, passed: 0, first_failure: None })
        .collect();
    let mut sup_epsilon = 0.0f64;
    let mut worst: Option<(Point, f64)> = None;
    for (k, ev) in evals.into_iter().enumerate() {
        let (_, scale_slot) = tasks[k];
        match ev {
            Ok((sample, sep)) => {
                if sample.epsilon > sup_epsilon {
                    sup_epsilon = sample.epsilon;
                    worst = Some((sample.x.clone(), sample.r));
                }
                by_scale[scale_slot].checked += 1;
                match sep {
                    SeparationOutcome::Oriented(oriented) => {
                        by_scale[scale_slot].passed += 1;
                        samples.push(oriented);
                    }
                    SeparationOutcome::Violation(v) => {
                        if by_scale[scale_slot].first_failure.is_none() {
                            by_scale[scale_slot].first_failure = Some(v);
                        }
                        samples.push(sample);
                    }
                }
            }
            Err(Error::DegenerateSlab) => {
                // Slab swallowed the whole ball (epsilon near or above 1/2):
                // counted as a failed check at this scale.
                by_scale[scale_slot].checked += 1;
            }
            Err(e) => return Err(e),
        }
    }
    let r_min = *scale_grid.last().unwrap();
    let separation_ok = by_scale[0].checked > 0 && by_scale[0].passed == by_scale[0].checked;
    Ok(FlatnessReport {
        r0,
        scale_grid,
        samples,
        sup_epsilon,
        separation_ok,
        worst,
        subsampled,
        points_evaluated: points.len(),
        discretization_margin: 2.0 * d.resolution / r_min,
        separation_by_scale: by_scale,
    })
}

/// A granted flatness certificate: measured deviation plus the
/// discretization margin stayed within the requested eps, and the oriented
/// separation held at scale r0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub eps: f64,
    pub r0: f64,
    pub sup_epsilon: f64,
    pub discretization_margin: f64,
    /// sup_epsilon + discretization_margin, the level actually certified.
    pub certified_epsilon: f64,
    pub scale_grid: Vec<f64>,
    pub separation_ok_at_r0: bool,
    pub separation_by_scale: Vec<ScaleSeparation>,
    pub worst: (Point, f64),
    pub subsampled: bool,
    pub points_evaluated: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlatnessViolation {
    pub eps: f64,
    pub r0: f64,
    pub sup_epsilon: f64,
    pub discretization_margin: f64,
    pub certified_epsilon: f64,
    pub worst: Option<(Point, f64)>,
    pub worst_plane: Option<Hyperplane>,
    pub separation_failure: Option<SeparationViolation>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum CertifyOutcome {
    Certificate(Certificate),
    Violation(Box<FlatnessViolation>),
}

impl CertifyOutcome {
    pub fn is_certificate(&self) -> bool {
        matches!(self, CertifyOutcome::Certificate(_))
    }
}

/// Certification at the default single-scale audit grid.
pub fn certify(d: &Domain, eps: f64, r0: f64) -> Result<CertifyOutcome> {
    certify_with(d, eps, r0, 1, DEFAULT_PROFILE_POINTS)
}

pub fn certify_with(
    d: &Domain,
    eps: f64,
    r0: f64,
    n_scales: usize,
    max_points: usize,
) -> Result<CertifyOutcome> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    let report = flatness_profile_with(d, r0, n_scales, max_points)?;
    let certified_epsilon = report.sup_epsilon + report.discretization_margin;
    let flat_enough = certified_epsilon <= eps;
    if flat_enough && report.separation_ok {
        let worst = report.worst.clone().expect("profile evaluated at least one point");
        Ok(CertifyOutcome::Certificate(Certificate {
            eps,
            r0,
            sup_epsilon: report.sup_epsilon,
            discretization_margin: report.discretization_margin,
            certified_epsilon,
            scale_grid: report.scale_grid,
            separation_ok_at_r0: report.separation_ok,
            separation_by_scale: report.separation_by_scale,
            worst,
            subsampled: report.subsampled,
            points_evaluated: report.points_evaluated,
        }))
    } else {
        let worst_plane = report.worst.as_ref().and_then(|(wx, wr)| {
            report
                .samples
                .iter()
                .find(|s| s.x == *wx && s.r == *wr)
                .map(|s| s.plane.clone())
        });
        let separation_failure = report.separation_by_scale[0].first_failure.clone();
        let reason = if !flat_enough {
            format!(
                "sup epsilon {} + margin {} = {} exceeds requested {}",
                report.sup_epsilon, report.discretization_margin, certified_epsilon, eps
            )
        } else {
            "separation failed at scale r0".to_string()
        };
        Ok(CertifyOutcome::Violation(Box::new(FlatnessViolation {
            eps,
            r0,
            sup_epsilon: report.sup_epsilon,
            discretization_margin: report.discretization_margin,
            certified_epsilon,
            worst: report.worst,
            worst_plane,
            separation_failure,
            reason,
        })))
    }
}

/// Result of the two-scale normal alignment check: the measured cosine must
/// stay above 1 - (M+1) eps, minus the discretization margin.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalAngleCheck {
    pub cos_value: f64,
    pub bound: f64,
    pub margin: f64,
    pub r: f64,
    pub m: f64,
    pub pass: bool,
}

pub fn normal_angle_check(
    d: &Domain,
    x: &Point,
    r: f64,
    m: f64,
    eps: f64,
) -> Result<NormalAngleCheck> {
    if m < 1.0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    let fine = best_hyperplane(d, x, r)?;
    let coarse = best_hyperplane(d, x, m * r)?;
    let cos_value = angle_cosine(&fine.plane.normal, &coarse.plane.normal)?.abs();
    // Each normal direction wobbles with the per-scale epsilon noise; the
    // margin mirrors the certificate's 2 res / r term scaled like the bound.
    let margin = (m + 1.0) * 2.0 * d.resolution / r;
    let bound = 1.0 - (m + 1.0) * eps - margin;
    Ok(NormalAngleCheck { cos_value, bound, margin, r, m, pass: cos_value >= bound })
}

/// Separation audited at every dyadic scale from r0 down to the resolution
/// floor, with the admissible downward step (1 - eps) / (3 eps) reported.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropagationReport {
    pub admissible_step: f64,
    pub scales: Vec<ScaleSeparation>,
    pub pass: bool,
}

pub fn separation_propagation_check(d: &Domain, r0: f64, eps: f64) -> Result<PropagationReport> {
    separation_propagation_check_with(d, r0, eps, DEFAULT_PROFILE_POINTS)
}

pub fn separation_propagation_check_with(
    d: &Domain,
    r0: f64,
    eps: f64,
    max_points: usize,
) -> Result<PropagationReport> {
    check_scale(d, r0)?;
    let mut n_scales = 1usize;
    while r0 / (1u64 << n_scales) as f64 >= MIN_SCALE_CELLS * d.resolution {
        n_scales += 1;
    }
    let report = flatness_profile_with(d, r0, n_scales, max_points)?;
    let pass = report
        .separation_by_scale
        .iter()
        .all(|s| s.checked > 0 && s.passed == s.checked);
    Ok(PropagationReport {
        admissible_step: (1.0 - eps) / (3.0 * eps),
        scales: report.separation_by_scale,
        pass,
    })
}
