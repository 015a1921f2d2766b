//! Domain comparison metrics: Hausdorff distances between occupancy sets,
//! complements and boundaries, symmetric-difference measure, the three radii
//! of a domain, and the quantitative comparison checks tying them together
//! for flat domains.

use serde::{Deserialize, Serialize};

use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::raster::{squared_distance_transform, Bitmap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    Sets,
    Complements,
    Boundaries,
}

impl std::str::FromStr for DistanceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sets" => Ok(DistanceMode::Sets),
            "complements" => Ok(DistanceMode::Complements),
            "boundaries" => Ok(DistanceMode::Boundaries),
            other => Err(Error::InvalidParameter(format!("unknown distance mode {other}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistanceReport {
    pub mode: DistanceMode,
    pub value: f64,
    pub witness_pair: (Point, Point),
    /// Complements are measured on the clipped bbox; the value equals the
    /// true one whenever the witness pair stays interior to the bbox.
    pub clipped: bool,
}

/// One-sided sup of distances from `from` cells to `to` cells, computed on
/// the shared grid through an exact distance transform. Returns the squared
/// sup in cell units and the witness cell on the `from` side.
fn one_sided_grid(from: &Bitmap, to: &Bitmap) -> Option<(f64, (usize, usize))> {
    if to.count_ones() == 0 || from.count_ones() == 0 {
        return None;
    }
    let field = squared_distance_transform(to);
    let w = from.width();
    let mut sup = -1.0f64;
    let mut wit = (0, 0);
    for j in 0..from.height() {
        for i in 0..w {
            if from.get(i, j) {
                let dd = field[j * w + i];
                if dd > sup {
                    sup = dd;
                    wit = (i, j);
                }
            }
        }
    }
    Some((sup, wit))
}

/// Nearest `to` cell from one witness cell, by local scan.
fn nearest_cell(to: &Bitmap, from_cell: (usize, usize), sup_sq: f64) -> (usize, usize) {
    let radius = sup_sq.sqrt().ceil() as isize + 1;
    let (wi, wj) = (from_cell.0 as isize, from_cell.1 as isize);
    let mut best = f64::INFINITY;
    let mut wit = from_cell;
    for dj in -radius..=radius {
        for di in -radius..=radius {
            let (i, j) = (wi + di, wj + dj);
            if i < 0 || j < 0 || i as usize >= to.width() || j as usize >= to.height() {
                continue;
            }
            if to.get(i as usize, j as usize) {
                let dd = (di * di + dj * dj) as f64;
                if dd < best {
                    best = dd;
                    wit = (i as usize, j as usize);
                }
            }
        }
    }
    wit
}

fn grid_hausdorff(
    a: &Bitmap,
    b: &Bitmap,
    d: &Domain,
    mode: DistanceMode,
) -> Result<DistanceReport> {
    let ab = one_sided_grid(a, b).ok_or(Error::EmptySet)?;
    let ba = one_sided_grid(b, a).ok_or(Error::EmptySet)?;
    let (sup_sq, wit_from, to_mask) = if ab.0 >= ba.0 { (ab.0, ab.1, b) } else { (ba.0, ba.1, a) };
    let wit_to = nearest_cell(to_mask, wit_from, sup_sq);
    let geom = d.geometry();
    let (fx, fy) = geom.center(wit_from.0, wit_from.1);
    let (tx, ty) = geom.center(wit_to.0, wit_to.1);
    Ok(DistanceReport {
        mode,
        value: sup_sq.sqrt() * d.resolution,
        witness_pair: (Point::new2(fx, fy), Point::new2(tx, ty)),
        clipped: mode == DistanceMode::Complements,
    })
}

/// Hausdorff distance between two same-grid domains in the requested mode:
/// inside cell centers, outside cell centers (clipped to the bbox), or
/// boundary sample sets.
pub fn domain_distance(x: &Domain, y: &Domain, mode: DistanceMode) -> Result<DistanceReport> {
    if !x.same_grid(y) {
        return Err(Error::GridMismatch);
    }
    match mode {
        DistanceMode::Sets => grid_hausdorff(&x.occupancy, &y.occupancy, x, mode),
        DistanceMode::Complements => {
            grid_hausdorff(&x.occupancy.negated(), &y.occupancy.negated(), x, mode)
        }
        DistanceMode::Boundaries => {
            if x.boundary.is_empty() || y.boundary.is_empty() {
                return Err(Error::EmptySet);
            }
            let (value, (wi, wj)) = crate::geometry::hausdorff_witness(&x.boundary, &y.boundary)?;
            let a = x.boundary.to_point(wi);
            let b = y.boundary.to_point(wj);
            Ok(DistanceReport { mode, value, witness_pair: (a, b), clipped: false })
        }
    }
}

/// Lebesgue measure of the symmetric difference, exact on the shared grid.
pub fn symmetric_difference_measure(x: &Domain, y: &Domain) -> Result<f64> {
    if !x.same_grid(y) {
        return Err(Error::GridMismatch);
    }
    Ok(x.occupancy.xor_count(&y.occupancy) as f64 * x.resolution * x.resolution)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiiReport {
    /// Radius of the largest inscribed ball.
    pub rad: f64,
    /// Radius of the smallest enclosing ball centered in the closure.
    pub big_rad: f64,
    pub diam: f64,
    pub inner_center: Point,
    pub outer_center: Point,
    pub diam_pair: (Point, Point),
}

/// Largest inscribed-ball radius and its center, from the exact distance
/// transform to non-occupied cells.
fn inscribed_radius(d: &Domain) -> Option<(f64, (usize, usize))> {
    let outside = d.occupancy.negated();
    if outside.count_ones() == d.occupancy.len() {
        return None;
    }
    let (sup_sq, cell) = one_sided_grid(&d.occupancy, &outside)?;
    Some((sup_sq.sqrt() * d.resolution, cell))
}

/// Monotone chain convex hull of the occupied cell centers.
fn hull_of_inside(d: &Domain) -> Vec<(f64, f64)> {
    let geom = d.geometry();
    let mut pts: Vec<(f64, f64)> = Vec::new();
    // Only row extremes can be hull vertices.
    for j in 0..d.occupancy.height() {
        let mut first: Option<usize> = None;
        let mut last = 0usize;
        for i in 0..d.occupancy.width() {
            if d.occupancy.get(i, j) {
                if first.is_none() {
                    first = Some(i);
                }
                last = i;
            }
        }
        if let Some(f) = first {
            pts.push(geom.center(f, j));
            if last != f {
                pts.push(geom.center(last, j));
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Diameter of the hull by rotating calipers.
fn hull_diameter(hull: &[(f64, f64)]) -> (f64, ((f64, f64), (f64, f64))) {
    let n = hull.len();
    if n == 1 {
        return (0.0, (hull[0], hull[0]));
    }
    if n == 2 {
        let d = ((hull[1].0 - hull[0].0).powi(2) + (hull[1].1 - hull[0].1).powi(2)).sqrt();
        return (d, (hull[0], hull[1]));
    }
    let area2 = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        ((a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)).abs()
    };
    let mut best = 0.0f64;
    let mut pair = (hull[0], hull[0]);
    let mut k = 1usize;
    for i in 0..n {
        let next = (i + 1) % n;
        while area2(hull[i], hull[next], hull[(k + 1) % n]) > area2(hull[i], hull[next], hull[k]) {
            k = (k + 1) % n;
        }
        for &cand in &[hull[k], hull[(k + 1) % n]] {
            for &base in &[hull[i], hull[next]] {
                let d = ((cand.0 - base.0).powi(2) + (cand.1 - base.1).powi(2)).sqrt();
                if d > best {
                    best = d;
                    pair = (base, cand);
                }
            }
        }
    }
    (best, pair)
}

/// Inner radius, outer radius and diameter of a bounded domain, each within
/// one cell diagonal of the continuum value.
pub fn radii(d: &Domain) -> Result<RadiiReport> {
    if d.occupancy.count_ones() == 0 {
        return Err(Error::EmptySet);
    }
    if d.touches_edge() {
        return Err(Error::UnboundedAtClip);
    }
    let geom = d.geometry();
    let (rad, rad_cell) = inscribed_radius(d).ok_or(Error::EmptySet)?;
    let hull = hull_of_inside(d);
    let (diam, diam_pair) = hull_diameter(&hull);

    // Outer radius: min over inside cells of the max distance to inside
    // cells; the max over a set is attained on its hull.
    let mut big_rad = f64::INFINITY;
    let mut outer = geom.center(rad_cell.0, rad_cell.1);
    for j in 0..d.occupancy.height() {
        for i in 0..d.occupancy.width() {
            if !d.occupancy.get(i, j) {
                continue;
            }
            let (cx, cy) = geom.center(i, j);
            let mut far = 0.0f64;
            for &(hx, hy) in &hull {
                let dd = (hx - cx) * (hx - cx) + (hy - cy) * (hy - cy);
                if dd > far {
                    far = dd;
                }
            }
            let far = far.sqrt();
            if far < big_rad {
                big_rad = far;
                outer = (cx, cy);
            }
        }
    }
    let (ix, iy) = geom.center(rad_cell.0, rad_cell.1);
    Ok(RadiiReport {
        rad,
        big_rad,
        diam,
        inner_center: Point::new2(ix, iy),
        outer_center: Point::new2(outer.0, outer.1),
        diam_pair: (
            Point::new2(diam_pair.0 .0, diam_pair.0 .1),
            Point::new2(diam_pair.1 .0, diam_pair.1 .1),
        ),
    })
}

/// Largest inscribed-ball radius, also defined for bbox-clipped domains
/// (where it is a lower bound for the true inner radius). The flag reports
/// whether the domain touches the clip.
pub fn inner_radius_clipped(d: &Domain) -> Result<(f64, bool)> {
    if d.occupancy.count_ones() == 0 {
        return Err(Error::EmptySet);
    }
    let (rad, _) = inscribed_radius(d).ok_or(Error::EmptySet)?;
    Ok((rad, d.touches_edge()))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiusBoundCheck {
    pub rad: f64,
    pub bound: f64,
    pub tolerance: f64,
    pub clipped: bool,
    pub pass: bool,
}

/// Inner-radius lower bound r0/4 for a domain certified flat at (eps, r0).
pub fn check_inner_radius_bound(d: &Domain, r0: f64) -> Result<RadiusBoundCheck> {
    let (rad, clipped) = inner_radius_clipped(d)?;
    let tolerance = d.resolution * std::f64::consts::SQRT_2;
    let bound = r0 / 4.0;
    Ok(RadiusBoundCheck { rad, bound, tolerance, clipped, pass: rad >= bound - tolerance })
}

/// Outcome of a hypothesis-gated comparison check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// The hypothesis did not hold; the bound is not asserted.
    Inapplicable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonCheck {
    pub outcome: CheckOutcome,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub hypothesis: String,
    pub detail: String,
}

/// Boundary distance against set/complement distances for two certified
/// domains: under d_H(bd X, bd Y) <= 2 r0,
/// d_H(bd X, bd Y) <= 4/(1-2 eps) min(d_H(X,Y), d_H(X^c,Y^c)).
pub fn check_boundary_vs_sets(
    x: &Domain,
    y: &Domain,
    eps: f64,
    r0: f64,
) -> Result<ComparisonCheck> {
    let boundaries = domain_distance(x, y, DistanceMode::Boundaries)?.value;
    let margin = 2.0 * std::f64::consts::SQRT_2 * x.resolution;
    let hypothesis = format!("d_H(bd X, bd Y) = {boundaries} <= 2 r0 = {}", 2.0 * r0);
    if boundaries > 2.0 * r0 {
        return Ok(ComparisonCheck {
            outcome: CheckOutcome::Inapplicable,
            lhs: boundaries,
            rhs: 2.0 * r0,
            margin,
            hypothesis,
            detail: "hypothesis not met".into(),
        });
    }
    let sets = domain_distance(x, y, DistanceMode::Sets)?.value;
    let complements = domain_distance(x, y, DistanceMode::Complements)?.value;
    let rhs = 4.0 / (1.0 - 2.0 * eps) * sets.min(complements) + margin;
    let pass = boundaries <= rhs;
    Ok(ComparisonCheck {
        outcome: if pass { CheckOutcome::Pass } else { CheckOutcome::Fail },
        lhs: boundaries,
        rhs,
        margin,
        hypothesis,
        detail: format!("sets {sets}, complements {complements}"),
    })
}

/// Set and complement distances against the symmetric-difference measure:
/// under d_H <= 4 r0, d_H <= 8/(1-2 eps) (|X sym diff Y| / omega_N)^(1/N).
pub fn check_measure_bounds(x: &Domain, y: &Domain, eps: f64, r0: f64) -> Result<ComparisonCheck> {
    let measure = symmetric_difference_measure(x, y)?;
    let omega2 = std::f64::consts::PI;
    let scale = 8.0 / (1.0 - 2.0 * eps) * (measure / omega2).sqrt();
    let margin = 2.0 * std::f64::consts::SQRT_2 * x.resolution;
    let sets = domain_distance(x, y, DistanceMode::Sets)?.value;
    let complements = domain_distance(x, y, DistanceMode::Complements)?.value;

    let mut applicable = false;
    let mut pass = true;
    let mut detail = String::new();
    if sets <= 4.0 * r0 {
        applicable = true;
        let ok = sets <= scale + margin;
        pass &= ok;
        detail.push_str(&format!("sets {sets} vs bound {} ({}); ", scale + margin, ok));
    } else {
        detail.push_str(&format!("sets {sets} beyond hypothesis 4 r0; "));
    }
    if complements <= 4.0 * r0 {
        applicable = true;
        let ok = complements <= scale + margin;
        pass &= ok;
        detail.push_str(&format!("complements {complements} vs bound {} ({})", scale + margin, ok));
    } else {
        detail.push_str(&format!("complements {complements} beyond hypothesis 4 r0"));
    }
    let outcome = if !applicable {
        CheckOutcome::Inapplicable
    } else if pass {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail
    };
    Ok(ComparisonCheck {
        outcome,
        lhs: sets.max(complements),
        rhs: scale + margin,
        margin,
        hypothesis: format!("d_H <= 4 r0 = {}", 4.0 * r0),
        detail,
    })
}

/// Lebesgue measure of the unit ball in N dimensions via the two-step
/// recursion omega_N = (2 pi / N) omega_{N-2}, plus the comparison
/// omega_N >= omega_{N-1} / 2^{N-1}.
pub fn unit_ball_volume(n: u32) -> Result<(f64, bool)> {
    if !(1..=20).contains(&n) {
        return Err(Error::InvalidParameter("dimension must lie in 1..=20".into()));
    }
    let omega = |k: u32| -> f64 {
        if k == 0 {
            return 1.0;
        }
        let mut v = if k % 2 == 0 { 1.0 } else { 2.0 };
        let mut m = if k % 2 == 0 { 2 } else { 3 };
        while m <= k {
            v *= 2.0 * std::f64::consts::PI / (m as f64);
            m += 2;
        }
        v
    };
    let v = omega(n);
    let prev = omega(n - 1);
    let holds = v >= prev / 2f64.powi(n as i32 - 1);
    Ok((v, holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{rasterize, DomainSpec};

    fn ball(center: [f64; 2], radius: f64, res: f64, bbox: [[f64; 2]; 2]) -> Domain {
        rasterize(&DomainSpec::Ball { center, radius }, res, bbox).unwrap()
    }

    #[test]
    fn identical_domains_have_zero_distances() {
        let bbox = [[-1.4, -1.4], [1.4, 1.4]];
        let x = ball([0.0, 0.0], 1.0, 0.01, bbox);
        for mode in [DistanceMode::Sets, DistanceMode::Complements, DistanceMode::Boundaries] {
            let r = domain_distance(&x, &x, mode).unwrap();
            assert_eq!(r.value, 0.0, "{mode:?}");
        }
    }

    #[test]
    fn annulus_pair_distances() {
        // X the unit disk, Y the surrounding shell of thickness 0.2:
        // boundaries 0.2, sets 1, complements 1.
        let bbox = [[-1.4, -1.4], [1.4, 1.4]];
        let res = 0.004;
        let x = ball([0.0, 0.0], 1.0, res, bbox);
        let y = rasterize(&DomainSpec::Annulus { radius: 1.0, thickness: 0.2 }, res, bbox).unwrap();
        let b = domain_distance(&x, &y, DistanceMode::Boundaries).unwrap().value;
        let s = domain_distance(&x, &y, DistanceMode::Sets).unwrap().value;
        let c = domain_distance(&x, &y, DistanceMode::Complements).unwrap().value;
        assert!((b - 0.2).abs() <= 0.05 * 0.2, "boundaries {b}");
        assert!((s - 1.0).abs() <= 0.05, "sets {s}");
        assert!((c - 1.0).abs() <= 0.05, "complements {c}");
        let r = domain_distance(&x, &y, DistanceMode::Complements).unwrap();
        assert!(r.clipped);
    }

    #[test]
    fn distance_requires_shared_grid() {
        let x = ball([0.0, 0.0], 1.0, 0.01, [[-1.4, -1.4], [1.4, 1.4]]);
        let y = ball([0.0, 0.0], 1.0, 0.02, [[-1.4, -1.4], [1.4, 1.4]]);
        assert!(matches!(domain_distance(&x, &y, DistanceMode::Sets), Err(Error::GridMismatch)));
    }

    #[test]
    fn symmetric_difference_matches_lens_area() {
        let bbox = [[-1.4, -1.4], [1.6, 1.4]];
        let res = 0.0005;
        let x = ball([0.0, 0.0], 1.0, res, bbox);
        let y = ball([0.1, 0.0], 1.0, res, bbox);
        let measured = symmetric_difference_measure(&x, &y).unwrap();
        // Closed form for two unit disks at center distance d.
        let d = 0.1f64;
        let lens = 2.0 * (d / 2.0).acos() - (d / 2.0) * (4.0 - d * d).sqrt();
        let exact = 2.0 * (std::f64::consts::PI - lens);
        assert!((exact - 0.3998).abs() < 5e-4, "lens formula sanity: {exact}");
        assert!((measured - exact).abs() <= 0.01 * exact, "measured {measured} vs exact {exact}");
    }

    #[test]
    fn symmetric_difference_complement_invariant() {
        let bbox = [[-1.4, -1.4], [1.6, 1.4]];
        let x = ball([0.0, 0.0], 1.0, 0.01, bbox);
        let y = ball([0.1, 0.0], 1.0, 0.01, bbox);
        let direct = symmetric_difference_measure(&x, &y).unwrap();
        let comp = symmetric_difference_measure(&x.complement(), &y.complement()).unwrap();
        assert_eq!(direct, comp);
        assert_eq!(symmetric_difference_measure(&x, &x).unwrap(), 0.0);
    }

    #[test]
    fn radii_of_ball_rectangle_annulus() {
        let b = ball([0.0, 0.0], 1.0, 0.005, [[-1.4, -1.4], [1.4, 1.4]]);
        let r = radii(&b).unwrap();
        let tol = 0.005 * std::f64::consts::SQRT_2 + 1e-9;
        assert!((r.rad - 1.0).abs() <= tol, "rad {}", r.rad);
        assert!((r.big_rad - 1.0).abs() <= tol, "Rad {}", r.big_rad);
        assert!((r.diam - 2.0).abs() <= 2.0 * tol, "diam {}", r.diam);

        let rect = rasterize(
            &DomainSpec::Rectangle { a: 1.0, b: 2.0 },
            0.005,
            [[-0.8, -1.3], [0.8, 1.3]],
        )
        .unwrap();
        let r = radii(&rect).unwrap();
        assert!((r.rad - 0.5).abs() <= tol, "rad {}", r.rad);
        assert!((r.big_rad - 5f64.sqrt() / 2.0).abs() <= 2.0 * tol, "Rad {}", r.big_rad);
        assert!((r.diam - 5f64.sqrt()).abs() <= 2.0 * tol, "diam {}", r.diam);

        let a = rasterize(
            &DomainSpec::Annulus { radius: 1.0, thickness: 0.1 },
            0.001,
            [[-1.3, -1.3], [1.3, 1.3]],
        )
        .unwrap();
        let r = radii(&a).unwrap();
        assert!((r.rad - 0.05).abs() <= 0.001 * 1.5, "rad {}", r.rad);
        assert!((r.diam - 2.2).abs() <= 0.01, "diam {}", r.diam);
        assert!(r.rad <= r.big_rad && r.big_rad <= r.diam + 1e-12);
    }

    #[test]
    fn radii_reject_clipped_domains() {
        let hs = rasterize(
            &DomainSpec::Halfspace { normal: [0.0, 1.0], offset: 0.0 },
            0.02,
            [[-1.0, -1.0], [1.0, 1.0]],
        )
        .unwrap();
        assert!(matches!(radii(&hs), Err(Error::UnboundedAtClip)));
        // The clipped inner radius is still available for the bound check.
        let check = check_inner_radius_bound(&hs, 0.8).unwrap();
        assert!(check.clipped);
        assert!(check.pass, "rad {} vs bound {}", check.rad, check.bound);
    }

    #[test]
    fn inner_radius_bound_on_certified_ball() {
        let b = ball([0.0, 0.0], 1.0, 0.005, [[-1.4, -1.4], [1.4, 1.4]]);
        let check = check_inner_radius_bound(&b, 0.1).unwrap();
        assert!(check.pass);
        assert!(!check.clipped);
    }

    #[test]
    fn boundary_vs_sets_on_concentric_disks() {
        let bbox = [[-1.5, -1.5], [1.5, 1.5]];
        let res = 0.002;
        let x = ball([0.0, 0.0], 1.0, res, bbox);
        let y = ball([0.0, 0.0], 1.05, res, bbox);
        let check = check_boundary_vs_sets(&x, &y, 0.05, 0.05).unwrap();
        assert!(matches!(check.outcome, CheckOutcome::Pass), "{check:?}");
        assert!((check.lhs - 0.05).abs() <= 0.01);
    }

    #[test]
    fn boundary_vs_sets_hypothesis_gate() {
        let bbox = [[-1.5, -1.5], [1.5, 1.5]];
        let res = 0.005;
        let x = ball([0.0, 0.0], 1.0, res, bbox);
        let y = ball([0.0, 0.0], 1.3, res, bbox);
        // Boundaries 0.3 apart against 2 r0 = 0.02: inapplicable.
        let check = check_boundary_vs_sets(&x, &y, 0.05, 0.01).unwrap();
        assert!(matches!(check.outcome, CheckOutcome::Inapplicable));
    }

    #[test]
    fn measure_bound_on_shifted_disks() {
        let bbox = [[-1.4, -1.4], [1.6, 1.4]];
        let res = 0.002;
        let x = ball([0.0, 0.0], 1.0, res, bbox);
        let y = ball([0.1, 0.0], 1.0, res, bbox);
        // d_H(X, Y) = 0.1 <= 4 r0 with r0 = 0.05; rhs about 2.85.
        let check = check_measure_bounds(&x, &y, 0.05, 0.05).unwrap();
        assert!(matches!(check.outcome, CheckOutcome::Pass), "{check:?}");
        let identical = check_measure_bounds(&x, &x, 0.05, 0.05).unwrap();
        assert!(matches!(identical.outcome, CheckOutcome::Pass));
    }

    #[test]
    fn unit_ball_volumes_match_known_values() {
        let (v1, ok1) = unit_ball_volume(1).unwrap();
        let (v2, ok2) = unit_ball_volume(2).unwrap();
        let (v3, ok3) = unit_ball_volume(3).unwrap();
        assert!((v1 - 2.0).abs() < 1e-12);
        assert!((v2 - std::f64::consts::PI).abs() < 1e-12);
        assert!((v3 - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        assert!(ok1 && ok2 && ok3);
        for n in 1..=20 {
            let (_, ok) = unit_ball_volume(n).unwrap();
            assert!(ok, "volume comparison failed at N = {n}");
        }
        assert!(unit_ball_volume(0).is_err());
        assert!(unit_ball_volume(21).is_err());
    }

    #[test]
    fn distance_symmetry() {
        let bbox = [[-1.5, -1.5], [1.7, 1.5]];
        let res = 0.01;
        let x = ball([0.0, 0.0], 1.0, res, bbox);
        let y = ball([0.15, 0.0], 0.9, res, bbox);
        for mode in [DistanceMode::Sets, DistanceMode::Complements, DistanceMode::Boundaries] {
            let a = domain_distance(&x, &y, mode).unwrap().value;
            let b = domain_distance(&y, &x, mode).unwrap().value;
            assert_eq!(a, b, "{mode:?}");
        }
    }
}
