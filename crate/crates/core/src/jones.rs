//! Constructive curves joining interior point pairs: interior points one
//! scale-length along the oriented normal, dyadic chains to the boundary's
//! nearest point, composite two-chain curves with a bridge, and quantitative
//! verification of the length and cigar inequalities along them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domains::{nearest_boundary_point, Domain};
use crate::error::{Error, Result};
use crate::flatness::{best_hyperplane, separation_check, SeparationOutcome, MIN_SCALE_CELLS};
use crate::geometry::Point;

/// Ordered vertex list with cached cumulative arc length.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
    cumulative: Vec<f64>,
}

impl Serialize for Polyline {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let verts: Vec<[f64; 2]> = self.vertices.iter().map(|p| [p.0[0], p.0[1]]).collect();
        verts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyline {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let verts = Vec::<[f64; 2]>::deserialize(d)?;
        Polyline::new(verts.into_iter().map(|[x, y]| Point::new2(x, y)).collect())
            .map_err(serde::de::Error::custom)
    }
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("polyline needs at least one vertex".into()));
        }
        let mut cumulative = Vec::with_capacity(vertices.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in vertices.windows(2) {
            let (ax, ay) = w[0].xy();
            let (bx, by) = w[1].xy();
            acc += ((bx - ax) * (bx - ax) + (by - ay) * (by - ay)).sqrt();
            cumulative.push(acc);
        }
        Ok(Polyline { vertices, cumulative })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    pub fn first(&self) -> &Point {
        self.vertices.first().unwrap()
    }

    pub fn last(&self) -> &Point {
        self.vertices.last().unwrap()
    }

    /// Point at arc-length position `s`, clamped to the curve.
    pub fn point_at(&self, s: f64) -> (f64, f64) {
        let s = s.clamp(0.0, self.length());
        let k = match self.cumulative.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(k) => k,
            Err(k) => k.saturating_sub(1),
        };
        if k + 1 >= self.vertices.len() {
            return self.vertices.last().unwrap().xy();
        }
        let seg = self.cumulative[k + 1] - self.cumulative[k];
        let (ax, ay) = self.vertices[k].xy();
        if seg <= 0.0 {
            return (ax, ay);
        }
        let t = (s - self.cumulative[k]) / seg;
        let (bx, by) = self.vertices[k + 1].xy();
        (ax + t * (bx - ax), ay + t * (by - ay))
    }

    pub fn reversed(&self) -> Polyline {
        let mut v = self.vertices.clone();
        v.reverse();
        Polyline::new(v).unwrap()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The point one scale-length inside the domain along the oriented normal
/// of the best plane at `(x0, rho)`.
pub fn y_point(d: &Domain, x0: &Point, rho: f64) -> Result<Point> {
    let sample = best_hyperplane(d, x0, rho)?;
    match separation_check(d, &sample)? {
        SeparationOutcome::Oriented(oriented) => {
            let n = oriented.oriented_normal().expect("oriented sample");
            let (bx, by) = oriented.x.xy();
            Ok(Point::new2(bx + rho * n[0], by + rho * n[1]))
        }
        SeparationOutcome::Violation(v) => Err(Error::CannotOrientNormal(v.detail)),
    }
}

/// Dyadic chain from an interior point `x` to the interior point at scale
/// `r` over the boundary point nearest to `x`.
///
/// With dx = d(x, complement): a single segment when r <= 2 dx, otherwise
/// the chain through interior points at scales r/2^k0, ..., r/2, r, where
/// k0 is the largest k with r/2^k >= dx.
pub fn gamma_chain(d: &Domain, x: &Point, r: f64) -> Result<Polyline> {
    let (cx, cy) = x.xy();
    if !d.inside_xy(cx, cy) {
        return Err(Error::InvalidParameter("chain base point must lie inside the domain".into()));
    }
    let (x0, dx) = nearest_boundary_point(d, x)?;
    if r < dx / 2.0 {
        return Err(Error::ScaleOutOfRange(format!(
            "r = {r} below d(x, complement)/2 = {}",
            dx / 2.0
        )));
    }
    if dx <= 0.0 {
        return Err(Error::UnderResolved("x coincides with a boundary sample".into()));
    }
    let mut vertices = vec![x.clone()];
    if r <= 2.0 * dx {
        vertices.push(y_point(d, &x0, r)?);
        return Polyline::new(vertices);
    }
    let mut k0 = 1usize;
    while r / (1u64 << (k0 + 1)) as f64 >= dx && k0 < 60 {
        k0 += 1;
    }
    let rho_min = r / (1u64 << k0) as f64;
    if rho_min < MIN_SCALE_CELLS * d.resolution {
        return Err(Error::UnderResolved(format!(
            "chain scale {rho_min} is below {MIN_SCALE_CELLS} x resolution"
        )));
    }
    for k in (0..=k0).rev() {
        let rho = r / (1u64 << k) as f64;
        vertices.push(y_point(d, &x0, rho)?);
    }
    Polyline::new(vertices)
}

/// Connecting curve for an interior pair at distance at most r0/7: the
/// straight segment when either point is deep, otherwise two chains joined
/// by a bridge between their top interior points.
pub fn jones_curve(d: &Domain, x: &Point, y: &Point, r0: f64) -> Result<Polyline> {
    if x == y {
        return Err(Error::IdenticalEndpoints);
    }
    let (xx, xy) = x.xy();
    let (yx, yy) = y.xy();
    if !d.inside_xy(xx, xy) || !d.inside_xy(yx, yy) {
        return Err(Error::InvalidParameter("curve endpoints must lie inside the domain".into()));
    }
    let dist = ((yx - xx) * (yx - xx) + (yy - xy) * (yy - xy)).sqrt();
    let max = r0 / 7.0;
    if dist > max {
        return Err(Error::BeyondJonesRadius { dist, max });
    }
    let dxc = d.dist_to_complement(xx, xy)?;
    let dyc = d.dist_to_complement(yx, yy)?;
    if dxc >= 2.0 * dist || dyc >= 2.0 * dist {
        return Polyline::new(vec![x.clone(), y.clone()]);
    }
    let chain_x = gamma_chain(d, x, dist)?;
    let chain_y = gamma_chain(d, y, dist)?;
    let mut vertices = chain_x.vertices;
    let mut tail = chain_y.vertices;
    tail.reverse();
    vertices.extend(tail);
    Polyline::new(vertices)
}

/// Cigar profile of a curve: worst value of
/// d(z, complement) d(x,y) / (d(z,x) d(z,y)) over sampled z, plus the
/// length ratio. Endpoints are excluded from the quotient (the bound is
/// vacuous there).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CigarReport {
    pub curve: Polyline,
    pub x: Point,
    pub y: Point,
    pub length: f64,
    pub length_ratio: f64,
    pub worst_delta: f64,
    pub worst_z: Point,
    pub n_samples: usize,
    pub delta: f64,
    /// Boundary-sample placement slack on every d(z, complement) value.
    pub distance_slack: f64,
    pub pass_length: bool,
    pub pass_cigar: bool,
    pub pass: bool,
}

/// Verifies the two curve inequalities at level `delta`.
///
/// The length clause compares against max(1, 1/delta) d(x,y): for delta
/// above 1 the literal 1/delta bound would exclude every rectifiable curve
/// (arc length never beats the chord), so only the straight segment passes,
/// which is the regime such deltas are used in.
pub fn verify_curve(
    d: &Domain,
    curve: &Polyline,
    x: &Point,
    y: &Point,
    delta: f64,
) -> Result<CigarReport> {
    if delta <= 0.0 {
        return Err(Error::InvalidParameter("delta must be positive".into()));
    }
    if x == y {
        return Err(Error::IdenticalEndpoints);
    }
    let close = |a: &Point, b: &Point| {
        let (ax, ay) = a.xy();
        let (bx, by) = b.xy();
        ((ax - bx) * (ax - bx) + (ay - by) * (ay - by)).sqrt() <= 1e-9
    };
    if !close(curve.first(), x) || !close(curve.last(), y) {
        return Err(Error::EndpointMismatch);
    }
    let (xx, xy_) = x.xy();
    let (yx, yy) = y.xy();
    let dxy = ((yx - xx) * (yx - xx) + (yy - xy_) * (yy - xy_)).sqrt();
    let len = curve.length();
    let step = d.resolution.min(len / 1000.0).max(len * 1e-9);
    let n_samples = ((len / step).ceil() as usize + 1).max(3);

    let mut worst_delta = f64::INFINITY;
    let mut worst_z = curve.first().clone();
    for k in 0..n_samples {
        let s = len * (k as f64) / ((n_samples - 1) as f64);
        let (zx, zy) = curve.point_at(s);
        let dzx = ((zx - xx) * (zx - xx) + (zy - xy_) * (zy - xy_)).sqrt();
        let dzy = ((zx - yx) * (zx - yx) + (zy - yy) * (zy - yy)).sqrt();
        if dzx == 0.0 || dzy == 0.0 {
            continue;
        }
        let dzc = d.dist_to_complement(zx, zy)?;
        let q = dzc * dxy / (dzx * dzy);
        if q < worst_delta {
            worst_delta = q;
            worst_z = Point::new2(zx, zy);
        }
    }
    let length_ratio = len / dxy;
    let pass_length = length_ratio <= (1.0 / delta).max(1.0) + 1e-12;
    let pass_cigar = worst_delta >= delta;
    Ok(CigarReport {
        curve: curve.clone(),
        x: x.clone(),
        y: y.clone(),
        length: len,
        length_ratio,
        worst_delta,
        worst_z,
        n_samples,
        delta,
        distance_slack: 2.0 * d.resolution,
        pass_length,
        pass_cigar,
        pass: pass_length && pass_cigar,
    })
}

/// One completed pair in an empirical Jones sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairOutcome {
    pub x: Point,
    pub y: Point,
    pub dist: f64,
    pub length_ratio: f64,
    pub worst_delta: f64,
    /// min(worst_delta, d(x,y)/length): the pair's effective delta.
    pub delta: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JonesEstimate {
    pub delta_star: f64,
    pub worst_pair: (Point, Point),
    pub n_pairs: usize,
    pub n_completed: usize,
    /// Pairs whose chain scales fell below the resolution floor.
    pub n_skipped: usize,
    pub big_r0: f64,
    pub seed: u64,
    pub pairs: Vec<PairOutcome>,
}

fn pair_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed ^ i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const DRAW_BUDGET: u64 = 1_000_000;

/// Seeded sweep over uniform interior pairs with d(x,y) <= big_r0: builds
/// the connecting curve for each pair and reports the worst effective
/// delta. Deterministic for a fixed seed regardless of worker count; pairs
/// whose chains are under-resolved on this grid are skipped and counted.
pub fn empirical_jones_constant(
    d: &Domain,
    big_r0: f64,
    n_pairs: usize,
    seed: u64,
) -> Result<JonesEstimate> {
    if n_pairs < 1 {
        return Err(Error::InvalidParameter("n_pairs must be at least 1".into()));
    }
    if big_r0 <= 0.0 {
        return Err(Error::InvalidParameter("R0 must be positive".into()));
    }
    // Pairs are sampled at least 4 R0 in from the bbox edge: the chain and
    // bridge construction around a pair stays within that reach, so it never
    // sees the truncated boundary at the clip.
    let [[bx0, by0], [bx1, by1]] = d.bbox;
    let (bx0, by0, bx1, by1) = (
        bx0 + 4.0 * big_r0,
        by0 + 4.0 * big_r0,
        bx1 - 4.0 * big_r0,
        by1 - 4.0 * big_r0,
    );
    if bx0 >= bx1 || by0 >= by1 {
        return Err(Error::InvalidParameter(
            "R0 too large for the domain bbox after edge erosion".into(),
        ));
    }
    let results: Vec<Result<Option<PairOutcome>>> = (0..n_pairs as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(pair_seed(seed, i));
            let mut draws = 0u64;
            let x = loop {
                draws += 1;
                if draws > DRAW_BUDGET {
                    return Err(Error::SamplingFailed(DRAW_BUDGET));
                }
                let px = rng.gen_range(bx0..bx1);
                let py = rng.gen_range(by0..by1);
                if d.inside_xy(px, py) {
                    break Point::new2(px, py);
                }
            };
            let (xx, xy_) = x.xy();
            let y = loop {
                draws += 1;
                if draws > DRAW_BUDGET {
                    return Err(Error::SamplingFailed(DRAW_BUDGET));
                }
                let rho = big_r0 * rng.gen_range(0.0f64..1.0).sqrt();
                let ang = rng.gen_range(0.0..std::f64::consts::TAU);
                let (px, py) = (xx + rho * ang.cos(), xy_ + rho * ang.sin());
                if d.inside_xy(px, py) && (px, py) != (xx, xy_) {
                    break Point::new2(px, py);
                }
            };
            let curve = match jones_curve(d, &x, &y, 7.0 * big_r0) {
                Ok(c) => c,
                Err(Error::UnderResolved(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            let report = verify_curve(d, &curve, &x, &y, 1.0 / 450.0)?;
            let (yx, yy) = y.xy();
            Ok(Some(PairOutcome {
                dist: ((yx - xx) * (yx - xx) + (yy - xy_) * (yy - xy_)).sqrt(),
                x,
                y,
                length_ratio: report.length_ratio,
                worst_delta: report.worst_delta,
                delta: report.worst_delta.min(1.0 / report.length_ratio),
            }))
        })
        .collect();

    let mut pairs = Vec::new();
    let mut skipped = 0usize;
    for r in results {
        match r? {
            Some(p) => pairs.push(p),
            None => skipped += 1,
        }
    }
    if pairs.is_empty() {
        return Err(Error::InvalidParameter(
            "every sampled pair was under-resolved on this grid".into(),
        ));
    }
    let (mut delta_star, mut worst) = (f64::INFINITY, 0usize);
    for (k, p) in pairs.iter().enumerate() {
        if p.delta < delta_star {
            delta_star = p.delta;
            worst = k;
        }
    }
    Ok(JonesEstimate {
        delta_star,
        worst_pair: (pairs[worst].x.clone(), pairs[worst].y.clone()),
        n_pairs,
        n_completed: pairs.len(),
        n_skipped: skipped,
        big_r0,
        seed,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{rasterize, DomainSpec};

    fn halfspace(res: f64, half: f64) -> Domain {
        rasterize(
            &DomainSpec::Halfspace { normal: [0.0, 1.0], offset: 0.0 },
            res,
            [[-half, -half], [half, half]],
        )
        .unwrap()
    }

    fn unit_ball(res: f64) -> Domain {
        rasterize(
            &DomainSpec::Ball { center: [0.0, 0.0], radius: 1.0 },
            res,
            [[-1.2, -1.2], [1.2, 1.2]],
        )
        .unwrap()
    }

    fn near(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
        ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt() <= tol
    }

    #[test]
    fn y_point_on_halfspace_goes_up() {
        let d = halfspace(0.01, 2.0);
        let x0 = nearest_boundary_point(&d, &Point::new2(0.0, 0.0)).unwrap().0;
        let y = y_point(&d, &x0, 1.0).unwrap();
        let (x0x, _) = x0.xy();
        assert!(near(y.xy(), (x0x, 1.0), 0.03), "Y = {:?}", y);
    }

    #[test]
    fn y_point_on_ball_goes_inward() {
        let d = unit_ball(0.002);
        let x0 = nearest_boundary_point(&d, &Point::new2(1.0, 0.0)).unwrap().0;
        let y = y_point(&d, &x0, 0.05).unwrap();
        assert!(near(y.xy(), (0.95, 0.0), 0.012), "Y = {:?}", y);
        let (yx, yy) = y.xy();
        assert!(d.inside_xy(yx, yy));
    }

    #[test]
    fn y_point_lands_inside_on_koch() {
        use rand::{Rng, SeedableRng};
        let spec = DomainSpec::KochFlat { angle_deg: 8.0, depth: 3 };
        let d = rasterize(&spec, 0.002, [[-0.8, -0.8], [0.8, 0.8]]).unwrap();
        let compiled = spec.compile().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..12 {
            let k = rng.gen_range(0..d.boundary.len());
            let x0 = d.boundary.to_point(k);
            let y = y_point(&d, &x0, 0.05).unwrap();
            let (bx, by) = x0.xy();
            let (yx, yy) = y.xy();
            let dist = ((yx - bx).powi(2) + (yy - by).powi(2)).sqrt();
            assert!((dist - 0.05).abs() < 1e-12);
            assert!(d.inside_xy(yx, yy), "Y outside raster at ({yx},{yy})");
            assert!(compiled.membership(yx, yy), "Y outside the true domain at ({yx},{yy})");
        }
    }

    #[test]
    fn chain_case_one_is_short_segment() {
        let d = halfspace(0.005, 2.0);
        let x = Point::new2(0.0, 0.1);
        let chain = gamma_chain(&d, &x, 0.1).unwrap();
        assert_eq!(chain.vertices().len(), 2);
        assert!(chain.length() <= 0.03, "length {}", chain.length());
        assert!(chain.length() <= 4.0 * 0.1);
    }

    #[test]
    fn chain_case_two_matches_dyadic_ladder() {
        let d = halfspace(0.005, 2.0);
        let h = 0.1;
        // Place x exactly above a boundary sample so d(x, complement) = h.
        let (x0, _) = nearest_boundary_point(&d, &Point::new2(0.0, h)).unwrap();
        let (bx, _) = x0.xy();
        let x = Point::new2(bx, h);
        let chain = gamma_chain(&d, &x, 4.0 * h).unwrap();
        // k0 = 2: vertices x, Y(h), Y(2h), Y(4h) stacked vertically.
        assert_eq!(chain.vertices().len(), 4);
        let expect = [(bx, h), (bx, h), (bx, 2.0 * h), (bx, 4.0 * h)];
        for (v, e) in chain.vertices().iter().zip(expect) {
            assert!(near(v.xy(), e, 0.02), "vertex {:?} vs {:?}", v.xy(), e);
        }
        assert!((chain.length() - 3.0 * h).abs() <= 0.03, "length {}", chain.length());
        assert!(chain.length() <= 4.0 * 4.0 * h + 4.0 * d.resolution);
    }

    #[test]
    fn chain_respects_length_and_cigar_bounds_on_ball() {
        let d = unit_ball(0.00125);
        let x = Point::new2(0.99, 0.0);
        let r = 0.05;
        let chain = gamma_chain(&d, &x, r).unwrap();
        assert!(chain.length() <= 4.0 * r + 4.0 * d.resolution, "length {}", chain.length());
        // Cigar bound along the chain, with grid slack.
        let (xx, xy_) = x.xy();
        let n = 400;
        for k in 0..=n {
            let s = chain.length() * (k as f64) / (n as f64);
            let (zx, zy) = chain.point_at(s);
            let dzc = d.dist_to_complement(zx, zy).unwrap();
            let dzx = ((zx - xx).powi(2) + (zy - xy_).powi(2)).sqrt();
            assert!(
                dzc >= 29.0 / 240.0 * dzx - 2.0 * d.resolution,
                "cigar violated at ({zx},{zy}): {dzc} vs {}",
                29.0 / 240.0 * dzx
            );
        }
    }

    #[test]
    fn chain_rejects_out_of_window_scale() {
        let d = halfspace(0.005, 2.0);
        let x = Point::new2(0.0, 1.0);
        assert!(matches!(gamma_chain(&d, &x, 0.4), Err(Error::ScaleOutOfRange(_))));
    }

    #[test]
    fn jones_curve_deep_pair_is_segment() {
        let d = halfspace(0.02, 16.0);
        let x = Point::new2(0.0, 10.0);
        let y = Point::new2(1.0, 10.0);
        let curve = jones_curve(&d, &x, &y, 14.0).unwrap();
        assert_eq!(curve.vertices().len(), 2);
        assert!((curve.length() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jones_curve_composite_shape_and_bounds() {
        let d = halfspace(0.01, 16.0);
        let x = Point::new2(-1.0, 0.1);
        let y = Point::new2(1.0, 0.1);
        let curve = jones_curve(&d, &x, &y, 14.5).unwrap();
        // Climbs to height 2 over each endpoint and bridges across.
        let max_y = curve
            .vertices()
            .iter()
            .map(|p| p.xy().1)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((max_y - 2.0).abs() < 0.05, "max height {max_y}");
        assert!((curve.length() - 5.8).abs() < 0.2, "length {}", curve.length());
        assert!(curve.length() <= 15.0 * 2.0 + 4.0 * d.resolution);
        let report = verify_curve(&d, &curve, &x, &y, 1.0 / 450.0).unwrap();
        assert!(report.pass, "ratio {} delta {}", report.length_ratio, report.worst_delta);
    }

    #[test]
    fn jones_curve_rejects_far_pairs() {
        let d = halfspace(0.02, 16.0);
        let x = Point::new2(0.0, 10.0);
        let y = Point::new2(3.0, 10.0);
        assert!(matches!(
            jones_curve(&d, &x, &y, 14.0),
            Err(Error::BeyondJonesRadius { .. })
        ));
        assert!(matches!(jones_curve(&d, &x, &x, 14.0), Err(Error::IdenticalEndpoints)));
    }

    #[test]
    fn deep_segment_passes_cigar_at_four() {
        let d = rasterize(
            &DomainSpec::Ball { center: [0.0, 0.0], radius: 10.0 },
            0.05,
            [[-11.2, -11.2], [11.2, 11.2]],
        )
        .unwrap();
        let x = Point::new2(-0.1, 0.0);
        let y = Point::new2(0.1, 0.0);
        let curve = jones_curve(&d, &x, &y, 7.0).unwrap();
        let report = verify_curve(&d, &curve, &x, &y, 4.0).unwrap();
        assert!(report.worst_delta >= 4.0, "delta {}", report.worst_delta);
        assert!(report.pass, "segment should pass the degenerate length clause");
    }

    #[test]
    fn curve_exiting_domain_fails() {
        let d = rasterize(
            &DomainSpec::DiskWithSlit { width: 0.05, depth: 1.0 },
            0.004,
            [[-1.2, -1.2], [1.2, 1.2]],
        )
        .unwrap();
        let x = Point::new2(0.9, 0.2);
        let y = Point::new2(0.9, -0.2);
        let segment = Polyline::new(vec![x.clone(), y.clone()]).unwrap();
        let report = verify_curve(&d, &segment, &x, &y, 1.0 / 450.0).unwrap();
        assert_eq!(report.worst_delta, 0.0, "crossing the slit must zero the cigar");
        assert!(!report.pass);
    }

    #[test]
    fn verify_curve_rejects_endpoint_mismatch() {
        let d = halfspace(0.02, 2.0);
        let x = Point::new2(0.0, 1.0);
        let y = Point::new2(0.5, 1.0);
        let seg = Polyline::new(vec![x.clone(), y.clone()]).unwrap();
        let err = verify_curve(&d, &seg, &x, &Point::new2(0.4, 1.0), 0.5);
        assert!(matches!(err, Err(Error::EndpointMismatch)));
    }

    #[test]
    fn segment_cigar_identity() {
        // sup over the segment of d(z,x) d(z,y) / d(x,y) equals d(x,y)/4,
        // checked on the arc-length sampler itself.
        let x = (3.0, -1.0);
        let y = (7.0, 2.0);
        let seg = Polyline::new(vec![Point::new2(x.0, x.1), Point::new2(y.0, y.1)]).unwrap();
        let dxy = ((y.0 - x.0) * (y.0 - x.0) + (y.1 - x.1) * (y.1 - x.1)).sqrt();
        let n = 100_000;
        let mut sup = 0.0f64;
        for k in 0..=n {
            let s = seg.length() * (k as f64) / (n as f64);
            let (zx, zy) = seg.point_at(s);
            let dzx = ((zx - x.0).powi(2) + (zy - x.1).powi(2)).sqrt();
            let dzy = ((zx - y.0).powi(2) + (zy - y.1).powi(2)).sqrt();
            sup = sup.max(dzx * dzy / dxy);
        }
        assert!((sup - dxy / 4.0).abs() <= 1e-9, "sup {} vs {}", sup, dxy / 4.0);
    }

    #[test]
    fn empirical_constant_on_halfspace_is_deterministic_and_large() {
        let d = halfspace(0.01, 8.0);
        let est1 = empirical_jones_constant(&d, 1.0, 40, 0).unwrap();
        let est2 = empirical_jones_constant(&d, 1.0, 40, 0).unwrap();
        assert_eq!(est1.delta_star.to_bits(), est2.delta_star.to_bits());
        assert_eq!(est1.worst_pair, est2.worst_pair);
        assert!(est1.delta_star >= 1.0 / 450.0, "delta* {}", est1.delta_star);
        assert!(est1.n_completed + est1.n_skipped == 40);
        assert!(est1.n_completed >= 35, "too many skips: {}", est1.n_skipped);
    }

    #[test]
    fn polyline_roundtrips_json() {
        let p = Polyline::new(vec![
            Point::new2(0.0, 0.25),
            Point::new2(1.0, -0.5),
            Point::new2(2.0, 3.0),
        ])
        .unwrap();
        let text = p.to_json().unwrap();
        let back = Polyline::from_json(&text).unwrap();
        assert_eq!(p, back);
    }
}
