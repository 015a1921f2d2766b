//! Domain representations (raster occupancy plus extracted boundary samples)
//! and generators for the example domains used throughout the crate.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GridIndex, Point, PointSet};
use crate::raster::{Bitmap, GridGeometry};

/// Parameterized shapes with analytic membership functions.
///
/// Disk-based variants (`DiskWithTentacle`, `DiskWithSlit`) modify the unit
/// disk; `KochFlat` perturbs a unit square with outward tent bumps of the
/// given angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    Halfspace { normal: [f64; 2], offset: f64 },
    Ball { center: [f64; 2], radius: f64 },
    Rectangle { a: f64, b: f64 },
    Annulus { radius: f64, thickness: f64 },
    LipschitzGraph { lip: f64, seed: u64 },
    KochFlat { angle_deg: f64, depth: u32 },
    DiskWithTentacle { width: f64, length: f64 },
    DiskWithSlit { width: f64, depth: f64 },
}

enum Fill {
    /// Membership test evaluated at each cell center.
    PerCell(Box<dyn Fn(f64, f64) -> bool + Sync>),
    /// Subgraph region y < f(x); f evaluated once per column.
    Graph(Box<dyn Fn(f64) -> f64 + Sync>),
    /// Even-odd filled closed polygon, rasterized by scanlines.
    Polygon(Vec<(f64, f64)>),
}

/// A spec compiled to an executable membership function.
pub struct CompiledSpec {
    fill: Fill,
    support: Option<[[f64; 2]; 2]>,
    min_feature: Option<f64>,
}

impl CompiledSpec {
    pub fn membership(&self, x: f64, y: f64) -> bool {
        match &self.fill {
            Fill::PerCell(f) => f(x, y),
            Fill::Graph(f) => y < f(x),
            Fill::Polygon(poly) => point_in_polygon(poly, x, y),
        }
    }

    /// Tight box around the shape, None for unbounded specs.
    pub fn support(&self) -> Option<[[f64; 2]; 2]> {
        self.support
    }

    /// Thinnest geometric feature; rasterization refuses resolutions above it.
    pub fn min_feature(&self) -> Option<f64> {
        self.min_feature
    }
}

fn point_in_polygon(poly: &[(f64, f64)], x: f64, y: f64) -> bool {
    let mut inside = false;
    let n = poly.len();
    for k in 0..n {
        let (x1, y1) = poly[k];
        let (x2, y2) = poly[(k + 1) % n];
        if (y1 > y) != (y2 > y) {
            let t = (y - y1) / (y2 - y1);
            if x < x1 + t * (x2 - x1) {
                inside = !inside;
            }
        }
    }
    inside
}

impl DomainSpec {
    pub fn compile(&self) -> Result<CompiledSpec> {
        let positive = |v: f64, name: &str| -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
            }
        };
        match *self {
            DomainSpec::Halfspace { normal, offset } => {
                let n = (normal[0] * normal[0] + normal[1] * normal[1]).sqrt();
                if n == 0.0 || !n.is_finite() || !offset.is_finite() {
                    return Err(Error::InvalidParameter("halfspace normal must be nonzero".into()));
                }
                let (nx, ny) = (normal[0] / n, normal[1] / n);
                Ok(CompiledSpec {
                    fill: Fill::PerCell(Box::new(move |x, y| nx * x + ny * y > offset)),
                    support: None,
                    min_feature: None,
                })
            }
            DomainSpec::Ball { center, radius } => {
                positive(radius, "radius")?;
                let [cx, cy] = center;
                Ok(CompiledSpec {
                    fill: Fill::PerCell(Box::new(move |x, y| {
                        (x - cx) * (x - cx) + (y - cy) * (y - cy) < radius * radius
                    })),
                    support: Some([[cx - radius, cy - radius], [cx + radius, cy + radius]]),
                    min_feature: Some(radius),
                })
            }
            DomainSpec::Rectangle { a, b } => {
                positive(a, "a")?;
                positive(b, "b")?;
                Ok(CompiledSpec {
                    fill: Fill::PerCell(Box::new(move |x, y| {
                        x.abs() < a / 2.0 && y.abs() < b / 2.0
                    })),
                    support: Some([[-a / 2.0, -b / 2.0], [a / 2.0, b / 2.0]]),
                    min_feature: Some(a.min(b)),
                })
            }
            DomainSpec::Annulus { radius, thickness } => {
                positive(radius, "radius")?;
                positive(thickness, "thickness")?;
                let outer = radius + thickness;
                Ok(CompiledSpec {
                    fill: Fill::PerCell(Box::new(move |x, y| {
                        let r2 = x * x + y * y;
                        r2 > radius * radius && r2 < outer * outer
                    })),
                    support: Some([[-outer, -outer], [outer, outer]]),
                    min_feature: Some(thickness),
                })
            }
            DomainSpec::LipschitzGraph { lip, seed } => {
                positive(lip, "lip")?;
                let profile = lipschitz_profile(lip, seed);
                Ok(CompiledSpec {
                    fill: Fill::Graph(profile),
                    support: None,
                    min_feature: None,
                })
            }
            DomainSpec::KochFlat { angle_deg, depth } => {
                if !(angle_deg > 0.0 && angle_deg < 45.0) {
                    return Err(Error::InvalidParameter(format!(
                        "koch angle must lie in (0, 45) degrees, got {angle_deg}"
                    )));
                }
                let poly = koch_polygon(angle_deg.to_radians(), depth);
                let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
                let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
                for &(x, y) in &poly {
                    x0 = x0.min(x);
                    y0 = y0.min(y);
                    x1 = x1.max(x);
                    y1 = y1.max(y);
                }
                Ok(CompiledSpec {
                    fill: Fill::Polygon(poly),
                    support: Some([[x0, y0], [x1, y1]]),
                    min_feature: Some(3f64.powi(-(depth as i32))),
                })
            }
            DomainSpec::DiskWithTentacle { width, length } => {
                positive(width, "width")?;
                positive(length, "length")?;
                if width >= 1.0 {
                    return Err(Error::InvalidParameter("tentacle width must be below the disk radius".into()));
                }
                let tip_x = 1.0 + length - width / 2.0;
                let hw = width / 2.0;
                Ok(CompiledSpec {
                    fill: Fill::PerCell(Box::new(move |x, y| {
                        x * x + y * y < 1.0
                            || (x >= 0.5 && x <= tip_x && y.abs() < hw)
                            || (x - tip_x) * (x - tip_x) + y * y < hw * hw
                    })),
                    support: Some([[-1.0, -1.0], [tip_x + hw, 1.0]]),
                    min_feature: Some(width),
                })
            }
            DomainSpec::DiskWithSlit { width, depth } => {
                positive(width, "width")?;
                positive(depth, "depth")?;
                if width >= 1.0 || depth >= 2.0 {
                    return Err(Error::InvalidParameter("slit must fit inside the unit disk".into()));
                }
                let inner_x = 1.0 - depth + width / 2.0;
                let hw = width / 2.0;
                Ok(CompiledSpec {
                    fill: Fill::PerCell(Box::new(move |x, y| {
                        let in_disk = x * x + y * y < 1.0;
                        let in_slot = (x >= inner_x && y.abs() < hw)
                            || (x - inner_x) * (x - inner_x) + y * y < hw * hw;
                        in_disk && !in_slot
                    })),
                    support: Some([[-1.0, -1.0], [1.0, 1.0]]),
                    min_feature: Some(width),
                })
            }
        }
    }
}

/// Seeded 1-Lipschitz-normalized harmonic profile scaled by `lip`.
fn lipschitz_profile(lip: f64, seed: u64) -> Box<dyn Fn(f64) -> f64 + Sync> {
    const HARMONICS: usize = 8;
    const PERIOD: f64 = 4.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = [0.0f64; HARMONICS];
    let mut phases = [0.0f64; HARMONICS];
    let mut total = 0.0;
    for k in 0..HARMONICS {
        coeffs[k] = rng.gen_range(-1.0..1.0);
        phases[k] = rng.gen_range(0.0..std::f64::consts::TAU);
        total += coeffs[k].abs();
    }
    if total == 0.0 {
        total = 1.0;
    }
    Box::new(move |x: f64| {
        let mut f = 0.0;
        for k in 0..HARMONICS {
            let omega = std::f64::consts::TAU * (k as f64 + 1.0) / PERIOD;
            f += coeffs[k] / total * (omega * x + phases[k]).sin() / omega;
        }
        lip * f
    })
}

/// Closed polygon for the flat Koch generator: every segment is replaced by
/// four segments forming a tent of the given bump angle over the middle
/// third, iterated `depth` times on a unit square.
pub fn koch_polygon(angle_rad: f64, depth: u32) -> Vec<(f64, f64)> {
    // Counterclockwise unit square; bumps point outward (right of travel).
    let mut poly: Vec<(f64, f64)> = vec![(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(poly.len() * 4);
        let n = poly.len();
        for k in 0..n {
            let (ax, ay) = poly[k];
            let (bx, by) = poly[(k + 1) % n];
            let (dx, dy) = (bx - ax, by - ay);
            let len = (dx * dx + dy * dy).sqrt();
            let (ux, uy) = (dx / len, dy / len);
            let (ox, oy) = (uy, -ux);
            let h = len / 6.0 * angle_rad.tan();
            next.push((ax, ay));
            next.push((ax + dx / 3.0, ay + dy / 3.0));
            next.push((ax + dx / 2.0 + ox * h, ay + dy / 2.0 + oy * h));
            next.push((ax + 2.0 * dx / 3.0, ay + 2.0 * dy / 3.0));
        }
        poly = next;
    }
    poly
}

/// Raster stand-in for an open set: occupancy bits at cell centers plus the
/// extracted boundary sample set, both in world coordinates.
#[derive(Clone, Debug)]
pub struct Domain {
    pub label: String,
    pub bbox: [[f64; 2]; 2],
    pub resolution: f64,
    pub occupancy: Bitmap,
    pub boundary: PointSet,
    index: OnceLock<GridIndex>,
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
            && self.bbox == other.bbox
            && self.resolution == other.resolution
            && self.occupancy == other.occupancy
            && self.boundary == other.boundary
    }
}

impl Domain {
    /// Builds a domain from an occupancy mask, extracting the boundary.
    pub fn from_parts(
        label: impl Into<String>,
        bbox: [[f64; 2]; 2],
        resolution: f64,
        occupancy: Bitmap,
    ) -> Result<Self> {
        if resolution <= 0.0 || !resolution.is_finite() {
            return Err(Error::InvalidParameter("resolution must be positive".into()));
        }
        let geom = GridGeometry {
            x0: bbox[0][0],
            y0: bbox[0][1],
            resolution,
            width: occupancy.width(),
            height: occupancy.height(),
        };
        let boundary = extract_boundary(&occupancy, &geom);
        Ok(Domain {
            label: label.into(),
            bbox,
            resolution,
            occupancy,
            boundary,
            index: OnceLock::new(),
        })
    }

    pub fn geometry(&self) -> GridGeometry {
        GridGeometry {
            x0: self.bbox[0][0],
            y0: self.bbox[0][1],
            resolution: self.resolution,
            width: self.occupancy.width(),
            height: self.occupancy.height(),
        }
    }

    /// Lebesgue measure of the occupied cells.
    pub fn area(&self) -> f64 {
        self.occupancy.count_ones() as f64 * self.resolution * self.resolution
    }

    /// Occupancy test at a world point; false outside the grid.
    pub fn inside_xy(&self, x: f64, y: f64) -> bool {
        match self.geometry().cell_of(x, y) {
            Some((i, j)) => self.occupancy.get(i, j),
            None => false,
        }
    }

    pub fn boundary_index(&self) -> Result<&GridIndex> {
        if self.boundary.is_empty() {
            return Err(Error::NoBoundary);
        }
        Ok(self
            .index
            .get_or_init(|| GridIndex::build(&self.boundary).expect("nonempty planar boundary")))
    }

    /// Distance from a world point to the boundary sample set.
    pub fn dist_to_boundary(&self, x: f64, y: f64) -> Result<f64> {
        let idx = self.boundary_index()?;
        Ok(idx.nearest(x, y, &self.boundary).1)
    }

    /// Distance to the complement: zero outside the occupancy, distance to
    /// the boundary samples inside.
    pub fn dist_to_complement(&self, x: f64, y: f64) -> Result<f64> {
        if !self.inside_xy(x, y) {
            return Ok(0.0);
        }
        self.dist_to_boundary(x, y)
    }

    /// True when an occupied cell touches the grid border.
    pub fn touches_edge(&self) -> bool {
        let w = self.occupancy.width();
        let h = self.occupancy.height();
        (0..w).any(|i| self.occupancy.get(i, 0) || self.occupancy.get(i, h - 1))
            || (0..h).any(|j| self.occupancy.get(0, j) || self.occupancy.get(w - 1, j))
    }

    /// Occupancy negated in place over the same grid; boundary unchanged.
    pub fn complement(&self) -> Domain {
        Domain {
            label: self.label.clone(),
            bbox: self.bbox,
            resolution: self.resolution,
            occupancy: self.occupancy.negated(),
            boundary: self.boundary.clone(),
            index: OnceLock::new(),
        }
    }

    pub fn same_grid(&self, other: &Domain) -> bool {
        self.bbox == other.bbox
            && self.resolution == other.resolution
            && self.occupancy.width() == other.occupancy.width()
            && self.occupancy.height() == other.occupancy.height()
    }
}

/// Nearest boundary sample to `x`, ties broken by lexicographically smallest
/// coordinates.
pub fn nearest_boundary_point(d: &Domain, x: &Point) -> Result<(Point, f64)> {
    let idx = d.boundary_index()?;
    let (px, py) = x.xy();
    let (_, dist) = idx.nearest(px, py, &d.boundary);
    // Gather everything within the found distance (plus head room for the
    // radius-squared comparison) and re-resolve ties exactly.
    let radius = dist * (1.0 + 1e-12) + 1e-300;
    let candidates = idx.within(px, py, radius, &d.boundary);
    let mut best = f64::INFINITY;
    for &c in &candidates {
        let (sx, sy) = d.boundary.xy(c as usize);
        let dd = ((sx - px) * (sx - px) + (sy - py) * (sy - py)).sqrt();
        if dd < best {
            best = dd;
        }
    }
    let mut winner: Option<(f64, f64)> = None;
    for &c in &candidates {
        let (sx, sy) = d.boundary.xy(c as usize);
        let dd = ((sx - px) * (sx - px) + (sy - py) * (sy - py)).sqrt();
        if dd == best {
            let better = match winner {
                None => true,
                Some((wx, wy)) => (sx, sy) < (wx, wy),
            };
            if better {
                winner = Some((sx, sy));
            }
        }
    }
    let (sx, sy) = winner.ok_or(Error::NoBoundary)?;
    Ok((Point::new2(sx, sy), best))
}

/// One sample per occupancy-transition cell edge: the midpoint of the edge
/// between an inside and an outside cell.
fn extract_boundary(occ: &Bitmap, geom: &GridGeometry) -> PointSet {
    let mut set = PointSet::new(2);
    let w = occ.width();
    let h = occ.height();
    for j in 0..h {
        for i in 0..w {
            let here = occ.get(i, j);
            if i + 1 < w && here != occ.get(i + 1, j) {
                set.push2(
                    geom.x0 + (i as f64 + 1.0) * geom.resolution,
                    geom.y0 + (j as f64 + 0.5) * geom.resolution,
                );
            }
            if j + 1 < h && here != occ.get(i, j + 1) {
                set.push2(
                    geom.x0 + (i as f64 + 0.5) * geom.resolution,
                    geom.y0 + (j as f64 + 1.0) * geom.resolution,
                );
            }
        }
    }
    set
}

/// Recomputes the boundary sample set of a domain.
pub fn boundary_samples(d: &Domain) -> Result<PointSet> {
    let ones = d.occupancy.count_ones();
    if ones == 0 || ones == d.occupancy.len() {
        return Err(Error::NoBoundary);
    }
    Ok(extract_boundary(&d.occupancy, &d.geometry()))
}

/// Rasterizes a spec: occupancy is the membership test at cell centers.
pub fn rasterize(spec: &DomainSpec, resolution: f64, bbox: [[f64; 2]; 2]) -> Result<Domain> {
    if resolution <= 0.0 || !resolution.is_finite() {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    let [[x0, y0], [x1, y1]] = bbox;
    if !(x1 > x0 && y1 > y0) {
        return Err(Error::InvalidParameter("bbox must have positive extent".into()));
    }
    let compiled = spec.compile()?;
    if let Some(feature) = compiled.min_feature() {
        if resolution > feature {
            return Err(Error::FeatureUnderResolved { resolution, feature });
        }
    }
    if let Some([[sx0, sy0], [sx1, sy1]]) = compiled.support() {
        let mx = 0.05 * (x1 - x0);
        let my = 0.05 * (y1 - y0);
        if sx0 < x0 + mx || sy0 < y0 + my || sx1 > x1 - mx || sy1 > y1 - my {
            return Err(Error::InvalidParameter(
                "bbox must contain the spec support with at least 5% margin per side".into(),
            ));
        }
    }
    let width = (((x1 - x0) / resolution) - 1e-9).ceil().max(1.0) as usize;
    let height = (((y1 - y0) / resolution) - 1e-9).ceil().max(1.0) as usize;
    if width.checked_mul(height).is_none() || width * height > (1usize << 33) {
        return Err(Error::InvalidParameter(format!(
            "grid {width}x{height} is too large; use a coarser resolution"
        )));
    }
    let geom = GridGeometry { x0, y0, resolution, width, height };
    let occupancy = match &compiled.fill {
        Fill::PerCell(f) => fill_per_cell(&geom, f),
        Fill::Graph(f) => fill_graph(&geom, f),
        Fill::Polygon(poly) => fill_polygon(&geom, poly),
    };
    let boundary = extract_boundary(&occupancy, &geom);
    let label = spec_label(spec);
    Ok(Domain {
        label,
        bbox,
        resolution,
        occupancy,
        boundary,
        index: OnceLock::new(),
    })
}

fn spec_label(spec: &DomainSpec) -> String {
    match spec {
        DomainSpec::Halfspace { normal, offset } => {
            format!("halfspace(n=({},{}),c={})", normal[0], normal[1], offset)
        }
        DomainSpec::Ball { center, radius } => {
            format!("ball(({},{}),R={})", center[0], center[1], radius)
        }
        DomainSpec::Rectangle { a, b } => format!("rectangle({a}x{b})"),
        DomainSpec::Annulus { radius, thickness } => format!("annulus(R={radius},t={thickness})"),
        DomainSpec::LipschitzGraph { lip, seed } => format!("lipschitz_graph(L={lip},seed={seed})"),
        DomainSpec::KochFlat { angle_deg, depth } => format!("koch_flat({angle_deg}deg,depth={depth})"),
        DomainSpec::DiskWithTentacle { width, length } => {
            format!("disk_with_tentacle(w={width},l={length})")
        }
        DomainSpec::DiskWithSlit { width, depth } => format!("disk_with_slit(w={width},l={depth})"),
    }
}

fn fill_per_cell(geom: &GridGeometry, f: &(dyn Fn(f64, f64) -> bool + Sync)) -> Bitmap {
    let mut bm = Bitmap::new(geom.width, geom.height);
    for j in 0..geom.height {
        let y = geom.y0 + (j as f64 + 0.5) * geom.resolution;
        for i in 0..geom.width {
            let x = geom.x0 + (i as f64 + 0.5) * geom.resolution;
            if f(x, y) {
                bm.set(i, j, true);
            }
        }
    }
    bm
}

fn fill_graph(geom: &GridGeometry, f: &(dyn Fn(f64) -> f64 + Sync)) -> Bitmap {
    let profile: Vec<f64> = (0..geom.width)
        .map(|i| f(geom.x0 + (i as f64 + 0.5) * geom.resolution))
        .collect();
    let mut bm = Bitmap::new(geom.width, geom.height);
    for j in 0..geom.height {
        let y = geom.y0 + (j as f64 + 0.5) * geom.resolution;
        for i in 0..geom.width {
            if y < profile[i] {
                bm.set(i, j, true);
            }
        }
    }
    bm
}

fn fill_polygon(geom: &GridGeometry, poly: &[(f64, f64)]) -> Bitmap {
    let mut bm = Bitmap::new(geom.width, geom.height);
    let n = poly.len();
    let mut crossings: Vec<f64> = Vec::new();
    for j in 0..geom.height {
        let y = geom.y0 + (j as f64 + 0.5) * geom.resolution;
        crossings.clear();
        for k in 0..n {
            let (x1, y1) = poly[k];
            let (x2, y2) = poly[(k + 1) % n];
            if (y1 > y) != (y2 > y) {
                let t = (y - y1) / (y2 - y1);
                crossings.push(x1 + t * (x2 - x1));
            }
        }
        crossings.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for pair in crossings.chunks_exact(2) {
            let (xa, xb) = (pair[0], pair[1]);
            // First center at or after xa, centers strictly before xb.
            let i0 = (((xa - geom.x0) / geom.resolution - 0.5).ceil().max(0.0)) as usize;
            let i1f = ((xb - geom.x0) / geom.resolution - 0.5).ceil().max(0.0);
            let i1 = (i1f as usize).min(geom.width);
            if i0 < i1 {
                bm.set_run(j, i0, i1, true);
            }
        }
    }
    bm
}

/// Cell-wise union of same-grid domains, with the boundary re-extracted.
pub fn union_of(domains: &[&Domain], label: impl Into<String>) -> Result<Domain> {
    let first = domains.first().ok_or(Error::EmptySet)?;
    let mut occ = first.occupancy.clone();
    for d in &domains[1..] {
        if !first.same_grid(d) {
            return Err(Error::GridMismatch);
        }
        occ.or_assign(&d.occupancy);
    }
    Domain::from_parts(label, first.bbox, first.resolution, occ)
}

// ---------------------------------------------------------------------------
// Domain file format (JSON)

#[derive(Serialize, Deserialize)]
struct OccupancyFile {
    width: usize,
    height: usize,
    bits: String,
}

#[derive(Serialize, Deserialize)]
struct DomainFile {
    label: String,
    bbox: [[f64; 2]; 2],
    resolution: f64,
    occupancy: OccupancyFile,
    boundary: Vec<[f64; 2]>,
}

impl Domain {
    pub fn to_json(&self) -> Result<String> {
        let file = DomainFile {
            label: self.label.clone(),
            bbox: self.bbox,
            resolution: self.resolution,
            occupancy: OccupancyFile {
                width: self.occupancy.width(),
                height: self.occupancy.height(),
                bits: B64.encode(self.occupancy.to_bytes()),
            },
            boundary: (0..self.boundary.len())
                .map(|i| {
                    let (x, y) = self.boundary.xy(i);
                    [x, y]
                })
                .collect(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DomainFile = serde_json::from_str(text)?;
        let bytes = B64
            .decode(file.occupancy.bits.as_bytes())
            .map_err(|e| Error::InvalidParameter(format!("bad occupancy encoding: {e}")))?;
        let occupancy = Bitmap::from_bytes(file.occupancy.width, file.occupancy.height, &bytes)
            .ok_or_else(|| Error::InvalidParameter("occupancy bit count mismatch".into()))?;
        let mut boundary = PointSet::new(2);
        for [x, y] in file.boundary {
            boundary.push2(x, y);
        }
        Ok(Domain {
            label: file.label,
            bbox: file.bbox,
            resolution: file.resolution,
            occupancy,
            boundary,
            index: OnceLock::new(),
        })
    }

    pub fn write_json_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_json()?.as_bytes())?;
        f.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let mut text = String::new();
        std::fs::File::open(path)?.read_to_string(&mut text)?;
        Domain::from_json(&text)
    }
}
