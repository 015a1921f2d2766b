//! Dimension-generic primitives: points, hyperplanes, point-set distances and
//! the Hausdorff distance on finite samples.
//!
//! Everything here is a pure function over immutable data. Only N = 2 gets a
//! spatial index; other dimensions fall back to exhaustive scans.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in R^N, stored as its coordinate list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new2(x: f64, y: f64) -> Self {
        Point(vec![x, y])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// The (x, y) pair of a planar point. Panics on other dimensions.
    pub fn xy(&self) -> (f64, f64) {
        assert_eq!(self.0.len(), 2, "planar point expected");
        (self.0[0], self.0[1])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// A finite point set with flat coordinate storage (`dim` values per point).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: usize) -> Self {
        PointSet { dim, coords: Vec::new() }
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        let dim = points.first().map(|p| p.dim()).unwrap_or(2);
        let mut set = PointSet::new(dim);
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(dim, p.dim()));
            }
            set.coords.extend_from_slice(&p.0);
        }
        Ok(set)
    }

    pub fn push(&mut self, p: &[f64]) {
        debug_assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    pub fn push2(&mut self, x: f64, y: f64) {
        debug_assert_eq!(self.dim, 2);
        self.coords.push(x);
        self.coords.push(y);
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 { 0 } else { self.coords.len() / self.dim }
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn xy(&self, i: usize) -> (f64, f64) {
        debug_assert_eq!(self.dim, 2);
        (self.coords[2 * i], self.coords[2 * i + 1])
    }

    pub fn to_point(&self, i: usize) -> Point {
        Point(self.point(i).to_vec())
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    pub fn build_index(&self) -> Option<GridIndex> {
        GridIndex::build(self)
    }
}

/// Distance from `p` to the nearest point of `s` (exhaustive scan).
pub fn dist_point_set(p: &[f64], s: &PointSet) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if p.len() != s.dim() {
        return Err(Error::DimensionMismatch(p.len(), s.dim()));
    }
    let mut best = f64::INFINITY;
    for q in s.iter() {
        let d = euclid(p, q);
        if d < best {
            best = d;
        }
    }
    Ok(best)
}

const BRUTE_FORCE_LIMIT: usize = 2_000;

/// Two-sided Hausdorff distance between finite nonempty sets.
///
/// Brute force for small inputs, bucket-grid nearest-neighbor queries above
/// [`BRUTE_FORCE_LIMIT`] points; both paths produce identical values.
pub fn hausdorff(s: &PointSet, t: &PointSet) -> Result<f64> {
    Ok(hausdorff_witness(s, t)?.0)
}

/// Hausdorff distance plus the witness pair realizing it, always ordered as
/// (index into `s`, index into `t`).
pub fn hausdorff_witness(s: &PointSet, t: &PointSet) -> Result<(f64, (usize, usize))> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::EmptySet);
    }
    if s.dim() != t.dim() {
        return Err(Error::DimensionMismatch(s.dim(), t.dim()));
    }
    let big = s.len().max(t.len()) > BRUTE_FORCE_LIMIT;
    if big && s.dim() == 2 {
        Ok(hausdorff_indexed(s, t))
    } else {
        Ok(hausdorff_brute(s, t))
    }
}

/// O(|S| * |T|) reference path; exposed so tests can compare against the
/// indexed path.
pub fn hausdorff_brute(s: &PointSet, t: &PointSet) -> (f64, (usize, usize)) {
    let (d_st, w_st) = one_sided_brute(s, t);
    let (d_ts, (ti, sj)) = one_sided_brute(t, s);
    if d_st >= d_ts {
        (d_st, w_st)
    } else {
        (d_ts, (sj, ti))
    }
}

fn one_sided_brute(s: &PointSet, t: &PointSet) -> (f64, (usize, usize)) {
    let mut sup = -1.0;
    let mut wit = (0, 0);
    for i in 0..s.len() {
        let p = s.point(i);
        let mut best = f64::INFINITY;
        let mut best_j = 0;
        for j in 0..t.len() {
            let d = euclid(p, t.point(j));
            if d < best {
                best = d;
                best_j = j;
            }
        }
        if best > sup {
            sup = best;
            wit = (i, best_j);
        }
    }
    (sup, wit)
}

/// Grid-index path (planar only); exposed for the agreement test.
pub fn hausdorff_indexed(s: &PointSet, t: &PointSet) -> (f64, (usize, usize)) {
    let idx_s = GridIndex::build(s).expect("nonempty planar set");
    let idx_t = GridIndex::build(t).expect("nonempty planar set");
    let (d_st, w_st) = one_sided_indexed(s, t, &idx_t);
    let (d_ts, (ti, sj)) = one_sided_indexed(t, s, &idx_s);
    if d_st >= d_ts {
        (d_st, w_st)
    } else {
        (d_ts, (sj, ti))
    }
}

fn one_sided_indexed(s: &PointSet, t: &PointSet, idx_t: &GridIndex) -> (f64, (usize, usize)) {
    let mut sup = -1.0;
    let mut wit = (0, 0);
    for i in 0..s.len() {
        let (x, y) = s.xy(i);
        let (j, d) = idx_t.nearest(x, y, t);
        if d > sup {
            sup = d;
            wit = (i, j);
        }
    }
    (sup, wit)
}

/// Cosine of the angle between two unit directions.
pub fn angle_cosine(n1: &[f64], n2: &[f64]) -> Result<f64> {
    if n1.len() != n2.len() {
        return Err(Error::DimensionMismatch(n1.len(), n2.len()));
    }
    const UNIT_TOL: f64 = 1e-9;
    if (norm(n1) - 1.0).abs() > UNIT_TOL || (norm(n2) - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotNormalized);
    }
    Ok(dot(n1, n2))
}

/// A hyperplane given by a base point on it and a unit normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub base: Point,
    pub normal: Vec<f64>,
}

impl Hyperplane {
    /// Builds a hyperplane, normalizing `normal`. The direction must be
    /// nonzero and the base finite.
    pub fn new(base: Point, normal: Vec<f64>) -> Result<Self> {
        if base.dim() != normal.len() {
            return Err(Error::DimensionMismatch(base.dim(), normal.len()));
        }
        if !base.is_finite() {
            return Err(Error::InvalidParameter("hyperplane base not finite".into()));
        }
        let n = norm(&normal);
        if !n.is_finite() || n == 0.0 {
            return Err(Error::NotNormalized);
        }
        let normal = normal.iter().map(|c| c / n).collect();
        Ok(Hyperplane { base, normal })
    }

    /// Signed distance from `p`, positive on the `normal` side.
    pub fn signed_distance(&self, p: &[f64]) -> f64 {
        debug_assert_eq!(p.len(), self.base.dim());
        p.iter()
            .zip(self.base.coords())
            .zip(&self.normal)
            .map(|((pc, bc), nc)| (pc - bc) * nc)
            .sum()
    }
}

/// Uniform bucket grid over a planar point set for nearest-neighbor queries.
#[derive(Clone, Debug)]
pub struct GridIndex {
    x0: f64,
    y0: f64,
    cell: f64,
    nx: usize,
    ny: usize,
    // CSR layout: bucket b holds entries[offsets[b]..offsets[b+1]]
    offsets: Vec<u32>,
    entries: Vec<u32>,
}

impl GridIndex {
    pub fn build(set: &PointSet) -> Option<Self> {
        if set.dim() != 2 || set.is_empty() {
            return None;
        }
        let n = set.len();
        let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
        let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for i in 0..n {
            let (x, y) = set.xy(i);
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let extent = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
        // Aim for O(1) points per bucket.
        let target = (n as f64).sqrt().ceil().max(1.0);
        let cell = (extent / target).max(extent * 1e-9).max(f64::MIN_POSITIVE);
        let nx = (((x1 - x0) / cell).floor() as usize + 1).min(4 * target as usize + 4);
        let ny = (((y1 - y0) / cell).floor() as usize + 1).min(4 * target as usize + 4);

        let bucket_of = |x: f64, y: f64| -> usize {
            let bx = (((x - x0) / cell) as usize).min(nx - 1);
            let by = (((y - y0) / cell) as usize).min(ny - 1);
            by * nx + bx
        };

        let mut counts = vec![0u32; nx * ny + 1];
        for i in 0..n {
            let (x, y) = set.xy(i);
            counts[bucket_of(x, y) + 1] += 1;
        }
        for b in 0..nx * ny {
            counts[b + 1] += counts[b];
        }
        let offsets = counts;
        let mut cursor = offsets.clone();
        let mut entries = vec![0u32; n];
        for i in 0..n {
            let (x, y) = set.xy(i);
            let b = bucket_of(x, y);
            entries[cursor[b] as usize] = i as u32;
            cursor[b] += 1;
        }
        Some(GridIndex { x0, y0, cell, nx, ny, offsets, entries })
    }

    fn scan_bucket(&self, b: usize, x: f64, y: f64, set: &PointSet, best: &mut f64, best_i: &mut usize) {
        let lo = self.offsets[b] as usize;
        let hi = self.offsets[b + 1] as usize;
        for &e in &self.entries[lo..hi] {
            let (px, py) = set.xy(e as usize);
            let d = ((px - x) * (px - x) + (py - y) * (py - y)).sqrt();
            if d < *best {
                *best = d;
                *best_i = e as usize;
            }
        }
    }

    /// Exact nearest neighbor by expanding rings of buckets.
    pub fn nearest(&self, x: f64, y: f64, set: &PointSet) -> (usize, f64) {
        let bx = (((x - self.x0) / self.cell).floor().max(0.0) as usize).min(self.nx - 1);
        let by = (((y - self.y0) / self.cell).floor().max(0.0) as usize).min(self.ny - 1);
        let mut best = f64::INFINITY;
        let mut best_i = usize::MAX;
        let max_ring = self.nx.max(self.ny);
        for ring in 0..=max_ring {
            // Any point in a bucket at Chebyshev ring k is at least
            // (k-1) * cell away; stop once that exceeds the best found.
            if best.is_finite() && ring >= 2 && ((ring - 1) as f64) * self.cell > best {
                break;
            }
            let xlo = bx.saturating_sub(ring);
            let xhi = (bx + ring).min(self.nx - 1);
            let ylo = by.saturating_sub(ring);
            let yhi = (by + ring).min(self.ny - 1);
            if ring == 0 {
                self.scan_bucket(by * self.nx + bx, x, y, set, &mut best, &mut best_i);
                continue;
            }
            for ix in xlo..=xhi {
                if by >= ring {
                    self.scan_bucket(ylo * self.nx + ix, x, y, set, &mut best, &mut best_i);
                }
                if by + ring <= self.ny - 1 {
                    self.scan_bucket(yhi * self.nx + ix, x, y, set, &mut best, &mut best_i);
                }
            }
            let ylo_in = if by >= ring { ylo + 1 } else { ylo };
            let yhi_in = if by + ring <= self.ny - 1 { yhi - 1 } else { yhi };
            for iy in ylo_in..=yhi_in {
                if bx >= ring {
                    self.scan_bucket(iy * self.nx + xlo, x, y, set, &mut best, &mut best_i);
                }
                if bx + ring <= self.nx - 1 {
                    self.scan_bucket(iy * self.nx + xhi, x, y, set, &mut best, &mut best_i);
                }
            }
        }
        (best_i, best)
    }

    /// Indices of all points within `radius` of `(x, y)`.
    pub fn within(&self, x: f64, y: f64, radius: f64, set: &PointSet) -> Vec<u32> {
        let bx0 = (((x - radius - self.x0) / self.cell).floor().max(0.0) as usize).min(self.nx - 1);
        let bx1 = (((x + radius - self.x0) / self.cell).floor().max(0.0) as usize).min(self.nx - 1);
        let by0 = (((y - radius - self.y0) / self.cell).floor().max(0.0) as usize).min(self.ny - 1);
        let by1 = (((y + radius - self.y0) / self.cell).floor().max(0.0) as usize).min(self.ny - 1);
        let r2 = radius * radius;
        let mut out = Vec::new();
        for by in by0..=by1 {
            for bx in bx0..=bx1 {
                let b = by * self.nx + bx;
                let lo = self.offsets[b] as usize;
                let hi = self.offsets[b + 1] as usize;
                for &e in &self.entries[lo..hi] {
                    let (px, py) = set.xy(e as usize);
                    if (px - x) * (px - x) + (py - y) * (py - y) <= r2 {
                        out.push(e);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set2(pts: &[(f64, f64)]) -> PointSet {
        let mut s = PointSet::new(2);
        for &(x, y) in pts {
            s.push2(x, y);
        }
        s
    }

    #[test]
    fn dist_membership_is_zero() {
        let s = set2(&[(0.0, 0.0), (1.0, 1.0)]);
        assert_eq!(dist_point_set(&[0.0, 0.0], &s).unwrap(), 0.0);
    }

    #[test]
    fn dist_three_four_five() {
        let s = set2(&[(3.0, 4.0)]);
        assert_eq!(dist_point_set(&[0.0, 0.0], &s).unwrap(), 5.0);
    }

    #[test]
    fn dist_unit_circle_samples() {
        // Oracle: exhaustive scan over all samples, written independently.
        let n = 10_000;
        let mut s = PointSet::new(2);
        let mut oracle = f64::INFINITY;
        for k in 0..n {
            let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            s.push2(t.cos(), t.sin());
        }
        for k in 0..n {
            let (x, y) = s.xy(k);
            oracle = oracle.min((x * x + y * y).sqrt());
        }
        let got = dist_point_set(&[0.0, 0.0], &s).unwrap();
        assert_eq!(got, oracle);
        assert!((got - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dist_empty_set_errors() {
        let s = PointSet::new(2);
        assert!(matches!(dist_point_set(&[0.0, 0.0], &s), Err(Error::EmptySet)));
    }

    #[test]
    fn hausdorff_identity_and_simple() {
        let s = set2(&[(0.0, 0.0), (2.0, 1.0), (-1.0, 3.0)]);
        assert_eq!(hausdorff(&s, &s).unwrap(), 0.0);
        let a = set2(&[(0.0, 0.0)]);
        let b = set2(&[(3.0, 4.0)]);
        assert_eq!(hausdorff(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn hausdorff_concentric_circles() {
        let mut a = PointSet::new(2);
        let mut b = PointSet::new(2);
        let n = 4_000;
        for k in 0..n {
            let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            a.push2(t.cos(), t.sin());
            b.push2(1.1 * t.cos(), 1.1 * t.sin());
        }
        let d = hausdorff(&a, &b).unwrap();
        assert!((d - 0.1).abs() < 1e-4, "d = {d}");
    }

    #[test]
    fn hausdorff_empty_errors() {
        let s = set2(&[(0.0, 0.0)]);
        let e = PointSet::new(2);
        assert!(hausdorff(&s, &e).is_err());
        assert!(hausdorff(&e, &s).is_err());
    }

    #[test]
    fn brute_and_indexed_agree() {
        // Deterministic pseudo-random layout, above the brute-force cutoff.
        let mut a = PointSet::new(2);
        let mut b = PointSet::new(2);
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..3_000 {
            a.push2(next() * 10.0, next() * 10.0);
            b.push2(next() * 10.0 + 0.5, next() * 10.0 - 0.25);
        }
        let (db, _) = hausdorff_brute(&a, &b);
        let (di, _) = hausdorff_indexed(&a, &b);
        assert!((db - di).abs() <= 1e-12, "brute {db} vs indexed {di}");
    }

    #[test]
    fn angle_cosine_basics() {
        assert_eq!(angle_cosine(&[0.0, 1.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(angle_cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        let c = angle_cosine(&[1.0, 0.0], &[0.3f64.cos(), 0.3f64.sin()]).unwrap();
        assert!((c - 0.3f64.cos()).abs() < 1e-12);
        assert!(c.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn angle_cosine_rejects_non_unit() {
        assert!(matches!(
            angle_cosine(&[2.0, 0.0], &[1.0, 0.0]),
            Err(Error::NotNormalized)
        ));
    }

    #[test]
    fn hyperplane_normalizes() {
        let h = Hyperplane::new(Point::new2(1.0, 2.0), vec![0.0, 5.0]).unwrap();
        assert_eq!(h.normal, vec![0.0, 1.0]);
        assert!((h.signed_distance(&[7.0, 3.0]) - 1.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn hausdorff_symmetric(
            a in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..40),
            b in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..40),
        ) {
            let sa = set2(&a);
            let sb = set2(&b);
            prop_assert_eq!(hausdorff(&sa, &sb).unwrap(), hausdorff(&sb, &sa).unwrap());
        }

        #[test]
        fn hausdorff_triangle_inequality(
            a in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..25),
            b in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..25),
            c in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..25),
        ) {
            let sa = set2(&a);
            let sb = set2(&b);
            let sc = set2(&c);
            let ab = hausdorff(&sa, &sb).unwrap();
            let bc = hausdorff(&sb, &sc).unwrap();
            let ac = hausdorff(&sa, &sc).unwrap();
            prop_assert!(ac <= ab + bc + 1e-9);
        }

        #[test]
        fn dist_bounded_by_hausdorff_with_union(
            p in (-50.0f64..50.0, -50.0f64..50.0),
            s in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..30),
        ) {
            let ss = set2(&s);
            let mut u = ss.clone();
            u.push2(p.0, p.1);
            let d = dist_point_set(&[p.0, p.1], &ss).unwrap();
            let h = hausdorff(&u, &ss).unwrap();
            prop_assert!(d <= h + 1e-12);
        }
    }
}
