//! Connected-component structure of a raster domain: 4-connected labeling,
//! the count bound against area over r0^N, and the pairwise separation
//! bound.

use serde::{Deserialize, Serialize};

use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::geometry::{GridIndex, PointSet};
use crate::metrics::unit_ball_volume;
use crate::raster::Bitmap;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    pub n: usize,
    /// One same-grid domain per component, largest area first.
    #[serde(skip)]
    pub components: Vec<Domain>,
    pub areas: Vec<f64>,
    /// Minimum over component pairs of the closest boundary-sample distance;
    /// None for a single component.
    pub min_pairwise_separation: Option<f64>,
}

/// 4-connected flood fill of the occupancy, components sorted by area
/// descending with ties broken by the smallest row-major cell index.
pub fn components(d: &Domain) -> Result<ComponentReport> {
    let w = d.occupancy.width();
    let h = d.occupancy.height();
    if d.occupancy.count_ones() == 0 {
        return Err(Error::EmptySet);
    }
    let mut label = vec![u32::MAX; w * h];
    let mut sizes: Vec<(usize, usize)> = Vec::new(); // (cells, first cell index)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut next = 0u32;
    for j0 in 0..h {
        for i0 in 0..w {
            if !d.occupancy.get(i0, j0) || label[j0 * w + i0] != u32::MAX {
                continue;
            }
            let id = next;
            next += 1;
            let mut cells = 0usize;
            stack.push((i0, j0));
            label[j0 * w + i0] = id;
            while let Some((i, j)) = stack.pop() {
                cells += 1;
                if i > 0 && d.occupancy.get(i - 1, j) && label[j * w + i - 1] == u32::MAX {
                    label[j * w + i - 1] = id;
                    stack.push((i - 1, j));
                }
                if i + 1 < w && d.occupancy.get(i + 1, j) && label[j * w + i + 1] == u32::MAX {
                    label[j * w + i + 1] = id;
                    stack.push((i + 1, j));
                }
                if j > 0 && d.occupancy.get(i, j - 1) && label[(j - 1) * w + i] == u32::MAX {
                    label[(j - 1) * w + i] = id;
                    stack.push((i, j - 1));
                }
                if j + 1 < h && d.occupancy.get(i, j + 1) && label[(j + 1) * w + i] == u32::MAX {
                    label[(j + 1) * w + i] = id;
                    stack.push((i, j + 1));
                }
            }
            sizes.push((cells, j0 * w + i0));
        }
    }
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by_key(|&k| (usize::MAX - sizes[k].0, sizes[k].1));

    let mut comps = Vec::with_capacity(order.len());
    for &k in &order {
        let mut occ = Bitmap::new(w, h);
        for j in 0..h {
            for i in 0..w {
                if label[j * w + i] == k as u32 {
                    occ.set(i, j, true);
                }
            }
        }
        let comp = Domain::from_parts(
            format!("{}#{}", d.label, comps.len()),
            d.bbox,
            d.resolution,
            occ,
        )?;
        comps.push(comp);
    }
    let areas: Vec<f64> = comps.iter().map(|c| c.area()).collect();

    let min_sep = if comps.len() >= 2 {
        // One pooled index over all component boundary samples, tagged by
        // component, then the nearest foreign sample per sample.
        let mut pooled = PointSet::new(2);
        let mut tags: Vec<u32> = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            for s in 0..c.boundary.len() {
                let (x, y) = c.boundary.xy(s);
                pooled.push2(x, y);
                tags.push(ci as u32);
            }
        }
        let idx = GridIndex::build(&pooled).expect("nonempty pooled boundary");
        let diag = ((d.bbox[1][0] - d.bbox[0][0]).powi(2) + (d.bbox[1][1] - d.bbox[0][1]).powi(2))
            .sqrt();
        let mut best = f64::INFINITY;
        for s in 0..pooled.len() {
            let (x, y) = pooled.xy(s);
            // Expand the search radius until a foreign sample is seen; any
            // foreign sample within the queried radius yields the exact
            // local minimum.
            let mut radius = d.resolution * 2.0;
            loop {
                let hits = idx.within(x, y, radius, &pooled);
                let mut found = f64::INFINITY;
                for hid in hits {
                    if tags[hid as usize] != tags[s] {
                        let (hx, hy) = pooled.xy(hid as usize);
                        let dd = ((hx - x) * (hx - x) + (hy - y) * (hy - y)).sqrt();
                        found = found.min(dd);
                    }
                }
                if found.is_finite() {
                    best = best.min(found);
                    break;
                }
                // Nothing foreign within `radius`: this sample cannot beat
                // the current minimum once radius reaches it.
                if radius >= best || radius > 2.0 * diag {
                    break;
                }
                radius *= 2.0;
            }
        }
        Some(best)
    } else {
        None
    };

    Ok(ComponentReport {
        n: comps.len(),
        components: comps,
        areas,
        min_pairwise_separation: min_sep,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountBoundCheck {
    pub n: usize,
    pub bound: f64,
    pub area: f64,
    pub r0: f64,
    pub pass: bool,
}

/// Component count bound for a domain certified flat at (eps, r0) with eps
/// below 20^-N: n <= 20^N / omega_N * area / r0^N.
pub fn check_count_bound(d: &Domain, r0: f64) -> Result<CountBoundCheck> {
    if r0 <= 0.0 {
        return Err(Error::InvalidParameter("r0 must be positive".into()));
    }
    let report = components(d)?;
    let (omega2, _) = unit_ball_volume(2)?;
    let area = d.area();
    let bound = 400.0 / omega2 * area / (r0 * r0);
    Ok(CountBoundCheck { n: report.n, bound, area, r0, pass: (report.n as f64) <= bound })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparationBoundCheck {
    pub n: usize,
    pub min_separation: Option<f64>,
    pub bound: f64,
    pub tolerance: f64,
    /// Fewer than two components: nothing to separate.
    pub vacuous: bool,
    pub pass: bool,
}

/// Pairwise separation bound for a certified multi-component domain:
/// distinct components stay more than r0/70 apart.
pub fn check_separation_bound(d: &Domain, r0: f64) -> Result<SeparationBoundCheck> {
    if r0 <= 0.0 {
        return Err(Error::InvalidParameter("r0 must be positive".into()));
    }
    let report = components(d)?;
    let bound = r0 / 70.0;
    let tolerance = d.resolution * std::f64::consts::SQRT_2;
    match report.min_pairwise_separation {
        None => Ok(SeparationBoundCheck {
            n: report.n,
            min_separation: None,
            bound,
            tolerance,
            vacuous: true,
            pass: true,
        }),
        Some(sep) => Ok(SeparationBoundCheck {
            n: report.n,
            min_separation: Some(sep),
            bound,
            tolerance,
            vacuous: false,
            pass: sep > bound - tolerance,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{rasterize, union_of, DomainSpec};

    fn two_disks(gap_centers: f64, res: f64) -> Domain {
        let bbox = [[-1.5, -1.5], [gap_centers + 1.5, 1.5]];
        let a = rasterize(&DomainSpec::Ball { center: [0.0, 0.0], radius: 1.0 }, res, bbox).unwrap();
        let b = rasterize(
            &DomainSpec::Ball { center: [gap_centers, 0.0], radius: 1.0 },
            res,
            bbox,
        )
        .unwrap();
        union_of(&[&a, &b], "two disks").unwrap()
    }

    #[test]
    fn single_ball_is_one_component() {
        let d = rasterize(
            &DomainSpec::Ball { center: [0.0, 0.0], radius: 1.0 },
            0.01,
            [[-1.2, -1.2], [1.2, 1.2]],
        )
        .unwrap();
        let r = components(&d).unwrap();
        assert_eq!(r.n, 1);
        assert!(r.min_pairwise_separation.is_none());
        assert_eq!(r.areas.len(), 1);
    }

    #[test]
    fn two_disks_split_with_expected_separation() {
        let d = two_disks(5.0, 0.01);
        let r = components(&d).unwrap();
        assert_eq!(r.n, 2);
        let sep = r.min_pairwise_separation.unwrap();
        assert!((sep - 3.0).abs() <= 0.05, "separation {sep}");
        // Masks partition the occupancy exactly.
        let total: f64 = r.areas.iter().sum();
        assert_eq!(total, d.area());
        let mut xor = d.occupancy.clone();
        for c in &r.components {
            assert_eq!(xor.xor_count(&c.occupancy) + c.occupancy.count_ones(), xor.count_ones() + 0usize.max(0));
            xor = {
                let mut t = xor.clone();
                for j in 0..t.height() {
                    for i in 0..t.width() {
                        if c.occupancy.get(i, j) {
                            t.set(i, j, false);
                        }
                    }
                }
                t
            };
        }
        assert_eq!(xor.count_ones(), 0, "components must cover the occupancy");
    }

    #[test]
    fn slit_disk_stays_connected() {
        let d = rasterize(
            &DomainSpec::DiskWithSlit { width: 0.05, depth: 1.0 },
            0.01,
            [[-1.2, -1.2], [1.2, 1.2]],
        )
        .unwrap();
        // Flood-fill oracle: the slit does not cross the disk.
        let r = components(&d).unwrap();
        assert_eq!(r.n, 1);
    }

    #[test]
    fn count_bound_two_disks() {
        let d = two_disks(5.0, 0.01);
        let check = check_count_bound(&d, 0.5).unwrap();
        assert_eq!(check.n, 2);
        // 400/pi * (2 pi / 0.25) = 3200.
        assert!((check.bound - 400.0 / std::f64::consts::PI * (d.area() / 0.25)).abs() < 1e-9);
        assert!(check.bound > 3000.0 && check.bound < 3400.0, "bound {}", check.bound);
        assert!(check.pass);
    }

    #[test]
    fn separation_bound_and_vacuous_case() {
        let d = two_disks(5.0, 0.01);
        let check = check_separation_bound(&d, 0.5).unwrap();
        assert!(!check.vacuous);
        assert!(check.pass);
        assert!(check.min_separation.unwrap() > 0.5 / 70.0);

        let single = rasterize(
            &DomainSpec::Ball { center: [0.0, 0.0], radius: 1.0 },
            0.01,
            [[-1.2, -1.2], [1.2, 1.2]],
        )
        .unwrap();
        let check = check_separation_bound(&single, 0.5).unwrap();
        assert!(check.vacuous);
        assert!(check.pass);
        assert!(check.min_separation.is_none());
    }

    #[test]
    fn component_boundaries_are_recomputed() {
        let d = two_disks(5.0, 0.02);
        let r = components(&d).unwrap();
        for c in &r.components {
            // Every component boundary sample is a sample of the parent too.
            for s in 0..c.boundary.len() {
                let (x, y) = c.boundary.xy(s);
                let dist = crate::geometry::dist_point_set(&[x, y], &d.boundary).unwrap();
                assert_eq!(dist, 0.0, "stray component boundary sample at ({x},{y})");
            }
        }
    }
}
