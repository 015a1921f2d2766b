//! Deterministic SVG rendering of domains with curve and plane overlays:
//! occupancy as a filled region, boundary samples as dots, overlays styled
//! per kind.

use std::fmt::Write as _;

use crate::domains::Domain;
use crate::geometry::Hyperplane;
use crate::jones::Polyline;

pub enum Overlay {
    Curve(Polyline),
    Plane(Hyperplane),
}

const CURVE_COLORS: [&str; 4] = ["#d1495b", "#edae49", "#66a182", "#8d5a97"];

fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

/// Renders the domain plus overlays as a standalone SVG document. Byte
/// output is deterministic for fixed inputs.
pub fn render(d: &Domain, overlays: &[Overlay]) -> String {
    let [[x0, y0], [x1, y1]] = d.bbox;
    let (w, h) = (x1 - x0, y1 - y0);
    // SVG y grows downward; reflect world y within the bbox.
    let fy = |y: f64| y0 + (y1 - y);
    let geom = d.geometry();
    let res = d.resolution;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt(x0),
        fmt(y0),
        fmt(w),
        fmt(h)
    );
    let _ = writeln!(
        svg,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        fmt(x0),
        fmt(y0),
        fmt(w),
        fmt(h)
    );

    // Occupancy as one rect per row run.
    let _ = writeln!(svg, "<g fill=\"#aecbe8\" stroke=\"none\">");
    for j in 0..geom.height {
        let mut i = 0;
        while i < geom.width {
            if !d.occupancy.get(i, j) {
                i += 1;
                continue;
            }
            let start = i;
            while i < geom.width && d.occupancy.get(i, j) {
                i += 1;
            }
            let rx = x0 + start as f64 * res;
            let ry = fy(y0 + (j + 1) as f64 * res);
            let _ = writeln!(
                svg,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
                fmt(rx),
                fmt(ry),
                fmt((i - start) as f64 * res),
                fmt(res)
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    // Boundary samples as dots.
    let _ = writeln!(svg, "<g fill=\"#1f4e79\" stroke=\"none\">");
    for s in 0..d.boundary.len() {
        let (bx, by) = d.boundary.xy(s);
        let _ = writeln!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            fmt(bx),
            fmt(fy(by)),
            fmt(res * 0.35)
        );
    }
    let _ = writeln!(svg, "</g>");

    let mut curve_idx = 0usize;
    for overlay in overlays {
        match overlay {
            Overlay::Curve(poly) => {
                let color = CURVE_COLORS[curve_idx % CURVE_COLORS.len()];
                curve_idx += 1;
                let mut points = String::new();
                for p in poly.vertices() {
                    let (px, py) = p.xy();
                    let _ = write!(points, "{},{} ", fmt(px), fmt(fy(py)));
                }
                let _ = writeln!(
                    svg,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>",
                    points.trim_end(),
                    color,
                    fmt(res * 2.0)
                );
            }
            Overlay::Plane(plane) => {
                let (bx, by) = plane.base.xy();
                let (ux, uy) = (-plane.normal[1], plane.normal[0]);
                let reach = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
                let _ = writeln!(
                    svg,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#e8a33d\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\"/>",
                    fmt(bx - reach * ux),
                    fmt(fy(by - reach * uy)),
                    fmt(bx + reach * ux),
                    fmt(fy(by + reach * uy)),
                    fmt(res * 1.5),
                    fmt(res * 4.0),
                    fmt(res * 3.0)
                );
            }
        }
    }
    let _ = writeln!(svg, "</svg>");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{rasterize, DomainSpec};
    use crate::geometry::Point;

    #[test]
    fn svg_structure_and_determinism() {
        let d = rasterize(
            &DomainSpec::Ball { center: [0.0, 0.0], radius: 1.0 },
            0.05,
            [[-1.2, -1.2], [1.2, 1.2]],
        )
        .unwrap();
        let curve = Polyline::new(vec![
            Point::new2(-0.5, 0.0),
            Point::new2(0.0, 0.5),
            Point::new2(0.5, 0.0),
        ])
        .unwrap();
        let plane = Hyperplane::new(Point::new2(1.0, 0.0), vec![1.0, 0.0]).unwrap();
        let a = render(&d, &[Overlay::Curve(curve.clone()), Overlay::Plane(plane.clone())]);
        let b = render(&d, &[Overlay::Curve(curve), Overlay::Plane(plane)]);
        assert_eq!(a, b, "render must be deterministic");
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<polyline").count(), 1);
        assert_eq!(a.matches("<line").count(), 1);
        assert!(a.matches("<circle").count() > 50);
    }

    #[test]
    fn domain_only_svg_has_no_overlays() {
        let d = rasterize(
            &DomainSpec::Ball { center: [0.0, 0.0], radius: 1.0 },
            0.1,
            [[-1.2, -1.2], [1.2, 1.2]],
        )
        .unwrap();
        let svg = render(&d, &[]);
        assert!(!svg.contains("<polyline"));
        assert!(!svg.contains("<line"));
        assert!(svg.contains("<rect"));
    }
}
