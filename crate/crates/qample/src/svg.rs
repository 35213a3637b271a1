//! Deterministic SVG rendering of rank-2 cone charts: fixed 800x800
//! canvas, coordinate axes, one filled path per chamber, and exact
//! rational slope labels on the boundary rays.

use crate::positivity::ConeChart;
use num::BigRational;
use std::fmt::Write as _;

const SIZE: f64 = 800.0;
const CENTER: f64 = 400.0;
const RADIUS: f64 = 350.0;

/// Chart coordinates -> canvas coordinates (y grows upward in the chart,
/// downward on the canvas), projected onto the radius-350 circle.
fn project(x: i64, y: i64) -> (f64, f64) {
    let len = ((x * x + y * y) as f64).sqrt();
    (CENTER + RADIUS * x as f64 / len, CENTER - RADIUS * y as f64 / len)
}

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

/// Exact slope of a primitive integer ray.
fn slope_label(x: i64, y: i64) -> String {
    if x == 0 {
        return "slope inf".to_string();
    }
    let s = BigRational::new(y.into(), x.into());
    format!("slope {s}")
}

fn chamber_fill(verdict: bool) -> &'static str {
    if verdict {
        "#7fbf7f"
    } else {
        "#bf7f7f"
    }
}

/// Render the chart as a complete SVG document.  Output depends only on
/// the chart contents, so identical charts give byte-identical bytes.
pub fn emit_chart(chart: &ConeChart) -> String {
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        SIZE as i64
    );
    let _ = writeln!(s, r#"<rect width="{0}" height="{0}" fill="white"/>"#, SIZE as i64);
    let _ = writeln!(
        s,
        r#"<title>{} : level {} : {:?} : resolution {}</title>"#,
        chart.geometry, chart.q, chart.predicate, chart.resolution
    );

    // One filled path per chamber, fanning from the origin through every
    // scanned ray of the run.
    let rv = &chart.ray_verdicts;
    let k = rv.len();
    for sector in &chart.sectors {
        let start = rv.iter().position(|(r, _)| *r == sector.start).unwrap_or(0);
        let mut d = format!("M {} {}", fmt2(CENTER), fmt2(CENTER));
        for t in 0..sector.rays {
            let (ray, _) = rv[(start + t) % k];
            let (px, py) = project(ray.0, ray.1);
            let _ = write!(d, " L {} {}", fmt2(px), fmt2(py));
        }
        d.push_str(" Z");
        let _ = writeln!(
            s,
            r#"<path d="{d}" fill="{}" fill-opacity="0.55" stroke="none"/>"#,
            chamber_fill(sector.verdict)
        );
    }

    // Axes.
    let c = fmt2(CENTER);
    let _ = writeln!(
        s,
        r##"<line x1="0" y1="{c}" x2="{0}" y2="{c}" stroke="#444" stroke-width="1"/>"##,
        SIZE as i64
    );
    let _ = writeln!(
        s,
        r##"<line x1="{c}" y1="0" x2="{c}" y2="{0}" stroke="#444" stroke-width="1"/>"##,
        SIZE as i64
    );

    // Boundary rays with exact slope labels.
    let mut boundary = chart.boundary_rays.clone();
    boundary.sort();
    boundary.dedup();
    for (x, y) in boundary {
        let (px, py) = project(x, y);
        let _ = writeln!(
            s,
            r##"<line x1="{c}" y1="{c}" x2="{}" y2="{}" stroke="#000" stroke-width="2"/>"##,
            fmt2(px),
            fmt2(py)
        );
        // Label just past the ray tip, nudged toward the canvas interior.
        let lx = CENTER + (px - CENTER) * 1.04 - 28.0;
        let ly = CENTER + (py - CENTER) * 1.04;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="14">{} ({x},{y})</text>"#,
            fmt2(lx),
            fmt2(ly),
            slope_label(x, y)
        );
    }

    let _ = writeln!(
        s,
        r#"<text x="10" y="24" font-family="monospace" font-size="16">{} chambers, q = {}</text>"#,
        chart.geometry, chart.q
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Engine;
    use crate::geometry::Geometry;
    use crate::positivity::{cone_scan_rank2, ScanPredicate};

    #[test]
    fn slope_labels_are_exact() {
        assert_eq!(slope_label(0, 1), "slope inf");
        assert_eq!(slope_label(2, -3), "slope -3/2");
        assert_eq!(slope_label(-1, 1), "slope -1");
        assert_eq!(slope_label(3, 0), "slope 0");
    }

    #[test]
    fn chart_render_is_deterministic_and_well_formed() {
        let g = Geometry::builtin("p1xp1").unwrap();
        let e = Engine::new();
        let chart = cone_scan_rank2(&g, &e, 0, 6, ScanPredicate::QNef).unwrap();
        let a = emit_chart(&chart);
        let chart2 = cone_scan_rank2(&g, &e, 0, 6, ScanPredicate::QNef).unwrap();
        let b = emit_chart(&chart2);
        assert_eq!(a, b);
        assert!(a.starts_with("<?xml"));
        assert!(a.ends_with("</svg>\n"));
        assert!(a.contains(r#"width="800""#));
        assert_eq!(a.matches("<path").count(), chart.sectors.len());
        assert!(a.contains("slope 0 (1,0)"));
        assert!(a.contains("slope inf (0,1)"));
    }
}
