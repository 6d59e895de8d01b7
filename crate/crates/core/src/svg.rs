//! SVG drawing of a fan in the plane. Floating point is used only for
//! drawing coordinates.

use std::fmt::Write;

use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::mtf::MTFFan;
use crate::polyhedra::Cone;

const SIZE: f64 = 400.0;
const HALF: f64 = SIZE / 2.0;
const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

fn to_f64(v: &[num::BigInt]) -> (f64, f64) {
    (
        v[0].to_f64().unwrap_or(0.0),
        v[1].to_f64().unwrap_or(0.0),
    )
}

fn screen((x, y): (f64, f64)) -> (f64, f64) {
    (HALF + x * (HALF - 20.0), HALF - y * (HALF - 20.0))
}

/// Clips a convex polygon to the half-plane `a·x ≥ 0`.
fn clip(poly: &[(f64, f64)], a: (f64, f64)) -> Vec<(f64, f64)> {
    let side = |p: (f64, f64)| a.0 * p.0 + a.1 * p.1;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp >= 0.0) != (sq >= 0.0) {
            let t = sp / (sp - sq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

fn region(cone: &Cone) -> Vec<(f64, f64)> {
    let mut poly = vec![(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];
    for a in cone.inequalities() {
        poly = clip(&poly, to_f64(a));
    }
    poly
}

/// Point where the ray from the origin in direction `d` leaves the box.
fn to_box(d: (f64, f64)) -> (f64, f64) {
    let m = d.0.abs().max(d.1.abs());
    (d.0 / m, d.1 / m)
}

/// Draws the maximal cones as shaded regions labelled by cone id, and the
/// one-dimensional cones as segments.
pub fn render_svg(fan: &MTFFan) -> Result<String> {
    if fan.n() != 2 {
        return Err(Error::NotPlanar(fan.n()));
    }
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    for (k, &i) in fan.fan().maximal().iter().enumerate() {
        let poly = region(fan.cone(i));
        if poly.len() < 3 {
            continue;
        }
        let pts: Vec<String> = poly
            .iter()
            .map(|&p| {
                let (x, y) = screen(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"  <polygon class="cone" data-cone="{i}" points="{}" fill="{}" fill-opacity="0.6" stroke="none"/>"#,
            pts.join(" "),
            PALETTE[k % PALETTE.len()]
        );
        let c = poly.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (x, y) = screen((c.0 / poly.len() as f64, c.1 / poly.len() as f64));
        let _ = writeln!(
            s,
            r#"  <text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">{i}</text>"#
        );
    }
    for i in fan.fan().of_dim(1) {
        let cone = fan.cone(i);
        let mut dirs: Vec<(f64, f64)> = cone.rays().iter().map(|r| to_f64(r)).collect();
        for l in cone.lineality() {
            let (x, y) = to_f64(l);
            dirs.push((x, y));
            dirs.push((-x, -y));
        }
        for d in dirs {
            let (x0, y0) = screen((0.0, 0.0));
            let (x1, y1) = screen(to_box(d));
            let _ = writeln!(
                s,
                r#"  <line class="ray" data-cone="{i}" x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="black" stroke-width="2"/>"#
            );
        }
    }
    if fan.fan().cones().iter().any(|c| c.dim() == 0) {
        let (x, y) = screen((0.0, 0.0));
        let _ = writeln!(s, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mtf::build_mtf_fan;
    use crate::presets;
    use crate::quiver::Module;

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn a2_drawing() {
        let s = render_svg(&build_mtf_fan(&presets::a2_p1()).unwrap()).unwrap();
        assert_eq!(count(&s, r#"class="ray""#), 3);
        assert_eq!(count(&s, r#"class="cone""#), 3);
        assert!(s.starts_with("<?xml"));
    }

    #[test]
    fn nakayama_drawing() {
        let s = render_svg(&build_mtf_fan(&presets::nakayama2_121()).unwrap()).unwrap();
        assert_eq!(count(&s, r#"class="ray""#), 4);
        assert_eq!(count(&s, r#"class="cone""#), 4);
    }

    #[test]
    fn zero_module_drawing() {
        let s = render_svg(&build_mtf_fan(&Module::zero(presets::a2_algebra())).unwrap()).unwrap();
        assert_eq!(count(&s, r#"class="ray""#), 0);
        assert_eq!(count(&s, r#"class="cone""#), 1);
    }

    #[test]
    fn rejects_non_planar() {
        let fan = build_mtf_fan(&presets::square_lambda()).unwrap();
        assert!(matches!(render_svg(&fan), Err(Error::NotPlanar(4))));
    }

    #[test]
    fn clipping() {
        let half = clip(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)], (1.0, 0.0));
        let area: f64 = (0..half.len())
            .map(|i| {
                let (p, q) = (half[i], half[(i + 1) % half.len()]);
                p.0 * q.1 - q.0 * p.1
            })
            .sum::<f64>()
            / 2.0;
        assert!((area - 2.0).abs() < 1e-9);
    }
}
