use std::fmt::Write;

use hypmut::packing::{FaceClass, GeneralizedCircle, PackedCircle};
use hypmut::CuspRect;

/// Rectangle height in user units.
pub const HEIGHT: f64 = 500.0;

const STROKE: f64 = 0.003 * HEIGHT;

fn class(face: FaceClass) -> &'static str {
    match face {
        FaceClass::White => "white-face",
        FaceClass::Shaded => "shaded-face",
        FaceClass::Horoball => "horoball",
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Clips the line `normal . p = offset` to `[0, w] x [0, 1]`, returning its
/// endpoints in rectangle coordinates.
fn clip_line(normal: (f64, f64), offset: f64, w: f64) -> Option<((f64, f64), (f64, f64))> {
    let p0 = (normal.0 * offset, normal.1 * offset);
    let d = (-normal.1, normal.0);
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, dir, min, max) in [(p0.0, d.0, 0.0, w), (p0.1, d.1, 0.0, 1.0)] {
        if dir.abs() < 1e-15 {
            if p < min - 1e-12 || p > max + 1e-12 {
                return None;
            }
            continue;
        }
        let (a, b) = ((min - p) / dir, (max - p) / dir);
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    }
    (lo <= hi).then_some(((p0.0 + lo * d.0, p0.1 + lo * d.1), (p0.0 + hi * d.0, p0.1 + hi * d.1)))
}

fn element(out: &mut String, c: &PackedCircle<f64>, w: f64) {
    // Screen space is y-down with the roof at the top.
    let sx = |x: f64| x * HEIGHT;
    let sy = |y: f64| (1.0 - y) * HEIGHT;
    match c.circle {
        GeneralizedCircle::Circle { center, radius } => {
            let _ = writeln!(
                out,
                r#"  <circle id="{}" class="{}" cx="{}" cy="{}" r="{}"/>"#,
                c.name,
                class(c.face),
                num(sx(center.x)),
                num(sy(center.y)),
                num(radius * HEIGHT)
            );
        }
        GeneralizedCircle::Line { normal, offset } => {
            if let Some(((x1, y1), (x2, y2))) = clip_line((normal.x, normal.y), offset, w) {
                let _ = writeln!(
                    out,
                    r#"  <line id="{}" class="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    c.name,
                    class(c.face),
                    num(sx(x1)),
                    num(sy(y1)),
                    num(sx(x2)),
                    num(sy(y2))
                );
            }
        }
    }
}

/// SVG 1.1 picture of a solved rectangle, one element per generalized circle.
pub fn render(rect: &CuspRect) -> String {
    let w = rect.ell_w;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        num(w * HEIGHT),
        num(HEIGHT)
    );
    let _ = writeln!(
        out,
        "  <style>circle, line {{ fill: none; stroke-width: {}; }} .white-face {{ stroke: #222; }} .shaded-face {{ stroke: #888; }} .horoball {{ stroke: #c33; }}</style>",
        num(STROKE)
    );
    for c in &rect.circles {
        element(&mut out, c, w);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(250.0), "250");
        assert_eq!(num(-0.00001), "0");
    }

    #[test]
    fn clipping() {
        let ((x1, y1), (x2, y2)) = clip_line((0.0, 1.0), 0.0, 2.0).unwrap();
        assert_eq!((y1, y2), (0.0, 0.0));
        assert_eq!((x1.min(x2), x1.max(x2)), (0.0, 2.0));
        let ((x1, _), (x2, _)) = clip_line((-1.0, 0.0), -1.5, 2.0).unwrap();
        assert_eq!((x1, x2), (1.5, 1.5));
        assert!(clip_line((0.0, 1.0), 3.0, 2.0).is_none());
    }
}
