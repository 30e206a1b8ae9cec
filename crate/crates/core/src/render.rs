//! SVG pictures of a semigroup: dilations of the body, the cone, members
//! and gaps, and optionally the escape lines, apex and Apéry points.
//!
//! Output depends only on the inputs; coordinates are printed with two
//! decimals.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::geom::{ConvexBody, LatticePoint, Line, Point, Rational};
use crate::semigroup::{BodySemigroup, RaySide};
use crate::structure::{scaled_box, PolygonStructure};

/// Lattice points are drawn only when the picture holds at most this many.
pub const MAX_DRAWN_POINTS: u64 = 40_000;

#[derive(Clone, Debug, Default)]
pub struct Decorations<'a> {
    pub structure: Option<&'a PolygonStructure>,
    pub apery: &'a [LatticePoint],
}

struct Frame {
    width: f64,
    height: f64,
    unit: f64,
    margin: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        self.margin + x * self.unit
    }

    fn y(&self, y: f64) -> f64 {
        self.margin + (self.height - y) * self.unit
    }

    fn point(&self, p: &Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        (self.x(x), self.y(y))
    }
}

fn float(q: &Rational) -> f64 {
    q.to_f64().expect("display coordinates are finite")
}

/// Segment of `a x + b y = c` inside `[0, w] x [0, h]`, if any.
fn clip_line(line: &Line, w: f64, h: f64) -> Option<((f64, f64), (f64, f64))> {
    let (a, b, c) = (float(&line.a), float(&line.b), float(&line.c));
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b != 0.0 {
        for x in [0.0, w] {
            let y = (c - a * x) / b;
            if (0.0..=h).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [0.0, h] {
            let x = (c - b * y) / a;
            if (0.0..=w).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    Some((*hits.first()?, *hits.last()?))
}

pub fn render_svg(s: &BodySemigroup, k_max: u64, decorations: &Decorations) -> String {
    let k_max = k_max.max(1);
    let (bx, by) = scaled_box(s.body(), k_max + 1);
    let (bx, by) = (bx.max(1), by.max(1));
    let span = bx.max(by) as f64;
    let unit = (720.0 / span).clamp(2.0, 60.0);
    let f = Frame {
        width: bx as f64,
        height: by as f64,
        unit,
        margin: 20.0,
    };
    let mut out = String::new();
    let (w, h) = (f.width * unit + 2.0 * f.margin, f.height * unit + 2.0 * f.margin);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{w:.2}" height="{h:.2}" fill="#ffffff"/>"##);

    // axes
    let _ = writeln!(
        out,
        r##"<g stroke="#999999" stroke-width="1"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"##,
        f.x(0.0),
        f.y(0.0),
        f.x(f.width),
        f.y(0.0),
        f.x(0.0),
        f.y(0.0),
        f.x(0.0),
        f.y(f.height)
    );

    // dilations
    let _ = writeln!(out, r##"<g fill="#4a90d9" fill-opacity="0.18" stroke="#2c5f99" stroke-width="1">"##);
    for k in 1..=k_max {
        match s.body() {
            ConvexBody::Polygon(p) => {
                let pts: Vec<String> = p
                    .vertices()
                    .iter()
                    .map(|v| {
                        let (x, y) = f.point(&v.scale_int(k));
                        format!("{x:.2},{y:.2}")
                    })
                    .collect();
                let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
            }
            ConvexBody::Circle(c) => {
                let (x, y) = f.point(&c.center().scale_int(k));
                let r = float(c.radius()) * k as f64 * unit;
                let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}"/>"#);
            }
        }
    }
    let _ = writeln!(out, "</g>");

    // rays
    let _ = writeln!(out, r##"<g stroke="#222222" stroke-width="1.5">"##);
    for side in RaySide::BOTH {
        let d = s.tau(side);
        let t = match (d.dx(), d.dy()) {
            (0, dy) => f.height / dy as f64,
            (dx, 0) => f.width / dx as f64,
            (dx, dy) => (f.width / dx as f64).min(f.height / dy as f64),
        };
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            f.x(0.0),
            f.y(0.0),
            f.x(t * d.dx() as f64),
            f.y(t * d.dy() as f64)
        );
    }
    let _ = writeln!(out, "</g>");

    // lattice points
    if (bx + 1) * (by + 1) <= MAX_DRAWN_POINTS {
        let r = (unit / 8.0).clamp(0.8, 4.0);
        let _ = writeln!(out, r##"<g stroke-width="0.8">"##);
        for y in 0..=by {
            for x in 0..=bx {
                let p = LatticePoint::new(x, y);
                if !s.in_cone(&p) {
                    continue;
                }
                let (cx, cy) = (f.x(x as f64), f.y(y as f64));
                if s.is_member(&p) {
                    let _ = writeln!(out, r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" fill="#000000"/>"##);
                } else {
                    let _ = writeln!(
                        out,
                        r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" fill="none" stroke="#d0021b"/>"##
                    );
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }

    if let Some(st) = decorations.structure {
        let _ = writeln!(out, r##"<g stroke="#7b3fa0" stroke-width="1" stroke-dasharray="4 3">"##);
        for side in RaySide::BOTH {
            if let Some(((x1, y1), (x2, y2))) = clip_line(&st.side(side).nu, f.width, f.height) {
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                    f.x(x1),
                    f.y(y1),
                    f.x(x2),
                    f.y(y2)
                );
            }
        }
        let _ = writeln!(out, "</g>");
        let r = (unit / 5.0).clamp(1.5, 6.0);
        let _ = writeln!(out, r##"<g fill="#f5a623" fill-opacity="0.7">"##);
        for p in st.upper.upsilon.iter().chain(&st.lower.upsilon) {
            let (cx, cy) = (f.x(p.x as f64), f.y(p.y as f64));
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                cx - r,
                cy - r,
                2.0 * r,
                2.0 * r
            );
        }
        let _ = writeln!(out, "</g>");
        let (qx, qy) = f.point(&st.apex.q);
        let _ = writeln!(
            out,
            r##"<circle cx="{qx:.2}" cy="{qy:.2}" r="{:.2}" fill="#7b3fa0"/>"##,
            r
        );
    }

    if !decorations.apery.is_empty() {
        let r = (unit / 4.0).clamp(2.0, 8.0);
        let _ = writeln!(out, r##"<g fill="none" stroke="#1a7f37" stroke-width="1.5">"##);
        for p in decorations.apery {
            let (cx, cy) = (f.x(p.x as f64), f.y(p.y as f64));
            let _ = writeln!(out, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};

    #[test]
    fn deterministic_plain_picture() {
        let s = BodySemigroup::new(ConvexBody::circle(Point::new(rat(7, 4), int(1)), rat(1, 4)).unwrap()).unwrap();
        let a = render_svg(&s, 8, &Decorations::default());
        let b = render_svg(&s, 8, &Decorations::default());
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.matches("<circle cx").count() > 8);
    }

    #[test]
    fn decorated_polygon() {
        let body = ConvexBody::polygon(vec![Point::from_ints(4, 0), Point::from_ints(7, 3), Point::from_ints(10, 0)]);
        let s = BodySemigroup::new(body.unwrap()).unwrap();
        let st = PolygonStructure::build(&s).unwrap();
        let ap = [LatticePoint::new(13, 2)];
        let svg = render_svg(
            &s,
            4,
            &Decorations {
                structure: Some(&st),
                apery: &ap,
            },
        );
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("#1a7f37"));
    }

    #[test]
    fn line_clipping() {
        let l = Line::new(int(0), int(1), int(2)).unwrap();
        assert_eq!(clip_line(&l, 10.0, 5.0), Some(((0.0, 2.0), (10.0, 2.0))));
        let l = Line::new(int(0), int(1), int(7)).unwrap();
        assert_eq!(clip_line(&l, 10.0, 5.0), None);
    }
}
