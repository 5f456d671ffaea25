//! Deterministic SVG assembly for disk phase portraits.
//!
//! The closed unit disk maps to an 800x800 viewport with a 5% margin and
//! the v axis pointing up. All coordinates are written with two decimals,
//! which makes output byte-stable across runs for identical inputs.

use crate::dynamics::Classification;
use std::fmt::Write;

pub const VIEW: f64 = 800.0;
const MARGIN: f64 = 0.05;

fn px(u: f64) -> f64 {
    VIEW / 2.0 + u * VIEW * (0.5 - MARGIN)
}

fn py(v: f64) -> f64 {
    VIEW / 2.0 - v * VIEW * (0.5 - MARGIN)
}

pub struct SvgBuilder {
    body: String,
}

impl SvgBuilder {
    pub fn new() -> Self {
        let mut body = String::new();
        writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{v}" height="{v}" viewBox="0 0 {v} {v}">"#,
            v = VIEW as u32
        )
        .unwrap();
        writeln!(body, r#"<rect width="{v}" height="{v}" fill="white"/>"#, v = VIEW as u32)
            .unwrap();
        SvgBuilder { body }
    }

    pub fn boundary_circle(&mut self, singular_curve: bool) {
        let r = VIEW * (0.5 - MARGIN);
        if singular_curve {
            writeln!(
                self.body,
                r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#b03030" stroke-width="4" data-role="boundary-singular"/>"##,
                VIEW / 2.0,
                VIEW / 2.0,
                r
            )
            .unwrap();
        } else {
            writeln!(
                self.body,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="1.5" data-role="boundary"/>"#,
                VIEW / 2.0,
                VIEW / 2.0,
                r
            )
            .unwrap();
        }
    }

    pub fn trajectory(&mut self, points: &[[f64; 2]]) {
        if points.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, p) in points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{:.2} {:.2}", px(p[0]), py(p[1])).unwrap();
        }
        writeln!(
            self.body,
            r##"<path d="{d}" fill="none" stroke="#4a6fa5" stroke-width="0.8" data-role="trajectory"/>"##
        )
        .unwrap();
    }

    /// A small arrowhead at the polyline midpoint, oriented along the flow.
    pub fn midpoint_arrow(&mut self, points: &[[f64; 2]]) {
        if points.len() < 3 {
            return;
        }
        let mid = points.len() / 2;
        let a = points[mid - 1];
        let b = points[mid];
        let (x0, y0) = (px(a[0]), py(a[1]));
        let (x1, y1) = (px(b[0]), py(b[1]));
        let (dx, dy) = (x1 - x0, y1 - y0);
        let len = (dx * dx + dy * dy).sqrt();
        if len < 1e-6 {
            return;
        }
        let (ux, uy) = (dx / len, dy / len);
        let (nx, ny) = (-uy, ux);
        let s = 5.0;
        let tip = (x1 + ux * s, y1 + uy * s);
        let left = (x1 - ux * s * 0.6 + nx * s * 0.6, y1 - uy * s * 0.6 + ny * s * 0.6);
        let right = (x1 - ux * s * 0.6 - nx * s * 0.6, y1 - uy * s * 0.6 - ny * s * 0.6);
        writeln!(
            self.body,
            r##"<path d="M{:.2} {:.2}L{:.2} {:.2}L{:.2} {:.2}Z" fill="#4a6fa5" data-role="arrow"/>"##,
            tip.0, tip.1, left.0, left.1, right.0, right.1
        )
        .unwrap();
    }

    pub fn singular_glyph(&mut self, planar: [f64; 2], class: Classification) {
        let (x, y) = (px(planar[0]), py(planar[1]));
        let tag = class.as_str();
        match class {
            Classification::StableNode => writeln!(
                self.body,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="black" data-class="{tag}"/>"#
            )
            .unwrap(),
            Classification::UnstableNode => writeln!(
                self.body,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="white" stroke="black" stroke-width="1.8" data-class="{tag}"/>"#
            )
            .unwrap(),
            Classification::Saddle => writeln!(
                self.body,
                r#"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="black" stroke-width="2" data-class="{tag}"/>"#,
                x - 5.0, y - 5.0, x + 5.0, y + 5.0, x - 5.0, y + 5.0, x + 5.0, y - 5.0
            )
            .unwrap(),
            Classification::StableFocus => writeln!(
                self.body,
                r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="black" data-class="{tag}"/>"#,
                x - 5.0, y - 5.0
            )
            .unwrap(),
            Classification::UnstableFocus => writeln!(
                self.body,
                r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="white" stroke="black" stroke-width="1.8" data-class="{tag}"/>"#,
                x - 5.0, y - 5.0
            )
            .unwrap(),
            Classification::CenterOrFocus => {
                writeln!(
                    self.body,
                    r#"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="none" stroke="black" stroke-width="1.8" data-class="{tag}"/>"#
                )
                .unwrap();
                writeln!(
                    self.body,
                    r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.8" fill="black" data-class="{tag}"/>"#
                )
                .unwrap();
            }
            Classification::Degenerate => writeln!(
                self.body,
                r##"<path d="M{:.2} {:.2}L{:.2} {:.2}L{:.2} {:.2}L{:.2} {:.2}Z" fill="#808080" data-class="{tag}"/>"##,
                x, y - 6.0, x + 6.0, y, x, y + 6.0, x - 6.0, y
            )
            .unwrap(),
        }
    }

    pub fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_map_into_viewport() {
        assert_eq!(px(0.0), 400.0);
        assert_eq!(py(0.0), 400.0);
        assert_eq!(px(1.0), 760.0);
        assert_eq!(py(1.0), 40.0);
    }

    #[test]
    fn builder_produces_well_formed_svg() {
        let mut b = SvgBuilder::new();
        b.boundary_circle(false);
        b.trajectory(&[[0.0, 0.0], [0.5, 0.5], [0.6, 0.4]]);
        b.midpoint_arrow(&[[0.0, 0.0], [0.5, 0.5], [0.6, 0.4]]);
        b.singular_glyph([0.0, 0.0], Classification::UnstableNode);
        let svg = b.finish();
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("data-role=\"boundary\""));
        assert!(svg.contains("data-class=\"unstable-node\""));
    }
}
