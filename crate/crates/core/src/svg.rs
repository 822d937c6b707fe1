//! SVG rendering. One unit of length is 1000 user units and the y axis points
//! up, so the square `[0, 1/2]^2` is a 500 by 500 box with the origin at the
//! lower left. Rendering only reads exact data through `to_f64`.

use std::fmt::Write;

use crate::census::Analysis;
use crate::gaps::RotationOrbit;
use crate::geometry::Point;
use crate::orbit::{BilliardOrbit, LineFamily};

const SCALE: f64 = 1000.0;
const MARGIN: f64 = 20.0;
const SIDE: f64 = 500.0;

const PALETTE: [&str; 16] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
];

/// Minimal SVG document builder with a fixed decimal precision.
struct Doc {
    body: String,
    width: f64,
    height: f64,
    precision: usize,
}

impl Doc {
    fn new(width: f64, height: f64, precision: usize) -> Doc {
        Doc {
            body: String::new(),
            width,
            height,
            precision,
        }
    }

    fn num(&self, v: f64) -> String {
        format!("{:.*}", self.precision, v)
    }

    /// Plot coordinates of `(x, y)` in a panel whose lower left corner sits at
    /// `(left, bottom)` in SVG space.
    fn at(&self, left: f64, bottom: f64, x: f64, y: f64) -> String {
        format!(
            "{},{}",
            self.num(left + SCALE * x),
            self.num(bottom - SCALE * y)
        )
    }

    fn square(&mut self, left: f64, bottom: f64) {
        let (x, y, s) = (self.num(left), self.num(bottom - SIDE), self.num(SIDE));
        writeln!(self.body, r#"<rect x="{x}" y="{y}" width="{s}" height="{s}" fill="none" stroke="black" stroke-width="2"/>"#).unwrap();
    }

    fn polyline(&mut self, left: f64, bottom: f64, pts: &[(f64, f64)], stroke: &str, width: f64) {
        let p: Vec<String> = pts
            .iter()
            .map(|&(x, y)| self.at(left, bottom, x, y))
            .collect();
        writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
            p.join(" ")
        )
        .unwrap();
    }

    fn polygon(&mut self, left: f64, bottom: f64, pts: &[(f64, f64)], fill: &str) {
        let p: Vec<String> = pts
            .iter()
            .map(|&(x, y)| self.at(left, bottom, x, y))
            .collect();
        writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
            p.join(" ")
        )
        .unwrap();
    }

    fn text(&mut self, x: f64, y: f64, size: f64, content: &str) {
        let escaped = content
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let (x, y) = (self.num(x), self.num(y));
        writeln!(
            self.body,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="{size}">{escaped}</text>"#
        )
        .unwrap();
    }

    fn finish(self) -> String {
        let (w, h) = (self.num(self.width), self.num(self.height));
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn pt(p: &Point) -> (f64, f64) {
    p.to_f64()
}

fn panel_doc(panels: usize, precision: usize) -> Doc {
    Doc::new(
        MARGIN + panels as f64 * (SIDE + MARGIN),
        SIDE + 2.0 * MARGIN + 30.0,
        precision,
    )
}

fn panel_origin(i: usize) -> (f64, f64) {
    (MARGIN + i as f64 * (SIDE + MARGIN), MARGIN + SIDE)
}

/// The truncated orbit inside the square.
pub fn orbit_svg(orbit: &BilliardOrbit, precision: usize) -> String {
    let mut doc = panel_doc(1, precision);
    let (l, b) = panel_origin(0);
    doc.square(l, b);
    let mut pts = vec![pt(&orbit.start())];
    pts.extend(orbit.segments.iter().map(|s| pt(&s.end)));
    doc.polyline(l, b, &pts, "#c03030", 1.5);
    doc.text(
        l,
        b + 25.0,
        16.0,
        &format!("alpha = {}, M = {}", orbit.alpha, orbit.m),
    );
    doc.finish()
}

/// Faces of the subdivision, filled by area class when `color_by_area` is set.
pub fn subdivision_svg(a: &Analysis, color_by_area: bool, precision: usize) -> String {
    let mut doc = panel_doc(1, precision);
    let (l, b) = panel_origin(0);
    for f in &a.census.faces {
        let pts: Vec<(f64, f64)> = f.corners.iter().map(pt).collect();
        let fill = if color_by_area {
            PALETTE[f.area_class % PALETTE.len()]
        } else {
            "none"
        };
        doc.polygon(l, b, &pts, fill);
    }
    doc.square(l, b);
    doc.text(
        l,
        b + 25.0,
        16.0,
        &format!(
            "alpha = {}, M = {}: {} areas, {} shapes",
            a.alpha, a.m, a.census.distinct_areas, a.census.distinct_shapes
        ),
    );
    doc.finish()
}

/// Three panels: the chords of the positive family, of the negative family,
/// and the orbit they carve out.
pub fn line_construction_svg(
    family: &LineFamily,
    orbit: &BilliardOrbit,
    precision: usize,
) -> String {
    let mut doc = panel_doc(3, precision);
    for (panel, positive) in [(0, true), (1, false)] {
        let (l, b) = panel_origin(panel);
        doc.square(l, b);
        for k in family.indices() {
            let line = if positive {
                family.positive(k)
            } else {
                family.negative(k)
            };
            if let Some((p, q)) = line.chord() {
                doc.polyline(
                    l,
                    b,
                    &[pt(&p), pt(&q)],
                    if positive { "#4e79a7" } else { "#59a14f" },
                    1.0,
                );
            }
        }
    }
    let (l, b) = panel_origin(2);
    doc.square(l, b);
    for s in &orbit.segments {
        doc.polyline(l, b, &[pt(&s.start), pt(&s.end)], "#c03030", 1.5);
    }
    doc.text(
        MARGIN,
        b + 25.0,
        16.0,
        &format!("alpha = {}, N = {}", family.alpha, family.n),
    );
    doc.finish()
}

/// Points of a rotation orbit as labelled ticks on a vertical copy of its
/// interval, drawn 1000 units tall.
pub fn intercepts_svg(orbit: &RotationOrbit, precision: usize) -> String {
    let (start, length) = orbit.interval();
    let (s, len) = (start.to_f64(), length.to_f64());
    let height = 1000.0;
    let mut doc = Doc::new(300.0, height + 2.0 * MARGIN, precision);
    let y_of = |v: f64| MARGIN + height * (1.0 - (v - s) / len);
    let axis = 100.0;
    let (top, bottom) = (doc.num(y_of(s + len)), doc.num(y_of(s)));
    writeln!(doc.body, r#"<line x1="{axis}" y1="{top}" x2="{axis}" y2="{bottom}" stroke="black" stroke-width="2"/>"#).unwrap();
    doc.text(axis + 40.0, y_of(s) + 5.0, 14.0, &start.to_string());
    doc.text(
        axis + 40.0,
        y_of(s + len) + 5.0,
        14.0,
        &(start + length).to_string(),
    );
    for (p, k) in orbit.points().iter().zip(orbit.indices()) {
        let y = y_of(p.to_f64());
        let yy = doc.num(y);
        writeln!(
            doc.body,
            r##"<line x1="{}" y1="{yy}" x2="{}" y2="{yy}" stroke="#c03030" stroke-width="1.5"/>"##,
            axis - 15.0,
            axis + 15.0
        )
        .unwrap();
        doc.text(axis - 70.0, y + 5.0, 12.0, &format!("y_{k}"));
    }
    doc.finish()
}

/// A ball bouncing between the ends of `[0, 1/2]`: the zigzag path and the
/// landing points on the floor.
pub fn bouncing_svg(landings: &RotationOrbit, precision: usize) -> String {
    let n = landings.len();
    let mut doc = panel_doc(1, precision);
    let (l, b) = panel_origin(0);
    let floor = b;
    let step = SIDE / n.max(1) as f64;
    let path: Vec<String> = landings
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            format!(
                "{},{}",
                doc.num(l + SCALE * p.to_f64()),
                doc.num(floor - SIDE + step * i as f64)
            )
        })
        .collect();
    writeln!(
        doc.body,
        r##"<polyline points="{}" fill="none" stroke="#999999" stroke-width="1"/>"##,
        path.join(" ")
    )
    .unwrap();
    let (x0, x1, fy) = (doc.num(l), doc.num(l + SIDE), doc.num(floor));
    writeln!(
        doc.body,
        r#"<line x1="{x0}" y1="{fy}" x2="{x1}" y2="{fy}" stroke="black" stroke-width="2"/>"#
    )
    .unwrap();
    for p in landings.points() {
        let x = doc.num(l + SCALE * p.to_f64());
        writeln!(
            doc.body,
            r##"<circle cx="{x}" cy="{fy}" r="4" fill="#c03030"/>"##
        )
        .unwrap();
    }
    doc.text(
        l,
        b + 25.0,
        16.0,
        &format!("alpha = {}, n = {}", landings.alpha(), n.saturating_sub(1)),
    );
    doc.finish()
}
