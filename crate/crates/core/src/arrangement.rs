//! Planar subdivision of `[0, 1/2]^2` by an orbit's segments.
//!
//! All pairwise intersections are computed exactly and coincident points are
//! merged by sorting, so three or more segments through one point need no
//! special treatment. Faces are traced by turning as far clockwise as
//! possible at every vertex, which keeps each face on the left; the outer
//! face is the single cycle with negative signed area.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::orbit::BilliardOrbit;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize)]
pub struct Face {
    /// Vertex ids of the boundary cycle, counterclockwise, including
    /// vertices where the boundary runs straight on.
    pub cycle: Vec<usize>,
    /// Polygon corners, counterclockwise, with straight-through vertices removed.
    pub corners: Vec<Point>,
    pub area: Scalar,
    /// Number of polygon sides lying on the boundary of the square.
    pub boundary_side_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanarSubdivision {
    pub vertices: Vec<Point>,
    /// Undirected edges as `(u, v)` with `u < v`.
    pub edges: Vec<(usize, usize)>,
    /// Bounded faces; the outer face is not stored.
    pub faces: Vec<Face>,
    /// Pairs of computed points that were merged as equal within tolerance.
    /// Always empty for exact input.
    pub merge_events: Vec<(Point, Point)>,
}

impl PlanarSubdivision {
    /// `V - E + F`, counting the outer face.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64 + 1
    }

    pub fn total_area(&self) -> Scalar {
        self.faces
            .iter()
            .fold(Scalar::zero(), |acc, f| &acc + &f.area)
    }
}

/// Subdivision induced by the orbit's segments and the boundary of the square.
pub fn build_subdivision(orbit: &BilliardOrbit) -> Result<PlanarSubdivision> {
    let segs: Vec<(Point, Point)> = orbit
        .segments
        .iter()
        .map(|s| (s.start.clone(), s.end.clone()))
        .collect();
    subdivide(&segs)
}

/// Subdivision of `[0, 1/2]^2` by arbitrary segments inside it. The four
/// sides of the square are added automatically.
pub fn subdivide(segments: &[(Point, Point)]) -> Result<PlanarSubdivision> {
    let zero = Scalar::zero;
    let half = Scalar::half;
    let corners = [
        Point::new(zero(), zero()),
        Point::new(half(), zero()),
        Point::new(half(), half()),
        Point::new(zero(), half()),
    ];
    let mut input: Vec<(Point, Point)> = segments.to_vec();
    for i in 0..4 {
        input.push((corners[i].clone(), corners[(i + 1) % 4].clone()));
    }
    let segs = normalize(input)?;
    let mut merge_events = Vec::new();
    let on_seg = intersect_all(&segs);

    // Global vertex table.
    let mut all: Vec<Point> = on_seg.iter().flatten().cloned().collect();
    all.sort_by(Point::lex_cmp);
    let mut vertices: Vec<Point> = Vec::with_capacity(all.len() / 2);
    for p in all {
        match vertices.last() {
            Some(last) if last.lex_cmp(&p) == Ordering::Equal => {
                if last.to_f64() != p.to_f64() && !(last.x.is_exact() && last.y.is_exact()) {
                    merge_events.push((last.clone(), p));
                }
            }
            _ => vertices.push(p),
        }
    }
    if !merge_events.is_empty() {
        log::warn!("merged {} nearly coincident vertices", merge_events.len());
    }
    let id_of = |p: &Point| {
        vertices
            .binary_search_by(|v| v.lex_cmp(p))
            .expect("vertex was registered")
    };

    let mut edges = Vec::new();
    for pts in &on_seg {
        for w in pts.windows(2) {
            let (a, b) = (id_of(&w[0]), id_of(&w[1]));
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let faces = trace_faces(&vertices, &edges)?;
    let sub = PlanarSubdivision {
        vertices,
        edges,
        faces,
        merge_events,
    };
    check_invariants(&sub)?;
    Ok(sub)
}

struct Seg {
    p: Point,
    q: Point,
    /// `Some((slope, intercept))`, or `None` for a vertical segment.
    line: Option<(Scalar, Scalar)>,
    slope_class: usize,
    bbox: [f64; 4],
}

/// Orders endpoints, drops degenerate segments, and merges collinear overlaps.
fn normalize(input: Vec<(Point, Point)>) -> Result<Vec<Seg>> {
    let mut raw: Vec<(Point, Point, Option<(Scalar, Scalar)>)> = Vec::with_capacity(input.len());
    for (a, b) in input {
        let (p, q) = match a.lex_cmp(&b) {
            Ordering::Less => (a, b),
            Ordering::Greater => (b, a),
            Ordering::Equal => continue,
        };
        let line = if p.x == q.x {
            None
        } else {
            let slope = &(&q.y - &p.y) / &(&q.x - &p.x);
            let intercept = &p.y - &(&slope * &p.x);
            Some((slope, intercept))
        };
        raw.push((p, q, line));
    }
    let key_cmp = |a: &Option<(Scalar, Scalar)>,
                   b: &Option<(Scalar, Scalar)>,
                   pa: &Point,
                   pb: &Point| match (a, b) {
        (None, None) => pa.x.compare(&pb.x),
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some((s1, c1)), Some((s2, c2))) => s1.compare(s2).then_with(|| c1.compare(c2)),
    };
    raw.sort_by(|a, b| key_cmp(&a.2, &b.2, &a.0, &b.0).then_with(|| a.0.lex_cmp(&b.0)));
    let mut merged: Vec<(Point, Point, Option<(Scalar, Scalar)>)> = Vec::with_capacity(raw.len());
    for (p, q, line) in raw {
        if let Some(last) = merged.last_mut() {
            if key_cmp(&last.2, &line, &last.0, &p) == Ordering::Equal
                && p.lex_cmp(&last.1) != Ordering::Greater
            {
                if q.lex_cmp(&last.1) == Ordering::Greater {
                    last.1 = q;
                }
                continue;
            }
        }
        merged.push((p, q, line));
    }

    let mut slopes: Vec<Scalar> = Vec::new();
    let mut out = Vec::with_capacity(merged.len());
    for (p, q, line) in merged {
        let slope_class = match &line {
            None => usize::MAX,
            Some((s, _)) => match slopes.iter().position(|t| t == s) {
                Some(i) => i,
                None => {
                    slopes.push(s.clone());
                    slopes.len() - 1
                }
            },
        };
        let (px, py) = p.to_f64();
        let (qx, qy) = q.to_f64();
        let m = margin(&p).max(margin(&q));
        let bbox = [
            px.min(qx) - m,
            px.max(qx) + m,
            py.min(qy) - m,
            py.max(qy) + m,
        ];
        out.push(Seg {
            p,
            q,
            line,
            slope_class,
            bbox,
        });
    }
    Ok(out)
}

fn margin(p: &Point) -> f64 {
    1e-9 + 10.0
        * p.x
            .tolerance()
            .unwrap_or(0.0)
            .max(p.y.tolerance().unwrap_or(0.0))
}

fn within(v: &Scalar, lo: &Scalar, hi: &Scalar) -> bool {
    v.compare(lo) != Ordering::Less && v.compare(hi) != Ordering::Greater
}

/// For every segment, the sorted distinct points on it that are endpoints or
/// crossings with other segments.
fn intersect_all(segs: &[Seg]) -> Vec<Vec<Point>> {
    let mut on_seg: Vec<Vec<Point>> = segs
        .iter()
        .map(|s| vec![s.p.clone(), s.q.clone()])
        .collect();
    // Inverse slope differences, cached per pair of slope classes.
    let mut inv_cache: std::collections::HashMap<(usize, usize), Scalar> =
        std::collections::HashMap::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (a, b) = (&segs[i], &segs[j]);
            if a.slope_class == b.slope_class {
                continue;
            }
            if a.bbox[1] < b.bbox[0]
                || b.bbox[1] < a.bbox[0]
                || a.bbox[3] < b.bbox[2]
                || b.bbox[3] < a.bbox[2]
            {
                continue;
            }
            let hit = match (&a.line, &b.line) {
                (Some((s1, c1)), Some((s2, c2))) => {
                    let inv = inv_cache
                        .entry((a.slope_class, b.slope_class))
                        .or_insert_with(|| (s1 - s2).recip());
                    let x = &(c2 - c1) * &*inv;
                    if within(&x, &a.p.x, &a.q.x) && within(&x, &b.p.x, &b.q.x) {
                        let y = &(s1 * &x) + c1;
                        Some(Point::new(x, y))
                    } else {
                        None
                    }
                }
                (None, Some((s, c))) | (Some((s, c)), None) => {
                    let (v, o) = if a.line.is_none() { (a, b) } else { (b, a) };
                    let x = v.p.x.clone();
                    if within(&x, &o.p.x, &o.q.x) {
                        let y = &(s * &x) + c;
                        within(&y, &v.p.y, &v.q.y).then(|| Point::new(x, y))
                    } else {
                        None
                    }
                }
                (None, None) => None,
            };
            if let Some(pt) = hit {
                on_seg[i].push(pt.clone());
                on_seg[j].push(pt);
            }
        }
    }
    for pts in &mut on_seg {
        pts.sort_by(Point::lex_cmp);
        pts.dedup_by(|a, b| a.lex_cmp(b) == Ordering::Equal);
    }
    on_seg
}

/// Upper half-plane (including the positive x axis) before lower.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |d: &Point| {
        let sy = d.y.signum();
        !(sy == Ordering::Greater || (sy == Ordering::Equal && d.x.signum() == Ordering::Greater))
    };
    half(a).cmp(&half(b)).then_with(|| b.cross(a).signum())
}

fn trace_faces(vertices: &[Point], edges: &[(usize, usize)]) -> Result<Vec<Face>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for (u, nb) in adj.iter_mut().enumerate() {
        let dirs: Vec<(usize, Point)> = nb
            .iter()
            .map(|&w| (w, vertices[w].minus(&vertices[u])))
            .collect();
        let mut dirs = dirs;
        dirs.sort_by(|a, b| angle_cmp(&a.1, &b.1));
        *nb = dirs.into_iter().map(|(w, _)| w).collect();
    }
    let mut visited: Vec<Vec<bool>> = adj.iter().map(|nb| vec![false; nb.len()]).collect();
    let mut faces = Vec::new();
    let mut outer = 0;
    for start in 0..vertices.len() {
        for si in 0..adj[start].len() {
            if visited[start][si] {
                continue;
            }
            let mut cycle = Vec::new();
            let (mut u, mut i) = (start, si);
            while !visited[u][i] {
                visited[u][i] = true;
                cycle.push(u);
                let v = adj[u][i];
                let back = adj[v]
                    .iter()
                    .position(|&w| w == u)
                    .expect("adjacency is symmetric");
                let len = adj[v].len();
                i = (back + len - 1) % len;
                u = v;
            }
            let pts: Vec<Point> = cycle.iter().map(|&k| vertices[k].clone()).collect();
            let doubled = shoelace2(&pts);
            match doubled.signum() {
                Ordering::Less => outer += 1,
                Ordering::Equal => return Err(Error::DegenerateFace),
                Ordering::Greater => {
                    let corners = simplify(&pts);
                    let boundary_side_count = count_boundary_sides(&corners);
                    faces.push(Face {
                        cycle,
                        corners,
                        area: &doubled * &Scalar::half(),
                        boundary_side_count,
                    });
                }
            }
        }
    }
    if outer != 1 {
        return Err(Error::TheoremViolation(format!(
            "expected one outer face, found {outer}"
        )));
    }
    Ok(faces)
}

/// Twice the signed area of a closed polygon.
fn shoelace2(pts: &[Point]) -> Scalar {
    let o = &pts[0];
    let mut acc = Scalar::zero();
    for w in 1..pts.len().saturating_sub(1) {
        acc = &acc + &pts[w].minus(o).cross(&pts[w + 1].minus(o));
    }
    acc
}

/// Exact shoelace area of a counterclockwise polygon.
pub fn face_area(polygon: &[Point]) -> Result<Scalar> {
    let a = &shoelace2(polygon) * &Scalar::half();
    match a.signum() {
        Ordering::Greater => Ok(a),
        Ordering::Equal => Err(Error::DegenerateFace),
        Ordering::Less => Err(Error::Domain("polygon is clockwise".into())),
    }
}

fn simplify(pts: &[Point]) -> Vec<Point> {
    let n = pts.len();
    (0..n)
        .filter(|&i| {
            let prev = &pts[(i + n - 1) % n];
            let next = &pts[(i + 1) % n];
            !pts[i].minus(prev).cross(&next.minus(&pts[i])).is_zero()
        })
        .map(|i| pts[i].clone())
        .collect()
}

fn count_boundary_sides(corners: &[Point]) -> usize {
    let zero = Scalar::zero();
    let half = Scalar::half();
    let on_wall = |a: &Point, b: &Point| {
        (a.x == zero && b.x == zero)
            || (a.x == half && b.x == half)
            || (a.y == zero && b.y == zero)
            || (a.y == half && b.y == half)
    };
    let n = corners.len();
    (0..n)
        .filter(|&i| on_wall(&corners[i], &corners[(i + 1) % n]))
        .count()
}

fn check_invariants(sub: &PlanarSubdivision) -> Result<()> {
    if sub.euler_characteristic() != 2 {
        return Err(Error::TheoremViolation(format!(
            "Euler characteristic is {} (V = {}, E = {}, F = {})",
            sub.euler_characteristic(),
            sub.vertices.len(),
            sub.edges.len(),
            sub.faces.len() + 1
        )));
    }
    let total = sub.total_area();
    let quarter = Scalar::ratio(1, 4);
    let ok = match total.tolerance() {
        None => total == quarter,
        Some(tol) => (total.to_f64() - 0.25).abs() <= 10.0 * tol,
    };
    if !ok {
        return Err(Error::TheoremViolation(format!(
            "face areas sum to {total}, not 1/4"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{fold_orbit, TruncationSpec};

    fn pt(x: Scalar, y: Scalar) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn triangle_area() {
        let tri = [
            pt(Scalar::zero(), Scalar::zero()),
            pt(Scalar::one(), Scalar::zero()),
            pt(Scalar::zero(), Scalar::one()),
        ];
        assert_eq!(face_area(&tri).unwrap(), Scalar::half());
        let line = [
            pt(Scalar::zero(), Scalar::zero()),
            pt(Scalar::one(), Scalar::one()),
            pt(Scalar::int(2), Scalar::int(2)),
        ];
        assert_eq!(face_area(&line).unwrap_err(), Error::DegenerateFace);
    }

    #[test]
    fn rhombus_area() {
        // Vertical diagonal d, sides of slope +-alpha: area d^2 / (2 alpha);
        // cutting along the diagonal leaves triangles of area d^2 / (4 alpha).
        let a = Scalar::sqrt_int(3) - Scalar::one();
        let d = Scalar::ratio(1, 10);
        let w = &d / &(&a * &Scalar::int(2));
        let mid = &d * &Scalar::half();
        let bottom = pt(Scalar::zero(), Scalar::zero());
        let right = pt(w.clone(), mid.clone());
        let top = pt(Scalar::zero(), d.clone());
        let left = pt(-w, mid);
        let dd = &d * &d;
        let rhombus = [bottom.clone(), right.clone(), top.clone(), left];
        assert_eq!(face_area(&rhombus).unwrap(), &dd / &(&a * &Scalar::int(2)));
        assert_eq!(
            face_area(&[bottom, right, top]).unwrap(),
            &dd / &(&a * &Scalar::int(4))
        );
    }

    #[test]
    fn empty_square() {
        let sub = subdivide(&[]).unwrap();
        assert_eq!(sub.faces.len(), 1);
        assert_eq!(sub.faces[0].area, Scalar::ratio(1, 4));
        assert_eq!(sub.faces[0].boundary_side_count, 4);
    }

    #[test]
    fn single_chord_splits_square() {
        let a = Scalar::sqrt_int(3) - Scalar::one();
        let orbit = fold_orbit(&TruncationSpec::abscissa(a.clone(), Scalar::half())).unwrap();
        let sub = build_subdivision(&orbit).unwrap();
        assert_eq!(sub.faces.len(), 2);
        let mut areas: Vec<Scalar> = sub.faces.iter().map(|f| f.area.clone()).collect();
        areas.sort_by(Scalar::compare);
        // Lower triangle has legs 1/2 and alpha/2.
        assert_eq!(areas[0], &a / &Scalar::int(8));
    }

    #[test]
    fn concurrent_lines_merge() {
        // Both diagonals plus the midlines all pass through (1/4, 1/4).
        let h = Scalar::half;
        let q = Scalar::ratio(1, 4);
        let z = Scalar::zero;
        let segs = vec![
            (pt(z(), z()), pt(h(), h())),
            (pt(z(), h()), pt(h(), z())),
            (pt(q.clone(), z()), pt(q.clone(), h())),
            (pt(z(), q.clone()), pt(h(), q.clone())),
            (pt(z(), z()), pt(Scalar::ratio(1, 4), Scalar::ratio(1, 4))),
        ];
        let sub = subdivide(&segs).unwrap();
        assert_eq!(sub.faces.len(), 8);
        assert!(sub.faces.iter().all(|f| f.area == Scalar::ratio(1, 32)));
        let centre = sub.vertices.iter().filter(|v| v.x == q && v.y == q).count();
        assert_eq!(centre, 1);
    }

    #[test]
    fn sharp_instance_structure() {
        let a = Scalar::sqrt_int(10) / Scalar::int(7);
        let orbit = fold_orbit(&TruncationSpec::squares(a, 11)).unwrap();
        let sub = build_subdivision(&orbit).unwrap();
        assert_eq!(sub.faces.len(), 70);
        assert_eq!(sub.total_area(), Scalar::ratio(1, 4));
        // Each interior edge is used by two faces, each boundary edge by one.
        let mut uses = std::collections::HashMap::new();
        for f in &sub.faces {
            let n = f.cycle.len();
            for i in 0..n {
                let (u, v) = (f.cycle[i], f.cycle[(i + 1) % n]);
                *uses.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
        }
        let half = Scalar::half();
        for &(u, v) in &sub.edges {
            let (p, q) = (&sub.vertices[u], &sub.vertices[v]);
            let boundary = (p.x.is_zero() && q.x.is_zero())
                || (p.y.is_zero() && q.y.is_zero())
                || (p.x == half && q.x == half)
                || (p.y == half && q.y == half);
            assert_eq!(uses[&(u, v)], if boundary { 1 } else { 2 });
        }
    }

    #[test]
    fn periodic_orbit_dedupes_segments() {
        let alpha = Scalar::ratio(3, 5);
        let once = build_subdivision(
            &fold_orbit(&TruncationSpec::abscissa(alpha.clone(), Scalar::int(5))).unwrap(),
        )
        .unwrap();
        let twice = build_subdivision(
            &fold_orbit(&TruncationSpec::abscissa(alpha, Scalar::int(10))).unwrap(),
        )
        .unwrap();
        assert_eq!(once.faces.len(), twice.faces.len());
        assert_eq!(once.edges.len(), twice.edges.len());
    }
}
