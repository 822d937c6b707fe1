//! Brute-force reference implementations used by the integration tests.
//!
//! The face extractor here shares nothing with the library's arrangement
//! code beyond exact scalars: intersections come from a parametric all-pairs
//! pass, and faces are assembled from vertical slabs glued with union-find.

#![allow(dead_code)]

use std::cmp::Ordering;

use billiard_polygons::geometry::Point;
use billiard_polygons::Scalar;

pub fn sq(p: &Point) -> (f64, f64) {
    p.to_f64()
}

fn pt(x: &Scalar, y: &Scalar) -> Point {
    Point::new(x.clone(), y.clone())
}

pub fn boundary() -> Vec<(Point, Point)> {
    let (z, h) = (Scalar::zero(), Scalar::half());
    vec![
        (pt(&z, &z), pt(&h, &z)),
        (pt(&h, &z), pt(&h, &h)),
        (pt(&z, &h), pt(&h, &h)),
        (pt(&z, &z), pt(&z, &h)),
    ]
}

pub struct OracleFaces {
    pub vertices: usize,
    pub edges: usize,
    /// Bounded faces.
    pub faces: usize,
    /// Face areas, ascending.
    pub areas: Vec<Scalar>,
    /// Edges as float segments, for rasterizing.
    pub edge_f64: Vec<((f64, f64), (f64, f64))>,
}

fn ordered(a: Point, b: Point) -> (Point, Point) {
    if a.lex_cmp(&b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    }
}

/// Faces of the subdivision of `[0, 1/2]^2` cut by `segments`.
pub fn brute_force(segments: &[(Point, Point)]) -> OracleFaces {
    let mut segs: Vec<(Point, Point)> = segments
        .iter()
        .cloned()
        .chain(boundary())
        .map(|(a, b)| ordered(a, b))
        .collect();
    segs.sort_by(|a, b| a.0.lex_cmp(&b.0).then_with(|| a.1.lex_cmp(&b.1)));
    segs.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);

    // Parameters along each segment where something meets it.
    let mut params: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(), Scalar::one()]; segs.len()];
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (p0, p1) = &segs[i];
            let (q0, q1) = &segs[j];
            let r = p1.minus(p0);
            let s = q1.minus(q0);
            let denom = r.cross(&s);
            let w = q0.minus(p0);
            if denom.is_zero() {
                assert!(
                    !w.cross(&r).is_zero() || disjoint_collinear(&segs[i], &segs[j]),
                    "overlapping collinear segments"
                );
                // Collinear pieces that only touch at an endpoint.
                for (k, other) in [(i, &segs[j]), (j, &segs[i])] {
                    let (a, b) = &segs[k];
                    for e in [&other.0, &other.1] {
                        if let Some(t) = param_on(a, b, e) {
                            params[k].push(t);
                        }
                    }
                }
                continue;
            }
            let t = &w.cross(&s) / &denom;
            let u = &w.cross(&r) / &denom;
            let unit = |v: &Scalar| *v >= Scalar::zero() && *v <= Scalar::one();
            if unit(&t) && unit(&u) {
                params[i].push(t);
                params[j].push(u);
            }
        }
    }

    let mut edges: Vec<(Point, Point)> = Vec::new();
    for (k, (a, b)) in segs.iter().enumerate() {
        let ps = &mut params[k];
        ps.sort_by(Scalar::compare);
        ps.dedup_by(|x, y| x == y);
        let d = b.minus(a);
        let points: Vec<Point> = ps
            .iter()
            .map(|t| pt(&(&a.x + &(t * &d.x)), &(&a.y + &(t * &d.y))))
            .collect();
        for w in points.windows(2) {
            edges.push((w[0].clone(), w[1].clone()));
        }
    }
    edges.sort_by(|a, b| a.0.lex_cmp(&b.0).then_with(|| a.1.lex_cmp(&b.1)));
    edges.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    let mut vertices: Vec<Point> = edges
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    vertices.sort_by(Point::lex_cmp);
    vertices.dedup_by(|a, b| a == b);

    let (faces, areas) = slab_faces(&vertices, &edges);
    OracleFaces {
        vertices: vertices.len(),
        edges: edges.len(),
        faces,
        areas,
        edge_f64: edges.iter().map(|(a, b)| (sq(a), sq(b))).collect(),
    }
}

fn disjoint_collinear(a: &(Point, Point), b: &(Point, Point)) -> bool {
    // Ordered endpoints: they overlap in more than a point unless one ends
    // where (or before) the other starts.
    a.1.lex_cmp(&b.0) != Ordering::Greater || b.1.lex_cmp(&a.0) != Ordering::Greater
}

fn param_on(a: &Point, b: &Point, e: &Point) -> Option<Scalar> {
    let d = b.minus(a);
    let w = e.minus(a);
    if !d.cross(&w).is_zero() {
        return None;
    }
    let t = &w.dot(&d) / &d.norm_sq();
    (t >= Scalar::zero() && t <= Scalar::one()).then_some(t)
}

fn y_at(e: &(Point, Point), x: &Scalar) -> Scalar {
    let (a, b) = e;
    &a.y + &(&(&(x - &a.x) * &(&b.y - &a.y)) / &(&b.x - &a.x))
}

struct Trap {
    left: (Scalar, Scalar),
    right: (Scalar, Scalar),
    area: Scalar,
}

/// Cuts the square into vertical slabs at every vertex abscissa. Inside a
/// slab no two edges cross, so consecutive edges bound trapezoids; a face is
/// a chain of trapezoids glued along shared vertical intervals.
fn slab_faces(vertices: &[Point], edges: &[(Point, Point)]) -> (usize, Vec<Scalar>) {
    let mut xs: Vec<Scalar> = vertices.iter().map(|p| p.x.clone()).collect();
    xs.sort_by(Scalar::compare);
    xs.dedup_by(|a, b| a == b);
    let slanted: Vec<&(Point, Point)> = edges.iter().filter(|(a, b)| a.x != b.x).collect();
    let two = Scalar::int(2);
    let mut slabs: Vec<Vec<Trap>> = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (&w[0], &w[1]);
        let mid = &(x0 + x1) / &two;
        let mut crossing: Vec<(&(Point, Point), Scalar)> = slanted
            .iter()
            .filter(|(a, b)| a.x <= *x0 && b.x >= *x1)
            .map(|e| (*e, y_at(e, &mid)))
            .collect();
        crossing.sort_by(|a, b| a.1.compare(&b.1));
        let traps = crossing
            .windows(2)
            .map(|p| {
                let (lo, hi) = (p[0].0, p[1].0);
                let left = (y_at(lo, x0), y_at(hi, x0));
                let right = (y_at(lo, x1), y_at(hi, x1));
                let area = &(x1 - x0) * &(&(&(&left.1 - &left.0) + &(&right.1 - &right.0)) / &two);
                Trap { left, right, area }
            })
            .collect();
        slabs.push(traps);
    }

    let offsets: Vec<usize> = slabs
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.len();
            Some(o)
        })
        .collect();
    let total: usize = slabs.iter().map(Vec::len).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for k in 0..slabs.len().saturating_sub(1) {
        for (i, a) in slabs[k].iter().enumerate() {
            for (j, b) in slabs[k + 1].iter().enumerate() {
                let lo = a.right.0.clone().max(b.left.0.clone());
                let hi = a.right.1.clone().min(b.left.1.clone());
                if lo < hi {
                    let (ri, rj) = (
                        find(&mut parent, offsets[k] + i),
                        find(&mut parent, offsets[k + 1] + j),
                    );
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut sums: std::collections::BTreeMap<usize, Scalar> = Default::default();
    for (k, slab) in slabs.iter().enumerate() {
        for (i, t) in slab.iter().enumerate() {
            let r = find(&mut parent, offsets[k] + i);
            let e = sums.entry(r).or_insert_with(Scalar::zero);
            *e = &*e + &t.area;
        }
    }
    let mut areas: Vec<Scalar> = sums.into_values().collect();
    areas.sort_by(Scalar::compare);
    (areas.len(), areas)
}

/// Connected regions of a `res x res` raster of `[0, 1/2]^2` after painting
/// every edge as a wall.
pub fn raster_faces(edges: &[((f64, f64), (f64, f64))], res: usize) -> usize {
    let h = 0.5 / res as f64;
    let mut wall = vec![false; res * res];
    let reach = h * std::f64::consts::FRAC_1_SQRT_2 * 1.01;
    for &((x0, y0), (x1, y1)) in edges {
        let lo_i = (((x0.min(x1) - reach) / h).floor().max(0.0)) as usize;
        let hi_i = ((((x0.max(x1) + reach) / h).ceil()) as usize).min(res);
        let lo_j = (((y0.min(y1) - reach) / h).floor().max(0.0)) as usize;
        let hi_j = ((((y0.max(y1) + reach) / h).ceil()) as usize).min(res);
        let (dx, dy) = (x1 - x0, y1 - y0);
        let len2 = dx * dx + dy * dy;
        for i in lo_i..hi_i {
            for j in lo_j..hi_j {
                let (cx, cy) = ((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
                let t = (((cx - x0) * dx + (cy - y0) * dy) / len2).clamp(0.0, 1.0);
                let (px, py) = (x0 + t * dx - cx, y0 + t * dy - cy);
                if px * px + py * py <= reach * reach {
                    wall[i * res + j] = true;
                }
            }
        }
    }
    let mut seen = wall.clone();
    let mut regions = 0;
    let mut stack = Vec::new();
    for start in 0..res * res {
        if seen[start] {
            continue;
        }
        regions += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(c) = stack.pop() {
            let (i, j) = (c / res, c % res);
            let mut visit = |n: usize| {
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            };
            if i > 0 {
                visit(c - res);
            }
            if i + 1 < res {
                visit(c + res);
            }
            if j > 0 {
                visit(c - 1);
            }
            if j + 1 < res {
                visit(c + 1);
            }
        }
    }
    regions
}

/// Continued-fraction convergents `p/q` of a positive exact value.
pub fn convergents(x: &Scalar, count: usize) -> Vec<(i64, i64)> {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut rest = x.clone();
    let mut out = Vec::new();
    for _ in 0..count {
        let a = i64::try_from(&rest.floor()).unwrap();
        let (p, q) = (a * p1 + p0, a * q1 + q0);
        out.push((p, q));
        (p0, q0, p1, q1) = (p1, q1, p, q);
        let frac = &rest - &Scalar::int(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    out
}

/// Exact gap lengths of `0, {alpha}, ..., {n alpha}` maintained incrementally:
/// an ordered list of points with a multiset of gaps.
pub struct GapTracker {
    points: Vec<Scalar>,
    gaps: Vec<(Scalar, usize)>,
}

impl GapTracker {
    /// Starts with the interval `[lo, hi]` as one gap.
    pub fn new(lo: Scalar, hi: Scalar) -> GapTracker {
        let g = &hi - &lo;
        GapTracker {
            points: vec![lo, hi],
            gaps: vec![(g, 1)],
        }
    }

    fn adjust(&mut self, g: Scalar, delta: isize) {
        if g.is_zero() {
            return;
        }
        match self.gaps.binary_search_by(|(x, _)| x.compare(&g)) {
            Ok(i) => {
                let c = self.gaps[i].1 as isize + delta;
                assert!(c >= 0);
                if c == 0 {
                    self.gaps.remove(i);
                } else {
                    self.gaps[i].1 = c as usize;
                }
            }
            Err(i) => {
                assert!(delta > 0, "removing an absent gap");
                self.gaps.insert(i, (g, delta as usize));
            }
        }
    }

    pub fn insert(&mut self, p: Scalar) {
        match self.points.binary_search_by(|x| x.compare(&p)) {
            Ok(_) => {}
            Err(i) => {
                let (lo, hi) = (self.points[i - 1].clone(), self.points[i].clone());
                self.adjust(&hi - &lo, -1);
                self.adjust(&p - &lo, 1);
                self.adjust(&hi - &p, 1);
                self.points.insert(i, p);
            }
        }
    }

    /// Distinct lengths, ascending.
    pub fn lengths(&self) -> Vec<Scalar> {
        self.gaps.iter().map(|(g, _)| g.clone()).collect()
    }
}
