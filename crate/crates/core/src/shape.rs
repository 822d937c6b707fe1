//! Congruence classes of polygons.
//!
//! A convex or simple polygon with counterclockwise corners `p_0, ..., p_{n-1}`
//! is described, up to translation and rotation, by the cyclic sequence of
//! `(|e_i|^2, e_{i-1} . e_i, e_{i-1} x e_i)` where `e_i = p_{i+1} - p_i`.
//! Every entry is a polynomial in the coordinates, so the sequence is exact.
//! The signature is the lexicographically smallest rotation of that sequence
//! for the polygon and for its mirror image.

use std::cmp::Ordering;

use serde::Serialize;

use crate::geometry::Point;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize)]
pub struct ShapeSignature {
    entries: Vec<[Scalar; 3]>,
}

impl ShapeSignature {
    /// Signature of a counterclockwise polygon without collinear corners.
    pub fn of(corners: &[Point]) -> ShapeSignature {
        let (direct, mirror) = sequences(corners);
        let best = [&direct, &mirror]
            .into_iter()
            .flat_map(|s| (0..s.len()).map(move |r| (s, r)))
            .min_by(|&(a, ra), &(b, rb)| cmp_rotations(a, ra, b, rb))
            .map(|(s, r)| s[r..].iter().chain(&s[..r]).cloned().collect())
            .unwrap_or_default();
        ShapeSignature { entries: best }
    }

    pub fn vertex_count(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[[Scalar; 3]] {
        &self.entries
    }
}

/// The sequence of the polygon and of its mirror image. Reflecting and
/// reversing keeps every length, dot and cross product; only the pairing of
/// edge lengths with corners shifts.
fn sequences(c: &[Point]) -> (Vec<[Scalar; 3]>, Vec<[Scalar; 3]>) {
    let n = c.len();
    let edges: Vec<Point> = (0..n).map(|i| c[(i + 1) % n].minus(&c[i])).collect();
    let norms: Vec<Scalar> = edges.iter().map(Point::norm_sq).collect();
    // turns[i] is the corner between edges i-1 and i.
    let turns: Vec<(Scalar, Scalar)> = (0..n)
        .map(|i| {
            let prev = &edges[(i + n - 1) % n];
            (prev.dot(&edges[i]), prev.cross(&edges[i]))
        })
        .collect();
    let direct = (0..n)
        .map(|i| [norms[i].clone(), turns[i].0.clone(), turns[i].1.clone()])
        .collect();
    let mirror = (0..n)
        .rev()
        .map(|j| {
            let t = &turns[(j + 1) % n];
            [norms[j].clone(), t.0.clone(), t.1.clone()]
        })
        .collect();
    (direct, mirror)
}

fn cmp_entry(a: &[Scalar; 3], b: &[Scalar; 3]) -> Ordering {
    a[0].compare(&b[0])
        .then_with(|| a[1].compare(&b[1]))
        .then_with(|| a[2].compare(&b[2]))
}

fn cmp_rotations(a: &[[Scalar; 3]], ra: usize, b: &[[Scalar; 3]], rb: usize) -> Ordering {
    let n = a.len();
    if n != b.len() {
        return n.cmp(&b.len());
    }
    (0..n)
        .map(|i| cmp_entry(&a[(ra + i) % n], &b[(rb + i) % n]))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl PartialEq for ShapeSignature {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ShapeSignature {}

impl PartialOrd for ShapeSignature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ShapeSignature {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_rotations(&self.entries, 0, &other.entries, 0)
    }
}
