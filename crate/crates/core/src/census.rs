//! Face classification, area and shape counts, and the theorem checks built
//! on them.
//!
//! Faces are typed by how many of their sides lie on the boundary of the
//! square. Their areas are then matched against the products of line
//! spacings `d_i` that the counting argument predicts:
//!
//! | type | shape | area |
//! |------|-------|------|
//! | 1 | parallelogram | `d_i d_j / 2a` |
//! | 2 | half rhombus | `d_i^2 / 4a` |
//! | 2 | irregular, at the orbit's end | `d_i d_j / 2a - d_i^2 / 4a` |
//! | 3 | corner polygon | `d_i^2 / 8a`, or one free area per corner |

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arrangement::{build_subdivision, PlanarSubdivision};
use crate::error::{Error, Result};
use crate::gaps::{gap_census, sort_dedup, GapSet};
use crate::geometry::Point;
use crate::orbit::{
    fold_orbit, gap_structure, intercept_orbit, intercepts_periodic, BilliardOrbit, BoundarySide,
    GapStructure, TruncationSpec,
};
use crate::scalar::Scalar;
use crate::shape::ShapeSignature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PolygonType {
    /// No side on the boundary of the square.
    Type1,
    /// Exactly one side on the boundary.
    Type2,
    /// Two or more sides on the boundary.
    Type3,
}

impl PolygonType {
    pub fn from_boundary_sides(count: usize) -> PolygonType {
        match count {
            0 => PolygonType::Type1,
            1 => PolygonType::Type2,
            _ => PolygonType::Type3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FaceRecord {
    pub corners: Vec<Point>,
    pub area: Scalar,
    pub polygon_type: PolygonType,
    pub signature: ShapeSignature,
    /// Index into [`Census::areas`].
    pub area_class: usize,
    /// Index into the sorted list of distinct signatures.
    pub shape_class: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub faces: Vec<FaceRecord>,
    /// Distinct areas, ascending.
    pub areas: Vec<Scalar>,
    /// Number of faces with each area.
    pub area_counts: Vec<usize>,
    pub distinct_areas: usize,
    pub distinct_shapes: usize,
}

impl Census {
    pub fn count_of(&self, t: PolygonType) -> usize {
        self.faces.iter().filter(|f| f.polygon_type == t).count()
    }
}

/// Types every face and counts distinct areas and shapes exactly.
pub fn classify(sub: &PlanarSubdivision) -> Census {
    let mut faces: Vec<FaceRecord> = sub
        .faces
        .iter()
        .map(|f| FaceRecord {
            corners: f.corners.clone(),
            area: f.area.clone(),
            polygon_type: PolygonType::from_boundary_sides(f.boundary_side_count),
            signature: ShapeSignature::of(&f.corners),
            area_class: 0,
            shape_class: 0,
        })
        .collect();

    let mut areas: Vec<Scalar> = faces.iter().map(|f| f.area.clone()).collect();
    sort_dedup(&mut areas);
    let mut area_counts = vec![0; areas.len()];
    for f in &mut faces {
        let i = areas
            .binary_search_by(|a| a.compare(&f.area))
            .expect("area is listed");
        f.area_class = i;
        area_counts[i] += 1;
    }

    let mut shapes: Vec<&ShapeSignature> = faces.iter().map(|f| &f.signature).collect();
    shapes.sort();
    shapes.dedup();
    let shapes: Vec<ShapeSignature> = shapes.into_iter().cloned().collect();
    for f in &mut faces {
        f.shape_class = shapes.binary_search(&f.signature).expect("shape is listed");
    }

    Census {
        distinct_areas: areas.len(),
        distinct_shapes: shapes.len(),
        faces,
        areas,
        area_counts,
    }
}

/// One of the predicted area expressions. Indices are 1-based into `D`
/// sorted from largest to smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FormulaSlot {
    /// `d_i d_j / 2a` with `i <= j`.
    Parallelogram(usize, usize),
    /// `d_i^2 / 4a`
    HalfRhombus(usize),
    /// `d_i d_j / 2a - d_i^2 / 4a`
    Irregular(usize, usize),
    /// `d_i^2 / 8a`
    Corner(usize),
    /// A corner face whose area is none of the `d_i^2 / 8a`. Numbered
    /// counterclockwise from `(1/2, 0)`; the start corner `(0, 0)` never
    /// holds one.
    FreeCorner(usize),
}

impl FormulaSlot {
    pub fn value(&self, d: &[Scalar], alpha: &Scalar) -> Scalar {
        let two_a = alpha * &Scalar::int(2);
        let four_a = alpha * &Scalar::int(4);
        let eight_a = alpha * &Scalar::int(8);
        let di = |i: usize| &d[i - 1];
        match *self {
            FormulaSlot::Parallelogram(i, j) => &(di(i) * di(j)) / &two_a,
            FormulaSlot::HalfRhombus(i) => &(di(i) * di(i)) / &four_a,
            FormulaSlot::Irregular(i, j) => {
                &(&(di(i) * di(j)) / &two_a) - &(&(di(i) * di(i)) / &four_a)
            }
            FormulaSlot::Corner(i) => &(di(i) * di(i)) / &eight_a,
            FormulaSlot::FreeCorner(_) => panic!("a free corner has no formula"),
        }
    }

    fn candidates(t: PolygonType, triangle: bool, at_end: bool, n: usize) -> Vec<FormulaSlot> {
        let mut out = Vec::new();
        match t {
            PolygonType::Type1 => {
                for i in 1..=n {
                    for j in i..=n {
                        out.push(FormulaSlot::Parallelogram(i, j));
                    }
                }
            }
            PolygonType::Type2 if triangle => out.extend((1..=n).map(FormulaSlot::HalfRhombus)),
            PolygonType::Type2 if at_end => {
                for i in 1..=n {
                    for j in 1..=n {
                        if i != j {
                            out.push(FormulaSlot::Irregular(i, j));
                        }
                    }
                }
            }
            PolygonType::Type2 => {}
            PolygonType::Type3 => out.extend((1..=n).map(FormulaSlot::Corner)),
        }
        out
    }
}

impl fmt::Display for FormulaSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaSlot::Parallelogram(i, j) => write!(f, "d{i}*d{j}/2a"),
            FormulaSlot::HalfRhombus(i) => write!(f, "d{i}^2/4a"),
            FormulaSlot::Irregular(i, j) => write!(f, "d{i}*d{j}/2a - d{i}^2/4a"),
            FormulaSlot::Corner(i) => write!(f, "d{i}^2/8a"),
            FormulaSlot::FreeCorner(k) => write!(f, "corner{k}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SlotClass {
    pub slot: FormulaSlot,
    pub area: Scalar,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaReport {
    /// Matching slots per face, in face order.
    pub matches: Vec<Vec<FormulaSlot>>,
    /// Occupied slots, in slot order, with the number of faces in each.
    /// A face matching several slots counts towards the first.
    pub classes: Vec<SlotClass>,
    /// Faces whose area matches more than one slot.
    pub ambiguous: Vec<usize>,
    pub unmatched: Vec<usize>,
    /// Faces of type 2 that are not triangles.
    pub irregular_faces: Vec<usize>,
}

/// Which corner of the square other than the origin is a corner of `face`.
fn corner_of(face: &[Point]) -> Option<usize> {
    let (h, z) = (Scalar::half(), Scalar::zero());
    let corners = [
        Point::new(h.clone(), z.clone()),
        Point::new(h.clone(), h.clone()),
        Point::new(z, h),
    ];
    corners.iter().position(|c| face.contains(c)).map(|k| k + 1)
}

/// Matches every face area against the slots allowed for its type, with
/// `d` sorted from largest to smallest and `alpha` the slope below 1.
pub fn match_area_formulas(
    census: &Census,
    d: &[Scalar],
    alpha: &Scalar,
    orbit_end: &Point,
) -> Result<FormulaReport> {
    let mut matches = Vec::with_capacity(census.faces.len());
    let mut ambiguous = Vec::new();
    let mut unmatched = Vec::new();
    let mut irregular_faces = Vec::new();
    let mut cache: std::collections::HashMap<FormulaSlot, Scalar> =
        std::collections::HashMap::new();
    for (i, face) in census.faces.iter().enumerate() {
        let triangle = face.corners.len() == 3;
        if face.polygon_type == PolygonType::Type2 && !triangle {
            irregular_faces.push(i);
        }
        let at_end = face.corners.iter().any(|c| c == orbit_end);
        let found: Vec<FormulaSlot> =
            FormulaSlot::candidates(face.polygon_type, triangle, at_end, d.len())
                .into_iter()
                .filter(|s| cache.entry(*s).or_insert_with(|| s.value(d, alpha)) == &face.area)
                .collect();
        let found = match (found.is_empty(), face.polygon_type) {
            (true, PolygonType::Type3) => corner_of(&face.corners)
                .map(FormulaSlot::FreeCorner)
                .into_iter()
                .collect(),
            _ => found,
        };
        match found.len() {
            0 => unmatched.push(i),
            1 => {}
            _ => ambiguous.push(i),
        }
        matches.push(found);
    }
    let mut classes: Vec<SlotClass> = Vec::new();
    for (i, m) in matches.iter().enumerate() {
        if let Some(slot) = m.first() {
            match classes.iter_mut().find(|c| c.slot == *slot) {
                Some(c) => c.count += 1,
                None => classes.push(SlotClass {
                    slot: *slot,
                    area: census.faces[i].area.clone(),
                    count: 1,
                }),
            }
        }
    }
    classes.sort_by_key(|c| c.slot);
    if !unmatched.is_empty() {
        let listing: Vec<String> = unmatched
            .iter()
            .map(|&i| {
                format!(
                    "face {i} ({:?}, {} corners, area {})",
                    census.faces[i].polygon_type,
                    census.faces[i].corners.len(),
                    census.faces[i].area
                )
            })
            .collect();
        return Err(Error::FormulaMismatch(listing.join("; ")));
    }
    Ok(FormulaReport {
        matches,
        classes,
        ambiguous,
        unmatched,
        irregular_faces,
    })
}

/// Everything computed for one truncated orbit.
#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub alpha: Scalar,
    pub m: Scalar,
    pub side: BoundarySide,
    pub orbit: BilliardOrbit,
    pub subdivision: PlanarSubdivision,
    pub census: Census,
    /// The slope below 1 used for the line spacings: `alpha`, or `1/alpha`
    /// with the axes exchanged.
    pub frame_alpha: Scalar,
    /// Line spacings `d_1 > d_2 > ...`.
    pub d: Vec<Scalar>,
    pub gaps: Option<GapStructure>,
    pub formulas: Option<FormulaReport>,
    pub formula_error: Option<String>,
}

/// Folds the orbit, builds the subdivision, and classifies its faces.
pub fn analyze(spec: &TruncationSpec) -> Result<Analysis> {
    let orbit = fold_orbit(spec)?;
    analyze_orbit(orbit)
}

pub fn analyze_orbit(orbit: BilliardOrbit) -> Result<Analysis> {
    let subdivision = build_subdivision(&orbit)?;
    let census = classify(&subdivision);
    let alpha = orbit.alpha.clone();
    let (frame_alpha, gaps) = match alpha.compare(&Scalar::one()) {
        Ordering::Less => (alpha.clone(), Some(gap_structure(&orbit)?)),
        Ordering::Greater => (alpha.recip(), Some(gap_structure(&orbit.swapped())?)),
        // Slope 1 runs along the diagonal; the only spacing is 1.
        Ordering::Equal => (alpha.clone(), None),
    };
    let d = gaps
        .as_ref()
        .map(|g| g.d.clone())
        .unwrap_or_else(|| vec![Scalar::one()]);
    let (formulas, formula_error) =
        match match_area_formulas(&census, &d, &frame_alpha, orbit.end()) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
    log::info!(
        "alpha = {alpha}, M = {}: {} faces, {} areas, {} shapes",
        orbit.m,
        census.faces.len(),
        census.distinct_areas,
        census.distinct_shapes
    );
    Ok(Analysis {
        alpha,
        m: orbit.m.clone(),
        side: orbit.side,
        subdivision,
        census,
        frame_alpha,
        d,
        gaps,
        formulas,
        formula_error,
        orbit,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem13Report {
    pub alpha: Scalar,
    pub m: Scalar,
    pub side: BoundarySide,
    pub faces: usize,
    pub distinct_areas: usize,
    pub distinct_shapes: usize,
    pub d: Vec<Scalar>,
    pub occupied_slots: Vec<FormulaSlot>,
    pub formula_error: Option<String>,
}

/// At most 13 distinct areas and 16 distinct shapes.
pub fn verify_theorem13(spec: &TruncationSpec) -> Result<Theorem13Report> {
    let a = analyze(spec)?;
    theorem13_from(&a)
}

pub fn theorem13_from(a: &Analysis) -> Result<Theorem13Report> {
    if a.census.distinct_areas > 13 || a.census.distinct_shapes > 16 {
        return Err(Error::TheoremViolation(format!(
            "alpha = {}, M = {}: {} areas and {} shapes",
            a.alpha, a.m, a.census.distinct_areas, a.census.distinct_shapes
        )));
    }
    Ok(Theorem13Report {
        alpha: a.alpha.clone(),
        m: a.m.clone(),
        side: a.side,
        faces: a.census.faces.len(),
        distinct_areas: a.census.distinct_areas,
        distinct_shapes: a.census.distinct_shapes,
        d: a.d.clone(),
        occupied_slots: a
            .formulas
            .iter()
            .flat_map(|f| f.classes.iter().map(|c| c.slot))
            .collect(),
        formula_error: a.formula_error.clone(),
    })
}

/// All breakpoints of the fold in `(0, limit]`: the boundary truncations.
pub fn boundary_truncations(alpha: &Scalar, limit: &Scalar) -> Result<Vec<Scalar>> {
    let orbit = fold_orbit(&TruncationSpec::abscissa(alpha.clone(), limit.clone()))?;
    Ok(orbit.segments.iter().map(|s| s.x_end.clone()).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalReport {
    pub p: i64,
    pub q: i64,
    /// The orbit closes at `M = q`.
    pub period: Scalar,
    /// First truncation from which the set of areas no longer changes.
    pub m0: Scalar,
    pub distinct_areas: usize,
    pub areas: Vec<Scalar>,
    /// `1/2pq`, `1/4pq`, `1/8pq`.
    pub allowed: Vec<Scalar>,
    /// Number of distinct areas at each boundary truncation in `(0, q]`.
    pub history: Vec<(Scalar, usize)>,
}

/// Runs the periodic orbit of slope `p/q` to closure and checks that at most
/// three areas remain, all of the form `1/2pq`, `1/4pq` or `1/8pq`.
pub fn verify_rational(p: i64, q: i64) -> Result<RationalReport> {
    if p <= 0 || q <= 0 || p > q || p.gcd(&q) != 1 {
        return Err(Error::Domain(format!(
            "need coprime 0 < p <= q, got {p}/{q}"
        )));
    }
    let alpha = Scalar::ratio(p, q);
    let period = Scalar::int(q);
    intercepts_periodic(&alpha)?;
    let mut history = Vec::new();
    let mut area_sets = Vec::new();
    for m in boundary_truncations(&alpha, &period)? {
        let census = classify(&build_subdivision(&fold_orbit(
            &TruncationSpec::abscissa(alpha.clone(), m.clone()),
        )?)?);
        history.push((m, census.distinct_areas));
        area_sets.push(census.areas);
    }
    let last = area_sets.last().expect("at least one truncation").clone();
    let start = area_sets
        .iter()
        .rposition(|s| *s != last)
        .map_or(0, |i| i + 1);
    let m0 = history[start].0.clone();
    let pq = p * q;
    let allowed = vec![
        Scalar::ratio(1, 2 * pq),
        Scalar::ratio(1, 4 * pq),
        Scalar::ratio(1, 8 * pq),
    ];
    if last.len() > 3 || last.iter().any(|a| !allowed.contains(a)) {
        return Err(Error::TheoremViolation(format!(
            "slope {p}/{q}: areas {:?} after closing",
            last.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(RationalReport {
        p,
        q,
        period,
        m0,
        distinct_areas: last.len(),
        areas: last,
        allowed,
        history,
    })
}

/// `1 / (n + phi)`.
pub fn golden_alpha(n: u32) -> Scalar {
    (&Scalar::int(n as i64) + &Scalar::phi()).recip()
}

#[derive(Debug, Clone, Serialize)]
pub struct GoldenReport {
    pub n: u32,
    pub alpha: Scalar,
    pub truncations: usize,
    pub max_areas: usize,
    /// Truncations with three spacings, where `d_1 d_3 = d_2^2` was checked.
    pub geometric_checks: usize,
    /// Truncations with three spacings before the intercepts first cut
    /// `[-alpha, 1]` into pieces no longer than `alpha`; the identity is not
    /// claimed there.
    pub early_triples: usize,
    /// Successive distinct spacing sets of the growing intercept orbit,
    /// from the first occurrence of `{alpha, phi alpha}`.
    pub evolution: Vec<Vec<Scalar>>,
}

/// Slope `1/(n + phi)`: every boundary truncation up to the exit of square
/// `squares` has at most 12 areas, and three spacings form a geometric
/// progression once every spacing is at most `alpha`.
pub fn verify_golden(n: u32, squares: u32) -> Result<GoldenReport> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let alpha = golden_alpha(n);
    let limit = crate::orbit::grid_crossing_m(&alpha, squares)?;
    let mut max_areas = 0;
    let mut geometric_checks = 0;
    let mut early_triples = 0;
    let truncs = boundary_truncations(&alpha, &limit)?;
    for m in &truncs {
        let a = analyze(&TruncationSpec::abscissa(alpha.clone(), m.clone()))?;
        max_areas = max_areas.max(a.census.distinct_areas);
        if a.census.distinct_areas > 12 {
            return Err(Error::TheoremViolation(format!(
                "slope 1/({n}+phi), M = {m}: {} areas",
                a.census.distinct_areas
            )));
        }
        if a.d.len() == 3 && a.d[0] > alpha {
            early_triples += 1;
        } else if a.d.len() == 3 {
            geometric_checks += 1;
            if &a.d[0] * &a.d[2] != &a.d[1] * &a.d[1] {
                return Err(Error::TheoremViolation(format!(
                    "slope 1/({n}+phi), M = {m}: d1 d3 != d2^2"
                )));
            }
        }
    }
    let evolution = golden_gap_evolution(&alpha, 2 * squares as usize + 1)?;
    Ok(GoldenReport {
        n,
        alpha,
        truncations: truncs.len(),
        max_areas,
        geometric_checks,
        early_triples,
        evolution,
    })
}

/// Distinct spacing sets (descending) of the intercept orbit as it grows one
/// point at a time in generation order `0, 1, -1, 2, -2, ...`, starting at
/// the first set equal to `{alpha, phi alpha}`. Checks along the way that a
/// third length only appears as the difference of the two present, and that
/// the largest length is always the one to disappear.
pub fn golden_gap_evolution(alpha: &Scalar, max_points: usize) -> Result<Vec<Vec<Scalar>>> {
    let phi = Scalar::phi();
    let first = vec![alpha.clone(), &phi * alpha];
    let mut seq: Vec<Vec<Scalar>> = Vec::new();
    let mut indices = Vec::new();
    for m in 0..max_points as i64 {
        indices.push(if m % 2 == 1 { m / 2 + 1 } else { -(m / 2) });
        let g: GapSet = gap_census(&intercept_orbit(alpha, &indices)?);
        let set = g.descending();
        if seq.is_empty() {
            if set == first {
                seq.push(set);
            }
        } else if seq.last() != Some(&set) {
            seq.push(set);
        }
    }
    if seq.is_empty() {
        return Err(Error::TheoremViolation(format!(
            "spacings never reach {{alpha, phi alpha}} for alpha = {alpha}"
        )));
    }
    for w in seq.windows(2) {
        let (before, after) = (&w[0], &w[1]);
        let ok = match (before.len(), after.len()) {
            (2, 3) => {
                after.contains(&before[0])
                    && after.contains(&before[1])
                    && after.contains(&(&before[0] - &before[1]))
            }
            (3, 2) => after[..] == before[1..],
            _ => false,
        };
        if !ok {
            return Err(Error::TheoremViolation(format!(
                "unexpected spacing transition {:?} -> {:?}",
                before.iter().map(Scalar::to_f64).collect::<Vec<_>>(),
                after.iter().map(Scalar::to_f64).collect::<Vec<_>>()
            )));
        }
    }
    Ok(seq)
}
