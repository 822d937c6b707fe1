//! The billiard orbit launched from the corner `(0, 0)` of `[0, 1/2]^2`.
//!
//! The orbit of slope `alpha` is the image of the halfline `(x, alpha*x)`
//! under the folding map `(x, y) -> (||x||, ||y||)`. It can be built three
//! ways, all of which are cross-checked here:
//!
//! - by folding the halfline directly ([`fold_orbit`]);
//! - square by square, with the intercept recursion ([`intercepts_recursive`]);
//! - as the union of the chords of two line families `y = alpha*x + y_k` and
//!   `y = -alpha*x + 1 - y_k` ([`build_line_family`]).
//!
//! Intercepts use the indexing `y_0 = -alpha`, `y_1 = 0`, with the mirror
//! relation `y_{-k} = 1 - alpha - y_k`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaps::{gap_census, GapSet, RotationOrbit};
use crate::geometry::{Line, Point};
use crate::scalar::Scalar;
use dashu_int::IBig;

/// Side of `[0, 1/2]^2` on which a truncated orbit ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundarySide {
    /// `x = 0`
    Left,
    /// `y = 0`
    Lower,
    /// `y = 1/2`
    Upper,
    /// `x = 1/2`
    Right,
}

impl BoundarySide {
    /// The same side after exchanging the axes.
    pub fn swapped(self) -> BoundarySide {
        match self {
            BoundarySide::Left => BoundarySide::Lower,
            BoundarySide::Lower => BoundarySide::Left,
            BoundarySide::Upper => BoundarySide::Right,
            BoundarySide::Right => BoundarySide::Upper,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Truncation {
    /// Stop where the halfline leaves the `N`-th unit square it crosses.
    Squares(u32),
    /// Stop at abscissa `M`.
    Abscissa(Scalar),
}

#[derive(Debug, Clone)]
pub struct TruncationSpec {
    pub alpha: Scalar,
    pub truncation: Truncation,
}

impl TruncationSpec {
    pub fn squares(alpha: Scalar, n: u32) -> TruncationSpec {
        TruncationSpec {
            alpha,
            truncation: Truncation::Squares(n),
        }
    }

    pub fn abscissa(alpha: Scalar, m: Scalar) -> TruncationSpec {
        TruncationSpec {
            alpha,
            truncation: Truncation::Abscissa(m),
        }
    }

    /// The truncation abscissa `M` and the side where the orbit ends.
    pub fn resolve(&self) -> Result<(Scalar, BoundarySide)> {
        check_positive(&self.alpha)?;
        let m = match &self.truncation {
            Truncation::Squares(n) => grid_crossing_m(&self.alpha, *n)?,
            Truncation::Abscissa(m) => {
                if m.signum() != Ordering::Greater {
                    return Err(Error::InvalidTruncation(format!(
                        "M must be positive, got {m}"
                    )));
                }
                m.clone()
            }
        };
        match endpoint_side(&self.alpha, &m) {
            Some(side) => Ok((m, side)),
            None => Err(Error::InvalidTruncation(format!(
                "orbit point at M = {m} is interior to the square; M must end on its boundary"
            ))),
        }
    }
}

fn check_positive(alpha: &Scalar) -> Result<()> {
    if alpha.signum() != Ordering::Greater {
        return Err(Error::Domain(format!(
            "slope must be positive, got {alpha}"
        )));
    }
    Ok(())
}

fn check_unit(alpha: &Scalar) -> Result<()> {
    check_positive(alpha)?;
    if alpha.compare(&Scalar::one()) != Ordering::Less {
        return Err(Error::Domain(format!(
            "slope must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// Which side `(||M||, ||alpha*M||)` lies on, or `None` if it is interior.
/// At a corner the first matching side in the order Left, Lower, Right, Upper wins.
pub fn endpoint_side(alpha: &Scalar, m: &Scalar) -> Option<BoundarySide> {
    let x = m.nearest_int_dist();
    let y = (alpha * m).nearest_int_dist();
    let half = Scalar::half();
    if x.is_zero() {
        Some(BoundarySide::Left)
    } else if y.is_zero() {
        Some(BoundarySide::Lower)
    } else if x == half {
        Some(BoundarySide::Right)
    } else if y == half {
        Some(BoundarySide::Upper)
    } else {
        None
    }
}

/// The abscissa where the halfline `(x, alpha*x)` leaves the `n`-th unit
/// square it passes through: the `n`-th smallest element of
/// `{1, 2, ...} ∪ {1/alpha, 2/alpha, ...}`.
pub fn grid_crossing_m(alpha: &Scalar, n: u32) -> Result<Scalar> {
    check_positive(alpha)?;
    if n == 0 {
        return Err(Error::InvalidTruncation(
            "number of squares must be positive".into(),
        ));
    }
    let inv = alpha.recip();
    let (mut i, mut j) = (1i64, 1i64);
    let mut last = Scalar::zero();
    for _ in 0..n {
        // i < j/alpha  iff  i*alpha < j
        match (alpha * &Scalar::int(i)).compare(&Scalar::int(j)) {
            Ordering::Less => {
                last = Scalar::int(i);
                i += 1;
            }
            Ordering::Greater => {
                last = &inv * &Scalar::int(j);
                j += 1;
            }
            Ordering::Equal => return Err(Error::DegenerateCrossing(i.to_string())),
        }
    }
    Ok(last)
}

/// `y_k = (1 + alpha) {k alpha / (1 + alpha)} - alpha`.
pub fn intercepts_closed_form(alpha: &Scalar, k: i64) -> Scalar {
    let one_plus = alpha + &Scalar::one();
    let rot = alpha / &one_plus;
    &(&one_plus * &(&Scalar::int(k) * &rot).frac()) - alpha
}

/// `y_1, ..., y_n` from `y_1 = 0` and
/// `y_{k+1} = y_k + alpha` if `y_k < 1 - alpha`, `y_k - 1` if `y_k > 1 - alpha`.
pub fn intercepts_recursive(alpha: &Scalar, n: u32) -> Result<Vec<Scalar>> {
    check_unit(alpha)?;
    let threshold = &Scalar::one() - alpha;
    let mut out = Vec::with_capacity(n as usize);
    let mut y = Scalar::zero();
    for k in 1..=n as i64 {
        out.push(y.clone());
        if k == n as i64 {
            break;
        }
        y = match y.compare(&threshold) {
            Ordering::Less => &y + alpha,
            Ordering::Greater => &y - &Scalar::one(),
            Ordering::Equal => return Err(Error::RecursionDegenerate(k)),
        };
    }
    Ok(out)
}

/// One period `y_1, ..., y_{p+q}` of the intercepts of a rational slope `p/q`.
/// Where the recursion would be degenerate (`y_k = 1 - alpha`, the halfline
/// passing a lattice corner) the closed form's convention applies: subtract 1.
pub fn intercepts_periodic(alpha: &Scalar) -> Result<Vec<Scalar>> {
    let r = alpha.as_rational().ok_or_else(|| {
        Error::Domain(format!(
            "periodic intercepts need a rational slope, got {alpha}"
        ))
    })?;
    check_positive(alpha)?;
    if alpha.compare(&Scalar::one()) == Ordering::Greater {
        return Err(Error::Domain(format!(
            "slope must lie in (0, 1], got {alpha}"
        )));
    }
    let period =
        i64::try_from(&(r.0 + r.1)).map_err(|_| Error::Domain("period too large".into()))?;
    let threshold = &Scalar::one() - alpha;
    let mut out = Vec::with_capacity(period as usize);
    let mut y = Scalar::zero();
    for _ in 0..period {
        out.push(y.clone());
        y = if y.compare(&threshold) == Ordering::Less {
            &y + alpha
        } else {
            &y - &Scalar::one()
        };
    }
    if y != out[0] {
        return Err(Error::TheoremViolation(format!(
            "intercepts of {alpha} do not repeat after {period} steps"
        )));
    }
    Ok(out)
}

/// The intercepts `y_k`, `k = -n..=n`, of the two line families.
#[derive(Debug, Clone, Serialize)]
pub struct LineFamily {
    pub alpha: Scalar,
    pub n: u32,
    /// `y_k` stored at position `k + n`.
    pub intercepts: Vec<Scalar>,
}

impl LineFamily {
    /// Family from the closed form only. Works for every slope in `(0, 1)`.
    pub fn closed_form(alpha: &Scalar, n: u32) -> Result<LineFamily> {
        check_unit(alpha)?;
        let n_i = n as i64;
        let intercepts = (-n_i..=n_i)
            .map(|k| intercepts_closed_form(alpha, k))
            .collect();
        Ok(LineFamily {
            alpha: alpha.clone(),
            n,
            intercepts,
        })
    }

    pub fn y(&self, k: i64) -> &Scalar {
        &self.intercepts[(k + self.n as i64) as usize]
    }

    /// `l_k^+(x) = alpha*x + y_k`
    pub fn positive(&self, k: i64) -> Line {
        Line::new(self.alpha.clone(), self.y(k).clone())
    }

    /// `l_k^-(x) = -alpha*x + 1 - y_k`
    pub fn negative(&self, k: i64) -> Line {
        Line::new(-&self.alpha, &Scalar::one() - self.y(k))
    }

    pub fn line(&self, label: LineLabel) -> Line {
        match label.family {
            Family::Positive => self.positive(label.index),
            Family::Negative => self.negative(label.index),
        }
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        -(self.n as i64)..=self.n as i64
    }
}

/// Builds both families and checks that the recursion, the closed form and
/// the mirror relation agree exactly.
pub fn build_line_family(alpha: &Scalar, n: u32) -> Result<LineFamily> {
    let family = LineFamily::closed_form(alpha, n)?;
    let recursive = intercepts_recursive(alpha, n)?;
    for (k, y) in (1..).zip(&recursive) {
        if y != family.y(k) {
            return Err(Error::TheoremViolation(format!(
                "recursive and closed-form y_{k} differ: {y} vs {}",
                family.y(k)
            )));
        }
    }
    let mirror = &Scalar::one() - alpha;
    for k in 1..=n as i64 {
        if family.y(-k) != &(&mirror - family.y(k)) {
            return Err(Error::TheoremViolation(format!(
                "mirror relation fails at k = {k}"
            )));
        }
    }
    if family.y(0) != &(-alpha) {
        return Err(Error::TheoremViolation("y_0 differs from -alpha".into()));
    }
    Ok(family)
}

/// The intercepts `y_k` for the given indices as a rotation orbit on
/// `[-alpha, 1]`. Indices are placed in generation order: by `|k|`, positive
/// before negative.
pub fn intercept_orbit(alpha: &Scalar, indices: &[i64]) -> Result<RotationOrbit> {
    let mut idx = indices.to_vec();
    sort_generation_order(&mut idx);
    let points = idx
        .iter()
        .map(|&k| intercepts_closed_form(alpha, k))
        .collect();
    let one_plus = alpha + &Scalar::one();
    RotationOrbit::from_points(points, idx, -alpha, one_plus.clone(), alpha / &one_plus)
}

/// The negative-slope intercepts `1 - y_k` as a rotation orbit on `[0, 1 + alpha]`.
pub fn mirrored_intercept_orbit(alpha: &Scalar, indices: &[i64]) -> Result<RotationOrbit> {
    let mut idx = indices.to_vec();
    sort_generation_order(&mut idx);
    let one = Scalar::one();
    let points = idx
        .iter()
        .map(|&k| &one - &intercepts_closed_form(alpha, k))
        .collect();
    let one_plus = alpha + &one;
    RotationOrbit::from_points(
        points,
        idx,
        Scalar::zero(),
        one_plus.clone(),
        alpha / &one_plus,
    )
}

fn sort_generation_order(idx: &mut Vec<i64>) {
    idx.sort_by_key(|&k| (k.unsigned_abs(), k < 0));
    idx.dedup();
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Slope `+alpha`.
    Positive,
    /// Slope `-alpha`.
    Negative,
}

/// The line `l_k^+` or `l_k^-` carrying an orbit segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LineLabel {
    pub family: Family,
    pub index: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSegment {
    pub start: Point,
    pub end: Point,
    /// Halfline parameters of the two endpoints.
    pub x_start: Scalar,
    pub x_end: Scalar,
    /// Present when the slope is below 1.
    pub line: Option<LineLabel>,
}

/// A truncated billiard orbit `{(||x||, ||alpha x||) : 0 <= x <= M}`.
#[derive(Debug, Clone, Serialize)]
pub struct BilliardOrbit {
    pub alpha: Scalar,
    pub m: Scalar,
    pub side: BoundarySide,
    pub segments: Vec<OrbitSegment>,
    /// Parameters `x > 0` where the orbit passes through a corner of the square.
    pub corner_hits: Vec<Scalar>,
    /// Number of unit squares the halfline has fully crossed by `M`.
    pub full_squares: u32,
}

impl BilliardOrbit {
    pub fn start(&self) -> Point {
        Point::origin()
    }

    pub fn end(&self) -> &Point {
        &self
            .segments
            .last()
            .expect("orbit has at least one segment")
            .end
    }

    /// The mirror image in the diagonal: the orbit of slope `1/alpha`
    /// truncated at `alpha*M`.
    pub fn swapped(&self) -> BilliardOrbit {
        let spec = TruncationSpec::abscissa(self.alpha.recip(), &self.alpha * &self.m);
        fold_orbit(&spec).expect("swapping preserves a valid truncation")
    }
}

#[derive(Clone, Copy)]
enum Break {
    /// `x = i/2`
    Half(i64),
    /// `x = j/(2 alpha)`
    InvHalf(i64),
    /// Both at once: a corner of the square.
    Both(i64, i64),
}

fn fold_int_half(i: i64) -> Scalar {
    if i % 2 == 0 {
        Scalar::zero()
    } else {
        Scalar::half()
    }
}

/// Folds the halfline up to the truncation point.
pub fn fold_orbit(spec: &TruncationSpec) -> Result<BilliardOrbit> {
    let (m, side) = spec.resolve()?;
    let alpha = &spec.alpha;
    let to_i64 =
        |v: IBig| i64::try_from(&v).map_err(|_| Error::InvalidTruncation("M too large".into()));
    let max_i = to_i64((&m * &Scalar::int(2)).floor())?;
    let max_j = to_i64((&(alpha * &m) * &Scalar::int(2)).floor())?;

    let mut breaks = Vec::with_capacity((max_i + max_j) as usize);
    let (mut i, mut j) = (1i64, 1i64);
    while i <= max_i || j <= max_j {
        let b = if j > max_j {
            Break::Half(i)
        } else if i > max_i {
            Break::InvHalf(j)
        } else {
            match (alpha * &Scalar::int(i)).compare(&Scalar::int(j)) {
                Ordering::Less => Break::Half(i),
                Ordering::Greater => Break::InvHalf(j),
                Ordering::Equal => Break::Both(i, j),
            }
        };
        match b {
            Break::Half(_) => i += 1,
            Break::InvHalf(_) => j += 1,
            Break::Both(..) => {
                i += 1;
                j += 1;
            }
        }
        breaks.push(b);
    }

    let inv2a = (alpha * &Scalar::int(2)).recip();
    let mut corner_hits = Vec::new();
    let mut full_squares = 0u32;
    let mut params = vec![Scalar::zero()];
    let mut points = vec![Point::origin()];
    for b in breaks {
        let (x, p) = match b {
            Break::Half(i) => {
                let x = Scalar::ratio(i, 2);
                let y = (alpha * &x).nearest_int_dist();
                (x, Point::new(fold_int_half(i), y))
            }
            Break::InvHalf(j) => {
                let x = &inv2a * &Scalar::int(j);
                let px = x.nearest_int_dist();
                (x, Point::new(px, fold_int_half(j)))
            }
            Break::Both(i, j) => {
                let x = Scalar::ratio(i, 2);
                corner_hits.push(x.clone());
                (x, Point::new(fold_int_half(i), fold_int_half(j)))
            }
        };
        let crossing = match b {
            Break::Half(i) => i % 2 == 0,
            Break::InvHalf(j) => j % 2 == 0,
            Break::Both(i, j) => i % 2 == 0 || j % 2 == 0,
        };
        if crossing {
            full_squares += 1;
        }
        params.push(x);
        points.push(p);
    }
    debug_assert!(params.last() == Some(&m));

    let labelled = alpha.compare(&Scalar::one()) == Ordering::Less;
    let half = Scalar::half();
    let mut segments = Vec::with_capacity(points.len() - 1);
    for w in 0..points.len() - 1 {
        let line = labelled.then(|| {
            let xm = &(&params[w] + &params[w + 1]) * &half;
            let axm = alpha * &xm;
            let (fi, fj) = (xm.floor(), axm.floor());
            let k = 1 + i64::try_from(&(&fi + &fj))
                .ok()
                .expect("square index fits in i64");
            let left = (&xm - &Scalar::from(fi)).compare(&half) == Ordering::Less;
            let low = (&axm - &Scalar::from(fj)).compare(&half) == Ordering::Less;
            match (left, low) {
                (true, true) => LineLabel {
                    family: Family::Positive,
                    index: k,
                },
                (false, true) => LineLabel {
                    family: Family::Negative,
                    index: -k,
                },
                (false, false) => LineLabel {
                    family: Family::Positive,
                    index: -k,
                },
                (true, false) => LineLabel {
                    family: Family::Negative,
                    index: k,
                },
            }
        });
        segments.push(OrbitSegment {
            start: points[w].clone(),
            end: points[w + 1].clone(),
            x_start: params[w].clone(),
            x_end: params[w + 1].clone(),
            line,
        });
    }
    log::debug!(
        "folded orbit: alpha = {alpha}, M = {m}, {} segments, ends on {side:?}",
        segments.len()
    );
    Ok(BilliardOrbit {
        alpha: alpha.clone(),
        m,
        side,
        segments,
        corner_hits,
        full_squares,
    })
}

/// The gap set `D` of a truncated orbit: the distinct distances between
/// adjacent parallel lines, read off the intercept orbits of both families.
#[derive(Debug, Clone, Serialize)]
pub struct GapStructure {
    /// Indices `k` of the positive-slope lines `l_k^+` taken into account.
    pub positive: Vec<i64>,
    pub negative: Vec<i64>,
    pub positive_gaps: GapSet,
    pub negative_gaps: GapSet,
    /// `d_1 > d_2 > ...`
    pub d: Vec<Scalar>,
}

/// Index sets are `-F..=F` for the `F` fully crossed unit squares, plus the
/// lines actually traversed in a partially crossed one.
pub fn gap_structure(orbit: &BilliardOrbit) -> Result<GapStructure> {
    let alpha = &orbit.alpha;
    check_unit(alpha)?;
    let f = orbit.full_squares as i64;
    let mut positive: Vec<i64> = (-f..=f).collect();
    let mut negative = positive.clone();
    for seg in &orbit.segments {
        let label = seg.line.expect("segments of a slope below 1 carry labels");
        match label.family {
            Family::Positive => positive.push(label.index),
            Family::Negative => negative.push(label.index),
        }
    }
    for v in [&mut positive, &mut negative] {
        v.sort_unstable();
        v.dedup();
    }
    let positive_gaps = gap_census(&intercept_orbit(alpha, &positive)?);
    let negative_gaps = gap_census(&mirrored_intercept_orbit(alpha, &negative)?);
    let mut d = positive_gaps.union(&negative_gaps);
    d.reverse();
    if d.len() > 3 {
        return Err(Error::TheoremViolation(format!(
            "{} distinct line spacings for alpha = {alpha}, M = {}",
            d.len(),
            orbit.m
        )));
    }
    Ok(GapStructure {
        positive,
        negative,
        positive_gaps,
        negative_gaps,
        d,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LinesReport {
    pub alpha: Scalar,
    pub n: u32,
    pub m: Scalar,
    pub side: BoundarySide,
    pub segments: usize,
    /// Lines of the two families that meet the square in a chord.
    pub chords: usize,
}

/// Checks that the orbit through `n` squares is exactly the union of the
/// chords of `l_k^+` and `l_k^-`, `|k| <= n`: each folded segment is the full
/// chord of its labelled line, and every line meeting the square is traversed.
pub fn verify_orbit_equals_lines(alpha: &Scalar, n: u32) -> Result<LinesReport> {
    let family = build_line_family(alpha, n)?;
    let orbit = fold_orbit(&TruncationSpec::squares(alpha.clone(), n))?;
    let mut seen = std::collections::BTreeSet::new();
    for seg in &orbit.segments {
        let label = seg.line.expect("labelled");
        if label.index.unsigned_abs() > n as u64 {
            return Err(Error::TheoremViolation(format!(
                "segment on {label:?} outside the family of size {n}"
            )));
        }
        let line = family.line(label);
        let chord = line.chord();
        let matches = chord.as_ref().is_some_and(|(a, b)| {
            let (s, e) = if seg.start.lex_cmp(&seg.end) == Ordering::Less {
                (&seg.start, &seg.end)
            } else {
                (&seg.end, &seg.start)
            };
            a == s && b == e
        });
        if !matches {
            return Err(Error::TheoremViolation(format!(
                "segment {:?} -> {:?} is not the chord of {label:?}",
                seg.start, seg.end
            )));
        }
        seen.insert(label);
    }
    let mut chords = 0;
    for k in family.indices() {
        for fam in [Family::Positive, Family::Negative] {
            let label = LineLabel {
                family: fam,
                index: k,
            };
            if family.line(label).chord().is_some() {
                chords += 1;
                if !seen.contains(&label) {
                    return Err(Error::TheoremViolation(format!(
                        "chord of {label:?} is not covered by the orbit"
                    )));
                }
            }
        }
    }
    Ok(LinesReport {
        alpha: alpha.clone(),
        n,
        m: orbit.m.clone(),
        side: orbit.side,
        segments: orbit.segments.len(),
        chords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3m1() -> Scalar {
        Scalar::sqrt_int(3) - Scalar::one()
    }

    fn ex1() -> Scalar {
        Scalar::sqrt_int(10) / Scalar::int(7)
    }

    #[test]
    fn crossings() {
        assert_eq!(grid_crossing_m(&s3m1(), 8).unwrap(), Scalar::int(5));
        assert_eq!(grid_crossing_m(&s3m1(), 1).unwrap(), Scalar::int(1));
        assert!(matches!(
            grid_crossing_m(&Scalar::ratio(1, 2), 2),
            Err(Error::DegenerateCrossing(_))
        ));
        assert_eq!(
            grid_crossing_m(&Scalar::ratio(3, 5), 2).unwrap(),
            Scalar::ratio(5, 3)
        );
        assert_eq!(
            grid_crossing_m(&Scalar::ratio(3, 5), 3).unwrap(),
            Scalar::int(2)
        );
    }

    #[test]
    fn recursion_first_values() {
        let y = intercepts_recursive(&s3m1(), 4).unwrap();
        let approx: Vec<f64> = y.iter().map(Scalar::to_f64).collect();
        assert_eq!(approx[0], 0.0);
        assert!((approx[1] - 0.732).abs() < 1e-3);
        assert!((approx[2] + 0.268).abs() < 1e-3);
        assert!((approx[3] - 0.464).abs() < 1e-3);
    }

    #[test]
    fn rational_recursion_is_degenerate_but_periodic() {
        let quarter = Scalar::ratio(1, 4);
        assert_eq!(
            intercepts_recursive(&quarter, 10).unwrap_err(),
            Error::RecursionDegenerate(4)
        );
        let cycle = intercepts_periodic(&quarter).unwrap();
        assert_eq!(cycle.len(), 5);
        for (k, y) in (1..).zip(&cycle) {
            assert_eq!(y, &intercepts_closed_form(&quarter, k));
        }
        let alpha = Scalar::ratio(3, 5);
        assert_eq!(intercepts_closed_form(&alpha, 8), -alpha.clone());
    }

    #[test]
    fn closed_form_small_indices() {
        let a = ex1();
        assert_eq!(intercepts_closed_form(&a, 0), -a.clone());
        assert_eq!(intercepts_closed_form(&a, 1), Scalar::zero());
        let fam = build_line_family(&a, 1).unwrap();
        assert_eq!(
            fam.intercepts,
            vec![Scalar::one() - a.clone(), -a, Scalar::zero()]
        );
    }

    #[test]
    fn example_gaps() {
        let a = ex1();
        let fam = build_line_family(&a, 11).unwrap();
        let d1 = fam.y(-2) - fam.y(1);
        let d2 = fam.y(11) - fam.y(-2);
        let d3 = fam.y(-5) - fam.y(11);
        let idx: Vec<i64> = fam.indices().collect();
        let gaps = gap_census(&intercept_orbit(&a, &idx).unwrap());
        assert_eq!(gaps.descending(), vec![d1, d2, d3]);
        let mirrored = gap_census(&mirrored_intercept_orbit(&a, &idx).unwrap());
        assert_eq!(mirrored.lengths, gaps.lengths);
    }

    #[test]
    fn single_chord() {
        let a = s3m1();
        let orbit = fold_orbit(&TruncationSpec::abscissa(a.clone(), Scalar::half())).unwrap();
        assert_eq!(orbit.segments.len(), 1);
        assert_eq!(orbit.side, BoundarySide::Right);
        assert_eq!(
            orbit.end(),
            &Point::new(Scalar::half(), &a / &Scalar::int(2))
        );
    }

    #[test]
    fn interior_endpoint_is_rejected() {
        let spec = TruncationSpec::abscissa(s3m1(), Scalar::ratio(1, 3));
        assert!(matches!(
            fold_orbit(&spec),
            Err(Error::InvalidTruncation(_))
        ));
    }

    #[test]
    fn fold_structure() {
        let a = ex1();
        let orbit = fold_orbit(&TruncationSpec::squares(a.clone(), 11)).unwrap();
        assert_eq!(orbit.m, Scalar::int(8));
        assert_eq!(orbit.side, BoundarySide::Left);
        assert_eq!(orbit.full_squares, 11);
        // Breakpoints at j/2 and j/(2 alpha) up to M.
        let expect =
            (orbit.m.to_f64() * 2.0).floor() + (orbit.m.to_f64() * a.to_f64() * 2.0).floor();
        assert_eq!(orbit.segments.len() as f64, expect);
        for w in orbit.segments.windows(2) {
            assert_eq!(w[0].end, w[1].start);
            let s0 =
                (&w[0].end.y - &w[0].start.y).signum() == (&w[0].end.x - &w[0].start.x).signum();
            let s1 =
                (&w[1].end.y - &w[1].start.y).signum() == (&w[1].end.x - &w[1].start.x).signum();
            assert_ne!(s0, s1, "slope sign alternates at each reflection");
        }
        assert!(orbit.corner_hits.is_empty());
    }

    #[test]
    fn rational_orbit_closes_at_origin() {
        let orbit = fold_orbit(&TruncationSpec::abscissa(
            Scalar::ratio(3, 5),
            Scalar::int(5),
        ))
        .unwrap();
        assert_eq!(orbit.end(), &Point::origin());
        assert_eq!(orbit.corner_hits, vec![Scalar::ratio(5, 2), Scalar::int(5)]);
        let touches =
            |f: &dyn Fn(&Point) -> bool| orbit.segments.iter().any(|s| f(&s.start) || f(&s.end));
        assert!(touches(&|p| p.x.is_zero()));
        assert!(touches(&|p| p.y.is_zero()));
        assert!(touches(&|p| p.x == Scalar::half()));
        assert!(touches(&|p| p.y == Scalar::half()));
    }

    #[test]
    fn lines_equal_orbit() {
        let r = verify_orbit_equals_lines(&s3m1(), 4).unwrap();
        assert_eq!(r.m, grid_crossing_m(&s3m1(), 4).unwrap());
        verify_orbit_equals_lines(&ex1(), 11).unwrap();
        let r = verify_orbit_equals_lines(&ex1(), 1).unwrap();
        assert_eq!(r.segments, r.chords);
    }

    #[test]
    fn partial_squares_keep_three_spacings() {
        let a = ex1();
        let orbit = fold_orbit(&TruncationSpec::squares(a.clone(), 11)).unwrap();
        let params: Vec<Scalar> = orbit.segments.iter().map(|s| s.x_end.clone()).collect();
        for m in params {
            let o = fold_orbit(&TruncationSpec::abscissa(a.clone(), m)).unwrap();
            let g = gap_structure(&o).unwrap();
            assert!(g.d.len() <= 3);
        }
    }

    #[test]
    fn swapping_axes() {
        let a = Scalar::sqrt_int(10) / Scalar::int(3);
        let orbit = fold_orbit(&TruncationSpec::squares(a.clone(), 7)).unwrap();
        let sw = orbit.swapped();
        assert_eq!(sw.side, orbit.side.swapped());
        assert_eq!(sw.segments.len(), orbit.segments.len());
        for (s, t) in orbit.segments.iter().zip(&sw.segments) {
            assert_eq!(s.end.x, t.end.y);
            assert_eq!(s.end.y, t.end.x);
        }
    }
}
