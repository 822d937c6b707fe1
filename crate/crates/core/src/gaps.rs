//! Rotation orbits on intervals and their gap lengths.
//!
//! The points `{k*alpha}` cut `[0, 1]` into at most three distinct lengths,
//! the largest being the sum of the other two. Affine images of truncated
//! rotation orbits behave the same way, and extending an orbit by one point
//! never produces more than three lengths across the two partitions. The
//! bouncing sequence `||k*alpha||` on `[0, 1/2]` produces at most four.
//!
//! Gaps are measured, not predicted: [`gap_census`] sorts the points and
//! collects the distinct consecutive differences exactly.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A finite orbit `a*T^k(0) + b` of the rotation `T(x) = {x + alpha}`,
/// stored in generation order.
#[derive(Debug, Clone)]
pub struct RotationOrbit {
    points: Vec<Scalar>,
    indices: Vec<i64>,
    start: Scalar,
    length: Scalar,
    alpha: Scalar,
}

impl RotationOrbit {
    /// The `n1 + n2 + 1` points `a*T^k(0) + b` for `k = -n1..=n2` on `[b, b + a]`.
    pub fn general(
        alpha: &Scalar,
        n1: u32,
        n2: u32,
        a: &Scalar,
        b: &Scalar,
    ) -> Result<RotationOrbit> {
        check_unit_rotation(alpha)?;
        let indices: Vec<i64> = (-(n1 as i64)..=n2 as i64).collect();
        let points = indices
            .iter()
            .map(|&k| &(a * &(&Scalar::int(k) * alpha).frac()) + b)
            .collect();
        RotationOrbit::from_points(points, indices, b.clone(), a.clone(), alpha.clone())
    }

    /// Wraps precomputed points. Fails if a point lies outside `[start, start + length]`.
    pub fn from_points(
        points: Vec<Scalar>,
        indices: Vec<i64>,
        start: Scalar,
        length: Scalar,
        alpha: Scalar,
    ) -> Result<RotationOrbit> {
        assert_eq!(points.len(), indices.len());
        if length.signum() != Ordering::Greater {
            return Err(Error::Domain(format!(
                "interval length must be positive, got {length}"
            )));
        }
        let end = &start + &length;
        if let Some(p) = points
            .iter()
            .find(|p| p.compare(&start) == Ordering::Less || p.compare(&end) == Ordering::Greater)
        {
            return Err(Error::Domain(format!(
                "orbit point {p} outside [{start}, {end}]"
            )));
        }
        Ok(RotationOrbit {
            points,
            indices,
            start,
            length,
            alpha,
        })
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    /// Rotation exponent of each point.
    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    /// `(b, a)`: left end and length of the interval.
    pub fn interval(&self) -> (&Scalar, &Scalar) {
        (&self.start, &self.length)
    }

    pub fn index_range(&self) -> (i64, i64) {
        let lo = self.indices.iter().copied().min().unwrap_or(0);
        let hi = self.indices.iter().copied().max().unwrap_or(0);
        (lo, hi)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The orbit before its last point was generated.
    pub fn without_last(&self) -> RotationOrbit {
        let mut out = self.clone();
        out.points.pop();
        out.indices.pop();
        out
    }

    /// Image under `x -> scale*x + shift` (`scale > 0`), interval included.
    pub fn rescaled(&self, scale: &Scalar, shift: &Scalar) -> RotationOrbit {
        assert_eq!(scale.signum(), Ordering::Greater, "scale must be positive");
        RotationOrbit {
            points: self.points.iter().map(|p| &(scale * p) + shift).collect(),
            indices: self.indices.clone(),
            start: &(scale * &self.start) + shift,
            length: scale * &self.length,
            alpha: self.alpha.clone(),
        }
    }
}

fn check_unit_rotation(alpha: &Scalar) -> Result<()> {
    if alpha.signum() != Ordering::Greater || alpha.compare(&Scalar::one()) != Ordering::Less {
        return Err(Error::Domain(format!(
            "rotation amount must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// Distinct gap lengths, ascending, with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapSet {
    pub lengths: Vec<Scalar>,
    pub multiplicities: Vec<usize>,
}

impl GapSet {
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Sum of `length * multiplicity`, which is the interval length.
    pub fn total(&self) -> Scalar {
        self.lengths
            .iter()
            .zip(&self.multiplicities)
            .fold(Scalar::zero(), |acc, (l, &m)| {
                &acc + &(l * &Scalar::int(m as i64))
            })
    }

    pub fn contains(&self, length: &Scalar) -> bool {
        self.lengths.iter().any(|l| l == length)
    }

    /// Lengths from largest to smallest (`d1 > d2 > d3`).
    pub fn descending(&self) -> Vec<Scalar> {
        self.lengths.iter().rev().cloned().collect()
    }

    /// Distinct lengths occurring in either set, ascending.
    pub fn union(&self, other: &GapSet) -> Vec<Scalar> {
        let mut all: Vec<Scalar> = self.lengths.iter().chain(&other.lengths).cloned().collect();
        sort_dedup(&mut all);
        all
    }

    /// Gap set with the given lengths, each with multiplicity one.
    pub fn from_lengths(mut lengths: Vec<Scalar>) -> GapSet {
        sort_dedup(&mut lengths);
        let multiplicities = vec![1; lengths.len()];
        GapSet {
            lengths,
            multiplicities,
        }
    }
}

pub(crate) fn sort_dedup(v: &mut Vec<Scalar>) {
    v.sort_by(Scalar::compare);
    v.dedup_by(|a, b| a == b);
}

/// `0, {alpha}, {2 alpha}, ..., {n alpha}` on `[0, 1]`.
pub fn three_gap_points(alpha: &Scalar, n: u32) -> Result<RotationOrbit> {
    check_unit_rotation(alpha)?;
    let mut points = Vec::with_capacity(n as usize + 1);
    let mut p = Scalar::zero();
    for _ in 0..=n {
        points.push(p.clone());
        p = (&p + alpha).frac();
    }
    RotationOrbit::from_points(
        points,
        (0..=n as i64).collect(),
        Scalar::zero(),
        Scalar::one(),
        alpha.clone(),
    )
}

/// Landing points `||k alpha||`, `k = 0..=n`, of a ball bouncing on `[0, 1/2]`.
pub fn four_gap_points(alpha: &Scalar, n: u32) -> Result<RotationOrbit> {
    if alpha.signum() != Ordering::Greater {
        return Err(Error::Domain(format!(
            "bouncing distance must be positive, got {alpha}"
        )));
    }
    let mut points = Vec::with_capacity(n as usize + 1);
    let mut x = Scalar::zero();
    for _ in 0..=n {
        points.push(x.nearest_int_dist());
        x = (&x + alpha).frac();
    }
    RotationOrbit::from_points(
        points,
        (0..=n as i64).collect(),
        Scalar::zero(),
        Scalar::half(),
        alpha.clone(),
    )
}

/// Partition of the orbit's interval by its points. Interval endpoints always
/// act as boundaries; coincident points produce no zero-length gap.
pub fn gap_census(orbit: &RotationOrbit) -> GapSet {
    let (start, length) = orbit.interval();
    let mut cuts: Vec<Scalar> = Vec::with_capacity(orbit.len() + 2);
    cuts.push(start.clone());
    cuts.push(start + length);
    cuts.extend(orbit.points().iter().cloned());
    cuts.sort_by(Scalar::compare);
    let mut diffs: Vec<Scalar> = cuts
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .filter(|d| !d.is_zero())
        .collect();
    diffs.sort_by(Scalar::compare);
    let mut lengths: Vec<Scalar> = Vec::new();
    let mut multiplicities = Vec::new();
    for d in diffs {
        match lengths.last() {
            Some(last) if *last == d => *multiplicities.last_mut().unwrap() += 1,
            _ => {
                lengths.push(d);
                multiplicities.push(1);
            }
        }
    }
    GapSet {
        lengths,
        multiplicities,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeGapReport {
    pub alpha: Scalar,
    pub n: u32,
    pub gaps: GapSet,
    /// `Some(true)` when three lengths occur and the largest is the sum of the others.
    pub sum_identity: Option<bool>,
}

/// Checks the three-gap statement for `{k alpha}`, `k = 0..=n`.
pub fn verify_three_gap(alpha: &Scalar, n: u32) -> Result<ThreeGapReport> {
    let gaps = gap_census(&three_gap_points(alpha, n)?);
    if gaps.len() > 3 {
        return Err(Error::TheoremViolation(format!(
            "{} gap lengths for alpha = {alpha}, n = {n}",
            gaps.len()
        )));
    }
    let sum_identity =
        (gaps.len() == 3).then(|| gaps.lengths[2] == &gaps.lengths[0] + &gaps.lengths[1]);
    if sum_identity == Some(false) {
        return Err(Error::TheoremViolation(format!(
            "largest gap is not the sum of the others for alpha = {alpha}, n = {n}"
        )));
    }
    Ok(ThreeGapReport {
        alpha: alpha.clone(),
        n,
        gaps,
        sum_identity,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FourGapReport {
    pub alpha: Scalar,
    pub n: u32,
    pub gaps: GapSet,
}

/// Checks that `||k alpha||`, `k = 0..=n`, cut `[0, 1/2]` into at most four lengths.
pub fn verify_four_gap(alpha: &Scalar, n: u32) -> Result<FourGapReport> {
    let gaps = gap_census(&four_gap_points(alpha, n)?);
    if gaps.len() > 4 {
        return Err(Error::TheoremViolation(format!(
            "{} bounce gaps for alpha = {alpha}, n = {n}",
            gaps.len()
        )));
    }
    Ok(FourGapReport {
        alpha: alpha.clone(),
        n,
        gaps,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub full: GapSet,
    pub reduced: GapSet,
    pub union: Vec<Scalar>,
}

/// Compares the partitions of an orbit and of the same orbit without its
/// last-generated point: together they show at most three lengths.
pub fn verify_extension_property(orbit: &RotationOrbit) -> Result<ExtensionReport> {
    if orbit.len() < 2 {
        return Err(Error::Domain(
            "extension check needs at least two points".into(),
        ));
    }
    let full = gap_census(orbit);
    let reduced = gap_census(&orbit.without_last());
    let union = full.union(&reduced);
    if union.len() > 3 {
        return Err(Error::TheoremViolation(format!(
            "{} distinct lengths across an orbit of {} points and its predecessor",
            union.len(),
            orbit.len()
        )));
    }
    Ok(ExtensionReport {
        full,
        reduced,
        union,
    })
}
