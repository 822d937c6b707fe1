//! Points and lines with exact coordinates.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Serialize)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Point {
        Point { x, y }
    }

    pub fn origin() -> Point {
        Point::new(Scalar::zero(), Scalar::zero())
    }

    /// Lexicographic order on `(x, y)`.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x
            .compare(&other.x)
            .then_with(|| self.y.compare(&other.y))
    }

    pub fn minus(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn plus(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn dot(&self, other: &Point) -> Scalar {
        &(&self.x * &other.x) + &(&self.y * &other.y)
    }

    /// z-component of the cross product, positive for a left turn.
    pub fn cross(&self, other: &Point) -> Scalar {
        &(&self.x * &other.y) - &(&self.y * &other.x)
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Non-vertical line `y = slope*x + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Line {
    pub slope: Scalar,
    pub intercept: Scalar,
}

impl Line {
    pub fn new(slope: Scalar, intercept: Scalar) -> Line {
        Line { slope, intercept }
    }

    pub fn at(&self, x: &Scalar) -> Scalar {
        &(&self.slope * x) + &self.intercept
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.at(&p.x) == p.y
    }

    /// The part of the line inside `[0, 1/2]^2`, if it has positive length.
    pub fn chord(&self) -> Option<(Point, Point)> {
        let half = Scalar::half();
        let mut lo = Scalar::zero();
        let mut hi = half.clone();
        if self.slope.is_zero() {
            if self.intercept.signum() == Ordering::Less
                || self.intercept.compare(&half) == Ordering::Greater
            {
                return None;
            }
        } else {
            // Solve 0 <= slope*x + intercept <= 1/2 for x.
            let inv = self.slope.recip();
            let a = &(-&self.intercept) * &inv;
            let b = &(&half - &self.intercept) * &inv;
            let (a, b) = if a.compare(&b) == Ordering::Less {
                (a, b)
            } else {
                (b, a)
            };
            lo = lo.max(a);
            hi = hi.min(b);
        }
        if lo.compare(&hi) != Ordering::Less {
            return None;
        }
        Some((
            Point::new(lo.clone(), self.at(&lo)),
            Point::new(hi.clone(), self.at(&hi)),
        ))
    }
}
