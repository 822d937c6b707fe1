//! Exact real numbers for billiard geometry.
//!
//! A [`Scalar`] is a rational number, an element `(a + b*sqrt(d)) / c` of a
//! real quadratic field with integers `a`, `b`, `c` and square-free `d > 1`,
//! or an explicitly requested floating-point approximation with an absolute
//! tolerance. The exact variants are closed under the field operations and
//! compare exactly, so "two faces have the same area" is a decidable
//! question.
//!
//! Every scalar also carries an `f64` approximation together with a
//! rigorous error bound. Comparisons consult the approximation first and only
//! fall back to big-integer arithmetic when the two values are too close to
//! separate in floating point.
//!
//! Mixing rules:
//! - Rationals combine with everything. With an approximation they are
//!   lifted to a float.
//! - Two irrational values must live in the same field `Q(sqrt(d))`.
//! - Irrational values never combine with approximations.
//!
//! Arithmetic operators panic when these rules are broken (like slicing out of
//! bounds); [`Scalar::try_cmp`] reports the problem as an [`Error`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_int::ops::{BitTest, DivEuclid, Gcd, SquareRoot, UnsignedAbs};
use dashu_int::IBig;

use crate::error::{Error, ParseError, Result};

/// Default absolute tolerance for [`Scalar::approx`] values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

// Relative error charged per floating-point operation (a few ulps).
const EPS: f64 = 4.0 * f64::EPSILON;
const TINY: f64 = 1e-290;

#[derive(Clone)]
pub struct Scalar {
    repr: Repr,
    approx: f64,
    err: f64,
}

#[derive(Clone)]
enum Repr {
    /// `(a + b*sqrt(d)) / c` with `c > 0` and `gcd(a, b, c) = 1`. Rationals
    /// have `b = 0` and `d = 1`; otherwise `d > 1` is square-free.
    Exact {
        a: IBig,
        b: IBig,
        c: IBig,
        d: u64,
    },
    Approx {
        tol: f64,
    },
}

/// The number system a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Quadratic(u64),
    Approx,
}

fn sign_of(x: &IBig) -> Ordering {
    x.cmp(&IBig::ZERO)
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::int(0)
    }

    pub fn one() -> Scalar {
        Scalar::int(1)
    }

    pub fn half() -> Scalar {
        Scalar::ratio(1, 2)
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::exact(IBig::from(n), IBig::ZERO, IBig::ONE, 1)
    }

    /// `num / den` in lowest terms.
    ///
    /// Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::fraction(IBig::from(num), IBig::from(den))
    }

    /// `num / den` for big integers. Panics if `den == 0`.
    pub fn fraction(num: IBig, den: IBig) -> Scalar {
        Scalar::exact(num, IBig::ZERO, den, 1)
    }

    /// `(a + b*sqrt(d)) / c`. The radicand is reduced to its square-free
    /// part, so `from_parts(0, 1, 1, 12)` is stored as `2*sqrt(3)`, and
    /// perfect squares collapse to rationals.
    ///
    /// Panics if `c == 0`.
    pub fn from_parts(a: IBig, b: IBig, c: IBig, d: u64) -> Scalar {
        let (outside, core) = square_free_split(d);
        Scalar::exact(a, b * IBig::from(outside), c, core)
    }

    /// `sqrt(n)` for a non-negative integer.
    pub fn sqrt_int(n: u64) -> Scalar {
        Scalar::from_parts(IBig::ZERO, IBig::ONE, IBig::ONE, n)
    }

    /// The small golden mean `(sqrt(5) - 1) / 2`.
    pub fn phi() -> Scalar {
        Scalar::from_parts(IBig::from(-1), IBig::ONE, IBig::from(2), 5)
    }

    /// A floating-point approximation compared within absolute tolerance `tol`.
    pub fn approx(value: f64, tol: f64) -> Scalar {
        assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive");
        Scalar {
            repr: Repr::Approx { tol },
            approx: value,
            err: 0.0,
        }
    }

    /// Normalizes `(a + b*sqrt(d)) / c` with `d` already square-free.
    fn exact(mut a: IBig, mut b: IBig, mut c: IBig, mut d: u64) -> Scalar {
        assert!(!c.is_zero(), "division by zero");
        if b.is_zero() || d <= 1 {
            if d == 1 {
                a += &b;
            }
            b = IBig::ZERO;
            d = 1;
        }
        if sign_of(&c) == Ordering::Less {
            a = -a;
            b = -b;
            c = -c;
        }
        if !c.is_one() {
            let mut g = IBig::from((&c).gcd(&a));
            if !b.is_zero() && !g.is_one() {
                g = IBig::from((&g).gcd(&b));
            }
            if !g.is_one() {
                a /= &g;
                b /= &g;
                c /= &g;
            }
        }
        let (approx, err) = approximate(&a, &b, &c, d);
        Scalar {
            repr: Repr::Exact { a, b, c, d },
            approx,
            err,
        }
    }

    pub fn field(&self) -> Field {
        match &self.repr {
            Repr::Exact { d: 1, .. } => Field::Rational,
            Repr::Exact { d, .. } => Field::Quadratic(*d),
            Repr::Approx { .. } => Field::Approx,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.repr, Repr::Approx { .. })
    }

    pub fn is_rational(&self) -> bool {
        self.field() == Field::Rational
    }

    /// Numerator and positive denominator of a rational value.
    pub fn as_rational(&self) -> Option<(&IBig, &IBig)> {
        match &self.repr {
            Repr::Exact { a, c, d: 1, .. } => Some((a, c)),
            _ => None,
        }
    }

    /// `(a, b, c, d)` with value `(a + b*sqrt(d)) / c` in lowest terms.
    pub fn parts(&self) -> Option<(&IBig, &IBig, &IBig, u64)> {
        match &self.repr {
            Repr::Exact { a, b, c, d } => Some((a, b, c, *d)),
            Repr::Approx { .. } => None,
        }
    }

    /// Tolerance of an approximate value, `None` for exact values.
    pub fn tolerance(&self) -> Option<f64> {
        match self.repr {
            Repr::Approx { tol } => Some(tol),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.approx
    }

    /// Checks that `self` and `other` may be combined.
    pub fn compatible(&self, other: &Scalar) -> Result<()> {
        match (self.field(), other.field()) {
            (Field::Quadratic(d1), Field::Quadratic(d2)) if d1 != d2 => {
                Err(Error::IncompatibleField(d1, d2))
            }
            (Field::Quadratic(_), Field::Approx) | (Field::Approx, Field::Quadratic(_)) => {
                Err(Error::MixedExactness)
            }
            _ => Ok(()),
        }
    }

    fn expect_compatible(&self, other: &Scalar) {
        if let Err(e) = self.compatible(other) {
            panic!("{e}: {self} and {other}");
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// Sign as an ordering against zero. Approximations within their tolerance of
    /// zero count as zero.
    pub fn signum(&self) -> Ordering {
        match &self.repr {
            Repr::Approx { tol } => {
                if self.approx.abs() <= *tol {
                    Ordering::Equal
                } else {
                    self.approx.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
                }
            }
            _ if self.approx.abs() > self.err => self.approx.partial_cmp(&0.0).unwrap(),
            Repr::Exact { a, b, d, .. } => exact_sign(a, b, *d),
        }
    }

    /// Total order on compatible scalars. Approximations compare equal when they
    /// are within the larger of the two tolerances.
    pub fn try_cmp(&self, other: &Scalar) -> Result<Ordering> {
        self.compatible(other)?;
        let diff = self.approx - other.approx;
        if let Some(tol) = approx_tol(self, other) {
            return Ok(if diff.abs() <= tol {
                Ordering::Equal
            } else {
                diff.partial_cmp(&0.0).unwrap()
            });
        }
        if diff.abs() > (self.err + other.err) * (1.0 + EPS) + diff.abs() * EPS {
            return Ok(diff.partial_cmp(&0.0).unwrap());
        }
        // Exact representations are canonical, so equal values have equal parts.
        if let (
            Repr::Exact {
                a: a1,
                b: b1,
                c: c1,
                d: d1,
            },
            Repr::Exact {
                a: a2,
                b: b2,
                c: c2,
                d: d2,
            },
        ) = (&self.repr, &other.repr)
        {
            if d1 == d2 && a1 == a2 && b1 == b2 && c1 == c2 {
                return Ok(Ordering::Equal);
            }
        }
        Ok(self.sub_inner(other).exact_signum())
    }

    fn exact_signum(&self) -> Ordering {
        match &self.repr {
            Repr::Exact { a, b, d, .. } => exact_sign(a, b, *d),
            Repr::Approx { .. } => self.signum(),
        }
    }

    /// Like [`Scalar::try_cmp`] but panics on incompatible operands.
    pub fn compare(&self, other: &Scalar) -> Ordering {
        match self.try_cmp(other) {
            Ok(o) => o,
            Err(e) => panic!("{e}: {self} and {other}"),
        }
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other.compare(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other.compare(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Panics on zero.
    pub fn recip(&self) -> Scalar {
        match &self.repr {
            Repr::Exact { a, b, c, d } => {
                // c / (a + b sqrt d) = c (a - b sqrt d) / (a^2 - b^2 d)
                let norm = a * a - b * b * IBig::from(*d);
                Scalar::exact(c * a, -(c * b), norm, *d)
            }
            Repr::Approx { tol } => Scalar::approx(1.0 / self.approx, *tol),
        }
    }

    /// Exact floor. For irrational values `b*sqrt(d)` is bracketed between
    /// consecutive integers with an integer square root.
    pub fn floor(&self) -> IBig {
        if self.is_exact() {
            let margin = self.err + self.approx.abs() * EPS + TINY;
            let lo = (self.approx - margin).floor();
            if lo == (self.approx + margin).floor() && lo.abs() < 1e15 {
                return IBig::from(lo as i64);
            }
        }
        match &self.repr {
            Repr::Exact { a, b, c, d } => {
                let numer = match sign_of(b) {
                    Ordering::Equal => a.clone(),
                    sb => {
                        // b sqrt(d) lies strictly between s and s + 1 in absolute value.
                        let s = IBig::from((b * b * IBig::from(*d)).unsigned_abs().sqrt());
                        if sb == Ordering::Greater {
                            a + s
                        } else {
                            a - s - IBig::ONE
                        }
                    }
                };
                (&numer).div_euclid(c)
            }
            Repr::Approx { tol } => {
                let nearest = self.approx.round();
                let f = if (self.approx - nearest).abs() <= *tol {
                    nearest
                } else {
                    self.approx.floor()
                };
                IBig::from(f as i64)
            }
        }
    }

    /// Fractional part `x - floor(x)`, in `[0, 1)`.
    pub fn frac(&self) -> Scalar {
        match &self.repr {
            Repr::Approx { tol } => {
                let f = self.approx - self.floor().to_f64().value();
                Scalar::approx(if f < 0.0 { 0.0 } else { f }, *tol)
            }
            _ => self - &Scalar::from(self.floor()),
        }
    }

    /// Distance to the nearest integer, `min({x}, 1 - {x})`, in `[0, 1/2]`.
    pub fn nearest_int_dist(&self) -> Scalar {
        let f = self.frac();
        let g = &Scalar::one() - &f;
        f.min(g)
    }

    pub fn is_integer(&self) -> bool {
        self.frac().is_zero()
    }

    fn neg_inner(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Exact { a, b, c, d } => Repr::Exact {
                a: -a,
                b: -b,
                c: c.clone(),
                d: *d,
            },
            Repr::Approx { tol } => Repr::Approx { tol: *tol },
        };
        Scalar {
            repr,
            approx: -self.approx,
            err: self.err,
        }
    }

    fn sub_inner(&self, other: &Scalar) -> Scalar {
        self.add_inner(&other.neg_inner())
    }

    fn add_inner(&self, other: &Scalar) -> Scalar {
        self.expect_compatible(other);
        if let Some(tol) = approx_tol(self, other) {
            return Scalar::approx(self.approx + other.approx, tol);
        }
        let (
            Repr::Exact {
                a: a1,
                b: b1,
                c: c1,
                d: d1,
            },
            Repr::Exact {
                a: a2,
                b: b2,
                c: c2,
                d: d2,
            },
        ) = (&self.repr, &other.repr)
        else {
            unreachable!()
        };
        let d = (*d1).max(*d2);
        if c1 == c2 {
            Scalar::exact(a1 + a2, b1 + b2, c1.clone(), d)
        } else {
            Scalar::exact(a1 * c2 + a2 * c1, b1 * c2 + b2 * c1, c1 * c2, d)
        }
    }

    fn mul_inner(&self, other: &Scalar) -> Scalar {
        self.expect_compatible(other);
        if let Some(tol) = approx_tol(self, other) {
            return Scalar::approx(self.approx * other.approx, tol);
        }
        let (
            Repr::Exact {
                a: a1,
                b: b1,
                c: c1,
                d: d1,
            },
            Repr::Exact {
                a: a2,
                b: b2,
                c: c2,
                d: d2,
            },
        ) = (&self.repr, &other.repr)
        else {
            unreachable!()
        };
        let d = (*d1).max(*d2);
        let c = c1 * c2;
        if b1.is_zero() {
            Scalar::exact(a1 * a2, a1 * b2, c, d)
        } else if b2.is_zero() {
            Scalar::exact(a1 * a2, b1 * a2, c, d)
        } else {
            Scalar::exact(a1 * a2 + b1 * b2 * IBig::from(d), a1 * b2 + a2 * b1, c, d)
        }
    }
}

fn approx_tol(x: &Scalar, y: &Scalar) -> Option<f64> {
    match (x.tolerance(), y.tolerance()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(0.0).max(b.unwrap_or(0.0))),
    }
}

fn to_f64_scaled(x: &IBig, shift: usize) -> f64 {
    if shift == 0 {
        x.to_f64().value()
    } else {
        (x >> shift).to_f64().value()
    }
}

/// Float value of `(a + b*sqrt(d)) / c` and a bound on its error.
fn approximate(a: &IBig, b: &IBig, c: &IBig, d: u64) -> (f64, f64) {
    // Scale huge operands down so the conversions stay finite.
    let bits = a
        .unsigned_abs()
        .bit_len()
        .max(b.unsigned_abs().bit_len())
        .max(c.unsigned_abs().bit_len());
    let shift = bits.saturating_sub(960);
    let af = to_f64_scaled(a, shift);
    let bf = to_f64_scaled(b, shift) * (d as f64).sqrt();
    let cf = to_f64_scaled(c, shift);
    let approx = (af + bf) / cf;
    let mut err = (af.abs() + bf.abs()) / cf * 3.0 * EPS + TINY;
    if shift > 0 {
        // Truncated low bits perturb each operand by at most one unit.
        err += (2.0 + (d as f64).sqrt()) / cf.abs() * (1.0 + approx.abs());
    }
    if approx.is_finite() && err.is_finite() {
        (approx, err)
    } else {
        (approx, f64::INFINITY)
    }
}

fn exact_sign(a: &IBig, b: &IBig, d: u64) -> Ordering {
    let sa = sign_of(a);
    let sb = sign_of(b);
    if sb == Ordering::Equal || sa == sb {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    // Opposite signs: whichever of a^2 and b^2 d is larger wins. They are
    // never equal because sqrt(d) is irrational.
    if a * a > b * b * IBig::from(d) {
        sa
    } else {
        sb
    }
}

/// Splits `n = outside^2 * core` with `core` square-free.
pub(crate) fn square_free_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut outside = 1u64;
    let mut core = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        outside *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += 1;
    }
    (outside, core * rest)
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_inner()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_inner()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| x.add_inner(y));
forward_binop!(Sub, sub, |x, y| x.sub_inner(y));
forward_binop!(Mul, mul, |x, y| x.mul_inner(y));
forward_binop!(Div, div, |x, y| x.mul_inner(&y.recip()));

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<IBig> for Scalar {
    fn from(n: IBig) -> Scalar {
        Scalar::fraction(n, IBig::ONE)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.try_cmp(other) == Ok(Ordering::Equal)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.repr {
            Repr::Exact { a, b, c, d } => {
                0u8.hash(state);
                a.hash(state);
                b.hash(state);
                c.hash(state);
                d.hash(state);
            }
            // Tolerance equality is not transitive; all approximations share a bucket.
            Repr::Approx { .. } => 1u8.hash(state),
        }
    }
}

/// Serialization: `p/q`, `(a+b*sqrt(d))/c` or `(a-b*sqrt(d))/c` in lowest
/// terms, or `~v±t` for approximations.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Exact { a, c, d: 1, .. } => write!(f, "{a}/{c}"),
            Repr::Exact { a, b, c, d } => {
                let sign = if sign_of(b) == Ordering::Less {
                    '-'
                } else {
                    '+'
                };
                write!(f, "({a}{sign}{}*sqrt({d}))/{c}", b.unsigned_abs())
            }
            Repr::Approx { tol } => write!(f, "~{:?}±{:?}", self.approx, tol),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{:.6})", self.approx)
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    /// Parses the serialization produced by `Display`.
    fn from_str(s: &str) -> Result<Scalar, ParseError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('~') {
            let (value, tol) = rest
                .split_once('±')
                .or_else(|| rest.split_once("+-"))
                .ok_or_else(|| ParseError::new(0, "expected ~value±tolerance"))?;
            let value: f64 = value
                .parse()
                .map_err(|_| ParseError::new(1, "bad float value"))?;
            let tol: f64 = tol
                .parse()
                .map_err(|_| ParseError::new(s.len(), "bad tolerance"))?;
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(ParseError::new(s.len(), "tolerance must be positive"));
            }
            return Ok(Scalar::approx(value, tol));
        }
        if let Some(rest) = s.strip_prefix('(') {
            let (inner, den) = rest
                .split_once(")/")
                .ok_or_else(|| ParseError::new(0, "expected (a+b*sqrt(d))/c"))?;
            let c = parse_int(den, s.len() - den.len())?;
            let star = inner
                .find("*sqrt(")
                .ok_or_else(|| ParseError::new(1, "expected *sqrt("))?;
            let head = &inner[..star];
            let radicand = inner[star + 6..]
                .strip_suffix(')')
                .ok_or_else(|| ParseError::new(star + 7, "unclosed sqrt"))?;
            let split = head
                .get(1..)
                .and_then(|h| h.rfind(['+', '-']))
                .map(|i| i + 1)
                .ok_or_else(|| ParseError::new(1, "expected a+b"))?;
            let a = parse_int(&head[..split], 1)?;
            let b = parse_int(head[split..].trim_start_matches('+'), split + 1)?;
            let d: u64 = radicand
                .parse()
                .map_err(|_| ParseError::new(star + 7, "bad radicand"))?;
            if c.is_zero() {
                return Err(ParseError::new(s.len(), "zero denominator"));
            }
            return Ok(Scalar::from_parts(a, b, c, d));
        }
        let (num, den) = s.split_once('/').unwrap_or((s, "1"));
        let n = parse_int(num, 0)?;
        let d = parse_int(den, num.len() + 1)?;
        if d.is_zero() {
            return Err(ParseError::new(s.len(), "zero denominator"));
        }
        Ok(Scalar::fraction(n, d))
    }
}

fn parse_int(s: &str, position: usize) -> Result<IBig, ParseError> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    IBig::from_str_radix(t, 10)
        .map_err(|_| ParseError::new(position, format!("expected an integer, found {s:?}")))
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn quad(an: i64, ad: i64, bn: i64, bd: i64, d: u64) -> Scalar {
        &Scalar::ratio(an, ad) + &(&Scalar::ratio(bn, bd) * &Scalar::sqrt_int(d))
    }

    #[test]
    fn frac_examples() {
        assert_eq!(Scalar::ratio(7, 3).frac(), Scalar::ratio(1, 3));
        let x = Scalar::sqrt_int(3) - Scalar::one();
        assert_eq!(x.frac(), x);
        assert_eq!(Scalar::ratio(-1, 4).frac(), Scalar::ratio(3, 4));
    }

    #[test]
    fn nearest_int_dist_examples() {
        assert_eq!(
            Scalar::ratio(3, 10).nearest_int_dist(),
            Scalar::ratio(3, 10)
        );
        assert_eq!(Scalar::ratio(5, 2).nearest_int_dist(), Scalar::half());
        assert_eq!(
            Scalar::ratio(7, 10).nearest_int_dist(),
            Scalar::ratio(3, 10)
        );
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(
            Scalar::ratio(1, 3).try_cmp(&Scalar::ratio(2, 6)),
            Ok(Ordering::Equal)
        );
        let alpha = Scalar::sqrt_int(10) / Scalar::int(7);
        assert_eq!(
            alpha.try_cmp(&Scalar::approx(0.4518, 1e-6)),
            Err(Error::MixedExactness)
        );
        let phi = Scalar::phi();
        let lhs = (Scalar::int(3) - Scalar::sqrt_int(5)) / Scalar::int(2);
        assert_eq!(lhs.try_cmp(&(&phi * &phi)), Ok(Ordering::Equal));
    }

    #[test]
    fn mixing_fields_is_rejected() {
        let r2 = Scalar::sqrt_int(2);
        let r3 = Scalar::sqrt_int(3);
        assert_eq!(r2.try_cmp(&r3), Err(Error::IncompatibleField(2, 3)));
        assert!(std::panic::catch_unwind(|| &r2 + &r3).is_err());
        // Rationals mix with either world.
        assert_eq!(&r2 * &Scalar::ratio(1, 2), Scalar::half() * r2.clone());
        assert!(!(Scalar::approx(0.25, 1e-9) + Scalar::half()).is_exact());
    }

    #[test]
    fn radicands_are_reduced() {
        let x = Scalar::sqrt_int(12);
        assert_eq!(x.field(), Field::Quadratic(3));
        assert_eq!(x.to_string(), "(0+2*sqrt(3))/1");
        assert_eq!(Scalar::sqrt_int(49), Scalar::int(7));
        assert!(Scalar::sqrt_int(49).is_rational());
    }

    #[test]
    fn floor_of_quadratics() {
        assert_eq!(Scalar::sqrt_int(2).floor(), IBig::from(1));
        assert_eq!((-Scalar::sqrt_int(2)).floor(), IBig::from(-2));
        assert_eq!(
            (Scalar::sqrt_int(10) * Scalar::int(1000)).floor(),
            IBig::from(3162)
        );
        let x = (Scalar::int(-7) + Scalar::sqrt_int(50)) / Scalar::int(3); // (-7 + 5 sqrt 2)/3 ~ 0.0237
        assert_eq!(x.floor(), IBig::ZERO);
        assert_eq!(Scalar::int(3).floor(), IBig::from(3));
        assert_eq!(Scalar::ratio(-7, 2).floor(), IBig::from(-4));
    }

    #[test]
    fn floor_without_float_help() {
        // 10^40 sqrt(2) is far beyond f64 integer precision.
        let big = Scalar::from(IBig::from(10).pow(40));
        let x = &big * &Scalar::sqrt_int(2);
        let f = x.floor();
        assert_eq!(f.to_string(), "14142135623730950488016887242096980785696");
        assert!(Scalar::from(f.clone()) < x && x < Scalar::from(f + IBig::ONE));
    }

    #[test]
    fn serialization_forms() {
        assert_eq!(Scalar::ratio(-6, 4).to_string(), "-3/2");
        assert_eq!(Scalar::int(3).to_string(), "3/1");
        let phi = Scalar::phi();
        assert_eq!(phi.to_string(), "(-1+1*sqrt(5))/2");
        assert_eq!((Scalar::one() - phi).to_string(), "(3-1*sqrt(5))/2");
        assert_eq!(Scalar::approx(0.1405, 1e-9).to_string(), "~0.1405±1e-9");
        for s in [
            "-3/2",
            "(3-1*sqrt(5))/2",
            "(0+1*sqrt(10))/7",
            "~0.1405±1e-9",
            "(-4+3*sqrt(2))/1",
        ] {
            assert_eq!(q(s).to_string(), s);
        }
        assert!("(1+2*sqrt(3))/0".parse::<Scalar>().is_err());
        assert!("1/x".parse::<Scalar>().is_err());
    }

    #[test]
    fn approximations_compare_within_tolerance() {
        let a = Scalar::approx(0.5, 1e-9);
        let b = Scalar::approx(0.5 + 5e-10, 1e-9);
        assert_eq!(a, b);
        assert_eq!(a.try_cmp(&Scalar::half()), Ok(Ordering::Equal));
        assert!(Scalar::approx(0.5 + 1e-6, 1e-9) > Scalar::half());
    }

    #[test]
    fn cancellation_is_resolved_exactly() {
        // Agrees with the float approximation to ~16 digits but is not equal.
        let big = Scalar::int(1_000_000_007);
        let x = &big * &Scalar::sqrt_int(2);
        let y = &x + &(Scalar::sqrt_int(2) * Scalar::ratio(1, 10_i64.pow(15)));
        assert_eq!(x.try_cmp(&y), Ok(Ordering::Less));
        assert!(!(&y - &x).is_zero());
    }

    fn small_exact() -> impl Strategy<Value = Scalar> {
        (-30i64..30, 1i64..12, -30i64..30, 1i64..12)
            .prop_map(|(an, ad, bn, bd)| quad(an, ad, bn, bd, 7))
    }

    proptest! {
        #[test]
        fn field_axioms(x in small_exact(), y in small_exact(), z in small_exact()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
        }

        #[test]
        fn frac_is_periodic(x in small_exact(), n in -50i64..50) {
            let shifted = &x + &Scalar::int(n);
            prop_assert_eq!(shifted.frac(), x.frac());
            let f = x.frac();
            prop_assert!(f >= Scalar::zero() && f < Scalar::one());
        }

        #[test]
        fn nearest_int_dist_symmetries(x in small_exact(), n in -50i64..50) {
            let d = x.nearest_int_dist();
            prop_assert_eq!(&(-&x).nearest_int_dist(), &d);
            prop_assert_eq!(&(&x + &Scalar::int(n)).nearest_int_dist(), &d);
            prop_assert!(d <= Scalar::half());
        }

        #[test]
        fn irrationals_never_equal_rationals(bn in 1i64..40, an in -40i64..40, rn in -40i64..40, rd in 1i64..9) {
            let x = quad(an, 1, bn, 1, 11);
            prop_assert_ne!(x.try_cmp(&Scalar::ratio(rn, rd)).unwrap(), Ordering::Equal);
        }

        #[test]
        fn text_round_trip(x in small_exact()) {
            let s = x.to_string();
            let back: Scalar = s.parse().unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(back.to_string(), s);
        }

        #[test]
        fn filtered_order_matches_exact_sign(x in small_exact(), y in small_exact()) {
            prop_assert_eq!(x.compare(&y), (&x - &y).exact_signum());
        }

        #[test]
        fn floor_brackets_value(x in small_exact()) {
            let f = Scalar::from(x.floor());
            prop_assert!(f.exact_cmp(&x) != Ordering::Greater);
            prop_assert!(x.exact_cmp(&(&f + &Scalar::one())) == Ordering::Less);
        }
    }

    impl Scalar {
        fn exact_cmp(&self, other: &Scalar) -> Ordering {
            (self - other).exact_signum()
        }
    }
}
