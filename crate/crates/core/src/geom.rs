//! Planar incidence geometry over exact rationals or `f64`.
//!
//! Every operation is generic over [`Scalar`], so the same code serves the
//! exact symbolic checks and the floating-point construction path. Mode is
//! fixed by the type parameter; values of the two modes never mix.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default incidence tolerance for float mode, in sheet units.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Below this magnitude a float determinant is treated as zero.
const FLOAT_DEGENERACY: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("line coefficients a and b are both zero")]
    DegenerateLine,
    #[error("value has no exact square root in this number mode")]
    NotRepresentable,
}

/// Number mode for geometry: exact rationals or `f64`.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    const EXACT: bool;

    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// Square root when it is representable in this mode.
    fn sqrt(&self) -> Option<Self>;

    /// Zero test used for degeneracy decisions (parallel lines, equal points).
    fn is_negligible(&self) -> bool;

    /// `|self| <= tol` in float mode; exact zero test in exact mode.
    fn within(&self, tol: &Self) -> bool;

    /// Brings `(a, b, c)` to the mode's canonical line form.
    fn canonical_line(a: Self, b: Self, c: Self) -> Result<(Self, Self, Self), GeomError>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn within(&self, _tol: &Self) -> bool {
        self.is_zero()
    }

    fn canonical_line(a: Self, b: Self, c: Self) -> Result<(Self, Self, Self), GeomError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::DegenerateLine);
        }
        let lcm = [&a, &b, &c]
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = [&a, &b, &c]
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        let mut gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let leading = if ints[0].is_zero() {
            &ints[1]
        } else {
            &ints[0]
        };
        if leading.is_negative() {
            gcd = -gcd;
        }
        let mut it = ints
            .into_iter()
            .map(|v| BigRational::from_integer(v / &gcd));
        Ok((it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn is_negligible(&self) -> bool {
        f64::abs(*self) <= FLOAT_DEGENERACY
    }

    fn within(&self, tol: &Self) -> bool {
        f64::abs(*self) <= *tol
    }

    fn canonical_line(a: Self, b: Self, c: Self) -> Result<(Self, Self, Self), GeomError> {
        let norm = a.hypot(b);
        if norm <= 0.0 || !norm.is_finite() || !c.is_finite() {
            return Err(GeomError::DegenerateLine);
        }
        let sign = if a > 0.0 || (a == 0.0 && b > 0.0) {
            1.0
        } else {
            -1.0
        };
        let k = sign / norm;
        Ok((a * k, b * k, c * k))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn distance_squared(&self, other: &Point<T>) -> T {
        let dx = self.x.clone() - other.x.clone();
        let dy = self.y.clone() - other.y.clone();
        dx.clone() * dx + dy.clone() * dy
    }

    pub fn distance(&self, other: &Point<T>) -> Result<T, GeomError> {
        self.distance_squared(other)
            .sqrt()
            .ok_or(GeomError::NotRepresentable)
    }

    /// Coincidence test: exact equality, or within the float degeneracy bound.
    pub fn coincides(&self, other: &Point<T>) -> bool {
        (self.x.clone() - other.x.clone()).is_negligible()
            && (self.y.clone() - other.y.clone()).is_negligible()
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl Point<f64> {
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The line `a·x + b·y + c = 0`, kept in canonical form.
///
/// Exact lines are coprime integer triples whose first nonzero coefficient is
/// positive, so structural equality is line equality. Float lines have
/// `a² + b² = 1` with the same sign convention.
#[derive(Debug, Clone, PartialEq)]
pub struct Line<T> {
    a: T,
    b: T,
    c: T,
}

impl<T: Scalar> Line<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self, GeomError> {
        let (a, b, c) = T::canonical_line(a, b, c)?;
        Ok(Line { a, b, c })
    }

    /// `x = x0`.
    pub fn vertical(x0: T) -> Self {
        Line::new(T::one(), T::zero(), -x0).expect("vertical line is never degenerate")
    }

    /// `y = y0`.
    pub fn horizontal(y0: T) -> Self {
        Line::new(T::zero(), T::one(), -y0).expect("horizontal line is never degenerate")
    }

    /// `y = slope·x + intercept`.
    pub fn from_slope_intercept(slope: T, intercept: T) -> Self {
        Line::new(slope, -T::one(), intercept).expect("b = -1 is never degenerate")
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    pub fn coefficients(&self) -> (T, T, T) {
        (self.a.clone(), self.b.clone(), self.c.clone())
    }

    /// `a·x + b·y + c` at `p` (a signed distance in float mode).
    pub fn evaluate(&self, p: &Point<T>) -> T {
        self.a.clone() * p.x.clone() + self.b.clone() * p.y.clone() + self.c.clone()
    }

    /// Unit-free direction vector `(-b, a)`.
    pub fn direction(&self) -> (T, T) {
        (-self.b.clone(), self.a.clone())
    }

    /// Two distinct points on the line.
    pub fn two_points(&self) -> (Point<T>, Point<T>) {
        if !self.b.is_zero() {
            let y_at = |x: T| -(self.a.clone() * x + self.c.clone()) / self.b.clone();
            (
                Point::new(T::zero(), y_at(T::zero())),
                Point::new(T::one(), y_at(T::one())),
            )
        } else {
            let x0 = -self.c.clone() / self.a.clone();
            (Point::new(x0.clone(), T::zero()), Point::new(x0, T::one()))
        }
    }

    pub fn is_parallel(&self, other: &Line<T>) -> bool {
        (self.a.clone() * other.b.clone() - self.b.clone() * other.a.clone()).is_negligible()
    }

    pub fn to_f64(&self) -> Line<f64> {
        Line::new(self.a.to_f64(), self.b.to_f64(), self.c.to_f64())
            .expect("canonical line converts to a valid float line")
    }
}

impl Line<f64> {
    /// Largest coefficient difference between two normalized lines, taken
    /// over both orientations. Zero iff the lines coincide.
    pub fn defect(&self, other: &Line<f64>) -> f64 {
        let d = |s: f64| {
            (self.a - s * other.a)
                .abs()
                .max((self.b - s * other.b).abs())
                .max((self.c - s * other.c).abs())
        };
        d(1.0).min(d(-1.0))
    }
}

impl<T: fmt::Display> fmt::Display for Line<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·x + {}·y + {} = 0", self.a, self.b, self.c)
    }
}

pub fn line_through<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<Line<T>, GeomError> {
    if p.coincides(q) {
        return Err(GeomError::CoincidentPoints);
    }
    let a = p.y.clone() - q.y.clone();
    let b = q.x.clone() - p.x.clone();
    let c = -(a.clone() * p.x.clone() + b.clone() * p.y.clone());
    Line::new(a, b, c)
}

/// The fold line that carries `p` onto `q`.
pub fn perpendicular_bisector<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Result<Line<T>, GeomError> {
    if p.coincides(q) {
        return Err(GeomError::CoincidentPoints);
    }
    let a = q.x.clone() - p.x.clone();
    let b = q.y.clone() - p.y.clone();
    let two = T::from_i64(2);
    let c = (p.distance_squared(&Point::origin()) - q.distance_squared(&Point::origin())) / two;
    Line::new(a, b, c)
}

pub fn midpoint<T: Scalar>(p: &Point<T>, q: &Point<T>) -> Point<T> {
    let two = T::from_i64(2);
    Point::new(
        (p.x.clone() + q.x.clone()) / two.clone(),
        (p.y.clone() + q.y.clone()) / two,
    )
}

pub fn reflect_point<T: Scalar>(p: &Point<T>, axis: &Line<T>) -> Point<T> {
    let (a, b, _) = axis.coefficients();
    let k = T::from_i64(2) * axis.evaluate(p) / (a.clone() * a.clone() + b.clone() * b.clone());
    Point::new(p.x.clone() - k.clone() * a, p.y.clone() - k * b)
}

pub fn reflect_line<T: Scalar>(l: &Line<T>, axis: &Line<T>) -> Line<T> {
    let (p, q) = l.two_points();
    line_through(&reflect_point(&p, axis), &reflect_point(&q, axis))
        .expect("reflection is injective, so distinct points stay distinct")
}

pub fn intersect<T: Scalar>(l1: &Line<T>, l2: &Line<T>) -> Result<Point<T>, GeomError> {
    let (a1, b1, c1) = l1.coefficients();
    let (a2, b2, c2) = l2.coefficients();
    let det = a1.clone() * b2.clone() - a2.clone() * b1.clone();
    if det.is_negligible() {
        return Err(GeomError::ParallelLines);
    }
    let x = (b1.clone() * c2.clone() - b2 * c1.clone()) / det.clone();
    let y = (a2 * c1 - a1 * c2) / det;
    Ok(Point::new(x, y))
}

/// Point-on-line test. Exact mode ignores `tol`.
pub fn incident<T: Scalar>(p: &Point<T>, l: &Line<T>, tol: &T) -> bool {
    normalized_value(p, l).map_or_else(|| l.evaluate(p).is_zero(), |v| v.within(tol))
}

/// Perpendicular distance from `p` to `l`.
pub fn distance<T: Scalar>(p: &Point<T>, l: &Line<T>) -> Result<T, GeomError> {
    if let Some(v) = normalized_value(p, l) {
        return Ok(v.abs());
    }
    let (a, b, _) = l.coefficients();
    let norm = (a.clone() * a + b.clone() * b)
        .sqrt()
        .ok_or(GeomError::NotRepresentable)?;
    Ok(l.evaluate(p).abs() / norm)
}

fn normalized_value<T: Scalar>(p: &Point<T>, l: &Line<T>) -> Option<T> {
    (!T::EXACT).then(|| l.evaluate(p))
}

/// Axis-aligned rectangle, used for the paper sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Rect {
    pub fn square(center: &Point<f64>, side: f64) -> Self {
        let h = side / 2.0;
        Rect {
            min_x: center.x - h,
            min_y: center.y - h,
            max_x: center.x + h,
            max_y: center.y + h,
        }
    }

    pub fn contains(&self, p: &Point<f64>, tol: f64) -> bool {
        p.x >= self.min_x - tol
            && p.x <= self.max_x + tol
            && p.y >= self.min_y - tol
            && p.y <= self.max_y + tol
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.min_x <= other.min_x
            && self.min_y <= other.min_y
            && self.max_x >= other.max_x
            && self.max_y >= other.max_y
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    /// The part of `line` inside the rectangle, if it crosses it.
    pub fn clip(&self, line: &Line<f64>) -> Option<(Point<f64>, Point<f64>)> {
        let (a, b, c) = line.coefficients();
        let mut hits: Vec<Point<f64>> = Vec::with_capacity(4);
        let eps = 1e-12;
        if b.abs() > eps {
            for x in [self.min_x, self.max_x] {
                let y = -(a * x + c) / b;
                if y >= self.min_y - eps && y <= self.max_y + eps {
                    hits.push(Point::new(x, y));
                }
            }
        }
        if a.abs() > eps {
            for y in [self.min_y, self.max_y] {
                let x = -(b * y + c) / a;
                if x >= self.min_x - eps && x <= self.max_x + eps {
                    hits.push(Point::new(x, y));
                }
            }
        }
        let first = hits.first()?.clone();
        let far = hits
            .iter()
            .max_by(|p, q| {
                p.distance_squared(&first)
                    .total_cmp(&q.distance_squared(&first))
            })?
            .clone();
        (far.distance_squared(&first) > eps).then_some((first, far))
    }
}

/// Exact rational from a decimal or `p/q` literal, e.g. `"-5/2"`, `"1.25"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Exact `p/q` text for a rational, or the bare integer.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The simplest rational within `tol` of `x` (continued-fraction walk).
pub fn snap_rational(x: f64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let exact = BigRational::from_float(x)?;
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    for _ in 0..64 {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        let approx = BigRational::new(h2.clone(), k2.clone());
        if ToPrimitive::to_f64(&Signed::abs(&(&approx - &exact))).unwrap_or(f64::INFINITY) <= tol {
            return Some(approx);
        }
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            return Some(approx);
        }
        rest = frac.recip();
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    Some(exact)
}
