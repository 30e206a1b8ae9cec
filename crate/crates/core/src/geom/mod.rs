//! Exact planar geometry over the rationals.
//!
//! Every predicate in this module is decided with arbitrary-precision
//! integers or rationals. Floating point appears nowhere on a decision path.

mod body;
mod interval;
mod region;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use body::{cone_rays, Circle, ConeRays, ConvexBody, ConvexPolygon, RayContact};
pub(crate) use body::convex_hull;
pub use interval::{integer_in_interval, ray_body_interval, Quadratic, ScalingInterval};
pub use region::{lattice_points_in, ConvexRegion, HalfPlane, LatticeRegion};


/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a terminating decimal such as `2.65`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(num, den));
    }
    let num: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(num))
}

/// `p` when the denominator is one, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub(crate) fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub(crate) fn ceil_int(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub(crate) fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Exact square root of a nonnegative rational when it is a rational square.
pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Rational bounds `lo <= sqrt(q) <= hi` with `hi - lo <= 2^-bits`.
pub(crate) fn sqrt_bounds(q: &Rational, bits: usize) -> (Rational, Rational) {
    assert!(!q.is_negative(), "square root of a negative rational");
    if let Some(exact) = rational_sqrt(q) {
        return (exact.clone(), exact);
    }
    // sqrt(n/d) = sqrt(n*d*4^bits) / (d*2^bits)
    let scale = BigInt::one() << bits;
    let radicand = q.numer() * q.denom() * &scale * &scale;
    let root = radicand.sqrt();
    let den = q.denom() * &scale;
    (
        Rational::new(root.clone(), den.clone()),
        Rational::new(root + 1, den),
    )
}

pub(crate) fn to_u64(n: &BigInt) -> u64 {
    n.to_u64()
        .unwrap_or_else(|| panic!("integer {n} does not fit the lattice coordinate range"))
}

/// A point of the rational plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Point) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn scale_int(&self, k: u64) -> Point {
        self.scale(&Rational::from_integer(BigInt::from(k)))
    }

    /// Least positive integer `c` with `c * self` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    /// The lattice point equal to `self`, if integral and nonnegative.
    pub fn to_lattice(&self) -> Option<LatticePoint> {
        if !self.x.is_integer() || !self.y.is_integer() {
            return None;
        }
        let x = self.x.to_integer().to_u64()?;
        let y = self.y.to_integer().to_u64()?;
        Some(LatticePoint::new(x, y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

impl Mul<&Rational> for &Point {
    type Output = Point;
    fn mul(self, rhs: &Rational) -> Point {
        self.scale(rhs)
    }
}

/// A point of N^2. Serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u64; 2]", into = "[u64; 2]")]
pub struct LatticePoint {
    pub x: u64,
    pub y: u64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: u64, y: u64) -> Self {
        Self { x, y }
    }

    pub fn is_origin(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `self - other` when the difference stays in N^2.
    pub fn checked_sub(&self, other: &LatticePoint) -> Option<LatticePoint> {
        Some(LatticePoint::new(
            self.x.checked_sub(other.x)?,
            self.y.checked_sub(other.y)?,
        ))
    }

    pub fn scale(&self, k: u64) -> LatticePoint {
        LatticePoint::new(self.x * k, self.y * k)
    }

    pub fn norm_sq(&self) -> u128 {
        let (x, y) = (self.x as u128, self.y as u128);
        x * x + y * y
    }

    pub fn to_point(&self) -> Point {
        Point::new(
            Rational::from_integer(BigInt::from(self.x)),
            Rational::from_integer(BigInt::from(self.y)),
        )
    }

    /// Cross product with a direction, `d.dx * y - d.dy * x` sign convention
    /// of `d x self`.
    pub fn cross_from(&self, d: &Direction) -> i128 {
        d.dx as i128 * self.y as i128 - d.dy as i128 * self.x as i128
    }
}

impl From<[u64; 2]> for LatticePoint {
    fn from([x, y]: [u64; 2]) -> Self {
        Self::new(x, y)
    }
}

impl From<LatticePoint> for [u64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.x, p.y]
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Primitive nonzero integer direction in the closed first quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u64; 2]", into = "[u64; 2]")]
pub struct Direction {
    dx: u64,
    dy: u64,
}

impl Direction {
    pub const X_AXIS: Direction = Direction { dx: 1, dy: 0 };
    pub const Y_AXIS: Direction = Direction { dx: 0, dy: 1 };

    pub fn dx(&self) -> u64 {
        self.dx
    }

    pub fn dy(&self) -> u64 {
        self.dy
    }

    pub fn as_lattice(&self) -> LatticePoint {
        LatticePoint::new(self.dx, self.dy)
    }

    pub fn as_point(&self) -> Point {
        self.as_lattice().to_point()
    }

    pub fn norm_sq(&self) -> u128 {
        self.as_lattice().norm_sq()
    }

    /// Direction of the ray from the origin through a nonzero rational point
    /// of the closed quadrant.
    pub fn through(p: &Point) -> Result<Direction> {
        if p.x.is_negative() || p.y.is_negative() {
            return Err(Error::InvalidBody(format!("point {p} leaves the first quadrant")));
        }
        let c = p.denominator_lcm();
        let x = (&p.x * Rational::from_integer(c.clone())).to_integer();
        let y = (&p.y * Rational::from_integer(c)).to_integer();
        let g = x.gcd(&y);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Direction {
            dx: to_u64(&(x / &g)),
            dy: to_u64(&(y / g)),
        })
    }

    /// Sign of `self x other`: positive when `other` has the greater slope.
    pub fn cross(&self, other: &Direction) -> i128 {
        self.dx as i128 * other.dy as i128 - self.dy as i128 * other.dx as i128
    }

    /// Sign of `self x p` for a rational point.
    pub fn cross_point(&self, p: &Point) -> Rational {
        self.as_point().cross(p)
    }

    /// The parameter `t` with `p = t * self`, assuming `p` lies on the ray.
    pub fn parameter_of(&self, p: &Point) -> Rational {
        if self.dx != 0 {
            &p.x / int(self.dx as i64)
        } else {
            &p.y / int(self.dy as i64)
        }
    }
}

impl TryFrom<[u64; 2]> for Direction {
    type Error = Error;
    fn try_from([dx, dy]: [u64; 2]) -> Result<Self> {
        reduce_primitive(dx as i64, dy as i64)
    }
}

impl From<Direction> for [u64; 2] {
    fn from(d: Direction) -> Self {
        [d.dx, d.dy]
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

/// Divides a nonzero first-quadrant integer vector by the gcd of its entries.
pub fn reduce_primitive(dx: i64, dy: i64) -> Result<Direction> {
    if dx < 0 || dy < 0 {
        return Err(Error::NegativeDirection(dx, dy));
    }
    let g = dx.gcd(&dy);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(Direction {
        dx: (dx / g) as u64,
        dy: (dy / g) as u64,
    })
}

/// The line `a x + b y = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineIntersection {
    Point(Point),
    Parallel { coincident: bool },
}

impl Line {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateLine);
        }
        Ok(Self { a, b, c })
    }

    pub fn through(p: &Point, q: &Point) -> Result<Self> {
        Self::with_direction(p, &(q - p))
    }

    pub fn with_direction(p: &Point, d: &Point) -> Result<Self> {
        // d x (X - p) = 0  <=>  -d.y X.x + d.x X.y = -d.y p.x + d.x p.y
        let a = -&d.y;
        let b = d.x.clone();
        let c = &a * &p.x + &b * &p.y;
        Self::new(a, b, c)
    }

    /// Line through the origin spanned by a direction.
    pub fn of_ray(d: &Direction) -> Self {
        Self::with_direction(&Point::origin(), &d.as_point()).expect("directions are nonzero")
    }

    pub fn eval(&self, p: &Point) -> Rational {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    pub fn is_parallel_to(&self, other: &Line) -> bool {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }
}

pub fn line_intersect(l1: &Line, l2: &Line) -> LineIntersection {
    let det = &l1.a * &l2.b - &l1.b * &l2.a;
    if det.is_zero() {
        // Proportional normals; coincident when the constants scale alike.
        let coincident = (&l1.a * &l2.c - &l2.a * &l1.c).is_zero()
            && (&l1.b * &l2.c - &l2.b * &l1.c).is_zero();
        return LineIntersection::Parallel { coincident };
    }
    let x = (&l1.c * &l2.b - &l1.b * &l2.c) / &det;
    let y = (&l1.a * &l2.c - &l1.c * &l2.a) / det;
    LineIntersection::Point(Point::new(x, y))
}

/// Intersection of the closed segments `[p0, p1]` and `[q0, q1]` when it is a
/// single point. Collinear overlaps return `None`.
pub fn segment_intersection(p0: &Point, p1: &Point, q0: &Point, q1: &Point) -> Option<Point> {
    let r = p1 - p0;
    let s = q1 - q0;
    let denom = r.cross(&s);
    if denom.is_zero() {
        return None;
    }
    let qp = q0 - p0;
    let t = qp.cross(&s) / &denom;
    let u = qp.cross(&r) / &denom;
    let unit = Rational::one();
    let inside = |v: &Rational| !v.is_negative() && *v <= unit;
    (inside(&t) && inside(&u)).then(|| p0 + &r.scale(&t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_primitive_examples() {
        assert_eq!(reduce_primitive(4, 2).unwrap(), Direction { dx: 2, dy: 1 });
        assert_eq!(reduce_primitive(0, 5).unwrap(), Direction::Y_AXIS);
        assert_eq!(reduce_primitive(7, 3).unwrap(), Direction { dx: 7, dy: 3 });
        assert_eq!(reduce_primitive(0, 0), Err(Error::ZeroVector));
        assert!(matches!(reduce_primitive(-1, 2), Err(Error::NegativeDirection(..))));
    }

    #[test]
    fn line_intersect_examples() {
        let x1 = Line::new(int(1), int(0), int(1)).unwrap();
        let y2 = Line::new(int(0), int(1), int(2)).unwrap();
        assert_eq!(line_intersect(&x1, &y2), LineIntersection::Point(Point::from_ints(1, 2)));

        let y0 = Line::new(int(0), int(1), int(0)).unwrap();
        let y1 = Line::new(int(0), int(1), int(1)).unwrap();
        assert_eq!(line_intersect(&y0, &y1), LineIntersection::Parallel { coincident: false });
        let y0_scaled = Line::new(int(0), int(3), int(0)).unwrap();
        assert_eq!(line_intersect(&y0, &y0_scaled), LineIntersection::Parallel { coincident: true });

        let diag = Line::new(int(-1), int(1), int(0)).unwrap();
        let anti = Line::new(int(1), int(1), int(3)).unwrap();
        assert_eq!(
            line_intersect(&diag, &anti),
            LineIntersection::Point(Point::new(rat(3, 2), rat(3, 2)))
        );
    }

    #[test]
    fn degenerate_line_rejected() {
        assert_eq!(Line::new(int(0), int(0), int(1)), Err(Error::DegenerateLine));
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("7/4").unwrap(), rat(7, 4));
        assert_eq!(parse_rational("14/8").unwrap(), rat(7, 4));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("2.65").unwrap(), rat(53, 20));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = int(2);
        let (lo, hi) = sqrt_bounds(&two, 20);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!(&hi - &lo <= rat(1, 1 << 20));
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
    }

    #[test]
    fn segment_intersection_cases() {
        let a = Point::from_ints(0, 0);
        let b = Point::from_ints(2, 2);
        let c = Point::from_ints(0, 2);
        let d = Point::from_ints(2, 0);
        assert_eq!(segment_intersection(&a, &b, &c, &d), Some(Point::from_ints(1, 1)));
        let e = Point::from_ints(3, 0);
        let f = Point::from_ints(3, 3);
        assert_eq!(segment_intersection(&a, &b, &e, &f), None);
    }

    #[test]
    fn direction_through_rational_point() {
        let p = Point::new(rat(8, 5), rat(6, 5));
        assert_eq!(Direction::through(&p).unwrap(), reduce_primitive(4, 3).unwrap());
        assert_eq!(Direction::through(&Point::origin()), Err(Error::ZeroVector));
    }
}
