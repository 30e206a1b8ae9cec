use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{
    interval::least_nonpositive_from_one, int, lcm_denominators, rational_sqrt, sqrt_bounds,
    Direction, Line, Point, Rational,
};
use crate::error::{Error, Result};
use crate::geom::LatticePoint;

const FAST_COEFF: i128 = 1 << 62;
const FAST_COORD: u64 = 1 << 62;

/// Half-plane `a x + b y <= c` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntConstraint {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    fast: Option<(i128, i128, i128)>,
}

impl IntConstraint {
    pub fn from_line(line: &Line) -> Self {
        let scale = lcm_denominators([&line.a, &line.b, &line.c]);
        let to_int = |q: &Rational| (q * Rational::from_integer(scale.clone())).to_integer();
        let (mut a, mut b, mut c) = (to_int(&line.a), to_int(&line.b), to_int(&line.c));
        let g = a.gcd(&b).gcd(&c);
        if !g.is_zero() && !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        let small = |n: &BigInt| n.to_i128().filter(|v| v.abs() < FAST_COEFF);
        let fast = match (small(&a), small(&b), small(&c)) {
            (Some(a), Some(b), Some(c)) => Some((a, b, c)),
            _ => None,
        };
        Self { a, b, c, fast }
    }

    fn fast_at(&self, p: &LatticePoint) -> Option<(i128, i128, i128)> {
        if p.x >= FAST_COORD || p.y >= FAST_COORD {
            return None;
        }
        self.fast
    }

    /// `a x + b y` at a lattice point, returned with `c`, as big integers.
    fn big_at(&self, p: &LatticePoint) -> (BigInt, &BigInt) {
        (&self.a * BigInt::from(p.x) + &self.b * BigInt::from(p.y), &self.c)
    }
}

/// Disc with center `(cx/d, cy/d)` and radius `r/d`, all integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntCircle {
    pub cx: BigInt,
    pub cy: BigInt,
    pub r: BigInt,
    pub d: BigInt,
    fast: Option<[i128; 4]>,
}

const CIRCLE_FAST_COEFF: i128 = 1 << 24;
const CIRCLE_FAST_COORD: u64 = 1 << 36;

impl IntCircle {
    fn new(center: &Point, radius: &Rational) -> Self {
        let d = lcm_denominators([&center.x, &center.y, radius]);
        let to_int = |q: &Rational| (q * Rational::from_integer(d.clone())).to_integer();
        let (cx, cy, r) = (to_int(&center.x), to_int(&center.y), to_int(radius));
        let small = |n: &BigInt| n.to_i128().filter(|v| v.abs() < CIRCLE_FAST_COEFF);
        let fast = match (small(&cx), small(&cy), small(&r), small(&d)) {
            (Some(cx), Some(cy), Some(r), Some(d)) => Some([cx, cy, r, d]),
            _ => None,
        };
        Self { cx, cy, r, d, fast }
    }

    fn contains_scaled(&self, p: &LatticePoint, k: u64) -> bool {
        if let Some([cx, cy, r, d]) = self.fast {
            if p.x < CIRCLE_FAST_COORD && p.y < CIRCLE_FAST_COORD && k < CIRCLE_FAST_COORD {
                let k = k as i128;
                let dx = d * p.x as i128 - k * cx;
                let dy = d * p.y as i128 - k * cy;
                return dx * dx + dy * dy <= (k * r) * (k * r);
            }
        }
        let k = BigInt::from(k);
        let dx = &self.d * BigInt::from(p.x) - &k * &self.cx;
        let dy = &self.d * BigInt::from(p.y) - &k * &self.cy;
        let kr = &k * &self.r;
        &dx * &dx + &dy * &dy <= &kr * &kr
    }

    /// Least `k >= 1` with `p` in the k-th dilation.
    fn dilation_index(&self, p: &LatticePoint) -> Option<BigInt> {
        let (x, y) = (BigInt::from(p.x), BigInt::from(p.y));
        let a = &self.cx * &self.cx + &self.cy * &self.cy - &self.r * &self.r;
        let b = -(BigInt::from(2) * &self.d * (&x * &self.cx + &y * &self.cy));
        let c = &self.d * &self.d * (&x * &x + &y * &y);
        least_nonpositive_from_one(&a, &b, &c)
    }
}

/// A compact convex polygon with vertices in counterclockwise order.
///
/// Construction merges repeated and collinear vertices, so no three
/// consecutive vertices are collinear. Polygons with fewer than three
/// vertices (points and segments) are representable; the semigroup layer
/// rejects them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    constraints: Vec<IntConstraint>,
}

impl ConvexPolygon {
    /// Accepts vertices in either orientation; rejects non-convex rings and
    /// points outside the closed first quadrant.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidBody("polygon needs at least one vertex".into()));
        }
        if let Some(p) = points.iter().find(|p| p.x.is_negative() || p.y.is_negative()) {
            return Err(Error::InvalidBody(format!("vertex {p} leaves the first quadrant")));
        }
        let hull = convex_hull(&points);
        if hull.len() >= 3 {
            let ring = normalize_ring(&points);
            if !same_cycle(&ring, &hull) {
                return Err(Error::InvalidBody("vertices do not form a convex polygon".into()));
            }
            // keep the caller's starting vertex when it survived normalisation
            let vertices = ring;
            let constraints = edge_constraints(&vertices);
            return Ok(Self { vertices, constraints });
        }
        Ok(Self {
            vertices: hull,
            constraints: Vec::new(),
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub(crate) fn constraints(&self) -> &[IntConstraint] {
        &self.constraints
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.contains_point_scaled(p, &Rational::one())
    }

    /// Exact test for `p` in `k * F`.
    pub fn contains_point_scaled(&self, p: &Point, k: &Rational) -> bool {
        self.constraints.iter().all(|h| {
            let a = Rational::from_integer(h.a.clone());
            let b = Rational::from_integer(h.b.clone());
            let c = Rational::from_integer(h.c.clone());
            a * &p.x + b * &p.y <= c * k
        })
    }

    fn contains_scaled(&self, p: &LatticePoint, k: u64) -> bool {
        self.constraints.iter().all(|h| match h.fast_at(p) {
            Some((a, b, c)) if k < FAST_COORD => a * p.x as i128 + b * p.y as i128 <= c * k as i128,
            _ => {
                let (s, c) = h.big_at(p);
                s <= c * BigInt::from(k)
            }
        })
    }

    fn dilation_index(&self, p: &LatticePoint) -> Option<BigInt> {
        if self.constraints.iter().all(|h| h.fast_at(p).is_some()) {
            let mut lo: i128 = 1;
            let mut hi: Option<i128> = None;
            for h in &self.constraints {
                let (a, b, c) = h.fast.expect("checked above");
                let s = a * p.x as i128 + b * p.y as i128;
                match c.cmp(&0) {
                    Ordering::Greater => lo = lo.max(Integer::div_ceil(&s, &c)),
                    Ordering::Less => {
                        let f = Integer::div_floor(&s, &c);
                        hi = Some(hi.map_or(f, |h| h.min(f)));
                    }
                    Ordering::Equal if s > 0 => return None,
                    Ordering::Equal => {}
                }
            }
            return match hi {
                Some(h) if h < lo => None,
                _ => Some(BigInt::from(lo)),
            };
        }
        let mut lo = BigInt::one();
        let mut hi: Option<BigInt> = None;
        for h in &self.constraints {
            let (s, c) = h.big_at(p);
            if c.is_positive() {
                lo = lo.max(Integer::div_ceil(&s, c));
            } else if c.is_negative() {
                let f = Integer::div_floor(&s, c);
                hi = Some(match hi {
                    Some(h) => h.min(f),
                    None => f,
                });
            } else if s.is_positive() {
                return None;
            }
        }
        match hi {
            Some(h) if h < lo => None,
            _ => Some(lo),
        }
    }

    /// Squared distance from the origin to the polygon.
    pub fn min_norm_sq(&self) -> Rational {
        if !self.is_degenerate() && self.contains_point(&Point::origin()) {
            return Rational::zero();
        }
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let p = &self.vertices[i];
                let q = &self.vertices[(i + 1) % n];
                segment_norm_sq(p, q)
            })
            .min()
            .expect("nonempty polygon")
    }
}

fn segment_norm_sq(p: &Point, q: &Point) -> Rational {
    let d = q - p;
    let len = d.norm_sq();
    if len.is_zero() {
        return p.norm_sq();
    }
    // parameter of the foot of the perpendicular from the origin
    let t = -(p.dot(&d)) / &len;
    let t = t.clamp(Rational::zero(), Rational::one());
    (p + &d.scale(&t)).norm_sq()
}

fn edge_constraints(vertices: &[Point]) -> Vec<IntConstraint> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let v = &vertices[i];
            let d = &vertices[(i + 1) % n] - v;
            // inside: d x (P - v) >= 0  <=>  d.y P.x - d.x P.y <= d.y v.x - d.x v.y
            let line = Line {
                a: d.y.clone(),
                b: -&d.x,
                c: &d.y * &v.x - &d.x * &v.y,
            };
            IntConstraint::from_line(&line)
        })
        .collect()
}

fn cross3(o: &Point, a: &Point, b: &Point) -> Rational {
    (a - o).cross(&(b - o))
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
pub(crate) fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|p, q| p.x.cmp(&q.x).then_with(|| p.y.cmp(&q.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross3(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross3(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn normalize_ring(points: &[Point]) -> Vec<Point> {
    let mut ring: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if ring.last() != Some(p) {
            ring.push(p.clone());
        }
    }
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    let n = ring.len();
    let twice_area: Rational = (0..n).map(|i| ring[i].cross(&ring[(i + 1) % n])).sum();
    if twice_area.is_negative() {
        ring.reverse();
    }
    loop {
        let n = ring.len();
        if n < 3 {
            break;
        }
        let pos = (0..n).find(|&i| cross3(&ring[(i + n - 1) % n], &ring[i], &ring[(i + 1) % n]).is_zero());
        match pos {
            Some(i) => {
                ring.remove(i);
            }
            None => break,
        }
    }
    ring
}

fn same_cycle(ring: &[Point], hull: &[Point]) -> bool {
    if ring.len() != hull.len() {
        return false;
    }
    let Some(offset) = ring.iter().position(|p| *p == hull[0]) else {
        return false;
    };
    (0..ring.len()).all(|i| ring[(offset + i) % ring.len()] == hull[i])
}

/// A disc with rational center in the closed first quadrant and rational
/// positive radius, not containing the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    center: Point,
    radius: Rational,
    int: Box<IntCircle>,
}

impl Circle {
    pub fn new(center: Point, radius: Rational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::InvalidBody("circle radius must be positive".into()));
        }
        if center.x.is_negative() || center.y.is_negative() {
            return Err(Error::InvalidBody("circle center must lie in the closed first quadrant".into()));
        }
        if center.norm_sq() <= &radius * &radius {
            return Err(Error::InvalidBody("origin must lie strictly outside the circle".into()));
        }
        let int = Box::new(IntCircle::new(&center, &radius));
        Ok(Self { center, radius, int })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    /// Power of the origin, `|c|^2 - r^2`; the squared tangent length.
    pub fn power(&self) -> Rational {
        self.center.norm_sq() - &self.radius * &self.radius
    }

    pub fn contains_point_scaled(&self, p: &Point, k: &Rational) -> bool {
        let d = p - &self.center.scale(k);
        let kr = k * &self.radius;
        d.norm_sq() <= &kr * &kr
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexBody {
    Polygon(ConvexPolygon),
    Circle(Circle),
}

impl ConvexBody {
    pub fn polygon(points: Vec<Point>) -> Result<Self> {
        ConvexPolygon::new(points).map(ConvexBody::Polygon)
    }

    pub fn circle(center: Point, radius: Rational) -> Result<Self> {
        Circle::new(center, radius).map(ConvexBody::Circle)
    }

    /// Exact test for `p` in `k * F` (for circles, `k * C` intersected with
    /// the quadrant, which lattice points satisfy automatically).
    pub fn contains_lattice_scaled(&self, p: &LatticePoint, k: u64) -> bool {
        match self {
            ConvexBody::Polygon(poly) => poly.contains_scaled(p, k),
            ConvexBody::Circle(c) => c.int.contains_scaled(p, k),
        }
    }

    pub fn contains_point_scaled(&self, p: &Point, k: &Rational) -> bool {
        match self {
            ConvexBody::Polygon(poly) => poly.contains_point_scaled(p, k),
            ConvexBody::Circle(c) => c.contains_point_scaled(p, k),
        }
    }

    /// Least `k >= 1` with `p` in `k * F`; integer form of the ray interval.
    pub(crate) fn dilation_index(&self, p: &LatticePoint) -> Option<BigInt> {
        match self {
            ConvexBody::Polygon(poly) => poly.dilation_index(p),
            ConvexBody::Circle(c) => c.int.dilation_index(p),
        }
    }

    /// Axis-aligned bounding box `(min, max)` of the body within the quadrant.
    pub fn bounding_box(&self) -> (Point, Point) {
        match self {
            ConvexBody::Polygon(poly) => {
                let vs = poly.vertices();
                let min_x = vs.iter().map(|v| v.x.clone()).min().expect("nonempty");
                let min_y = vs.iter().map(|v| v.y.clone()).min().expect("nonempty");
                let max_x = vs.iter().map(|v| v.x.clone()).max().expect("nonempty");
                let max_y = vs.iter().map(|v| v.y.clone()).max().expect("nonempty");
                (Point::new(min_x, min_y), Point::new(max_x, max_y))
            }
            ConvexBody::Circle(c) => {
                let zero = Rational::zero();
                let lo = |v: &Rational| (v - &c.radius).max(zero.clone());
                (
                    Point::new(lo(&c.center.x), lo(&c.center.y)),
                    Point::new(&c.center.x + &c.radius, &c.center.y + &c.radius),
                )
            }
        }
    }

    /// A rational lower bound on the squared distance from the origin to
    /// the body; exact for polygons.
    pub fn min_norm_sq_lower_bound(&self) -> Rational {
        match self {
            ConvexBody::Polygon(poly) => poly.min_norm_sq(),
            ConvexBody::Circle(c) => {
                let (norm_lo, _) = sqrt_bounds(&c.center.norm_sq(), 32);
                let gap = norm_lo - &c.radius;
                if gap.is_positive() {
                    &gap * &gap
                } else {
                    Rational::zero()
                }
            }
        }
    }
}

/// How the body meets one extremal ray of its cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayContact {
    /// A single point; for polygons always a vertex.
    Point { point: Point, vertex: Option<usize> },
    /// A segment with rational endpoints, `near` closer to the origin.
    Segment { near: Point, far: Point },
    /// A circle chord on a coordinate axis: parameters `t` along the axis
    /// with `(t - offset)^2 <= half_sq`. Endpoints may be irrational.
    Chord { offset: Rational, half_sq: Rational },
}

impl RayContact {
    pub fn is_point(&self) -> bool {
        matches!(self, RayContact::Point { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RayContact::Point { .. } => "point",
            RayContact::Segment { .. } => "segment",
            RayContact::Chord { .. } => "chord",
        }
    }
}

/// Extremal rays of the cone spanned by the body, `upper` with the greater
/// slope, and the body's contact with each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRays {
    pub upper: Direction,
    pub lower: Direction,
    pub upper_contact: RayContact,
    pub lower_contact: RayContact,
}

pub fn cone_rays(body: &ConvexBody) -> Result<ConeRays> {
    match body {
        ConvexBody::Polygon(poly) => polygon_rays(poly),
        ConvexBody::Circle(c) => circle_rays(c),
    }
}

fn polygon_rays(poly: &ConvexPolygon) -> Result<ConeRays> {
    let vs = poly.vertices();
    let nonzero: Vec<usize> = (0..vs.len()).filter(|&i| !vs[i].is_origin()).collect();
    let by_angle = |&i: &usize, &j: &usize| {
        // j counterclockwise of i  <=>  i x j > 0
        let c = vs[i].cross(&vs[j]);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    };
    let upper = *nonzero.iter().max_by(|a, b| by_angle(a, b)).ok_or(Error::NotSimplicial)?;
    let lower = *nonzero.iter().min_by(|a, b| by_angle(a, b)).ok_or(Error::NotSimplicial)?;
    if vs[upper].cross(&vs[lower]).is_zero() {
        return Err(Error::NotSimplicial);
    }
    let has_origin = vs.iter().any(Point::is_origin);
    let contact = |extreme: usize| {
        let mut on_ray: Vec<usize> = nonzero
            .iter()
            .copied()
            .filter(|&i| vs[i].cross(&vs[extreme]).is_zero())
            .collect();
        on_ray.sort_by_key(|&i| vs[i].norm_sq());
        match (on_ray.as_slice(), has_origin) {
            ([only], false) => RayContact::Point {
                point: vs[*only].clone(),
                vertex: Some(*only),
            },
            ([only], true) => RayContact::Segment {
                near: Point::origin(),
                far: vs[*only].clone(),
            },
            ([near, .., far], _) => RayContact::Segment {
                near: vs[*near].clone(),
                far: vs[*far].clone(),
            },
            ([], _) => unreachable!("extreme vertex lies on its own ray"),
        }
    };
    Ok(ConeRays {
        upper: Direction::through(&vs[upper])?,
        lower: Direction::through(&vs[lower])?,
        upper_contact: contact(upper),
        lower_contact: contact(lower),
    })
}

fn circle_rays(c: &Circle) -> Result<ConeRays> {
    let (a, b) = (&c.center.x, &c.center.y);
    let r = &c.radius;
    let r_sq = r * r;
    let needs_tangent = a > r || b > r;
    let tangent_len = if needs_tangent {
        Some(rational_sqrt(&c.power()).ok_or(Error::IrrationalRays)?)
    } else {
        None
    };
    let norm_sq = c.center.norm_sq();
    // tangent points (p c +/- L r perp(c)) / |c|^2 with perp(c) = (-b, a)
    let tangent = |sign: i64| {
        let len = tangent_len.as_ref().expect("tangent length computed");
        let p = c.power();
        let s = int(sign) * len * r;
        Point::new(
            (&p * a - &s * b) / &norm_sq,
            (&p * b + &s * a) / &norm_sq,
        )
    };

    let (upper, upper_contact) = match a.cmp(r) {
        Ordering::Greater => {
            let t = tangent(1);
            (Direction::through(&t)?, RayContact::Point { point: t, vertex: None })
        }
        Ordering::Equal => (
            Direction::Y_AXIS,
            RayContact::Point {
                point: Point::new(Rational::zero(), b.clone()),
                vertex: None,
            },
        ),
        Ordering::Less => (
            Direction::Y_AXIS,
            RayContact::Chord {
                offset: b.clone(),
                half_sq: &r_sq - a * a,
            },
        ),
    };
    let (lower, lower_contact) = match b.cmp(r) {
        Ordering::Greater => {
            let t = tangent(-1);
            (Direction::through(&t)?, RayContact::Point { point: t, vertex: None })
        }
        Ordering::Equal => (
            Direction::X_AXIS,
            RayContact::Point {
                point: Point::new(a.clone(), Rational::zero()),
                vertex: None,
            },
        ),
        Ordering::Less => (
            Direction::X_AXIS,
            RayContact::Chord {
                offset: a.clone(),
                half_sq: &r_sq - b * b,
            },
        ),
    };
    if upper.cross(&lower) >= 0 {
        return Err(Error::NotSimplicial);
    }
    Ok(ConeRays {
        upper,
        lower,
        upper_contact,
        lower_contact,
    })
}
