use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::body::convex_hull;
use super::{ceil_int, floor_int, lcm_denominators, line_intersect, Line, LineIntersection, Point, Rational};
use crate::error::{Error, Result};
use crate::geom::LatticePoint;

/// `a x + b y <= c`, or `< c` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub strict: bool,
}

impl HalfPlane {
    pub fn new(a: Rational, b: Rational, c: Rational, strict: bool) -> Self {
        Self { a, b, c, strict }
    }

    /// Half-plane to the left of the directed line `p -> q`.
    pub fn left_of(p: &Point, q: &Point, strict: bool) -> Self {
        let d = q - p;
        Self::new(d.y.clone(), -&d.x, &d.y * &p.x - &d.x * &p.y, strict)
    }

    pub fn contains(&self, p: &Point) -> bool {
        let s = &self.a * &p.x + &self.b * &p.y;
        if self.strict {
            s < self.c
        } else {
            s <= self.c
        }
    }

    fn is_constant(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn boundary(&self) -> Option<Line> {
        Line::new(self.a.clone(), self.b.clone(), self.c.clone()).ok()
    }
}

/// Intersection of finitely many half-planes, each open or closed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConvexRegion {
    halfplanes: Vec<HalfPlane>,
}

impl ConvexRegion {
    pub fn new(halfplanes: Vec<HalfPlane>) -> Self {
        Self { halfplanes }
    }

    pub fn empty() -> Self {
        Self::new(vec![HalfPlane::new(Rational::zero(), Rational::zero(), -Rational::from_integer(1.into()), false)])
    }

    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    /// Closed convex hull of the given points; degenerate hulls give
    /// segments or single points.
    pub fn closed_hull(points: &[Point]) -> Self {
        let hull = convex_hull(points);
        match hull.len() {
            0 => Self::empty(),
            1 => Self::point(&hull[0]),
            2 => Self::closed_segment(&hull[0], &hull[1]),
            n => Self::new((0..n).map(|i| HalfPlane::left_of(&hull[i], &hull[(i + 1) % n], false)).collect()),
        }
    }

    /// Interior of the convex hull; empty when the hull is degenerate.
    pub fn open_hull(points: &[Point]) -> Self {
        let hull = convex_hull(points);
        let n = hull.len();
        if n < 3 {
            return Self::empty();
        }
        Self::new((0..n).map(|i| HalfPlane::left_of(&hull[i], &hull[(i + 1) % n], true)).collect())
    }

    pub fn open_triangle(a: &Point, b: &Point, c: &Point) -> Self {
        Self::open_hull(&[a.clone(), b.clone(), c.clone()])
    }

    pub fn closed_segment(p: &Point, q: &Point) -> Self {
        Self::segment(p, q, false)
    }

    /// The segment without its endpoints.
    pub fn open_segment(p: &Point, q: &Point) -> Self {
        if p == q {
            return Self::empty();
        }
        Self::segment(p, q, true)
    }

    fn segment(p: &Point, q: &Point, open: bool) -> Self {
        let d = q - p;
        let mut hs = vec![HalfPlane::left_of(p, q, false), HalfPlane::left_of(q, p, false)];
        hs.push(HalfPlane::new(d.x.clone(), d.y.clone(), d.dot(q), open));
        hs.push(HalfPlane::new(-&d.x, -&d.y, -d.dot(p), open));
        Self::new(hs)
    }

    pub fn point(p: &Point) -> Self {
        let one = Rational::from_integer(1.into());
        let zero = Rational::zero();
        Self::new(vec![
            HalfPlane::new(one.clone(), zero.clone(), p.x.clone(), false),
            HalfPlane::new(-&one, zero.clone(), -&p.x, false),
            HalfPlane::new(zero.clone(), one.clone(), p.y.clone(), false),
            HalfPlane::new(zero, -one, -&p.y, false),
        ])
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.halfplanes.iter().all(|h| h.contains(p))
    }

    /// Vertices of the closure, counterclockwise. `Err` when unbounded.
    pub fn closure_vertices(&self) -> Result<Vec<Point>> {
        let mut closed: Vec<HalfPlane> = Vec::new();
        for h in &self.halfplanes {
            if h.is_constant() {
                if !h.contains(&Point::origin()) {
                    return Ok(Vec::new());
                }
                continue;
            }
            closed.push(HalfPlane { strict: false, ..h.clone() });
        }
        let spans = closed
            .iter()
            .any(|h| closed.iter().any(|g| !(&h.a * &g.b - &h.b * &g.a).is_zero()));
        if !spans {
            return if closed.is_empty() || !parallel_family_is_empty(&closed) {
                Err(Error::UnboundedRegion)
            } else {
                Ok(Vec::new())
            };
        }
        let mut candidates = Vec::new();
        for (i, h) in closed.iter().enumerate() {
            for g in &closed[i + 1..] {
                let (Some(l1), Some(l2)) = (h.boundary(), g.boundary()) else {
                    continue;
                };
                if let LineIntersection::Point(p) = line_intersect(&l1, &l2) {
                    if closed.iter().all(|k| k.contains(&p)) {
                        candidates.push(p);
                    }
                }
            }
        }
        if candidates.is_empty() {
            // normals span the plane, so a nonempty closure would be pointed
            return Ok(Vec::new());
        }
        // a pointed cone of recession directions, if nontrivial, has an
        // extreme ray along some boundary line
        for h in &closed {
            for d in [Point::new(-&h.b, h.a.clone()), Point::new(h.b.clone(), -&h.a)] {
                if closed.iter().all(|g| !(&g.a * &d.x + &g.b * &d.y).is_positive()) {
                    return Err(Error::UnboundedRegion);
                }
            }
        }
        Ok(convex_hull(&candidates))
    }
}

fn parallel_family_is_empty(hs: &[HalfPlane]) -> bool {
    // every constraint is s_i * t <= c_i for t = a0 x + b0 y
    let (a0, b0) = (&hs[0].a, &hs[0].b);
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for h in hs {
        let s = if a0.is_zero() { &h.b / b0 } else { &h.a / a0 };
        let bound = &h.c / &s;
        if s.is_positive() {
            hi = Some(hi.map_or(bound.clone(), |v: Rational| v.min(bound)));
        } else {
            lo = Some(lo.map_or(bound.clone(), |v: Rational| v.max(bound)));
        }
    }
    matches!((lo, hi), (Some(l), Some(h)) if l > h)
}

/// Lattice points of `region` outside every `excluded` region, restricted
/// to the closed first quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LatticeRegion {
    pub region: ConvexRegion,
    pub excluded: Vec<ConvexRegion>,
}

impl LatticeRegion {
    pub fn new(region: ConvexRegion) -> Self {
        Self {
            region,
            excluded: Vec::new(),
        }
    }

    pub fn excluding(mut self, r: ConvexRegion) -> Self {
        self.excluded.push(r);
        self
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.region.contains(p) && !self.excluded.iter().any(|e| e.contains(p))
    }
}

struct IntHalfPlane {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    strict: bool,
}

impl IntHalfPlane {
    fn new(h: &HalfPlane) -> Self {
        let scale = Rational::from_integer(lcm_denominators([&h.a, &h.b, &h.c]));
        let to_int = |q: &Rational| (q * &scale).to_integer();
        Self {
            a: to_int(&h.a),
            b: to_int(&h.b),
            c: to_int(&h.c),
            strict: h.strict,
        }
    }
}

/// Integer `y` range `[lo, hi]` of a convex region on the column `x`;
/// `None` bounds are unbounded, and `Some((1, 0))`-style inverted ranges
/// mean empty.
fn column_range(hs: &[IntHalfPlane], x: &BigInt) -> (Option<BigInt>, Option<BigInt>, bool) {
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for h in hs {
        let rest = &h.c - &h.a * x;
        if h.b.is_zero() {
            let ok = if h.strict { rest.is_positive() } else { !rest.is_negative() };
            if !ok {
                return (None, None, false);
            }
        } else if h.b.is_positive() {
            // y <= rest / b
            let bound = if h.strict {
                Integer::div_ceil(&rest, &h.b) - 1
            } else {
                Integer::div_floor(&rest, &h.b)
            };
            hi = Some(hi.map_or(bound.clone(), |v| v.min(bound)));
        } else {
            // y >= rest / b
            let bound = if h.strict {
                Integer::div_floor(&rest, &h.b) + 1
            } else {
                Integer::div_ceil(&rest, &h.b)
            };
            lo = Some(lo.map_or(bound.clone(), |v| v.max(bound)));
        }
    }
    (lo, hi, true)
}

/// Enumerates column by column over the integer bounding box of the closure,
/// with exact integer bounds per column.
pub fn lattice_points_in(region: &LatticeRegion) -> Result<Vec<LatticePoint>> {
    let vertices = region.region.closure_vertices()?;
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    let min_x = vertices.iter().map(|v| ceil_int(&v.x)).min().expect("nonempty");
    let max_x = vertices.iter().map(|v| floor_int(&v.x)).max().expect("nonempty");
    let min_x = min_x.max(BigInt::zero());
    let main: Vec<IntHalfPlane> = region.region.halfplanes().iter().map(IntHalfPlane::new).collect();
    let holes: Vec<Vec<IntHalfPlane>> = region
        .excluded
        .iter()
        .map(|e| e.halfplanes().iter().map(IntHalfPlane::new).collect())
        .collect();
    let mut out = Vec::new();
    let mut x = min_x;
    while x <= max_x {
        let (lo, hi, ok) = column_range(&main, &x);
        if ok {
            let lo = lo.unwrap_or_else(BigInt::zero).max(BigInt::zero());
            let hi = hi.expect("bounded region has an upper bound per column");
            let hole_ranges: Vec<(BigInt, BigInt)> = holes
                .iter()
                .filter_map(|h| match column_range(h, &x) {
                    (_, _, false) => None,
                    (l, u, true) => Some((
                        l.unwrap_or_else(|| lo.clone()),
                        u.unwrap_or_else(|| hi.clone()),
                    )),
                })
                .collect();
            let xu = x.to_u64().expect("lattice coordinate fits u64");
            let mut y = lo;
            while y <= hi {
                if let Some((_, u)) = hole_ranges.iter().find(|(l, u)| *l <= y && y <= *u) {
                    y = u + 1;
                    continue;
                }
                out.push(LatticePoint::new(xu, y.to_u64().expect("lattice coordinate fits u64")));
                y += 1;
            }
        }
        x += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
    }

    #[test]
    fn closed_triangle_has_six_points() {
        let r = LatticeRegion::new(ConvexRegion::closed_hull(&pts(&[(0, 0), (2, 0), (0, 2)])));
        assert_eq!(lattice_points_in(&r).unwrap().len(), 6);
    }

    #[test]
    fn open_triangle_small_is_empty() {
        let r = LatticeRegion::new(ConvexRegion::open_hull(&pts(&[(0, 0), (2, 0), (0, 2)])));
        assert!(lattice_points_in(&r).unwrap().is_empty());
    }

    #[test]
    fn square_minus_interior_keeps_corners() {
        let sq = pts(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let r = LatticeRegion::new(ConvexRegion::closed_hull(&sq)).excluding(ConvexRegion::open_hull(&sq));
        let got = lattice_points_in(&r).unwrap();
        let want: Vec<LatticePoint> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(x, y)| LatticePoint::new(x, y))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn unbounded_region_is_an_error() {
        let half = ConvexRegion::new(vec![HalfPlane::new(int(0), int(-1), int(0), false)]);
        assert_eq!(lattice_points_in(&LatticeRegion::new(half)), Err(Error::UnboundedRegion));
        let wedge = ConvexRegion::new(vec![
            HalfPlane::new(int(-1), int(0), int(0), false),
            HalfPlane::new(int(0), int(-1), int(0), false),
        ]);
        assert_eq!(lattice_points_in(&LatticeRegion::new(wedge)), Err(Error::UnboundedRegion));
    }

    #[test]
    fn empty_strip_is_empty() {
        let strip = ConvexRegion::new(vec![
            HalfPlane::new(int(1), int(0), int(0), false),
            HalfPlane::new(int(-1), int(0), int(-1), false),
        ]);
        assert_eq!(lattice_points_in(&LatticeRegion::new(strip)), Ok(Vec::new()));
    }

    #[test]
    fn open_segment_drops_endpoints() {
        let r = LatticeRegion::new(ConvexRegion::open_segment(&Point::from_ints(0, 0), &Point::from_ints(6, 3)));
        let got = lattice_points_in(&r).unwrap();
        assert_eq!(got, vec![LatticePoint::new(2, 1), LatticePoint::new(4, 2)]);
    }

    #[test]
    fn rational_vertices() {
        let tri = [Point::new(rat(1, 2), rat(1, 2)), Point::new(rat(7, 2), rat(1, 2)), Point::new(rat(1, 2), rat(7, 2))];
        let r = LatticeRegion::new(ConvexRegion::closed_hull(&tri));
        assert_eq!(lattice_points_in(&r).unwrap().len(), 6);
    }
}
