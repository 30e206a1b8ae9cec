//! Regions that organise the gaps of a semigroup near its extremal rays.
//!
//! For a polygon touching a ray in a single vertex `P`, consecutive
//! dilations `hF` and `(h+1)F` leave a triangle `T + hP` uncovered next to
//! the ray. Past a threshold `j` these triangles have a fixed shape, their
//! free vertices line up on a line `nu` parallel to the ray, and the strip
//! between the ray and `nu` is understood completely. What remains is a
//! finite region near the origin and the apex region beyond `nu_1 ∩ nu_2`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{
    ceil_int, lattice_points_in, line_intersect, ray_body_interval, segment_intersection, to_u64, ConvexBody,
    ConvexRegion, Direction, HalfPlane, LatticePoint, LatticeRegion, Line, LineIntersection, Point, Rational,
    RayContact, ScalingInterval,
};
use crate::semigroup::{BodySemigroup, RaySide};

/// Cap on the escape index `j`.
pub const ESCAPE_CAP: u64 = 1_000_000;

/// The escape data of a ray touching the polygon in one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexEscape {
    pub side: RaySide,
    /// The contact vertex `P`.
    pub vertex: Point,
    /// Neighbour of `P` whose edge is scaled by `h`.
    pub far: Point,
    /// Neighbour of `P` whose edge is scaled by `h + 1`.
    pub near: Point,
    /// Least `h >= 1` with `h[P, far]` meeting `(h+1)[P, near]`.
    pub j: u64,
    /// The meeting point for `h = j`.
    pub v: Point,
    /// Line through the meeting points, parallel to the ray.
    pub nu: Line,
    /// `[O, P, V - jP]`.
    pub triangle: [Point; 3],
    /// Least `c` with `cP` integral; `n = cP`.
    pub period: u64,
    /// `j + period`, so that `j1 P = jP + n`.
    pub j1: u64,
    /// `s` with `V - jP = s (far - P)`.
    offset: Rational,
}

impl VertexEscape {
    /// Meeting point of `h[P, far]` and `(h+1)[P, near]`, `h >= j`.
    pub fn meeting_point(&self, h: u64) -> Point {
        &self.vertex.scale_int(h) + &(&self.far - &self.vertex).scale(&self.offset)
    }

    /// The translated gap triangle `T + hP`, open.
    pub fn gap_triangle(&self, h: u64) -> ConvexRegion {
        let shift = self.vertex.scale_int(h);
        let [a, b, c] = &self.triangle;
        ConvexRegion::open_triangle(&(a + &shift), &(b + &shift), &(c + &shift))
    }

    /// The open segment `(hP, (h+1)P)` on the ray.
    pub fn gap_segment(&self, h: u64) -> ConvexRegion {
        ConvexRegion::open_segment(&self.vertex.scale_int(h), &self.vertex.scale_int(h + 1))
    }
}

/// `{D + lambda n : D in [start, end], lambda >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripe {
    pub start: Point,
    pub end: Point,
    pub step: LatticePoint,
}

impl Stripe {
    pub fn region(&self) -> ConvexRegion {
        let n = self.step.to_point();
        let mut hs = Vec::new();
        // between the two lines through start and end parallel to n
        let (lo, hi) = if (&self.end - &self.start).cross(&n).is_negative() {
            (&self.start, &self.end)
        } else {
            (&self.end, &self.start)
        };
        hs.push(HalfPlane::left_of(lo, &(lo + &n), false));
        hs.push(HalfPlane::left_of(&(hi + &n), hi, false));
        // beyond the segment, on the side n points to
        let d = &self.end - &self.start;
        let toward = if d.cross(&n).is_positive() {
            HalfPlane::left_of(&self.start, &self.end, false)
        } else {
            HalfPlane::left_of(&self.end, &self.start, false)
        };
        hs.push(toward);
        ConvexRegion::new(hs)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.region().contains(&p.to_point())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayStructure {
    pub side: RaySide,
    /// `None` when the body meets the ray in a segment.
    pub escape: Option<VertexEscape>,
    /// `nu` for a vertex contact, the ray itself for a segment contact.
    pub nu: Line,
    /// `nu` meets the opposite ray here.
    pub nu_cross: Option<Point>,
    pub stripe: Option<Stripe>,
    /// Finite lattice set near the origin.
    pub upsilon: Vec<LatticePoint>,
}

impl RayStructure {
    /// Hull and excluded gap regions defining `upsilon`; `None` for segment
    /// contacts.
    pub fn upsilon_region(&self) -> Option<LatticeRegion> {
        let e = self.escape.as_ref()?;
        let w = self.nu_cross.as_ref()?;
        let n = self.stripe.as_ref()?.step.to_point();
        let hull = ConvexRegion::closed_hull(&[Point::origin(), e.vertex.scale_int(e.j1), &e.v + &n, w.clone()]);
        let mut region = LatticeRegion::new(hull);
        for h in 0..e.j1 {
            region = region.excluding(e.gap_triangle(h)).excluding(e.gap_segment(h));
        }
        Some(region)
    }
}

pub fn vertex_escape(s: &BodySemigroup, side: RaySide) -> Result<VertexEscape> {
    let ConvexBody::Polygon(poly) = s.body() else {
        return Err(Error::InvalidArgument("escape construction needs a polygon".into()));
    };
    let RayContact::Point { point, vertex: Some(i) } = s.contact(side) else {
        return Err(Error::SegmentContact(side));
    };
    let vs = poly.vertices();
    let n = vs.len();
    let prev = &vs[(i + n - 1) % n];
    let next = &vs[(i + 1) % n];
    let (far, near) = match side {
        RaySide::Upper => (prev, next),
        RaySide::Lower => (next, prev),
    };
    let p = point;
    let d_far = far - p;
    let d_near = near - p;
    // X = hP + s d_far = (h+1)P + r d_near  <=>  s d_far - r d_near = P
    let neg_near = -&d_near;
    let det = d_far.cross(&neg_near);
    if det.is_zero() {
        return Err(Error::Inconsistent("adjacent edges at a vertex are parallel".into()));
    }
    let offset = p.cross(&neg_near) / &det;
    let r = d_far.cross(p) / &det;
    if offset.is_negative() || r.is_negative() {
        return Err(Error::Inconsistent(format!("scaled edges at {p} diverge")));
    }
    let j = ceil_int(&offset)
        .max(ceil_int(&r) - 1)
        .max(BigInt::one());
    let j = match j.to_u64() {
        Some(j) if j <= ESCAPE_CAP => j,
        _ => return Err(Error::StructureSearchOverflow { side, cap: ESCAPE_CAP }),
    };
    let meet = |h: u64| {
        segment_intersection(
            &p.scale_int(h),
            &far.scale_int(h),
            &p.scale_int(h + 1),
            &near.scale_int(h + 1),
        )
    };
    let v = &p.scale_int(j) + &d_far.scale(&offset);
    if meet(j).as_ref() != Some(&v) || (j > 1 && meet(j - 1).is_some()) {
        return Err(Error::Inconsistent(format!("escape index on {side} failed verification")));
    }
    let nu = Line::with_direction(&v, p)?;
    for h in [j + 1, j + 2] {
        match meet(h) {
            Some(x) if nu.contains(&x) => {}
            _ => return Err(Error::Inconsistent(format!("meeting points on {side} are not collinear"))),
        }
    }
    let period = to_u64(&p.denominator_lcm());
    if p.scale_int(period).to_lattice() != Some(s.n(side)) {
        return Err(Error::Inconsistent(format!("generator on {side} is not the least integral multiple")));
    }
    let triangle = [Point::origin(), p.clone(), d_far.scale(&offset)];
    Ok(VertexEscape {
        side,
        vertex: p.clone(),
        far: far.clone(),
        near: near.clone(),
        j,
        v,
        nu,
        triangle,
        period,
        j1: j + period,
        offset,
    })
}

pub fn stripe_sets(s: &BodySemigroup, side: RaySide) -> Result<RayStructure> {
    let escape = match vertex_escape(s, side) {
        Ok(e) => e,
        Err(Error::SegmentContact(_)) => {
            return Ok(RayStructure {
                side,
                escape: None,
                nu: Line::of_ray(&s.tau(side)),
                nu_cross: Some(Point::origin()),
                stripe: None,
                upsilon: vec![LatticePoint::ORIGIN],
            })
        }
        Err(e) => return Err(e),
    };
    let other = Line::of_ray(&s.tau(side.other()));
    let nu_cross = match line_intersect(&escape.nu, &other) {
        LineIntersection::Point(w) => w,
        LineIntersection::Parallel { .. } => return Err(Error::NuTauParallel(side)),
    };
    let n = s.n(side);
    let stripe = Stripe {
        start: escape.vertex.scale_int(escape.j1),
        end: &escape.v + &n.to_point(),
        step: n,
    };
    let mut rs = RayStructure {
        side,
        nu: escape.nu.clone(),
        escape: Some(escape),
        nu_cross: Some(nu_cross),
        stripe: Some(stripe),
        upsilon: Vec::new(),
    };
    rs.upsilon = lattice_points_in(&rs.upsilon_region().expect("vertex contact has a region"))?;
    Ok(rs)
}

/// `Q + cone`, with `Q = nu_1 ∩ nu_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexRegion {
    pub q: Point,
    pub upper: Direction,
    pub lower: Direction,
}

impl ApexRegion {
    pub fn contains(&self, p: &LatticePoint) -> bool {
        let d = &p.to_point() - &self.q;
        !self.lower.cross_point(&d).is_negative() && !self.upper.cross_point(&d).is_positive()
    }

    /// Lattice points of the region in `[0, max_x] x [0, max_y]`.
    pub fn points_within(&self, max_x: u64, max_y: u64) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for x in 0..=max_x {
            for y in 0..=max_y {
                let p = LatticePoint::new(x, y);
                if self.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

pub fn apex_region(s: &BodySemigroup, upper: &RayStructure, lower: &RayStructure) -> Result<ApexRegion> {
    match line_intersect(&upper.nu, &lower.nu) {
        LineIntersection::Point(q) => Ok(ApexRegion {
            q,
            upper: s.tau(RaySide::Upper),
            lower: s.tau(RaySide::Lower),
        }),
        LineIntersection::Parallel { .. } => Err(Error::ApexParallel),
    }
}

/// Points `P` of `upsilon` with `P + n1` and `P + n2` both members.
pub fn upsilon_prime(s: &BodySemigroup, rs: &RayStructure) -> Vec<LatticePoint> {
    rs.upsilon
        .iter()
        .copied()
        .filter(|p| s.is_member(&(*p + s.n1())) && s.is_member(&(*p + s.n2())))
        .collect()
}

/// Both filtered sets, upper side first.
pub fn upsilon_primes(
    s: &BodySemigroup,
    upper: &RayStructure,
    lower: &RayStructure,
) -> (Vec<LatticePoint>, Vec<LatticePoint>) {
    (upsilon_prime(s, upper), upsilon_prime(s, lower))
}

fn neither_difference_member(s: &BodySemigroup, p: &LatticePoint) -> bool {
    let out = |n: LatticePoint| p.checked_sub(&n).is_none_or(|d| !s.is_member(&d));
    out(s.n1()) && out(s.n2())
}

/// Parallelogram spanned by `n1`, `n2` without the closed edges through the
/// origin and without the far corner, then with the origin put back.
pub fn circle_h(s: &BodySemigroup) -> Result<Vec<LatticePoint>> {
    let (n1, n2) = (s.n1().to_point(), s.n2().to_point());
    let o = Point::origin();
    let far = &n1 + &n2;
    let region = LatticeRegion::new(ConvexRegion::closed_hull(&[o.clone(), n1.clone(), n2.clone(), far.clone()]))
        .excluding(ConvexRegion::closed_segment(&o, &n1))
        .excluding(ConvexRegion::closed_segment(&o, &n2))
        .excluding(ConvexRegion::point(&far));
    let mut pts = lattice_points_in(&region)?;
    pts.insert(0, LatticePoint::ORIGIN);
    Ok(pts)
}

/// The three candidate sets for the Apéry intersection of a polygon.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolygonH {
    pub h1: Vec<LatticePoint>,
    pub h2: Vec<LatticePoint>,
    pub h3: Vec<LatticePoint>,
}

pub fn polygon_h(s: &BodySemigroup, upper: &RayStructure, lower: &RayStructure, apex: &ApexRegion) -> Result<PolygonH> {
    let keep = |v: &[LatticePoint]| -> Vec<LatticePoint> {
        v.iter().copied().filter(|p| neither_difference_member(s, p)).collect()
    };
    let (n1, n2) = (s.n1().to_point(), s.n2().to_point());
    let q = &apex.q;
    let corners = [q.clone(), q + &n1, q + &n2, &(q + &n1) + &n2];
    let h3 = lattice_points_in(&LatticeRegion::new(ConvexRegion::closed_hull(&corners)))?;
    Ok(PolygonH {
        h1: keep(&upper.upsilon),
        h2: keep(&lower.upsilon),
        h3: keep(&h3),
    })
}

/// Least `K >= 1` past which consecutive dilations overlap along every
/// vertex direction off the vertex-contact rays, and past both escape
/// thresholds `j1`.
pub fn coverage_index(s: &BodySemigroup, upper: &RayStructure, lower: &RayStructure) -> u64 {
    let ConvexBody::Polygon(poly) = s.body() else {
        return 1;
    };
    let mut k = BigInt::one();
    for v in poly.vertices().iter().filter(|v| !v.is_origin()) {
        let d = Direction::through(v).expect("nonzero vertex");
        let on_point_ray = RaySide::BOTH
            .iter()
            .any(|&side| s.tau(side) == d && s.contact(side).is_point());
        if on_point_ray {
            continue;
        }
        if let ScalingInterval::Linear { lo, hi: Some(hi) } = ray_body_interval(s.body(), &d.as_point()) {
            let width = &hi - &lo;
            if width.is_positive() {
                k = k.max(ceil_int(&(lo / width)));
            }
        }
    }
    let k = to_u64(&k);
    [upper, lower]
        .iter()
        .filter_map(|rs| rs.escape.as_ref().map(|e| e.j1))
        .fold(k, u64::max)
}

/// Everything the polygon checks need, built once.
#[derive(Clone, Debug)]
pub struct PolygonStructure {
    pub upper: RayStructure,
    pub lower: RayStructure,
    pub apex: ApexRegion,
    pub upsilon_prime: Vec<LatticePoint>,
    pub upsilon_double_prime: Vec<LatticePoint>,
    pub coverage_index: u64,
}

impl PolygonStructure {
    pub fn build(s: &BodySemigroup) -> Result<Self> {
        if !s.is_polygon() {
            return Err(Error::InvalidArgument("polygon structure needs a polygon body".into()));
        }
        let upper = stripe_sets(s, RaySide::Upper)?;
        let lower = stripe_sets(s, RaySide::Lower)?;
        let apex = apex_region(s, &upper, &lower)?;
        let (upsilon_prime, upsilon_double_prime) = upsilon_primes(s, &upper, &lower);
        let coverage_index = coverage_index(s, &upper, &lower);
        Ok(Self {
            upper,
            lower,
            apex,
            upsilon_prime,
            upsilon_double_prime,
            coverage_index,
        })
    }

    pub fn side(&self, side: RaySide) -> &RayStructure {
        match side {
            RaySide::Upper => &self.upper,
            RaySide::Lower => &self.lower,
        }
    }

    pub fn both_segments(&self) -> bool {
        self.upper.escape.is_none() && self.lower.escape.is_none()
    }

    /// Upper corner of the box `(K* + 1) * bbox(F)`.
    pub fn scan_box(&self, s: &BodySemigroup) -> (u64, u64) {
        scaled_box(s.body(), self.coverage_index + 1)
    }

    pub fn h_sets(&self, s: &BodySemigroup) -> Result<PolygonH> {
        polygon_h(s, &self.upper, &self.lower, &self.apex)
    }
}

/// Integer upper corner of `k * bbox(F)`.
pub fn scaled_box(body: &ConvexBody, k: u64) -> (u64, u64) {
    let (_, hi) = body.bounding_box();
    let k = Rational::from_integer(BigInt::from(k));
    let x = (&hi.x * &k).floor().to_integer();
    let y = (&hi.y * &k).floor().to_integer();
    (to_u64(&x.max(BigInt::zero())), to_u64(&y.max(BigInt::zero())))
}

/// Serializable summary of a ray structure for reports and plots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaySummary {
    pub side: RaySide,
    pub contact: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<[String; 2]>,
    pub nu: [String; 3],
    pub upsilon: Vec<LatticePoint>,
}

impl RaySummary {
    pub fn new(s: &BodySemigroup, rs: &RayStructure) -> Self {
        let pt = |p: &Point| [p.x.to_string(), p.y.to_string()];
        Self {
            side: rs.side,
            contact: s.contact(rs.side).kind(),
            j: rs.escape.as_ref().map(|e| e.j),
            j1: rs.escape.as_ref().map(|e| e.j1),
            v: rs.escape.as_ref().map(|e| pt(&e.v)),
            nu: [rs.nu.a.to_string(), rs.nu.b.to_string(), rs.nu.c.to_string()],
            upsilon: rs.upsilon.clone(),
        }
    }
}
