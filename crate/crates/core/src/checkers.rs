//! Cohen-Macaulay and Gorenstein decisions.
//!
//! A semigroup is C-M exactly when no gap `g` of its cone has both `g + n1`
//! and `g + n2` in the semigroup. The structural checks below decide this
//! from finitely many regions; every "no" is backed by such a `g`, found by
//! a scan of the same finite window.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{
    ceil_int, lattice_points_in, to_u64, ConvexBody, LatticePoint, LatticeRegion, Rational, RayContact,
};
use crate::semigroup::{BodySemigroup, RaySide};
use crate::structure::{circle_h, scaled_box, PolygonStructure, VertexEscape};

/// Default cap on the dilation scanned for circle gaps.
pub const DEFAULT_CIRCLE_SCAN: u64 = 512;

/// Gap witnesses kept in a report.
pub const MAX_WITNESSES: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Circle gap-scan cap; defaults to [`DEFAULT_CIRCLE_SCAN`].
    pub scan_bound: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Cm,
    Gorenstein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

/// Which characterization decided the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Circle: equal interiors and both rays generated.
    Circle,
    /// Polygon meeting both rays in segments.
    PolygonSegments,
    /// Polygon with equal interiors: both rays generated.
    PolygonEqualInteriors,
    /// Polygon with interior gaps: the apex and near-origin regions.
    PolygonRegions,
    /// Gorenstein check stopped because the semigroup is not C-M.
    NotCm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "level", rename_all = "lowercase")]
pub enum Certificate {
    /// The scanned window provably contains every relevant gap.
    Exhaustive,
    /// Only dilations up to `bound` were scanned.
    Bounded { bound: u64 },
}

impl Certificate {
    fn join(self, other: Certificate) -> Certificate {
        match (self, other) {
            (Certificate::Exhaustive, c) | (c, Certificate::Exhaustive) => c,
            (Certificate::Bounded { bound: a }, Certificate::Bounded { bound: b }) => {
                Certificate::Bounded { bound: a.min(b) }
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// Gaps `g` with `g + n1` and `g + n2` members, by squared norm.
    pub gaps: Vec<LatticePoint>,
    /// Points of the deciding regions that are not members.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub non_members: Vec<LatticePoint>,
    /// Rays not generated by their `n_i`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ungenerated_rays: Vec<RaySide>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub apery: Vec<LatticePoint>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub maximals: Vec<LatticePoint>,
}

impl Witnesses {
    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
            && self.non_members.is_empty()
            && self.ungenerated_rays.is_empty()
            && self.apery.is_empty()
            && self.maximals.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub property: Property,
    pub verdict: Verdict,
    pub branch: Branch,
    pub certificate: Certificate,
    pub witnesses: Witnesses,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InteriorEquality {
    /// No interior gap found; only conclusive with an exhaustive certificate.
    pub equal: bool,
    /// Interior gaps, by squared norm, at most [`MAX_WITNESSES`].
    pub gaps: Vec<LatticePoint>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AperyIntersection {
    /// Sorted by row, then column.
    pub points: Vec<LatticePoint>,
    pub maximals: Vec<LatticePoint>,
}

/// The lattice window that decides the gap questions, as dilations of the
/// bounding box of the body.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Window {
    max_x: u64,
    max_y: u64,
    certificate: Certificate,
}

struct GapScan {
    interior: Vec<LatticePoint>,
    violations: Vec<LatticePoint>,
}

fn by_norm(points: &mut Vec<LatticePoint>) {
    points.sort_by_key(|p| (p.norm_sq(), p.x, p.y));
    points.dedup();
}

fn scan_gaps(s: &BodySemigroup, w: Window) -> GapScan {
    let (n1, n2) = (s.n1(), s.n2());
    let mut interior = Vec::new();
    let mut violations = Vec::new();
    for y in 0..=w.max_y {
        for x in 0..=w.max_x {
            let p = LatticePoint::new(x, y);
            if !s.in_cone(&p) || s.is_member(&p) {
                continue;
            }
            if s.is_interior(&p) {
                interior.push(p);
            }
            if s.is_member(&(p + n1)) && s.is_member(&(p + n2)) {
                violations.push(p);
            }
        }
    }
    by_norm(&mut interior);
    by_norm(&mut violations);
    GapScan { interior, violations }
}

/// Least integer `m >= 0` with `m^2 >= t`.
fn ceil_sqrt(t: &Rational) -> BigInt {
    let c = ceil_int(t).max(BigInt::zero());
    let m = c.sqrt();
    if &m * &m < c {
        m + 1
    } else {
        m
    }
}

/// Least integer `m >= 0` with `m^2 > t`.
fn ceil_sqrt_strict(t: &Rational) -> BigInt {
    if *t < Rational::zero() {
        return BigInt::zero();
    }
    t.floor().to_integer().sqrt() + 1
}

/// Least `h >= 1` with `2h + 1 >= m`.
fn half_index(m: BigInt) -> BigInt {
    (m / BigInt::from(2)).max(BigInt::one())
}

/// Dilation past which a circle semigroup has no interior gaps: successive
/// discs overlap, the lens between two discs next to a tangent ray sits
/// below height `1/|v|` over the ray, and chords on an axis overlap.
pub fn circle_gap_bound(s: &BodySemigroup) -> u64 {
    let ConvexBody::Circle(c) = s.body() else {
        return 0;
    };
    let r_sq = c.radius() * c.radius();
    let power = c.power();
    let four_r_sq = Rational::from_integer(BigInt::from(4)) * &r_sq;
    let mut h = half_index(ceil_sqrt(&(c.center().norm_sq() / &r_sq)));
    for side in RaySide::BOTH {
        let side_bound = match s.contact(side) {
            RayContact::Chord { offset, half_sq } => half_index(ceil_sqrt(&(offset * offset / half_sq))),
            _ => {
                let v_sq = Rational::from_integer(BigInt::from(s.tau(side).norm_sq()));
                let corner = ceil_sqrt(&(&power / &four_r_sq)).max(BigInt::one());
                let height = half_index(ceil_sqrt_strict(&(&power * &power * v_sq / &four_r_sq)));
                corner.max(height)
            }
        };
        h = h.max(side_bound);
    }
    to_u64(&h)
}

/// Least `k >= 1` with `kC` meeting `(k+1)C`.
pub fn circle_overlap_index(s: &BodySemigroup) -> u64 {
    let ConvexBody::Circle(c) = s.body() else {
        return 0;
    };
    let r_sq = c.radius() * c.radius();
    to_u64(&half_index(ceil_sqrt(&(c.center().norm_sq() / r_sq))))
}

fn circle_window(s: &BodySemigroup, opts: CheckOptions) -> Window {
    let needed = circle_gap_bound(s);
    let limit = (4 * circle_overlap_index(s)).max(opts.scan_bound.unwrap_or(DEFAULT_CIRCLE_SCAN));
    let (k, certificate) = if needed <= limit {
        (needed, Certificate::Exhaustive)
    } else {
        (limit, Certificate::Bounded { bound: limit })
    };
    let (max_x, max_y) = scaled_box(s.body(), k + 1);
    Window {
        max_x,
        max_y,
        certificate,
    }
}

fn polygon_window(s: &BodySemigroup, st: &PolygonStructure) -> Window {
    let (max_x, max_y) = st.scan_box(s);
    Window {
        max_x,
        max_y,
        certificate: Certificate::Exhaustive,
    }
}

/// Least `h >= 0` with the translated gap triangle inside the quadrant.
fn first_inner_triangle(e: &VertexEscape) -> u64 {
    let w = &e.triangle[2];
    let mut h = BigInt::zero();
    for (wc, pc) in [(&w.x, &e.vertex.x), (&w.y, &e.vertex.y)] {
        if *wc < Rational::zero() && *pc > Rational::zero() {
            h = h.max(ceil_int(&(-wc / pc)));
        }
    }
    to_u64(&h)
}

/// Lattice points in one period of the gap triangles of a vertex-contact
/// ray, each pushed along the ray until it is interior to the cone.
fn triangle_gaps(s: &BodySemigroup, e: &VertexEscape) -> Result<Vec<LatticePoint>> {
    let n = s.n(e.side);
    let h0 = first_inner_triangle(e);
    let mut out = Vec::new();
    for h in h0..h0 + e.period {
        for p in lattice_points_in(&LatticeRegion::new(e.gap_triangle(h)))? {
            let mut q = p;
            while !s.is_interior(&q) {
                q = q + n;
            }
            out.push(q);
        }
    }
    Ok(out)
}

fn interior_equality_in(s: &BodySemigroup, st: Option<&PolygonStructure>, scan: &GapScan, w: Window) -> Result<InteriorEquality> {
    let mut gaps = scan.interior.clone();
    if let Some(st) = st {
        for rs in [&st.upper, &st.lower] {
            if let Some(e) = &rs.escape {
                gaps.extend(triangle_gaps(s, e)?);
            }
        }
    }
    by_norm(&mut gaps);
    gaps.truncate(MAX_WITNESSES);
    Ok(InteriorEquality {
        equal: gaps.is_empty(),
        gaps,
        certificate: w.certificate,
    })
}

pub fn interior_equality(s: &BodySemigroup, opts: CheckOptions) -> Result<InteriorEquality> {
    if s.is_polygon() {
        let st = PolygonStructure::build(s)?;
        let w = polygon_window(s, &st);
        interior_equality_in(s, Some(&st), &scan_gaps(s, w), w)
    } else {
        let w = circle_window(s, opts);
        interior_equality_in(s, None, &scan_gaps(s, w), w)
    }
}

fn ungenerated_rays(s: &BodySemigroup) -> Vec<RaySide> {
    RaySide::BOTH.into_iter().filter(|&side| !s.ray_generated_by_n(side)).collect()
}

pub fn check_cm(s: &BodySemigroup, opts: CheckOptions) -> Result<CheckReport> {
    let st = if s.is_polygon() { Some(PolygonStructure::build(s)?) } else { None };
    let w = match &st {
        Some(st) => polygon_window(s, st),
        None => circle_window(s, opts),
    };
    let scan = scan_gaps(s, w);
    let interior = interior_equality_in(s, st.as_ref(), &scan, w)?;
    let mut witnesses = Witnesses::default();
    let rays = ungenerated_rays(s);

    let (branch, holds) = match &st {
        None => (Branch::Circle, interior.equal && rays.is_empty()),
        Some(st) if st.both_segments() => (Branch::PolygonSegments, interior.equal && rays.is_empty()),
        Some(_) if interior.equal => (Branch::PolygonEqualInteriors, rays.is_empty()),
        Some(st) => {
            let apex = st.apex.points_within(w.max_x, w.max_y);
            let mut missing: Vec<LatticePoint> = apex
                .iter()
                .chain(&st.upsilon_prime)
                .chain(&st.upsilon_double_prime)
                .copied()
                .filter(|p| !s.is_member(p))
                .collect();
            by_norm(&mut missing);
            missing.truncate(MAX_WITNESSES);
            let holds = missing.is_empty();
            witnesses.non_members = missing;
            (Branch::PolygonRegions, holds)
        }
    };
    if branch != Branch::PolygonRegions {
        witnesses.ungenerated_rays = rays;
    }

    let verdict = if !holds {
        Verdict::No
    } else if w.certificate == Certificate::Exhaustive {
        Verdict::Yes
    } else {
        Verdict::Inconclusive
    };
    witnesses.gaps = scan.violations.iter().take(MAX_WITNESSES).copied().collect();
    match verdict {
        Verdict::No if witnesses.gaps.is_empty() => {
            return Err(Error::Inconsistent(format!(
                "{branch:?} rejects the semigroup but no violating gap lies in [0, {}] x [0, {}]",
                w.max_x, w.max_y
            )));
        }
        Verdict::Yes if !witnesses.gaps.is_empty() => {
            return Err(Error::Inconsistent(format!(
                "{branch:?} accepts the semigroup but {} violates the gap criterion",
                witnesses.gaps[0]
            )));
        }
        Verdict::Inconclusive if !witnesses.gaps.is_empty() => {
            // a violating gap settles it regardless of the scan bound
            return Ok(CheckReport {
                property: Property::Cm,
                verdict: Verdict::No,
                branch,
                certificate: w.certificate,
                witnesses,
            });
        }
        _ => {}
    }
    Ok(CheckReport {
        property: Property::Cm,
        verdict,
        branch,
        certificate: w.certificate,
        witnesses,
    })
}

fn maximals(s: &BodySemigroup, points: &[LatticePoint]) -> Vec<LatticePoint> {
    points
        .iter()
        .copied()
        .filter(|p| !points.iter().any(|q| q != p && s.leq_s(p, q)))
        .collect()
}

fn sort_rows(points: &mut Vec<LatticePoint>) {
    points.sort_by_key(|p| (p.y, p.x));
    points.dedup();
}

/// The Apéry intersection from the finite candidate sets, without checking
/// the C-M precondition.
pub fn apery_candidates(s: &BodySemigroup) -> Result<AperyIntersection> {
    let mut points: Vec<LatticePoint> = if s.is_polygon() {
        let st = PolygonStructure::build(s)?;
        let h = st.h_sets(s)?;
        h.h1.into_iter().chain(h.h2).chain(h.h3).filter(|p| s.is_member(p)).collect()
    } else {
        circle_h(s)?.into_iter().filter(|p| s.is_member(p)).collect()
    };
    sort_rows(&mut points);
    let maximals = maximals(s, &points);
    Ok(AperyIntersection { points, maximals })
}

pub fn apery_intersection(s: &BodySemigroup, opts: CheckOptions) -> Result<AperyIntersection> {
    let cm = check_cm(s, opts)?;
    match cm.verdict {
        Verdict::Yes => apery_candidates(s),
        Verdict::No => Err(Error::PreconditionNotCm),
        Verdict::Inconclusive => Err(bound_exhausted(s, cm.certificate)),
    }
}

fn bound_exhausted(s: &BodySemigroup, certificate: Certificate) -> Error {
    let bound = match certificate {
        Certificate::Bounded { bound } => bound,
        Certificate::Exhaustive => 0,
    };
    Error::BoundExhausted {
        bound,
        needed: circle_gap_bound(s),
    }
}

pub fn check_gorenstein(s: &BodySemigroup, opts: CheckOptions) -> Result<CheckReport> {
    let cm = check_cm(s, opts)?;
    if cm.verdict != Verdict::Yes {
        return Ok(CheckReport {
            property: Property::Gorenstein,
            branch: if cm.verdict == Verdict::No { Branch::NotCm } else { cm.branch },
            ..cm
        });
    }
    let ap = apery_candidates(s)?;
    if ap.maximals.is_empty() {
        return Err(Error::Inconsistent("Apéry intersection has no maximal element".into()));
    }
    let verdict = if ap.maximals.len() == 1 { Verdict::Yes } else { Verdict::No };
    Ok(CheckReport {
        property: Property::Gorenstein,
        verdict,
        branch: cm.branch,
        certificate: cm.certificate.join(Certificate::Exhaustive),
        witnesses: Witnesses {
            apery: ap.points,
            maximals: ap.maximals,
            ..Witnesses::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat, Point};

    fn polygon(pts: &[(i64, i64)]) -> BodySemigroup {
        let pts = pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
        BodySemigroup::new(ConvexBody::polygon(pts).unwrap()).unwrap()
    }

    fn fig1() -> BodySemigroup {
        BodySemigroup::new(ConvexBody::circle(Point::new(rat(7, 4), int(1)), rat(1, 4)).unwrap()).unwrap()
    }

    fn lp(pts: &[(u64, u64)]) -> Vec<LatticePoint> {
        pts.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
    }

    #[test]
    fn square_roots() {
        assert_eq!(ceil_sqrt(&rat(9, 1)), BigInt::from(3));
        assert_eq!(ceil_sqrt(&rat(10, 1)), BigInt::from(4));
        assert_eq!(ceil_sqrt(&rat(1, 4)), BigInt::from(1));
        assert_eq!(ceil_sqrt_strict(&rat(9, 1)), BigInt::from(4));
        assert_eq!(ceil_sqrt_strict(&rat(17, 2)), BigInt::from(3));
        assert_eq!(half_index(BigInt::from(7)), BigInt::from(3));
        assert_eq!(half_index(BigInt::from(8)), BigInt::from(4));
        assert_eq!(half_index(BigInt::from(0)), BigInt::from(1));
    }

    #[test]
    fn fig1_bounds() {
        let s = fig1();
        assert_eq!(circle_overlap_index(&s), 4);
        assert_eq!(circle_gap_bound(&s), 52);
    }

    #[test]
    fn fig1_is_cm() {
        let s = fig1();
        let ie = interior_equality(&s, CheckOptions::default()).unwrap();
        assert!(ie.equal);
        assert_eq!(ie.certificate, Certificate::Exhaustive);
        let r = check_cm(&s, CheckOptions::default()).unwrap();
        assert_eq!((r.verdict, r.branch), (Verdict::Yes, Branch::Circle));
    }

    #[test]
    fn small_scan_bound_is_inconclusive() {
        let r = check_cm(&fig1(), CheckOptions { scan_bound: Some(8) }).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.certificate, Certificate::Bounded { bound: 16 });
        assert!(matches!(
            apery_intersection(&fig1(), CheckOptions { scan_bound: Some(8) }),
            Err(Error::BoundExhausted { bound: 16, needed: 52 })
        ));
    }

    #[test]
    fn fig3_has_interior_gaps() {
        let s = polygon(&[(4, 0), (7, 3), (10, 0)]);
        let ie = interior_equality(&s, CheckOptions::default()).unwrap();
        assert!(!ie.equal);
        assert!(!ie.gaps.is_empty());
        assert!(ie.gaps.iter().all(|g| s.is_interior(g) && !s.is_member(g)));
    }

    #[test]
    fn fig3_is_gorenstein() {
        let s = polygon(&[(4, 0), (7, 3), (10, 0)]);
        let cm = check_cm(&s, CheckOptions::default()).unwrap();
        assert_eq!((cm.verdict, cm.branch), (Verdict::Yes, Branch::PolygonRegions));
        let ap = apery_intersection(&s, CheckOptions::default()).unwrap();
        let expected = lp(&[
            (0, 0),
            (5, 0),
            (6, 0),
            (7, 0),
            (5, 1),
            (6, 1),
            (7, 1),
            (8, 1),
            (6, 2),
            (7, 2),
            (8, 2),
            (13, 2),
        ]);
        assert_eq!(ap.points, expected);
        assert_eq!(ap.maximals, lp(&[(13, 2)]));
        let g = check_gorenstein(&s, CheckOptions::default()).unwrap();
        assert_eq!(g.verdict, Verdict::Yes);
    }

    #[test]
    fn simplex_is_trivially_cm() {
        let s = polygon(&[(0, 0), (1, 0), (0, 1)]);
        let ie = interior_equality(&s, CheckOptions::default()).unwrap();
        assert!(ie.equal && ie.gaps.is_empty());
        let g = check_gorenstein(&s, CheckOptions::default()).unwrap();
        assert_eq!(g.verdict, Verdict::Yes);
        assert_eq!(g.witnesses.maximals, lp(&[(0, 0)]));
    }
}
