//! Brute-force reference answers over a finite box.
//!
//! Membership here comes from sweeping the dilations `kF` one by one and
//! testing every lattice point of each dilation's bounding box, which shares
//! no code with the per-point ray test in [`crate::semigroup`]. Every answer
//! is relative to the box.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ConvexBody, LatticePoint, Point, Rational};
use crate::semigroup::BodySemigroup;

/// The lattice box `[0, max_x] x [0, max_y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeBox {
    pub max_x: u64,
    pub max_y: u64,
}

impl LatticeBox {
    pub fn new(max_x: u64, max_y: u64) -> Self {
        Self { max_x, max_y }
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.x <= self.max_x && p.y <= self.max_y
    }

    pub fn len(&self) -> usize {
        ((self.max_x + 1) * (self.max_y + 1)) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (0..=self.max_y).flat_map(move |y| (0..=self.max_x).map(move |x| LatticePoint::new(x, y)))
    }

    fn index(&self, p: &LatticePoint) -> usize {
        (p.y * (self.max_x + 1) + p.x) as usize
    }
}

/// Members of the semigroup inside a box.
#[derive(Clone, Debug)]
pub struct MemberSet {
    bounds: LatticeBox,
    bits: Vec<bool>,
}

impl MemberSet {
    pub fn bounds(&self) -> LatticeBox {
        self.bounds
    }

    /// Exact for points of the box; `false` outside it.
    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.bounds.contains(p) && self.bits[self.bounds.index(p)]
    }

    pub fn iter(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.bounds.points().filter(|p| self.contains(p))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn floor_u64(q: &Rational) -> Option<u64> {
    let f = q.floor().to_integer();
    if f < BigInt::zero() {
        None
    } else {
        Some(f.to_u64().unwrap_or(u64::MAX))
    }
}

fn ceil_u64(q: &Rational) -> u64 {
    let c = q.ceil().to_integer();
    c.to_u64().unwrap_or(if c < BigInt::zero() { 0 } else { u64::MAX })
}

/// Whether `kF` already contains every point of the cone within the box;
/// only meaningful when `F` contains the origin, so dilations are nested.
fn covers_cone_box(body: &ConvexBody, bounds: LatticeBox, k: u64) -> bool {
    let corners = [
        LatticePoint::new(0, 0),
        LatticePoint::new(bounds.max_x, 0),
        LatticePoint::new(0, bounds.max_y),
        LatticePoint::new(bounds.max_x, bounds.max_y),
    ];
    let ConvexBody::Polygon(poly) = body else {
        return false;
    };
    let k = Rational::from_integer(BigInt::from(k));
    // the cone of F is spanned by its vertices; clip each vertex ray to the box
    let mut targets: Vec<Point> = corners
        .iter()
        .map(LatticePoint::to_point)
        .filter(|c| in_vertex_cone(poly.vertices(), c))
        .collect();
    for v in poly.vertices().iter().filter(|v| !v.is_origin()) {
        let tx = if v.x.is_zero() {
            None
        } else {
            Some(Rational::from_integer(BigInt::from(bounds.max_x)) / &v.x)
        };
        let ty = if v.y.is_zero() {
            None
        } else {
            Some(Rational::from_integer(BigInt::from(bounds.max_y)) / &v.y)
        };
        let t = match (tx, ty) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => continue,
        };
        targets.push(v.scale(&t));
    }
    targets.iter().all(|p| body.contains_point_scaled(p, &k))
}

fn in_vertex_cone(vs: &[Point], p: &Point) -> bool {
    if p.is_origin() {
        return true;
    }
    // p lies in the cone iff it is a nonnegative combination of two vertices
    let nz: Vec<&Point> = vs.iter().filter(|v| !v.is_origin()).collect();
    nz.iter().any(|a| {
        nz.iter().any(|b| {
            let det = a.cross(b);
            if det.is_zero() {
                return a.cross(p).is_zero() && a.dot(p) > Rational::zero();
            }
            let s = p.cross(b) / &det;
            let t = a.cross(p) / &det;
            s >= Rational::zero() && t >= Rational::zero()
        })
    })
}

/// All members in the box, by sweeping dilations `k = 0, 1, ...` until `kF`
/// provably misses the box (or, when `O` is in `F`, covers it).
pub fn enumerate(body: &ConvexBody, bounds: LatticeBox) -> MemberSet {
    let mut bits = vec![false; bounds.len()];
    bits[0] = true;
    let (lo, hi) = body.bounding_box();
    let min_sq = body.min_norm_sq_lower_bound();
    let diag_sq = Rational::from_integer(BigInt::from(bounds.max_x).pow(2u32) + BigInt::from(bounds.max_y).pow(2u32));
    let nested = min_sq.is_zero();
    let mut k: u64 = 1;
    loop {
        let kr = Rational::from_integer(BigInt::from(k));
        if !nested && &kr * &kr * &min_sq > diag_sq {
            break;
        }
        let x0 = ceil_u64(&(&lo.x * &kr));
        let y0 = ceil_u64(&(&lo.y * &kr));
        let x1 = floor_u64(&(&hi.x * &kr)).map(|v| v.min(bounds.max_x));
        let y1 = floor_u64(&(&hi.y * &kr)).map(|v| v.min(bounds.max_y));
        if let (Some(x1), Some(y1)) = (x1, y1) {
            for y in y0..=y1 {
                for x in x0..=x1 {
                    let p = LatticePoint::new(x, y);
                    let i = bounds.index(&p);
                    if !bits[i] && body.contains_lattice_scaled(&p, k) {
                        bits[i] = true;
                    }
                }
            }
        }
        if nested && covers_cone_box(body, bounds, k) {
            break;
        }
        k += 1;
    }
    MemberSet { bounds, bits }
}

/// Box-relative answer of the gap criterion: every gap `a` of the cone in
/// the box with `a + n1` and `a + n2` also in the box and both members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCm {
    pub bounds: LatticeBox,
    /// Violating gaps, by increasing squared norm.
    pub witnesses: Vec<LatticePoint>,
    pub gaps_seen: usize,
}

impl OracleCm {
    /// No violation inside the box.
    pub fn is_cm_in_box(&self) -> bool {
        self.witnesses.is_empty()
    }
}

pub fn oracle_cm(s: &BodySemigroup, bounds: LatticeBox) -> OracleCm {
    let members = enumerate(s.body(), bounds);
    oracle_cm_with(s, &members)
}

/// As [`oracle_cm`] with a precomputed member set.
pub fn oracle_cm_with(s: &BodySemigroup, members: &MemberSet) -> OracleCm {
    let bounds = members.bounds();
    let (n1, n2) = (s.n1(), s.n2());
    let mut witnesses = Vec::new();
    let mut gaps_seen = 0;
    for a in bounds.points() {
        if members.contains(&a) || !s.in_cone(&a) {
            continue;
        }
        gaps_seen += 1;
        let (b1, b2) = (a + n1, a + n2);
        if bounds.contains(&b1) && bounds.contains(&b2) && members.contains(&b1) && members.contains(&b2) {
            witnesses.push(a);
        }
    }
    witnesses.sort_by_key(|p| (p.norm_sq(), p.x, p.y));
    OracleCm {
        bounds,
        witnesses,
        gaps_seen,
    }
}

/// `{s in S : s - n not in S}` within the box.
pub fn oracle_apery(s: &BodySemigroup, n: LatticePoint, bounds: LatticeBox) -> Result<Vec<LatticePoint>> {
    let members = enumerate(s.body(), bounds);
    oracle_apery_with(&members, n)
}

pub fn oracle_apery_with(members: &MemberSet, n: LatticePoint) -> Result<Vec<LatticePoint>> {
    if !members.contains(&n) {
        return Err(Error::NotAMember(n));
    }
    Ok(members
        .iter()
        .filter(|p| p.checked_sub(&n).is_none_or(|d| !members.contains(&d)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};

    fn body(pts: &[(i64, i64)]) -> ConvexBody {
        ConvexBody::polygon(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    #[test]
    fn simplex_fills_the_box() {
        let m = enumerate(&body(&[(0, 0), (1, 0), (0, 1)]), LatticeBox::new(5, 5));
        assert_eq!(m.len(), 36);
    }

    #[test]
    fn triangle_members() {
        let m = enumerate(&body(&[(4, 0), (7, 3), (10, 0)]), LatticeBox::new(12, 4));
        for (x, y) in [(4, 0), (5, 0), (7, 3)] {
            assert!(m.contains(&LatticePoint::new(x, y)));
        }
        for (x, y) in [(1, 0), (2, 1)] {
            assert!(!m.contains(&LatticePoint::new(x, y)));
        }
    }

    #[test]
    fn circle_members() {
        let c = ConvexBody::circle(Point::new(rat(7, 4), int(1)), rat(1, 4)).unwrap();
        let m = enumerate(&c, LatticeBox::new(30, 30));
        assert!(m.contains(&LatticePoint::new(2, 1)));
        assert!(m.contains(&LatticePoint::new(8, 6)));
        assert!(!m.contains(&LatticePoint::new(1, 1)));
    }

    #[test]
    fn simplex_apery_is_a_column() {
        let s = BodySemigroup::new(body(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        let ap = oracle_apery(&s, LatticePoint::new(1, 0), LatticeBox::new(4, 4)).unwrap();
        assert_eq!(ap, (0..=4).map(|y| LatticePoint::new(0, y)).collect::<Vec<_>>());
        assert!(oracle_cm(&s, LatticeBox::new(6, 6)).witnesses.is_empty());
        assert_eq!(oracle_cm(&s, LatticeBox::new(6, 6)).gaps_seen, 0);
    }

    #[test]
    fn apery_of_non_member_is_an_error() {
        let s = BodySemigroup::new(body(&[(4, 0), (7, 3), (10, 0)])).unwrap();
        assert_eq!(
            oracle_apery(&s, LatticePoint::new(1, 0), LatticeBox::new(10, 10)),
            Err(Error::NotAMember(LatticePoint::new(1, 0)))
        );
    }
}
