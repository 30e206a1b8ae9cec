//! The semigroup of lattice points in the integer dilations of a body.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    ceil_int, cone_rays, floor_int, integer_in_interval, ray_body_interval, sqrt_bounds, ConeRays, ConvexBody,
    Direction, LatticePoint, Point, Rational, RayContact,
};

/// One of the two extremal rays; `Upper` has the greater slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RaySide {
    Upper,
    Lower,
}

impl RaySide {
    pub const BOTH: [RaySide; 2] = [RaySide::Upper, RaySide::Lower];

    pub fn other(self) -> RaySide {
        match self {
            RaySide::Upper => RaySide::Lower,
            RaySide::Lower => RaySide::Upper,
        }
    }

    /// 1 for the upper ray, 2 for the lower.
    pub fn index(self) -> usize {
        match self {
            RaySide::Upper => 1,
            RaySide::Lower => 2,
        }
    }
}

impl fmt::Display for RaySide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau{}", self.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipWitness {
    /// Dilation index: zero only for the origin.
    pub k: u64,
}

/// The semigroup of all lattice points of `k * F`, `k >= 0`, with its cone
/// data and ray generators.
#[derive(Clone, Debug)]
pub struct BodySemigroup {
    body: ConvexBody,
    rays: ConeRays,
    n1: LatticePoint,
    n2: LatticePoint,
}

impl BodySemigroup {
    pub fn new(body: ConvexBody) -> Result<Self> {
        let rays = cone_rays(&body)?;
        if let ConvexBody::Polygon(p) = &body {
            if p.is_degenerate() {
                return Err(Error::InvalidBody("polygon needs three non-collinear vertices".into()));
            }
        }
        let mut s = Self {
            body,
            rays,
            n1: LatticePoint::ORIGIN,
            n2: LatticePoint::ORIGIN,
        };
        s.n1 = s.find_generator(RaySide::Upper)?;
        s.n2 = s.find_generator(RaySide::Lower)?;
        Ok(s)
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn rays(&self) -> &ConeRays {
        &self.rays
    }

    pub fn tau(&self, side: RaySide) -> Direction {
        match side {
            RaySide::Upper => self.rays.upper,
            RaySide::Lower => self.rays.lower,
        }
    }

    pub fn contact(&self, side: RaySide) -> &RayContact {
        match side {
            RaySide::Upper => &self.rays.upper_contact,
            RaySide::Lower => &self.rays.lower_contact,
        }
    }

    pub fn n(&self, side: RaySide) -> LatticePoint {
        match side {
            RaySide::Upper => self.n1,
            RaySide::Lower => self.n2,
        }
    }

    pub fn n1(&self) -> LatticePoint {
        self.n1
    }

    pub fn n2(&self) -> LatticePoint {
        self.n2
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self.body, ConvexBody::Polygon(_))
    }

    /// Weakly between the two rays.
    pub fn in_cone(&self, p: &LatticePoint) -> bool {
        p.cross_from(&self.rays.lower) >= 0 && p.cross_from(&self.rays.upper) <= 0
    }

    pub fn in_cone_point(&self, p: &Point) -> bool {
        !self.rays.lower.cross_point(p).is_negative() && !self.rays.upper.cross_point(p).is_positive()
    }

    /// Strictly between the two rays.
    pub fn is_interior(&self, p: &LatticePoint) -> bool {
        p.cross_from(&self.rays.lower) > 0 && p.cross_from(&self.rays.upper) < 0
    }

    pub fn is_interior_point(&self, p: &Point) -> bool {
        self.rays.lower.cross_point(p).is_positive() && self.rays.upper.cross_point(p).is_negative()
    }

    pub fn contains(&self, p: &LatticePoint) -> Option<MembershipWitness> {
        if p.is_origin() {
            return Some(MembershipWitness { k: 0 });
        }
        if !self.in_cone(p) {
            return None;
        }
        let k = self.body.dilation_index(p)?;
        Some(MembershipWitness {
            k: k.to_u64().expect("dilation index fits u64"),
        })
    }

    pub fn is_member(&self, p: &LatticePoint) -> bool {
        self.contains(p).is_some()
    }

    /// Membership through the rational interval API; slower than
    /// [`BodySemigroup::contains`] and used to cross-check it.
    pub fn contains_via_interval(&self, p: &LatticePoint) -> Option<MembershipWitness> {
        if p.is_origin() {
            return Some(MembershipWitness { k: 0 });
        }
        if !self.in_cone(p) {
            return None;
        }
        let k = integer_in_interval(&ray_body_interval(&self.body, &p.to_point()))?;
        Some(MembershipWitness {
            k: k.to_u64().expect("dilation index fits u64"),
        })
    }

    /// `x <=_S y`: `y - x` lies in the semigroup.
    pub fn leq_s(&self, x: &LatticePoint, y: &LatticePoint) -> bool {
        y.checked_sub(x).is_some_and(|d| self.is_member(&d))
    }

    pub fn ray_generator(&self, side: RaySide) -> LatticePoint {
        self.n(side)
    }

    /// Whether every member on the ray is a multiple of its generator.
    pub fn ray_generated_by_n(&self, side: RaySide) -> bool {
        match self.contact(side) {
            RayContact::Point { .. } => true,
            // dilated contact intervals eventually hold two consecutive
            // integers, one of which is not a multiple of m > 1
            _ => self.generator_multiple(side) == 1,
        }
    }

    /// `m` with `n_i = m * v_i`, `v_i` the primitive direction of the ray.
    pub fn generator_multiple(&self, side: RaySide) -> u64 {
        let n = self.n(side);
        let v = self.tau(side);
        if v.dx() != 0 {
            n.x / v.dx()
        } else {
            n.y / v.dy()
        }
    }

    /// Parameters `alpha <= beta` of the contact along the primitive
    /// direction, as rational bounds `(alpha_lo, alpha_hi, beta_lo, beta_hi)`.
    pub(crate) fn contact_params(&self, side: RaySide) -> (Rational, Rational, Rational, Rational) {
        let v = self.tau(side);
        match self.contact(side) {
            RayContact::Point { point, .. } => {
                let t = v.parameter_of(point);
                (t.clone(), t.clone(), t.clone(), t)
            }
            RayContact::Segment { near, far } => {
                let a = v.parameter_of(near);
                let b = v.parameter_of(far);
                (a.clone(), a, b.clone(), b)
            }
            RayContact::Chord { offset, half_sq } => {
                let (lo, hi) = sqrt_bounds(half_sq, 64);
                (offset - &hi, offset - &lo, offset + &lo, offset + &hi)
            }
        }
    }

    fn find_generator(&self, side: RaySide) -> Result<LatticePoint> {
        let v = self.tau(side);
        if let RayContact::Point { point, .. } = self.contact(side) {
            let c = point.denominator_lcm();
            return point
                .scale(&Rational::from_integer(c))
                .to_lattice()
                .ok_or_else(|| Error::Inconsistent(format!("contact point {point} leaves the lattice range")));
        }
        let (_, alpha_hi, beta_lo, beta_hi) = self.contact_params(side);
        let width = &beta_lo - &alpha_hi;
        if !width.is_positive() {
            return Err(Error::Inconsistent(format!("contact on {side} has no positive width")));
        }
        // from k0 = ceil(1 / width) on, [k alpha, k beta] holds an integer
        let k0 = ceil_int(&(Rational::one() / &width));
        let bound = floor_int(&(Rational::from_integer(k0) * &beta_hi)) + BigInt::one();
        let bound = bound.to_u64().unwrap_or(u64::MAX);
        let mut m: u64 = 1;
        while m <= bound {
            let p = v.as_lattice().scale(m);
            if self.is_member(&p) {
                return Ok(p);
            }
            m += 1;
        }
        Err(Error::GeneratorNotFound { side, bound })
    }
}
