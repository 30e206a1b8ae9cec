//! Example bodies: the Gorenstein triangle family and seeded random
//! polygons.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{convex_hull, ConvexBody, LatticePoint, Point, Rational};
use crate::semigroup::BodySemigroup;

/// The triangle `{(4,0), (4+2k,0), (4+k,k)}`, `k >= 2`.
pub fn gorenstein_triangle(k: u64) -> Result<ConvexBody> {
    check_k(k)?;
    let k = k as i64;
    ConvexBody::polygon(vec![
        Point::from_ints(4, 0),
        Point::from_ints(4 + 2 * k, 0),
        Point::from_ints(4 + k, k),
    ])
}

/// Unique maximal Apéry element of the family body.
pub fn expected_maximal(k: u64) -> Result<LatticePoint> {
    check_k(k)?;
    Ok(LatticePoint::new(10 + k, k - 1))
}

/// The Apéry intersection of the family body, row by row, written out
/// from its closed form.
pub fn expected_apery(k: u64) -> Result<Vec<LatticePoint>> {
    check_k(k)?;
    let mut out: Vec<LatticePoint> = [0, 5, 6, 7].iter().map(|&x| LatticePoint::new(x, 0)).collect();
    // rows y = k - i for i = k-1 down to 2
    for y in 1..k - 1 {
        out.extend((0..4).map(|j| LatticePoint::new(4 + y + j, y)));
    }
    out.extend([3 + k, 4 + k, 5 + k, 10 + k].iter().map(|&x| LatticePoint::new(x, k - 1)));
    Ok(out)
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("family index must be at least 2, got {k}")));
    }
    Ok(())
}

/// Sampling range for random vertices: coordinates `a / d` with
/// `1 <= d <= max_denominator` and `0 <= a / d <= max_coord`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomBounds {
    pub max_coord: u64,
    pub max_denominator: u64,
}

impl Default for RandomBounds {
    fn default() -> Self {
        Self {
            max_coord: 6,
            max_denominator: 3,
        }
    }
}

fn random_rational(rng: &mut ChaCha8Rng, b: RandomBounds) -> Rational {
    let d = rng.random_range(1..=b.max_denominator.max(1));
    let a = rng.random_range(0..=b.max_coord * d);
    Rational::new(BigInt::from(a), BigInt::from(d))
}

fn random_point(rng: &mut ChaCha8Rng, b: RandomBounds) -> Point {
    Point::new(random_rational(rng, b), random_rational(rng, b))
}

/// A random convex polygon with exactly `vertices` vertices whose
/// semigroup is simplicial with both ray generators found. Deterministic
/// per seed; invalid samples are drawn again.
pub fn random_polygon(seed: u64, bounds: RandomBounds, vertices: usize) -> Result<ConvexBody> {
    if vertices < 3 || bounds.max_coord == 0 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 vertices and a positive coordinate range, got {vertices} and {}",
            bounds.max_coord
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Point> = (0..vertices).map(|_| random_point(&mut rng, bounds)).collect();
        let hull = convex_hull(&pts);
        if hull.len() != vertices {
            continue;
        }
        let Ok(body) = ConvexBody::polygon(hull) else {
            continue;
        };
        if BodySemigroup::new(body.clone()).is_ok() {
            return Ok(body);
        }
    }
}

pub fn random_triangle(seed: u64, bounds: RandomBounds) -> Result<ConvexBody> {
    random_polygon(seed, bounds, 3)
}
