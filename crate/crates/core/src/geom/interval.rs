use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ceil_int, lcm_denominators, ConvexBody, Point, Rational};

/// `a k^2 + b k + c` with `a > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Quadratic {
    pub fn eval(&self, k: &Rational) -> Rational {
        (&self.a * k + &self.b) * k + &self.c
    }

    pub fn discriminant(&self) -> Rational {
        &self.b * &self.b - Rational::from_integer(BigInt::from(4)) * &self.a * &self.c
    }
}

/// The set of scalings `k > 0` with `P` in `k * F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalingInterval {
    Empty,
    /// `lo <= k <= hi`; `hi = None` means unbounded above.
    Linear { lo: Rational, hi: Option<Rational> },
    /// `{k >= 0 : q(k) <= 0}`, nonempty.
    Quadratic(Quadratic),
}

/// Scalings `k > 0` with `p` in `k * F`. For the origin the answer is the
/// whole positive half-line only when `F` contains it; otherwise empty.
pub fn ray_body_interval(body: &ConvexBody, p: &Point) -> ScalingInterval {
    match body {
        ConvexBody::Polygon(poly) => {
            let mut lo = Rational::zero();
            let mut hi: Option<Rational> = None;
            for h in poly.constraints() {
                let a = Rational::from_integer(h.a.clone());
                let b = Rational::from_integer(h.b.clone());
                let s = a * &p.x + b * &p.y;
                if h.c.is_zero() {
                    if s.is_positive() {
                        return ScalingInterval::Empty;
                    }
                    continue;
                }
                let ratio = s / Rational::from_integer(h.c.clone());
                if h.c.is_positive() {
                    lo = lo.max(ratio);
                } else {
                    hi = Some(match hi {
                        Some(h) => h.min(ratio),
                        None => ratio,
                    });
                }
            }
            if poly.is_degenerate() {
                return degenerate_interval(body, p);
            }
            match &hi {
                Some(h) if !h.is_positive() || *h < lo => ScalingInterval::Empty,
                _ => ScalingInterval::Linear { lo, hi },
            }
        }
        ConvexBody::Circle(c) => {
            let q = Quadratic {
                a: c.power(),
                b: -Rational::from_integer(BigInt::from(2)) * p.dot(c.center()),
                c: p.norm_sq(),
            };
            if q.discriminant().is_negative() {
                ScalingInterval::Empty
            } else {
                ScalingInterval::Quadratic(q)
            }
        }
    }
}

/// Points and segments have no half-plane description; test the endpoints
/// of the segment as seen along the ray directly.
fn degenerate_interval(body: &ConvexBody, p: &Point) -> ScalingInterval {
    let ConvexBody::Polygon(poly) = body else {
        unreachable!("only polygons degenerate")
    };
    let vs = poly.vertices();
    let (a, b) = (&vs[0], vs.last().expect("nonempty"));
    // p = k * (a + t (b - a)) for some t in [0, 1], k > 0
    let d = b - a;
    let det = a.cross(&d);
    if det.is_zero() {
        // the segment lies on a line through the origin, or is a point
        let candidates: Vec<Rational> = [a, b]
            .into_iter()
            .filter(|v| !v.is_origin() && v.cross(p).is_zero() && v.dot(p).is_positive())
            .map(|v| p.norm_sq() / v.dot(p))
            .collect();
        let (Some(lo), Some(hi)) = (candidates.iter().min(), candidates.iter().max()) else {
            return ScalingInterval::Empty;
        };
        let contains_origin = vs.iter().any(Point::is_origin)
            || (a.dot(b).is_negative() && a.cross(b).is_zero());
        return ScalingInterval::Linear {
            lo: lo.clone(),
            hi: if contains_origin { None } else { Some(hi.clone()) },
        };
    }
    // solve p = k a + (k t) d: k t = (a x p) / (a x d), k = (p x d) / (a x d)
    let k = p.cross(&d) / &det;
    let kt = a.cross(p) / &det;
    if !k.is_positive() || kt.is_negative() || kt > k {
        return ScalingInterval::Empty;
    }
    ScalingInterval::Linear {
        lo: k.clone(),
        hi: Some(k),
    }
}

/// Least integer `k >= 1` in the interval.
pub fn integer_in_interval(interval: &ScalingInterval) -> Option<BigInt> {
    match interval {
        ScalingInterval::Empty => None,
        ScalingInterval::Linear { lo, hi } => {
            let k = ceil_int(lo).max(BigInt::one());
            match hi {
                Some(h) if Rational::from_integer(k.clone()) > *h => None,
                _ => Some(k),
            }
        }
        ScalingInterval::Quadratic(q) => {
            let scale = Rational::from_integer(lcm_denominators([&q.a, &q.b, &q.c]));
            let to_int = |v: &Rational| (v * &scale).to_integer();
            least_nonpositive_from_one(&to_int(&q.a), &to_int(&q.b), &to_int(&q.c))
        }
    }
}

/// Least integer `k >= 1` with `a k^2 + b k + c <= 0`, for `a > 0`.
pub(crate) fn least_nonpositive_from_one(a: &BigInt, b: &BigInt, c: &BigInt) -> Option<BigInt> {
    debug_assert!(a.is_positive());
    let disc = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return None;
    }
    let s = disc.sqrt();
    let two_a = BigInt::from(2) * a;
    // the smaller root lies in ((-b - s - 1) / 2a, (-b - s) / 2a]
    let lo = Integer::div_ceil(&(-b - &s - 1), &two_a).max(BigInt::one());
    let hi = Integer::div_ceil(&(-b - &s), &two_a).max(lo.clone());
    let q = |k: &BigInt| (a * k + b) * k + c;
    let mut k = lo;
    while k <= hi {
        if !q(&k).is_positive() {
            return Some(k);
        }
        k += 1;
    }
    // past the smaller root, q <= 0 up to the larger root
    if !q(&k).is_positive() {
        Some(k)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat, Circle, ConvexPolygon};

    fn fig3() -> ConvexBody {
        ConvexBody::Polygon(
            ConvexPolygon::new(vec![Point::from_ints(4, 0), Point::from_ints(7, 3), Point::from_ints(10, 0)])
                .unwrap(),
        )
    }

    #[test]
    fn polygon_interval_on_the_axis() {
        let iv = ray_body_interval(&fig3(), &Point::from_ints(5, 0));
        assert_eq!(
            iv,
            ScalingInterval::Linear {
                lo: rat(1, 2),
                hi: Some(rat(5, 4))
            }
        );
        assert_eq!(integer_in_interval(&iv), Some(BigInt::from(1)));
        let iv = ray_body_interval(&fig3(), &Point::from_ints(3, 0));
        assert_eq!(integer_in_interval(&iv), None);
    }

    #[test]
    fn circle_interval_is_quadratic() {
        let c = Circle::new(Point::new(rat(7, 4), int(1)), rat(1, 4)).unwrap();
        let iv = ray_body_interval(&ConvexBody::Circle(c), &Point::from_ints(2, 1));
        let ScalingInterval::Quadratic(q) = &iv else {
            panic!("expected a quadratic interval, got {iv:?}");
        };
        assert_eq!((q.a.clone(), q.b.clone(), q.c.clone()), (int(4), int(-9), int(5)));
        assert_eq!(integer_in_interval(&iv), Some(BigInt::from(1)));
    }

    #[test]
    fn least_root_search() {
        let n = |v: i64| BigInt::from(v);
        // (k - 3)(k - 5)
        assert_eq!(least_nonpositive_from_one(&n(1), &n(-8), &n(15)), Some(n(3)));
        // 4k^2 - 9k + 5 has roots 1 and 5/4
        assert_eq!(least_nonpositive_from_one(&n(4), &n(-9), &n(5)), Some(n(1)));
        // roots 2.2 and 2.8: no integer between
        assert_eq!(least_nonpositive_from_one(&n(25), &n(-125), &n(154)), None);
        // both roots below one
        assert_eq!(least_nonpositive_from_one(&n(1), &n(0), &n(-1)), Some(n(1)));
        assert_eq!(least_nonpositive_from_one(&n(4), &n(-2), &n(0)), None);
    }
}
