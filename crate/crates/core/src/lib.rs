//! Exact Cohen-Macaulay and Gorenstein checks for convex body semigroups.
//!
//! A rational convex polygon or disc `F` in the first quadrant generates the
//! affine semigroup of all lattice points lying in some integer dilation
//! `k * F`. This crate decides membership, finds the ray generators, builds
//! the geometric regions that control the semigroup's gaps, and decides the
//! Cohen-Macaulay and Gorenstein properties, with a brute-force oracle for
//! cross-validation.

pub mod checkers;
pub mod error;
pub mod families;
pub mod geom;
pub mod oracle;
pub mod render;
pub mod schema;
pub mod semigroup;
pub mod structure;

pub use checkers::{
    apery_intersection, check_cm, check_gorenstein, interior_equality, AperyIntersection, Branch, Certificate,
    CheckOptions, CheckReport, InteriorEquality, Property, Verdict, Witnesses,
};
pub use error::{Error, ErrorClass, Result};
pub use geom::{
    cone_rays, format_rational, integer_in_interval, lattice_points_in, line_intersect, parse_rational,
    ray_body_interval, reduce_primitive, Circle, ConeRays, ConvexBody, ConvexPolygon, ConvexRegion, Direction,
    HalfPlane, LatticePoint, LatticeRegion, Line, LineIntersection, Point, Rational, RayContact, ScalingInterval,
};
pub use semigroup::{BodySemigroup, MembershipWitness, RaySide};
pub use oracle::{enumerate, oracle_apery, oracle_cm, LatticeBox, MemberSet, OracleCm};
pub use families::{expected_apery, gorenstein_triangle, random_polygon, random_triangle, RandomBounds};
pub use render::{render_svg, Decorations};
pub use schema::BodySpec;
