//! JSON input documents. Rationals travel as strings so nothing is rounded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{format_rational, parse_rational, ConvexBody, Point};

/// A body description:
///
/// ```json
/// {"type": "polygon", "vertices": [["4", "0"], ["7", "3"], ["10", "0"]]}
/// {"type": "circle", "center": ["7/4", "1"], "radius": "1/4"}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Polygon { vertices: Vec<[String; 2]> },
    Circle { center: [String; 2], radius: String },
}

fn point(p: &[String; 2]) -> Result<Point> {
    Ok(Point::new(parse_rational(&p[0])?, parse_rational(&p[1])?))
}

fn strings(p: &Point) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

impl BodySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidBody(format!("malformed body document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("body specs always serialize")
    }

    pub fn to_body(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Polygon { vertices } => {
                ConvexBody::polygon(vertices.iter().map(point).collect::<Result<Vec<_>>>()?)
            }
            BodySpec::Circle { center, radius } => ConvexBody::circle(point(center)?, parse_rational(radius)?),
        }
    }

    /// Canonical description: polygon vertices in counter-clockwise order,
    /// rationals in lowest terms.
    pub fn from_body(body: &ConvexBody) -> Self {
        match body {
            ConvexBody::Polygon(p) => BodySpec::Polygon {
                vertices: p.vertices().iter().map(strings).collect(),
            },
            ConvexBody::Circle(c) => BodySpec::Circle {
                center: strings(c.center()),
                radius: format_rational(c.radius()),
            },
        }
    }
}
