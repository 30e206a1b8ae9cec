//! Sample semigroups shared by the benchmarks.

use cbsemi::{gorenstein_triangle, BodySemigroup, BodySpec};

const FIG1: &str = r#"{"type":"circle","center":["7/4","1"],"radius":"1/4"}"#;
const FIG2: &str = r#"{"type":"polygon","vertices":[["3/2","1"],["2","1/2"],["13/5","13/20"],["2","9/10"]]}"#;
const FIG3: &str = r#"{"type":"polygon","vertices":[["4","0"],["10","0"],["7","3"]]}"#;

fn parse(text: &str) -> BodySemigroup {
    BodySemigroup::new(BodySpec::from_json(text).unwrap().to_body().unwrap()).unwrap()
}

/// Named bodies: the circle, a quadrilateral and a triangle.
pub fn samples() -> Vec<(&'static str, BodySemigroup)> {
    vec![("circle", parse(FIG1)), ("quadrilateral", parse(FIG2)), ("triangle", parse(FIG3))]
}

pub fn family(k: u64) -> BodySemigroup {
    BodySemigroup::new(gorenstein_triangle(k).unwrap()).unwrap()
}
