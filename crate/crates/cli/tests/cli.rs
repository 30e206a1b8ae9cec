use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use cbsemi::{random_polygon, BodySemigroup, BodySpec, LatticePoint, RandomBounds};
use cbsemi_cli::{Report, SCHEMA};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cbsemi"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn exit_codes() {
    let fig3 = fixture("fig3.json");
    let non_cm = fixture("non_cm_quad.json");
    let fig1 = fixture("fig1_circle.json");
    let cases: [(&[&str], i32); 6] = [
        (&["check-cm", &fig3], 0),
        (&["check-cm", &non_cm], 0),
        (&["apery", &non_cm], 2),
        (&["--scan-bound", "8", "check-cm", &fig1], 3),
        (&["member", &fig3, "--point", "x"], 1),
        (&["no-such-command"], 1),
    ];
    for (args, code) in cases {
        assert_eq!(run(args, None).status.code(), Some(code), "{args:?}");
    }
}

#[test]
fn error_reports_are_documents() {
    let out = run(&["--json", "--no-timing", "apery", &fixture("non_cm_quad.json")], None);
    let r = report(&out);
    assert_eq!(r.schema, SCHEMA);
    assert_eq!(r.error.unwrap().kind, "precondition");
    let out = run(&["--json", "--no-timing", "--scan-bound", "8", "check-cm", &fixture("fig1_circle.json")], None);
    assert_eq!(report(&out).result.unwrap()["verdict"], "inconclusive");
}

#[test]
fn reads_body_from_stdin() {
    let text = std::fs::read_to_string(fixture("fig3.json")).unwrap();
    let out = run(&["--json", "--no-timing", "check-gorenstein", "-"], Some(&text));
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r.result.as_ref().unwrap()["gorenstein"], true);
    assert_eq!(r.result.unwrap()["maximal"], serde_json::json!([13, 2]));
}

#[test]
fn reports_round_trip() {
    for name in ["fig1_circle.json", "fig2.json", "unit_simplex.json", "cm_not_gorenstein.json"] {
        let out = run(&["--json", "check-cm", &fixture(name)], None);
        let r = report(&out);
        assert!(r.timing_ms.is_some());
        let again: Report = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(again, r, "{name}");
    }
}

#[test]
fn family_body_feeds_back_in() {
    let out = run(&["family", "gorenstein-triangle", "--k", "4"], None);
    let body = String::from_utf8(out.stdout).unwrap();
    BodySpec::from_json(&body).unwrap();
    let out = run(&["--json", "--no-timing", "apery", "-"], Some(&body));
    let r = report(&out);
    assert_eq!(r.result.unwrap()["maximals"], serde_json::json!([[14, 3]]));
}

#[test]
fn plot_writes_svg() {
    let dir = std::env::temp_dir().join(format!("cbsemi-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig3.svg");
    let out = run(
        &["plot", &fixture("fig3.json"), "--k-max", "3", "--out", path.to_str().unwrap()],
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn member_agrees_with_library(seed in any::<u64>(), n in 3usize..=4) {
        let body = random_polygon(seed, RandomBounds::default(), n).unwrap();
        let s = BodySemigroup::new(body.clone()).unwrap();
        let text = BodySpec::from_body(&body).to_json();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let p = LatticePoint::new(rng.random_range(0..30), rng.random_range(0..30));
            let arg = format!("{},{}", p.x, p.y);
            let out = run(&["--json", "--no-timing", "member", "-", "--point", &arg], Some(&text));
            prop_assert!(out.status.success());
            let result = report(&out).result.unwrap();
            prop_assert_eq!(result["member"].as_bool(), Some(s.is_member(&p)));
            if let Some(w) = s.contains(&p) {
                prop_assert_eq!(result["k"].as_u64(), Some(w.k));
            }
        }
    }
}
