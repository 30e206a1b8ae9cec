use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use cbsemi::structure::{PolygonStructure, RaySummary};
use cbsemi::{
    apery_intersection, check_cm, check_gorenstein, enumerate, expected_apery, gorenstein_triangle, oracle_cm,
    random_triangle, render_svg, BodySemigroup, BodySpec, Branch, CheckOptions, CheckReport, Decorations, Error,
    ErrorClass, LatticeBox, LatticePoint, RandomBounds, RaySide, Verdict,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cbsemi_cli::{Derived, ErrorDoc, Report};

/// Cohen-Macaulay and Gorenstein checks for convex body semigroups.
#[derive(Debug, Parser)]
#[command(name = "cbsemi", version)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest dilation scanned for circle gaps.
    #[arg(long, global = true, value_name = "N")]
    scan_bound: Option<u64>,
    /// Seed for random families.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Leave the timing field out of JSON reports.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a point lies in the semigroup.
    Member {
        body: PathBuf,
        #[arg(long, value_parser = parse_point, value_name = "X,Y")]
        point: LatticePoint,
    },
    /// Extremal rays and their generators.
    Generators { body: PathBuf },
    /// Cohen-Macaulay check.
    CheckCm { body: PathBuf },
    /// Gorenstein check.
    CheckGorenstein { body: PathBuf },
    /// Apéry set of n1 intersected with that of n2 (C-M semigroups only).
    Apery { body: PathBuf },
    /// Members inside a box, by brute force.
    Enumerate {
        body: PathBuf,
        #[arg(long = "box", value_parser = parse_box, value_name = "WxH")]
        bounds: LatticeBox,
    },
    /// Brute-force gap criterion inside a box.
    OracleCm {
        body: PathBuf,
        #[arg(long = "box", value_parser = parse_box, value_name = "WxH")]
        bounds: LatticeBox,
    },
    /// Example bodies.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Draw dilations, rays and lattice points as SVG.
    Plot {
        body: PathBuf,
        #[arg(long, default_value_t = 6)]
        k_max: u64,
        #[arg(long)]
        out: PathBuf,
        /// Skip the structure and Apéry decorations.
        #[arg(long)]
        plain: bool,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    /// The triangle {(4,0), (4+2k,0), (4+k,k)}.
    GorensteinTriangle {
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        mode: FamilyMode,
    },
    /// A seeded random rational triangle (see --seed).
    RandomTriangle {
        #[arg(long, default_value_t = 6)]
        max_coord: u64,
        #[arg(long, default_value_t = 3)]
        max_denominator: u64,
        #[command(flatten)]
        mode: FamilyMode,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct FamilyMode {
    /// Print the body document (the default).
    #[arg(long)]
    emit_body: bool,
    /// Run the checks and compare with the expected answer.
    #[arg(long)]
    check: bool,
}

fn parse_point(text: &str) -> Result<LatticePoint, String> {
    let (x, y) = text.split_once(',').ok_or("expected X,Y")?;
    let n = |v: &str| v.trim().parse::<u64>().map_err(|e| format!("bad coordinate `{v}`: {e}"));
    Ok(LatticePoint::new(n(x)?, n(y)?))
}

fn parse_box(text: &str) -> Result<LatticeBox, String> {
    let (w, h) = text.split_once(['x', 'X']).ok_or("expected WxH")?;
    let n = |v: &str| v.trim().parse::<u64>().map_err(|e| format!("bad box side `{v}`: {e}"));
    let (w, h) = (n(w)?, n(h)?);
    if w == 0 || h == 0 {
        return Err("box sides must be positive".into());
    }
    Ok(LatticeBox::new(w, h))
}

/// A failed subcommand: the partial report and the error.
type Failure = Box<(Report, Error)>;

fn fail(report: &Report) -> impl FnOnce(Error) -> Failure + '_ {
    move |e| Box::new((report.clone(), e))
}

/// What a subcommand produced: the JSON report, the text rendering and the
/// exit status.
struct Outcome {
    report: Report,
    text: String,
    code: u8,
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Input => 1,
        ErrorClass::Precondition => 2,
        ErrorClass::Inconclusive => 3,
    }
}

fn verdict_code(v: Verdict) -> u8 {
    if v == Verdict::Inconclusive {
        3
    } else {
        0
    }
}

fn read_spec(path: &Path) -> Result<BodySpec, Error> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("reading {}: {e}", path.display())))?
    };
    BodySpec::from_json(&text)
}

fn load(path: &Path, report: &mut Report) -> Result<BodySemigroup, Error> {
    let spec = read_spec(path)?;
    report.input = Some(spec.clone());
    let s = BodySemigroup::new(spec.to_body()?)?;
    report.derived = Some(Derived::new(&s));
    Ok(s)
}

fn verdict_bool(v: Verdict) -> Value {
    match v {
        Verdict::Yes => Value::Bool(true),
        Verdict::No => Value::Bool(false),
        Verdict::Inconclusive => Value::Null,
    }
}

fn points_text(ps: &[LatticePoint]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn report_text(r: &CheckReport) -> String {
    let mut t = format!("verdict: {:?}\nbranch: {:?}\ncertificate: {:?}\n", r.verdict, r.branch, r.certificate);
    let w = &r.witnesses;
    if !w.gaps.is_empty() {
        let _ = writeln!(t, "gap witnesses: {}", points_text(&w.gaps));
    }
    if !w.non_members.is_empty() {
        let _ = writeln!(t, "non-members: {}", points_text(&w.non_members));
    }
    if !w.ungenerated_rays.is_empty() {
        let rays: Vec<String> = w.ungenerated_rays.iter().map(ToString::to_string).collect();
        let _ = writeln!(t, "rays not generated by n_i: {}", rays.join(" "));
    }
    if !w.apery.is_empty() {
        let _ = writeln!(t, "apery: {}", points_text(&w.apery));
    }
    if !w.maximals.is_empty() {
        let _ = writeln!(t, "maximals: {}", points_text(&w.maximals));
    }
    t
}

fn structure_value(s: &BodySemigroup) -> Option<Value> {
    let st = PolygonStructure::build(s).ok()?;
    let q = &st.apex.q;
    Some(json!({
        "tau1": RaySummary::new(s, &st.upper),
        "tau2": RaySummary::new(s, &st.lower),
        "q": [q.x.to_string(), q.y.to_string()],
        "coverage_index": st.coverage_index,
    }))
}

fn with_fields(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn run_member(body: &Path, point: LatticePoint) -> Result<Outcome, Failure> {
    let mut report = Report::new("member");
    let s = load(body, &mut report).map_err(fail(&report))?;
    let w = s.contains(&point);
    report.result = Some(json!({ "point": point, "member": w.is_some(), "k": w.map(|w| w.k) }));
    let text = match w {
        Some(w) => format!("{point} is a member (in {}F)\n", w.k),
        None => format!("{point} is not a member\n"),
    };
    Ok(Outcome { report, text, code: 0 })
}

fn run_generators(body: &Path) -> Result<Outcome, Failure> {
    let mut report = Report::new("generators");
    let s = load(body, &mut report).map_err(fail(&report))?;
    let mut text = String::new();
    let mut generated = serde_json::Map::new();
    for side in RaySide::BOTH {
        let g = s.ray_generated_by_n(side);
        generated.insert(side.to_string(), Value::Bool(g));
        let _ = writeln!(
            text,
            "{side}: direction {}, contact {}, n{} = {}, generates the ray: {g}",
            s.tau(side),
            s.contact(side).kind(),
            side.index(),
            s.n(side)
        );
    }
    report.result = Some(json!({ "n1": s.n1(), "n2": s.n2(), "generated": generated }));
    Ok(Outcome { report, text, code: 0 })
}

fn run_check_cm(opts: CheckOptions, body: &Path) -> Result<Outcome, Failure> {
    let mut report = Report::new("check-cm");
    let s = load(body, &mut report).map_err(fail(&report))?;
    let r = check_cm(&s, opts).map_err(fail(&report))?;
    let mut result = with_fields(
        json!({ "cm": verdict_bool(r.verdict) }),
        serde_json::to_value(&r).expect("reports serialize"),
    );
    if let Some(st) = structure_value(&s) {
        result = with_fields(result, json!({ "structure": st }));
    }
    report.result = Some(result);
    let text = format!("Cohen-Macaulay\n{}", report_text(&r));
    Ok(Outcome {
        report,
        text,
        code: verdict_code(r.verdict),
    })
}

fn gorenstein_value(r: &CheckReport) -> Value {
    let cm = match (r.branch, r.verdict) {
        (Branch::NotCm, _) => Value::Bool(false),
        (_, Verdict::Inconclusive) => Value::Null,
        _ => Value::Bool(true),
    };
    let maximal = match (r.verdict, r.witnesses.maximals.as_slice()) {
        (Verdict::Yes, [m]) => json!(m),
        _ => Value::Null,
    };
    with_fields(
        json!({ "gorenstein": verdict_bool(r.verdict), "cm": cm, "maximal": maximal }),
        serde_json::to_value(r).expect("reports serialize"),
    )
}

fn run_check_gorenstein(opts: CheckOptions, body: &Path) -> Result<Outcome, Failure> {
    let mut report = Report::new("check-gorenstein");
    let s = load(body, &mut report).map_err(fail(&report))?;
    let r = check_gorenstein(&s, opts).map_err(fail(&report))?;
    report.result = Some(gorenstein_value(&r));
    let text = format!("Gorenstein\n{}", report_text(&r));
    Ok(Outcome {
        report,
        text,
        code: verdict_code(r.verdict),
    })
}

fn run_apery(opts: CheckOptions, body: &Path) -> Result<Outcome, Failure> {
    let mut report = Report::new("apery");
    let s = load(body, &mut report).map_err(fail(&report))?;
    let ap = apery_intersection(&s, opts).map_err(fail(&report))?;
    report.result = Some(json!({ "count": ap.points.len(), "points": ap.points, "maximals": ap.maximals }));
    let text = format!(
        "apery ({} points): {}\nmaximals: {}\n",
        ap.points.len(),
        points_text(&ap.points),
        points_text(&ap.maximals)
    );
    Ok(Outcome { report, text, code: 0 })
}

fn run_enumerate(body: &Path, bounds: LatticeBox) -> Result<Outcome, Failure> {
    let mut report = Report::new("enumerate");
    let s = load(body, &mut report).map_err(fail(&report))?;
    let members: Vec<LatticePoint> = enumerate(s.body(), bounds).iter().collect();
    report.result = Some(json!({ "box": bounds, "count": members.len(), "members": members }));
    let text = format!("{} members in [0,{}]x[0,{}]\n{}\n", members.len(), bounds.max_x, bounds.max_y, points_text(&members));
    Ok(Outcome { report, text, code: 0 })
}

fn run_oracle_cm(body: &Path, bounds: LatticeBox) -> Result<Outcome, Failure> {
    let mut report = Report::new("oracle-cm");
    let s = load(body, &mut report).map_err(fail(&report))?;
    let o = oracle_cm(&s, bounds);
    report.result = Some(json!({
        "box_relative": true,
        "cm_in_box": o.is_cm_in_box(),
        "witness": o.witnesses.first(),
        "witnesses": o.witnesses,
        "gaps_seen": o.gaps_seen,
        "box": bounds,
    }));
    let text = match o.witnesses.first() {
        Some(g) => format!(
            "box [0,{}]x[0,{}]: gap {g} has g+n1 and g+n2 in S ({} such gaps); not C-M\n",
            bounds.max_x,
            bounds.max_y,
            o.witnesses.len()
        ),
        None => format!(
            "box [0,{}]x[0,{}]: no violating gap among {} gaps (box-relative)\n",
            bounds.max_x, bounds.max_y, o.gaps_seen
        ),
    };
    Ok(Outcome { report, text, code: 0 })
}

fn emit_body(command: &str, spec: BodySpec) -> Outcome {
    let mut report = Report::new(command);
    let text = format!("{}\n", spec.to_json());
    report.input = Some(spec);
    Outcome { report, text, code: 0 }
}

fn run_family(cli: &Cli, opts: CheckOptions, family: &Family) -> Result<Outcome, Failure> {
    match family {
        Family::GorensteinTriangle { k, mode } => {
            let command = "family gorenstein-triangle";
            let mut report = Report::new(command);
            let body = gorenstein_triangle(*k).map_err(fail(&report))?;
            let spec = BodySpec::from_body(&body);
            if !mode.check {
                return Ok(emit_body(command, spec));
            }
            report.input = Some(spec);
            let s = BodySemigroup::new(body).map_err(fail(&report))?;
            report.derived = Some(Derived::new(&s));
            let r = check_gorenstein(&s, opts).map_err(fail(&report))?;
            let expected = expected_apery(*k).map_err(fail(&report))?;
            let matches = r.witnesses.apery == expected;
            let expected_max = LatticePoint::new(10 + k, k - 1);
            let max_ok = r.witnesses.maximals == [expected_max];
            report.result = Some(with_fields(
                gorenstein_value(&r),
                json!({ "k": k, "apery_matches_expected": matches, "maximal_matches_expected": max_ok }),
            ));
            let text = format!(
                "family k = {k}\nGorenstein\n{}apery matches the closed form: {matches}\nmaximal is {expected_max}: {max_ok}\n",
                report_text(&r)
            );
            Ok(Outcome {
                report,
                text,
                code: verdict_code(r.verdict),
            })
        }
        Family::RandomTriangle {
            max_coord,
            max_denominator,
            mode,
        } => {
            let command = "family random-triangle";
            let mut report = Report::new(command);
            let bounds = RandomBounds {
                max_coord: *max_coord,
                max_denominator: *max_denominator,
            };
            let body = random_triangle(cli.seed, bounds).map_err(fail(&report))?;
            let spec = BodySpec::from_body(&body);
            if !mode.check {
                return Ok(emit_body(command, spec));
            }
            report.input = Some(spec);
            let s = BodySemigroup::new(body).map_err(fail(&report))?;
            report.derived = Some(Derived::new(&s));
            let r = check_cm(&s, opts).map_err(fail(&report))?;
            report.result = Some(with_fields(
                json!({ "seed": cli.seed, "cm": verdict_bool(r.verdict) }),
                serde_json::to_value(&r).expect("reports serialize"),
            ));
            let text = format!("seed {}\nCohen-Macaulay\n{}", cli.seed, report_text(&r));
            Ok(Outcome {
                report,
                text,
                code: verdict_code(r.verdict),
            })
        }
    }
}

fn run_plot(opts: CheckOptions, body: &Path, k_max: u64, out: &Path, plain: bool) -> Result<Outcome, Failure> {
    let mut report = Report::new("plot");
    let s = load(body, &mut report).map_err(fail(&report))?;
    if k_max == 0 {
        return Err(Box::new((report, Error::InvalidArgument("--k-max must be at least 1".into()))));
    }
    let structure = if plain { None } else { PolygonStructure::build(&s).ok() };
    let apery = if plain {
        Vec::new()
    } else {
        apery_intersection(&s, opts).map(|a| a.points).unwrap_or_default()
    };
    let svg = render_svg(
        &s,
        k_max,
        &Decorations {
            structure: structure.as_ref(),
            apery: &apery,
        },
    );
    std::fs::write(out, &svg)
        .map_err(|e| fail(&report)(Error::InvalidArgument(format!("writing {}: {e}", out.display()))))?;
    report.result = Some(json!({ "out": out.display().to_string(), "bytes": svg.len(), "k_max": k_max }));
    let text = format!("wrote {} ({} bytes)\n", out.display(), svg.len());
    Ok(Outcome { report, text, code: 0 })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = CheckOptions {
        scan_bound: cli.scan_bound,
    };
    match &cli.command {
        Command::Member { body, point } => run_member(body, *point),
        Command::Generators { body } => run_generators(body),
        Command::CheckCm { body } => run_check_cm(opts, body),
        Command::CheckGorenstein { body } => run_check_gorenstein(opts, body),
        Command::Apery { body } => run_apery(opts, body),
        Command::Enumerate { body, bounds } => run_enumerate(body, *bounds),
        Command::OracleCm { body, bounds } => run_oracle_cm(body, *bounds),
        Command::Family { family } => run_family(cli, opts, family),
        Command::Plot {
            body,
            k_max,
            out,
            plain,
        } => run_plot(opts, body, *k_max, out, *plain),
    }
}

fn json_document(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = run(&cli);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let timing = (!cli.no_timing).then_some((elapsed * 1e3).round() / 1e3);
    match outcome {
        Ok(mut o) => {
            let emits_body = matches!(
                &cli.command,
                Command::Family { family: Family::GorensteinTriangle { mode, .. } | Family::RandomTriangle { mode, .. } }
                    if !mode.check
            );
            if cli.json && !emits_body {
                o.report.timing_ms = timing;
                emit(&json_document(&o.report));
            } else {
                emit(&o.text);
            }
            ExitCode::from(o.code)
        }
        Err(failure) => {
            let (mut report, e) = *failure;
            if cli.json {
                report.error = Some(ErrorDoc::new(&e));
                report.timing_ms = timing;
                emit(&json_document(&report));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
