use std::path::{Path, PathBuf};

use graphhom::census;
use graphhom::diagram::{random_moves, MoveKind};
use graphhom::graph_homology::{floer_euler_oracle, graph_homology, GraphHomologyReport, Options, Verdict};
use graphhom::grid::{hfk_hat_of_grid, pd_to_grid, simplify_grid, GridLimits};
use graphhom::invariants::{alexander, conway, determinant, fingerprint, jones, kauffman_bracket};
use graphhom::kauffman::family_capped;
use graphhom::khovanov::{euler_characteristic, khovanov_homology_capped, unnormalized_jones, Coeffs};
use graphhom::poly::{EulerConvention, Var};
use graphhom::{Diagram, Error};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, CliError, CliResult, LinkOrGrid, EXIT_CHECK};

pub enum Rendered {
    Json(Value),
    Text(String),
}

pub struct Output {
    pub body: Rendered,
    pub code: i32,
}

impl Output {
    fn ok(v: Value) -> Self {
        Output { body: Rendered::Json(v), code: 0 }
    }

    fn with_code(v: Value, failed: bool) -> Self {
        Output { body: Rendered::Json(v), code: if failed { EXIT_CHECK } else { 0 } }
    }
}

pub fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

/// Cap breaches become exit 1 with the partial (here empty) output and a
/// skip list; everything else propagates.
fn capped(e: Error, what: &str) -> CliResult<Output> {
    match e {
        Error::TooManyAssignments { .. }
        | Error::TooManyCrossings { .. }
        | Error::GridTooLarge { .. }
        | Error::MemoryLimit { .. } => {
            Ok(Output::with_code(json!({ "partial": true, "skipped": [format!("{what}: skipped ({e})")] }), true))
        }
        e => Err(e.into()),
    }
}

pub fn validate(path: &str) -> CliResult<Output> {
    let raw = input::diagram_json(path)?;
    let report = raw.validate();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let mut o = to_value(v);
            o["message"] = Value::String(v.to_string());
            o
        })
        .collect();
    if !report.is_valid() {
        for v in &report.violations {
            eprintln!("{path}: {v}");
        }
        return Ok(Output { body: Rendered::Json(json!({ "valid": false, "violations": violations })), code: input::EXIT_INPUT });
    }
    let d = raw.into_diagram()?;
    let mut out = json!({
        "valid": true,
        "violations": violations,
        "crossings": d.crossings.len(),
        "vertices": d.vertices.len(),
        "loops": d.loops,
        "link": d.is_link(),
    });
    if d.is_link() {
        out["components"] = json!(graphhom::LinkDiagram::new(d)?.component_count());
    }
    Ok(Output::ok(out))
}

pub fn family(path: &str, max_assignments: u128) -> CliResult<Output> {
    let d = input::load_diagram(path)?;
    match family_capped(&d, max_assignments) {
        Ok(f) => Ok(Output::ok(to_value(&f))),
        Err(e) => capped(e, "family"),
    }
}

pub fn invariants(path: &str) -> CliResult<Output> {
    let l = input::load_link(path)?;
    let c = conway(&l)?;
    Ok(Output::ok(json!({
        "components": l.component_count(),
        "crossings": l.crossing_count(),
        "writhe": l.writhe(),
        "bracket": to_value(&kauffman_bracket(&l)?),
        "jones": to_value(&jones(&l)?),
        "conway": to_value(&c),
        "alexander": to_value(&alexander(&l)?),
        "determinant": determinant(&l)?.to_string(),
        "fingerprint": to_value(&fingerprint(&l)?),
    })))
}

pub fn khovanov(path: &str, coeffs: Coeffs, check_euler: bool, max_crossings: usize) -> CliResult<Output> {
    let l = input::load_link(path)?;
    let dims = match khovanov_homology_capped(&l, coeffs, max_crossings) {
        Ok(d) => d,
        Err(e) => return capped(e, "khovanov"),
    };
    let mut out = json!({
        "coeffs": coeffs,
        "homology": to_value(&dims),
        "total_rank": dims.total_rank(),
        "poincare": dims.poincare([Var::T, Var::Q]).to_string(),
    });
    let mut failed = false;
    if check_euler {
        let chi = euler_characteristic(&dims);
        let jones = unnormalized_jones(&l)?;
        failed = chi != jones;
        out["euler_check"] = json!({
            "euler": to_value(&chi),
            "unnormalized_jones": to_value(&jones),
            "verdict": if failed { Verdict::Fail } else { Verdict::Pass },
        });
    }
    Ok(Output::with_code(out, failed))
}

pub fn floer(path: &str, limits: &GridLimits) -> CliResult<Output> {
    let (grid, link, simplified) = match input::load_link_or_grid(path)? {
        LinkOrGrid::Grid(g) => {
            let l = g.to_link();
            (g, l, false)
        }
        LinkOrGrid::Link(l) => (simplify_grid(&pd_to_grid(&l)?), l, true),
    };
    let mut out = json!({ "grid": to_value(&grid), "grid_size": grid.n, "simplified": simplified });
    let dims = match hfk_hat_of_grid(&grid, limits) {
        Ok(d) => d,
        Err(e @ (Error::GridTooLarge { .. } | Error::MemoryLimit { .. })) => {
            let reason = match e {
                Error::GridTooLarge { .. } => "floer: skipped (grid too large)".to_string(),
                e => format!("floer: skipped ({e})"),
            };
            out["partial"] = json!(true);
            out["skipped"] = json!([reason]);
            return Ok(Output::with_code(out, true));
        }
        Err(e) => return Err(e.into()),
    };
    let chi = dims.euler(Var::T, EulerConvention::HalfShift)?;
    let expected = floer_euler_oracle(&link)?;
    let failed = chi != expected;
    out["hfk_hat"] = to_value(&dims);
    out["total_rank"] = json!(dims.total_rank());
    out["poincare"] = json!(dims.poincare([Var::U, Var::T]).to_string());
    out["euler_check"] = json!({
        "euler": to_value(&chi),
        "expected": to_value(&expected),
        "verdict": if failed { Verdict::Fail } else { Verdict::Pass },
    });
    Ok(Output::with_code(out, failed))
}

fn summary_text(r: &GraphHomologyReport) -> String {
    let mut s = format!(
        "family: {} members ({} assignments, {} empty){}\n",
        r.family.members,
        r.family.assignments,
        r.family.empty,
        if r.empty_family { " EMPTY FAMILY: zero homology" } else { "" }
    );
    if let Some(f) = &r.floer {
        s += &format!(
            "floer: P(u,t) = {}\nfloer: total rank {}, euler {} (expected {}) {}\n",
            f.dims.poincare([Var::U, Var::T]),
            f.total_rank,
            f.euler,
            f.expected,
            verdict_word(f.verdict)
        );
    }
    if let Some(a) = &r.alexander_sum {
        s += &format!("floer: sum of Alexander polynomials {a}\n");
    }
    if let Some(k) = &r.khovanov {
        s += &format!(
            "khovanov: P(t,q) = {}\nkhovanov: total rank {}, euler {} (expected {}) {}\n",
            k.dims.poincare([Var::T, Var::Q]),
            k.total_rank,
            k.euler,
            k.expected,
            verdict_word(k.verdict)
        );
    }
    for line in r.skip_list() {
        s += &format!("skipped: {line}\n");
    }
    s += &format!("verdict: {}\n", verdict_word(r.euler_check()));
    s
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Partial => "partial",
    }
}

pub fn report_value(r: &GraphHomologyReport) -> Value {
    let mut v = to_value(r);
    v["skipped"] = json!(r.skip_list());
    v["verdict"] = to_value(&r.euler_check());
    v
}

pub fn graph_homology_cmd(path: &str, opts: &Options, summary: bool) -> CliResult<Output> {
    let d = input::load_diagram(path)?;
    let r = match graph_homology(&d, opts) {
        Ok(r) => r,
        Err(e) => return capped(e, "family"),
    };
    let code = if r.euler_check() == Verdict::Pass { 0 } else { EXIT_CHECK };
    let body = if summary { Rendered::Text(summary_text(&r)) } else { Rendered::Json(report_value(&r)) };
    Ok(Output { body, code })
}

pub fn parse_kinds(s: &str) -> CliResult<Vec<MoveKind>> {
    s.split(',')
        .map(|k| match k.trim().to_ascii_uppercase().as_str() {
            "R1" => Ok(MoveKind::R1),
            "R2" => Ok(MoveKind::R2),
            "R3" => Ok(MoveKind::R3),
            "R4" => Ok(MoveKind::R4),
            "R5" => Ok(MoveKind::R5),
            other => Err(CliError::input(format!("unknown move kind {other:?}"))),
        })
        .collect()
}

pub fn moves(path: &str, seed: u64, count: usize, kinds: &[MoveKind], max_crossings: Option<usize>) -> CliResult<Output> {
    let d = input::load_diagram(path)?;
    let cap = max_crossings.unwrap_or(d.crossings.len() + 6);
    let (moved, log) = random_moves(&d, seed, count, kinds, cap);
    Ok(Output::ok(json!({
        "seed": seed,
        "count": count,
        "applied": log.len(),
        "moves": to_value(&log),
        "diagram": to_value(&moved),
    })))
}

fn census_report(d: &Diagram, opts: &Options) -> CliResult<Value> {
    Ok(report_value(&graph_homology(d, opts)?))
}

fn corpus_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let rd = std::fs::read_dir(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Without a directory, summarizes the built-in census. With one, compares
/// each `NAME.json` against `golden/NAME.json` byte for byte, or rewrites the
/// golden files when `bless` is set.
pub fn census_cmd(dir: Option<&str>, bless: bool, opts: &Options) -> CliResult<Output> {
    let Some(dir) = dir else {
        let mut rows = Vec::new();
        let mut failed = false;
        for e in census::entries() {
            let r = graph_homology(&e.diagram, opts)?;
            failed |= r.euler_check() != Verdict::Pass;
            rows.push(json!({
                "name": e.name,
                "graph": e.kind == census::CensusKind::Graph,
                "members": r.family.members,
                "floer_rank": r.floer.as_ref().map(|f| f.total_rank),
                "khovanov_rank": r.khovanov.as_ref().map(|k| k.total_rank),
                "skipped": r.skip_list(),
                "verdict": r.euler_check(),
            }));
        }
        return Ok(Output::with_code(Value::Array(rows), failed));
    };
    let dir = Path::new(dir);
    let golden = dir.join("golden");
    if bless {
        std::fs::create_dir_all(&golden).map_err(|e| CliError::input(format!("{}: {e}", golden.display())))?;
    }
    let mut results = serde_json::Map::new();
    let mut failed = false;
    for file in corpus_files(dir)? {
        let name = file.file_stem().unwrap().to_string_lossy().into_owned();
        let d = input::load_diagram(&file.to_string_lossy())?;
        let text = render_json(&census_report(&d, opts)?);
        let target = golden.join(format!("{name}.json"));
        let status = if bless {
            std::fs::write(&target, &text).map_err(|e| CliError::input(format!("{}: {e}", target.display())))?;
            "written"
        } else {
            match std::fs::read_to_string(&target) {
                Ok(g) if g == text => "match",
                Ok(_) => "mismatch",
                Err(_) => "missing",
            }
        };
        failed |= status == "mismatch" || status == "missing";
        results.insert(name, json!(status));
    }
    Ok(Output::with_code(Value::Object(results), failed))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}
