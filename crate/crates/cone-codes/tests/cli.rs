use std::fs;
use std::path::PathBuf;

use cone_codes::chain::BasedComplex;
use cone_codes::cli::{self, ConeDocument, Document};
use cone_codes::cone::{ConeSpec, Level};
use cone_codes::constructions::cyclic_repetition;
use serde_json::Value;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("cone-codes").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_then_verify_every_cone() {
    let dir = scratch("build");
    let steane = dir.join("steane.json");
    assert_eq!(run(&["build", "steane", "-o", path_str(&steane)]).code, 0);
    let cases: &[&[&str]] = &[
        &["honeycomb", "--size", "2,2"],
        &["triangular", "--size", "2,3"],
        &["barycentric", "--facets", "0,1,2;2,3"],
        &["layer", "-i", path_str(&steane)],
        &["x-reduce", "-i", path_str(&steane)],
        &["z-thicken", "-i", path_str(&steane)],
        &["hastings", "-i", path_str(&steane), "--reduce", "0"],
    ];
    for args in cases {
        let file = dir.join(format!("{}.json", args[0]));
        let mut full = vec!["build"];
        full.extend_from_slice(args);
        full.extend(["-o", path_str(&file)]);
        let built = run(&full);
        assert_eq!(built.code, 0, "{args:?}: {}", built.err);
        assert!(built.out.starts_with(args[0]), "{}", built.out);
        let checked = run(&["verify", "-i", path_str(&file)]);
        assert_eq!(checked.code, 0, "{args:?}:\n{}", checked.out);
        assert!(!checked.out.contains("FAIL"));
        assert!(checked.out.contains("PASS declared embedded code"));
    }
}

#[test]
fn layer_of_xxx_ziz_has_seven_qubits() {
    let dir = scratch("layer");
    let input = dir.join("xz.json");
    run(&["build", "xxx-ziz", "-o", path_str(&input)]);
    let built = run(&["build", "layer", "-i", path_str(&input)]);
    assert_eq!(built.code, 0);
    assert!(built.err.contains("dims [3, 7, 3], k = 1"), "{}", built.err);
}

#[test]
fn corrupted_block_fails_chain_condition() {
    let dir = scratch("corrupt");
    let input = dir.join("xz.json");
    let layer = dir.join("layer.json");
    run(&["build", "xxx-ziz", "-o", path_str(&input)]);
    run(&["build", "layer", "-i", path_str(&input), "-o", path_str(&layer)]);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&layer).unwrap()).unwrap();
    let entries = doc["blocks"][0]["entries"].as_array_mut().unwrap();
    entries.remove(0);
    let bad = dir.join("bad.json");
    fs::write(&bad, doc.to_string()).unwrap();
    let checked = run(&["verify", "-i", path_str(&bad)]);
    assert_eq!(checked.code, 1);
    assert!(checked.out.starts_with("FAIL chain-condition"), "{}", checked.out);
}

#[test]
fn cyclic_level_is_not_regular() {
    let spec = ConeSpec::new(vec![Level::new(cyclic_repetition(3).unwrap(), 0)]);
    let mut doc = ConeDocument::from_spec(&spec);
    doc.regular_degrees = vec![1];
    let dir = scratch("regular");
    let file = dir.join("cyclic.json");
    fs::write(&file, Document::Cone(doc).to_json()).unwrap();
    let checked = run(&["verify", "-i", path_str(&file)]);
    assert_eq!(checked.code, 1);
    assert!(checked.out.contains("PASS chain-condition"));
    assert!(checked.out.contains("FAIL regularity at degree 1: (level 0, degree 1, dim 1)"), "{}", checked.out);
}

#[test]
fn params_text_and_json() {
    let dir = scratch("params");
    let steane = dir.join("steane.json");
    run(&["build", "steane", "-o", path_str(&steane)]);
    let text = run(&["params", "-i", path_str(&steane)]);
    assert_eq!(text.out, "n=7 k=1 d_Z=3 d_X=3 w_Z=4 w_X=4 q_Z=3 q_X=3\n");
    let json: Value = serde_json::from_str(&run(&["params", "-i", path_str(&steane), "--json"]).out).unwrap();
    assert_eq!(json["k"], 1);
    assert_eq!(json["d_z"], serde_json::json!({"status": "exact", "value": 3}));
}

#[test]
fn distance_cap_reports_capped_sides() {
    let dir = scratch("cap");
    let toric = dir.join("toric.json");
    run(&["build", "toric", "--size", "3,3", "-o", path_str(&toric)]);
    let capped = run(&["params", "-i", path_str(&toric), "--distance-cap", "4"]);
    assert_eq!(capped.code, 0);
    assert!(capped.out.starts_with("n=18 k=2 d_Z=capped"), "{}", capped.out);
    let json: Value = serde_json::from_str(&run(&["params", "-i", path_str(&toric), "--distance-cap", "4", "--json"]).out).unwrap();
    assert_eq!(json["d_z"]["status"], "capped");
    assert_eq!(json["d_x"]["status"], "capped");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["build", "moebius"]).code, 2);
    assert_eq!(run(&["verify", "-i", "/nonexistent/cone.json"]).code, 2);
    assert_eq!(run(&["build", "layer"]).code, 2);
    let dir = scratch("exit");
    let garbage = dir.join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(run(&["params", "-i", path_str(&garbage)]).code, 2);
    let three = dir.join("three.json");
    run(&["build", "barycentric", "--facets", "0,1,2,3", "-o", path_str(&three)]);
    assert_eq!(run(&["params", "-i", path_str(&three)]).code, 1);
}

#[test]
fn alist_round_trip_matches_json() {
    let dir = scratch("alist");
    let toric = dir.join("toric.json");
    let prefix = dir.join("toric");
    run(&["build", "toric", "--size", "2,3", "-o", path_str(&toric)]);
    let exported = run(&["export", "-i", path_str(&toric), "--format", "alist", "-o", path_str(&prefix)]);
    assert_eq!(exported.code, 0);
    assert_eq!(exported.out, "n=12 m_X=6 m_Z=6\n");
    let hx = dir.join("toric.hx.alist");
    let hz = dir.join("toric.hz.alist");
    let imported = run(&["import", "--format", "alist", "--hx", path_str(&hx), "--hz", path_str(&hz)]);
    assert_eq!(imported.code, 0, "{}", imported.err);
    let direct = run(&["export", "-i", path_str(&toric), "--format", "json"]);
    let a = Document::parse(&imported.out).unwrap().total_complex().unwrap();
    let b = Document::parse(&direct.out).unwrap().total_complex().unwrap();
    assert_eq!(a.dims(), b.dims());
    assert_eq!(a.diffs(), b.diffs());
}

#[test]
fn alist_without_checks() {
    let dir = scratch("empty");
    let code = BasedComplex::new(
        vec![vec![], (0..3).map(cone_codes::chain::CellLabel::Int).collect(), vec![]],
        vec![cone_codes::f2linalg::BitMatrix::zeros(0, 3), cone_codes::f2linalg::BitMatrix::zeros(3, 0)],
    )
    .unwrap();
    let file = dir.join("empty.json");
    fs::write(&file, Document::Complex(cli::ComplexDocument::from_complex(&code)).to_json()).unwrap();
    let prefix = dir.join("empty");
    let exported = run(&["export", "-i", path_str(&file), "--format", "alist", "-o", path_str(&prefix)]);
    assert_eq!(exported.code, 0, "{}", exported.err);
    let hx = fs::read_to_string(dir.join("empty.hx.alist")).unwrap();
    assert!(hx.starts_with("3 0\n0 0\n"));
    let back = run(&[
        "import",
        "--format",
        "alist",
        "--hx",
        path_str(&dir.join("empty.hx.alist")),
        "--hz",
        path_str(&dir.join("empty.hz.alist")),
    ]);
    assert_eq!(back.code, 0, "{}", back.err);
    let params = dir.join("back.json");
    fs::write(&params, &back.out).unwrap();
    assert!(run(&["params", "-i", path_str(&params)]).out.starts_with("n=3 k=3"));
}

#[test]
fn json_import_round_trip() {
    let dir = scratch("json");
    let cone = dir.join("honeycomb.json");
    run(&["build", "honeycomb", "--size", "2,2", "-o", path_str(&cone)]);
    let imported = run(&["import", "--format", "json", "-i", path_str(&cone)]);
    assert_eq!(imported.code, 0);
    assert_eq!(imported.out, fs::read_to_string(&cone).unwrap());
}

#[test]
fn weight_reduce_reports_stages() {
    let dir = scratch("weight");
    let xz = dir.join("xz.json");
    let out = dir.join("reduced.json");
    run(&["build", "xxx-ziz", "-o", path_str(&xz)]);
    let reduced = run(&["weight-reduce", "-i", path_str(&xz), "-o", path_str(&out)]);
    assert_eq!(reduced.code, 0, "{}", reduced.out);
    assert!(reduced.out.starts_with("stage"));
    assert!(reduced.out.contains("k: 1 -> 1"));
    assert!(!reduced.out.contains("FAIL"));
    assert!(out.exists());
}

#[test]
fn weight_reduce_rejects_unreasonable_input() {
    let dir = scratch("unreasonable");
    let hx = dir.join("hx.alist");
    let hz = dir.join("hz.alist");
    fs::write(&hx, "3 1\n1 1\n1 1 0\n2\n1\n1\n\n1 2\n").unwrap();
    fs::write(&hz, "3 1\n1 1\n1 1 1\n3\n1\n1\n1\n1 2 3\n").unwrap();
    let imported = run(&["import", "--format", "alist", "--hx", path_str(&hx), "--hz", path_str(&hz)]);
    assert_eq!(imported.code, 0, "{}", imported.err);
    let file = dir.join("code.json");
    fs::write(&file, &imported.out).unwrap();
    assert_eq!(run(&["weight-reduce", "-i", path_str(&file)]).code, 1);
}
