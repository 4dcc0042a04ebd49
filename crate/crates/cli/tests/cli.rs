use std::path::{Path, PathBuf};
use std::process::Command;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_graphprod"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_scenario(dir: &tempfile::TempDir, vertices: &str) -> PathBuf {
    let path = dir.path().join("s.json");
    std::fs::write(
        &path,
        format!(
            r#"{{"schema_version": 1, "source": {{"graph": {{"vertices": ["u", "v"]}}, "vertices": {{ {vertices} }} }} }}"#
        ),
    )
    .unwrap();
    path
}

/// Accepts the DOT subset we emit: `graph NAME {`, node statements with a
/// quoted label, `nA -- nB` edges with optional attributes, and `}`.
fn check_dot(text: &str) -> Result<(usize, usize), String> {
    let mut lines = text.lines();
    let head = lines.next().ok_or("empty")?;
    if !(head.starts_with("graph ") && head.ends_with(" {")) {
        return Err(format!("bad header {head:?}"));
    }
    let (mut nodes, mut edges) = (0, 0);
    let mut closed = false;
    let ident = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    for line in lines {
        if closed {
            return Err("content after closing brace".into());
        }
        let l = line.trim();
        if l == "}" {
            closed = true;
            continue;
        }
        let stmt = l
            .strip_suffix(';')
            .ok_or_else(|| format!("missing ';' in {l:?}"))?;
        let (body, attrs) = match stmt.find('[') {
            Some(i) => (stmt[..i].trim(), Some(&stmt[i..])),
            None => (stmt, None),
        };
        if let Some(a) = attrs {
            if !a.ends_with(']') || a.matches('"').count() % 2 != 0 {
                return Err(format!("bad attribute list {a:?}"));
            }
        }
        match body.split_once(" -- ") {
            Some((x, y)) if ident(x) && ident(y) => edges += 1,
            None if ident(body) => nodes += 1,
            _ => return Err(format!("bad statement {l:?}")),
        }
    }
    if !closed {
        return Err("unterminated graph".into());
    }
    Ok((nodes, edges))
}

#[test]
fn validate_accepts_fixtures() {
    for f in [
        "exacay.json",
        "z2_free_vs_z3_free.json",
        "identical.json",
        "commuting_z2.json",
        "square_racg.json",
    ] {
        let (code, out) = run(&["validate", path_str(&scenario(f))]);
        assert_eq!(code, 0, "{f}: {out}");
    }
}

#[test]
fn validate_reports_identity_in_genset() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(
        &dir,
        r#""u": {"group": {"type": "cyclic", "n": 4}, "genset": ["e", "a", "a3"]},
           "v": {"group": {"type": "cyclic", "n": 2}}"#,
    );
    let (code, out) = run(&["validate", path_str(&path)]);
    assert_eq!(code, 2);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["diagnostics"][0]["kind"], "GensetContainsIdentity");
    assert_eq!(json["diagnostics"][0]["vertex"], "u");
}

#[test]
fn validate_reports_asymmetric_genset() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(
        &dir,
        r#""u": {"group": {"type": "cyclic", "n": 4}, "genset": ["a"]},
           "v": {"group": {"type": "cyclic", "n": 2}}"#,
    );
    let (code, out) = run(&["validate", path_str(&path)]);
    assert_eq!(code, 2);
    assert!(out.contains("SymmetryViolation"));
}

#[test]
fn malformed_file_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["validate", path_str(&path)]).0, 2);
    assert_eq!(run(&["ball", path_str(&path)]).0, 2);
}

#[test]
fn reduce_examples() {
    let ex = scenario("exacay.json");
    assert_eq!(
        run(&["reduce", path_str(&ex), "u:a;u:a3"]),
        (0, "\n".into())
    );
    assert_eq!(
        run(&["reduce", path_str(&ex), "u:a;v:b1;u:a"]).1,
        "u:a;v:b1;u:a\n"
    );
    assert_eq!(run(&["reduce", path_str(&ex), ""]).1, "\n");
    let edge = scenario("commuting_z2.json");
    assert_eq!(run(&["reduce", path_str(&edge), "v:y;u:x"]).1, "u:x;v:y\n");
    assert_eq!(run(&["reduce", path_str(&edge), "u:x;v:y"]).1, "u:x;v:y\n");
    // target side labels
    assert_eq!(
        run(&["reduce", path_str(&ex), "v:d2;v:d4", "--side", "target"]).1,
        "\n"
    );
    assert_eq!(run(&["reduce", path_str(&ex), "u:zz"]).0, 2);
}

#[test]
fn ball_counts_and_dot() {
    let ex = scenario("exacay.json");
    let summary = |out: &str| -> serde_json::Value { serde_json::from_str(out).unwrap() };
    let (code, out) = run(&["ball", path_str(&ex), "--radius", "2"]);
    assert_eq!(code, 0);
    assert_eq!(summary(&out)["vertex_count"], 39);
    let (_, out) = run(&["ball", path_str(&scenario("z2_free_vs_z3_free.json"))]);
    assert_eq!(summary(&out)["vertex_count"], 11);
    let (_, out) = run(&["ball", path_str(&ex), "--radius", "0"]);
    assert_eq!(summary(&out)["vertex_count"], 1);

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("ball.dot");
    let json = dir.path().join("ball.json");
    let (code, _) = run(&[
        "ball",
        path_str(&ex),
        "--radius",
        "1",
        "--dot",
        path_str(&dot),
        "--json",
        path_str(&json),
        "--color-by-group",
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(check_dot(&text), Ok((9, 21)));
    assert_eq!(text.matches("color=red").count(), 6);
    assert_eq!(text.matches("color=blue").count(), 15);
    assert_eq!(
        summary(&std::fs::read_to_string(&json).unwrap())["edge_count"],
        21
    );

    let (code, out) = run(&["ball", path_str(&ex), "--radius", "8", "--max-ball", "5000"]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn outputs_are_deterministic() {
    let ex = scenario("square_racg.json");
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.dot"), dir.path().join("b.dot"));
    let first = run(&[
        "ball",
        path_str(&ex),
        "--dot",
        path_str(&a),
        "--color-by-group",
    ]);
    let second = run(&[
        "ball",
        path_str(&ex),
        "--dot",
        path_str(&b),
        "--color-by-group",
    ]);
    assert_eq!(first, second);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(check_dot(&std::fs::read_to_string(&a).unwrap()).is_ok());
    let c1 = run(&["certificate", path_str(&scenario("exacay.json"))]);
    let c2 = run(&["certificate", path_str(&scenario("exacay.json"))]);
    assert_eq!(c1, c2);
}

#[test]
fn iso_exit_codes() {
    let (code, out) = run(&["iso", path_str(&scenario("exacay.json"))]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["vertices_checked"], 159);
    let (code, out) = run(&["iso", path_str(&scenario("z2_free_vs_z3_free.json"))]);
    assert_eq!(code, 3);
    assert!(out.contains("NoVertexIso"));
    assert_eq!(run(&["iso", path_str(&scenario("identical.json"))]).0, 0);
    // no target presentation
    assert_eq!(run(&["iso", path_str(&scenario("square_racg.json"))]).0, 2);
}

#[test]
fn iso_with_broken_family_map() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(scenario("exacay.json")).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    // not a bijection Z4 -> Z2 x Z2
    json["family"][0]["map"] = serde_json::json!([0, 0, 1, 2]);
    let path = dir.path().join("broken.json");
    std::fs::write(&path, json.to_string()).unwrap();
    let (code, out) = run(&["iso", path_str(&path)]);
    assert_eq!(code, 3);
    assert!(out.contains("NotABijection"));

    // a valid but non-identity-preserving map is normalized and verifies
    json["family"][0]["map"] = serde_json::json!([3, 2, 1, 0]);
    std::fs::write(&path, json.to_string()).unwrap();
    assert_eq!(run(&["iso", path_str(&path), "--radius", "2"]).0, 0);
}

#[test]
fn certificate_outputs() {
    let (code, out) = run(&["certificate", path_str(&scenario("exacay.json"))]);
    assert_eq!(code, 0);
    let cert: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(cert["checked_pairs"].as_array().unwrap().len(), 4);
    assert_eq!(
        run(&["certificate", path_str(&scenario("identical.json"))]).1,
        "no certificate\n"
    );
    let (_, out) = run(&[
        "certificate",
        path_str(&scenario("z2_free_vs_z3_free.json")),
    ]);
    assert!(out.contains("order_mismatch"));
}
