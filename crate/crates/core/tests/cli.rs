use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quiver-roots"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    serde_json::from_str(&out).expect("valid JSON")
}

#[test]
fn classify_kronecker() {
    let v = json(&["classify", "corpus:kronecker"]);
    assert_eq!(v["base"], "Euclidean");
    assert_eq!(v["at_most_weakly_hyperbolic"], true);
    assert_eq!(v["signature"]["zero"], 1);
    let v = json(&["classify", "corpus:example-2-5-1"]);
    assert_eq!(v["at_most_weakly_hyperbolic"], false);
    assert_eq!(v["signature"]["pos"], 2);
    assert_eq!(v["signature"]["neg"], 2);
}

#[test]
fn candecomp_kronecker() {
    let v = json(&["candecomp", "corpus:kronecker", "3", "1"]);
    assert_eq!(v["verified"], true);
    let s = v["summands"].as_array().unwrap();
    let got: Vec<(Value, Value, Value)> = s
        .iter()
        .map(|x| (x["root"].clone(), x["mult"].clone(), x["class"].clone()))
        .collect();
    let expect = vec![
        (serde_json::json!([1, 0]), 1.into(), "real".into()),
        (serde_json::json!([2, 1]), 1.into(), "real".into()),
    ];
    assert_eq!(got, expect);
    let v = json(&["candecomp", "corpus:theta-3", "2,2"]);
    assert_eq!(v["summands"][0]["class"], "strict_imaginary");
    assert_eq!(v["summands"][0]["mult"], 1);
}

#[test]
fn homext_document() {
    let v = json(&["homext", "corpus:kronecker", "1,0", "0,1"]);
    assert_eq!(v, serde_json::json!({"hom": 0, "ext": 2, "euler": -2}));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["hom", "ext", "euler"]);
}

#[test]
fn exact_values_are_strings() {
    let v = json(&["accpoints", "corpus:kronecker", "--height", "3"]);
    assert_eq!(v["y_plus"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(v["acc2"][0]["ray"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(v["acc2"][0]["rational"], true);
    assert_eq!(v["acc2"][0]["t"], 2);
    let v = json(&["accpoints", "corpus:theta-3", "--height", "3"]);
    assert_eq!(v["acc2"][0]["rational"], false);
    assert_eq!(v["acc2"][0]["exact"]["disc"], "5");
}

#[test]
fn exit_codes() {
    let (code, out) = run(&["candecomp", "corpus:kronecker", "0", "0"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"].is_string() && v["detail"].is_string());
    let (code, out) = run(&["accpoints", "corpus:a2"]);
    assert_eq!(code, 1);
    assert!(out.contains("dynkin_input"));
    assert_eq!(run(&["classify", "corpus:no-such"]).0, 1);
    assert_eq!(run(&["candecomp", "corpus:kronecker", "1"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(
        run(&[
            "probe",
            "neighborhood",
            "corpus:theta-3",
            "1",
            "1",
            "--radius",
            "x"
        ])
        .0,
        2
    );
    assert_eq!(
        run(&["homext", "corpus:kronecker", "1,0", "0,1", "--csv"]).0,
        2
    );
}

#[test]
fn quiver_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("q.json");
    std::fs::write(&good, r#"{"vertices": 2, "arrows": [[1,2],[1,2],[1,2]]}"#).unwrap();
    let v = json(&["classify", good.to_str().unwrap()]);
    assert_eq!(v["base"], "Wild");
    let cyclic = dir.path().join("c.json");
    std::fs::write(&cyclic, r#"{"vertices": 2, "arrows": [[1,2],[2,1]]}"#).unwrap();
    let (code, out) = run(&["classify", cyclic.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("cyclic_quiver"));
    let (code, _) = run(&[
        "classify",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn corpus_round_trip() {
    let list = json(&["corpus"]);
    let names: Vec<&str> = list
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 10);
    for name in names {
        let (code, text) = run(&["corpus", name]);
        assert_eq!(code, 0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.json");
        std::fs::write(&path, &text).unwrap();
        let (_, again) = run(&["corpus", name]);
        assert_eq!(text, again);
        let a = json(&["classify", &format!("corpus:{name}")]);
        let b = json(&["classify", path.to_str().unwrap()]);
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn deterministic_probe_output() {
    let args = [
        "probe",
        "neighborhood",
        "corpus:theta-3",
        "1,1",
        "--samples",
        "50",
        "--seed",
        "9",
    ];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["report"]["fraction"], 1.0);
    assert_eq!(v["report"]["radius"], "1/20");
}

#[test]
fn converge_and_witnesses() {
    let v = json(&["converge", "corpus:kronecker", "1", "2", "--steps", "2"]);
    assert_eq!(v["rays"][1], serde_json::json!(["3/7", "4/7"]));
    let v = json(&[
        "probe",
        "witnesses",
        "corpus:kronecker",
        "1,1",
        "--steps",
        "1",
    ]);
    assert_eq!(
        v["witnesses"],
        serde_json::json!([[1, 0], [0, 1], [2, 1], [1, 2]])
    );
    let v = json(&["probe", "rational", "corpus:kronecker", "1,1"]);
    assert_eq!(v["answer"], "yes");
}

#[test]
fn simplex_plot_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let (code, out) = run(&[
        "simplex-plot",
        "corpus:euclidean-a2-triangle",
        "--height",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("<circle") && svg.contains("crimson"));
    let (code, csv) = run(&["simplex-plot", "corpus:d4", "--csv", "--height", "3"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("kind,label,y1,y2,y3,y4\n"));
    assert_eq!(run(&["simplex-plot", "corpus:d4"]).0, 1);
}
