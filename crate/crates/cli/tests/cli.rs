use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permscheme"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn exit_codes() {
    let ok = run(&["count", "-B", "1-2-3", "-n", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok).trim(), "1, 2, 5, 14, 42");

    let none = run(&["discover", "-B", "2-3-1", "--max-depth", "4"]);
    assert_eq!(none.status.code(), Some(1));
    let err = stderr(&none);
    assert!(err.contains("no scheme found"), "{err}");
    assert!(err.contains("open frontier"), "{err}");

    let bad = run(&["count", "-B", "1-2-2", "-n", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(run(&["count", "-n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["discover", "-B", "1-2-3", "--bounds", "4:2:40"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn symmetry_flag_rescues_reverse_class() {
    let o = run(&[
        "count",
        "-B",
        "2-3-1",
        "--max-depth",
        "4",
        "--symmetry",
        "-n",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "1, 2, 5, 14, 42, 132");
}

#[test]
fn save_then_reuse() {
    let path = tmp("catalan.json");
    let o = run(&["discover", "-B", "1-2-3", "--save", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["patterns"][0], "1-2-3");
    assert_eq!(doc["triples"].as_array().unwrap().len(), 4);

    let p = path.to_str().unwrap();
    let counted = run(&["count", "--scheme", p, "-n", "8", "--output", "csv"]);
    let csv = stdout(&counted);
    assert_eq!(csv.lines().next(), Some("n,count"));
    assert_eq!(csv.lines().last(), Some("8,1430"));

    let rendered = run(&["render", "--scheme", p]);
    assert!(
        stdout(&rendered).contains("d_{2} -> 1"),
        "{}",
        stdout(&rendered)
    );

    let again = run(&["discover", "--scheme", p, "--output", "json"]);
    let reparsed: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(reparsed["triples"], doc["triples"]);
}

#[test]
fn clearance_shortfall_and_auto_deepen() {
    let path = tmp("catalan_c0.json");
    let p = path.to_str().unwrap();
    assert!(run(&["discover", "-B", "1-2-3", "--save", p])
        .status
        .success());

    let short = run(&["distribute", "--scheme", p, "-s", "des", "-n", "6"]);
    assert_eq!(short.status.code(), Some(1));
    assert!(
        stderr(&short).contains("--auto-deepen"),
        "{}",
        stderr(&short)
    );

    let deep = run(&[
        "distribute",
        "--scheme",
        p,
        "-s",
        "des",
        "-n",
        "5",
        "--auto-deepen",
    ]);
    assert_eq!(deep.status.code(), Some(0), "{}", stderr(&deep));
    let out = stdout(&deep);
    assert!(out.starts_with("# q = des"), "{out}");
    assert!(out.contains("n=5: "), "{out}");

    let inv = run(&["distribute", "--scheme", p, "-s", "inv", "-n", "3"]);
    assert_eq!(inv.status.code(), Some(0), "{}", stderr(&inv));

    let deepened = tmp("catalan_c2.json");
    let d = run(&[
        "deepen",
        "--scheme",
        p,
        "-c",
        "2",
        "--save",
        deepened.to_str().unwrap(),
    ]);
    assert_eq!(d.status.code(), Some(0), "{}", stderr(&d));
    let v = run(&[
        "verify",
        "--scheme",
        deepened.to_str().unwrap(),
        "-s",
        "des,peak",
        "-n",
        "7",
    ]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    assert_eq!(stdout(&v).lines().last(), Some("pass"));
}

#[test]
fn csv_and_json_distributions() {
    let csv = run(&[
        "distribute",
        "-B",
        "1-3-2",
        "-s",
        "peak,des",
        "-n",
        "3",
        "--output",
        "csv",
    ]);
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,peak,des,coefficient"));
    let total: u64 = lines
        .filter(|l| l.starts_with("3,"))
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 5);

    let json = run(&[
        "distribute",
        "-B",
        "1-3-2",
        "-s",
        "peak",
        "-n",
        "4",
        "--output",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(doc["statistics"][0], "peak");
    assert_eq!(doc["distributions"].as_array().unwrap().len(), 4);
}

#[test]
fn via_reverse_handles_maj() {
    let o = run(&[
        "distribute",
        "-B",
        "2-1-3,1-2-3",
        "-s",
        "maj",
        "-n",
        "4",
        "--via-reverse",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let direct = run(&["distribute", "-B", "2-1-3,1-2-3", "-s", "maj", "-n", "4"]);
    assert_eq!(direct.status.code(), Some(2));
    assert!(
        stderr(&direct).contains("not compatible"),
        "{}",
        stderr(&direct)
    );
}

#[test]
fn verify_catches_a_corrupted_scheme() {
    let good = tmp("good.json");
    assert!(
        run(&["discover", "-B", "1-2-3", "--save", good.to_str().unwrap()])
            .status
            .success()
    );
    let mut doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&good).unwrap()).unwrap();
    for t in doc["triples"].as_array_mut().unwrap() {
        if t["prefix"] == "12" {
            t["rd"] = serde_json::json!([1]);
        }
    }
    let bad = tmp("bad.json");
    fs::write(&bad, doc.to_string()).unwrap();
    let o = run(&["verify", "--scheme", bad.to_str().unwrap(), "-n", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("divergence at n="), "{}", stderr(&o));

    let o = run(&["verify", "--scheme", good.to_str().unwrap(), "-n", "7"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_without_patterns() {
    let o = run(&["verify", "-B", "", "-s", "inv,des", "-n", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("n=6: ok (720)"), "{}", stdout(&o));
}

#[test]
fn malformed_scheme_file_is_a_usage_error() {
    let path = tmp("junk.json");
    fs::write(&path, "{\"patterns\": [\"1-2-3\"], \"extra\": 1}").unwrap();
    let o = run(&["count", "--scheme", path.to_str().unwrap(), "-n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
