use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bicover(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicover"))
        .args(args)
        .current_dir(dir)
        .env_remove("BICOVER_GUARD_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn skew4_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(bicover(&["goodmat", "--construction", "skew2", "--n", "4", "-o", "m.json"], d).status.success());
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("m.json")).unwrap()).unwrap();
    assert_eq!(m["rows"], serde_json::json!([[0, 1, 1, -1], [-1, 0, 1, 1], [-1, -1, 0, -1], [1, -1, 1, 0]]));

    assert!(bicover(&["cover", "--from-goodmat", "m.json", "-o", "c.json"], d).status.success());
    let ok = bicover(&["verify", "--cover", "c.json", "--mode", "odd"], d);
    assert_eq!(ok.status.code(), Some(0));
    let bad = bicover(&["verify", "--cover", "c.json", "--mode", "exact-once"], d);
    assert_eq!(bad.status.code(), Some(1));

    // round trip through a circuit and the lift
    let o = bicover(
        &[
            "circuit",
            "--construction",
            "from-cover",
            "--cover",
            "c.json",
            "--field",
            "gf2",
            "--verify",
            "-o",
            "s8.json",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0));
    let o = bicover(&["circuit", "--construction", "lift", "--circuit", "s8.json", "--verify", "-o", "s9.json"], d);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(bicover(&["verify", "--circuit", "s9.json"], d).status.code(), Some(0));
    // over Q the same cover over-counts
    bicover(&["circuit", "--construction", "from-cover", "--cover", "c.json", "--field", "q", "-o", "q8.json"], d);
    assert_eq!(bicover(&["verify", "--circuit", "q8.json"], d).status.code(), Some(1));

    let ex = bicover(&["extract", "--circuit", "s8.json"], d);
    assert!(ex.status.success());
    let v: serde_json::Value = serde_json::from_slice(&ex.stdout).unwrap();
    assert_eq!(v["equations"]["ok"], true);
    assert_eq!(v["substitution"]["r"], 4);
}

#[test]
fn min_cover_prints_value() {
    let dir = tempfile::tempdir().unwrap();
    let o = bicover(&["search", "--min-cover", "--n", "4", "--mode", "exact-once"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // guard exceeded
    assert_eq!(bicover(&["search", "--vanishing-gf2", "--n", "12", "--r", "6"], d).status.code(), Some(3));
    // nothing within r_max
    assert_eq!(
        bicover(&["search", "--min-cover", "--n", "5", "--mode", "exact-once", "--r-max", "3"], d).status.code(),
        Some(1)
    );
    // usage errors
    assert_eq!(bicover(&["search", "--n", "4"], d).status.code(), Some(2));
    assert_eq!(bicover(&["goodmat", "--construction", "skew2", "--bogus"], d).status.code(), Some(2));
    assert_eq!(bicover(&["goodmat", "--construction", "skew2", "--n", "6"], d).status.code(), Some(2));
    assert_eq!(bicover(&["verify", "--cover", "missing.json"], d).status.code(), Some(2));
    assert_eq!(bicover(&["bounds", "--field", "gf4", "--n", "5"], d).status.code(), Some(2));
}

#[test]
fn guard_override_env() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_bicover"))
        .args(["search", "--min-circuit", "--n", "6", "--r-max", "1"])
        .current_dir(dir.path())
        .env("BICOVER_GUARD_OVERRIDE", "1")
        .output()
        .unwrap();
    // the guard is lifted, so the search runs and reports nothing within r_max = 1
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bounds_and_searches() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = bicover(&["bounds", "--field", "q", "--n", "10"], d);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["lower"]["value"], 9);
    assert!(v["lower"]["citation"].is_string());
    let o = bicover(&["search", "--equidistant", "--k", "2", "--field", "gf5", "--variant", "odd"], d);
    assert_eq!(stdout(&o).trim(), "not-found");
    let o = bicover(&["search", "--vanishing-gf2", "--n", "2", "--r", "1"], d);
    assert_eq!(stdout(&o).trim(), "found");
}

#[test]
fn design_and_mod3_covers() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    bicover(&["goodmat", "--construction", "design", "--q", "5", "--p", "3", "-o", "m.json"], d);
    assert_eq!(bicover(&["verify", "--goodmat", "m.json", "--p", "3"], d).status.code(), Some(0));
    bicover(&["cover", "--from-goodmat", "m.json", "--delete-vertex", "62", "-o", "c.json"], d);
    let o = bicover(&["verify", "--cover", "c.json", "--mode", "one-mod-3", "--format", "json"], d);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn worker_count_gives_identical_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let searches: [&[&str]; 4] = [
        &["search", "--min-cover", "--n", "5", "--mode", "odd"],
        &["search", "--vanishing-gf2", "--n", "9", "--r", "4"],
        &["search", "--min-circuit", "--n", "4"],
        &["search", "--equidistant", "--k", "2", "--field", "gf3", "--variant", "odd"],
    ];
    for (i, args) in searches.iter().enumerate() {
        let mut outs = Vec::new();
        for w in ["1", "4"] {
            let file = format!("out{i}-{w}.json");
            let mut a = args.to_vec();
            a.extend(["--workers", w, "--format", "json", "-o", &file]);
            assert!(bicover(&a, d).status.success(), "{args:?}");
            outs.push(fs::read(d.join(&file)).unwrap());
        }
        assert_eq!(outs[0], outs[1], "{args:?}");
    }
}

#[test]
fn checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["search", "--min-cover", "--n", "5", "--mode", "odd", "--checkpoint", "ck.json", "--format", "json"];
    let first = bicover(&args, d);
    assert!(first.status.success());
    let ck: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("ck.json")).unwrap()).unwrap();
    assert_eq!(ck["task"], "min-cover");
    assert!(ck["best"].is_object());
    let again = bicover(&args, d);
    assert_eq!(first.stdout, again.stdout);
    // a checkpoint from a different search is refused
    let other = bicover(&["search", "--min-cover", "--n", "4", "--mode", "odd", "--checkpoint", "ck.json"], d);
    assert_eq!(other.status.code(), Some(2));
}
