use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_monfiber"));
    c.env_remove("MONFIBER_CACHE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn eval_fiber_example() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.mf", "ring T=[x | y]; fiber((x^2),(y^2))");
    let o = run(&["eval", "-f", &f]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(x^2, x*y, y^2)\n");
    let o = run(&["eval", "-f", &f, "--format", "json"]);
    assert_eq!(stdout(&o), "{\"gens\":[[0,2],[1,1],[2,0]]}\n");
}

#[test]
fn parse_error_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.mf", "ring R=[x y];\nI = (x^2,;\nI");
    let o = run(&["eval", "-f", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(":2:10:"), "{err}");
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn resource_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "big.mf", "ring R=[a b c]; reg((a, b, c)^3)");
    let o = run(&[
        "verify",
        "--suite",
        "C22",
        "--instances",
        "1",
        "--budget",
        "1",
    ]);
    // budget-starved checks are counted, not failed
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("resource"));
    let o = run(&["eval", "-f", &f, "--budget", "5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["eval", "-f", &f]);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn invariants_and_symbolic_power() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "t.mf", "ring R=[x y z]; (x*y, x*z, y*z)");
    let o = run(&["invariants", "-f", &f, "--chars", "2"]);
    assert_eq!(
        stdout(&o),
        "ideal (x*y, x*z, y*z)\np=2\tdepth R/I=1\tpd R/I=2\treg I=2\treg R/I=1\n"
    );
    let o = run(&["symbolic-power", "-f", &f, "-s", "2"]);
    assert!(stdout(&o).contains("x*y*z"));
    let o = run(&["symbolic-power", "-f", &f, "-s", "2", "--mode", "other"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fiber_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.mf",
        "ring T=[x | y]; I = (x^2); J = (y^2); I + J",
    );
    let o = run(&["fiber", "-f", &f, "-s", "2"]);
    let out = stdout(&o);
    assert!(out.contains("F = (x^2, x*y, y^2)"), "{out}");
    assert!(out.contains("reg F^(2) = 4"), "{out}");
}

#[test]
fn verify_with_config_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg",
        "# small run\n--instances 4\n--s-max 2 --nvars 2\n",
    );
    let json = dir.path().join("r.json");
    let o = run(&[
        "--config",
        &cfg,
        "verify",
        "--suite",
        "C1,C8,C20",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["instances"], 4);
    assert_eq!(v["per_check"]["C1"]["pass"], 4 * 2 * 3);
    assert!(stdout(&o).contains("verdict PASS"));
}

#[test]
fn replay_reproduces_a_recorded_claim() {
    let dir = tempfile::tempdir().unwrap();
    let w = serde_json::json!({
        "instance": {"r_vars": ["x"], "s_vars": ["y"], "i": [[2]], "j": [[2]]},
        "program": "",
        "check": "C22",
        "s": 2,
        "p": 2,
        "claim": "",
        "lhs": "",
        "rhs": ""
    });
    let path = write(dir.path(), "w.json", &w.to_string());
    let o = run(&["replay", "--witness", &path]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("C22 s=2 p=2: pass"));
}

#[test]
fn explore_appends_records() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.jsonl");
    let l = log.to_str().unwrap();
    let args = [
        "explore",
        "--question",
        "reg-lb",
        "--budget",
        "2",
        "--s-max",
        "2",
        "--chars",
        "2",
        "--log",
        l,
    ];
    assert!(run(&args).status.success());
    let first = fs::read_to_string(&log).unwrap().lines().count();
    assert_eq!(first, 4);
    assert!(run(&args).status.success());
    assert_eq!(fs::read_to_string(&log).unwrap().lines().count(), 8);
    let o = run(&[
        "explore",
        "--question",
        "reg-lb",
        "--budget",
        "0",
        "--log",
        l,
    ]);
    assert!(stdout(&o).contains("records 0"));
}

#[test]
fn cache_directory_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "b.mf",
        "ring R=[x y z w]; betti((x*y, y*z, z*w, w*x)^2)",
    );
    let cold = run(&["eval", "-f", &f, "--format", "tsv"]);
    let cache = dir.path().join("cache");
    let with = |c: &mut Command| {
        c.env("MONFIBER_CACHE_DIR", &cache)
            .args(["eval", "-f", &f, "--format", "tsv"])
            .output()
            .unwrap()
    };
    let first = with(&mut bin());
    let warm = with(&mut bin());
    assert!(fs::read_dir(&cache).unwrap().count() > 0);
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(first.stdout, warm.stdout);
}
