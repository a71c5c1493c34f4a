use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn smti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smti"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

// one man tying two women who each accept only him
const NO_STRONG: &str = "instance 1 2\nm 1: (1 2)\nw 1: 1\nw 2: 1\n";

#[test]
fn solve_weak_then_verify() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.txt", NO_STRONG);
    let o = smti(&["solve", "--level", "weak", "--instance", s(&inst)]);
    assert_eq!(code(&o), 0);
    let m = write(&dir, "m.txt", &stdout(&o));
    assert_eq!(code(&smti(&["verify", "--level", "weak", "--instance", s(&inst), "--matching", s(&m)])), 0);
    let o = smti(&["verify", "--level", "strong", "--instance", s(&inst), "--matching", s(&m)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("blocking edge"));
}

#[test]
fn none_exits_one() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.txt", NO_STRONG);
    for level in ["strong", "super"] {
        let o = smti(&["solve", "--level", level, "--instance", s(&inst)]);
        assert_eq!(code(&o), 1);
        assert_eq!(stdout(&o).trim(), "NONE");
        assert_eq!(code(&smti(&["oracle", "--level", level, "--instance", s(&inst)])), 1);
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "instance 1 1\nm 1: 1\nw 1: 1\nforbidden 1 1\nforced 1 1\n");
    let o = smti(&["solve", "--level", "weak", "--instance", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
    assert_eq!(code(&smti(&["solve", "--level", "weak", "--instance", "/no/such/file"])), 2);
    assert_eq!(code(&smti(&["solve", "--level", "medium", "--instance", s(&bad)])), 2);
    let f = write(&dir, "f.txt", "p 1in3 3 1\n1 1 2\n");
    assert_eq!(code(&smti(&["oracle", "--formula", s(&f)])), 2);
}

#[test]
fn count_calls_is_two_to_the_k() {
    let dir = TempDir::new().unwrap();
    // the unsolvable core plus a 2x2 block with three free edges
    let text = "instance 3 4\nm 1: (1 2)\nm 2: 3; 4\nm 3: 4; 3\nw 1: 1\nw 2: 1\nw 3: 2; 3\nw 4: 3; 2\n\
                free 2 3\nfree 2 4\nfree 3 3\n";
    let inst = write(&dir, "i.txt", text);
    let o = smti(&["solve", "--level", "strong", "--instance", s(&inst), "--count-calls"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("calls 8"), "{}", stdout(&o));
    let o = smti(&["solve", "--level", "super", "--instance", s(&inst), "--fpt-free", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "none");
    assert_eq!(v["calls"], 8);
}

#[test]
fn json_schemas() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "i.txt", NO_STRONG);
    let m = write(&dir, "m.txt", "1 1\n");
    let o = smti(&["verify", "--level", "super", "--instance", s(&inst), "--matching", s(&m), "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["command"], "verify");
    assert_eq!(v["stable"], false);
    assert_eq!(v["violations"][0]["kind"], "blocking");
    assert_eq!(v["violations"][0]["edge"], serde_json::json!([1, 2]));
    assert_eq!(v["blocking"]["weak"], serde_json::json!([]));
    assert_eq!(v["blocking"]["super"], serde_json::json!([[1, 2]]));

    let o = smti(&["solve", "--level", "weak", "--instance", s(&inst), "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "witness");
    assert_eq!(v["matching"], serde_json::json!([[1, 1]]));
    assert!(v["calls"].is_null());
}

#[test]
fn gen_is_deterministic() {
    let a = smti(&["gen", "smti", "--seed", "11", "--men", "4", "--women", "3", "--free", "0.3"]);
    let b = smti(&["gen", "smti", "--seed", "11", "--men", "4", "--women", "3", "--free", "0.3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let f1 = smti(&["gen", "1in3", "--seed", "5", "--vars", "6"]);
    let f2 = smti(&["gen", "1in3", "--seed", "5", "--vars", "6"]);
    assert_eq!(f1.stdout, f2.stdout);
    assert!(stdout(&f1).starts_with("p 1in3 6 6\n"));
}

#[test]
fn reduction_pipeline() {
    let dir = TempDir::new().unwrap();
    // a 2x2 source with a perfect weakly stable matching
    let src = write(&dir, "src.txt", "instance 2 2\nm 1: 1; 2\nm 2: 2\nw 1: 1\nw 2: (1 2)\n");
    let f1 = dir.path().join("f1.txt");
    let reg = dir.path().join("reg.txt");
    let o = smti(&["reduce", "forbidden1", "--in", s(&src), "--out", s(&f1), "--registry", s(&reg)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&f1).unwrap();
    assert!(text.contains("forbidden 4 4"));
    let reg_text = fs::read_to_string(&reg).unwrap();
    assert!(reg_text.contains("vertex m3 role u1"));
    assert!(reg_text.contains("edge 4 4 stage 4"));
    assert_eq!(code(&smti(&["oracle", "--level", "weak", "--instance", s(&f1)])), 0);

    let dense = dir.path().join("dense.txt");
    assert_eq!(code(&smti(&["reduce", "dense", "--in", s(&f1), "--out", s(&dense)])), 0);
    assert_eq!(code(&smti(&["oracle", "--level", "weak", "--perfect", "--instance", s(&dense)])), 0);
    assert_eq!(code(&smti(&["reduce", "dense", "--in", s(&f1), "--out", s(&dense), "--registry", s(&reg)])), 2);

    let done = dir.path().join("done.txt");
    assert_eq!(code(&smti(&["reduce", "complete-free", "--in", s(&src), "--out", s(&done)])), 0);
    assert!(fs::read_to_string(&done).unwrap().contains("free 2 1"));
}

#[test]
fn sat_pipeline() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "p 1in3 3 3\n1 2 3\n1 2 3\n1 2 3\n");
    assert_eq!(stdout(&smti(&["oracle", "--formula", s(&f)])).trim(), "true 1");
    let g = dir.path().join("g.txt");
    let reg = dir.path().join("reg.txt");
    assert_eq!(code(&smti(&["reduce", "sat-free", "--in", s(&f), "--out", s(&g), "--registry", s(&reg)])), 0);
    let reg_text = fs::read_to_string(&reg).unwrap();
    assert!(reg_text.contains("vertex w1 role y1.1"));
    assert!(reg_text.contains("stage interconnecting"));
    assert!(reg_text.lines().last().unwrap().starts_with("master women: "));
    let o = smti(&["solve", "--level", "super", "--instance", s(&g)]);
    assert_eq!(code(&o), 0);
    let m = write(&dir, "m.txt", &stdout(&o));
    assert_eq!(code(&smti(&["verify", "--level", "strong", "--instance", s(&g), "--matching", s(&m)])), 0);

    let unsat = write(&dir, "u.txt", "p 1in3 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    assert_eq!(code(&smti(&["oracle", "--formula", s(&unsat)])), 1);
    let gu = dir.path().join("gu.txt");
    assert_eq!(code(&smti(&["reduce", "sat-free", "--in", s(&unsat), "--out", s(&gu)])), 0);
    assert_eq!(code(&smti(&["solve", "--level", "strong", "--instance", s(&gu)])), 1);
}

#[test]
fn bench_csv() {
    let o = smti(&["bench", "--k-max", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let calls: Vec<u64> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(calls, vec![1, 2, 4, 8]);
}
