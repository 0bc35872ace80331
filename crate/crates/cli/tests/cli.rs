use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_equidist"));
    cmd.env_remove("EQUIDIST_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn equidist")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn equidist");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn bound_reports_main_theorem() {
    let o = run(&["bound", "--n", "10", "--q", "2", "--lambda", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("bound: 10"), "{text}");
    assert!(text.contains("main_theorem"), "{text}");

    let o = run(&["--format", "json", "bound", "--n", "10", "--q", "2", "--lambda", "3"]);
    assert_eq!(
        json(&o),
        serde_json::json!({
            "bound": 10,
            "source": "main_theorem",
            "exceptional": false,
            "excluded_value": "11/2",
            "conjectural": false
        })
    );
}

#[test]
fn bound_exceptional_and_delsarte() {
    let o = run(&["--format", "json", "bound", "--n", "7", "--lambda", "4"]);
    let v = json(&o);
    assert_eq!(v["bound"], 8);
    assert_eq!(v["exceptional"], true);

    let o = run(&["--format", "json", "bound", "--n", "4", "--q", "3", "--s", "1"]);
    assert_eq!(json(&o)["bound"], 9);

    let o = run(&["--format", "json", "bound", "--n", "5", "--q", "3", "--lambda", "2"]);
    let v = json(&o);
    assert_eq!(v["bound"], 10);
    assert_eq!(v["conjectural"], true);
}

#[test]
fn verify_names_the_violating_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "2 2\n0 0\n0 1\n1 1\n").unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(00, 11)"), "{}", stdout(&o));

    let o = run(&["--format", "json", "verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["equidistant"], false);
}

#[test]
fn hadamard_family_pipes_into_verify() {
    let built = run(&["construct", "hadamard", "--order", "12", "--as-family"]);
    assert_eq!(built.status.code(), Some(0));
    let o = run_stdin(&["--format", "json", "verify", "--seed", "3", "-"], &built.stdout);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["certificate"]["lambda"], 6);
    assert_eq!(v["m"], 12);
    assert_eq!(v["isometry_check"]["preserved"], true);
}

#[test]
fn certify_proves_bound_for_hadamard_rows() {
    let built = run(&["construct", "hadamard", "--order", "8", "--as-family"]);
    let o = run_stdin(&["--format", "json", "certify", "-"], &built.stdout);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["conclusion"], "bound_n_proven");
    assert_eq!(v["rank_value"], 8);
    // Gram matrix is 8I here, so det = 8^8.
    assert_eq!(v["det_value"], 8u64.pow(8));
}

#[test]
fn certify_rejects_ternary_input() {
    let o = run_stdin(&["certify", "-"], b"1 3\n0\n1\n2\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_witness_round_trips() {
    let o = run(&["search", "--n", "4", "--q", "3", "--lambda", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max_size = 9"));
    // The text report is itself a family file.
    let v = run_stdin(&["--format", "json", "verify", "-"], &o.stdout);
    assert_eq!(v.status.code(), Some(0));
    let v = json(&v);
    assert_eq!(v["m"], 9);
    assert_eq!(v["certificate"]["lambda"], 3);
}

#[test]
fn search_json_is_stable_across_threads() {
    let args = |t: &'static str| {
        run(&["--format", "json", "search", "--n", "7", "--q", "2", "--lambda", "4", "--threads", t])
    };
    let a = json(&args("1"));
    let b = json(&args("4"));
    assert_eq!(a["max_size"], 8);
    assert_eq!(a["max_size"], b["max_size"]);
    assert_eq!(a["witness"], b["witness"]);
    assert_eq!(a["complete"], true);
}

#[test]
fn exhausted_budget_exits_3() {
    let o = run(&["search", "--n", "8", "--q", "2", "--lambda", "4", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("complete = false"));
}

#[test]
fn enumeration_limit_exits_3() {
    let o = run(&["search", "--n", "8", "--q", "3", "--lambda", "4", "--max-vertices", "100"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--n", "x", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/family.txt"]).status.code(), Some(2));
    assert_eq!(run_stdin(&["verify", "-"], b"2 2\n0 2\n").status.code(), Some(2));
    assert_eq!(run(&["--format", "csv", "bound", "--n", "3", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "hadamard", "--order", "28"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--n", "3", "--lambda", "4"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_csv_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let resume = dir.path().to_str().unwrap();
    let args = ["--format", "csv", "sweep", "--q", "2", "--max-n", "6", "--resume", resume];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,q,lambda,max_size,bound,exceptional,complete,nodes"));
    assert_eq!(lines.count(), 21);
    assert!(text.contains("\n3,2,2,4,4,true,true,"));

    let stored = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(stored, 21);
    let second = run(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(stdout(&second), text);
}

#[test]
fn conjecture_sweep_flags_counterexamples() {
    let o = run(&["--format", "json", "sweep", "--q", "3", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["counterexample_flag"], true);
    let stderr = String::from_utf8(o.stderr).unwrap();
    assert!(stderr.contains("COUNTEREXAMPLE: q=3 n=4 lambda=3"), "{stderr}");
}
