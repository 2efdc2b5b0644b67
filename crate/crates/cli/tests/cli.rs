//! End-to-end behavior of the `pairbias` binary: exit codes, output
//! formats, determinism and file handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_BIN_EXE_pairbias"));
    assert!(p.exists(), "binary not built at {}", p.display());
    p = p.canonicalize().unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("failed to spawn pairbias")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn census_worked_example_csv() {
    let o = run(&["census", "--k", "2", "--up-to", "100"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "k,mode,bound,pair_count,t_neg,t_zero,t_pos,s_neg,s_zero,s_pos,st_agree\n\
         2,up_to_x,100,8,1,3,4,0,1,7,4\n"
    );
}

#[test]
fn census_parses_lists_and_ranges() {
    let o = run(&["census", "--k", "2..6:2,10", "--up-to", "1000"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let ks: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(ks, vec!["2", "4", "6", "10"]);
}

#[test]
fn census_first_primes_scope() {
    let o = run(&["census", "--k", "2", "--first-primes", "25"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("2,first_n_primes,25,"));
}

#[test]
fn usage_errors_exit_1() {
    // Odd k.
    let o = run(&["census", "--k", "3", "--up-to", "100"]);
    assert_eq!(o.status.code(), Some(1));
    // Missing scope.
    let o = run(&["census", "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    // Both scopes.
    let o = run(&[
        "census",
        "--k",
        "2",
        "--up-to",
        "10",
        "--first-primes",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(1));
    // Unknown flag.
    let o = run(&["census", "--k", "2", "--up-to", "100", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    // Unknown subcommand.
    let o = run(&["dance"]);
    assert_eq!(o.status.code(), Some(1));
    // Zero threads.
    let o = run(&["census", "--k", "2", "--up-to", "100", "--threads", "0"]);
    assert_eq!(o.status.code(), Some(1));
    // Constants refuse CSV.
    let o = run(&["constants", "--k", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn capacity_errors_exit_2() {
    let o = run(&["census", "--k", "2", "--up-to", "2199023255552"]); // 2^41
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["census", "--help"]).status.code(), Some(0));
}

#[test]
fn census_deterministic_across_threads() {
    let a = run(&[
        "census",
        "--k",
        "2,6",
        "--up-to",
        "300000",
        "--threads",
        "1",
    ]);
    let b = run(&[
        "census",
        "--k",
        "2,6",
        "--up-to",
        "300000",
        "--threads",
        "4",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_json_format() {
    let o = run(&["census", "--k", "2", "--up-to", "100", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["pair_count"], 8);
    assert_eq!(v[0]["t_neg"], 1);
    assert_eq!(v[0]["mode"], "up_to_x");
}

#[test]
fn constants_json_k2() {
    // Small cutoffs keep this fast; table-precision digits need the
    // defaults, so only structure and 9-digit fields are checked here.
    let o = run(&[
        "constants",
        "--k",
        "2",
        "--cutoff-r",
        "1000000",
        "--cutoff-euler",
        "100000",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rep = &v[0];
    assert_eq!(rep["k"], 2);
    assert_eq!(rep["chi3"], -1);
    assert_eq!(rep["q_set"], serde_json::json!([5, 7, 11]));
    assert_eq!(rep["l_k"], "0.0671393028");
    assert_eq!(rep["rounded"]["l_k"], "0.067139");
    assert_eq!(rep["rounded"]["bound_reversed"], "0.651516");
    assert_eq!(rep["rounded"]["bound_biased"], "0.004594");
    assert_eq!(rep["r_k"]["cutoff"], 1_000_000);
    // Balanced route for 3 | k.
    let o = run(&[
        "constants",
        "--k",
        "6",
        "--cutoff-r",
        "1000000",
        "--cutoff-euler",
        "100000",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["minus"]["q_set"], serde_json::json!([5]));
    assert_eq!(v[0]["plus"]["q_set"], serde_json::json!([7]));
    assert_eq!(v[0]["rounded"]["l_minus"], "0.223144");
}

#[test]
fn out_file_written_atomically() {
    let dir = std::env::temp_dir().join(format!("pairbias-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.csv");
    let o = run(&[
        "census",
        "--k",
        "2",
        "--up-to",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.ends_with('\n'));
    assert!(content.contains("2,up_to_x,100,8,"));
    assert!(!dir.join("census.csv.tmp").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn predict_output() {
    let o = run(&[
        "predict",
        "--k",
        "2,6",
        "--up-to",
        "10000",
        "--cutoff-euler",
        "1000000",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("k,x,pair_count,predicted,ratio\n"));
    // pi_2(1e4) = 205.
    assert!(out.contains("2,10000,205,"), "{out}");
}

#[test]
fn tables_desk_scale() {
    let dir = std::env::temp_dir().join(format!("pairbias-tables-{}", std::process::id()));
    let o = run(&[
        "tables",
        "--out",
        dir.to_str().unwrap(),
        "--scale",
        "2000",
        "--cutoff-r",
        "200000",
        "--cutoff-euler",
        "100000",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t1 = std::fs::read_to_string(dir.join("table1.csv")).unwrap();
    assert_eq!(t1.lines().count(), 61); // header + 60 rows
    assert!(t1.starts_with("k,t_neg_count,pair_count,proportion\n"));
    let t2 = std::fs::read_to_string(dir.join("table2.csv")).unwrap();
    assert_eq!(t2.lines().count(), 61);
    let t3 = std::fs::read_to_string(dir.join("table3.csv")).unwrap();
    assert_eq!(t3.lines().count(), 29); // k = 2..164 step 6
    assert!(t3.lines().nth(1).unwrap().starts_with("2,5;7;11,"));
    let t4 = std::fs::read_to_string(dir.join("table4.csv")).unwrap();
    assert_eq!(t4.lines().count(), 32); // k = 4..184 step 6
    let t5 = std::fs::read_to_string(dir.join("table5.csv")).unwrap();
    assert_eq!(t5.lines().count(), 27); // k = 6..156 step 6
    assert!(t5.lines().nth(1).unwrap().starts_with("6,5,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn progress_never_pollutes_stdout() {
    // Even with progress enabled at full scale the stdout stream must stay
    // machine-clean; desk-scale emits no progress at all.
    let o = run(&["census", "--k", "2", "--up-to", "200000", "--threads", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in out.lines() {
        assert!(
            line.starts_with('k') || line.split(',').count() == 11,
            "unexpected stdout line: {line}"
        );
    }
}
