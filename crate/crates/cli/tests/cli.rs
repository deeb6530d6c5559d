use std::path::PathBuf;
use std::process::{Command, Output};

fn cagroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cagroup"))
        .args(args)
        .env_remove("CAGROUP_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cagroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn rule102_is_not_postsurjective() {
    let out = cagroup(&["decide", "--rule", "rule102", "--property", "postsurjective"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# cagroup report\ncommand: decide --rule rule102"));
    assert!(text.contains("\nstatus: no\n"));
    assert!(text.contains("certificate.kind: periodic-pair"));
}

#[test]
fn xor102_profile() {
    for (property, status) in [
        ("surjective", "yes"),
        ("injective", "no"),
        ("preinjective", "yes"),
        ("reversible", "no"),
        ("balanced", "yes"),
    ] {
        let out = cagroup(&["decide", "--rule", "xor102", "--property", property]);
        assert!(stdout(&out).contains(&format!("\nstatus: {status}\n")), "{property}");
    }
}

#[test]
fn feasibility_margin() {
    let out = cagroup(&["sofic", "feasibility", "--s", "2", "--dr", "5", "--d2r", "17", "--eps", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("feasible: false"));
    let expected = 0.5 * 2f64.ln() + (1.0 - 1.0 / 32.0f64).ln() / 34.0;
    assert!(text.contains(&format!("log_margin: {expected:.12}")));
    let out = cagroup(&["sofic", "feasibility", "--s", "2", "--dr", "5", "--d2r", "17", "--eps", "0.001"]);
    assert!(stdout(&out).contains("feasible: true"));
}

#[test]
fn error_kinds_have_distinct_codes() {
    let unsupported = cagroup(&["decide", "--rule", "majority-f2", "--property", "surjective"]);
    assert_eq!(unsupported.status.code(), Some(10));
    let unknown = cagroup(&["decide", "--rule", "nosuch", "--property", "surjective"]);
    assert_eq!(unknown.status.code(), Some(11));
    let bad = scratch("bad.rule");
    std::fs::write(&bad, "states 2\ngroup Z\nneighborhood (0)\ntable 0 1 1\n").unwrap();
    let malformed = cagroup(&["decide", "--rule", bad.to_str().unwrap(), "--property", "surjective"]);
    assert!(![0, 1, 2].contains(&malformed.status.code().unwrap()));
    std::fs::write(&bad, "garbage\n").unwrap();
    let parse = cagroup(&["decide", "--rule", bad.to_str().unwrap(), "--property", "surjective"]);
    assert_eq!(parse.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&parse.stderr).starts_with("error[E04]"));
    let usage = cagroup(&["decide", "--rule", "rule1"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cagroup"))
        .args(["probe", "--rule", "majority-f2", "--check", "balanced", "--bound", "1"])
        .env("CAGROUP_ENUM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn rule_files_load() {
    let path = scratch("r30.rule");
    std::fs::write(&path, "# rule 30\nstates 2\ngroup Z^1\nneighborhood (-1) (0) (1)\nwolfram 30\n").unwrap();
    let out = cagroup(&["decide", "--rule", path.to_str().unwrap(), "--property", "surjective"]);
    assert!(stdout(&out).contains("\nstatus: yes\n"));
}

#[test]
fn reports_recheck_and_tampering_is_caught() {
    let path = scratch("rev15.txt");
    let out = cagroup(&["--out", path.to_str().unwrap(), "decide", "--rule", "rule15", "--property", "reversible"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let ok = cagroup(&["recheck", "--rule", "rule15", "--report", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("-\tyes\tinverse\tvalid"));
    let wrong = cagroup(&["recheck", "--rule", "rule51", "--report", path.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(13));

    let orphan = scratch("orphan.txt");
    let out = cagroup(&["--out", orphan.to_str().unwrap(), "decide", "--rule", "rule0", "--property", "surjective"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&orphan).unwrap();
    assert!(text.contains("certificate.word: 1\n"));
    std::fs::write(&orphan, text.replace("certificate.word: 1\n", "certificate.word: 0\n")).unwrap();
    let tampered = cagroup(&["recheck", "--rule", "rule0", "--report", orphan.to_str().unwrap()]);
    assert_eq!(tampered.status.code(), Some(13));
}

#[test]
fn demos_are_deterministic_and_write_plot_data() {
    let dir = scratch("plots");
    let args = ["demo", "--example", "golden-mean", "--plot-dir", dir.to_str().unwrap()];
    let (a, b) = (cagroup(&args), cagroup(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let tsv = std::fs::read_to_string(dir.join("golden-mean-language-counts.tsv")).unwrap();
    assert!(tsv.starts_with("n\tcount\tfibonacci\n1\t2\t2\n2\t3\t3\n3\t5\t5\n"));
    let xor = cagroup(&["demo", "--example", "xor102"]);
    assert!(stdout(&xor).contains("assertions.passed: 6/6"));
    assert_eq!(cagroup(&["demo", "--example", "nope"]).status.code(), Some(11));
}

#[test]
fn seeded_approximations_are_reproducible() {
    let graph = scratch("perm.txt");
    let args = [
        "sofic", "permutation", "--rank", "2", "--vertices", "200", "--radius", "1", "--seed", "7", "--graph-out",
        graph.to_str().unwrap(),
    ];
    let (a, b) = (cagroup(&args), cagroup(&args));
    assert_eq!(a.stdout, b.stdout);
    let verify = cagroup(&["sofic", "verify", "--group", "F_2", "--graph", graph.to_str().unwrap(), "--radius", "1", "--eps", "0.5"]);
    assert!(stdout(&verify).contains("status: yes"));
    let mismatch = cagroup(&["sofic", "verify", "--group", "F_1", "--graph", graph.to_str().unwrap(), "--radius", "1", "--eps", "0.5"]);
    assert_eq!(mismatch.status.code(), Some(7));
}

#[test]
fn cycle_commands() {
    let c12 = scratch("c12.txt");
    cagroup(&["sofic", "torus", "--dim", "1", "--side", "12", "--radius", "2", "--graph-out", c12.to_str().unwrap()]);
    let pack = cagroup(&["sofic", "pack", "--group", "Z", "--graph", c12.to_str().unwrap(), "--ell", "1"]);
    assert!(stdout(&pack).contains("packing: 0,3,6,9\n"));
    let c8 = scratch("c8.txt");
    cagroup(&["sofic", "torus", "--dim", "1", "--side", "8", "--radius", "1", "--graph-out", c8.to_str().unwrap()]);
    for (rule, count) in [("rule170", 256), ("rule102", 128), ("rule0", 1)] {
        let out = cagroup(&["sofic", "phicount", "--rule", rule, "--graph", c8.to_str().unwrap()]);
        assert!(stdout(&out).contains(&format!("image.count: {count}\n")), "{rule}");
    }
}

#[test]
fn probes_on_free_groups() {
    let out = cagroup(&["probe", "--rule", "majority-f2", "--check", "erasable", "--bound", "0"]);
    assert!(stdout(&out).contains("certificate.kind: erasable-patterns"));
    let out = cagroup(&["probe", "--rule", "rule170", "--check", "bijection", "--bound", "2", "--pairs", "5", "--seed", "1"]);
    assert!(stdout(&out).contains("pairs.held: 5/5"));
}

#[test]
fn acceptance_suite_passes() {
    let out = cagroup(&["suite", "--acceptance"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("passed: 8/8"));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
