use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use oarray::report::{Report, Source};
use oarray::LinearCode;

fn oa(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_oa"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn oa");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = oa(args, stdin);
    assert!(
        out.status.success(),
        "oa {args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn every_construction_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let syl = dir.path().join("syl.oa");
    std::fs::write(&syl, ok(&["construct", "sylvester"], None)).unwrap();
    let nr = dir.path().join("nr.oa");
    std::fs::write(&nr, ok(&["construct", "nordstrom-robinson"], None)).unwrap();
    let gen = dir.path().join("g.txt");
    std::fs::write(&gen, LinearCode::code_13_3_7().to_text()).unwrap();

    let cases: Vec<(Vec<&str>, usize)> = vec![
        (vec!["construct", "sylvester"], 2),
        (vec!["construct", "even-weight"], 4),
        (vec!["construct", "double", "--in", syl.to_str().unwrap()], 3),
        (vec!["construct", "shorten", "--in", nr.to_str().unwrap()], 4),
        (vec!["construct", "dual", "--gen", gen.to_str().unwrap()], 6),
        (vec!["construct", "nordstrom-robinson"], 5),
        (vec!["construct", "kerdock"], 5),
    ];
    for (args, t) in cases {
        let array = ok(&args, None);
        let t = t.to_string();
        let report = ok(&["verify", "--t", &t], Some(&array));
        assert!(report.contains(&format!("strength {t}: holds")), "{args:?}: {report}");
        let report = ok(&["verify", "--t", &t, "-"], Some(&array));
        assert!(report.contains(&format!("max strength: {t}")), "{args:?}: {report}");
    }
}

#[test]
fn golden_text_outputs() {
    assert_eq!(ok(&["construct", "sylvester", "--h", "2"], None), golden("sylvester_h2.txt"));
    assert_eq!(ok(&["table", "--max-k", "5", "--max-t", "4"], None), golden("table_5_4.txt"));
    assert_eq!(ok(&["bound", "--k", "13", "--t", "6", "--lp"], None), golden("bound_13_6_lp.txt"));
    let even5 = ok(&["construct", "even-weight", "--k", "5"], None);
    assert_eq!(ok(&["analyze", "--u", "2"], Some(&even5)), golden("analyze_even5.txt"));
    let out = oa(&["verify", "--t", "5"], Some(&even5));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), golden("verify_even5_t5.txt"));
}

#[test]
fn json_reports_parse_back() {
    let even5 = ok(&["construct", "even-weight", "--k", "5"], None);
    let runs: Vec<(Vec<&str>, Option<&str>)> = vec![
        (vec!["--json", "verify", "--t", "4"], Some(&even5)),
        (vec!["--json", "analyze", "--u", "2"], Some(&even5)),
        (vec!["--json", "bound", "--k", "12", "--t", "6", "--lp"], None),
        (vec!["--json", "construct", "even-weight", "--k", "4"], None),
        (vec!["--json", "search", "--k", "4", "--t", "2", "--max-n", "8", "--simple"], None),
        (vec!["--json", "table", "--max-k", "4", "--max-t", "3"], None),
        (vec!["--json", "ci", "--support"], Some(&even5)),
    ];
    for (args, input) in runs {
        let text = ok(&args, input);
        let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(report.command, args[1]);
        assert!(!report.provenance.is_empty(), "{args:?} has no provenance");
        let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
        assert_eq!(again, text, "{args:?} is not schema-stable");
    }
}

#[test]
fn bound_report_carries_lp_certificate() {
    let text = ok(&["--json", "bound", "--k", "12", "--t", "6", "--lp"], None);
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.results["lp"]["optimum"]["num"], "768");
    assert_eq!(report.results["lp"]["optimum"]["den"], "1");
    assert_eq!(report.results["rao"], "299");
    assert!(report.provenance.iter().any(|p| p.source == Source::Lp));
}

#[test]
fn analyze_reports_boundary_case() {
    let even5 = ok(&["construct", "even-weight", "--k", "5"], None);
    let body: Vec<&str> = even5.lines().filter(|l| !l.starts_with('#')).collect();
    let rows = &body[1..];
    let doubled = format!("32 5 2\n{}\n{}\n", rows.join("\n"), rows.join("\n"));
    let text = ok(&["analyze", "--u", "2"], Some(&doubled));
    assert!(text.contains("verdict: boundary_doubled_case"), "{text}");
    assert!(text.contains("two copies of an even-weight translate: yes"), "{text}");
}

#[test]
fn search_reports_minimum_with_certificates() {
    let text = ok(&["search", "--k", "5", "--t", "3", "--max-n", "32", "--simple"], None);
    assert!(text.contains("N = 8: exhausted"), "{text}");
    assert!(text.contains("minimum N = 16:"), "{text}");
    let text = ok(&["search", "--k", "4", "--t", "2", "--n", "4", "--simple"], None);
    assert!(text.starts_with("no simple OA(4,4,2,2): exhausted"), "{text}");
    assert!(text.contains("assumed: first row is all zeros"), "{text}");
}

#[test]
fn exit_codes() {
    let out = oa(&["verify"], Some("2 2 2\n00\n0x\n"));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("line 3"), "{err}");

    assert_eq!(oa(&["bound", "--k", "3"], None).status.code(), Some(2));
    assert_eq!(oa(&["verify", "/does/not/exist"], None).status.code(), Some(2));

    let out = oa(&["search", "--k", "6", "--t", "3", "--n", "24", "--budget", "50"], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("budget"));

    let out = oa(&["construct", "double", "--in", "-"], Some("2 2 2\n01\n01\n"));
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));

    let sparse = "4 3 2\n000\n001\n010\n111\n";
    assert_eq!(oa(&["analyze", "--u", "1"], Some(sparse)).status.code(), Some(1));
}

#[test]
fn ci_reads_truth_tables() {
    let table = format!("3\n{}\n", "01101001");
    let text = ok(&["ci"], Some(&table));
    assert!(text.contains("ci order: 2"), "{text}");
    assert_eq!(oa(&["ci"], Some("2\n0000\n")).status.code(), Some(2));
}
