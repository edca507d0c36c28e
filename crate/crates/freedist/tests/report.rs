use freedist::report::{emit_report, render, run_suite, CheckResult, Format, NRange, Params, Report, ReportError, Status, Summary};
use proptest::prelude::*;
use std::process::Command;

fn params(min: usize, max: usize) -> Params {
    Params { n: NRange { min, max }, timing: false, ..Params::default() }
}

fn result(id: &str, status: Status) -> CheckResult {
    CheckResult { id: id.into(), anchor: "a".into(), status, witness: Some("w".into()), elapsed_us: None }
}

fn sample() -> Report {
    let checks = vec![result("b", Status::Fail), result("a", Status::Pass), result("c", Status::Skipped)];
    Report::new("algebra", &params(2, 3), checks)
}

#[test]
fn summary_counts() {
    let r = sample();
    assert_eq!(r.summary, Summary { pass: 1, fail: 1, skipped: 1 });
    assert!(r.any_failed());
    assert_eq!(r.checks.iter().map(|c| c.id.as_str()).collect::<Vec<_>>(), ["a", "b", "c"]);
    assert_eq!(r.generated_at, None);
}

#[test]
fn json_round_trip() {
    let r = sample();
    let s = render(&r, Format::Json).unwrap();
    let back: Report = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
}

#[test]
fn text_has_one_line_per_check() {
    let s = render(&sample(), Format::Text).unwrap();
    assert_eq!(s.lines().count(), 3 + 2);
    assert!(s.contains("FAIL  b"));
    assert!(s.ends_with("summary: 1 pass, 1 fail, 1 skipped\n"));
}

#[test]
fn empty_report_is_an_error() {
    let r = Report::new("algebra", &params(2, 2), vec![]);
    assert!(matches!(render(&r, Format::Text), Err(ReportError::Empty)));
}

#[test]
fn unknown_suite() {
    assert!(matches!(run_suite("lattice", &params(2, 2)), Err(ReportError::UnknownSuite(_))));
    let bad = Params { n: NRange { min: 5, max: 3 }, ..params(2, 2) };
    assert!(matches!(run_suite("algebra", &bad), Err(ReportError::InvalidRange(_))));
}

#[test]
fn range_parsing() {
    assert_eq!("2..5".parse::<NRange>().unwrap(), NRange { min: 2, max: 5 });
    assert_eq!("3..=4".parse::<NRange>().unwrap(), NRange { min: 3, max: 4 });
    assert_eq!("4".parse::<NRange>().unwrap(), NRange { min: 4, max: 4 });
    for s in ["1..3", "5..2", "2..9", "x..3", ""] {
        assert!(s.parse::<NRange>().is_err(), "{s}");
    }
    assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
    assert!("yaml".parse::<Format>().is_err());
}

#[test]
fn kostant_support_witness() {
    let c = run_suite("kostant", &params(4, 4)).unwrap();
    let b = c.iter().find(|x| x.id == "kostant.n4.block_support").unwrap();
    assert_eq!(b.status, Status::Pass);
    assert!(b.witness.as_deref().unwrap().contains("(g₁∧g₂)⊗g₋₂: present"));
}

#[test]
fn deep_is_required_for_rank_five_homology() {
    let c = run_suite("kostant", &params(5, 5)).unwrap();
    assert!(c.iter().any(|x| x.id == "kostant.n5.homology" && x.status == Status::Skipped));
}

#[test]
fn models_include_nonflat_curvature() {
    let c = run_suite("models", &params(4, 4)).unwrap();
    let k = c.iter().find(|x| x.id == "models.nonflat.κ(U₁₂,X₁′)=U₃₄").unwrap();
    assert_eq!(k.status, Status::Pass);
    assert!(c.iter().all(|x| x.status == Status::Pass));
}

#[test]
fn every_result_has_a_witness() {
    let c = run_suite("algebra", &params(2, 3)).unwrap();
    assert!(c.iter().all(|x| x.witness.is_some() && x.elapsed_us.is_none()));
    assert!(c.iter().all(|x| x.id.starts_with("algebra.")));
    let timed = run_suite("algebra", &Params { timing: true, ..params(2, 2) }).unwrap();
    assert!(timed.iter().all(|x| x.elapsed_us.is_some()));
}

#[test]
fn emit_to_file() {
    let dir = std::env::temp_dir().join(format!("freedist-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let s = emit_report(&sample(), Format::Json, Some(&path)).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), s);
    let missing = dir.join("no/such/dir/r.json");
    assert!(matches!(emit_report(&sample(), Format::Json, Some(&missing)), Err(ReportError::Io(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cli_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_freedist");
    let ok = Command::new(bin).args(["--suite", "algebra", "--n", "2..3", "--format", "json", "--no-timestamp"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(r.summary.fail, 0);
    assert_eq!((r.params.n_min, r.params.n_max), (2, 3));
    let again = Command::new(bin).args(["--suite", "algebra", "--n", "2..3", "--format", "json", "--no-timestamp"]).output().unwrap();
    assert_eq!(ok.stdout, again.stdout);
    let bad = Command::new(bin).args(["--suite", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let bad = Command::new(bin).args(["--n", "9..12"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Same seed, same bytes; the seed reaches the report.
    #[test]
    fn deterministic(seed in any::<u64>()) {
        let p = Params { seed, ..params(2, 3) };
        let a = render(&Report::new("models", &p, run_suite("models", &p).unwrap()), Format::Json).unwrap();
        let b = render(&Report::new("models", &p, run_suite("models", &p).unwrap()), Format::Json).unwrap();
        prop_assert_eq!(&a, &b);
        let r: Report = serde_json::from_str(&a).unwrap();
        prop_assert_eq!(r.seed, seed);
    }
}
