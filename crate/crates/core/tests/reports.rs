use fibdir::bfile::{parse_bfile, read_bfile};
use fibdir::sequences::SeqId;
use fibdir::verification::{bfile_crosscheck, run_suite, Coding, Status, Suite, SuiteParams};
use fibdir::Error;

fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn small(n: u64) -> SuiteParams {
    SuiteParams {
        n_max: Some(n),
        ..SuiteParams::default()
    }
}

#[test]
fn json_shape_and_determinism() {
    let a = run_suite(Suite::Sets, &small(2000)).unwrap();
    let b = run_suite(Suite::Sets, &small(2000)).unwrap();
    let (ja, jb) = (a.to_json(false), b.to_json(false));
    assert_eq!(ja.to_string(), jb.to_string());
    assert_eq!(ja["schema_version"], 1);
    assert_eq!(ja["suite"], "sets");
    assert_eq!(ja["params"]["n_max"], "2000");
    let e = &ja["entries"][0];
    for key in ["check_id", "claim", "status", "measured", "expected", "tolerance"] {
        assert!(e[key].is_string(), "{key}");
    }
    assert!(e.get("runtime_ms").is_none());
    assert!(a.to_json(true)["entries"][0]["runtime_ms"].is_number());
    assert_eq!(ja["summary"]["fail"], 0);
}

#[test]
fn small_exact_suites_pass() {
    for suite in [Suite::Arithmetic, Suite::Sequences, Suite::Sets] {
        let r = run_suite(suite, &small(5000)).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.entries.iter().all(|e| e.status == Status::Pass));
    }
}

#[test]
fn params_are_validated() {
    let bad = [
        SuiteParams {
            n_max: Some(0),
            ..SuiteParams::default()
        },
        SuiteParams {
            precision_bits: 32,
            ..SuiteParams::default()
        },
        SuiteParams {
            tol: 0.0,
            ..SuiteParams::default()
        },
        SuiteParams {
            levels: 4,
            ..SuiteParams::default()
        },
    ];
    for p in bad {
        assert!(
            matches!(run_suite(Suite::Arithmetic, &p), Err(Error::Config(_))),
            "{p:?}"
        );
    }
    assert!(matches!("nope".parse::<Suite>(), Err(Error::Config(_))));
    assert_eq!("k_limits".parse::<Suite>().unwrap(), Suite::KLimits);
}

#[test]
fn fibonacci_word_bfile() {
    let r = bfile_crosscheck(
        fixture("fibonacci_word_b.txt"),
        SeqId::F,
        &Coding::identity(),
        10_000,
        Some(1),
    )
    .unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.entry("agreement").unwrap().status, Status::Pass);
}

#[test]
fn substitution_fixture_reports_offset() {
    let coding: Coding = "1:0,2:1,3:2".parse().unwrap();
    let r = bfile_crosscheck(fixture("morphic_123_b.txt"), SeqId::D, &coding, 10_000, None).unwrap();
    let off = r.entry("inferred_offset").unwrap();
    assert_eq!(off.status, Status::Informational);
    assert_eq!(off.measured, "offset 0 (unique full agreement)");
    // Wrong coding: reported, not asserted.
    let r = bfile_crosscheck(fixture("morphic_123_b.txt"), SeqId::D, &Coding::identity(), 500, None).unwrap();
    assert!(r.passed());
    assert!(r.entry("agreement").unwrap().measured.contains("first mismatches"));
}

#[test]
fn explicit_offset_can_fail() {
    let coding: Coding = "1:0,2:1,3:-1".parse().unwrap();
    let r = bfile_crosscheck(fixture("morphic_123_b.txt"), SeqId::R, &coding, 1000, Some(1)).unwrap();
    assert!(!r.passed());
    let m = &r.entry("agreement").unwrap().measured;
    assert_eq!(m.matches("(file").count(), 10, "{m}");
}

#[test]
fn corrupted_fixture_is_rejected() {
    assert!(matches!(
        read_bfile(fixture("corrupted_b.txt")),
        Err(Error::Parse { line: 5, .. })
    ));
    assert!(matches!(read_bfile(fixture("missing_b.txt")), Err(Error::Io(_))));
    let f = parse_bfile("1 0\n2 1\n").unwrap();
    assert_eq!(f.len(), 2);
    let r = bfile_crosscheck(
        fixture("fibonacci_word_b.txt"),
        SeqId::F,
        &Coding::identity(),
        20_000,
        None,
    );
    assert!(matches!(r, Err(Error::Domain(_))));
}
