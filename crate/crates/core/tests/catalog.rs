use hpdcalc_core::catalog::{self, run_catalog, CatalogError, CASES};
use hpdcalc_core::{CheckConfig, ExitStatus};

#[test]
fn every_case_matches_its_golden() {
    for case in CASES {
        let run = catalog::run_case(case, &CheckConfig::default()).unwrap();
        assert!(
            run.matches_golden(),
            "{}: {:?}",
            case.name,
            run.golden.notes
        );
        assert_eq!(run.report.status(), ExitStatus::Pass, "{}", case.name);
    }
}

#[test]
fn sources_carry_derivations() {
    for case in CASES {
        assert!(case.source.contains("# derivation:"), "{}", case.name);
    }
}

#[test]
fn reports_are_byte_stable() {
    let (a, _) = run_catalog(None, &CheckConfig::default()).unwrap();
    let (b, _) = run_catalog(None, &CheckConfig::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.status(), ExitStatus::Pass);
}

#[test]
fn points_line_is_beilinson_line() {
    let (report, _) = run_catalog(Some("points-line"), &CheckConfig::default()).unwrap();
    let join = report
        .sods
        .iter()
        .find(|s| s.name == "points-line: join(p, q)")
        .unwrap();
    let invs: Vec<String> = join
        .sod
        .invariants()
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(invs, ["1", "1"]);
}

#[test]
fn unknown_case() {
    assert!(matches!(
        run_catalog(Some("nope"), &CheckConfig::default()),
        Err(CatalogError::Unknown(_))
    ));
}
