use fusionkit::catalog::run_catalog;
use fusionkit::group::DEFAULT_MAX_ORDER;

#[test]
fn catalog_passes() {
    let report = run_catalog(DEFAULT_MAX_ORDER, false, 0).unwrap();
    for r in &report.reports {
        print!("{}", r.summary());
    }
    assert!(report.passed);
}
