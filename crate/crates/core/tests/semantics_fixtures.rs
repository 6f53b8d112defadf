use std::path::Path;

use oomut::interpreter::{check_dispatch_semantics, Fixture};

#[test]
fn hand_evaluated_fixtures_match() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/semantics");
    let fixtures = Fixture::load_dir(&dir).unwrap();
    assert!(fixtures.len() >= 12);
    let report = check_dispatch_semantics(&fixtures);
    assert!(report.is_ok(), "{report}");
    assert_eq!(report.checked, fixtures.len());
}
