mod support;

use support::{run_suite, PROPERTIES};

#[test]
fn randomized_identities_hold() {
    for (name, cases, failures) in run_suite(0x5eed_0a1f) {
        assert!(
            failures.is_empty(),
            "{name}: {} of {cases} failed, first: {}",
            failures.len(),
            failures[0]
        );
    }
}

#[test]
fn suite_size() {
    let total: usize = PROPERTIES.iter().map(|p| p.2).sum();
    assert!(total >= 1000);
}
