//! One line per acceptance criterion; the target fails if any criterion
//! misses its check or its runtime budget.

use cagroup::acceptance::criteria;
use cagroup::limits::Limits;

#[test]
fn acceptance() {
    let limits = Limits::default();
    let mut failed = Vec::new();
    for c in criteria() {
        let result = c.run(&limits);
        println!("{}", result.line());
        if !result.passed() {
            failed.push(result.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
