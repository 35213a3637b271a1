//! Acceptance gate: every criterion of the reproduction suite must pass.
//! One line per criterion so a failing build pinpoints itself.

use qample::cohomology::Engine;
use qample::suite::run_all;

#[test]
fn acceptance_suite() {
    let engine = Engine::new();
    let results = run_all(&engine);
    let mut all = true;
    for r in &results {
        println!(
            "criterion {:2}: {} - {} ({})",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.details
        );
        all &= r.passed;
    }
    assert!(all, "at least one acceptance criterion failed; see the lines above");
}
