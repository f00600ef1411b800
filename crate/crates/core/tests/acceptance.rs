//! End-to-end acceptance suite. Runs the full certification level — the same
//! checks the `selftest --level full` command executes — and prints one
//! pass/fail line per criterion (visible with `cargo test -- --nocapture`).

use heegner_pi::selftest::{run_level, Level};

#[test]
fn acceptance_criteria() {
    let mut failures = Vec::new();
    let all = run_level(Level::Full, |o| {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("[{status}] {:<16} ({:7.2} s)  {}", o.name, o.seconds, o.detail);
        if !o.pass {
            failures.push(format!("{}: {}", o.name, o.detail));
        }
    });
    assert!(all, "failed criteria:\n{}", failures.join("\n"));
}
