mod common;

use common::soundness_runs;

#[test]
fn constraints_never_lose_the_optimum() {
    let runs = soundness_runs(24, 5);
    let mut report = String::new();
    for r in &runs {
        report.push_str(&format!(
            "{}: space {} cost {:?} ({} tested) vs {:?} ({} tested)\n",
            r.name, r.space, r.with_constraints, r.tested_with, r.without, r.tested_without
        ));
    }
    println!("{report}");
    assert!(runs.iter().all(|r| r.space <= 100_000 && r.without.is_some()), "{report}");
    let bad: Vec<_> = runs.iter().filter(|r| r.with_constraints != r.without).collect();
    assert!(bad.is_empty(), "{} discrepancies\n{report}", bad.len());
}
