//! Classifies every low-index building of a dynamically convex scenario.
//!
//! cargo run --release --example verify_propositions -- examples/scenarios/convex.toml

use cylhom::buildings::verify_propositions;
use cylhom::cli_io::parse_scenario_file;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/examples/scenarios/convex.toml"
        )
        .into()
    });
    let s = parse_scenario_file(&path).unwrap_or_else(|e| panic!("{e}"));
    let report = verify_propositions(&s.orbits, &s.profile, &s.bounds).unwrap();

    for (what, why) in &report.excluded {
        println!("excluded {what}: {why}");
    }
    for (case, n) in report.case_counts() {
        println!("{case:>22}: {n}");
    }
    for e in report.entries.iter().filter(|e| e.index == 2).take(12) {
        println!("  {} | {}", e.building, e.case);
    }
    println!("counterexamples: {}", report.counterexamples().count());
}
