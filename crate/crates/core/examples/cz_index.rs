//! CZ indices, orbit types and gradings of the covers of one orbit.
//!
//! cargo run --example cz_index -- 3/2 6
//!
//! The multiplicity must stay below the first degenerate cover.

use std::sync::Arc;

use cylhom::orbit_index::{parse_rational, OrbitRef, RotationData};

fn main() {
    let mut args = std::env::args().skip(1);
    let theta = parse_rational(&args.next().unwrap_or_else(|| "233/144".into())).expect("theta");
    let max_m: u32 = args
        .next()
        .map(|s| s.parse().expect("max multiplicity"))
        .unwrap_or(8);

    let orbit = match RotationData::contractible("g", theta, max_m) {
        Ok(o) => Arc::new(o),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!(
        "{:>6} {:>5} {:>20} {:>5} {:>8}",
        "cover", "CZ", "type", "good", "grading"
    );
    for m in 1..=max_m {
        let r = OrbitRef::new(Arc::clone(&orbit), m).unwrap();
        println!(
            "{:>6} {:>5} {:>20} {:>5} {:>8}",
            r.label(),
            r.cz_index().unwrap(),
            r.orbit_type().unwrap().to_string(),
            r.is_good(),
            r.grading().unwrap()
        );
    }
}
