//! One certificate in full, then a small sweep.

use cylhom::orbit_index::Rational;
use cylhom::writhe_bounds::{certificate_sweep, no_bad_break_certificate};

fn main() {
    let c = no_bad_break_certificate(Rational::new(3, 10), 2).unwrap();
    print!("{}", c.to_text());

    let s = certificate_sweep(12, 4, 30);
    println!(
        "\nsweep: {} certificates, {} excluded, {} outside the hypothesis, {} exceptions",
        s.checked,
        s.breaking_excluded,
        s.hypothesis_not_met,
        s.exceptions.len()
    );
}
