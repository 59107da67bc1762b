//! Enumerates the genus-zero buildings with one positive end over a single
//! elliptic orbit and prints their canonical keys.

use std::sync::Arc;

use cylhom::buildings::{enumerate_buildings, EnumerationBounds, GenericityProfile};
use cylhom::orbit_index::{Rational, RotationData};

fn main() {
    let g = Arc::new(RotationData::contractible("g", Rational::new(8, 7), 6).unwrap());
    let bounds = EnumerationBounds {
        max_levels: 3,
        max_total_multiplicity: 3,
        max_index: 2,
        ..Default::default()
    };
    let buildings = enumerate_buildings(&[g], &GenericityProfile::default(), &bounds).unwrap();
    println!("{} buildings", buildings.len());
    for b in &buildings {
        println!(
            "  ind={} levels={} {}",
            b.total_index().unwrap(),
            b.num_levels(),
            b.canonical()
        );
    }
}
