//! Winding and writhe bounds at the ends of covers of an elliptic orbit,
//! and the automatic transversality test for a few curves.

use std::sync::Arc;

use cylhom::orbit_index::{OrbitRef, Rational, RotationData};
use cylhom::writhe_bounds::{
    automatic_transversality, wind_bound, writhe_bound, EndSide, TransversalityQuery,
};

fn main() {
    let g = Arc::new(RotationData::contractible("g", Rational::new(23, 10), 9).unwrap());
    println!("cover  wind+  writhe+  improved+  wind-  writhe-");
    for m in 1..=9 {
        let r = OrbitRef::new(Arc::clone(&g), m).unwrap();
        println!(
            "{:<6} {:>5} {:>8} {:>10} {:>6} {:>8}",
            r.label(),
            wind_bound(&r, EndSide::PositiveEnd).unwrap(),
            writhe_bound(&r, EndSide::PositiveEnd, false).unwrap(),
            writhe_bound(&r, EndSide::PositiveEnd, true).unwrap(),
            wind_bound(&r, EndSide::NegativeEnd).unwrap(),
            writhe_bound(&r, EndSide::NegativeEnd, false).unwrap(),
        );
    }

    for (genus, h_plus, index) in [
        (0, 1, 1),
        (0, 2, 1),
        (0, 3, 1),
        (0, 3, 2),
        (1, 1, 1),
        (1, 1, 2),
    ] {
        let q = TransversalityQuery {
            genus,
            h_plus,
            index,
            total_ends: None,
        };
        println!(
            "g={genus} h+={h_plus} ind={index}: automatic={}",
            automatic_transversality(&q)
        );
    }
}
