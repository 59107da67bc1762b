//! Gluing counts through an intermediate orbit, and the weighted end
//! contributions that enter the square of the differential.

use cylhom::chain_complex::{end_contribution, gluing_count, Sign};

fn main() {
    for (dp, dm, d0) in [(1, 1, 4), (2, 3, 6), (2, 2, 4), (4, 6, 12), (3, 3, 9)] {
        let g = gluing_count(dp, dm, d0).unwrap();
        let good = end_contribution(Sign::Plus, Sign::Plus, dp, dm, d0, true).unwrap();
        println!(
            "d+={dp} d-={dm} d0={d0}: ends={} degree={} contribution={good}",
            g.count, g.end_degree
        );
    }
    println!(
        "bad intermediate: {}",
        end_contribution(Sign::Plus, Sign::Minus, 1, 1, 2, false).unwrap()
    );
    println!("not divisible: {}", gluing_count(2, 3, 4).unwrap_err());
}
