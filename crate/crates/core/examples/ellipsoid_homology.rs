//! Homology of the two-orbit ellipsoid stand-in: one class in each even
//! degree until the validity bounds run out.

use std::sync::Arc;

use cylhom::chain_complex::{build_complex, ModuliCountTable};
use cylhom::orbit_index::{Rational, RotationData};

fn main() {
    let g1 = Arc::new(RotationData::contractible("g1", Rational::new(233, 144), 21).unwrap());
    let g2 = Arc::new(RotationData::contractible("g2", Rational::new(233, 89), 13).unwrap());
    let c = build_complex(&[g1, g2], 21, None, &ModuliCountTable::new()).unwrap();
    assert!(c.verify_d_squared().passed());
    for ((class, k), rank) in c.homology_ranks().unwrap() {
        let gen = c
            .gradings()
            .iter()
            .position(|&g| g == k)
            .map(|i| c.generators()[i].label())
            .unwrap_or_default();
        println!("class {class} degree {k:>2}: rank {rank} ({gen})");
    }
}
