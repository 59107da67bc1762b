//! Index of a few curves, including the index-zero pair of pants over a
//! hyperbolic orbit.

use std::sync::Arc;

use cylhom::orbit_index::{CurveData, OrbitRef, Rational, RotationData};

fn cover(o: &Arc<RotationData>, m: u32) -> OrbitRef {
    OrbitRef::new(Arc::clone(o), m).unwrap()
}

fn main() {
    let h = Arc::new(RotationData::contractible("h", Rational::from_integer(2), 10).unwrap());
    let n = Arc::new(RotationData::contractible("n", Rational::new(3, 2), 10).unwrap());
    let e = Arc::new(RotationData::contractible("e", Rational::new(7, 5), 4).unwrap());

    let curves = [
        (
            "plane at e",
            CurveData::new(0, vec![cover(&e, 1)], vec![]).unwrap(),
        ),
        (
            "cylinder e^2 -> e^1",
            CurveData::new(0, vec![cover(&e, 2)], vec![cover(&e, 1)]).unwrap(),
        ),
        (
            "pants h^5 -> h^2 + h^3",
            CurveData::new(0, vec![cover(&h, 5)], vec![cover(&h, 2), cover(&h, 3)]).unwrap(),
        ),
        (
            "pants n^3 -> n^1 + n^2",
            CurveData::new(0, vec![cover(&n, 3)], vec![cover(&n, 1), cover(&n, 2)]).unwrap(),
        ),
    ];
    for (name, c) in curves {
        println!(
            "{name:<24} chi={:>2} ind={}",
            c.euler_characteristic(),
            c.fredholm_index().unwrap()
        );
    }
}
