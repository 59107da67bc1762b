mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{cz_oracle, floor_div, random_scenario_text, reduce, safe_bound};
use cylhom::chain_complex::{
    build_complex, end_contribution, gluing_count, CylinderRecord, ModuliCountTable, QMatrix, Sign,
};
use cylhom::cli_io::{emit_scenario, parse_scenario_str};
use cylhom::orbit_index::{ceil_int, floor_int, OrbitRef, OrbitType, Rational, RotationData};
use cylhom::writhe_bounds::{no_bad_break_certificate, wind_bound, writhe_bound, EndSide, Verdict};

fn rotation() -> impl Strategy<Value = (i64, i64)> {
    (1..=40i64, -400..=400i64).prop_map(|(q, p)| reduce(p, q))
}

fn orbit(p: i64, q: i64, bound: u32) -> Arc<RotationData> {
    Arc::new(RotationData::contractible("g", Rational::new(p, q), bound).unwrap())
}

/// Rank by plain Gauss-Jordan over BigRational, no fraction clearing.
fn naive_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone() / pivot_row[c].clone();
                for (dst, src) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *dst -= src * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn floor_and_ceil_match_integer_division((p, q) in rotation(), m in 1..50i64) {
        let r = Rational::new(m * p, q);
        prop_assert_eq!(floor_int(r), floor_div(m * p, q));
        prop_assert_eq!(ceil_int(r), -floor_div(-m * p, q));
    }

    #[test]
    fn cz_matches_oracle_and_parity((p, q) in rotation(), seed in 0..1000u32) {
        let bound = safe_bound(p, q, 30);
        let m = 1 + seed % bound;
        let r = OrbitRef::new(orbit(p, q, bound), m).unwrap();
        let cz = r.cz_index().unwrap();
        prop_assert_eq!(cz, cz_oracle(p, q, m as i64));
        prop_assert_eq!(cz % 2 == 0, r.orbit_type().unwrap() == OrbitType::PositiveHyperbolic);
        // only even covers of negative hyperbolic orbits are bad
        prop_assert_eq!(!r.is_good(), q == 2 && m.is_multiple_of(2));
    }

    #[test]
    fn quasi_additive_and_supermultiplicative((p, q) in rotation(), a in 1..20u32, b in 1..20u32) {
        let bound = safe_bound(p, q, 40);
        prop_assume!(a + b <= bound);
        let o = orbit(p, q, bound);
        let cz = |m| OrbitRef::new(Arc::clone(&o), m).unwrap().cz_index().unwrap();
        prop_assert!((cz(a + b) - cz(a) - cz(b)).abs() <= 1);
        prop_assert!(o.cz_supermultiplicativity_check(a).unwrap());
        prop_assert!(cz(a) >= a as i64 * cz(1) - (a as i64 - 1));
    }

    #[test]
    fn writhe_bounds_follow_cz((p, q) in rotation(), m in 1..10u32) {
        let bound = safe_bound(p, q, 10);
        prop_assume!(m <= bound);
        let r = OrbitRef::new(orbit(p, q, bound), m).unwrap();
        let cz = cz_oracle(p, q, m as i64);
        let up = floor_div(cz, 2);
        let down = -floor_div(-cz, 2);
        prop_assert_eq!(wind_bound(&r, EndSide::PositiveEnd).unwrap(), up);
        prop_assert_eq!(wind_bound(&r, EndSide::NegativeEnd).unwrap(), down);
        prop_assert_eq!(writhe_bound(&r, EndSide::PositiveEnd, false).unwrap(), (m as i64 - 1) * up);
        prop_assert_eq!(writhe_bound(&r, EndSide::NegativeEnd, false).unwrap(), (m as i64 - 1) * down);
        let improved = writhe_bound(&r, EndSide::PositiveEnd, true).unwrap();
        prop_assert!(improved <= (m as i64 - 1) * up);
    }

    #[test]
    fn certificate_never_finds_both((p, q) in (3..=60i64, 1..600i64).prop_map(|(q, p)| reduce(p, q)), d in 1..300u32) {
        prop_assume!(q > 2);
        let c = no_bad_break_certificate(Rational::new(p, q), d).unwrap();
        prop_assert!(c.verdict != Verdict::Counterexample);
        prop_assert_eq!(c.combined, c.combined_closed_form);
        prop_assert!(c.witness_holds);
    }

    #[test]
    fn end_contribution_is_count_over_degree(dp in 1..30u64, dm in 1..30u64, k in 1..10u64) {
        let d0 = dp * dm * k;
        let g = gluing_count(dp, dm, d0).unwrap();
        let c = end_contribution(Sign::Plus, Sign::Minus, dp, dm, d0, true).unwrap();
        prop_assert_eq!(c, -Rational::new(g.count as i64, g.end_degree as i64));
        prop_assert!(end_contribution(Sign::Plus, Sign::Plus, dp, dm, d0, false).unwrap().is_zero());
    }

    #[test]
    fn rank_agrees_with_gauss_jordan(
        rows in 1..6usize,
        cols in 1..6usize,
        seed in prop::collection::vec((-6..=6i64, 1..=5i64), 36),
    ) {
        let mut m = QMatrix::zeros(rows, cols);
        let mut plain = vec![vec![BigRational::zero(); cols]; rows];
        for r in 0..rows {
            for c in 0..cols {
                let (n, d) = seed[r * cols + c];
                // sparse-ish, so low ranks show up
                let v = if (n + d) % 3 == 0 { BigRational::zero() } else { BigRational::new(BigInt::from(n), BigInt::from(d)) };
                m.set(r, c, v.clone());
                plain[r][c] = v;
            }
        }
        prop_assert_eq!(m.rank(), naive_rank(&plain));
    }
}

#[test]
fn scenarios_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..300 {
        let text = random_scenario_text(&mut rng);
        let s = parse_scenario_str(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        let out = emit_scenario(&s);
        let back = parse_scenario_str(&out).unwrap();
        assert_eq!(back, s);
        assert_eq!(emit_scenario(&back), out);
    }
}

// Four generators a, b, c, d in degrees 2, 1, 1, 0 of one
// non-contractible class, with a square of cylinders a -> {b, c} -> d.
fn chain_fixture(
    signs: [i64; 4],
) -> (
    Vec<Arc<RotationData>>,
    BTreeMap<String, i64>,
    ModuliCountTable,
) {
    let names = ["a", "b", "c", "d"];
    let orbits: Vec<_> = names
        .iter()
        .enumerate()
        .map(|(i, n)| {
            Arc::new(
                RotationData::new(*n, Rational::new(7 + i as i64, 5), 1, "k", false, None).unwrap(),
            )
        })
        .collect();
    let grading: BTreeMap<String, i64> = [("a^1", 2), ("b^1", 1), ("c^1", 1), ("d^1", 0)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let r = |o: &Arc<RotationData>| OrbitRef::new(Arc::clone(o), 1).unwrap();
    let mut t = ModuliCountTable::new();
    let rec = |s| CylinderRecord {
        sign: Sign::from_int(s).unwrap(),
        cover_degree: 1,
    };
    t.insert(r(&orbits[0]), r(&orbits[1]), rec(signs[0]))
        .unwrap();
    t.insert(r(&orbits[0]), r(&orbits[2]), rec(signs[1]))
        .unwrap();
    t.insert(r(&orbits[1]), r(&orbits[3]), rec(signs[2]))
        .unwrap();
    t.insert(r(&orbits[2]), r(&orbits[3]), rec(signs[3]))
        .unwrap();
    (orbits, grading, t)
}

#[test]
fn homology_is_invariant_under_reordering_and_sign_flips() {
    // a -> b -> d and a -> c -> d cancel when the sign products differ
    let (orbits, grading, table) = chain_fixture([1, 1, 1, -1]);
    let base = build_complex(&orbits, 1, Some(&grading), &table).unwrap();
    assert!(base.verify_d_squared().passed());
    let ranks = base.homology_ranks().unwrap();
    assert_eq!(ranks.values().sum::<usize>(), 0, "{ranks:?}");

    let mut reversed = orbits.clone();
    reversed.reverse();
    let again = build_complex(&reversed, 1, Some(&grading), &table).unwrap();
    assert!(again.verify_d_squared().passed());
    assert_eq!(again.homology_ranks().unwrap(), ranks);

    // flipping the orientation of generator b flips both its cylinders
    let (orbits, grading, flipped) = chain_fixture([-1, 1, -1, -1]);
    let c = build_complex(&orbits, 1, Some(&grading), &flipped).unwrap();
    assert!(c.verify_d_squared().passed());
    assert_eq!(c.homology_ranks().unwrap(), ranks);

    let (orbits, grading, broken) = chain_fixture([1, 1, 1, 1]);
    let c = build_complex(&orbits, 1, Some(&grading), &broken).unwrap();
    let r = c.verify_d_squared();
    assert!(!r.passed() && r.routes_agree);
    assert_eq!(r.nonzero.len(), 1);
    assert_eq!(r.nonzero[0].value, BigRational::one() + BigRational::one());
    assert!(c.homology_ranks().is_err());
}
