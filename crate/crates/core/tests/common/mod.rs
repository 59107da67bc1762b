#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::PathBuf;

use rand::Rng;

/// `floor(a / b)` for `b > 0`, straight from integer division.
pub fn floor_div(a: i64, b: i64) -> i64 {
    assert!(b > 0);
    let q = a / b;
    if a % b != 0 && a < 0 {
        q - 1
    } else {
        q
    }
}

pub fn ceil_div(a: i64, b: i64) -> i64 {
    -floor_div(-a, b)
}

/// CZ of the m-fold cover of an orbit with rotation number p/q.
pub fn cz_oracle(p: i64, q: i64, m: i64) -> i64 {
    floor_div(m * p, q) + ceil_div(m * p, q)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reduced p/q with q > 0.
pub fn reduce(p: i64, q: i64) -> (i64, i64) {
    let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
    (p / g, q / g)
}

/// Largest multiplicity with no integral `m p / q` among the covers of an
/// elliptic orbit, capped at `cap`. Hyperbolic orbits are never degenerate.
pub fn safe_bound(p: i64, q: i64, cap: u32) -> u32 {
    let (_, q) = reduce(p, q);
    if q <= 2 {
        cap
    } else {
        cap.min(q as u32 - 1)
    }
}

/// A scenario written out by hand, not through the library's emitter.
pub fn random_scenario_text<R: Rng>(rng: &mut R) -> String {
    let mut s = String::new();
    let n = rng.random_range(1..=4);
    let max_mult = rng.random_range(1..=4u32);
    writeln!(s, "max_multiplicity = {max_mult}").unwrap();
    let mut covers = Vec::new();
    let mut noncontractible = Vec::new();
    for i in 0..n {
        let q = rng.random_range(1..=9i64);
        let p = rng.random_range(1..=5 * q);
        let (p, q) = reduce(p, q);
        let bound = rng.random_range(1..=safe_bound(p, q, 5));
        let contractible = rng.random_bool(0.6);
        writeln!(s, "\n[[orbits]]\nname = \"o{i}\"").unwrap();
        if q == 1 {
            writeln!(s, "theta = \"{p}\"").unwrap();
        } else {
            writeln!(s, "theta = \"{p}/{q}\"").unwrap();
        }
        writeln!(s, "validity_bound = {bound}").unwrap();
        if !contractible {
            writeln!(
                s,
                "homotopy_class = \"c{}\"\ncontractible = false",
                rng.random_range(0..2)
            )
            .unwrap();
        }
        if rng.random_bool(0.3) {
            writeln!(
                s,
                "action = \"{}/{}\"",
                rng.random_range(1..50),
                rng.random_range(1..7)
            )
            .unwrap();
        }
        for m in 1..=bound {
            covers.push(format!("o{i}^{m}"));
            if !contractible {
                noncontractible.push(format!("o{i}^{m}"));
            }
        }
    }
    if rng.random_bool(0.5) {
        writeln!(
            s,
            "\n[profile]\ngeneric_J = {}\ndynamically_convex = {}\ncondition_star = {}",
            rng.random_bool(0.8),
            rng.random_bool(0.5),
            rng.random_bool(0.5)
        )
        .unwrap();
    }
    // always small, so the scenarios can also be enumerated
    writeln!(
        s,
        "\n[bounds]\nmax_levels = {}\nmax_total_multiplicity = {}\nmax_index = {}\nmax_components_per_level = 2",
        rng.random_range(1..=2),
        rng.random_range(1..=2),
        rng.random_range(0..=2)
    )
    .unwrap();
    if !noncontractible.is_empty() {
        s.push_str("\n[relative_gradings]\n");
        for c in &noncontractible {
            writeln!(s, "\"{c}\" = {}", rng.random_range(-3..=3)).unwrap();
        }
    }
    for _ in 0..rng.random_range(0..=3) {
        let a = &covers[rng.random_range(0..covers.len())];
        let b = &covers[rng.random_range(0..covers.len())];
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        writeln!(
            s,
            "\n[[counts]]\nalpha = \"{a}\"\nbeta = \"{b}\"\nsign = {sign}\ncover_degree = 1"
        )
        .unwrap();
    }
    s
}

/// A fresh path under the system temp directory.
pub fn temp_file(tag: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cylhom-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(tag);
    std::fs::write(&path, contents).unwrap();
    path
}
