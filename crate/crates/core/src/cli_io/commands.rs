use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::Report;
use super::scenario::{parse_scenario_file, Scenario};
use crate::buildings::{
    enumerate_buildings_with_limits, lemma_suite, verify_propositions_with_limits, BuildingError,
    BuildingSkeleton, EnumerationLimits,
};
use crate::chain_complex::{build_complex, gluing_count};
use crate::orbit_index::{
    format_rational, gcd, is_half_integral, parse_rational, CurveData, OrbitRef, Rational,
    RotationData,
};
use crate::writhe_bounds::{
    certificate_sweep_over, conjecture_improved_equality, no_bad_break_certificate, wind_bound,
    writhe_bound, EndSide,
};

/// Environment variable capping enumeration wall-clock time, in seconds.
pub const ENUM_TIMEOUT_ENV: &str = "CYLHOM_ENUM_TIMEOUT_SECS";

#[derive(Parser)]
#[command(
    name = "cylhom",
    about = "Index, building, and chain complex checks for cylindrical contact homology"
)]
struct Cli {
    /// Also write the report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Positive,
    Negative,
}

#[derive(Subcommand)]
enum Cmd {
    /// CZ index, type, goodness and grading of a cover.
    Cz {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        mult: u32,
        /// Validity bound of the orbit (defaults to the multiplicity).
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Fredholm index of a curve with ends given as THETA or THETA@M.
    Index {
        #[arg(long = "pos", required = true)]
        positive: Vec<String>,
        #[arg(long = "neg")]
        negative: Vec<String>,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c_tau: i64,
    },
    /// List the buildings admitted by a scenario.
    Enumerate {
        #[arg(long)]
        scenario: PathBuf,
        /// Also run the index inequalities over the component catalog.
        #[arg(long)]
        lemmas: bool,
    },
    /// Classify low-index buildings of a scenario.
    VerifyProps {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Certificate for one (theta, d), or a sweep with --grid.
    NoBadBreak {
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        grid: bool,
        #[arg(long, default_value_t = 50)]
        max_q: i64,
        #[arg(long, default_value_t = 200)]
        max_d: u32,
        #[arg(long, default_value_t = 10)]
        theta_max: i64,
        /// Only changes the order in which the grid is visited.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Winding and writhe bounds at an end.
    Bounds {
        #[arg(long)]
        theta: String,
        #[arg(long)]
        mult: u32,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long)]
        improved: bool,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Number and degree of glued ends through an intermediate orbit.
    Gluing {
        d_plus: u64,
        d_minus: u64,
        d_gamma0: u64,
    },
    /// Build the chain complex of a scenario, check d^2 = 0, and print homology.
    Complex {
        #[arg(long)]
        scenario: PathBuf,
    },
}

/// Exit code, report text (stdout), and diagnostics (stderr).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub report: String,
    pub diagnostics: String,
}

impl CommandOutcome {
    fn usage(message: String) -> Self {
        CommandOutcome {
            exit_code: 2,
            report: String::new(),
            diagnostics: message,
        }
    }
}

struct Done {
    report: Report,
    passed: bool,
}

/// Runs one command line. `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandOutcome {
                exit_code: code,
                report: if code == 0 {
                    e.to_string()
                } else {
                    String::new()
                },
                diagnostics: if code == 0 {
                    String::new()
                } else {
                    e.to_string()
                },
            };
        }
    };
    let result = match cli.cmd {
        Cmd::Cz { theta, mult, bound } => cmd_cz(&theta, mult, bound),
        Cmd::Index {
            positive,
            negative,
            genus,
            c_tau,
        } => cmd_index(&positive, &negative, genus, c_tau),
        Cmd::Enumerate { scenario, lemmas } => cmd_enumerate(&scenario, lemmas),
        Cmd::VerifyProps { scenario } => cmd_verify_props(&scenario),
        Cmd::NoBadBreak {
            theta,
            d,
            grid,
            max_q,
            max_d,
            theta_max,
            seed,
        } => cmd_no_bad_break(theta.as_deref(), d, grid, max_q, max_d, theta_max, seed),
        Cmd::Bounds {
            theta,
            mult,
            side,
            improved,
            bound,
        } => cmd_bounds(&theta, mult, side, improved, bound),
        Cmd::Gluing {
            d_plus,
            d_minus,
            d_gamma0,
        } => cmd_gluing(d_plus, d_minus, d_gamma0),
        Cmd::Complex { scenario } => cmd_complex(&scenario),
    };
    match result {
        Ok(mut done) => {
            done.report
                .section("verdict")
                .kv("status", if done.passed { "pass" } else { "fail" });
            let text = done.report.render();
            if let Some(path) = cli.output {
                if let Err(e) = std::fs::write(&path, &text) {
                    return CommandOutcome::usage(format!("{}: {e}", path.display()));
                }
            }
            CommandOutcome {
                exit_code: if done.passed { 0 } else { 1 },
                report: text,
                diagnostics: String::new(),
            }
        }
        Err(message) => CommandOutcome::usage(message),
    }
}

fn rational(text: &str, what: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| format!("{what}: {e}"))
}

fn single_orbit(theta: Rational, mult: u32, bound: Option<u32>) -> Result<OrbitRef, String> {
    let data = RotationData::contractible("gamma", theta, bound.unwrap_or(mult).max(1))
        .map_err(|e| e.to_string())?;
    OrbitRef::new(Arc::new(data), mult).map_err(|e| e.to_string())
}

fn cmd_cz(theta: &str, mult: u32, bound: Option<u32>) -> Result<Done, String> {
    let t = rational(theta, "--theta")?;
    let o = single_orbit(t, mult, bound)?;
    let mut r = Report::new("cz");
    r.section("input")
        .kv("theta", format_rational(t))
        .kv("multiplicity", mult);
    let s = r.section("result");
    s.kv("cz", o.cz_index().map_err(|e| e.to_string())?)
        .kv("type", o.orbit_type().map_err(|e| e.to_string())?)
        .kv("good", o.is_good())
        .kv("grading", o.grading().map_err(|e| e.to_string())?);
    Ok(Done {
        report: r,
        passed: true,
    })
}

fn cmd_index(
    positive: &[String],
    negative: &[String],
    genus: u32,
    c_tau: i64,
) -> Result<Done, String> {
    let parse_end = |s: &str| -> Result<(Rational, u32), String> {
        let (t, m) = s.split_once('@').unwrap_or((s, "1"));
        let m: u32 = m
            .parse()
            .map_err(|_| format!("bad multiplicity in end {s:?}"))?;
        Ok((rational(t, "end")?, m))
    };
    let pos = positive
        .iter()
        .map(|s| parse_end(s))
        .collect::<Result<Vec<_>, _>>()?;
    let neg = negative
        .iter()
        .map(|s| parse_end(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut top: BTreeMap<Rational, u32> = BTreeMap::new();
    for &(t, m) in pos.iter().chain(&neg) {
        let e = top.entry(t).or_insert(m);
        *e = (*e).max(m);
    }
    let bases: BTreeMap<Rational, Arc<RotationData>> = top
        .iter()
        .map(|(&t, &m)| {
            RotationData::contractible(format_rational(t), t, m)
                .map(|d| (t, Arc::new(d)))
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let refs = |ends: &[(Rational, u32)]| -> Result<Vec<OrbitRef>, String> {
        ends.iter()
            .map(|&(t, m)| OrbitRef::new(Arc::clone(&bases[&t]), m).map_err(|e| e.to_string()))
            .collect()
    };
    let curve = CurveData::new(genus, refs(&pos)?, refs(&neg)?)
        .map_err(|e| e.to_string())?
        .with_c_tau(c_tau);
    let mut r = Report::new("index");
    let join = |v: &[OrbitRef]| v.iter().map(|o| o.label()).collect::<Vec<_>>().join(", ");
    r.section("input")
        .kv("genus", genus)
        .kv("c_tau", c_tau)
        .kv("positive", join(&curve.positive_ends))
        .kv("negative", join(&curve.negative_ends));
    r.section("result")
        .kv("euler_characteristic", curve.euler_characteristic())
        .kv(
            "fredholm_index",
            curve.fredholm_index().map_err(|e| e.to_string())?,
        );
    Ok(Done {
        report: r,
        passed: true,
    })
}

fn load(path: &Path) -> Result<Scenario, String> {
    parse_scenario_file(path).map_err(|e| e.to_string())
}

fn limits() -> Result<EnumerationLimits, String> {
    let mut l = EnumerationLimits::default();
    if let Ok(v) = std::env::var(ENUM_TIMEOUT_ENV) {
        let secs: u64 = v
            .parse()
            .map_err(|_| format!("{ENUM_TIMEOUT_ENV} must be a whole number of seconds"))?;
        l.time_limit = Some(Duration::from_secs(secs));
    }
    Ok(l)
}

fn echo_scenario(r: &mut Report, s: &Scenario) {
    let sec = r.section("scenario");
    for o in &s.orbits {
        sec.line(format!(
            "orbit {}: theta {}, bound {}, class {}, {}",
            o.name(),
            format_rational(o.theta()),
            o.validity_bound(),
            o.homotopy_class(),
            if o.is_contractible() {
                "contractible"
            } else {
                "non-contractible"
            }
        ));
    }
    sec.kv(
        "profile",
        format!(
            "generic_J={} dynamically_convex={} condition_star={}",
            s.profile.generic_j, s.profile.dynamically_convex, s.profile.condition_star
        ),
    );
    let b = &s.bounds;
    sec.kv(
        "bounds",
        format!(
            "max_levels={} max_total_multiplicity={} max_index={} max_components_per_level={} max_negative_ends={}",
            b.max_levels, b.max_total_multiplicity, b.max_index, b.max_components_per_level, b.max_negative_ends
        ),
    );
}

fn building_line(b: &BuildingSkeleton) -> String {
    let ind = b
        .total_index()
        .map(|i| i.to_string())
        .unwrap_or_else(|e| format!("error({e})"));
    format!(
        "ind={ind} levels={} neg={} {}",
        b.num_levels(),
        b.negative_ends().len(),
        b.canonical()
    )
}

fn cmd_enumerate(path: &Path, lemmas: bool) -> Result<Done, String> {
    let s = load(path)?;
    let mut r = Report::new("enumerate");
    echo_scenario(&mut r, &s);
    let (list, complete) =
        match enumerate_buildings_with_limits(&s.orbits, &s.profile, &s.bounds, &limits()?) {
            Ok(v) => (v, true),
            Err(BuildingError::EnumerationLimit { reason, partial }) => {
                r.section("limit").kv("reason", reason).kv("partial", true);
                (partial, false)
            }
            Err(e) => return Err(e.to_string()),
        };
    let sec = r.section("buildings");
    sec.kv("count", list.len());
    for b in &list {
        sec.line(building_line(b));
    }
    let mut passed = complete;
    if lemmas {
        let rep = lemma_suite(&s.orbits, &s.profile, &s.bounds).map_err(|e| e.to_string())?;
        let sec = r.section("lemmas");
        sec.kv("components", rep.components_checked);
        for (name, n) in &rep.checks_run {
            let bad = rep.violations.iter().filter(|v| v.lemma == *name).count();
            sec.line(format!("{name}: checked {n}, violations {bad}"));
        }
        for v in &rep.violations {
            sec.line(format!(
                "violation {}: {} ({})",
                v.lemma, v.component, v.detail
            ));
        }
        passed &= rep.passed();
    }
    Ok(Done { report: r, passed })
}

fn cmd_verify_props(path: &Path) -> Result<Done, String> {
    let s = load(path)?;
    let mut r = Report::new("verify-props");
    echo_scenario(&mut r, &s);
    let rep = match verify_propositions_with_limits(&s.orbits, &s.profile, &s.bounds, &limits()?) {
        Ok(rep) => rep,
        Err(BuildingError::EnumerationLimit { reason, partial }) => {
            r.section("limit")
                .kv("reason", reason)
                .kv("partial_buildings", partial.len());
            return Ok(Done {
                report: r,
                passed: false,
            });
        }
        Err(e) => return Err(e.to_string()),
    };
    if !rep.excluded.is_empty() {
        let sec = r.section("excluded");
        for (what, why) in &rep.excluded {
            sec.line(format!("{what}: {why}"));
        }
    }
    let sec = r.section("cases");
    for (case, n) in rep.case_counts() {
        sec.kv(&case, n);
    }
    sec.kv("pants_over_simple_plane", rep.has_pants_over_simple_plane());
    let sec = r.section("buildings");
    for e in &rep.entries {
        sec.line(format!("{} | {}", building_line(&e.building), e.case));
    }
    let bad = rep.counterexamples().count();
    r.section("summary")
        .kv("buildings", rep.entries.len())
        .kv("counterexamples", bad);
    Ok(Done {
        report: r,
        passed: bad == 0,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_no_bad_break(
    theta: Option<&str>,
    d: Option<u32>,
    grid: bool,
    max_q: i64,
    max_d: u32,
    theta_max: i64,
    seed: u64,
) -> Result<Done, String> {
    let mut r = Report::new("no-bad-break");
    if !grid {
        let (Some(theta), Some(d)) = (theta, d) else {
            return Err("no-bad-break needs --theta and --d, or --grid".into());
        };
        let t = rational(theta, "--theta")?;
        let c = no_bad_break_certificate(t, d).map_err(|e| e.to_string())?;
        let sec = r.section("certificate");
        for line in c.to_text().lines() {
            sec.line(line);
        }
        let passed = c.verdict != crate::writhe_bounds::Verdict::Counterexample
            && c.witness_holds
            && c.combined == c.combined_closed_form;
        return Ok(Done { report: r, passed });
    }
    if max_q < 1 || theta_max < 1 || max_d < 1 {
        return Err("grid bounds must be positive".into());
    }
    let mut thetas: Vec<Rational> = (1..=max_q)
        .flat_map(|q| (1..q * theta_max).map(move |p| (p, q)))
        .filter(|&(p, q)| gcd(p, q) == 1)
        .map(|(p, q)| Rational::new(p, q))
        .filter(|t| !is_half_integral(*t))
        .collect();
    thetas.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut sweep = certificate_sweep_over(&thetas, max_d);
    sweep.exceptions.sort();
    r.section("input")
        .kv("max_q", max_q)
        .kv("theta_max", theta_max)
        .kv("max_d", max_d)
        .kv("seed", seed);
    let sec = r.section("sweep");
    sec.kv("thetas", thetas.len())
        .kv("certificates", sweep.checked)
        .kv("breaking_excluded", sweep.breaking_excluded)
        .kv("hypothesis_not_met", sweep.hypothesis_not_met)
        .kv("exceptions", sweep.exceptions.len());
    for (t, d) in &sweep.exceptions {
        sec.line(format!("exception: theta {} d {d}", format_rational(*t)));
    }
    Ok(Done {
        report: r,
        passed: sweep.exceptions.is_empty(),
    })
}

fn cmd_bounds(
    theta: &str,
    mult: u32,
    side: Side,
    improved: bool,
    bound: Option<u32>,
) -> Result<Done, String> {
    let t = rational(theta, "--theta")?;
    let o = single_orbit(t, mult, bound)?;
    let side = match side {
        Side::Positive => EndSide::PositiveEnd,
        Side::Negative => EndSide::NegativeEnd,
    };
    let mut r = Report::new("bounds");
    r.section("input")
        .kv("theta", format_rational(t))
        .kv("multiplicity", mult)
        .kv("side", format!("{side:?}"));
    let sec = r.section("result");
    sec.kv("cz", o.cz_index().map_err(|e| e.to_string())?);
    let (wind_label, writhe_label) = match side {
        EndSide::PositiveEnd => ("wind_upper_bound", "writhe_upper_bound"),
        EndSide::NegativeEnd => ("wind_lower_bound", "writhe_lower_bound"),
    };
    sec.kv(wind_label, wind_bound(&o, side).map_err(|e| e.to_string())?);
    sec.kv(
        writhe_label,
        writhe_bound(&o, side, false).map_err(|e| e.to_string())?,
    );
    if improved {
        sec.kv(
            "improved_writhe_upper_bound",
            writhe_bound(&o, side, true).map_err(|e| e.to_string())?,
        );
        if let Ok(v) = conjecture_improved_equality(&o) {
            sec.kv("conjectured_writhe", format!("{} (unproven)", v.value));
        }
    }
    Ok(Done {
        report: r,
        passed: true,
    })
}

fn cmd_gluing(d_plus: u64, d_minus: u64, d_gamma0: u64) -> Result<Done, String> {
    let g = gluing_count(d_plus, d_minus, d_gamma0).map_err(|e| e.to_string())?;
    let k = g.end_degree;
    let under = gluing_count(d_plus / k, d_minus / k, d_gamma0 / k).map_err(|e| e.to_string())?;
    let mut r = Report::new("gluing");
    r.section("input")
        .kv("d_plus", d_plus)
        .kv("d_minus", d_minus)
        .kv("d_gamma0", d_gamma0);
    r.section("result")
        .line(format!("ends={} degree={}", g.count, g.end_degree))
        .kv("underlying_ends", under.count)
        .kv(
            "weighted",
            format_rational(Rational::new(g.count as i64, k as i64)),
        );
    Ok(Done {
        report: r,
        passed: under.count == g.count,
    })
}

fn cmd_complex(path: &Path) -> Result<Done, String> {
    let s = load(path)?;
    let c = build_complex(
        &s.orbits,
        s.max_multiplicity,
        Some(&s.relative_gradings),
        &s.count_table(),
    )
    .map_err(|e| e.to_string())?;
    let mut r = Report::new("complex");
    echo_scenario(&mut r, &s);
    let sec = r.section("generators");
    sec.kv("count", c.len());
    for i in 0..c.len() {
        sec.line(format!(
            "{} class {} grading {}",
            c.generators()[i].label(),
            c.classes()[i],
            c.gradings()[i]
        ));
    }
    let sec = r.section("boundary");
    for (row, col, v) in c.boundary().nonzero_entries() {
        sec.line(format!(
            "<d {}, {}> = {v}",
            c.generators()[col].label(),
            c.generators()[row].label()
        ));
    }
    let d2 = c.verify_d_squared();
    let sec = r.section("d_squared");
    sec.kv("routes_agree", d2.routes_agree)
        .kv("boundary_squared_zero", d2.boundary_squared_zero)
        .kv("nonzero_entries", d2.nonzero.len());
    for e in &d2.nonzero {
        sec.line(format!("<dkd {}, {}> = {}", e.from, e.to, e.value));
    }
    sec.kv("kappa_commutes", c.kappa_commutation_check());
    if d2.passed() {
        let sec = r.section("homology");
        for ((class, k), n) in c.homology_ranks().map_err(|e| e.to_string())? {
            sec.line(format!("class {class} grading {k}: rank {n}"));
        }
    }
    Ok(Done {
        report: r,
        passed: d2.passed(),
    })
}
