//! Scenario files: orbit data, profile, bounds, and cylinder counts in TOML.
//!
//! ```toml
//! max_multiplicity = 4
//!
//! [[orbits]]
//! name = "a"
//! theta = "6/5"
//! validity_bound = 4
//! homotopy_class = "0"
//! contractible = true
//!
//! [profile]
//! generic_J = true
//! dynamically_convex = true
//! condition_star = true
//!
//! [bounds]
//! max_levels = 3
//!
//! [[counts]]
//! alpha = "a^2"
//! beta = "h^1"
//! sign = 1
//! cover_degree = 1
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::Spanned;

use crate::buildings::{EnumerationBounds, GenericityProfile};
use crate::chain_complex::{CylinderRecord, ModuliCountTable, Sign};
use crate::orbit_index::{format_rational, parse_rational, OrbitRef, RotationData};

const DEFAULT_MAX_MULTIPLICITY: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    fn of(source: &str, span: Range<usize>) -> Self {
        let start = span.start.min(source.len());
        let before = &source[..start];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rsplit('\n')
            .next()
            .map(|s| s.chars().count())
            .unwrap_or(0)
            + 1;
        Location { line, column }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{location}: parse error: {message}")]
    Parse { location: Location, message: String },
    #[error("{location}: invalid {field}: {message}")]
    Validation {
        location: Location,
        field: String,
        message: String,
    },
}

/// A reference to a count table entry, kept with the scenario so it can be
/// emitted again.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountEntry {
    pub alpha: OrbitRef,
    pub beta: OrbitRef,
    pub record: CylinderRecord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub orbits: Vec<Arc<RotationData>>,
    pub profile: GenericityProfile,
    pub bounds: EnumerationBounds,
    pub max_multiplicity: u32,
    pub relative_gradings: BTreeMap<String, i64>,
    pub counts: Vec<CountEntry>,
}

impl Scenario {
    pub fn count_table(&self) -> ModuliCountTable {
        let mut t = ModuliCountTable::new();
        for c in &self.counts {
            t.insert(c.alpha.clone(), c.beta.clone(), c.record)
                .expect("cover degrees are validated on parse");
        }
        t
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    orbits: Vec<RawOrbit>,
    profile: Option<RawProfile>,
    bounds: Option<RawBounds>,
    max_multiplicity: Option<Spanned<u32>>,
    #[serde(default)]
    relative_gradings: BTreeMap<String, i64>,
    #[serde(default)]
    counts: Vec<RawCount>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    name: Spanned<String>,
    theta: Spanned<String>,
    validity_bound: Spanned<u32>,
    homotopy_class: Option<String>,
    contractible: Option<bool>,
    action: Option<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    #[serde(rename = "generic_J")]
    generic_j: Option<bool>,
    dynamically_convex: Option<bool>,
    condition_star: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    max_levels: Option<Spanned<usize>>,
    max_total_multiplicity: Option<Spanned<u32>>,
    max_index: Option<i64>,
    max_components_per_level: Option<Spanned<usize>>,
    max_negative_ends: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCount {
    alpha: Spanned<String>,
    beta: Spanned<String>,
    sign: Spanned<i64>,
    cover_degree: Spanned<u32>,
}

struct Ctx<'a> {
    source: &'a str,
}

impl Ctx<'_> {
    fn invalid(
        &self,
        span: Range<usize>,
        field: &str,
        message: impl Into<String>,
    ) -> ScenarioError {
        ScenarioError::Validation {
            location: Location::of(self.source, span),
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn positive<T: Copy + PartialEq + Default>(
        &self,
        v: &Spanned<T>,
        field: &str,
    ) -> Result<T, ScenarioError> {
        if *v.get_ref() == T::default() {
            return Err(self.invalid(v.span(), field, "must be positive"));
        }
        Ok(*v.get_ref())
    }
}

pub fn parse_scenario_file(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario_str(&text)
}

pub fn parse_scenario_str(source: &str) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario = toml::from_str(source).map_err(|e| ScenarioError::Parse {
        location: Location::of(source, e.span().unwrap_or(0..0)),
        message: e.message().trim().to_string(),
    })?;
    let ctx = Ctx { source };

    let mut orbits = Vec::new();
    let mut by_name: HashMap<String, Arc<RotationData>> = HashMap::new();
    for o in &raw.orbits {
        let name = o.name.get_ref().clone();
        if name.is_empty() || name.contains('^') {
            return Err(ctx.invalid(
                o.name.span(),
                "name",
                "must be non-empty and must not contain '^'",
            ));
        }
        if by_name.contains_key(&name) {
            return Err(ctx.invalid(o.name.span(), "name", format!("duplicate orbit {name}")));
        }
        let theta = parse_rational(o.theta.get_ref())
            .map_err(|m| ctx.invalid(o.theta.span(), "theta", m))?;
        let action = match &o.action {
            Some(a) => {
                Some(parse_rational(a.get_ref()).map_err(|m| ctx.invalid(a.span(), "action", m))?)
            }
            None => None,
        };
        let bound = ctx.positive(&o.validity_bound, "validity_bound")?;
        let contractible = o.contractible.unwrap_or(true);
        let class = o.homotopy_class.clone().unwrap_or_else(|| "0".to_string());
        let data = RotationData::new(name.clone(), theta, bound, class, contractible, action)
            .map_err(|e| ctx.invalid(o.theta.span(), "orbit", e.to_string()))?;
        let data = Arc::new(data);
        by_name.insert(name, Arc::clone(&data));
        orbits.push(data);
    }

    let profile = match &raw.profile {
        Some(p) => GenericityProfile {
            generic_j: p.generic_j.unwrap_or(true),
            dynamically_convex: p.dynamically_convex.unwrap_or(true),
            condition_star: p.condition_star.unwrap_or(true),
        },
        None => GenericityProfile::default(),
    };

    let mut bounds = EnumerationBounds::default();
    if let Some(b) = &raw.bounds {
        if let Some(v) = &b.max_levels {
            bounds.max_levels = ctx.positive(v, "max_levels")?;
        }
        if let Some(v) = &b.max_total_multiplicity {
            bounds.max_total_multiplicity = ctx.positive(v, "max_total_multiplicity")?;
        }
        if let Some(v) = b.max_index {
            bounds.max_index = v;
        }
        if let Some(v) = &b.max_components_per_level {
            bounds.max_components_per_level = ctx.positive(v, "max_components_per_level")?;
        }
        if let Some(v) = b.max_negative_ends {
            bounds.max_negative_ends = v;
        }
    }

    let max_multiplicity = match &raw.max_multiplicity {
        Some(v) => ctx.positive(v, "max_multiplicity")?,
        None => DEFAULT_MAX_MULTIPLICITY,
    };

    let resolve = |s: &Spanned<String>, field: &str| -> Result<OrbitRef, ScenarioError> {
        let text = s.get_ref();
        let (name, m) = text.split_once('^').ok_or_else(|| {
            ctx.invalid(s.span(), field, format!("expected name^m, got {text:?}"))
        })?;
        let m: u32 = m
            .parse()
            .map_err(|_| ctx.invalid(s.span(), field, format!("bad multiplicity in {text:?}")))?;
        let base = by_name
            .get(name)
            .ok_or_else(|| ctx.invalid(s.span(), field, format!("undeclared orbit {name}")))?;
        let r = OrbitRef::new(Arc::clone(base), m)
            .map_err(|e| ctx.invalid(s.span(), field, e.to_string()))?;
        if !r.within_bound() {
            return Err(ctx.invalid(
                s.span(),
                field,
                format!(
                    "{text} exceeds the validity bound {}",
                    base.validity_bound()
                ),
            ));
        }
        Ok(r)
    };

    let mut counts = Vec::new();
    for c in &raw.counts {
        let alpha = resolve(&c.alpha, "alpha")?;
        let beta = resolve(&c.beta, "beta")?;
        let sign = Sign::from_int(*c.sign.get_ref())
            .map_err(|e| ctx.invalid(c.sign.span(), "sign", e.to_string()))?;
        let cover_degree = ctx.positive(&c.cover_degree, "cover_degree")?;
        counts.push(CountEntry {
            alpha,
            beta,
            record: CylinderRecord { sign, cover_degree },
        });
    }

    Ok(Scenario {
        orbits,
        profile,
        bounds,
        max_multiplicity,
        relative_gradings: raw.relative_gradings,
        counts,
    })
}

#[derive(Serialize)]
struct EmitScenario {
    max_multiplicity: u32,
    orbits: Vec<EmitOrbit>,
    profile: EmitProfile,
    bounds: EmitBounds,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    relative_gradings: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    counts: Vec<EmitCount>,
}

#[derive(Serialize)]
struct EmitOrbit {
    name: String,
    theta: String,
    validity_bound: u32,
    homotopy_class: String,
    contractible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    action: Option<String>,
}

#[derive(Serialize)]
struct EmitProfile {
    #[serde(rename = "generic_J")]
    generic_j: bool,
    dynamically_convex: bool,
    condition_star: bool,
}

#[derive(Serialize)]
struct EmitBounds {
    max_levels: usize,
    max_total_multiplicity: u32,
    max_index: i64,
    max_components_per_level: usize,
    max_negative_ends: usize,
}

#[derive(Serialize)]
struct EmitCount {
    alpha: String,
    beta: String,
    sign: i64,
    cover_degree: u32,
}

/// TOML text that parses back to an equal scenario.
pub fn emit_scenario(s: &Scenario) -> String {
    let e = EmitScenario {
        max_multiplicity: s.max_multiplicity,
        orbits: s
            .orbits
            .iter()
            .map(|o| EmitOrbit {
                name: o.name().to_string(),
                theta: format_rational(o.theta()),
                validity_bound: o.validity_bound(),
                homotopy_class: o.homotopy_class().to_string(),
                contractible: o.is_contractible(),
                action: o.action().map(format_rational),
            })
            .collect(),
        profile: EmitProfile {
            generic_j: s.profile.generic_j,
            dynamically_convex: s.profile.dynamically_convex,
            condition_star: s.profile.condition_star,
        },
        bounds: EmitBounds {
            max_levels: s.bounds.max_levels,
            max_total_multiplicity: s.bounds.max_total_multiplicity,
            max_index: s.bounds.max_index,
            max_components_per_level: s.bounds.max_components_per_level,
            max_negative_ends: s.bounds.max_negative_ends,
        },
        relative_gradings: s.relative_gradings.clone(),
        counts: s
            .counts
            .iter()
            .map(|c| EmitCount {
                alpha: c.alpha.label(),
                beta: c.beta.label(),
                sign: c.record.sign.value(),
                cover_degree: c.record.cover_degree,
            })
            .collect(),
    };
    toml::to_string(&e).expect("scenario serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[[orbits]]
name = "a"
theta = "6/5"
validity_bound = 4
"#;

    #[test]
    fn minimal_file() {
        let s = parse_scenario_str(MINIMAL).unwrap();
        assert_eq!(s.orbits.len(), 1);
        assert!(s.orbits[0].is_contractible());
        assert_eq!(s.bounds, EnumerationBounds::default());
        assert_eq!(s.profile, GenericityProfile::default());
    }

    #[test]
    fn zero_denominator_is_located() {
        let text = MINIMAL.replace("6/5", "5/0");
        match parse_scenario_str(&text) {
            Err(ScenarioError::Validation {
                location, field, ..
            }) => {
                assert_eq!(field, "theta");
                assert_eq!(location, Location { line: 4, column: 9 });
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_is_located() {
        match parse_scenario_str("[[orbits]]\nname = \n") {
            Err(ScenarioError::Parse { location, .. }) => assert_eq!(location.line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn undeclared_orbit_in_counts() {
        let text = format!(
            "{MINIMAL}\n[[counts]]\nalpha = \"a^1\"\nbeta = \"b^1\"\nsign = 1\ncover_degree = 1\n"
        );
        match parse_scenario_str(&text) {
            Err(ScenarioError::Validation { field, message, .. }) => {
                assert_eq!(field, "beta");
                assert!(message.contains("undeclared"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicates_and_unknown_fields() {
        let dup = format!("{MINIMAL}{MINIMAL}");
        assert!(matches!(
            parse_scenario_str(&dup),
            Err(ScenarioError::Validation { .. })
        ));
        let extra = format!("{MINIMAL}colour = \"red\"\n");
        assert!(matches!(
            parse_scenario_str(&extra),
            Err(ScenarioError::Parse { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let text = r#"
max_multiplicity = 3
[[orbits]]
name = "a"
theta = "10/7"
validity_bound = 6
action = "3/2"
[[orbits]]
name = "h"
theta = "1"
validity_bound = 6
homotopy_class = "c"
contractible = false
[profile]
generic_J = true
dynamically_convex = false
condition_star = false
[relative_gradings]
"h^1" = 7
[[counts]]
alpha = "a^1"
beta = "a^1"
sign = -1
cover_degree = 1
"#;
        let s = parse_scenario_str(text).unwrap();
        let again = parse_scenario_str(&emit_scenario(&s)).unwrap();
        assert_eq!(s, again);
        assert_eq!(emit_scenario(&s), emit_scenario(&again));
    }
}
