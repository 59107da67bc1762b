//! Checks the low-index structure of buildings with one positive end
//! against the full enumeration: index at least 2 without negative ends, at
//! least 1 with one, and an explicit list of shapes in index 2.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::orbit_index::RotationData;

use super::enumerate::{prepare, search, EnumerationBounds, EnumerationLimits};
use super::{BuildingError, BuildingSkeleton, ComponentKind, GenericityProfile};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BuildingCase {
    /// No negative ends, one level, index 2.
    Plane,
    /// No negative ends, index above 2.
    CappedAboveTwo,
    /// One negative end and a single level.
    OneLevel,
    /// Index 2, two levels, each a single cylinder.
    TwoCylinderLevels,
    /// Index 2: an index-0 branched cover of `R x gamma` with negative ends
    /// at `gamma^d1`, `gamma^d2`, above a trivial cylinder at `gamma^d1` and
    /// an index-2 plane at `gamma^d2`.
    PantsOverPlane {
        d1: u32,
        d2: u32,
    },
    /// One negative end, several levels, index above 2.
    MultiLevelAboveTwo,
    /// More negative ends than the classification speaks about.
    Unclassified,
    Counterexample(String),
}

impl BuildingCase {
    pub fn label(&self) -> String {
        match self {
            BuildingCase::Plane => "plane".into(),
            BuildingCase::CappedAboveTwo => "capped-above-2".into(),
            BuildingCase::OneLevel => "one-level".into(),
            BuildingCase::TwoCylinderLevels => "two-cylinder-levels".into(),
            BuildingCase::PantsOverPlane { .. } => "pants-over-plane".into(),
            BuildingCase::MultiLevelAboveTwo => "multi-level-above-2".into(),
            BuildingCase::Unclassified => "unclassified".into(),
            BuildingCase::Counterexample(_) => "COUNTEREXAMPLE".into(),
        }
    }
}

impl fmt::Display for BuildingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildingCase::PantsOverPlane { d1, d2 } => {
                write!(f, "pants-over-plane(d1={d1},d2={d2})")
            }
            BuildingCase::Counterexample(why) => write!(f, "COUNTEREXAMPLE: {why}"),
            other => f.write_str(&other.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropositionEntry {
    pub building: BuildingSkeleton,
    pub index: i64,
    pub case: BuildingCase,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropositionReport {
    pub entries: Vec<PropositionEntry>,
    /// Orbits or covers left out by the profile, with the reason.
    pub excluded: Vec<(String, String)>,
}

impl PropositionReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &PropositionEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.case, BuildingCase::Counterexample(_)))
    }

    pub fn case_counts(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.case.label()).or_default() += 1;
        }
        m
    }

    /// Whether a pants-over-plane building with the plane at a simple cover
    /// (`d2 = 1`) was enumerated.
    pub fn has_pants_over_simple_plane(&self) -> bool {
        self.entries
            .iter()
            .any(|e| matches!(e.case, BuildingCase::PantsOverPlane { d2: 1, .. }))
    }
}

/// Classifies one building with one positive end.
pub fn classify(b: &BuildingSkeleton) -> Result<(i64, BuildingCase), BuildingError> {
    let ind = b.total_index()?;
    let levels = b.num_levels();
    let case = match b.negative_ends().len() {
        0 if ind < 2 => {
            BuildingCase::Counterexample(format!("no negative ends but index {ind} < 2"))
        }
        0 if ind == 2 && levels > 1 => {
            BuildingCase::Counterexample(format!("no negative ends, index 2, but {levels} levels"))
        }
        0 if ind == 2 => BuildingCase::Plane,
        0 => BuildingCase::CappedAboveTwo,
        1 if ind < 1 => {
            BuildingCase::Counterexample(format!("one negative end but index {ind} < 1"))
        }
        1 if levels == 1 => BuildingCase::OneLevel,
        1 if ind == 1 => BuildingCase::Counterexample(format!("index 1 with {levels} levels")),
        1 if ind == 2 => {
            if levels == 2 && b.components().all(|c| c.is_cylinder()) {
                BuildingCase::TwoCylinderLevels
            } else if let Some((d1, d2)) = pants_over_plane(b)? {
                BuildingCase::PantsOverPlane { d1, d2 }
            } else {
                BuildingCase::Counterexample("index 2 with none of the allowed shapes".into())
            }
        }
        1 => BuildingCase::MultiLevelAboveTwo,
        _ => BuildingCase::Unclassified,
    };
    Ok((ind, case))
}

fn pants_over_plane(b: &BuildingSkeleton) -> Result<Option<(u32, u32)>, BuildingError> {
    if b.num_levels() != 2 {
        return Ok(None);
    }
    let top = &b.levels()[0].components;
    let bottom = &b.levels()[1].components;
    if top.len() != 1 || bottom.len() != 2 {
        return Ok(None);
    }
    let pants = &top[0];
    if pants.kind != ComponentKind::BranchedCoverOfTrivialCylinder
        || pants.genus != 0
        || pants.negative_ends.len() != 2
        || pants.component_index()? != 0
    {
        return Ok(None);
    }
    for m in &b.matchings()[0] {
        let below = &bottom[m.lower.component];
        let other = &bottom[1 - m.lower.component];
        let end = &pants.negative_ends[m.upper.end];
        if below.is_trivial_cylinder() && other.is_plane() && other.component_index()? == 2 {
            let other_end = &pants.negative_ends[1 - m.upper.end];
            return Ok(Some((end.multiplicity(), other_end.multiplicity())));
        }
    }
    Ok(None)
}

/// Enumerates and classifies. Requires a generic, dynamically convex
/// profile; counterexamples are reported as entries, not errors.
pub fn verify_propositions(
    orbits: &[Arc<RotationData>],
    profile: &GenericityProfile,
    bounds: &EnumerationBounds,
) -> Result<PropositionReport, BuildingError> {
    verify_propositions_with_limits(orbits, profile, bounds, &EnumerationLimits::default())
}

pub fn verify_propositions_with_limits(
    orbits: &[Arc<RotationData>],
    profile: &GenericityProfile,
    bounds: &EnumerationBounds,
    limits: &EnumerationLimits,
) -> Result<PropositionReport, BuildingError> {
    if !profile.dynamically_convex || !profile.generic_j {
        return Err(BuildingError::Precondition(
            "the classification assumes generic J and a dynamically convex form".into(),
        ));
    }
    let prepared = prepare(orbits, profile, bounds)?;
    let buildings = search(&prepared, bounds, limits)?;
    let mut entries = Vec::with_capacity(buildings.len());
    for b in buildings {
        let (index, case) = classify(&b)?;
        entries.push(PropositionEntry {
            building: b,
            index,
            case,
        });
    }
    Ok(PropositionReport {
        entries,
        excluded: prepared.universe.excluded,
    })
}
