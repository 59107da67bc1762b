//! Combinatorial holomorphic buildings: components that cover somewhere
//! injective curves, stacked into levels with matched ends.
//!
//! The enumerator in [`enumerate`] lists every genus-zero building with one
//! positive end inside a set of bounds, and [`propositions`] checks the
//! low-index classification on that list.

mod component;
pub mod enumerate;
pub mod propositions;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::orbit_index::{IndexError, OrbitRef};

pub use component::{ComponentKind, ComponentSkeleton, GenericityProfile};
pub use enumerate::{
    component_catalog, enumerate_buildings, enumerate_buildings_with_limits, lemma_suite,
    EnumerationBounds, EnumerationLimits, LemmaSuiteReport, LemmaViolation,
};
pub use propositions::{
    classify, verify_propositions, verify_propositions_with_limits, BuildingCase, PropositionEntry,
    PropositionReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildingError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("Riemann-Hurwitz violated: chi(u) = {chi} but d * chi(ubar) - b = {degree} * {underlying_chi} - {branch_count}")]
    RiemannHurwitz {
        chi: i64,
        degree: u32,
        underlying_chi: i64,
        branch_count: u32,
    },
    #[error("structural error: {0}")]
    Structural(String),
    #[error("expected a {expected:?} component, found {found:?}")]
    WrongKind {
        expected: ComponentKind,
        found: ComponentKind,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration limit reached after {} buildings ({reason})", partial.len())]
    EnumerationLimit {
        reason: String,
        partial: Vec<BuildingSkeleton>,
    },
}

/// One level of a building.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub components: Vec<Arc<ComponentSkeleton>>,
}

impl Level {
    pub fn new(components: Vec<Arc<ComponentSkeleton>>) -> Self {
        Level { components }
    }

    pub fn is_trivial_cylinder(&self, component: usize) -> bool {
        self.components[component].is_trivial_cylinder()
    }

    pub fn has_nontrivial_component(&self) -> bool {
        self.components.iter().any(|c| !c.is_trivial_cylinder())
    }

    pub fn negative_ends(&self) -> impl Iterator<Item = (usize, usize, &OrbitRef)> {
        self.components.iter().enumerate().flat_map(|(ci, c)| {
            c.negative_ends
                .iter()
                .enumerate()
                .map(move |(ei, e)| (ci, ei, e))
        })
    }

    pub fn positive_ends(&self) -> impl Iterator<Item = (usize, usize, &OrbitRef)> {
        self.components.iter().enumerate().flat_map(|(ci, c)| {
            c.positive_ends
                .iter()
                .enumerate()
                .map(move |(ei, e)| (ci, ei, e))
        })
    }
}

/// An end of a component inside a level: `(component index, end index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndSlot {
    pub component: usize,
    pub end: usize,
}

/// Identifies a negative end of level `i` with a positive end of level `i+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    pub upper: EndSlot,
    pub lower: EndSlot,
}

/// Levels of components plus, for each adjacent pair of levels, a bijection
/// between the negative ends above and the positive ends below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingSkeleton {
    levels: Vec<Level>,
    matchings: Vec<Vec<Matching>>,
    key: String,
}

impl BuildingSkeleton {
    pub fn new(levels: Vec<Level>, matchings: Vec<Vec<Matching>>) -> Result<Self, BuildingError> {
        if levels.is_empty() {
            return Err(BuildingError::Structural("building without levels".into()));
        }
        if matchings.len() + 1 != levels.len() {
            return Err(BuildingError::Structural(format!(
                "{} levels need {} matchings, got {}",
                levels.len(),
                levels.len() - 1,
                matchings.len()
            )));
        }
        for (i, level) in levels.iter().enumerate() {
            if level.components.is_empty() {
                return Err(BuildingError::Structural(format!("level {i} is empty")));
            }
            if levels.len() > 1 && !level.has_nontrivial_component() {
                return Err(BuildingError::Structural(format!(
                    "level {i} consists only of trivial cylinders"
                )));
            }
            for c in &level.components {
                c.validate()?;
            }
        }
        for (i, m) in matchings.iter().enumerate() {
            let upper: Vec<EndSlot> = levels[i]
                .negative_ends()
                .map(|(c, e, _)| EndSlot {
                    component: c,
                    end: e,
                })
                .collect();
            let lower: Vec<EndSlot> = levels[i + 1]
                .positive_ends()
                .map(|(c, e, _)| EndSlot {
                    component: c,
                    end: e,
                })
                .collect();
            let mut seen_up: Vec<EndSlot> = m.iter().map(|x| x.upper).collect();
            let mut seen_low: Vec<EndSlot> = m.iter().map(|x| x.lower).collect();
            seen_up.sort();
            seen_low.sort();
            if seen_up != upper || seen_low != lower {
                return Err(BuildingError::Structural(format!(
                    "matching between levels {i} and {} is not a bijection of ends",
                    i + 1
                )));
            }
            for x in m {
                let a = &levels[i].components[x.upper.component].negative_ends[x.upper.end];
                let b = &levels[i + 1].components[x.lower.component].positive_ends[x.lower.end];
                if a != b {
                    return Err(BuildingError::Structural(format!(
                        "matched ends {a} and {b} are at different orbits"
                    )));
                }
            }
        }
        let mut b = BuildingSkeleton {
            levels,
            matchings,
            key: String::new(),
        };
        b.key = b.compute_key();
        Ok(b)
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn matchings(&self) -> &[Vec<Matching>] {
        &self.matchings
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn components(&self) -> impl Iterator<Item = &Arc<ComponentSkeleton>> {
        self.levels.iter().flat_map(|l| l.components.iter())
    }

    pub fn positive_ends(&self) -> Vec<OrbitRef> {
        self.levels[0]
            .positive_ends()
            .map(|(_, _, e)| e.clone())
            .collect()
    }

    pub fn negative_ends(&self) -> Vec<OrbitRef> {
        self.levels[self.levels.len() - 1]
            .negative_ends()
            .map(|(_, _, e)| e.clone())
            .collect()
    }

    /// Sum of the Fredholm indices of all components.
    pub fn total_index(&self) -> Result<i64, BuildingError> {
        let mut total = 0;
        for c in self.components() {
            total += c.component_index()?;
        }
        Ok(total)
    }

    /// Genus of the glued surface, or `None` when it is disconnected.
    pub fn genus(&self) -> Option<u32> {
        let offsets: Vec<usize> = self
            .levels
            .iter()
            .scan(0, |acc, l| {
                let o = *acc;
                *acc += l.components.len();
                Some(o)
            })
            .collect();
        let v: usize = self.levels.iter().map(|l| l.components.len()).sum();
        let mut parent: Vec<usize> = (0..v).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nxt = p[y];
                p[y] = r;
                y = nxt;
            }
            r
        }
        let mut edges = 0usize;
        for (i, m) in self.matchings.iter().enumerate() {
            for x in m {
                let a = find(&mut parent, offsets[i] + x.upper.component);
                let b = find(&mut parent, offsets[i + 1] + x.lower.component);
                parent[a] = b;
                edges += 1;
            }
        }
        let roots = (0..v).filter(|&x| find(&mut parent, x) == x).count();
        if roots != 1 {
            return None;
        }
        let genus_sum: usize = self.components().map(|c| c.genus as usize).sum();
        Some((genus_sum + edges + 1 - v) as u32)
    }

    /// Canonical serialization; equal for buildings that differ only by the
    /// order of components within levels.
    pub fn canonical(&self) -> &str {
        &self.key
    }

    fn compute_key(&self) -> String {
        let one_positive_tree = self.levels[0].components.len() == 1
            && self.components().all(|c| c.positive_ends.len() == 1);
        if !one_positive_tree {
            return self
                .levels
                .iter()
                .map(|l| {
                    let mut cs: Vec<String> = l.components.iter().map(|c| c.canonical()).collect();
                    cs.sort();
                    cs.join(",")
                })
                .collect::<Vec<_>>()
                .join(" / ");
        }
        self.subtree_key(0, 0)
    }

    fn subtree_key(&self, level: usize, component: usize) -> String {
        let c = &self.levels[level].components[component];
        let mut children: Vec<(OrbitRef, String)> = Vec::new();
        for (ei, e) in c.negative_ends.iter().enumerate() {
            let child = if level + 1 < self.levels.len() {
                let m = self.matchings[level]
                    .iter()
                    .find(|m| m.upper == EndSlot { component, end: ei })
                    .expect("validated matching");
                self.subtree_key(level + 1, m.lower.component)
            } else {
                "-".to_string()
            };
            children.push((e.clone(), child));
        }
        children.sort();
        if children.is_empty() {
            c.canonical()
        } else {
            let inner: Vec<String> = children.into_iter().map(|(_, s)| s).collect();
            format!("{}({})", c.canonical(), inner.join(";"))
        }
    }
}

impl fmt::Display for BuildingSkeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit_index::{Rational, RotationData};

    fn orbit(n: i64, d: i64) -> Arc<RotationData> {
        Arc::new(RotationData::contractible("g", Rational::new(n, d), 4).unwrap())
    }

    fn case_three(g: &Arc<RotationData>) -> (Level, Level, Vec<Matching>) {
        let pants =
            ComponentSkeleton::branched_cover_of_trivial_cylinder(g, &[2], &[1, 1], 0).unwrap();
        let g1 = OrbitRef::new(g.clone(), 1).unwrap();
        let cyl = ComponentSkeleton::trivial_cylinder(&g1).unwrap();
        let plane = ComponentSkeleton::somewhere_injective(g1, vec![]);
        let top = Level::new(vec![Arc::new(pants)]);
        let bottom = Level::new(vec![Arc::new(cyl), Arc::new(plane)]);
        let m = vec![
            Matching {
                upper: EndSlot {
                    component: 0,
                    end: 0,
                },
                lower: EndSlot {
                    component: 0,
                    end: 0,
                },
            },
            Matching {
                upper: EndSlot {
                    component: 0,
                    end: 1,
                },
                lower: EndSlot {
                    component: 1,
                    end: 0,
                },
            },
        ];
        (top, bottom, m)
    }

    #[test]
    fn case_three_building() {
        let g = orbit(6, 5);
        let (top, bottom, m) = case_three(&g);
        let b = BuildingSkeleton::new(vec![top, bottom], vec![m]).unwrap();
        assert_eq!(b.total_index().unwrap(), 2);
        assert_eq!(b.genus(), Some(0));
        assert_eq!(b.negative_ends().len(), 1);
        assert_eq!(b.positive_ends()[0].multiplicity(), 2);
    }

    #[test]
    fn canonical_key_ignores_component_order() {
        let g = orbit(6, 5);
        let (top, bottom, m) = case_three(&g);
        let a = BuildingSkeleton::new(vec![top.clone(), bottom.clone()], vec![m.clone()]).unwrap();
        let swapped = Level::new(vec![
            bottom.components[1].clone(),
            bottom.components[0].clone(),
        ]);
        let m2 = m
            .iter()
            .map(|x| Matching {
                upper: x.upper,
                lower: EndSlot {
                    component: 1 - x.lower.component,
                    end: 0,
                },
            })
            .collect();
        let b = BuildingSkeleton::new(vec![top, swapped], vec![m2]).unwrap();
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn rejects_trivial_level_and_bad_matching() {
        let g = orbit(6, 5);
        let (top, bottom, m) = case_three(&g);
        let g1 = OrbitRef::new(g.clone(), 1).unwrap();
        let trivial = Level::new(vec![Arc::new(
            ComponentSkeleton::trivial_cylinder(&g1).unwrap(),
        )]);
        let err = BuildingSkeleton::new(
            vec![top.clone(), bottom.clone(), trivial],
            vec![m.clone(), vec![]],
        );
        assert!(err.is_err());
        let err = BuildingSkeleton::new(vec![top, bottom], vec![m[..1].to_vec()]);
        assert!(matches!(err, Err(BuildingError::Structural(_))));
    }
}
