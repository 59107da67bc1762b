//! The rational chain complex generated by good orbit covers, with
//! differential `∂ = δκ` assembled from a table of index-1 cylinder counts.
//!
//! Counts are inputs. The module checks every algebraic constraint a count
//! table has to satisfy, builds the matrices exactly, and verifies
//! `δκδ = 0` both by matrix multiplication and by summing the contributions
//! of the two-level buildings through each intermediate generator.

mod gluing;
mod linalg;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::orbit_index::{IndexError, OrbitRef, Rational, RotationData};

pub use gluing::{end_contribution, gluing_count, GluingCount};
pub use linalg::QMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("{orbit} is a bad orbit and cannot appear in the count table")]
    BadOrbit { orbit: String },
    #[error("{orbit} is not a generator of the complex")]
    NotAGenerator { orbit: String },
    #[error("cover degree {cover_degree} of a cylinder from {alpha} to {beta} does not divide both multiplicities")]
    Divisibility {
        alpha: String,
        beta: String,
        cover_degree: u32,
    },
    #[error("cylinder from {alpha} (grading {alpha_grading}) to {beta} (grading {beta_grading}) does not drop the grading by 1")]
    GradingMismatch {
        alpha: String,
        beta: String,
        alpha_grading: i64,
        beta_grading: i64,
    },
    #[error("{alpha} and {beta} lie in different homotopy classes")]
    ClassMismatch { alpha: String, beta: String },
    #[error("boundary entry at ({row}, {column}) is {value}, not an integer")]
    NonIntegralBoundary {
        row: String,
        column: String,
        value: String,
    },
    #[error("homology requested before d^2 = 0 was verified")]
    DSquaredUnverified,
    #[error("homology requested but d^2 = 0 failed")]
    DSquaredFailed,
    #[error(
        "gluing needs d_plus and d_minus to divide d_gamma0, got ({d_plus}, {d_minus}, {d_gamma0})"
    )]
    GluingDivisibility {
        d_plus: u64,
        d_minus: u64,
        d_gamma0: u64,
    },
    #[error("cover degree must be positive")]
    ZeroCoverDegree,
    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("duplicate orbit name {0}")]
    DuplicateOrbit(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Result<Self, ChainError> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(ChainError::InvalidSign(other)),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// One index-1 cylinder: its orientation sign and covering multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CylinderRecord {
    pub sign: Sign,
    pub cover_degree: u32,
}

/// Cylinders counted from `alpha` (positive end) to `beta` (negative end).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModuliCountTable {
    entries: BTreeMap<(OrbitRef, OrbitRef), Vec<CylinderRecord>>,
}

impl ModuliCountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        alpha: OrbitRef,
        beta: OrbitRef,
        record: CylinderRecord,
    ) -> Result<(), ChainError> {
        if record.cover_degree == 0 {
            return Err(ChainError::ZeroCoverDegree);
        }
        self.entries.entry((alpha, beta)).or_default().push(record);
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&OrbitRef, &OrbitRef, &[CylinderRecord])> {
        self.entries.iter().map(|((a, b), v)| (a, b, v.as_slice()))
    }

    pub fn records(&self, alpha: &OrbitRef, beta: &OrbitRef) -> &[CylinderRecord] {
        self.entries
            .get(&(alpha.clone(), beta.clone()))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn records_mut(
        &mut self,
        alpha: &OrbitRef,
        beta: &OrbitRef,
    ) -> Option<&mut Vec<CylinderRecord>> {
        self.entries.get_mut(&(alpha.clone(), beta.clone()))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.values().all(|v| v.is_empty())
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(|v| v.len()).sum()
    }
}

/// A nonzero entry of `δκδ`, from generator `from` to generator `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroEntry {
    pub from: String,
    pub to: String,
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredReport {
    pub nonzero: Vec<NonzeroEntry>,
    /// The matrix product agrees with the sum over two-level buildings.
    pub routes_agree: bool,
    pub boundary_squared_zero: bool,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.nonzero.is_empty() && self.routes_agree && self.boundary_squared_zero
    }
}

#[derive(Debug)]
pub struct ChainComplex {
    generators: Vec<OrbitRef>,
    classes: Vec<String>,
    gradings: Vec<i64>,
    delta: QMatrix,
    kappa: QMatrix,
    boundary: QMatrix,
    counts: ModuliCountTable,
    verified: OnceLock<bool>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn q_from(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Builds the complex on the good covers `gamma^m`, `m <= max_multiplicity`
/// (and at most each orbit's validity bound).
///
/// Contractible generators are graded by `CZ - 1`. Others take their grading
/// from `relative_gradings`, keyed by `name^m`, falling back to `CZ - 1`.
pub fn build_complex(
    orbits: &[Arc<RotationData>],
    max_multiplicity: u32,
    relative_gradings: Option<&BTreeMap<String, i64>>,
    counts: &ModuliCountTable,
) -> Result<ChainComplex, ChainError> {
    let mut names = HashSet::new();
    let mut gens: Vec<(String, i64, OrbitRef)> = Vec::new();
    for o in orbits {
        if !names.insert(o.name()) {
            return Err(ChainError::DuplicateOrbit(o.name().to_string()));
        }
        for m in 1..=max_multiplicity.min(o.validity_bound()) {
            let r = OrbitRef::new(Arc::clone(o), m)?;
            if !r.is_good() {
                continue;
            }
            let g = if r.is_contractible() {
                r.grading()?
            } else {
                match relative_gradings.and_then(|g| g.get(&r.label())) {
                    Some(&g) => g,
                    None => r.cz_index()? - 1,
                }
            };
            gens.push((r.class_label(), g, r));
        }
    }
    gens.sort_by(|a, b| (&a.0, a.1, a.2.label()).cmp(&(&b.0, b.1, b.2.label())));
    let index: HashMap<OrbitRef, usize> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| (g.2.clone(), i))
        .collect();
    let n = gens.len();

    let mut delta = QMatrix::zeros(n, n);
    for (alpha, beta, records) in counts.entries() {
        for o in [alpha, beta] {
            if !o.is_good() {
                return Err(ChainError::BadOrbit { orbit: o.label() });
            }
        }
        let ia = *index.get(alpha).ok_or_else(|| ChainError::NotAGenerator {
            orbit: alpha.label(),
        })?;
        let ib = *index.get(beta).ok_or_else(|| ChainError::NotAGenerator {
            orbit: beta.label(),
        })?;
        if gens[ia].0 != gens[ib].0 {
            return Err(ChainError::ClassMismatch {
                alpha: alpha.label(),
                beta: beta.label(),
            });
        }
        if gens[ia].1 - gens[ib].1 != 1 {
            return Err(ChainError::GradingMismatch {
                alpha: alpha.label(),
                beta: beta.label(),
                alpha_grading: gens[ia].1,
                beta_grading: gens[ib].1,
            });
        }
        for rec in records {
            let d = rec.cover_degree;
            if d == 0 || alpha.multiplicity() % d != 0 || beta.multiplicity() % d != 0 {
                return Err(ChainError::Divisibility {
                    alpha: alpha.label(),
                    beta: beta.label(),
                    cover_degree: d,
                });
            }
            delta.add_to(
                ib,
                ia,
                &BigRational::new(BigInt::from(rec.sign.value()), BigInt::from(d)),
            );
        }
    }
    let kappa = QMatrix::diagonal(
        &gens
            .iter()
            .map(|g| q(g.2.multiplicity() as i64))
            .collect::<Vec<_>>(),
    );
    let boundary = delta.mul(&kappa);
    for (r, c, v) in boundary.nonzero_entries() {
        if !v.is_integer() {
            return Err(ChainError::NonIntegralBoundary {
                row: gens[r].2.label(),
                column: gens[c].2.label(),
                value: v.to_string(),
            });
        }
    }
    Ok(ChainComplex {
        classes: gens.iter().map(|g| g.0.clone()).collect(),
        gradings: gens.iter().map(|g| g.1).collect(),
        generators: gens.into_iter().map(|g| g.2).collect(),
        delta,
        kappa,
        boundary,
        counts: counts.clone(),
        verified: OnceLock::new(),
    })
}

impl ChainComplex {
    pub fn generators(&self) -> &[OrbitRef] {
        &self.generators
    }

    pub fn gradings(&self) -> &[i64] {
        &self.gradings
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    /// `δ`, with `δ[β][α]` the weighted count of cylinders from `α` to `β`.
    pub fn delta(&self) -> &QMatrix {
        &self.delta
    }

    pub fn kappa(&self) -> &QMatrix {
        &self.kappa
    }

    pub fn boundary(&self) -> &QMatrix {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `δκδ` summed building by building: each pair of cylinders
    /// `alpha -> b -> c` contributes its end count divided by end degree.
    fn d_squared_by_gluing(&self) -> Result<QMatrix, ChainError> {
        let n = self.len();
        let mut out = QMatrix::zeros(n, n);
        let index: HashMap<&OrbitRef, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let mut by_source: BTreeMap<&OrbitRef, Vec<(&OrbitRef, &[CylinderRecord])>> =
            BTreeMap::new();
        for (a, b, recs) in self.counts.entries() {
            by_source.entry(a).or_default().push((b, recs));
        }
        for (a, b, upper) in self.counts.entries() {
            for (c, lower) in by_source.get(b).map(|v| v.as_slice()).unwrap_or(&[]) {
                for up in upper {
                    for low in *lower {
                        let g = end_contribution(
                            up.sign,
                            low.sign,
                            up.cover_degree as u64,
                            low.cover_degree as u64,
                            b.multiplicity() as u64,
                            b.is_good(),
                        )?;
                        out.add_to(index[c], index[a], &q_from(g));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks `δκδ = 0` by both routes and `∂² = 0`; records the outcome
    /// for [`ChainComplex::homology_ranks`].
    pub fn verify_d_squared(&self) -> DSquaredReport {
        let dkd = self.delta.mul(&self.kappa).mul(&self.delta);
        let routes_agree = match self.d_squared_by_gluing() {
            Ok(m) => m == dkd,
            Err(_) => false,
        };
        let nonzero: Vec<NonzeroEntry> = dkd
            .nonzero_entries()
            .map(|(r, c, v)| NonzeroEntry {
                from: self.generators[c].label(),
                to: self.generators[r].label(),
                value: v.clone(),
            })
            .collect();
        let boundary_squared_zero = self.boundary.mul(&self.boundary).is_zero();
        let report = DSquaredReport {
            nonzero,
            routes_agree,
            boundary_squared_zero,
        };
        let _ = self.verified.set(report.passed());
        report
    }

    /// `(κδ)κ = κ(δκ)` entrywise.
    pub fn kappa_commutation_check(&self) -> bool {
        self.kappa.mul(&self.delta).mul(&self.kappa) == self.kappa.mul(&self.delta.mul(&self.kappa))
    }

    /// Betti numbers over Q per `(homotopy class, grading)`; only nonzero
    /// ranks are listed.
    pub fn homology_ranks(&self) -> Result<BTreeMap<(String, i64), usize>, ChainError> {
        match self.verified.get() {
            None => return Err(ChainError::DSquaredUnverified),
            Some(false) => return Err(ChainError::DSquaredFailed),
            Some(true) => {}
        }
        let mut pieces: BTreeMap<(String, i64), Vec<usize>> = BTreeMap::new();
        for i in 0..self.len() {
            pieces
                .entry((self.classes[i].clone(), self.gradings[i]))
                .or_default()
                .push(i);
        }
        let empty = Vec::new();
        let mut out = BTreeMap::new();
        for ((class, k), here) in &pieces {
            let below = pieces.get(&(class.clone(), k - 1)).unwrap_or(&empty);
            let above = pieces.get(&(class.clone(), k + 1)).unwrap_or(&empty);
            let outgoing = self.boundary.submatrix(below, here).rank();
            let incoming = self.boundary.submatrix(here, above).rank();
            let betti = here.len() - outgoing - incoming;
            if betti > 0 {
                out.insert((class.clone(), *k), betti);
            }
        }
        Ok(out)
    }
}
