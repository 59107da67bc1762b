//! Reeb orbits modelled by exact rotation numbers, and the Conley–Zehnder /
//! Fredholm index arithmetic built on them.
//!
//! Every embedded orbit carries a rational rotation number `theta` measured in
//! one fixed trivialization. The Conley–Zehnder index of the `m`-fold cover is
//! `floor(m theta) + ceil(m theta)`. Integer rotation numbers model positive
//! hyperbolic orbits, half-integers model negative hyperbolic orbits, and all
//! other rationals model elliptic orbits, which are only trusted up to a
//! declared validity bound on the multiplicity.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational used throughout the crate.
pub type Rational = num_rational::Rational64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("orbit {name}: multiplicity {multiplicity} exceeds validity bound {bound}")]
    BoundExceeded {
        name: String,
        multiplicity: u32,
        bound: u32,
    },
    #[error(
        "orbit {name}: cover of multiplicity {multiplicity} is degenerate (m*theta is an integer)"
    )]
    Degenerate { name: String, multiplicity: u32 },
    #[error("orbit {name} is not contractible; no absolute grading")]
    GradingUnavailable { name: String },
    #[error("orbit {name}: validity bound must be at least 1")]
    ZeroBound { name: String },
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("curve has no positive end")]
    NoPositiveEnd,
    #[error("action must be positive, got {0}")]
    NonPositiveAction(Rational),
}

pub type Result<T, E = IndexError> = std::result::Result<T, E>;

pub fn floor_int(r: Rational) -> i64 {
    r.floor().to_integer()
}

pub fn ceil_int(r: Rational) -> i64 {
    r.ceil().to_integer()
}

/// True when `r` lies in `(1/2) Z`.
pub fn is_half_integral(r: Rational) -> bool {
    (r * Rational::from_integer(2)).is_integer()
}

/// `floor(r) + ceil(r)`; this is the Conley–Zehnder index of an orbit with
/// rotation number `r`.
pub fn cz_of_rotation(r: Rational) -> i64 {
    floor_int(r) + ceil_int(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitType {
    Elliptic,
    PositiveHyperbolic,
    NegativeHyperbolic,
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrbitType::Elliptic => "Elliptic",
            OrbitType::PositiveHyperbolic => "PositiveHyperbolic",
            OrbitType::NegativeHyperbolic => "NegativeHyperbolic",
        };
        f.write_str(s)
    }
}

/// An embedded Reeb orbit described by its rotation number.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RotationData {
    name: String,
    theta: Rational,
    validity_bound: u32,
    homotopy_class: String,
    contractible: bool,
    action: Option<Rational>,
}

impl RotationData {
    /// Validates the nondegeneracy guard: an elliptic rotation number must not
    /// become an integer at any multiplicity up to `validity_bound`.
    pub fn new(
        name: impl Into<String>,
        theta: Rational,
        validity_bound: u32,
        homotopy_class: impl Into<String>,
        contractible: bool,
        action: Option<Rational>,
    ) -> Result<Self> {
        let name = name.into();
        if validity_bound == 0 {
            return Err(IndexError::ZeroBound { name });
        }
        if let Some(a) = action {
            if !a.is_positive() {
                return Err(IndexError::NonPositiveAction(a));
            }
        }
        if !is_half_integral(theta) {
            for m in 1..=validity_bound {
                if (theta * Rational::from_integer(m as i64)).is_integer() {
                    return Err(IndexError::Degenerate {
                        name,
                        multiplicity: m,
                    });
                }
            }
        }
        Ok(RotationData {
            name,
            theta,
            validity_bound,
            homotopy_class: homotopy_class.into(),
            contractible,
            action,
        })
    }

    /// Shorthand for a contractible orbit in the class `"0"` without action.
    pub fn contractible(
        name: impl Into<String>,
        theta: Rational,
        validity_bound: u32,
    ) -> Result<Self> {
        Self::new(name, theta, validity_bound, "0", true, None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn theta(&self) -> Rational {
        self.theta
    }

    pub fn validity_bound(&self) -> u32 {
        self.validity_bound
    }

    pub fn homotopy_class(&self) -> &str {
        &self.homotopy_class
    }

    pub fn is_contractible(&self) -> bool {
        self.contractible
    }

    pub fn action(&self) -> Option<Rational> {
        self.action
    }

    /// Type of the embedded orbit itself.
    pub fn base_type(&self) -> OrbitType {
        classify_rotation(self.theta)
    }

    /// Checks `CZ(gamma^d) >= d CZ(gamma) - d + 1`.
    pub fn cz_supermultiplicativity_check(self: &Arc<Self>, d: u32) -> Result<bool> {
        let cover = OrbitRef::new(Arc::clone(self), d)?;
        let base = OrbitRef::new(Arc::clone(self), 1)?;
        let d = d as i64;
        Ok(cover.cz_index()? > d * base.cz_index()? - d)
    }
}

fn classify_rotation(r: Rational) -> OrbitType {
    if r.is_integer() {
        OrbitType::PositiveHyperbolic
    } else if is_half_integral(r) {
        OrbitType::NegativeHyperbolic
    } else {
        OrbitType::Elliptic
    }
}

/// The `multiplicity`-fold cover of an embedded orbit.
///
/// Construction only requires a positive multiplicity; every index query
/// rejects multiplicities beyond the base orbit's validity bound.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitRef {
    base: Arc<RotationData>,
    multiplicity: u32,
}

impl OrbitRef {
    pub fn new(base: Arc<RotationData>, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(IndexError::ZeroMultiplicity);
        }
        Ok(OrbitRef { base, multiplicity })
    }

    pub fn base(&self) -> &Arc<RotationData> {
        &self.base
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// The cover `(self)^k`, i.e. the base orbit with multiplicity `k * m`.
    pub fn iterate(&self, k: u32) -> Result<Self> {
        OrbitRef::new(Arc::clone(&self.base), self.multiplicity * k)
    }

    /// Same base orbit, different multiplicity.
    pub fn with_multiplicity(&self, m: u32) -> Result<Self> {
        OrbitRef::new(Arc::clone(&self.base), m)
    }

    fn check_bound(&self) -> Result<()> {
        if self.multiplicity > self.base.validity_bound {
            return Err(IndexError::BoundExceeded {
                name: self.base.name.clone(),
                multiplicity: self.multiplicity,
                bound: self.base.validity_bound,
            });
        }
        Ok(())
    }

    pub fn within_bound(&self) -> bool {
        self.check_bound().is_ok()
    }

    /// Rotation number of the cover, `m * theta`.
    pub fn rotation(&self) -> Rational {
        self.base.theta * Rational::from_integer(self.multiplicity as i64)
    }

    pub fn cz_index(&self) -> Result<i64> {
        self.check_bound()?;
        let r = self.rotation();
        if self.base.base_type() == OrbitType::Elliptic && r.is_integer() {
            return Err(IndexError::Degenerate {
                name: self.base.name.clone(),
                multiplicity: self.multiplicity,
            });
        }
        Ok(cz_of_rotation(r))
    }

    /// Covers of hyperbolic orbits are classified by `m * theta`; covers of
    /// an elliptic orbit stay elliptic.
    pub fn orbit_type(&self) -> Result<OrbitType> {
        self.check_bound()?;
        Ok(match self.base.base_type() {
            OrbitType::Elliptic => OrbitType::Elliptic,
            _ => classify_rotation(self.rotation()),
        })
    }

    /// Bad iff an even cover of a negative hyperbolic orbit.
    pub fn is_good(&self) -> bool {
        !(self.base.base_type() == OrbitType::NegativeHyperbolic
            && self.multiplicity.is_multiple_of(2))
    }

    pub fn is_contractible(&self) -> bool {
        self.base.contractible
    }

    /// Absolute grading `CZ - 1`, defined only in the contractible class.
    pub fn grading(&self) -> Result<i64> {
        if !self.base.contractible {
            return Err(IndexError::GradingUnavailable {
                name: self.base.name.clone(),
            });
        }
        Ok(self.cz_index()? - 1)
    }

    /// Free homotopy class label. Covers of contractible orbits are
    /// contractible; a cover of a non-contractible orbit is tagged with its
    /// multiplicity.
    pub fn class_label(&self) -> String {
        if self.base.contractible || self.multiplicity == 1 {
            self.base.homotopy_class.clone()
        } else {
            format!("{}^{}", self.base.homotopy_class, self.multiplicity)
        }
    }

    /// `name^m` notation used in scenario files and reports.
    pub fn label(&self) -> String {
        format!("{}^{}", self.base.name, self.multiplicity)
    }
}

impl fmt::Display for OrbitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.base.name, self.multiplicity)
    }
}

/// A connected curve in the symplectization, described by its genus, its
/// asymptotic orbits and its relative first Chern number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveData {
    pub genus: u32,
    pub positive_ends: Vec<OrbitRef>,
    pub negative_ends: Vec<OrbitRef>,
    pub c_tau: i64,
}

impl CurveData {
    pub fn new(
        genus: u32,
        positive_ends: Vec<OrbitRef>,
        negative_ends: Vec<OrbitRef>,
    ) -> Result<Self> {
        if positive_ends.is_empty() {
            return Err(IndexError::NoPositiveEnd);
        }
        Ok(CurveData {
            genus,
            positive_ends,
            negative_ends,
            c_tau: 0,
        })
    }

    pub fn with_c_tau(mut self, c_tau: i64) -> Self {
        self.c_tau = c_tau;
        self
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
            - self.positive_ends.len() as i64
            - self.negative_ends.len() as i64
    }

    /// `-chi + 2 c_tau + sum CZ(positive ends) - sum CZ(negative ends)`.
    pub fn fredholm_index(&self) -> Result<i64> {
        if self.positive_ends.is_empty() {
            return Err(IndexError::NoPositiveEnd);
        }
        let mut ind = -self.euler_characteristic() + 2 * self.c_tau;
        for a in &self.positive_ends {
            ind += a.cz_index()?;
        }
        for b in &self.negative_ends {
            ind -= b.cz_index()?;
        }
        Ok(ind)
    }

    /// Number of ends at positive hyperbolic orbits, counting even covers of
    /// negative hyperbolic orbits.
    pub fn positive_hyperbolic_ends(&self) -> Result<u32> {
        let mut h = 0;
        for end in self.positive_ends.iter().chain(&self.negative_ends) {
            if end.orbit_type()? == OrbitType::PositiveHyperbolic {
                h += 1;
            }
        }
        Ok(h)
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational; `q` must be positive.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = num
        .parse()
        .map_err(|_| format!("invalid numerator {num:?}"))?;
    let d: i64 = den
        .parse()
        .map_err(|_| format!("invalid denominator {den:?}"))?;
    if d.is_zero() {
        return Err("zero denominator".to_string());
    }
    if d.is_negative() {
        return Err("denominator must be positive".to_string());
    }
    Ok(Rational::new(n, d))
}

/// Formats a rational as `"p/q"`, or `"p"` when it is an integer.
pub fn format_rational(r: Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Greatest common divisor on signed integers, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
