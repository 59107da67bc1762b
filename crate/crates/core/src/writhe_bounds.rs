//! Winding and writhe bounds for braids near the ends of holomorphic curves,
//! the automatic transversality criterion, and the arithmetic certificate
//! excluding the breaking of index-2 cylinders into a pants-over-plane
//! building whose plane sits at the simple orbit.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::buildings::{BuildingError, ComponentSkeleton};
use crate::orbit_index::{
    floor_int, format_rational, gcd, is_half_integral, IndexError, OrbitRef, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WritheError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("end data violates its bound: {0}")]
    BoundViolated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndSide {
    PositiveEnd,
    NegativeEnd,
}

fn wind_from_cz(cz: i64, side: EndSide) -> i64 {
    match side {
        EndSide::PositiveEnd => cz.div_euclid(2),
        EndSide::NegativeEnd => (cz + 1).div_euclid(2),
    }
}

fn writhe_from_cz(cz: i64, d: u32, side: EndSide) -> i64 {
    (d as i64 - 1) * wind_from_cz(cz, side)
}

fn improved_from_cz(cz: i64, d: u32) -> i64 {
    let w = wind_from_cz(cz, EndSide::PositiveEnd);
    (d as i64 - 1) * w - gcd(d as i64, w) + 1
}

/// Upper bound on the winding number of a positive end at `orbit`
/// (`floor(CZ/2)`), or lower bound at a negative end (`ceil(CZ/2)`).
pub fn wind_bound(orbit: &OrbitRef, side: EndSide) -> Result<i64, WritheError> {
    Ok(wind_from_cz(orbit.cz_index()?, side))
}

/// `(d-1)` times the winding bound, `d` the multiplicity of `orbit`. The
/// improved variant, only for positive ends, subtracts `gcd(d, w) - 1`.
pub fn writhe_bound(
    orbit: &OrbitRef,
    side: EndSide,
    use_improved: bool,
) -> Result<i64, WritheError> {
    let cz = orbit.cz_index()?;
    let d = orbit.multiplicity();
    match (side, use_improved) {
        (_, false) => Ok(writhe_from_cz(cz, d, side)),
        (EndSide::PositiveEnd, true) => Ok(improved_from_cz(cz, d)),
        (EndSide::NegativeEnd, true) => Err(WritheError::Unsupported(
            "the improved writhe bound is only available for positive ends".into(),
        )),
    }
}

/// `2 Delta = chi + w_plus - w_minus`.
pub fn adjunction_combine(chi: i64, writhe_plus: i64, writhe_minus: i64) -> i64 {
    chi + writhe_plus - writhe_minus
}

/// Recorded wind/writhe of one end, validated against the bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidEndData {
    pub orbit: OrbitRef,
    pub side: EndSide,
    pub wind: Option<i64>,
    pub writhe: Option<i64>,
}

impl BraidEndData {
    pub fn validate(&self) -> Result<(), WritheError> {
        let bound = wind_bound(&self.orbit, self.side)?;
        let d = self.orbit.multiplicity() as i64;
        if let Some(w) = self.wind {
            let ok = match self.side {
                EndSide::PositiveEnd => w <= bound,
                EndSide::NegativeEnd => w >= bound,
            };
            if !ok {
                return Err(WritheError::BoundViolated(format!(
                    "wind {w} at {:?} of {} against bound {bound}",
                    self.side, self.orbit
                )));
            }
            if let Some(x) = self.writhe {
                let ok = match self.side {
                    EndSide::PositiveEnd => x <= (d - 1) * w,
                    EndSide::NegativeEnd => x >= (d - 1) * w,
                };
                if !ok {
                    return Err(WritheError::BoundViolated(format!(
                        "writhe {x} at {:?} of {} against (d-1)*wind = {}",
                        self.side,
                        self.orbit,
                        (d - 1) * w
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransversalityQuery {
    pub genus: u32,
    /// Ends at positive hyperbolic orbits, even covers of negative
    /// hyperbolic orbits included.
    pub h_plus: u32,
    pub index: i64,
    pub total_ends: Option<u32>,
}

impl TransversalityQuery {
    pub fn for_component(c: &ComponentSkeleton) -> Result<Self, BuildingError> {
        Ok(TransversalityQuery {
            genus: c.genus,
            h_plus: c.h_plus()?,
            index: c.component_index()?,
            total_ends: Some((c.positive_ends.len() + c.negative_ends.len()) as u32),
        })
    }

    pub fn validate(&self) -> Result<(), WritheError> {
        match self.total_ends {
            Some(n) if self.h_plus > n => Err(WritheError::Precondition(format!(
                "h_plus = {} exceeds the {n} ends",
                self.h_plus
            ))),
            _ => Ok(()),
        }
    }
}

/// `2g - 2 + h_plus < ind`.
pub fn automatic_transversality(q: &TransversalityQuery) -> bool {
    2 * q.genus as i64 - 2 + (q.h_plus as i64) < q.index
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjectureStatus {
    Unproven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjecturalValue {
    pub value: i64,
    pub status: ConjectureStatus,
}

/// The value the improved writhe bound would take if it were attained at a
/// positive end. Nothing else in the crate relies on it.
pub fn conjecture_improved_equality(orbit: &OrbitRef) -> Result<ConjecturalValue, WritheError> {
    let cz = orbit.cz_index()?;
    if cz.rem_euclid(2) == 0 {
        return Err(WritheError::Unsupported(format!(
            "{orbit} has even CZ = {cz}; the equality is only considered at odd CZ"
        )));
    }
    Ok(ConjecturalValue {
        value: improved_from_cz(cz, orbit.multiplicity()),
        status: ConjectureStatus::Unproven,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The index-0 condition on the pants fails, so the configuration does
    /// not arise.
    HypothesisNotMet,
    /// The index-0 condition holds and the writhe inequality fails.
    BreakingExcluded,
    /// Both hold. Never expected.
    Counterexample,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::BreakingExcluded => "breaking-excluded",
            Verdict::Counterexample => "COUNTEREXAMPLE",
        })
    }
}

/// Every quantity in the contradiction argument for a cylinder from
/// `gamma^(d+1)` to `gamma^d` breaking into an index-0 pants over
/// `R x gamma` and a plane at `gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoBadBreakCertificate {
    pub theta: Rational,
    pub d: u32,
    pub cz_gamma: i64,
    pub cz_gamma_d: i64,
    pub cz_gamma_d1: i64,
    /// Some `m theta` with `m <= d + 1` is an integer, so the rational
    /// model of those covers is degenerate; the arithmetic is unaffected.
    pub degenerate_iterates: bool,
    pub pants_index: i64,
    /// `floor((d+1) theta) = floor(d theta) + floor(theta)`.
    pub index_zero: bool,
    pub writhe_plus_bound: i64,
    pub wind_plane: i64,
    pub writhe_minus_bound: i64,
    /// `-1 + w_plus - 2 d wind - w_minus` at the bounds.
    pub combined: i64,
    /// `d (floor((d+1) theta) - 2 floor(theta) - 1) - (d-1) floor(d theta)`.
    pub combined_closed_form: i64,
    pub writhe_inequality: bool,
    pub floor_d_theta: i64,
    pub d_times_floor_plus_one: i64,
    /// `floor(d theta) <= d theta < d (floor(theta) + 1)`.
    pub witness_holds: bool,
    pub verdict: Verdict,
}

impl NoBadBreakCertificate {
    pub fn to_text(&self) -> String {
        let t = format_rational(self.theta);
        let mut s = String::new();
        s.push_str("certificate: no-bad-break\n");
        s.push_str(&format!("theta: {t}\nd: {}\n", self.d));
        s.push_str(&format!(
            "cz: gamma = {}, gamma^d = {}, gamma^(d+1) = {}\n",
            self.cz_gamma, self.cz_gamma_d, self.cz_gamma_d1
        ));
        s.push_str(&format!(
            "degenerate_iterates: {}\n",
            self.degenerate_iterates
        ));
        s.push_str(&format!(
            "A index-zero pants: ind = {} -> {}\n",
            self.pants_index, self.index_zero
        ));
        s.push_str(&format!(
            "B writhe inequality: -1 + {} - 2*{}*{} - {} = {} >= 0 -> {} (closed form {})\n",
            self.writhe_plus_bound,
            self.d,
            self.wind_plane,
            self.writhe_minus_bound,
            self.combined,
            self.writhe_inequality,
            self.combined_closed_form
        ));
        s.push_str(&format!(
            "witness: floor(d theta) = {} <= d theta = {} < d (floor(theta) + 1) = {} -> {}\n",
            self.floor_d_theta,
            format_rational(self.theta * Rational::from_integer(self.d as i64)),
            self.d_times_floor_plus_one,
            self.witness_holds
        ));
        s.push_str(&format!("verdict: {}\n", self.verdict));
        s
    }
}

/// Builds the certificate for rotation number `theta` and cover degree `d`.
/// `theta` must model an elliptic orbit (not a half-integer).
pub fn no_bad_break_certificate(
    theta: Rational,
    d: u32,
) -> Result<NoBadBreakCertificate, WritheError> {
    if is_half_integral(theta) {
        return Err(WritheError::Precondition(format!(
            "theta = {} is a half-integer; the pants argument needs an elliptic orbit",
            format_rational(theta)
        )));
    }
    if d == 0 {
        return Err(WritheError::Index(IndexError::ZeroMultiplicity));
    }
    let mult = |m: u32| theta * Rational::from_integer(m as i64);
    let elliptic_cz = |m: u32| 2 * floor_int(mult(m)) + 1;
    let cz_gamma = elliptic_cz(1);
    let cz_gamma_d = elliptic_cz(d);
    let cz_gamma_d1 = elliptic_cz(d + 1);
    let degenerate_iterates = (1..=d + 1).any(|m| mult(m).is_integer());

    // genus-0 pants: chi = -1, one positive and two negative ends
    let pants_index = 1 + cz_gamma_d1 - cz_gamma_d - cz_gamma;
    let index_zero = pants_index == 0;

    let writhe_plus_bound = writhe_from_cz(cz_gamma_d1, d + 1, EndSide::PositiveEnd);
    let wind_plane = wind_from_cz(cz_gamma, EndSide::PositiveEnd);
    let writhe_minus_bound = writhe_from_cz(cz_gamma_d, d, EndSide::NegativeEnd);
    // The writhe of the degree-d braid below the neck cancels between the
    // two adjunction inequalities; the degree-1 braid has writhe 0.
    let combined = adjunction_combine(
        -1,
        writhe_plus_bound,
        2 * d as i64 * wind_plane + writhe_minus_bound,
    );
    let (fd1, f1, fd) = (floor_int(mult(d + 1)), floor_int(theta), floor_int(mult(d)));
    let di = d as i64;
    let combined_closed_form = di * (fd1 - 2 * f1 - 1) - (di - 1) * fd;
    let writhe_inequality = combined >= 0;

    let d_times_floor_plus_one = di * (f1 + 1);
    let witness_holds = Rational::from_integer(fd) <= mult(d)
        && mult(d) < Rational::from_integer(d_times_floor_plus_one);

    let verdict = match (index_zero, writhe_inequality) {
        (false, _) => Verdict::HypothesisNotMet,
        (true, false) => Verdict::BreakingExcluded,
        (true, true) => Verdict::Counterexample,
    };
    Ok(NoBadBreakCertificate {
        theta,
        d,
        cz_gamma,
        cz_gamma_d,
        cz_gamma_d1,
        degenerate_iterates,
        pants_index,
        index_zero,
        writhe_plus_bound,
        wind_plane,
        writhe_minus_bound,
        combined,
        combined_closed_form,
        writhe_inequality,
        floor_d_theta: fd,
        d_times_floor_plus_one,
        witness_holds,
        verdict,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub checked: u64,
    pub breaking_excluded: u64,
    pub hypothesis_not_met: u64,
    /// `(theta, d)` pairs where the closed form disagrees with the bound
    /// chain, the witness fails, or both conditions hold.
    pub exceptions: Vec<(Rational, u32)>,
}

/// Certificates for every reduced `theta = p/q` with `q <= max_q`,
/// `0 < theta < theta_max`, `theta` not a half-integer, and every
/// `1 <= d <= max_d`.
pub fn certificate_sweep(max_q: i64, theta_max: i64, max_d: u32) -> SweepSummary {
    let thetas: Vec<Rational> = (1..=max_q)
        .flat_map(|q| (1..q * theta_max).map(move |p| (p, q)))
        .filter(|&(p, q)| gcd(p, q) == 1)
        .map(|(p, q)| Rational::new(p, q))
        .filter(|t| !is_half_integral(*t))
        .collect();
    certificate_sweep_over(&thetas, max_d)
}

pub fn certificate_sweep_over(thetas: &[Rational], max_d: u32) -> SweepSummary {
    thetas
        .par_iter()
        .map(|&t| {
            let mut s = SweepSummary::default();
            for d in 1..=max_d {
                s.checked += 1;
                match no_bad_break_certificate(t, d) {
                    Ok(c) => {
                        let consistent = c.combined == c.combined_closed_form && c.witness_holds;
                        match c.verdict {
                            Verdict::BreakingExcluded if consistent => s.breaking_excluded += 1,
                            Verdict::HypothesisNotMet if consistent => s.hypothesis_not_met += 1,
                            _ => s.exceptions.push((t, d)),
                        }
                    }
                    Err(_) => s.exceptions.push((t, d)),
                }
            }
            s
        })
        .reduce(SweepSummary::default, |mut a, b| {
            a.checked += b.checked;
            a.breaking_excluded += b.breaking_excluded;
            a.hypothesis_not_met += b.hypothesis_not_met;
            a.exceptions.extend(b.exceptions);
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit_index::RotationData;
    use std::sync::Arc;

    fn orbit(theta: Rational, m: u32) -> OrbitRef {
        OrbitRef::new(
            Arc::new(RotationData::contractible("g", theta, 4).unwrap()),
            m,
        )
        .unwrap()
    }

    #[test]
    fn wind_examples() {
        let g = orbit(Rational::new(6, 5), 1);
        assert_eq!(wind_bound(&g, EndSide::PositiveEnd).unwrap(), 1);
        assert_eq!(wind_bound(&g, EndSide::NegativeEnd).unwrap(), 2);
        let h = orbit(Rational::from_integer(2), 1);
        assert_eq!(wind_bound(&h, EndSide::PositiveEnd).unwrap(), 2);
        assert_eq!(wind_bound(&h, EndSide::NegativeEnd).unwrap(), 2);
    }

    #[test]
    fn writhe_examples() {
        let g3 = orbit(Rational::new(6, 5), 3);
        assert_eq!(writhe_bound(&g3, EndSide::PositiveEnd, false).unwrap(), 6);
        assert_eq!(writhe_bound(&g3, EndSide::PositiveEnd, true).unwrap(), 4);
        let g1 = orbit(Rational::new(6, 5), 1);
        for improved in [false, true] {
            assert_eq!(
                writhe_bound(&g1, EndSide::PositiveEnd, improved).unwrap(),
                0
            );
        }
        assert_eq!(writhe_bound(&g1, EndSide::NegativeEnd, false).unwrap(), 0);
        assert!(matches!(
            writhe_bound(&g1, EndSide::NegativeEnd, true),
            Err(WritheError::Unsupported(_))
        ));
    }

    #[test]
    fn transversality_examples() {
        let q = |genus, h_plus, index| TransversalityQuery {
            genus,
            h_plus,
            index,
            total_ends: None,
        };
        assert!(automatic_transversality(&q(0, 2, 1)));
        assert!(!automatic_transversality(&q(0, 2, 0)));
        assert!(automatic_transversality(&q(1, 0, 1)));
        let bad = TransversalityQuery {
            total_ends: Some(1),
            ..q(0, 2, 1)
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn adjunction_examples() {
        assert_eq!(adjunction_combine(-1, 6, 5), 0);
        assert_eq!(adjunction_combine(0, 3, 3), 0);
    }

    #[test]
    fn certificate_examples() {
        let c = no_bad_break_certificate(Rational::new(3, 10), 2).unwrap();
        assert!(c.index_zero);
        assert_eq!(c.combined, -2);
        assert_eq!(c.verdict, Verdict::BreakingExcluded);
        let c = no_bad_break_certificate(Rational::new(5, 7), 2).unwrap();
        assert!(!c.index_zero);
        assert_eq!(c.verdict, Verdict::HypothesisNotMet);
        let c = no_bad_break_certificate(Rational::new(6, 5), 1).unwrap();
        assert!(c.index_zero);
        assert!(!c.writhe_inequality);
        assert!(no_bad_break_certificate(Rational::new(3, 2), 1).is_err());
        assert!(no_bad_break_certificate(Rational::from_integer(2), 1).is_err());
    }

    #[test]
    fn certificate_text_lists_each_step() {
        let text = no_bad_break_certificate(Rational::new(3, 10), 2)
            .unwrap()
            .to_text();
        assert!(text.contains("theta: 3/10"));
        assert!(text.contains("= -2 >= 0 -> false"));
        assert!(text.ends_with("verdict: breaking-excluded\n"));
    }

    #[test]
    fn conjecture_value() {
        let v = conjecture_improved_equality(&orbit(Rational::new(6, 5), 3)).unwrap();
        assert_eq!(v.value, 4);
        assert_eq!(v.status, ConjectureStatus::Unproven);
        assert_eq!(
            conjecture_improved_equality(&orbit(Rational::new(6, 5), 1))
                .unwrap()
                .value,
            0
        );
        assert!(conjecture_improved_equality(&orbit(Rational::from_integer(2), 1)).is_err());
    }

    #[test]
    fn braid_end_validation() {
        let g3 = orbit(Rational::new(6, 5), 3);
        let ok = BraidEndData {
            orbit: g3.clone(),
            side: EndSide::PositiveEnd,
            wind: Some(3),
            writhe: Some(6),
        };
        assert!(ok.validate().is_ok());
        let too_wound = BraidEndData {
            wind: Some(4),
            ..ok.clone()
        };
        assert!(too_wound.validate().is_err());
        let neg = BraidEndData {
            side: EndSide::NegativeEnd,
            wind: Some(4),
            writhe: Some(7),
            ..ok
        };
        assert!(neg.validate().is_err());
    }

    #[test]
    fn small_sweep_has_no_exceptions() {
        let s = certificate_sweep(7, 3, 20);
        assert!(s.exceptions.is_empty());
        assert!(s.breaking_excluded > 0 && s.hypothesis_not_met > 0);
    }
}
