//! Counting the ends of index-2 moduli spaces that converge to a two-level
//! building of index-1 cylinders through an intermediate orbit.

use num_integer::Integer;

use super::{ChainError, Sign};
use crate::orbit_index::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GluingCount {
    /// Number of ends converging to the building.
    pub count: u64,
    /// Covering multiplicity of the cylinders along each such end,
    /// `gcd(d_plus, d_minus)`.
    pub end_degree: u64,
}

fn check_divides(d_plus: u64, d_minus: u64, d_gamma0: u64) -> Result<(), ChainError> {
    if d_plus == 0
        || d_minus == 0
        || d_gamma0 == 0
        || !d_gamma0.is_multiple_of(d_plus)
        || !d_gamma0.is_multiple_of(d_minus)
    {
        return Err(ChainError::GluingDivisibility {
            d_plus,
            d_minus,
            d_gamma0,
        });
    }
    Ok(())
}

/// `k d0 / (d_plus d_minus)` ends, each of degree `k = gcd(d_plus, d_minus)`.
pub fn gluing_count(d_plus: u64, d_minus: u64, d_gamma0: u64) -> Result<GluingCount, ChainError> {
    check_divides(d_plus, d_minus, d_gamma0)?;
    let k = d_plus.gcd(&d_minus);
    let num = k as u128 * d_gamma0 as u128;
    let den = d_plus as u128 * d_minus as u128;
    debug_assert_eq!(num % den, 0);
    Ok(GluingCount {
        count: (num / den) as u64,
        end_degree: k,
    })
}

/// Signed weight of the ends through `gamma0`, each divided by its degree:
/// `eps_plus eps_minus d0 / (d_plus d_minus)` for a good intermediate orbit
/// and 0 for a bad one, whose ends cancel in pairs.
pub fn end_contribution(
    eps_plus: Sign,
    eps_minus: Sign,
    d_plus: u64,
    d_minus: u64,
    d_gamma0: u64,
    gamma0_good: bool,
) -> Result<Rational, ChainError> {
    check_divides(d_plus, d_minus, d_gamma0)?;
    if !gamma0_good {
        return Ok(Rational::from_integer(0));
    }
    let s = eps_plus.value() * eps_minus.value();
    Ok(Rational::new(
        s * d_gamma0 as i64,
        d_plus as i64 * d_minus as i64,
    ))
}
