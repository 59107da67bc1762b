use std::fmt;
use std::sync::Arc;

use crate::orbit_index::{CurveData, IndexError, OrbitRef, OrbitType, RotationData};

use super::BuildingError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentKind {
    BranchedCoverOfTrivialCylinder,
    CoverOfNontrivialCurve,
    SomewhereInjective,
}

impl ComponentKind {
    fn tag(self) -> &'static str {
        match self {
            ComponentKind::BranchedCoverOfTrivialCylinder => "BC",
            ComponentKind::CoverOfNontrivialCurve => "CV",
            ComponentKind::SomewhereInjective => "SI",
        }
    }
}

/// Flags that decide which constraints the enumerator imposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenericityProfile {
    pub generic_j: bool,
    pub dynamically_convex: bool,
    pub condition_star: bool,
}

impl Default for GenericityProfile {
    fn default() -> Self {
        GenericityProfile {
            generic_j: true,
            dynamically_convex: true,
            condition_star: true,
        }
    }
}

/// A connected curve `u` which covers a somewhere injective curve `ubar`
/// (possibly a trivial cylinder) with degree `cover_degree` and
/// `branch_count` interior ramification points.
///
/// The underlying curve always has genus zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentSkeleton {
    pub kind: ComponentKind,
    pub underlying_positive_ends: Vec<OrbitRef>,
    pub underlying_negative_ends: Vec<OrbitRef>,
    pub cover_degree: u32,
    pub branch_count: u32,
    pub genus: u32,
    pub positive_ends: Vec<OrbitRef>,
    pub negative_ends: Vec<OrbitRef>,
}

impl ComponentSkeleton {
    /// The trivial cylinder `R x orbit`, seen as an unbranched cover of the
    /// trivial cylinder over the embedded orbit.
    pub fn trivial_cylinder(orbit: &OrbitRef) -> Result<Self, BuildingError> {
        let simple = orbit.with_multiplicity(1)?;
        Ok(ComponentSkeleton {
            kind: ComponentKind::BranchedCoverOfTrivialCylinder,
            underlying_positive_ends: vec![simple.clone()],
            underlying_negative_ends: vec![simple],
            cover_degree: orbit.multiplicity(),
            branch_count: 0,
            genus: 0,
            positive_ends: vec![orbit.clone()],
            negative_ends: vec![orbit.clone()],
        })
    }

    /// Genus-`genus` branched cover of `R x base` with ends at the given
    /// multiplicities; the branch count follows from Riemann–Hurwitz.
    pub fn branched_cover_of_trivial_cylinder(
        base: &Arc<RotationData>,
        positive: &[u32],
        negative: &[u32],
        genus: u32,
    ) -> Result<Self, BuildingError> {
        let d: u32 = positive.iter().sum();
        if d == 0 || d != negative.iter().sum::<u32>() {
            return Err(BuildingError::Structural(format!(
                "end multiplicities {positive:?} / {negative:?} do not partition a common degree"
            )));
        }
        let simple = OrbitRef::new(Arc::clone(base), 1)?;
        let mk = |ms: &[u32]| -> Result<Vec<OrbitRef>, IndexError> {
            let mut v = ms
                .iter()
                .map(|&m| OrbitRef::new(Arc::clone(base), m))
                .collect::<Result<Vec<_>, _>>()?;
            v.sort();
            Ok(v)
        };
        let b = positive.len() + negative.len() + 2 * genus as usize - 2;
        let c = ComponentSkeleton {
            kind: ComponentKind::BranchedCoverOfTrivialCylinder,
            underlying_positive_ends: vec![simple.clone()],
            underlying_negative_ends: vec![simple],
            cover_degree: d,
            branch_count: b as u32,
            genus,
            positive_ends: mk(positive)?,
            negative_ends: mk(negative)?,
        };
        c.validate()?;
        Ok(c)
    }

    /// A somewhere injective genus-zero curve.
    pub fn somewhere_injective(positive: OrbitRef, mut negative: Vec<OrbitRef>) -> Self {
        negative.sort();
        ComponentSkeleton {
            kind: ComponentKind::SomewhereInjective,
            underlying_positive_ends: vec![positive.clone()],
            underlying_negative_ends: negative.clone(),
            cover_degree: 1,
            branch_count: 0,
            genus: 0,
            positive_ends: vec![positive],
            negative_ends: negative,
        }
    }

    /// A genus-zero `degree`-fold cover of the somewhere injective curve with
    /// ends `positive`, `negative`, whose single positive end covers
    /// `positive` fully. `partitions[j]` lists the local degrees of the ends
    /// of the cover over `negative[j]`.
    pub fn cover_of(
        positive: OrbitRef,
        negative: Vec<OrbitRef>,
        degree: u32,
        partitions: &[Vec<u32>],
    ) -> Result<Self, BuildingError> {
        if partitions.len() != negative.len() {
            return Err(BuildingError::Structural(
                "one partition per underlying negative end is required".into(),
            ));
        }
        let mut ends = Vec::new();
        for (beta, parts) in negative.iter().zip(partitions) {
            if parts.iter().sum::<u32>() != degree {
                return Err(BuildingError::Structural(format!(
                    "local degrees {parts:?} over {beta} do not sum to {degree}"
                )));
            }
            for &p in parts {
                ends.push(beta.iterate(p)?);
            }
        }
        ends.sort();
        let n = ends.len() as i64;
        let k = negative.len() as i64;
        let d = degree as i64;
        // 1 - n = d (1 - k) - b
        let b = d * (1 - k) - 1 + n;
        if b < 0 {
            return Err(BuildingError::Structural(format!(
                "Riemann-Hurwitz forces a negative branch count ({b})"
            )));
        }
        let kind = if degree == 1 {
            ComponentKind::SomewhereInjective
        } else {
            ComponentKind::CoverOfNontrivialCurve
        };
        let mut negative = negative;
        negative.sort();
        let c = ComponentSkeleton {
            kind,
            positive_ends: vec![positive.iterate(degree)?],
            underlying_positive_ends: vec![positive],
            underlying_negative_ends: negative,
            cover_degree: degree,
            branch_count: b as u32,
            genus: 0,
            negative_ends: ends,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn is_trivial_cylinder(&self) -> bool {
        self.kind == ComponentKind::BranchedCoverOfTrivialCylinder
            && self.genus == 0
            && self.positive_ends.len() == 1
            && self.negative_ends.len() == 1
    }

    pub fn is_cylinder(&self) -> bool {
        self.positive_ends.len() == 1 && self.negative_ends.len() == 1
    }

    pub fn is_plane(&self) -> bool {
        self.positive_ends.len() == 1 && self.negative_ends.is_empty()
    }

    /// Whether the underlying somewhere injective curve is a nontrivial
    /// cylinder.
    pub fn underlying_is_nontrivial_cylinder(&self) -> bool {
        self.kind != ComponentKind::BranchedCoverOfTrivialCylinder
            && self.underlying_positive_ends.len() == 1
            && self.underlying_negative_ends.len() == 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
            - self.positive_ends.len() as i64
            - self.negative_ends.len() as i64
    }

    pub fn underlying_euler_characteristic(&self) -> i64 {
        2 - self.underlying_positive_ends.len() as i64 - self.underlying_negative_ends.len() as i64
    }

    /// Checks Riemann–Hurwitz, the kind constraints and that the ends of the
    /// cover partition the degree over every underlying end.
    pub fn validate(&self) -> Result<(), BuildingError> {
        if self.cover_degree == 0 {
            return Err(BuildingError::Structural(
                "cover degree must be positive".into(),
            ));
        }
        if self.positive_ends.is_empty() || self.underlying_positive_ends.is_empty() {
            return Err(BuildingError::Structural(
                "component without positive end".into(),
            ));
        }
        match self.kind {
            ComponentKind::SomewhereInjective => {
                if self.cover_degree != 1 || self.branch_count != 0 {
                    return Err(BuildingError::Structural(
                        "somewhere injective component must have d=1, b=0".into(),
                    ));
                }
            }
            ComponentKind::BranchedCoverOfTrivialCylinder => {
                let (p, n) = (
                    &self.underlying_positive_ends,
                    &self.underlying_negative_ends,
                );
                if p.len() != 1 || n.len() != 1 || p[0] != n[0] {
                    return Err(BuildingError::Structural(
                        "underlying curve of a trivial-cylinder cover must be a trivial cylinder"
                            .into(),
                    ));
                }
            }
            ComponentKind::CoverOfNontrivialCurve => {
                if self.cover_degree < 2 {
                    return Err(BuildingError::Structural(
                        "cover of a nontrivial curve needs degree at least 2".into(),
                    ));
                }
            }
        }
        let lhs = self.euler_characteristic();
        let rhs = self.cover_degree as i64 * self.underlying_euler_characteristic()
            - self.branch_count as i64;
        if lhs != rhs {
            return Err(BuildingError::RiemannHurwitz {
                chi: lhs,
                degree: self.cover_degree,
                underlying_chi: self.underlying_euler_characteristic(),
                branch_count: self.branch_count,
            });
        }
        if !covers_with_degree(
            &self.positive_ends,
            &self.underlying_positive_ends,
            self.cover_degree,
        ) || !covers_with_degree(
            &self.negative_ends,
            &self.underlying_negative_ends,
            self.cover_degree,
        ) {
            return Err(BuildingError::Structural(format!(
                "ends of {self} do not partition degree {} over the underlying ends",
                self.cover_degree
            )));
        }
        Ok(())
    }

    pub fn curve(&self) -> Result<CurveData, BuildingError> {
        Ok(CurveData::new(
            self.genus,
            self.positive_ends.clone(),
            self.negative_ends.clone(),
        )?)
    }

    pub fn underlying_curve(&self) -> Result<CurveData, BuildingError> {
        Ok(CurveData::new(
            0,
            self.underlying_positive_ends.clone(),
            self.underlying_negative_ends.clone(),
        )?)
    }

    /// Fredholm index of the cover, with `c_tau = 0`.
    pub fn component_index(&self) -> Result<i64, BuildingError> {
        self.validate()?;
        Ok(self.curve()?.fredholm_index()?)
    }

    pub fn underlying_index(&self) -> Result<i64, BuildingError> {
        Ok(self.underlying_curve()?.fredholm_index()?)
    }

    fn has_bad_end(&self) -> bool {
        self.positive_ends
            .iter()
            .chain(&self.negative_ends)
            .any(|e| !e.is_good())
    }

    fn require_one_positive_genus_zero(&self, what: &str) -> Result<(), BuildingError> {
        if self.genus != 0 || self.positive_ends.len() != 1 {
            return Err(BuildingError::Precondition(format!(
                "{what} needs a genus-zero component with one positive end, got {self}"
            )));
        }
        Ok(())
    }

    fn require_generic(
        &self,
        profile: &GenericityProfile,
        what: &str,
    ) -> Result<(), BuildingError> {
        if !profile.generic_j {
            return Err(BuildingError::Precondition(format!(
                "{what} assumes generic J"
            )));
        }
        if self.kind != ComponentKind::BranchedCoverOfTrivialCylinder
            && self.underlying_index()? < 1
        {
            return Err(BuildingError::Precondition(format!(
                "{what}: underlying curve of {self} has index below 1, which generic J excludes"
            )));
        }
        Ok(())
    }

    /// Branched covers of trivial cylinders have nonnegative index.
    pub fn check_ht_lemma(&self) -> Result<bool, BuildingError> {
        if self.kind != ComponentKind::BranchedCoverOfTrivialCylinder {
            return Err(BuildingError::WrongKind {
                expected: ComponentKind::BranchedCoverOfTrivialCylinder,
                found: self.kind,
            });
        }
        Ok(self.component_index()? >= 0)
    }

    /// `ind(u) >= d ind(ubar) + 2 (1 - d + b)`.
    pub fn check_bestimate(&self) -> Result<bool, BuildingError> {
        self.require_one_positive_genus_zero("index/branching estimate")?;
        let d = self.cover_degree as i64;
        let b = self.branch_count as i64;
        Ok(self.component_index()? >= d * self.underlying_index()? + 2 * (1 - d + b))
    }

    /// `ind(u) >= n` when the underlying curve is a nontrivial cylinder, and
    /// `ind(u) >= 5 - 2n` when `u` is not a trivial-cylinder cover and `n > 1`.
    pub fn check_cyl_and_5_estimates(
        &self,
        profile: &GenericityProfile,
    ) -> Result<bool, BuildingError> {
        self.require_one_positive_genus_zero("cylinder/five estimate")?;
        self.require_generic(profile, "cylinder/five estimate")?;
        let ind = self.component_index()?;
        let n = self.negative_ends.len() as i64;
        let cyl_ok = !self.underlying_is_nontrivial_cylinder() || ind >= n;
        let five_ok = self.kind == ComponentKind::BranchedCoverOfTrivialCylinder
            || n <= 1
            || ind >= 5 - 2 * n;
        Ok(cyl_ok && five_ok)
    }

    /// `1 <= ind(ubar) <= ind(u)`, and `d = 1` whenever `ind(u) = 1` and an
    /// end is at a bad orbit.
    pub fn check_cylinder_cover_index(
        &self,
        profile: &GenericityProfile,
    ) -> Result<bool, BuildingError> {
        if !self.is_cylinder() || self.kind == ComponentKind::BranchedCoverOfTrivialCylinder {
            return Err(BuildingError::Precondition(format!(
                "cylinder cover index check needs a nontrivial cylinder, got {self}"
            )));
        }
        self.require_generic(profile, "cylinder cover index check")?;
        let ind = self.component_index()?;
        let ind_bar = self.underlying_index()?;
        let ordered = 1 <= ind_bar && ind_bar <= ind;
        let bad_ok = !(ind == 1 && self.has_bad_end()) || self.cover_degree == 1;
        Ok(ordered && bad_ok)
    }

    /// `ind(u) + 2n >= d (2k - 3) + 4 (b + 1)` for covers of curves with
    /// `k > 1` negative ends; vacuous otherwise.
    pub fn check_fati(&self) -> Result<bool, BuildingError> {
        self.require_one_positive_genus_zero("pants estimate")?;
        let k = self.underlying_negative_ends.len() as i64;
        if self.kind == ComponentKind::BranchedCoverOfTrivialCylinder || k <= 1 {
            return Ok(true);
        }
        let n = self.negative_ends.len() as i64;
        let d = self.cover_degree as i64;
        let b = self.branch_count as i64;
        Ok(self.component_index()? + 2 * n >= d * (2 * k - 3) + 4 * (b + 1))
    }

    /// Number of ends at positive hyperbolic orbits.
    pub fn h_plus(&self) -> Result<u32, BuildingError> {
        let mut h = 0;
        for e in self.positive_ends.iter().chain(&self.negative_ends) {
            if e.orbit_type()? == OrbitType::PositiveHyperbolic {
                h += 1;
            }
        }
        Ok(h)
    }

    /// Compact canonical text, e.g. `CV2[a^1>b^1]{a^2>b^1,b^1}`.
    pub fn canonical(&self) -> String {
        let join = |v: &[OrbitRef]| v.iter().map(|o| o.label()).collect::<Vec<_>>().join(",");
        if self.kind == ComponentKind::SomewhereInjective {
            return format!(
                "SI{{{}>{}}}",
                join(&self.positive_ends),
                join(&self.negative_ends)
            );
        }
        if self.is_trivial_cylinder() {
            return format!("TC{{{}}}", self.positive_ends[0].label());
        }
        format!(
            "{}{}[{}>{}]{{{}>{}}}",
            self.kind.tag(),
            self.cover_degree,
            join(&self.underlying_positive_ends),
            join(&self.underlying_negative_ends),
            join(&self.positive_ends),
            join(&self.negative_ends),
        )
    }
}

impl fmt::Display for ComponentSkeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Is there an assignment of every end in `ends` to an end in `under` with
/// the same base orbit and dividing multiplicity, such that the local degrees
/// over each underlying end sum to `degree`?
fn covers_with_degree(ends: &[OrbitRef], under: &[OrbitRef], degree: u32) -> bool {
    fn go(i: usize, ends: &[OrbitRef], under: &[OrbitRef], load: &mut [u32], degree: u32) -> bool {
        if i == ends.len() {
            return load.iter().all(|&l| l == degree);
        }
        let e = &ends[i];
        for j in 0..under.len() {
            let u = &under[j];
            if u.base() != e.base() || !e.multiplicity().is_multiple_of(u.multiplicity()) {
                continue;
            }
            let local = e.multiplicity() / u.multiplicity();
            if load[j] + local > degree {
                continue;
            }
            load[j] += local;
            if go(i + 1, ends, under, load, degree) {
                return true;
            }
            load[j] -= local;
        }
        false
    }
    let mut load = vec![0; under.len()];
    go(0, ends, under, &mut load, degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit_index::Rational;

    fn orbit(name: &str, n: i64, d: i64, bound: u32) -> Arc<RotationData> {
        Arc::new(RotationData::contractible(name, Rational::new(n, d), bound).unwrap())
    }

    fn cov(o: &Arc<RotationData>, m: u32) -> OrbitRef {
        OrbitRef::new(o.clone(), m).unwrap()
    }

    #[test]
    fn index_zero_pants_over_trivial_cylinder() {
        let g = orbit("g", 6, 5, 4);
        let c =
            ComponentSkeleton::branched_cover_of_trivial_cylinder(&g, &[3], &[1, 2], 0).unwrap();
        assert_eq!(c.branch_count, 1);
        assert_eq!(c.component_index().unwrap(), 0);
        assert!(c.check_ht_lemma().unwrap());
        // 0 >= 0 + 2 (1 - 3 + 1)
        assert!(c.check_bestimate().unwrap());
    }

    #[test]
    fn somewhere_injective_cylinder_index() {
        let g = orbit("g", 6, 5, 4);
        let c = ComponentSkeleton::somewhere_injective(cov(&g, 2), vec![cov(&g, 1)]);
        assert_eq!(c.component_index().unwrap(), 2);
        assert!(c.check_bestimate().unwrap());
    }

    #[test]
    fn unbranched_cover_of_trivial_cylinder_has_index_zero() {
        let g = orbit("g", 6, 5, 4);
        for d in 1..=4 {
            let c = ComponentSkeleton::trivial_cylinder(&cov(&g, d)).unwrap();
            assert!(c.is_trivial_cylinder());
            assert_eq!(c.component_index().unwrap(), 0);
            assert!(c.check_ht_lemma().unwrap());
        }
    }

    #[test]
    fn hyperbolic_pants_has_index_one() {
        let h = orbit("h", 1, 2, 10);
        let c =
            ComponentSkeleton::branched_cover_of_trivial_cylinder(&h, &[2], &[1, 1], 0).unwrap();
        assert_eq!(c.component_index().unwrap(), 1);
        assert!(c.check_ht_lemma().unwrap());
    }

    #[test]
    fn riemann_hurwitz_violation_is_structural_error() {
        let g = orbit("g", 6, 5, 4);
        let mut c =
            ComponentSkeleton::branched_cover_of_trivial_cylinder(&g, &[3], &[1, 2], 0).unwrap();
        c.branch_count = 3;
        assert!(matches!(
            c.component_index(),
            Err(BuildingError::RiemannHurwitz { .. })
        ));
        let mut c2 = ComponentSkeleton::somewhere_injective(cov(&g, 2), vec![cov(&g, 1)]);
        c2.cover_degree = 2;
        assert!(matches!(c2.validate(), Err(BuildingError::Structural(_))));
    }

    #[test]
    fn end_partition_is_checked() {
        let g = orbit("g", 6, 5, 4);
        let h = orbit("h", 2, 1, 4);
        let mut c =
            ComponentSkeleton::cover_of(cov(&g, 1), vec![cov(&h, 1)], 2, &[vec![1, 1]]).unwrap();
        c.negative_ends = vec![cov(&h, 1), cov(&g, 1)];
        assert!(c.validate().is_err());
    }

    #[test]
    fn wrong_kind_for_ht_lemma() {
        let g = orbit("g", 6, 5, 4);
        let c = ComponentSkeleton::somewhere_injective(cov(&g, 1), vec![]);
        assert!(matches!(
            c.check_ht_lemma(),
            Err(BuildingError::WrongKind { .. })
        ));
    }

    #[test]
    fn cover_of_index_two_cylinder() {
        // ubar: g^2 -> g^1 with index 2; u: double cover with two negative ends.
        let g = orbit("g", 6, 5, 4);
        let c =
            ComponentSkeleton::cover_of(cov(&g, 2), vec![cov(&g, 1)], 2, &[vec![1, 1]]).unwrap();
        assert_eq!(c.branch_count, 1);
        assert_eq!(c.underlying_index().unwrap(), 2);
        let ind = c.component_index().unwrap();
        // Lemma bound: 2*2 + 2(1 - 2 + 1) = 4
        assert!(ind >= 4);
        assert!(c
            .check_cyl_and_5_estimates(&GenericityProfile::default())
            .unwrap());
    }

    #[test]
    fn positive_hyperbolic_bottom_tightens_cylinder_estimate() {
        // ubar: a -> h with index 1, h positive hyperbolic. The double cover
        // with a single negative end at h^2 has index exactly n = 1, which
        // the raw bound 2n - d = 0 does not see.
        let a = orbit("a", 6, 5, 4);
        let h = orbit("h", 1, 1, 4);
        let ubar = ComponentSkeleton::somewhere_injective(cov(&a, 1), vec![cov(&h, 1)]);
        assert_eq!(ubar.component_index().unwrap(), 1);
        let u = ComponentSkeleton::cover_of(cov(&a, 1), vec![cov(&h, 1)], 2, &[vec![2]]).unwrap();
        assert_eq!(u.branch_count, 0);
        assert_eq!(u.component_index().unwrap(), 1);
        let profile = GenericityProfile::default();
        assert!(u.check_cyl_and_5_estimates(&profile).unwrap());
        assert!(u.check_cylinder_cover_index(&profile).unwrap());
        assert!(u.check_bestimate().unwrap());
    }

    #[test]
    fn five_estimate_requires_two_negative_ends() {
        let g = orbit("g", 6, 5, 4);
        let h = orbit("h", 2, 1, 4);
        // n = 2, not a trivial-cylinder cover: asserts ind >= 1.
        let c = ComponentSkeleton::somewhere_injective(cov(&g, 3), vec![cov(&g, 1), cov(&h, 1)]);
        assert!(c.component_index().unwrap() >= 1);
        assert!(c
            .check_cyl_and_5_estimates(&GenericityProfile::default())
            .unwrap());
    }

    #[test]
    fn neg_to_pos_hyperbolic_cylinder_cover_scales_index() {
        let n = orbit("n", 3, 2, 6);
        let p = orbit("p", 1, 1, 6);
        let ubar = ComponentSkeleton::somewhere_injective(cov(&n, 1), vec![cov(&p, 1)]);
        assert_eq!(ubar.component_index().unwrap(), 1);
        for d in 1..=4 {
            let u =
                ComponentSkeleton::cover_of(cov(&n, 1), vec![cov(&p, 1)], d, &[vec![d]]).unwrap();
            assert_eq!(u.component_index().unwrap(), d as i64);
            assert!(u
                .check_cylinder_cover_index(&GenericityProfile::default())
                .unwrap());
        }
    }

    #[test]
    fn elliptic_cylinder_double_cover_has_positive_index() {
        let g = orbit("g", 6, 5, 4);
        let h = orbit("h", 1, 1, 4);
        let u = ComponentSkeleton::cover_of(cov(&g, 1), vec![cov(&h, 1)], 2, &[vec![2]]).unwrap();
        assert!(u.component_index().unwrap() >= 1);
        assert!(u
            .check_cylinder_cover_index(&GenericityProfile::default())
            .unwrap());
        let trivial = ComponentSkeleton::somewhere_injective(cov(&g, 1), vec![cov(&h, 1)]);
        assert!(trivial
            .check_cylinder_cover_index(&GenericityProfile::default())
            .unwrap());
    }

    #[test]
    fn generic_precondition_rejects_low_index_underlying_curve() {
        let g = orbit("g", 6, 5, 4);
        let c = ComponentSkeleton::somewhere_injective(cov(&g, 1), vec![cov(&g, 2)]);
        assert!(matches!(
            c.check_cyl_and_5_estimates(&GenericityProfile::default()),
            Err(BuildingError::Precondition(_))
        ));
        let nongeneric = GenericityProfile {
            generic_j: false,
            ..GenericityProfile::default()
        };
        assert!(c.check_cylinder_cover_index(&nongeneric).is_err());
    }
}
