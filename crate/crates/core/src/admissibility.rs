//! Decides assumptions A1, A2 and A3 for a collection `(S, L, H, r)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::serde_int;
use crate::surface::{SurfaceError, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("rank r must be at least 2, got {0}")]
    RankTooSmall(BigInt),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Conditional,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Conditional => "conditional",
            Verdict::Fail => "fail",
        })
    }
}

/// Which branch of A3 holds for `d = deg(L|_C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum A3Verdict {
    /// `d = rg + 1`.
    #[serde(rename = "A3(1)")]
    ExactDegree,
    /// `r + g + 1 ≤ d ≤ min(2r, r + 2g)`; `d_equals_2r` marks the boundary
    /// where the general curve must not be hyperelliptic.
    #[serde(rename = "A3(2)")]
    Window { d_equals_2r: bool },
    #[serde(rename = "fails")]
    Fails,
}

impl fmt::Display for A3Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A3Verdict::ExactDegree => f.write_str("A3(1)"),
            A3Verdict::Window { d_equals_2r: false } => f.write_str("A3(2)"),
            A3Verdict::Window { d_equals_2r: true } => f.write_str("A3(2), d = 2r"),
            A3Verdict::Fails => f.write_str("fails"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HyperellipticRule {
    NeverHyperelliptic,
    AlwaysHyperelliptic,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HyperellipticRequirement {
    None,
    RequiredAndSatisfied,
    RequiredAndConditional,
    RequiredAndImpossible,
}

impl fmt::Display for HyperellipticRequirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HyperellipticRequirement::None => "none",
            HyperellipticRequirement::RequiredAndSatisfied => "required-and-satisfied",
            HyperellipticRequirement::RequiredAndConditional => "required-and-conditional",
            HyperellipticRequirement::RequiredAndImpossible => "required-and-impossible",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Admissibility {
    Admissible,
    Conditional,
    NotAdmissible,
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Admissibility::Admissible => "admissible",
            Admissibility::Conditional => "conditional",
            Admissibility::NotAdmissible => "not admissible",
        })
    }
}

/// `(S, L = m · generator, H, r)` over a fixed surface model.
#[derive(Debug, Clone)]
pub struct Collection<'a> {
    model: &'a SurfaceModel,
    m: BigInt,
    r: BigInt,
}

impl<'a> Collection<'a> {
    pub fn new(model: &'a SurfaceModel, r: BigInt, m: BigInt) -> Result<Self, AdmissibilityError> {
        if r < BigInt::from(2) {
            return Err(AdmissibilityError::RankTooSmall(r));
        }
        if m < BigInt::one() {
            return Err(SurfaceError::NonPositiveMultiple(m).into());
        }
        Ok(Self { model, m, r })
    }

    pub fn model(&self) -> &SurfaceModel {
        self.model
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    #[serde(with = "serde_int")]
    pub r: BigInt,
    #[serde(with = "serde_int")]
    pub m: BigInt,
    pub a1: Verdict,
    pub a2: Verdict,
    pub a3: A3Verdict,
    #[serde(with = "serde_int")]
    pub d: BigInt,
    #[serde(with = "serde_int")]
    pub genus: BigInt,
    pub hyperelliptic_requirement: HyperellipticRequirement,
    pub assumed_hypotheses: Vec<String>,
    pub outcome: Admissibility,
}

/// Classifies `d` against the two numerical branches of A3.
///
/// Expects `g ≥ 2` and `r ≥ 2`; under those bounds the branches are exclusive.
pub fn check_a3(d: &BigInt, g: &BigInt, r: &BigInt) -> A3Verdict {
    debug_assert!(*g >= BigInt::from(2) && *r >= BigInt::from(2));
    if *d == r * g + 1 {
        return A3Verdict::ExactDegree;
    }
    let lower = r + g + 1;
    let twice_r: BigInt = r * 2;
    let upper = std::cmp::min(twice_r.clone(), r + g * 2);
    if lower <= *d && *d <= upper {
        A3Verdict::Window {
            d_equals_2r: *d == twice_r,
        }
    } else {
        A3Verdict::Fails
    }
}

/// What is known about hyperellipticity of the general curve in `|H|`.
pub fn hyperelliptic_rule(model: &SurfaceModel, genus: &BigInt) -> HyperellipticRule {
    if *genus == BigInt::from(2) {
        HyperellipticRule::AlwaysHyperelliptic
    } else if model.has_trivial_canonical() {
        // K_C = H|_C, so |H| restricts to a canonical embedding of C.
        HyperellipticRule::NeverHyperelliptic
    } else {
        HyperellipticRule::Unknown
    }
}

pub fn check_collection(
    collection: &Collection<'_>,
) -> Result<AdmissibilityReport, AdmissibilityError> {
    let model = collection.model();
    let (r, m) = (collection.r(), collection.m());
    let genus = model.curve_genus()?;
    let d = model.restricted_degree(m)?;

    let mut assumed: Vec<String> = model.assumed_hypotheses().to_vec();
    let (a1, a1_notes) = model.a1_assessment()?;
    let (a2, a2_notes) = model.a2_assessment(m);
    for note in a1_notes.into_iter().chain(a2_notes) {
        if !assumed.contains(&note) {
            assumed.push(note);
        }
    }

    let a3 = if genus >= BigInt::from(2) {
        check_a3(&d, &genus, r)
    } else {
        A3Verdict::Fails
    };

    let hyperelliptic_requirement = match a3 {
        A3Verdict::Window { d_equals_2r: true } => match hyperelliptic_rule(model, &genus) {
            HyperellipticRule::NeverHyperelliptic => {
                assumed.push("general C in |H| not hyperelliptic (K_S trivial)".into());
                HyperellipticRequirement::RequiredAndSatisfied
            }
            HyperellipticRule::Unknown => {
                assumed.push("requires the general C in |H| to be non-hyperelliptic".into());
                HyperellipticRequirement::RequiredAndConditional
            }
            HyperellipticRule::AlwaysHyperelliptic => {
                HyperellipticRequirement::RequiredAndImpossible
            }
        },
        _ => HyperellipticRequirement::None,
    };

    let outcome = if a1 == Verdict::Fail
        || a2 == Verdict::Fail
        || a3 == A3Verdict::Fails
        || hyperelliptic_requirement == HyperellipticRequirement::RequiredAndImpossible
    {
        Admissibility::NotAdmissible
    } else if a1 == Verdict::Conditional
        || a2 == Verdict::Conditional
        || hyperelliptic_requirement == HyperellipticRequirement::RequiredAndConditional
    {
        Admissibility::Conditional
    } else {
        Admissibility::Admissible
    };

    Ok(AdmissibilityReport {
        r: r.clone(),
        m: m.clone(),
        a1,
        a2,
        a3,
        d,
        genus,
        hyperelliptic_requirement,
        assumed_hypotheses: assumed,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceFamily;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn report(family: SurfaceFamily, r: i64, m: i64) -> AdmissibilityReport {
        let model = SurfaceModel::build(family).unwrap();
        check_collection(&Collection::new(&model, int(r), int(m)).unwrap()).unwrap()
    }

    fn gtc(ksq: i64) -> SurfaceFamily {
        SurfaceFamily::GeneralTypeCanonical {
            ksq: int(ksq),
            chi: None,
        }
    }

    #[test]
    fn a3_branches() {
        assert_eq!(check_a3(&int(5), &int(2), &int(2)), A3Verdict::ExactDegree);
        assert_eq!(
            check_a3(&int(12), &int(4), &int(7)),
            A3Verdict::Window { d_equals_2r: false }
        );
        assert_eq!(check_a3(&int(5), &int(2), &int(3)), A3Verdict::Fails);
        assert_eq!(
            check_a3(&int(8), &int(3), &int(4)),
            A3Verdict::Window { d_equals_2r: true }
        );
    }

    #[test]
    fn hyperelliptic_rules() {
        let k3 = SurfaceModel::build(SurfaceFamily::k3(int(4))).unwrap();
        assert_eq!(
            hyperelliptic_rule(&k3, &int(3)),
            HyperellipticRule::NeverHyperelliptic
        );
        let gt1 = SurfaceModel::build(gtc(1)).unwrap();
        assert_eq!(
            hyperelliptic_rule(&gt1, &int(2)),
            HyperellipticRule::AlwaysHyperelliptic
        );
        let gt4 = SurfaceModel::build(gtc(4)).unwrap();
        assert_eq!(
            hyperelliptic_rule(&gt4, &int(5)),
            HyperellipticRule::Unknown
        );
    }

    #[test]
    fn canonical_degree_one_exact_pair() {
        let rep = report(
            SurfaceFamily::GeneralTypeCanonical {
                ksq: int(1),
                chi: Some(int(3)),
            },
            2,
            5,
        );
        assert_eq!(rep.outcome, Admissibility::Admissible);
        assert_eq!(rep.a3, A3Verdict::ExactDegree);
        assert_eq!((rep.d, rep.genus), (int(5), int(2)));
    }

    #[test]
    fn very_ampleness_exception_is_conditional() {
        let rep = report(gtc(2), 4, 4);
        assert_eq!(rep.a2, Verdict::Conditional);
        assert_eq!(rep.outcome, Admissibility::Conditional);
        // d = 8 = 2r as well.
        assert_eq!(
            rep.hyperelliptic_requirement,
            HyperellipticRequirement::RequiredAndConditional
        );
    }

    #[test]
    fn quartic_k3_exact_pair() {
        let rep = report(SurfaceFamily::k3(int(4)), 5, 4);
        assert_eq!(rep.outcome, Admissibility::Admissible);
        assert_eq!(rep.a3, A3Verdict::ExactDegree);
    }

    #[test]
    fn genus_two_boundary_is_impossible() {
        let rep = report(gtc(1), 3, 6);
        assert_eq!(rep.a3, A3Verdict::Window { d_equals_2r: true });
        assert_eq!(
            rep.hyperelliptic_requirement,
            HyperellipticRequirement::RequiredAndImpossible
        );
        assert_eq!(rep.outcome, Admissibility::NotAdmissible);
    }

    #[test]
    fn k3_boundary_is_satisfied() {
        let rep = report(SurfaceFamily::k3(int(4)), 4, 2);
        assert_eq!(
            rep.hyperelliptic_requirement,
            HyperellipticRequirement::RequiredAndSatisfied
        );
        assert_eq!(rep.outcome, Admissibility::Admissible);
    }

    #[test]
    fn low_multiple_fails_a2() {
        let rep = report(SurfaceFamily::k3(int(4)), 2, 1);
        assert_eq!(rep.a2, Verdict::Fail);
        assert_eq!(rep.outcome, Admissibility::NotAdmissible);
    }

    #[test]
    fn rank_one_is_rejected() {
        let model = SurfaceModel::build(gtc(1)).unwrap();
        assert!(matches!(
            Collection::new(&model, int(1), int(3)),
            Err(AdmissibilityError::RankTooSmall(_))
        ));
    }

    #[test]
    fn report_round_trips_through_json() {
        let rep = report(gtc(4), 6, 3);
        let text = serde_json::to_string(&rep).unwrap();
        let back: AdmissibilityReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
    }
}
