//! Numerical models of the surface families: lattice, canonical class,
//! polarization and the line bundles `L = m · generator` used on each.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::admissibility::Verdict;
use crate::lattice::{DivisorClass, IntersectionForm, LatticeError};

pub const CANONICAL_CURVE_EXISTS: &str = "smooth irreducible canonical curve exists";
pub const DIM_IMAGE_REDUCTION: &str =
    "r >= dim phi_L(S) reduced to r >= 2 (L big, so phi_L(S) is a surface)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("{family}: hypothesis violated: {hypothesis}")]
    Hypothesis {
        family: &'static str,
        hypothesis: String,
    },
    #[error("line bundle multiple must be at least 1, got {0}")]
    NonPositiveMultiple(BigInt),
    #[error("h0 formula not justified: m = {m} is below the vanishing threshold {threshold}")]
    VanishingNotJustified { m: BigInt, threshold: BigInt },
    #[error("chi(O_S) was not supplied for this surface")]
    ChiUnknown,
    #[error("Riemann-Roch vanishing not justified: d = {d} < 2g + 1 with g = {g}")]
    RiemannRochNotJustified { d: BigInt, g: BigInt },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// One of the surface families, with its numerical invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceFamily {
    /// Minimal general type, `K_S` ample, `H = K_S`, `L = mK_S`.
    GeneralTypeCanonical { ksq: BigInt, chi: Option<BigInt> },
    /// Minimal general type, `H = 2K_S`, `L = mK_S`.
    GeneralTypeBicanonical { ksq: BigInt, chi: Option<BigInt> },
    /// `K_S ≡ 0` with a very ample `H`, `L = mH`.
    KodairaZero {
        hsq: BigInt,
        chi: Option<BigInt>,
        k3: bool,
        trivial_canonical: bool,
    },
    /// Del Pezzo of degree `e = K_S²`, `H = -3K_S`, `L = -mK_S`.
    DelPezzo { degree: BigInt },
    /// `E × F` with `g(F) = genus`, `H = 2(p × F) + E × K_F`, `L = mH`.
    EllipticProduct { genus: BigInt },
    /// `(E × F)/G` isogenous to a product, `H = F1 + 2F2`, `L = mH`.
    IsogenousProduct { genus: BigInt, group_order: BigInt },
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

impl SurfaceFamily {
    pub fn k3(hsq: BigInt) -> Self {
        SurfaceFamily::KodairaZero {
            hsq,
            chi: Some(int(2)),
            k3: true,
            trivial_canonical: true,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SurfaceFamily::GeneralTypeCanonical { .. } => "gt-canonical",
            SurfaceFamily::GeneralTypeBicanonical { .. } => "gt-bicanonical",
            SurfaceFamily::KodairaZero { k3: true, .. } => "k3",
            SurfaceFamily::KodairaZero { .. } => "kod0",
            SurfaceFamily::DelPezzo { .. } => "delpezzo",
            SurfaceFamily::EllipticProduct { .. } => "elliptic",
            SurfaceFamily::IsogenousProduct { .. } => "isogenous",
        }
    }

    fn violated(&self, hypothesis: impl Into<String>) -> SurfaceError {
        SurfaceError::Hypothesis {
            family: self.tag(),
            hypothesis: hypothesis.into(),
        }
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        match self {
            SurfaceFamily::GeneralTypeCanonical { ksq, chi } => {
                if *ksq < BigInt::one() {
                    return Err(self.violated("K_S^2 >= 1"));
                }
                if chi.as_ref().is_some_and(|c| *c < BigInt::one()) {
                    return Err(self.violated("chi(O_S) >= 1"));
                }
            }
            SurfaceFamily::GeneralTypeBicanonical { ksq, chi } => {
                if *ksq < int(6) || ksq.is_odd() {
                    return Err(self.violated("K_S^2 >= 6 and even"));
                }
                if chi.as_ref().is_some_and(|c| *c < BigInt::one()) {
                    return Err(self.violated("chi(O_S) >= 1"));
                }
            }
            SurfaceFamily::KodairaZero {
                hsq,
                chi,
                k3,
                trivial_canonical,
            } => {
                if *hsq < int(4) || hsq.is_odd() {
                    return Err(self.violated("H^2 even and >= 4"));
                }
                if *k3 {
                    if !trivial_canonical {
                        return Err(self.violated("a K3 surface has trivial canonical bundle"));
                    }
                    if chi.as_ref().is_some_and(|c| *c != int(2)) {
                        return Err(self.violated("a K3 surface has chi(O_S) = 2"));
                    }
                } else {
                    if *hsq < int(10) {
                        return Err(self.violated("H^2 >= 10 for a very ample H off a K3"));
                    }
                    match chi {
                        Some(c) if *c == int(2) => {
                            return Err(self.violated("chi(O_S) = 2 with K_S = 0 forces a K3"));
                        }
                        Some(c) if *trivial_canonical && !c.is_zero() => {
                            return Err(self.violated("an abelian surface has chi(O_S) = 0"));
                        }
                        Some(c) if c.is_negative() || *c > BigInt::one() => {
                            return Err(self.violated("chi(O_S) in {0, 1}"));
                        }
                        _ => {}
                    }
                }
            }
            SurfaceFamily::DelPezzo { degree } => {
                if *degree < BigInt::one() || *degree > int(9) {
                    return Err(self.violated("1 <= K_S^2 <= 9"));
                }
            }
            SurfaceFamily::EllipticProduct { genus } => {
                if *genus < int(2) {
                    return Err(self.violated("g(F) >= 2"));
                }
            }
            SurfaceFamily::IsogenousProduct { genus, group_order } => {
                if *genus < int(2) {
                    return Err(self.violated("g(F) >= 2"));
                }
                if *group_order < int(2) {
                    return Err(self.violated("|G| >= 2"));
                }
                let canonical_degree: BigInt = genus * 2 - 2;
                if !canonical_degree.is_multiple_of(group_order) {
                    return Err(self.violated(format!(
                        "|G| = {group_order} divides 2g - 2 = {canonical_degree}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The closed-form genus of a smooth curve in `|H|` for this family.
    pub fn closed_form_genus(&self) -> BigInt {
        match self {
            SurfaceFamily::GeneralTypeCanonical { ksq, .. } => ksq + 1,
            SurfaceFamily::GeneralTypeBicanonical { ksq, .. } => ksq * 3 + 1,
            SurfaceFamily::KodairaZero { hsq, .. } => hsq / 2 + 1,
            SurfaceFamily::DelPezzo { degree } => degree * 3 + 1,
            SurfaceFamily::EllipticProduct { genus } => genus * 6 - 5,
            SurfaceFamily::IsogenousProduct { genus, group_order } => group_order * 2 + genus,
        }
    }
}

/// A surface family realised on a concrete divisor lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    family: SurfaceFamily,
    form: IntersectionForm,
    canonical: DivisorClass,
    polarization: DivisorClass,
    line_generator: DivisorClass,
    assumed_hypotheses: Vec<String>,
}

impl SurfaceModel {
    pub fn build(family: SurfaceFamily) -> Result<Self, SurfaceError> {
        family.validate()?;
        let (form, canonical, polarization, line_generator, hypotheses) = match &family {
            SurfaceFamily::GeneralTypeCanonical { ksq, .. } => {
                let k = DivisorClass::from_ints(&[1]);
                (
                    IntersectionForm::rank_one("K", ksq.clone()),
                    k.clone(),
                    k.clone(),
                    k,
                    vec![
                        "S minimal of general type with K_S ample".to_string(),
                        CANONICAL_CURVE_EXISTS.to_string(),
                    ],
                )
            }
            SurfaceFamily::GeneralTypeBicanonical { ksq, .. } => {
                let k = DivisorClass::from_ints(&[1]);
                (
                    IntersectionForm::rank_one("K", ksq.clone()),
                    k.clone(),
                    DivisorClass::from_ints(&[2]),
                    k,
                    vec![
                        "S minimal of general type with K_S ample".to_string(),
                        "bicanonical map is a morphism (K_S^2 >= 5), general curve in |2K_S| smooth irreducible"
                            .to_string(),
                    ],
                )
            }
            SurfaceFamily::KodairaZero {
                hsq,
                k3,
                trivial_canonical,
                ..
            } => {
                let h = DivisorClass::from_ints(&[1]);
                let mut hypotheses = vec![
                    "K_S numerically trivial".to_string(),
                    "H very ample, general curve in |H| smooth irreducible".to_string(),
                ];
                if *k3 {
                    hypotheses.push("S is a K3 surface".to_string());
                } else if *trivial_canonical {
                    hypotheses.push("K_S trivial (abelian surface)".to_string());
                } else {
                    hypotheses.push("K_S torsion, not trivial".to_string());
                }
                (
                    IntersectionForm::rank_one("H", hsq.clone()),
                    DivisorClass::zero(1),
                    h.clone(),
                    h,
                    hypotheses,
                )
            }
            SurfaceFamily::DelPezzo { degree } => (
                IntersectionForm::rank_one("K", degree.clone()),
                DivisorClass::from_ints(&[1]),
                DivisorClass::from_ints(&[-3]),
                DivisorClass::from_ints(&[-1]),
                vec![
                    "-K_S ample".to_string(),
                    "-3K_S very ample, general curve in |-3K_S| smooth irreducible".to_string(),
                ],
            ),
            SurfaceFamily::EllipticProduct { genus } => {
                // A = p × F, B = E × q; K_S = E × K_F = (2g - 2)B.
                let canonical_degree: BigInt = genus * 2 - 2;
                let h = DivisorClass::new(vec![int(2), canonical_degree.clone()]);
                (
                    IntersectionForm::hyperbolic("A", "B", BigInt::one()),
                    DivisorClass::new(vec![BigInt::zero(), canonical_degree]),
                    h.clone(),
                    h,
                    vec![
                        "S = E x F with E elliptic".to_string(),
                        "H = 2(p x F) + E x K_F globally generated and ample".to_string(),
                    ],
                )
            }
            SurfaceFamily::IsogenousProduct { genus, group_order } => {
                let k2 = (genus * 2 - 2) / group_order;
                let h = DivisorClass::from_ints(&[1, 2]);
                (
                    IntersectionForm::hyperbolic("F1", "F2", group_order.clone()),
                    DivisorClass::new(vec![BigInt::zero(), k2]),
                    h.clone(),
                    h,
                    vec![
                        "S = (E x F)/G with E/G rational, F/G elliptic and free diagonal action"
                            .to_string(),
                        "H = F1 + 2F2 globally generated and ample".to_string(),
                    ],
                )
            }
        };
        let model = SurfaceModel {
            family,
            form,
            canonical,
            polarization,
            line_generator,
            assumed_hypotheses: hypotheses,
        };
        if !model.form.square(&model.polarization)?.is_positive() {
            return Err(model.family.violated("H^2 > 0"));
        }
        Ok(model)
    }

    pub fn family(&self) -> &SurfaceFamily {
        &self.family
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn polarization(&self) -> &DivisorClass {
        &self.polarization
    }

    pub fn line_generator(&self) -> &DivisorClass {
        &self.line_generator
    }

    pub fn assumed_hypotheses(&self) -> &[String] {
        &self.assumed_hypotheses
    }

    pub fn has_trivial_canonical(&self) -> bool {
        matches!(
            self.family,
            SurfaceFamily::KodairaZero {
                trivial_canonical: true,
                ..
            }
        )
    }

    pub fn is_k3(&self) -> bool {
        matches!(self.family, SurfaceFamily::KodairaZero { k3: true, .. })
    }

    pub fn chi(&self) -> Option<BigInt> {
        match &self.family {
            SurfaceFamily::GeneralTypeCanonical { chi, .. }
            | SurfaceFamily::GeneralTypeBicanonical { chi, .. } => chi.clone(),
            SurfaceFamily::KodairaZero { k3: true, .. } => Some(int(2)),
            SurfaceFamily::KodairaZero {
                chi,
                trivial_canonical: true,
                ..
            } => chi.clone().or_else(|| Some(BigInt::zero())),
            SurfaceFamily::KodairaZero { chi, .. } => chi.clone(),
            SurfaceFamily::DelPezzo { .. } => Some(BigInt::one()),
            SurfaceFamily::EllipticProduct { .. } | SurfaceFamily::IsogenousProduct { .. } => {
                Some(BigInt::zero())
            }
        }
    }

    /// Genus of a smooth curve `C ∈ |H|`, computed by adjunction on the lattice.
    pub fn curve_genus(&self) -> Result<BigInt, SurfaceError> {
        Ok(self
            .form
            .adjunction_genus(&self.polarization, &self.canonical)?)
    }

    /// `L = m · generator` (`mK_S`, `mH` or `-mK_S` depending on the family).
    pub fn line_bundle(&self, m: &BigInt) -> Result<DivisorClass, SurfaceError> {
        if *m < BigInt::one() {
            return Err(SurfaceError::NonPositiveMultiple(m.clone()));
        }
        Ok(self.line_generator.scaled(m))
    }

    /// `d = deg(L|_C) = L · H`.
    pub fn restricted_degree(&self, m: &BigInt) -> Result<BigInt, SurfaceError> {
        let l = self.line_bundle(m)?;
        Ok(self.form.intersect(&l, &self.polarization)?)
    }

    /// Smallest `m` for which the family's vanishing argument gives `h⁰(L) = χ(L)`.
    pub fn vanishing_threshold(&self) -> BigInt {
        match &self.family {
            SurfaceFamily::GeneralTypeCanonical { .. }
            | SurfaceFamily::GeneralTypeBicanonical { .. }
            | SurfaceFamily::EllipticProduct { .. } => int(3),
            SurfaceFamily::KodairaZero { .. } | SurfaceFamily::DelPezzo { .. } => int(2),
            SurfaceFamily::IsogenousProduct { genus, group_order } => {
                let excess: BigInt = genus - 1;
                BigInt::one() + excess.div_ceil(group_order)
            }
        }
    }

    /// `h⁰(L) = χ(O_S) + L·(L - K_S)/2`, valid above the vanishing threshold.
    pub fn h0_of_line_bundle(&self, m: &BigInt) -> Result<BigInt, SurfaceError> {
        let threshold = self.vanishing_threshold();
        if *m < threshold {
            return Err(SurfaceError::VanishingNotJustified {
                m: m.clone(),
                threshold,
            });
        }
        let chi = self.chi().ok_or(SurfaceError::ChiUnknown)?;
        let l = self.line_bundle(m)?;
        let l_minus_k = &l - &self.canonical;
        let twice = self.form.intersect(&l, &l_minus_k)?;
        if twice.is_odd() {
            return Err(LatticeError::NonCurveClass { value: twice }.into());
        }
        Ok(chi + twice / 2)
    }

    /// The family's sufficient condition for assumption A1.
    pub fn a1_assessment(&self) -> Result<(Verdict, Vec<String>), SurfaceError> {
        let genus = self.curve_genus()?;
        if genus < int(2) {
            return Ok((Verdict::Fail, vec![format!("g(C) = {genus} < 2")]));
        }
        let note = match &self.family {
            SurfaceFamily::GeneralTypeCanonical { .. } => CANONICAL_CURVE_EXISTS,
            SurfaceFamily::GeneralTypeBicanonical { .. } => {
                "smooth C in |2K_S| by Bertini (bicanonical morphism)"
            }
            SurfaceFamily::KodairaZero { .. } => "smooth C in |H| by Bertini (H very ample)",
            SurfaceFamily::DelPezzo { .. } => "smooth C in |-3K_S| by Bertini (-3K_S very ample)",
            SurfaceFamily::EllipticProduct { .. } | SurfaceFamily::IsogenousProduct { .. } => {
                "smooth C in |H| by Bertini (H globally generated and ample)"
            }
        };
        Ok((Verdict::Pass, vec![note.to_string()]))
    }

    /// The family's sufficient condition for assumption A2 at `L = m · generator`.
    pub fn a2_assessment(&self, m: &BigInt) -> (Verdict, Vec<String>) {
        let mut notes = vec![DIM_IMAGE_REDUCTION.to_string()];
        let verdict = match &self.family {
            SurfaceFamily::GeneralTypeCanonical { ksq, .. } => {
                let very_ample_from = if *ksq <= int(2) { int(5) } else { int(3) };
                if *m < int(3) {
                    notes.push("m < 3: Kodaira vanishing for H^1(mK_S - C) unavailable".into());
                    Verdict::Fail
                } else if *m < very_ample_from {
                    notes.push(format!(
                        "mK_S not known to be globally generated: very ampleness needs m >= {very_ample_from}"
                    ));
                    Verdict::Conditional
                } else {
                    notes.push(format!(
                        "mK_S very ample for m >= {very_ample_from}; rho surjective by Kodaira vanishing"
                    ));
                    Verdict::Pass
                }
            }
            SurfaceFamily::GeneralTypeBicanonical { .. } => {
                if *m < int(2) {
                    notes.push("m < 2: L = mK_S not known to be globally generated".into());
                    Verdict::Fail
                } else if *m < int(4) {
                    notes.push(
                        "rho surjective needs H^1((m-2)K_S) = 0, not implied for m < 4".into(),
                    );
                    Verdict::Conditional
                } else {
                    notes.push("mK_S very ample; H^1((m-2)K_S) = 0 by Kodaira vanishing".into());
                    Verdict::Pass
                }
            }
            SurfaceFamily::KodairaZero { .. } => threshold_verdict(
                m,
                int(2),
                "L = mH very ample; rho surjective by Kodaira vanishing",
                &mut notes,
            ),
            SurfaceFamily::DelPezzo { .. } => threshold_verdict(
                m,
                int(2),
                "-mK_S globally generated; H^1((m-3)K_S) = 0",
                &mut notes,
            ),
            SurfaceFamily::EllipticProduct { .. } => threshold_verdict(
                m,
                int(3),
                "L - H = K_S + ample; rho surjective by Kodaira vanishing",
                &mut notes,
            ),
            SurfaceFamily::IsogenousProduct { .. } => threshold_verdict(
                m,
                self.vanishing_threshold(),
                "L - H - K_S ample; rho surjective by Kodaira vanishing",
                &mut notes,
            ),
        };
        (verdict, notes)
    }
}

fn threshold_verdict(
    m: &BigInt,
    threshold: BigInt,
    note: &str,
    notes: &mut Vec<String>,
) -> Verdict {
    if *m < threshold {
        notes.push(format!(
            "m < {threshold}: sufficient condition for A2 not met"
        ));
        Verdict::Fail
    } else {
        notes.push(note.to_string());
        Verdict::Pass
    }
}

/// `h⁰(L|_C) = d + 1 - g`, valid once `d ≥ 2g + 1`.
pub fn h0_restricted(d: &BigInt, g: &BigInt) -> Result<BigInt, SurfaceError> {
    if *d < g * 2 + 1 {
        return Err(SurfaceError::RiemannRochNotJustified {
            d: d.clone(),
            g: g.clone(),
        });
    }
    Ok(d + 1 - g)
}

pub fn build_model(family: SurfaceFamily) -> Result<SurfaceModel, SurfaceError> {
    SurfaceModel::build(family)
}

/// `h⁰(L)` for `L = m · generator`; see [`SurfaceModel::h0_of_line_bundle`].
pub fn h0_of_l(model: &SurfaceModel, m: &BigInt) -> Result<BigInt, SurfaceError> {
    model.h0_of_line_bundle(m)
}
