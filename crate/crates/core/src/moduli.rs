//! Dimension counts on the moduli side: Grassmannians, expected dimension,
//! Bogomolov discriminant, Mukai vectors and the K3 Lagrangian test.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::serde_int;
use crate::surface::{SurfaceError, SurfaceModel};

/// Hypotheses behind reading the Lagrangian verdict geometrically.
pub const LAGRANGIAN_HYPOTHESES: &str =
    "moduli space smooth and irreducible: rho(S) = 1 and H generic with respect to v";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error("empty Grassmannian: h0 = {h0} < r + 1 = {needed}")]
    EmptyGrassmannian { h0: BigInt, needed: BigInt },
    #[error("empty curve Grassmannian: d - g - r = {0} < 0")]
    EmptyCurveGrassmannian(BigInt),
    #[error("subsheaf rank s = {s} outside 1..={max}")]
    SubrankOutOfRange { s: BigInt, max: BigInt },
    #[error("genus g = {0} must be at least 2")]
    GenusTooSmall(BigInt),
    #[error("Mukai vector and Lagrangian test need a K3 model, got {0}")]
    NotK3(&'static str),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// `dim Gr(r+1, H⁰(L)) = (r+1)(h⁰ - r - 1)`.
pub fn grassmannian_dim(r: &BigInt, h0: &BigInt) -> Result<BigInt, ModuliError> {
    let needed = r + 1;
    if *h0 < needed {
        return Err(ModuliError::EmptyGrassmannian {
            h0: h0.clone(),
            needed,
        });
    }
    Ok(&needed * (h0 - &needed))
}

/// `(r+1)(d - g - r)`; equals `(r²-1)(g-1)` when `d = rg + 1`.
pub fn curve_grassmannian_dim(r: &BigInt, d: &BigInt, g: &BigInt) -> Result<BigInt, ModuliError> {
    let excess = d - g - r;
    if excess < BigInt::zero() {
        return Err(ModuliError::EmptyCurveGrassmannian(excess));
    }
    Ok((r + 1) * excess)
}

/// `2r·c₂ - (r-1)L² - (r²-1)χ`.
pub fn expected_moduli_dim(r: &BigInt, lsq: &BigInt, c2: &BigInt, chi: &BigInt) -> BigInt {
    discriminant(r, lsq, c2) - (r * r - 1) * chi
}

/// `Δ = 2r·c₂ - (r-1)L²`.
pub fn discriminant(r: &BigInt, lsq: &BigInt, c2: &BigInt) -> BigInt {
    r * c2 * 2 - (r - 1) * lsq
}

/// Least degree of a rank-`s` subsheaf of slope at least `(rg+1)/r`, that is
/// `⌈s(rg+1)/r⌉`. Always `sg + 1`; the kernel comparison
/// `-(sg+1) ≤ -(rg+1)` then fails for every `s < r`.
pub fn destabilizer_degree_bound(
    g: &BigInt,
    r: &BigInt,
    s: &BigInt,
) -> Result<BigInt, ModuliError> {
    if *g < BigInt::from(2) {
        return Err(ModuliError::GenusTooSmall(g.clone()));
    }
    let max = r - 1;
    if *s < BigInt::one() || *s > max {
        return Err(ModuliError::SubrankOutOfRange { s: s.clone(), max });
    }
    let d: BigInt = r * g + 1;
    let numerator: BigInt = s * &d;
    let bound = numerator.div_ceil(r);
    assert_eq!(bound, s * g + 1, "ceil(s(rg+1)/r) = sg+1");
    let kernel_sub = -&bound;
    let kernel_total = -d;
    assert!(
        kernel_sub > kernel_total,
        "kernel comparison must fail for s < r"
    );
    Ok(bound)
}

/// `v = (r, mH, r - L²/2)` on a K3 with `Pic = ZH`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiVector {
    #[serde(with = "serde_int")]
    pub r: BigInt,
    #[serde(with = "serde_int")]
    pub c1_coeff: BigInt,
    #[serde(with = "serde_int")]
    pub s: BigInt,
}

impl MukaiVector {
    pub fn new(r: BigInt, m: BigInt, hsq: &BigInt) -> Self {
        let lsq = &m * &m * hsq;
        let s = &r - lsq / 2;
        Self { r, c1_coeff: m, s }
    }

    pub fn is_primitive(&self) -> bool {
        self.r.gcd(&self.c1_coeff).gcd(&self.s).is_one()
    }

    /// The coprimality of `(r, m)` alone, a sufficient test.
    pub fn is_rank_multiple_coprime(&self) -> bool {
        self.r.gcd(&self.c1_coeff).is_one()
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}H, {})", self.r, self.c1_coeff, self.s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MukaiReport {
    pub vector: MukaiVector,
    pub primitive: bool,
    pub rank_multiple_coprime: bool,
}

/// All dimension quantities for `(S, L = m · generator, r)`. A `None` marks
/// a quantity whose formula does not apply; `notes` says why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    #[serde(with = "serde_int")]
    pub r: BigInt,
    #[serde(with = "serde_int")]
    pub m: BigInt,
    #[serde(with = "serde_int")]
    pub chi: BigInt,
    #[serde(with = "serde_int")]
    pub l_squared: BigInt,
    #[serde(with = "serde_int")]
    pub c2: BigInt,
    #[serde(with = "serde_int::option")]
    pub h0_l: Option<BigInt>,
    #[serde(with = "serde_int::option")]
    pub dim_grassmannian: Option<BigInt>,
    #[serde(with = "serde_int::option")]
    pub dim_curve_grassmannian: Option<BigInt>,
    #[serde(with = "serde_int")]
    pub expected_dim_moduli: BigInt,
    #[serde(with = "serde_int")]
    pub discriminant: BigInt,
    pub lagrangian: Option<bool>,
    pub mukai: Option<MukaiReport>,
    pub notes: Vec<String>,
}

/// Computes every quantity; needs `χ(O_S)`. Here `c₂(E_W) = L²`.
pub fn dimension_report(
    model: &SurfaceModel,
    r: &BigInt,
    m: &BigInt,
) -> Result<DimensionReport, ModuliError> {
    let chi = model.chi().ok_or(SurfaceError::ChiUnknown)?;
    let l = model.line_bundle(m)?;
    let lsq = model.form().square(&l).map_err(SurfaceError::from)?;
    let c2 = lsq.clone();
    let mut notes = Vec::new();

    let h0 = match model.h0_of_line_bundle(m) {
        Ok(v) => Some(v),
        Err(e @ SurfaceError::VanishingNotJustified { .. }) => {
            notes.push(e.to_string());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let dim_grassmannian = match h0.as_ref().map(|h0| grassmannian_dim(r, h0)) {
        Some(Ok(v)) => Some(v),
        Some(Err(e)) => {
            notes.push(e.to_string());
            None
        }
        None => None,
    };
    let genus = model.curve_genus()?;
    let d = model.restricted_degree(m)?;
    let dim_curve_grassmannian = match curve_grassmannian_dim(r, &d, &genus) {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let expected = expected_moduli_dim(r, &lsq, &c2, &chi);
    let delta = discriminant(r, &lsq, &c2);

    let (lagrangian, mukai) = if model.is_k3() {
        let hsq = model
            .form()
            .square(model.polarization())
            .map_err(SurfaceError::from)?;
        let vector = MukaiVector::new(r.clone(), m.clone(), &hsq);
        notes.push(LAGRANGIAN_HYPOTHESES.to_string());
        (
            dim_grassmannian.as_ref().map(|dim| dim * 2 == expected),
            Some(MukaiReport {
                primitive: vector.is_primitive(),
                rank_multiple_coprime: vector.is_rank_multiple_coprime(),
                vector,
            }),
        )
    } else {
        (None, None)
    };

    Ok(DimensionReport {
        r: r.clone(),
        m: m.clone(),
        chi,
        l_squared: lsq,
        c2,
        h0_l: h0,
        dim_grassmannian,
        dim_curve_grassmannian,
        expected_dim_moduli: expected,
        discriminant: delta,
        lagrangian,
        mukai,
        notes,
    })
}

/// Mukai vector and dimension report; K3 models only.
pub fn mukai_lagrangian(
    model: &SurfaceModel,
    r: &BigInt,
    m: &BigInt,
) -> Result<(MukaiVector, DimensionReport), ModuliError> {
    if !model.is_k3() {
        return Err(ModuliError::NotK3(model.family().tag()));
    }
    let report = dimension_report(model, r, m)?;
    let vector = report
        .mukai
        .as_ref()
        .map(|mk| mk.vector.clone())
        .expect("K3 reports carry a Mukai vector");
    Ok((vector, report))
}
