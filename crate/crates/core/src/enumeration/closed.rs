//! Closed-form enumerators: the A3(1) parametrisations for every family and
//! the tabulated A3(2) characterisations for `H = K_S` and `K_S ≡ 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::tables::{self, TableReading};
use super::{
    Condition, ConditionFilter, EnumerationError, PairEntry, PairSet, SearchBox, TableSource,
};
use crate::surface::{SurfaceFamily, SurfaceModel};

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// A closed-form A3(1) parametrisation `a ↦ (r, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Param {
    /// `r = ak - 1`, `m = a(k+1) - 1`.
    Canonical { k: BigInt },
    /// `r = ak - 1`, `m = (a(3k+1) - 3)/2`, odd `a` only.
    Bicanonical { k: BigInt },
    /// `h = H²/4 = 1`: `r = 4a + 1`, `m = 3a + 1`.
    KodairaZeroUnit,
    /// `h = H²/4 ≥ 2`: `r = 4ha - 2h - 1`, `m = (1+2h)a - h - 1`.
    KodairaZero { h: BigInt },
    /// `r = 3ae - 1`, `m = a(3e+1) - 1`.
    DelPezzo { e: BigInt },
    /// `r = 4g²-10g+5 + 8(g-1)a`, `m = 3g²-7g+3 + a(6g-5)`.
    Elliptic { g: BigInt },
    /// `s = 2a+1`, `r = (2s|G|-1)/g`, `m = (s(2|G|+g)-1)/(2g)` when integral.
    Isogenous { g: BigInt, order: BigInt },
}

impl Param {
    fn of(family: &SurfaceFamily) -> Option<Param> {
        Some(match family {
            SurfaceFamily::GeneralTypeCanonical { ksq, .. } => Param::Canonical { k: ksq.clone() },
            SurfaceFamily::GeneralTypeBicanonical { ksq, .. } => {
                Param::Bicanonical { k: ksq.clone() }
            }
            SurfaceFamily::KodairaZero { hsq, .. } => {
                if !hsq.is_multiple_of(&int(4)) {
                    return None;
                }
                let h: BigInt = hsq / 4;
                if h.is_one() {
                    Param::KodairaZeroUnit
                } else {
                    Param::KodairaZero { h }
                }
            }
            SurfaceFamily::DelPezzo { degree } => Param::DelPezzo { e: degree.clone() },
            SurfaceFamily::EllipticProduct { genus } => Param::Elliptic { g: genus.clone() },
            SurfaceFamily::IsogenousProduct { genus, group_order } => Param::Isogenous {
                g: genus.clone(),
                order: group_order.clone(),
            },
        })
    }

    /// Whether `a_max` caps the sweep (otherwise only the box does).
    fn capped_by_parameter(&self) -> bool {
        !matches!(
            self,
            Param::Canonical { .. } | Param::KodairaZeroUnit | Param::KodairaZero { .. }
        )
    }

    fn start(&self) -> BigInt {
        match self {
            Param::Canonical { k } => int(3).div_ceil(k),
            Param::Bicanonical { .. }
            | Param::KodairaZeroUnit
            | Param::KodairaZero { .. }
            | Param::DelPezzo { .. } => BigInt::one(),
            Param::Elliptic { g } => {
                let (r0, m0, dr, dm) = elliptic_coefficients(g);
                let printed_numerator: BigInt = g * 7 - g * g * 3;
                let printed = printed_numerator.div_ceil(&dm);
                let rank_ok = (int(2) - r0).div_ceil(&dr);
                let m_ok = (int(3) - m0).div_ceil(&dm);
                printed.max(rank_ok).max(m_ok)
            }
            Param::Isogenous { .. } => BigInt::zero(),
        }
    }

    /// `(floor of r, the pair if it is integral and in range)`. The first
    /// component is nondecreasing in `a` and bounds the sweep.
    fn eval(&self, a: &BigInt) -> (BigInt, Option<(BigInt, BigInt)>) {
        let valid = |r: BigInt, m: BigInt, m_min: i64| {
            let ok = r >= int(2) && m >= int(m_min);
            (r.clone(), ok.then_some((r, m)))
        };
        match self {
            Param::Canonical { k } => valid(a * k - 1, a * (k + 1) - 1, 1),
            Param::Bicanonical { k } => {
                let r = a * k - 1;
                let numerator: BigInt = a * (k * 3 + 1) - 3;
                if numerator.is_odd() {
                    return (r, None);
                }
                valid(r, numerator / 2, 1)
            }
            Param::KodairaZeroUnit => valid(a * 4 + 1, a * 3 + 1, 1),
            Param::KodairaZero { h } => valid(h * a * 4 - h * 2 - 1, (h * 2 + 1) * a - h - 1, 1),
            Param::DelPezzo { e } => valid(a * e * 3 - 1, a * (e * 3 + 1) - 1, 1),
            Param::Elliptic { g } => {
                let (r0, m0, dr, dm) = elliptic_coefficients(g);
                valid(r0 + dr * a, m0 + dm * a, 3)
            }
            Param::Isogenous { g, order } => {
                let s = a * 2 + 1;
                let r_num: BigInt = &s * order * 2 - 1;
                let m_num: BigInt = &s * (order * 2 + g) - 1;
                let (r, r_rem) = r_num.div_rem(g);
                let (m, m_rem) = m_num.div_rem(&(g * 2));
                if !r_rem.is_zero() || !m_rem.is_zero() {
                    return (r, None);
                }
                valid(r, m, 2)
            }
        }
    }
}

fn elliptic_coefficients(g: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let g2 = g * g;
    (
        &g2 * 4 - g * 10 + 5,
        &g2 * 3 - g * 7 + 3,
        (g - 1) * 8,
        g * 6 - 5,
    )
}

/// First parameter value of the family's A3(1) parametrisation, or `None`
/// when the family has no A3(1) pairs (`K_S ≡ 0` with `4 ∤ H²`).
pub fn exact_degree_parameter_start(model: &SurfaceModel) -> Option<BigInt> {
    Param::of(model.family()).map(|p| p.start())
}

/// The A3(1) pair for parameter `a`, if integral and in range.
pub fn exact_degree_pair(model: &SurfaceModel, a: &BigInt) -> Option<(BigInt, BigInt)> {
    let param = Param::of(model.family())?;
    if *a < param.start() {
        return None;
    }
    param.eval(a).1
}

fn sweep(
    param: &Param,
    bounds: SearchBox,
    a_max: Option<&BigInt>,
) -> Result<Vec<PairEntry>, EnumerationError> {
    let a_max = if param.capped_by_parameter() {
        a_max
    } else {
        None
    };
    if a_max.is_none() && bounds.r_max == u64::MAX {
        return Err(EnumerationError::UnboundedBox {
            r_max: bounds.r_max,
            m_max: bounds.m_max,
        });
    }
    let r_max = BigInt::from(bounds.r_max);
    let mut out = Vec::new();
    let mut a = param.start();
    loop {
        if a_max.is_some_and(|cap| a > *cap) {
            break;
        }
        let (r_floor, pair) = param.eval(&a);
        if r_floor > r_max {
            break;
        }
        if let Some((r, m)) = pair {
            if bounds.contains(&r, &m) {
                out.push(PairEntry::new(r, m, Condition::ExactDegree));
            }
        }
        a += 1;
    }
    Ok(out)
}

fn from_sporadic(pairs: Vec<tables::SporadicPair>, bounds: SearchBox) -> Vec<PairEntry> {
    pairs
        .into_iter()
        .filter(|p| bounds.contains(&p.r, &p.m))
        .map(|p| {
            PairEntry::new(p.r, p.m, Condition::Window)
                .with_dagger(p.dagger)
                .with_source(TableSource::Sporadic)
        })
        .collect()
}

fn from_standard(pairs: Vec<(BigInt, BigInt)>) -> Vec<PairEntry> {
    pairs
        .into_iter()
        .map(|(r, m)| PairEntry::new(r, m, Condition::Window).with_source(TableSource::Standard))
        .collect()
}

fn canonical_window(ksq: &BigInt, bounds: SearchBox, reading: TableReading) -> Vec<PairEntry> {
    let mut out = from_sporadic(tables::canonical_sporadic(ksq, reading), bounds);
    let start = tables::canonical_standard_start(ksq);
    out.extend(from_standard(tables::standard_s_set(ksq, &start, bounds)));
    out
}

fn kodaira_zero_window(hsq: &BigInt, trivial_canonical: bool, bounds: SearchBox) -> Vec<PairEntry> {
    let h = hsq / 2;
    let mut out = from_sporadic(tables::kodaira_zero_sporadic(&h, trivial_canonical), bounds);
    let start = tables::kodaira_zero_standard_start(&h);
    out.extend(from_standard(tables::standard_t_set(&h, &start, bounds)));
    out
}

/// Conditions for which the family has a closed-form characterisation.
pub fn closed_coverage(model: &SurfaceModel) -> ConditionFilter {
    match model.family() {
        SurfaceFamily::GeneralTypeCanonical { .. } | SurfaceFamily::KodairaZero { .. } => {
            ConditionFilter::Any
        }
        _ => ConditionFilter::ExactDegree,
    }
}

/// Result of a closed-form enumeration plus notes for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedEnumeration {
    pub pairs: PairSet,
    pub diagnostics: Vec<String>,
}

/// All closed-form pairs of the model inside the box. `a_max` caps the
/// parameter for the families whose A3(1) set is indexed by it.
pub fn closed_pairs(
    model: &SurfaceModel,
    bounds: SearchBox,
    a_max: Option<&BigInt>,
    filter: ConditionFilter,
    reading: TableReading,
) -> Result<ClosedEnumeration, EnumerationError> {
    let mut entries = Vec::new();
    let mut diagnostics = Vec::new();
    if filter.admits(Condition::ExactDegree) {
        match Param::of(model.family()) {
            Some(param) => entries.extend(sweep(&param, bounds, a_max)?),
            None => diagnostics.push(kodaira_zero_divisibility_note(model)),
        }
    }
    if filter.admits(Condition::Window) {
        match model.family() {
            SurfaceFamily::GeneralTypeCanonical { ksq, .. } => {
                ensure_rank_bounded(bounds)?;
                entries.extend(canonical_window(ksq, bounds, reading));
            }
            SurfaceFamily::KodairaZero {
                hsq,
                trivial_canonical,
                ..
            } => {
                ensure_rank_bounded(bounds)?;
                entries.extend(kodaira_zero_window(hsq, *trivial_canonical, bounds));
            }
            other => diagnostics.push(format!(
                "{}: no closed-form A3(2) characterisation; use the raw strategy",
                other.tag()
            )),
        }
    }
    Ok(ClosedEnumeration {
        pairs: PairSet::new(bounds, entries),
        diagnostics,
    })
}

fn ensure_rank_bounded(bounds: SearchBox) -> Result<(), EnumerationError> {
    if bounds.r_max == u64::MAX {
        return Err(EnumerationError::UnboundedBox {
            r_max: bounds.r_max,
            m_max: bounds.m_max,
        });
    }
    Ok(())
}

fn kodaira_zero_divisibility_note(model: &SurfaceModel) -> String {
    let hsq = match model.family() {
        SurfaceFamily::KodairaZero { hsq, .. } => hsq.to_string(),
        _ => "?".into(),
    };
    format!("H^2 = {hsq} is not divisible by 4: mH^2 = r(1 + H^2/2) + 1 has no solution")
}

fn build(family: SurfaceFamily) -> SurfaceModel {
    SurfaceModel::build(family).expect("family parameters satisfy the family hypotheses")
}

fn a31(model: &SurfaceModel, bounds: SearchBox, a_max: Option<u64>) -> PairSet {
    let cap = a_max.map(BigInt::from);
    closed_pairs(
        model,
        bounds,
        cap.as_ref(),
        ConditionFilter::ExactDegree,
        TableReading::Corrected,
    )
    .expect("bounded sweep")
    .pairs
}

/// A3(1) pairs for `H = K_S` with `r ≤ r_max`. Panics if `ksq < 1`.
pub fn enum_gt_a31(ksq: &BigInt, r_max: u64) -> PairSet {
    let model = build(SurfaceFamily::GeneralTypeCanonical {
        ksq: ksq.clone(),
        chi: None,
    });
    a31(&model, SearchBox::rank_only(r_max), None)
}

/// Tabulated A3(2) pairs for `H = K_S` with `r ≤ r_max`. Panics if `ksq < 1`.
pub fn enum_gt_a32_closed(ksq: &BigInt, r_max: u64) -> PairSet {
    let bounds = SearchBox::rank_only(r_max);
    PairSet::new(
        bounds,
        canonical_window(ksq, bounds, TableReading::Corrected),
    )
}

/// A3(1) pairs for `K_S ≡ 0`; empty with a diagnostic unless `4 | H²`.
pub fn enum_kod0_a31(hsq: &BigInt, r_max: u64) -> (PairSet, Option<String>) {
    let bounds = SearchBox::rank_only(r_max);
    if !hsq.is_multiple_of(&int(4)) {
        return (
            PairSet::empty(bounds),
            Some(format!(
                "H^2 = {hsq} is not divisible by 4: mH^2 = r(1 + H^2/2) + 1 has no solution"
            )),
        );
    }
    let entries = sweep(
        &Param::of(&SurfaceFamily::k3(hsq.clone())).expect("4 | H^2"),
        bounds,
        None,
    )
    .expect("bounded sweep");
    (PairSet::new(bounds, entries), None)
}

/// Tabulated A3(2) pairs for `K_S ≡ 0` with trivial canonical bundle.
pub fn enum_kod0_a32_closed(hsq: &BigInt, r_max: u64) -> PairSet {
    let bounds = SearchBox::rank_only(r_max);
    PairSet::new(bounds, kodaira_zero_window(hsq, true, bounds))
}

pub fn enum_delpezzo(e: &BigInt, a_max: u64) -> PairSet {
    let model = build(SurfaceFamily::DelPezzo { degree: e.clone() });
    a31(&model, SearchBox::unbounded(), Some(a_max))
}

pub fn enum_elliptic_product(g: &BigInt, a_max: u64) -> PairSet {
    let model = build(SurfaceFamily::EllipticProduct { genus: g.clone() });
    a31(&model, SearchBox::unbounded(), Some(a_max))
}

pub fn enum_isogenous(g: &BigInt, group_order: &BigInt, a_max: u64) -> PairSet {
    let model = build(SurfaceFamily::IsogenousProduct {
        genus: g.clone(),
        group_order: group_order.clone(),
    });
    a31(&model, SearchBox::unbounded(), Some(a_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_exact_degree_examples() {
        assert_eq!(enum_gt_a31(&int(1), 4).keys(), vec![(2, 5), (3, 7), (4, 9)]);
        assert_eq!(enum_gt_a31(&int(3), 5).keys(), vec![(2, 3), (5, 7)]);
        assert!(enum_gt_a31(&int(2), 2).is_empty());
    }

    #[test]
    fn canonical_window_examples() {
        assert_eq!(enum_gt_a32_closed(&int(1), 4).keys(), vec![(4, 7)]);
        let k4 = enum_gt_a32_closed(&int(4), 10);
        assert_eq!(k4.keys(), vec![(6, 3), (8, 4), (9, 4), (10, 4), (10, 5)]);
        assert!(k4.get(10, 5).unwrap().requires_non_hyperelliptic);
        assert!(!k4.get(10, 4).unwrap().requires_non_hyperelliptic);
    }

    #[test]
    fn kodaira_zero_examples() {
        assert_eq!(enum_kod0_a31(&int(4), 5).0.keys(), vec![(5, 4)]);
        assert_eq!(enum_kod0_a31(&int(8), 3).0.keys(), vec![(3, 2)]);
        let (empty, note) = enum_kod0_a31(&int(6), 40);
        assert!(empty.is_empty() && note.is_some());
        let h3 = enum_kod0_a32_closed(&int(6), 12);
        assert_eq!(h3.keys(), vec![(6, 2), (7, 2), (10, 3), (11, 3), (12, 3)]);
    }

    #[test]
    fn parameter_families() {
        assert_eq!(
            enum_delpezzo(&int(1), 3).keys(),
            vec![(2, 3), (5, 7), (8, 11)]
        );
        assert_eq!(enum_delpezzo(&int(2), 1).keys(), vec![(5, 6)]);
        assert_eq!(enum_elliptic_product(&int(2), 1).keys(), vec![(9, 8)]);
        assert!(enum_elliptic_product(&int(3), 1).contains(27, 22));
        assert!(enum_elliptic_product(&int(4), 0).contains(5, 4));
        assert!(enum_isogenous(&int(3), &int(2), 3).contains(9, 8));
        assert!(enum_isogenous(&int(2), &int(2), 16).is_empty());
    }

    #[test]
    fn bicanonical_pairs_need_odd_parameter() {
        let model = build(SurfaceFamily::GeneralTypeBicanonical {
            ksq: int(6),
            chi: None,
        });
        assert_eq!(exact_degree_pair(&model, &int(1)), Some((int(5), int(8))));
        assert_eq!(exact_degree_pair(&model, &int(2)), None);
    }
}
