//! Brute-force scan of the `(r, m)` box against the A3 inequalities.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{Condition, ConditionFilter, EnumerationError, PairEntry, PairSet, SearchBox};
use crate::admissibility::{check_a3, hyperelliptic_rule, A3Verdict, HyperellipticRule};
use crate::surface::SurfaceModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

struct Scan<'a> {
    genus: &'a BigInt,
    degree_per_m: &'a BigInt,
    rule: HyperellipticRule,
    filter: ConditionFilter,
    m_max: u64,
}

impl Scan<'_> {
    fn row(&self, r: u64) -> Vec<PairEntry> {
        let r_big = BigInt::from(r);
        let g = self.genus;
        let exact = &r_big * g + 1;
        let upper = std::cmp::max(exact, std::cmp::min(&r_big * 2, &r_big + g * 2));
        let mut out = Vec::new();
        for m in 1..=self.m_max {
            let m_big = BigInt::from(m);
            let d = &m_big * self.degree_per_m;
            if d > upper {
                break;
            }
            let verdict = check_a3(&d, g, &r_big);
            let dagger = match verdict {
                A3Verdict::Fails => continue,
                A3Verdict::ExactDegree => false,
                A3Verdict::Window { d_equals_2r } => {
                    if !d_equals_2r {
                        false
                    } else {
                        match self.rule {
                            HyperellipticRule::AlwaysHyperelliptic => continue,
                            HyperellipticRule::Unknown => true,
                            HyperellipticRule::NeverHyperelliptic => false,
                        }
                    }
                }
            };
            let condition = Condition::of(verdict).expect("verdict passed");
            if self.filter.admits(condition) {
                out.push(PairEntry::new(r_big.clone(), m_big, condition).with_dagger(dagger));
            }
        }
        out
    }

    fn run(&self, bounds: SearchBox, exec: Execution) -> Vec<PairEntry> {
        if bounds.r_max < 2 {
            return Vec::new();
        }
        match exec {
            Execution::Sequential => (2..=bounds.r_max).flat_map(|r| self.row(r)).collect(),
            Execution::Parallel => (2..=bounds.r_max)
                .into_par_iter()
                .map(|r| self.row(r))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect(),
        }
    }
}

/// Every `(r, m)` in the box with `r ≥ 2`, `m ≥ 1` satisfying A3 for the
/// model's `d(m) = m · (L-generator · H)` and `g(C)`.
///
/// At `d = 2r` a pair is dropped when the curve is always hyperelliptic and
/// flagged when that is unknown.
pub fn raw_pairs(
    model: &SurfaceModel,
    bounds: SearchBox,
    filter: ConditionFilter,
    exec: Execution,
) -> Result<PairSet, EnumerationError> {
    bounds.ensure_scannable()?;
    let genus = model.curve_genus()?;
    if genus < BigInt::from(2) {
        return Ok(PairSet::empty(bounds));
    }
    let degree_per_m = model.restricted_degree(&BigInt::from(1))?;
    let scan = Scan {
        genus: &genus,
        degree_per_m: &degree_per_m,
        rule: hyperelliptic_rule(model, &genus),
        filter,
        m_max: bounds.m_max,
    };
    Ok(PairSet::new(bounds, scan.run(bounds, exec)))
}

/// Window pairs only, from bare numbers: `g(C)`, `d(1)` and the
/// hyperellipticity rule. Requires `genus ≥ 2`.
pub fn raw_window_pairs(
    genus: &BigInt,
    degree_per_m: &BigInt,
    rule: HyperellipticRule,
    bounds: SearchBox,
    exec: Execution,
) -> Result<PairSet, EnumerationError> {
    bounds.ensure_scannable()?;
    assert!(*genus >= BigInt::from(2), "genus must be at least 2");
    let scan = Scan {
        genus,
        degree_per_m,
        rule,
        filter: ConditionFilter::Window,
        m_max: bounds.m_max,
    };
    Ok(PairSet::new(bounds, scan.run(bounds, exec)))
}

/// A3(2) pairs from `g` and `d(1)` alone. Genus 2 drops the `d = 2r`
/// pairs; otherwise they are kept with the dagger.
pub fn enum_a32_raw(
    g: &BigInt,
    dsq: &BigInt,
    r_max: u64,
    m_max: u64,
) -> Result<PairSet, EnumerationError> {
    let rule = if *g == BigInt::from(2) {
        HyperellipticRule::AlwaysHyperelliptic
    } else {
        HyperellipticRule::Unknown
    };
    raw_window_pairs(
        g,
        dsq,
        rule,
        SearchBox::new(r_max, m_max),
        Execution::Parallel,
    )
}
