//! Enumeration of admissible `(r, m)` pairs, once from the closed-form
//! characterisations and once straight from the A3 inequalities.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::admissibility::A3Verdict;
use crate::serde_int;
use crate::surface::SurfaceError;

pub mod closed;
pub mod cross_check;
pub mod raw;
pub mod tables;

pub use closed::{
    closed_coverage, closed_pairs, enum_delpezzo, enum_elliptic_product, enum_gt_a31,
    enum_gt_a32_closed, enum_isogenous, enum_kod0_a31, enum_kod0_a32_closed, exact_degree_pair,
    exact_degree_parameter_start, ClosedEnumeration,
};
pub use cross_check::{cross_check, CrossCheckReport, Discrepancy, DiscrepancyKind};
pub use raw::{enum_a32_raw, raw_pairs, raw_window_pairs, Execution};
pub use tables::TableReading;

/// Largest `r_max · m_max` a raw scan will accept.
pub const MAX_BOX_AREA: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("search box r <= {r_max}, m <= {m_max} is too large for a raw scan")]
    UnboundedBox { r_max: u64, m_max: u64 },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Upper bounds of the `(r, m)` search box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBox {
    pub r_max: u64,
    pub m_max: u64,
}

impl SearchBox {
    pub const fn new(r_max: u64, m_max: u64) -> Self {
        Self { r_max, m_max }
    }

    /// Box bounded in `r` only; closed forms are fine with it, raw scans are not.
    pub const fn rank_only(r_max: u64) -> Self {
        Self {
            r_max,
            m_max: u64::MAX,
        }
    }

    pub const fn unbounded() -> Self {
        Self {
            r_max: u64::MAX,
            m_max: u64::MAX,
        }
    }

    pub fn contains(&self, r: &BigInt, m: &BigInt) -> bool {
        *r <= BigInt::from(self.r_max) && *m <= BigInt::from(self.m_max)
    }

    pub(crate) fn ensure_scannable(&self) -> Result<(), EnumerationError> {
        if u128::from(self.r_max) * u128::from(self.m_max) > MAX_BOX_AREA {
            return Err(EnumerationError::UnboundedBox {
                r_max: self.r_max,
                m_max: self.m_max,
            });
        }
        Ok(())
    }
}

impl Default for SearchBox {
    fn default() -> Self {
        Self::new(64, 64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "A3(1)")]
    ExactDegree,
    #[serde(rename = "A3(2)")]
    Window,
}

impl Condition {
    pub fn of(verdict: A3Verdict) -> Option<Self> {
        match verdict {
            A3Verdict::ExactDegree => Some(Condition::ExactDegree),
            A3Verdict::Window { .. } => Some(Condition::Window),
            A3Verdict::Fails => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::ExactDegree => "A3(1)",
            Condition::Window => "A3(2)",
        })
    }
}

/// Which A3 branches an enumeration should report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ConditionFilter {
    #[default]
    Any,
    ExactDegree,
    Window,
}

impl ConditionFilter {
    pub fn admits(&self, condition: Condition) -> bool {
        match self {
            ConditionFilter::Any => true,
            ConditionFilter::ExactDegree => condition == Condition::ExactDegree,
            ConditionFilter::Window => condition == Condition::Window,
        }
    }

    /// Conditions admitted by both filters, or `None` if they share none.
    pub fn intersect(self, other: ConditionFilter) -> Option<ConditionFilter> {
        match (self, other) {
            (ConditionFilter::Any, x) | (x, ConditionFilter::Any) => Some(x),
            (x, y) if x == y => Some(x),
            _ => None,
        }
    }
}

/// Row of a characterisation table a pair came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableSource {
    Sporadic,
    Standard,
}

impl fmt::Display for TableSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableSource::Sporadic => "sporadic",
            TableSource::Standard => "standard",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairEntry {
    #[serde(with = "serde_int")]
    pub r: BigInt,
    #[serde(with = "serde_int")]
    pub m: BigInt,
    pub condition: Condition,
    /// The dagger flag: admissible only if the general curve in `|H|` is
    /// not hyperelliptic.
    pub requires_non_hyperelliptic: bool,
    pub source: Option<TableSource>,
}

impl PairEntry {
    pub fn new(r: BigInt, m: BigInt, condition: Condition) -> Self {
        Self {
            r,
            m,
            condition,
            requires_non_hyperelliptic: false,
            source: None,
        }
    }

    pub fn with_dagger(mut self, dagger: bool) -> Self {
        self.requires_non_hyperelliptic = dagger;
        self
    }

    pub fn with_source(mut self, source: TableSource) -> Self {
        self.source = Some(source);
        self
    }

    pub fn key(&self) -> (&BigInt, &BigInt) {
        (&self.r, &self.m)
    }

    /// Everything both enumeration strategies can speak to.
    pub fn comparable(&self) -> (&BigInt, &BigInt, Condition, bool) {
        (
            &self.r,
            &self.m,
            self.condition,
            self.requires_non_hyperelliptic,
        )
    }
}

impl fmt::Display for PairEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.m)?;
        if self.requires_non_hyperelliptic {
            f.write_str("†")?;
        }
        Ok(())
    }
}

/// Sorted, duplicate-free set of pairs found inside a search box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSet {
    pairs: Vec<PairEntry>,
    bounds: SearchBox,
}

impl PairSet {
    /// Sorts by `(r, m)` and merges duplicates, keeping the first entry's
    /// condition and table source and OR-ing the dagger flags.
    pub fn new(bounds: SearchBox, entries: impl IntoIterator<Item = PairEntry>) -> Self {
        let mut pairs: Vec<PairEntry> = entries.into_iter().collect();
        pairs.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut merged: Vec<PairEntry> = Vec::with_capacity(pairs.len());
        for entry in pairs {
            match merged.last_mut() {
                Some(last) if last.key() == entry.key() => {
                    debug_assert_eq!(last.condition, entry.condition);
                    last.requires_non_hyperelliptic |= entry.requires_non_hyperelliptic;
                    if last.source.is_none() {
                        last.source = entry.source;
                    }
                }
                _ => merged.push(entry),
            }
        }
        Self {
            pairs: merged,
            bounds,
        }
    }

    pub fn empty(bounds: SearchBox) -> Self {
        Self {
            pairs: Vec::new(),
            bounds,
        }
    }

    pub fn bounds(&self) -> SearchBox {
        self.bounds
    }

    pub fn pairs(&self) -> &[PairEntry] {
        &self.pairs
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PairEntry> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, r: i64, m: i64) -> Option<&PairEntry> {
        let key = (BigInt::from(r), BigInt::from(m));
        self.pairs
            .binary_search_by(|p| p.key().cmp(&(&key.0, &key.1)))
            .ok()
            .map(|i| &self.pairs[i])
    }

    pub fn contains(&self, r: i64, m: i64) -> bool {
        self.get(r, m).is_some()
    }

    /// `(r, m)` tuples as machine integers, for compact assertions.
    pub fn keys(&self) -> Vec<(i64, i64)> {
        use num_traits::ToPrimitive;
        self.pairs
            .iter()
            .map(|p| {
                (
                    p.r.to_i64().expect("r fits in i64"),
                    p.m.to_i64().expect("m fits in i64"),
                )
            })
            .collect()
    }

    pub fn restricted(&self, bounds: SearchBox, filter: ConditionFilter) -> PairSet {
        PairSet {
            pairs: self
                .pairs
                .iter()
                .filter(|p| bounds.contains(&p.r, &p.m) && filter.admits(p.condition))
                .cloned()
                .collect(),
            bounds,
        }
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        PairSet::new(
            self.bounds,
            self.pairs.iter().chain(other.pairs.iter()).cloned(),
        )
    }
}

impl<'a> IntoIterator for &'a PairSet {
    type Item = &'a PairEntry;
    type IntoIter = std::slice::Iter<'a, PairEntry>;

    fn into_iter(self) -> Self::IntoIter {
        self.pairs.iter()
    }
}
