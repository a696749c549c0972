//! Symmetric difference of a closed-form and a raw enumeration.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{PairEntry, PairSet, TableSource};
use crate::serde_int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyKind {
    OnlyClosed,
    OnlyRaw,
    FlagMismatch,
}

impl fmt::Display for DiscrepancyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscrepancyKind::OnlyClosed => "only-closed",
            DiscrepancyKind::OnlyRaw => "only-raw",
            DiscrepancyKind::FlagMismatch => "flag-mismatch",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    #[serde(with = "serde_int")]
    pub r: BigInt,
    #[serde(with = "serde_int")]
    pub m: BigInt,
    pub kind: DiscrepancyKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub closed_count: usize,
    pub raw_count: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossCheckReport {
    pub fn is_empty(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn describe(entry: &PairEntry) -> String {
    let dagger = if entry.requires_non_hyperelliptic {
        ", non-hyperelliptic required"
    } else {
        ""
    };
    format!("{}{}", entry.condition, dagger)
}

fn only_closed(entry: &PairEntry) -> Discrepancy {
    let detail = match entry.source {
        Some(TableSource::Sporadic) => format!(
            "tabulated sporadic pair ({}) fails the raw inequalities; erratum candidate",
            describe(entry)
        ),
        Some(TableSource::Standard) => format!(
            "standard-family pair ({}) fails the raw inequalities",
            describe(entry)
        ),
        None => format!(
            "closed form emits ({}) not found by raw scan",
            describe(entry)
        ),
    };
    Discrepancy {
        r: entry.r.clone(),
        m: entry.m.clone(),
        kind: DiscrepancyKind::OnlyClosed,
        detail,
    }
}

fn only_raw(entry: &PairEntry) -> Discrepancy {
    Discrepancy {
        r: entry.r.clone(),
        m: entry.m.clone(),
        kind: DiscrepancyKind::OnlyRaw,
        detail: format!(
            "raw scan finds a pair ({}) absent from the closed characterisation",
            describe(entry)
        ),
    }
}

/// Compares two enumerations pair by pair. The raw side is authoritative;
/// nothing is reconciled here.
pub fn cross_check(closed: &PairSet, raw: &PairSet) -> CrossCheckReport {
    let mut discrepancies = Vec::new();
    let (mut i, mut j) = (0, 0);
    let (a, b) = (closed.pairs(), raw.pairs());
    while i < a.len() || j < b.len() {
        let order = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.key().cmp(&y.key()),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match order {
            Ordering::Less => {
                discrepancies.push(only_closed(&a[i]));
                i += 1;
            }
            Ordering::Greater => {
                discrepancies.push(only_raw(&b[j]));
                j += 1;
            }
            Ordering::Equal => {
                let (x, y) = (&a[i], &b[j]);
                if x.comparable() != y.comparable() {
                    discrepancies.push(Discrepancy {
                        r: x.r.clone(),
                        m: x.m.clone(),
                        kind: DiscrepancyKind::FlagMismatch,
                        detail: format!("closed: {}; raw: {}", describe(x), describe(y)),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    CrossCheckReport {
        closed_count: a.len(),
        raw_count: b.len(),
        discrepancies,
    }
}
