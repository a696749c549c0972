//! Stored characterisation tables for the window condition A3(2), and the
//! standard families `S` (canonical polarization) and `T` (`K_S ≡ 0`).
//!
//! Rows are kept exactly as printed. Where a printed row disagrees with the
//! inequalities it summarises, the disagreement is listed in [`ERRATA`] and
//! the enumerators use the corrected reading unless asked for the printed one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::SearchBox;

/// Identifier of the general-type table (`H = K_S`).
pub const CANONICAL_TABLE: &str = "sgt-a32";
/// Identifier of the `K_S ≡ 0` table (`h = H²/2`).
pub const KODAIRA_ZERO_TABLE: &str = "kod0-a32";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TableReading {
    /// Rows exactly as printed, including coordinate typos.
    Printed,
    /// Rows with every entry of [`ERRATA`] applied.
    #[default]
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowItem {
    Pair { r: i64, m: i64, dagger: bool },
    Pattern { text: &'static str, dagger: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub key: &'static str,
    pub sporadic: &'static [RowItem],
    pub standard: &'static str,
}

const fn pair(r: i64, m: i64, dagger: bool) -> RowItem {
    RowItem::Pair { r, m, dagger }
}

const fn pattern(text: &'static str, dagger: bool) -> RowItem {
    RowItem::Pattern { text, dagger }
}

/// General type, `H = K_S`, `L = mK_S`; rows keyed by `K_S²`.
pub const CANONICAL_ROWS: [TableRow; 6] = [
    TableRow {
        key: "1",
        sporadic: &[pair(4, 7, false)],
        standard: "S_5",
    },
    TableRow {
        key: "2",
        sporadic: &[
            pair(4, 4, true),
            pair(5, 5, true),
            pair(6, 6, true),
            pair(6, 5, false),
        ],
        standard: "S_7",
    },
    TableRow {
        key: "3",
        sporadic: &[pair(6, 4, true), pair(7, 4, false)],
        standard: "S_8",
    },
    TableRow {
        key: "4",
        sporadic: &[
            pair(6, 3, true),
            pair(8, 4, true),
            pair(10, 5, true),
            pair(9, 4, false),
            pair(10, 4, false),
        ],
        standard: "S_11",
    },
    TableRow {
        key: ">=5 odd",
        sporadic: &[
            pattern("(4,2K^2)", true),
            pattern("{(r,3) : ceil(3K^2/2) < r <= 2K^2-2}", false),
        ],
        standard: "S_{2K^2+1}",
    },
    TableRow {
        key: ">=5 even",
        sporadic: &[
            pattern("(3,3K^2/2)", true),
            pattern("(4,2K^2)", true),
            pattern("{(r,3) : 3K^2/2 < r <= 2K^2-2}", false),
        ],
        standard: "S_{2K^2+1}",
    },
];

/// `K_S ≡ 0`, `L = mH`; rows keyed by `h = H²/2`. Daggers in the last row
/// apply only when `K_S` is not trivial.
pub const KODAIRA_ZERO_ROWS: [TableRow; 4] = [
    TableRow {
        key: "2",
        sporadic: &[
            pair(4, 2, false),
            pair(6, 3, false),
            pair(7, 3, false),
            pair(8, 3, false),
        ],
        standard: "T_4",
    },
    TableRow {
        key: "3",
        sporadic: &[pair(6, 2, false), pair(7, 2, false)],
        standard: "T_3",
    },
    TableRow {
        key: "4",
        sporadic: &[pair(8, 2, false), pair(9, 2, false), pair(10, 2, false)],
        standard: "T_3",
    },
    TableRow {
        key: ">=5",
        sporadic: &[
            pattern("(2h,2)", true),
            pattern("(2h+1,2)", false),
            pattern("([2h+2,b_2] & Z) x {2}", false),
        ],
        standard: "T_3",
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Erratum {
    pub table: &'static str,
    pub row: &'static str,
    pub printed: &'static str,
    pub corrected: &'static str,
    pub reason: &'static str,
}

pub const ERRATA: [Erratum; 4] = [
    Erratum {
        table: CANONICAL_TABLE,
        row: ">=5",
        printed: "(4,2K^2)",
        corrected: "(2K^2,4)",
        reason: "coordinates swapped: the boundary pair with d = 2r is r = 2K^2, m = 4",
    },
    Erratum {
        table: CANONICAL_TABLE,
        row: ">=5 even",
        printed: "(3,3K^2/2)",
        corrected: "(3K^2/2,3)",
        reason: "coordinates swapped: the boundary pair with d = 2r is r = 3K^2/2, m = 3",
    },
    Erratum {
        table: CANONICAL_TABLE,
        row: ">=5 odd",
        printed: "ceil(3K^2/2) < r",
        corrected: "ceil(3K^2/2) <= r",
        reason: "r = (3K^2+1)/2, m = 3 satisfies r+g+1 <= d = 3K^2 < 2r",
    },
    Erratum {
        table: "gt-bicanonical-a31",
        row: "a",
        printed: "a even",
        corrected: "a odd",
        reason: "m = (a(3K^2+1)-3)/2 is an integer only for odd a when K^2 is even",
    },
];

/// A concrete sporadic pair after instantiating a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SporadicPair {
    pub r: BigInt,
    pub m: BigInt,
    pub dagger: bool,
}

fn sp(r: BigInt, m: BigInt, dagger: bool) -> SporadicPair {
    SporadicPair { r, m, dagger }
}

pub fn canonical_row(ksq: &BigInt) -> Option<&'static TableRow> {
    let five = BigInt::from(5);
    if *ksq < BigInt::one() {
        None
    } else if *ksq < five {
        let idx: usize = ksq.to_string().parse::<usize>().ok()? - 1;
        CANONICAL_ROWS.get(idx)
    } else if ksq.is_odd() {
        Some(&CANONICAL_ROWS[4])
    } else {
        Some(&CANONICAL_ROWS[5])
    }
}

/// Sporadic pairs of the general-type table for `K_S² = ksq`.
pub fn canonical_sporadic(ksq: &BigInt, reading: TableReading) -> Vec<SporadicPair> {
    let Some(row) = canonical_row(ksq) else {
        return Vec::new();
    };
    if *ksq < BigInt::from(5) {
        return row
            .sporadic
            .iter()
            .filter_map(|item| match *item {
                RowItem::Pair { r, m, dagger } => Some(sp(r.into(), m.into(), dagger)),
                RowItem::Pattern { .. } => None,
            })
            .collect();
    }
    let k = ksq;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let four = BigInt::from(4);
    let mut out = Vec::new();
    let boundary_4 = match reading {
        TableReading::Printed => sp(four.clone(), k * 2, true),
        TableReading::Corrected => sp(k * 2, four.clone(), true),
    };
    let first_m3 = if k.is_even() {
        let half: BigInt = k * 3 / 2;
        out.push(match reading {
            TableReading::Printed => sp(three.clone(), half.clone(), true),
            TableReading::Corrected => sp(half.clone(), three.clone(), true),
        });
        half + 1
    } else {
        let triple: BigInt = k * 3;
        let ceil = triple.div_ceil(&two);
        match reading {
            TableReading::Printed => ceil + 1,
            TableReading::Corrected => ceil,
        }
    };
    out.push(boundary_4);
    let last_m3 = k * 2 - 2;
    let mut r = first_m3;
    while r <= last_m3 {
        out.push(sp(r.clone(), three.clone(), false));
        r += 1;
    }
    out
}

/// First rank of the standard family `S_r̄` for `K_S² = ksq`.
pub fn canonical_standard_start(ksq: &BigInt) -> BigInt {
    match ksq.to_string().as_str() {
        "1" => 5.into(),
        "2" => 7.into(),
        "3" => 8.into(),
        "4" => 11.into(),
        _ => ksq * 2 + 1,
    }
}

/// Members of `S_start` inside the box, with `m(r) = 1 + (r+2)/K_S²`.
pub fn standard_s_set(ksq: &BigInt, start: &BigInt, bounds: SearchBox) -> Vec<(BigInt, BigInt)> {
    let r_max = BigInt::from(bounds.r_max);
    let m_max = BigInt::from(bounds.m_max);
    let mut out = Vec::new();
    let mut r = start.clone();
    while r <= r_max {
        let shifted: BigInt = &r + 2;
        let (quotient, remainder) = shifted.div_rem(ksq);
        let ms: Vec<BigInt> = if remainder.is_zero() {
            let base: BigInt = quotient + 1;
            vec![base.clone(), base + 1]
        } else {
            vec![shifted.div_ceil(ksq) + 1]
        };
        for m in ms {
            if m <= m_max {
                out.push((r.clone(), m));
            }
        }
        r += 1;
    }
    out
}

pub fn kodaira_zero_row(h: &BigInt) -> Option<&'static TableRow> {
    match h.to_string().as_str() {
        "2" => Some(&KODAIRA_ZERO_ROWS[0]),
        "3" => Some(&KODAIRA_ZERO_ROWS[1]),
        "4" => Some(&KODAIRA_ZERO_ROWS[2]),
        _ if *h >= BigInt::from(5) => Some(&KODAIRA_ZERO_ROWS[3]),
        _ => None,
    }
}

/// Sporadic pairs of the `K_S ≡ 0` table for `h = H²/2`.
pub fn kodaira_zero_sporadic(h: &BigInt, trivial_canonical: bool) -> Vec<SporadicPair> {
    let Some(row) = kodaira_zero_row(h) else {
        return Vec::new();
    };
    if *h < BigInt::from(5) {
        return row
            .sporadic
            .iter()
            .filter_map(|item| match *item {
                RowItem::Pair { r, m, dagger } => Some(sp(r.into(), m.into(), dagger)),
                RowItem::Pattern { .. } => None,
            })
            .collect();
    }
    let two = BigInt::from(2);
    let mut out = vec![
        sp(h * 2, two.clone(), !trivial_canonical),
        sp(h * 2 + 1, two.clone(), false),
    ];
    let (_, b2) = t_interval(h, &two);
    let mut r: BigInt = h * 2 + 2;
    while r <= b2 {
        out.push(sp(r.clone(), two.clone(), false));
        r += 1;
    }
    out
}

/// First `m` of the standard family `T_m̄` for `h = H²/2`.
pub fn kodaira_zero_standard_start(h: &BigInt) -> BigInt {
    if *h == BigInt::from(2) {
        4.into()
    } else {
        3.into()
    }
}

/// `[a_m, b_m]` with `a_m = h(2m-2) - 2` and `b_m = a_m + h`.
pub fn t_interval(h: &BigInt, m: &BigInt) -> (BigInt, BigInt) {
    let a = h * (m * 2 - 2) - 2;
    let b = &a + h;
    (a, b)
}

/// Members of `T_start` inside the box.
pub fn standard_t_set(h: &BigInt, start: &BigInt, bounds: SearchBox) -> Vec<(BigInt, BigInt)> {
    let r_max = BigInt::from(bounds.r_max);
    let m_max = BigInt::from(bounds.m_max);
    let mut out = Vec::new();
    let mut m = start.clone();
    while m <= m_max {
        let (a, b) = t_interval(h, &m);
        if a > r_max {
            break;
        }
        let mut r = a;
        while r <= b && r <= r_max {
            out.push((r.clone(), m.clone()));
            r += 1;
        }
        m += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn keys(pairs: &[SporadicPair]) -> Vec<(String, String, bool)> {
        pairs
            .iter()
            .map(|p| (p.r.to_string(), p.m.to_string(), p.dagger))
            .collect()
    }

    #[test]
    fn printed_and_corrected_rows_differ_only_by_errata() {
        let printed = canonical_sporadic(&int(5), TableReading::Printed);
        let corrected = canonical_sporadic(&int(5), TableReading::Corrected);
        assert_eq!(keys(&printed), vec![("4".into(), "10".into(), true)]);
        assert_eq!(
            keys(&corrected),
            vec![
                ("10".into(), "4".into(), true),
                ("8".into(), "3".into(), false)
            ]
        );
        let even = canonical_sporadic(&int(6), TableReading::Corrected);
        assert_eq!(
            keys(&even),
            vec![
                ("9".into(), "3".into(), true),
                ("12".into(), "4".into(), true),
                ("10".into(), "3".into(), false)
            ]
        );
    }

    #[test]
    fn t_intervals_are_disjoint_with_gap_h() {
        for h in 2..=12 {
            let h = int(h);
            for m in 2..=20 {
                let (a, b) = t_interval(&h, &int(m));
                assert_eq!(&b - &a, h);
                let (next_a, _) = t_interval(&h, &int(m + 1));
                assert_eq!(next_a - b, h);
            }
        }
    }

    #[test]
    fn s_set_first_members() {
        let s = standard_s_set(&int(3), &int(8), SearchBox::new(10, 100));
        let got: Vec<(String, String)> = s
            .iter()
            .map(|(r, m)| (r.to_string(), m.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("8".into(), "5".into()),
                ("9".into(), "5".into()),
                ("10".into(), "5".into()),
                ("10".into(), "6".into())
            ]
        );
    }

    #[test]
    fn kodaira_zero_large_h_row() {
        let rows = kodaira_zero_sporadic(&int(5), false);
        assert_eq!(
            keys(&rows),
            vec![
                ("10".into(), "2".into(), true),
                ("11".into(), "2".into(), false),
                ("12".into(), "2".into(), false),
                ("13".into(), "2".into(), false)
            ]
        );
        assert!(!kodaira_zero_sporadic(&int(5), true)[0].dagger);
    }
}
