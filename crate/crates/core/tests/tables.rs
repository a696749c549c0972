use moduli_lab::enumeration::tables::{
    canonical_sporadic, kodaira_zero_sporadic, TableReading, CANONICAL_ROWS, ERRATA,
};
use moduli_lab::enumeration::{
    closed_coverage, closed_pairs, cross_check, raw_pairs, Condition, ConditionFilter,
    DiscrepancyKind, Execution, PairEntry, PairSet, SearchBox, TableSource,
};
use moduli_lab::surface::{SurfaceFamily, SurfaceModel};

use num_bigint::BigInt;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn canonical(ksq: i64) -> SurfaceModel {
    SurfaceModel::build(SurfaceFamily::GeneralTypeCanonical {
        ksq: int(ksq),
        chi: None,
    })
    .unwrap()
}

fn window(model: &SurfaceModel, bounds: SearchBox, reading: TableReading) -> (PairSet, PairSet) {
    let closed = closed_pairs(model, bounds, None, ConditionFilter::Window, reading)
        .unwrap()
        .pairs;
    let raw = raw_pairs(
        model,
        bounds,
        ConditionFilter::Window,
        Execution::Sequential,
    )
    .unwrap();
    (closed, raw)
}

#[test]
fn printed_rows_differ_from_raw_only_at_the_errata() {
    for ksq in 5..=12i64 {
        let model = canonical(ksq);
        let bounds = SearchBox::new(40, 40);
        let (printed, raw) = window(&model, bounds, TableReading::Printed);
        let report = cross_check(&printed, &raw);
        let mut only_closed: Vec<(i64, i64)> = Vec::new();
        let mut only_raw: Vec<(i64, i64)> = Vec::new();
        for d in &report.discrepancies {
            let key = (
                d.r.to_string().parse().unwrap(),
                d.m.to_string().parse().unwrap(),
            );
            match d.kind {
                DiscrepancyKind::OnlyClosed => {
                    assert!(d.detail.contains("erratum candidate"));
                    only_closed.push(key)
                }
                DiscrepancyKind::OnlyRaw => only_raw.push(key),
                DiscrepancyKind::FlagMismatch => panic!("unexpected flag mismatch {d:?}"),
            }
        }
        let mut expected_closed = vec![(4, 2 * ksq)];
        let mut expected_raw = vec![(2 * ksq, 4)];
        if ksq % 2 == 0 {
            expected_closed.insert(0, (3, 3 * ksq / 2));
            expected_raw.insert(0, (3 * ksq / 2, 3));
        } else {
            expected_raw.insert(0, ((3 * ksq + 1) / 2, 3));
        }
        expected_closed.retain(|&(r, m)| r <= 40 && m <= 40);
        assert_eq!(only_closed, expected_closed, "K^2 = {ksq}");
        assert_eq!(only_raw, expected_raw, "K^2 = {ksq}");

        let (corrected, raw) = window(&model, bounds, TableReading::Corrected);
        assert!(cross_check(&corrected, &raw).is_empty(), "K^2 = {ksq}");
    }
    assert_eq!(ERRATA.len(), 4);
}

#[test]
fn low_degree_rows_are_stored_verbatim() {
    let row4: Vec<String> = canonical_sporadic(&int(4), TableReading::Printed)
        .iter()
        .map(|p| format!("({},{}){}", p.r, p.m, if p.dagger { "†" } else { "" }))
        .collect();
    assert_eq!(row4, ["(6,3)†", "(8,4)†", "(10,5)†", "(9,4)", "(10,4)"]);
    assert_eq!(CANONICAL_ROWS[3].standard, "S_11");
    assert_eq!(
        canonical_sporadic(&int(2), TableReading::Printed),
        canonical_sporadic(&int(2), TableReading::Corrected)
    );
}

#[test]
fn genus_two_boundary_pairs_are_dropped() {
    let (closed, raw) = window(
        &canonical(1),
        SearchBox::new(40, 40),
        TableReading::Corrected,
    );
    assert!(!raw.contains(3, 6) && !raw.contains(4, 8));
    assert!(cross_check(&closed, &raw).is_empty());
}

#[test]
fn kodaira_zero_daggers_follow_the_canonical_bundle() {
    for h in 5..=8i64 {
        let trivial = kodaira_zero_sporadic(&int(h), true);
        let torsion = kodaira_zero_sporadic(&int(h), false);
        assert!(!trivial[0].dagger && torsion[0].dagger);
        assert_eq!(
            (trivial[0].r.clone(), trivial[0].m.clone()),
            (int(2 * h), int(2))
        );
        let enriques = SurfaceModel::build(SurfaceFamily::KodairaZero {
            hsq: int(2 * h),
            chi: Some(int(1)),
            k3: false,
            trivial_canonical: false,
        })
        .unwrap();
        let bounds = SearchBox::new(40, 8);
        let filter = closed_coverage(&enriques);
        let closed = closed_pairs(&enriques, bounds, None, filter, TableReading::Corrected)
            .unwrap()
            .pairs;
        let raw = raw_pairs(&enriques, bounds, filter, Execution::Parallel).unwrap();
        assert!(cross_check(&closed, &raw).is_empty());
        assert!(raw.get(2 * h, 2).unwrap().requires_non_hyperelliptic);
    }
}

#[test]
fn perturbed_table_is_caught() {
    let model = canonical(2);
    let bounds = SearchBox::new(7, 40);
    let (closed, raw) = window(&model, bounds, TableReading::Corrected);
    assert!(cross_check(&closed, &raw).is_empty());
    let injected =
        PairEntry::new(int(5), int(4), Condition::Window).with_source(TableSource::Sporadic);
    let perturbed = closed.union(&PairSet::new(bounds, [injected]));
    let report = cross_check(&perturbed, &raw);
    assert_eq!(report.discrepancies.len(), 1);
    assert_eq!(report.discrepancies[0].r, int(5));
    assert_eq!(report.discrepancies[0].m, int(4));
}
