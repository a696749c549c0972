//! Acceptance suite: eight criteria, one PASS/FAIL line each.
//! Expected table rows are written out here independently of the library.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use moduli_lab::admissibility::{check_collection, Admissibility, Collection};
use moduli_lab::enumeration::{
    closed_pairs, cross_check, exact_degree_pair, exact_degree_parameter_start, raw_pairs,
    Condition, ConditionFilter, Execution, SearchBox, TableReading,
};
use moduli_lab::lattice::{whitney_solve_sub, ChernTotal, DivisorClass, IntersectionForm};
use moduli_lab::moduli::{
    curve_grassmannian_dim, destabilizer_degree_bound, dimension_report, discriminant,
    expected_moduli_dim, mukai_lagrangian,
};
use moduli_lab::surface::{SurfaceFamily, SurfaceModel};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed_2024;
const LIMIT: Duration = Duration::from_secs(1);
const CLI_LIMIT: Duration = Duration::from_secs(5);
/// Every comparison below is exact integer equality.
const TOLERANCE: i64 = 0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);
/// `(r, m, dagger)`.
type Row = BTreeSet<(i64, i64, bool)>;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn small(v: &BigInt) -> i64 {
    i64::try_from(v).expect("small value")
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn build(family: SurfaceFamily) -> SurfaceModel {
    SurfaceModel::build(family).expect("valid family")
}

/// Runs the `enumerate --strategy both` pipeline and returns the A3(2) part
/// of the displayed set; fails on any cross-check discrepancy.
fn window_with_cross_check(model: &SurfaceModel, bounds: SearchBox) -> Result<Row, String> {
    let closed = closed_pairs(
        model,
        bounds,
        None,
        ConditionFilter::Any,
        TableReading::Corrected,
    )
    .map_err(|e| e.to_string())?
    .pairs;
    let raw = raw_pairs(model, bounds, ConditionFilter::Any, Execution::Parallel)
        .map_err(|e| e.to_string())?;
    let report = cross_check(&closed, &raw);
    ensure(report.is_empty(), || {
        format!(
            "{:?}: cross-check {:?}",
            model.family(),
            report.discrepancies
        )
    })?;
    Ok(raw
        .iter()
        .filter(|p| p.condition == Condition::Window)
        .map(|p| (small(&p.r), small(&p.m), p.requires_non_hyperelliptic))
        .collect())
}

fn compare_rows(what: &str, actual: &Row, expected: &Row) -> Result<(), String> {
    ensure(actual == expected, || {
        let missing: Vec<_> = expected.difference(actual).collect();
        let extra: Vec<_> = actual.difference(expected).collect();
        format!("{what}: missing {missing:?}, unexpected {extra:?}")
    })
}

/// Sporadic pairs of the general-type table, corrected reading.
fn canonical_sporadic_expected(k: i64) -> Vec<(i64, i64, bool)> {
    match k {
        1 => vec![(4, 7, false)],
        2 => vec![(4, 4, true), (5, 5, true), (6, 6, true), (6, 5, false)],
        3 => vec![(6, 4, true), (7, 4, false)],
        4 => vec![
            (6, 3, true),
            (8, 4, true),
            (10, 5, true),
            (9, 4, false),
            (10, 4, false),
        ],
        _ => {
            let mut out = vec![(2 * k, 4, true)];
            let first = if k % 2 == 0 {
                out.push((3 * k / 2, 3, true));
                3 * k / 2 + 1
            } else {
                (3 * k + 1) / 2
            };
            out.extend((first..=2 * k - 2).map(|r| (r, 3, false)));
            out
        }
    }
}

fn canonical_standard_start(k: i64) -> i64 {
    match k {
        1 => 5,
        2 => 7,
        3 => 8,
        4 => 11,
        _ => 2 * k + 1,
    }
}

fn canonical_expected(k: i64, r_max: i64, m_max: i64) -> Row {
    let mut row: Row = canonical_sporadic_expected(k).into_iter().collect();
    for r in canonical_standard_start(k)..=r_max {
        let q = r + 2;
        let m = 1 + (q + k - 1) / k;
        row.insert((r, m, false));
        if q % k == 0 {
            row.insert((r, 2 + q / k, false));
        }
    }
    row.retain(|&(r, m, _)| r <= r_max && m <= m_max);
    row
}

fn criterion_1() -> Outcome {
    let bounds = SearchBox::new(40, 40);
    let mut total = 0;
    for k in 1..=6 {
        let model = build(SurfaceFamily::GeneralTypeCanonical {
            ksq: int(k),
            chi: None,
        });
        let actual = window_with_cross_check(&model, bounds)?;
        compare_rows(
            &format!("K^2 = {k}"),
            &actual,
            &canonical_expected(k, 40, 40),
        )?;
        if k == 1 {
            for (r, m) in [(3, 6), (4, 8)] {
                ensure(!actual.iter().any(|p| (p.0, p.1) == (r, m)), || {
                    format!("hyperelliptic pair ({r},{m}) not dropped at K^2 = 1")
                })?;
            }
        }
        total += actual.len();
    }
    Ok(format!(
        "K^2 = 1..6, {total} A3(2) pairs, cross-check empty"
    ))
}

fn kodaira_zero_expected(h: i64, dagger_allowed: bool, r_max: i64, m_max: i64) -> Row {
    let a = |m: i64| h * (2 * m - 2) - 2;
    let (mut row, start): (Row, i64) = match h {
        2 => (
            [(4, 2), (6, 3), (7, 3), (8, 3)]
                .map(|(r, m)| (r, m, false))
                .into(),
            4,
        ),
        3 => ([(6, 2), (7, 2)].map(|(r, m)| (r, m, false)).into(), 3),
        4 => (
            [(8, 2), (9, 2), (10, 2)].map(|(r, m)| (r, m, false)).into(),
            3,
        ),
        _ => {
            let mut row: Row = [(2 * h, 2, dagger_allowed), (2 * h + 1, 2, false)].into();
            row.extend((2 * h + 2..=a(2) + h).map(|r| (r, 2, false)));
            (row, 3)
        }
    };
    for m in start..=m_max {
        row.extend((a(m)..=a(m) + h).map(|r| (r, m, false)));
    }
    row.retain(|&(r, m, _)| r <= r_max && m <= m_max);
    row
}

fn criterion_2() -> Outcome {
    let bounds = SearchBox::new(40, 40);
    let mut surfaces = 0;
    for h in 2..=8i64 {
        let mut models = vec![(build(SurfaceFamily::k3(int(2 * h))), false)];
        if h >= 5 {
            // torsion canonical class (dagger kept) and trivial canonical class off a K3
            for (trivial_canonical, chi) in [(false, 1), (true, 0)] {
                let model = build(SurfaceFamily::KodairaZero {
                    hsq: int(2 * h),
                    chi: Some(int(chi)),
                    k3: false,
                    trivial_canonical,
                });
                models.push((model, !trivial_canonical));
            }
        }
        for (model, dagger) in models {
            let actual = window_with_cross_check(&model, bounds)?;
            let expected = kodaira_zero_expected(h, dagger, 40, 40);
            compare_rows(
                &format!("h = {h}, {:?}", model.family()),
                &actual,
                &expected,
            )?;
            surfaces += 1;
        }
    }
    Ok(format!("h = 2..8, {surfaces} surfaces, cross-check empty"))
}

/// `d` and `g` recomputed on the intersection lattice.
fn lattice_degree_and_genus(model: &SurfaceModel, m: &BigInt) -> (BigInt, BigInt) {
    let form = model.form();
    let l = model.line_generator().scaled(m);
    let d = form.intersect(&l, model.polarization()).unwrap();
    let g = form
        .adjunction_genus(model.polarization(), model.canonical())
        .unwrap();
    (d, g)
}

fn criterion_3() -> Outcome {
    let mut cases: Vec<(SurfaceFamily, i64)> = Vec::new();
    for k in 1..=6 {
        cases.push((
            SurfaceFamily::GeneralTypeCanonical {
                ksq: int(k),
                chi: None,
            },
            16,
        ));
    }
    for k in [6, 8, 10, 12] {
        cases.push((
            SurfaceFamily::GeneralTypeBicanonical {
                ksq: int(k),
                chi: None,
            },
            16,
        ));
    }
    for hsq in (4..=32).step_by(4) {
        cases.push((SurfaceFamily::k3(int(hsq)), 16));
    }
    for e in 1..=9 {
        cases.push((SurfaceFamily::DelPezzo { degree: int(e) }, 16));
    }
    for g in 2..=6 {
        cases.push((SurfaceFamily::EllipticProduct { genus: int(g) }, 8));
        for order in 2..=2 * g - 2 {
            if (2 * g - 2) % order == 0 {
                cases.push((
                    SurfaceFamily::IsogenousProduct {
                        genus: int(g),
                        group_order: int(order),
                    },
                    16,
                ));
            }
        }
    }
    let mut checked = 0;
    let mut even_bicanonical = 0;
    for (family, a_max) in cases {
        let bicanonical = matches!(family, SurfaceFamily::GeneralTypeBicanonical { .. });
        let model = build(family);
        let start = exact_degree_parameter_start(&model).ok_or("no A3(1) parametrisation")?;
        for a in small(&start)..=a_max {
            let Some((r, m)) = exact_degree_pair(&model, &int(a)) else {
                continue;
            };
            ensure(!(bicanonical && a % 2 == 0), || {
                format!("bicanonical pair at even a = {a}")
            })?;
            let (d, g) = lattice_degree_and_genus(&model, &m);
            ensure(&d - (&r * &g + 1) == int(TOLERANCE), || {
                format!(
                    "{:?}, a = {a}: (r, m) = ({r}, {m}), d = {d}, g = {g}",
                    model.family()
                )
            })?;
            checked += 1;
        }
        if bicanonical {
            even_bicanonical += (2..=a_max)
                .step_by(2)
                .filter(|a| exact_degree_pair(&model, &int(*a)).is_none())
                .count();
        }
    }
    Ok(format!(
        "{checked} pairs satisfy d = rg + 1; {even_bicanonical} even bicanonical parameters give no integral pair"
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut checked = 0;
    for r in 2..=10i64 {
        for _ in 0..100 {
            let form = if rng.gen_bool(0.5) {
                IntersectionForm::rank_one("A", int(rng.gen_range(-20..=20)))
            } else {
                let (a, b, c) = (
                    rng.gen_range(-20..=20),
                    rng.gen_range(-20..=20),
                    rng.gen_range(-20..=20),
                );
                IntersectionForm::new(
                    vec!["A", "B"],
                    vec![vec![int(a), int(b)], vec![int(b), int(c)]],
                )
                .map_err(|e| e.to_string())?
            };
            let coefficients: Vec<i64> =
                (0..form.rank()).map(|_| rng.gen_range(-50..=50)).collect();
            let ell = DivisorClass::from_ints(&coefficients);
            // 0 -> L^dual -> W^dual (x) O -> E_W -> 0
            let total = ChernTotal::trivial(int(r + 1), form.rank()).map_err(|e| e.to_string())?;
            let e_w = whitney_solve_sub(&total, &ChernTotal::line_bundle(-&ell), &form)
                .map_err(|e| e.to_string())?;
            let ell_sq = form.square(&ell).map_err(|e| e.to_string())?;
            ensure(
                *e_w.rank() == int(r) && *e_w.c1() == ell && *e_w.c2() == ell_sq,
                || format!("r = {r}, l = {coefficients:?}: got {e_w:?}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cases c(E_W) = (r, l, l^2)"))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 5);
    for _ in 0..10_000 {
        let r: i128 = rng.gen_range(1..=500);
        let lsq: i128 = rng.gen_range(-100_000..=100_000);
        let chi: i128 = rng.gen_range(-50..=50);
        let (rb, lb, cb) = (BigInt::from(r), BigInt::from(lsq), BigInt::from(chi));
        ensure(
            expected_moduli_dim(&rb, &lb, &lb, &cb)
                == BigInt::from((r + 1) * (lsq - (r - 1) * chi)),
            || format!("expected dimension at r = {r}, L^2 = {lsq}, chi = {chi}"),
        )?;
        ensure(
            discriminant(&rb, &lb, &lb) == BigInt::from((r + 1) * lsq),
            || format!("discriminant at r = {r}, L^2 = {lsq}"),
        )?;
    }
    let mut exhaustive = 0;
    for g in 2..=50i64 {
        for r in 1..=50i64 {
            let d = int(r * g + 1);
            let dim = curve_grassmannian_dim(&int(r), &d, &int(g)).map_err(|e| e.to_string())?;
            ensure(dim == int((r * r - 1) * (g - 1)), || {
                format!("g = {g}, r = {r}: {dim}")
            })?;
            exhaustive += 1;
        }
    }
    Ok(format!(
        "10000 random inputs, {exhaustive} curve Grassmannians"
    ))
}

fn criterion_6() -> Outcome {
    let (vector, report) = mukai_lagrangian(&build(SurfaceFamily::k3(int(4))), &int(5), &int(4))
        .map_err(|e| e.to_string())?;
    ensure(
        report.dim_grassmannian == Some(int(168))
            && report.expected_dim_moduli == int(336)
            && vector.to_string() == "(5, 4H, -27)",
        || format!("spot value: {report:?}"),
    )?;
    let bounds = SearchBox::new(40, 40);
    let (mut pairs, mut exact) = (0, 0);
    for hsq in [4, 8, 12, 16] {
        let model = build(SurfaceFamily::k3(int(hsq)));
        let raw = raw_pairs(&model, bounds, ConditionFilter::Any, Execution::Parallel)
            .map_err(|e| e.to_string())?;
        for p in raw.iter() {
            let collection =
                Collection::new(&model, p.r.clone(), p.m.clone()).map_err(|e| e.to_string())?;
            let verdict = check_collection(&collection).map_err(|e| e.to_string())?;
            if verdict.outcome != Admissibility::Admissible {
                continue;
            }
            let report = dimension_report(&model, &p.r, &p.m).map_err(|e| e.to_string())?;
            let dim_gr = report
                .dim_grassmannian
                .clone()
                .ok_or("Grassmannian missing")?;
            ensure(
                &dim_gr * 2 - &report.expected_dim_moduli == int(TOLERANCE),
                || {
                    format!(
                        "hsq = {hsq}, ({}, {}): 2 dim Gr = {}, edim = {}",
                        p.r,
                        p.m,
                        &dim_gr * 2,
                        report.expected_dim_moduli
                    )
                },
            )?;
            ensure(report.lagrangian == Some(true), || {
                format!("lagrangian flag at ({}, {})", p.r, p.m)
            })?;
            if p.condition == Condition::ExactDegree {
                let mukai = report.mukai.as_ref().ok_or("Mukai vector missing")?;
                ensure(mukai.primitive, || {
                    format!("non-primitive {}", mukai.vector)
                })?;
                exact += 1;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} admissible pairs, {exact} primitive A3(1) vectors, spot (168, 336)"
    ))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for g in 2..=30i64 {
        for r in 2..=30i64 {
            for s in 1..r {
                let bound = destabilizer_degree_bound(&int(g), &int(r), &int(s))
                    .map_err(|e| e.to_string())?;
                ensure(bound == int(s * g + 1), || {
                    format!("g = {g}, r = {r}, s = {s}: {bound}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples"))
}

fn criterion_8() -> Outcome {
    let mut runs = 0;
    for fixture in &common::MATRIX {
        for (format, ext) in common::FORMATS {
            common::check_fixture(fixture, format, ext)?;
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} invocations byte-identical, exit codes honoured"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("general type A3(2) table", criterion_1, LIMIT),
        ("K_S = 0 A3(2) table", criterion_2, LIMIT),
        ("A3(1) soundness", criterion_3, LIMIT),
        ("Chern identity", criterion_4, LIMIT),
        ("dimension identities", criterion_5, LIMIT),
        ("K3 Lagrangian pipeline", criterion_6, LIMIT),
        ("destabilizer bound", criterion_7, LIMIT),
        ("CLI contract", criterion_8, CLI_LIMIT),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= limit => format!("PASS  {detail}"),
            Ok(detail) => format!("FAIL  {detail}; took {elapsed:.2?}, limit {limit:.0?}"),
            Err(why) => format!("FAIL  {why}"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!(
            "criterion {} ({name}): {line} [{:.3} s]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
