//! Invariant grids run by `moduli-lab selfcheck`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::admissibility::{check_a3, check_collection, A3Verdict, Admissibility, Collection};
use crate::enumeration::{
    closed_coverage, closed_pairs, cross_check, raw_pairs, Condition, ConditionFilter, Execution,
    SearchBox, TableReading,
};
use crate::lattice::{ChernTotal, DivisorClass, IntersectionForm};
use crate::moduli::{
    curve_grassmannian_dim, destabilizer_degree_bound, dimension_report, discriminant,
    expected_moduli_dim,
};
use crate::surface::{SurfaceFamily, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn outcome(name: &'static str, failures: Vec<String>, cases: usize) -> CheckOutcome {
    CheckOutcome {
        name,
        passed: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{cases} cases"),
            Some(first) => format!("{} of {cases} failed; first: {first}", failures.len()),
        },
    }
}

/// Canonical and `K_S ≡ 0` models whose tables are cross-checked.
pub fn tabulated_models() -> Vec<SurfaceModel> {
    let mut out = Vec::new();
    for k in 1..=6 {
        out.push(SurfaceFamily::GeneralTypeCanonical {
            ksq: int(k),
            chi: None,
        });
    }
    for hsq in (4..=16).step_by(2) {
        out.push(SurfaceFamily::k3(int(hsq)));
        if hsq >= 10 {
            out.push(SurfaceFamily::KodairaZero {
                hsq: int(hsq),
                chi: Some(int(1)),
                k3: false,
                trivial_canonical: false,
            });
        }
    }
    out.into_iter()
        .map(|f| SurfaceModel::build(f).expect("valid family"))
        .collect()
}

/// Models with an A3(1) parametrisation, over the small parameter grid.
pub fn parametrised_models() -> Vec<SurfaceModel> {
    let mut out = Vec::new();
    for k in 1..=9 {
        out.push(SurfaceFamily::GeneralTypeCanonical {
            ksq: int(k),
            chi: None,
        });
    }
    for k in (6..=12).step_by(2) {
        out.push(SurfaceFamily::GeneralTypeBicanonical {
            ksq: int(k),
            chi: None,
        });
    }
    for hsq in (4..=20).step_by(4) {
        out.push(SurfaceFamily::k3(int(hsq)));
    }
    for e in 1..=9 {
        out.push(SurfaceFamily::DelPezzo { degree: int(e) });
    }
    for g in 2..=6 {
        out.push(SurfaceFamily::EllipticProduct { genus: int(g) });
        for order in 2..=(2 * g - 2) {
            if (2 * g - 2) % order == 0 {
                out.push(SurfaceFamily::IsogenousProduct {
                    genus: int(g),
                    group_order: int(order),
                });
            }
        }
    }
    out.into_iter()
        .map(|f| SurfaceModel::build(f).expect("valid family"))
        .collect()
}

fn table_cross_checks() -> CheckOutcome {
    let mut failures = Vec::new();
    let models = tabulated_models();
    for model in &models {
        let bounds = match model.family() {
            SurfaceFamily::GeneralTypeCanonical { .. } => SearchBox::new(40, 40),
            _ => SearchBox::new(40, 8),
        };
        let filter = closed_coverage(model);
        let closed = closed_pairs(model, bounds, None, filter, TableReading::Corrected)
            .expect("bounded")
            .pairs;
        let raw = raw_pairs(model, bounds, filter, Execution::Parallel).expect("scannable");
        let report = cross_check(&closed, &raw);
        if let Some(d) = report.discrepancies.first() {
            failures.push(format!(
                "{} ({},{}): {}",
                model.family().tag(),
                d.r,
                d.m,
                d.detail
            ));
        }
    }
    outcome(
        "closed tables agree with the raw window",
        failures,
        models.len(),
    )
}

fn exact_degree_soundness() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for model in parametrised_models() {
        let genus = model.curve_genus().expect("genus");
        let cap = int(16);
        let set = closed_pairs(
            &model,
            SearchBox::new(2000, u64::MAX),
            Some(&cap),
            ConditionFilter::ExactDegree,
            TableReading::Corrected,
        )
        .expect("bounded")
        .pairs;
        for pair in &set {
            cases += 1;
            let d = model.restricted_degree(&pair.m).expect("m >= 1");
            if d != &pair.r * &genus + 1 {
                failures.push(format!("{} {}", model.family().tag(), pair));
            }
        }
    }
    outcome("A3(1) pairs satisfy d = rg + 1", failures, cases)
}

fn a3_grid() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for g in 2..=20i64 {
        for r in 2..=20i64 {
            let (gb, rb) = (int(g), int(r));
            for d in 0..=500i64 {
                cases += 1;
                match check_a3(&int(d), &gb, &rb) {
                    A3Verdict::Fails => {}
                    A3Verdict::ExactDegree => {
                        if d < 2 * g + 1 {
                            failures.push(format!("d={d} g={g} r={r}: d < 2g+1"));
                        }
                    }
                    A3Verdict::Window { .. } => {
                        if d == r * g + 1 || r < g + 1 || d < 2 * g + 1 {
                            failures.push(format!("d={d} g={g} r={r}: window bounds"));
                        }
                    }
                }
            }
        }
    }
    outcome(
        "A3 branches exclusive, window implies r >= g+1",
        failures,
        cases,
    )
}

fn kernel_identity() -> CheckOutcome {
    let form = IntersectionForm::hyperbolic("A", "B", int(1));
    let mut failures = Vec::new();
    let mut cases = 0;
    for a in -4..=4i64 {
        for b in -4..=4i64 {
            let ell = DivisorClass::from_ints(&[a, b]);
            let lsq = form.square(&ell).expect("rank 2");
            for r in 2..=10i64 {
                cases += 1;
                let total = ChernTotal::trivial(int(r + 1), 2).expect("rank > 0");
                let sub = ChernTotal::line_bundle(-&ell);
                match total.quotient_by(&sub, &form) {
                    Ok(q) if *q.rank() == int(r) && *q.c1() == ell && *q.c2() == lsq => {}
                    other => failures.push(format!("l={ell} r={r}: {other:?}")),
                }
            }
        }
    }
    outcome("c(E_W) = (r, l, l^2)", failures, cases)
}

fn genus_grid() -> CheckOutcome {
    let mut failures = Vec::new();
    let models = parametrised_models();
    for model in &models {
        let genus = model.curve_genus().expect("genus");
        if genus != model.family().closed_form_genus() {
            failures.push(format!("{:?}: {genus}", model.family()));
        }
    }
    outcome(
        "adjunction genus matches the closed forms",
        failures,
        models.len(),
    )
}

fn dimension_identities() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for r in 2..=30i64 {
        for lsq in (0..=60i64).step_by(3) {
            for chi in -2..=5i64 {
                cases += 1;
                let (rb, lb, cb) = (int(r), int(lsq), int(chi));
                let edim = expected_moduli_dim(&rb, &lb, &lb, &cb);
                if edim != int((r + 1) * (lsq - (r - 1) * chi)) {
                    failures.push(format!("edim r={r} L2={lsq} chi={chi}"));
                }
                if discriminant(&rb, &lb, &lb) != int((r + 1) * lsq) {
                    failures.push(format!("delta r={r} L2={lsq}"));
                }
            }
        }
    }
    for g in 2..=50i64 {
        for r in 2..=50i64 {
            cases += 1;
            let d = int(r * g + 1);
            let dim = curve_grassmannian_dim(&int(r), &d, &int(g));
            if dim != Ok(int((r * r - 1) * (g - 1))) {
                failures.push(format!("curve grassmannian g={g} r={r}"));
            }
        }
    }
    outcome("dimension identities", failures, cases)
}

fn destabilizer_grid() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for g in 2..=30i64 {
        for r in 2..=30i64 {
            for s in 1..r {
                cases += 1;
                let bound = destabilizer_degree_bound(&int(g), &int(r), &int(s));
                if bound != Ok(int(s * g + 1)) {
                    failures.push(format!("g={g} r={r} s={s}"));
                }
            }
        }
    }
    outcome("destabilizer degree bound = sg + 1", failures, cases)
}

fn k3_half_dimension() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for hsq in [4, 8, 12, 16] {
        let model = SurfaceModel::build(SurfaceFamily::k3(int(hsq))).expect("K3");
        let pairs = raw_pairs(
            &model,
            SearchBox::new(40, 40),
            ConditionFilter::Any,
            Execution::Parallel,
        )
        .expect("scannable");
        for pair in &pairs {
            let collection =
                Collection::new(&model, pair.r.clone(), pair.m.clone()).expect("r >= 2");
            let report = check_collection(&collection).expect("report");
            if report.outcome == Admissibility::NotAdmissible {
                continue;
            }
            cases += 1;
            let dims = dimension_report(&model, &pair.r, &pair.m).expect("K3 has chi");
            if dims.lagrangian != Some(true) || dims.discriminant <= BigInt::zero() {
                failures.push(format!(
                    "H^2={hsq} {pair}: lagrangian {:?}",
                    dims.lagrangian
                ));
            }
            let primitive = dims.mukai.as_ref().is_some_and(|mk| mk.primitive);
            if pair.condition == Condition::ExactDegree && !primitive {
                failures.push(format!("H^2={hsq} {pair}: Mukai vector not primitive"));
            }
        }
    }
    outcome(
        "K3: 2 dim Gr = edim, A3(1) Mukai vectors primitive",
        failures,
        cases,
    )
}

fn scan_determinism() -> CheckOutcome {
    let mut failures = Vec::new();
    let models = tabulated_models();
    for model in &models {
        let bounds = SearchBox::new(40, 40);
        let seq = raw_pairs(model, bounds, ConditionFilter::Any, Execution::Sequential);
        let par = raw_pairs(model, bounds, ConditionFilter::Any, Execution::Parallel);
        if seq != par {
            failures.push(model.family().tag().to_string());
        }
    }
    outcome(
        "parallel scan equals sequential scan",
        failures,
        models.len(),
    )
}

/// Runs every invariant grid.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        kernel_identity(),
        genus_grid(),
        a3_grid(),
        exact_degree_soundness(),
        table_cross_checks(),
        scan_determinism(),
        dimension_identities(),
        destabilizer_grid(),
        k3_half_dimension(),
    ]
}
