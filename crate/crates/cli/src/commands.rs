//! The subcommands. Each returns the text for stdout and an exit code;
//! diagnostics are written to stderr as they come up.

use std::collections::BTreeMap;

use moduli_lab::admissibility::{check_collection, Admissibility, AdmissibilityReport, Collection};
use moduli_lab::enumeration::tables::{
    self, RowItem, TableRow, CANONICAL_ROWS, CANONICAL_TABLE, ERRATA, KODAIRA_ZERO_ROWS,
    KODAIRA_ZERO_TABLE,
};
use moduli_lab::enumeration::{
    closed_coverage, closed_pairs, cross_check, raw_pairs, ConditionFilter, CrossCheckReport,
    Execution, PairEntry, PairSet, SearchBox, TableReading,
};
use moduli_lab::moduli::{dimension_report, DimensionReport};
use moduli_lab::selfcheck;
use moduli_lab::surface::{h0_restricted, SurfaceError, SurfaceModel};
use moduli_lab::{serde_int, Error};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descriptor::{DescriptorError, SurfaceDescriptor, FORMAT_HEADER};
use crate::output::{json, subscript, Cell, Format, OutputTable};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_ADMISSIBLE: u8 = 1;
pub const EXIT_CONDITIONAL: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

const DAGGER_NOTE: &str = "† : admissible only if the general curve in |H| is not hyperelliptic.";

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Outcome = Result<(String, u8), CommandError>;

pub fn exit_code(outcome: Admissibility) -> u8 {
    match outcome {
        Admissibility::Admissible => EXIT_OK,
        Admissibility::Conditional => EXIT_CONDITIONAL,
        Admissibility::NotAdmissible => EXIT_NOT_ADMISSIBLE,
    }
}

fn core<T, E: Into<Error>>(r: Result<T, E>) -> Result<T, CommandError> {
    r.map_err(|e| CommandError::Core(e.into()))
}

pub fn build_model(descriptor: &SurfaceDescriptor) -> Result<SurfaceModel, CommandError> {
    let family = descriptor.to_family()?;
    core(SurfaceModel::build(family))
}

/// Output of `check` and `dims`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDocument {
    pub format: String,
    pub command: String,
    pub surface: SurfaceDescriptor,
    pub report: AdmissibilityReport,
    #[serde(with = "serde_int::option")]
    pub h0_l: Option<BigInt>,
    #[serde(with = "serde_int::option")]
    pub h0_restricted: Option<BigInt>,
    pub dimensions: Option<DimensionReport>,
    /// Why a quantity is missing, keyed by field name.
    pub unavailable: BTreeMap<String, String>,
    pub warning: Option<String>,
}

fn collection_document(
    command: &str,
    descriptor: &SurfaceDescriptor,
    r: &BigInt,
    m: &BigInt,
) -> Result<CheckDocument, CommandError> {
    let model = build_model(descriptor)?;
    let collection = core(Collection::new(&model, r.clone(), m.clone()))?;
    let report = core(check_collection(&collection))?;
    let mut unavailable = BTreeMap::new();

    let h0_l = match model.h0_of_line_bundle(m) {
        Ok(v) => Some(v),
        Err(SurfaceError::ChiUnknown) => {
            unavailable.insert("h0_l".into(), "chi not supplied".into());
            None
        }
        Err(SurfaceError::VanishingNotJustified { threshold, .. }) => {
            unavailable.insert(
                "h0_l".into(),
                format!("m below the vanishing threshold {threshold}"),
            );
            None
        }
        Err(e) => return Err(CommandError::Core(e.into())),
    };
    let h0_restricted = match h0_restricted(&report.d, &report.genus) {
        Ok(v) => Some(v),
        Err(_) => {
            unavailable.insert("h0_restricted".into(), "d < 2g + 1".into());
            None
        }
    };
    let dimensions = match dimension_report(&model, r, m) {
        Ok(d) => Some(d),
        Err(moduli_lab::ModuliError::Surface(SurfaceError::ChiUnknown)) => {
            if command == "dims" {
                return Err(CommandError::Usage(
                    "dims needs chi(O_S); pass --chi (dimensions depend on it)".into(),
                ));
            }
            unavailable.insert("dimensions".into(), "chi not supplied".into());
            None
        }
        Err(e) => return Err(CommandError::Core(e.into())),
    };
    let warning = (command == "dims" && report.outcome == Admissibility::NotAdmissible)
        .then(|| "collection is not admissible; the dimensions below are formal".to_string());
    Ok(CheckDocument {
        format: FORMAT_HEADER.into(),
        command: command.into(),
        surface: descriptor.clone(),
        report,
        h0_l,
        h0_restricted,
        dimensions,
        unavailable,
        warning,
    })
}

fn value_or_reason(value: Option<&BigInt>, doc: &CheckDocument, key: &str, fallback: &str) -> Cell {
    match value {
        Some(v) => Cell::from(v),
        None => {
            let reason = doc
                .unavailable
                .get(key)
                .map(String::as_str)
                .unwrap_or(fallback);
            Cell::text(format!("n/a ({reason})"))
        }
    }
}

fn quantity_table(doc: &CheckDocument) -> OutputTable {
    let mut t = OutputTable::new(["quantity", "value"]);
    let r = &doc.report;
    let mut row = |k: &str, v: Cell| t.push(vec![Cell::text(k), v]);
    row("outcome", r.outcome.to_string().into());
    row("r", (&r.r).into());
    row("m", (&r.m).into());
    row("a1", r.a1.to_string().into());
    row("a2", r.a2.to_string().into());
    row("a3", r.a3.to_string().into());
    row("d", (&r.d).into());
    row("genus", (&r.genus).into());
    row(
        "hyperelliptic_requirement",
        r.hyperelliptic_requirement.to_string().into(),
    );
    row(
        "h0_l",
        value_or_reason(doc.h0_l.as_ref(), doc, "h0_l", "not available"),
    );
    row(
        "h0_restricted",
        value_or_reason(
            doc.h0_restricted.as_ref(),
            doc,
            "h0_restricted",
            "not available",
        ),
    );
    match &doc.dimensions {
        Some(dims) => {
            row("chi", (&dims.chi).into());
            row("l_squared", (&dims.l_squared).into());
            row("c2", (&dims.c2).into());
            row(
                "dim_grassmannian",
                value_or_reason(
                    dims.dim_grassmannian.as_ref(),
                    doc,
                    "",
                    "empty or not justified",
                ),
            );
            row(
                "dim_curve_grassmannian",
                value_or_reason(dims.dim_curve_grassmannian.as_ref(), doc, "", "empty"),
            );
            row("expected_dim_moduli", (&dims.expected_dim_moduli).into());
            row("discriminant", (&dims.discriminant).into());
            if let Some(mukai) = &dims.mukai {
                row("mukai_vector", mukai.vector.to_string().into());
                row("mukai_primitive", mukai.primitive.into());
                row("mukai_gcd_r_m_is_1", mukai.rank_multiple_coprime.into());
            }
            match dims.lagrangian {
                Some(l) => row("lagrangian", l.into()),
                None if dims.mukai.is_some() => {
                    row("lagrangian", "n/a (Grassmannian not available)".into())
                }
                None => row("lagrangian", "n/a (not a K3 surface)".into()),
            }
        }
        None => {
            let reason = doc
                .unavailable
                .get("dimensions")
                .cloned()
                .unwrap_or_default();
            row("dimensions", format!("n/a ({reason})").into());
        }
    }
    t
}

fn notes_of(doc: &CheckDocument) -> Vec<String> {
    doc.dimensions
        .as_ref()
        .map(|d| d.notes.clone())
        .unwrap_or_default()
}

fn render_collection(doc: &CheckDocument, format: Format) -> String {
    match format {
        Format::Json => json(doc),
        Format::Markdown => {
            let mut out = format!(
                "# {}: {}, r = {}, m = {}\n\n",
                doc.command, doc.surface, doc.report.r, doc.report.m
            );
            if let Some(w) = &doc.warning {
                out.push_str(&format!("> WARNING: {w}\n\n"));
            }
            out.push_str(&quantity_table(doc).markdown());
            out.push_str("\nAssumed hypotheses:\n");
            for h in &doc.report.assumed_hypotheses {
                out.push_str(&format!("- {h}\n"));
            }
            let notes = notes_of(doc);
            if !notes.is_empty() {
                out.push_str("\nNotes:\n");
                for n in notes {
                    out.push_str(&format!("- {n}\n"));
                }
            }
            out
        }
        Format::Csv => {
            let mut t = quantity_table(doc);
            if let Some(w) = &doc.warning {
                t.rows
                    .insert(0, vec![Cell::text("warning"), Cell::text(w.clone())]);
            }
            for h in &doc.report.assumed_hypotheses {
                t.push(vec![
                    Cell::text("assumed_hypothesis"),
                    Cell::text(h.clone()),
                ]);
            }
            for n in notes_of(doc) {
                t.push(vec![Cell::text("note"), Cell::text(n)]);
            }
            t.csv()
        }
    }
}

pub fn cmd_check(
    descriptor: &SurfaceDescriptor,
    r: &BigInt,
    m: &BigInt,
    format: Format,
) -> Outcome {
    let doc = collection_document("check", descriptor, r, m)?;
    Ok((
        render_collection(&doc, format),
        exit_code(doc.report.outcome),
    ))
}

pub fn cmd_dims(descriptor: &SurfaceDescriptor, r: &BigInt, m: &BigInt, format: Format) -> Outcome {
    let doc = collection_document("dims", descriptor, r, m)?;
    if let Some(w) = &doc.warning {
        eprintln!("warning: {w}");
    }
    Ok((
        render_collection(&doc, format),
        exit_code(doc.report.outcome),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Closed,
    Raw,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionArg {
    Any,
    A31,
    A32,
}

impl ConditionArg {
    fn filter(self) -> ConditionFilter {
        match self {
            ConditionArg::Any => ConditionFilter::Any,
            ConditionArg::A31 => ConditionFilter::ExactDegree,
            ConditionArg::A32 => ConditionFilter::Window,
        }
    }
}

fn describe_filter(filter: ConditionFilter) -> &'static str {
    match filter {
        ConditionFilter::Any => "A3(1), A3(2)",
        ConditionFilter::ExactDegree => "A3(1)",
        ConditionFilter::Window => "A3(2)",
    }
}

pub struct EnumerateRequest {
    pub bounds: SearchBox,
    pub a_max: u64,
    pub strategy: Strategy,
    pub condition: ConditionArg,
    pub literal_tables: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckSection {
    pub compared: String,
    pub report: CrossCheckReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateDocument {
    pub format: String,
    pub command: String,
    pub surface: SurfaceDescriptor,
    pub strategy: Strategy,
    pub condition: ConditionArg,
    pub bounds: SearchBox,
    pub a_max: Option<u64>,
    pub table_reading: String,
    pub pairs: Vec<PairEntry>,
    pub cross_check: Option<CrossCheckSection>,
}

fn annotate_sources(raw: &PairSet, closed: &PairSet) -> PairSet {
    PairSet::new(
        raw.bounds(),
        raw.iter().map(|p| {
            let mut p = p.clone();
            if let Some(c) = closed.iter().find(|c| c.key() == p.key()) {
                p.source = c.source;
            }
            p
        }),
    )
}

pub fn cmd_enumerate(
    descriptor: &SurfaceDescriptor,
    request: &EnumerateRequest,
    format: Format,
) -> Outcome {
    let model = build_model(descriptor)?;
    let filter = request.condition.filter();
    let reading = if request.literal_tables {
        TableReading::Printed
    } else {
        TableReading::Corrected
    };
    let a_max = BigInt::from(request.a_max);
    let (pairs, section, a_max_used) = match request.strategy {
        Strategy::Closed => {
            let closed = core(closed_pairs(
                &model,
                request.bounds,
                Some(&a_max),
                filter,
                reading,
            ))?;
            for d in &closed.diagnostics {
                eprintln!("note: {d}");
            }
            // The tabulated families are swept by the box alone.
            let capped = closed_coverage(&model) == ConditionFilter::ExactDegree;
            (closed.pairs, None, capped.then_some(request.a_max))
        }
        Strategy::Raw => {
            let raw = core(raw_pairs(
                &model,
                request.bounds,
                filter,
                Execution::Parallel,
            ))?;
            (raw, None, None)
        }
        Strategy::Both => {
            let raw = core(raw_pairs(
                &model,
                request.bounds,
                filter,
                Execution::Parallel,
            ))?;
            let compared = closed_coverage(&model).intersect(filter);
            let section = match compared {
                None => {
                    eprintln!("note: no closed-form characterisation for the requested condition");
                    None
                }
                Some(compared) => {
                    let closed = core(closed_pairs(
                        &model,
                        request.bounds,
                        None,
                        compared,
                        reading,
                    ))?;
                    let report =
                        cross_check(&closed.pairs, &raw.restricted(request.bounds, compared));
                    let annotated = annotate_sources(&raw, &closed.pairs);
                    return finish_enumerate(
                        descriptor,
                        request,
                        reading,
                        annotated,
                        Some(CrossCheckSection {
                            compared: describe_filter(compared).into(),
                            report,
                        }),
                        None,
                        format,
                    );
                }
            };
            (raw, section, None)
        }
    };
    finish_enumerate(
        descriptor, request, reading, pairs, section, a_max_used, format,
    )
}

fn finish_enumerate(
    descriptor: &SurfaceDescriptor,
    request: &EnumerateRequest,
    reading: TableReading,
    pairs: PairSet,
    section: Option<CrossCheckSection>,
    a_max: Option<u64>,
    format: Format,
) -> Outcome {
    let mismatch = section.as_ref().is_some_and(|s| !s.report.is_empty());
    if mismatch {
        eprintln!("cross-check found discrepancies; the raw scan is authoritative");
    }
    let doc = EnumerateDocument {
        format: FORMAT_HEADER.into(),
        command: "enumerate".into(),
        surface: descriptor.clone(),
        strategy: request.strategy,
        condition: request.condition,
        bounds: request.bounds,
        a_max,
        table_reading: match reading {
            TableReading::Printed => "printed".into(),
            TableReading::Corrected => "corrected".into(),
        },
        pairs: pairs.pairs().to_vec(),
        cross_check: section,
    };
    let code = if mismatch {
        EXIT_NOT_ADMISSIBLE
    } else {
        EXIT_OK
    };
    Ok((render_enumerate(&doc, format), code))
}

fn source_cell(p: &PairEntry) -> Cell {
    match p.source {
        Some(s) => Cell::text(s.to_string()),
        None => Cell::Empty,
    }
}

fn render_enumerate(doc: &EnumerateDocument, format: Format) -> String {
    match format {
        Format::Json => json(doc),
        Format::Markdown => {
            let strategy = match doc.strategy {
                Strategy::Closed => "closed",
                Strategy::Raw => "raw",
                Strategy::Both => "both",
            };
            let mut out = format!("# enumerate: {}\n\n", doc.surface);
            out.push_str(&format!(
                "strategy {strategy}, conditions {}, box r <= {}, m <= {}",
                describe_filter(doc.condition.filter()),
                doc.bounds.r_max,
                doc.bounds.m_max
            ));
            if let Some(a) = doc.a_max {
                out.push_str(&format!(", a <= {a}"));
            }
            if doc.table_reading == "printed" {
                out.push_str(", tables as printed");
            }
            out.push_str("\n\n");
            let mut t = OutputTable::new(["pair", "r", "m", "condition", "source"]);
            for p in &doc.pairs {
                t.push(vec![
                    p.to_string().into(),
                    (&p.r).into(),
                    (&p.m).into(),
                    p.condition.to_string().into(),
                    source_cell(p),
                ]);
            }
            out.push_str(&t.markdown());
            out.push_str(&format!("\n{} pairs\n", doc.pairs.len()));
            if doc.pairs.iter().any(|p| p.requires_non_hyperelliptic) {
                out.push_str(&format!("\n{DAGGER_NOTE}\n"));
            }
            if let Some(section) = &doc.cross_check {
                let report = &section.report;
                out.push_str(&format!(
                    "\n## cross-check ({})\n\nclosed {}, raw {}, discrepancies {}\n",
                    section.compared,
                    report.closed_count,
                    report.raw_count,
                    report.discrepancies.len()
                ));
                if !report.is_empty() {
                    out.push('\n');
                    out.push_str(&discrepancy_table(report).markdown());
                }
            }
            out
        }
        Format::Csv => {
            let mut t = OutputTable::new([
                "r",
                "m",
                "condition",
                "requires_non_hyperelliptic",
                "source",
            ]);
            for p in &doc.pairs {
                t.push(vec![
                    (&p.r).into(),
                    (&p.m).into(),
                    p.condition.to_string().into(),
                    p.requires_non_hyperelliptic.into(),
                    source_cell(p),
                ]);
            }
            let mut out = t.csv();
            if let Some(section) = &doc.cross_check {
                let report = &section.report;
                let mut summary =
                    OutputTable::new(["compared", "closed_count", "raw_count", "discrepancies"]);
                summary.push(vec![
                    section.compared.clone().into(),
                    BigInt::from(report.closed_count).into(),
                    BigInt::from(report.raw_count).into(),
                    BigInt::from(report.discrepancies.len()).into(),
                ]);
                out.push('\n');
                out.push_str(&summary.csv());
                if !report.is_empty() {
                    out.push('\n');
                    out.push_str(&discrepancy_table(report).csv());
                }
            }
            out
        }
    }
}

fn discrepancy_table(report: &CrossCheckReport) -> OutputTable {
    let mut t = OutputTable::new(["r", "m", "kind", "detail"]);
    for d in &report.discrepancies {
        t.push(vec![
            (&d.r).into(),
            (&d.m).into(),
            d.kind.to_string().into(),
            d.detail.clone().into(),
        ]);
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableItem {
    pub item: String,
    pub kind: String,
    pub requires_non_hyperelliptic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowDocument {
    pub row: String,
    pub items: Vec<TableItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErratumDocument {
    pub row: String,
    pub printed: String,
    pub corrected: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub format: String,
    pub command: String,
    pub table: String,
    pub citation: String,
    pub row_key: String,
    pub rows: Vec<TableRowDocument>,
    /// A generic row evaluated at the requested parameter (corrected reading).
    pub instantiated: Option<TableRowDocument>,
    pub errata: Vec<ErratumDocument>,
    pub notes: Vec<String>,
}

fn row_document(row: &TableRow) -> TableRowDocument {
    let mut items: Vec<TableItem> = row
        .sporadic
        .iter()
        .map(|item| match *item {
            RowItem::Pair { r, m, dagger } => TableItem {
                item: format!("({r},{m})"),
                kind: "sporadic".into(),
                requires_non_hyperelliptic: dagger,
            },
            RowItem::Pattern { text, dagger } => TableItem {
                item: text.into(),
                kind: "sporadic".into(),
                requires_non_hyperelliptic: dagger,
            },
        })
        .collect();
    items.push(TableItem {
        item: row.standard.into(),
        kind: "standard".into(),
        requires_non_hyperelliptic: false,
    });
    TableRowDocument {
        row: row.key.into(),
        items,
    }
}

fn instantiated_document(
    key: String,
    pairs: Vec<tables::SporadicPair>,
    standard: String,
) -> TableRowDocument {
    let mut items: Vec<TableItem> = pairs
        .into_iter()
        .map(|p| TableItem {
            item: format!("({},{})", p.r, p.m),
            kind: "sporadic".into(),
            requires_non_hyperelliptic: p.dagger,
        })
        .collect();
    items.push(TableItem {
        item: standard,
        kind: "standard".into(),
        requires_non_hyperelliptic: false,
    });
    TableRowDocument { row: key, items }
}

fn parse_selector(
    value: Option<&BigInt>,
    min: i64,
    name: &str,
) -> Result<Option<BigInt>, CommandError> {
    match value {
        Some(v) if *v < BigInt::from(min) => Err(CommandError::Usage(format!(
            "--{name} must be at least {min}"
        ))),
        other => Ok(other.cloned()),
    }
}

pub fn table_document(
    id: &str,
    ksq: Option<&BigInt>,
    h: Option<&BigInt>,
) -> Result<TableDocument, CommandError> {
    let five = BigInt::from(5);
    match id {
        CANONICAL_TABLE => {
            if h.is_some() {
                return Err(CommandError::Usage("--h applies to kod0-a32".into()));
            }
            let ksq = parse_selector(ksq, 1, "ksq")?;
            let rows: Vec<&TableRow> = match &ksq {
                Some(k) => vec![tables::canonical_row(k).expect("ksq >= 1")],
                None => CANONICAL_ROWS.iter().collect(),
            };
            let instantiated = ksq.as_ref().filter(|k| **k >= five).map(|k| {
                let start = tables::canonical_standard_start(k);
                instantiated_document(
                    k.to_string(),
                    tables::canonical_sporadic(k, TableReading::Corrected),
                    format!("S_{start}"),
                )
            });
            let errata = ERRATA
                .iter()
                .filter(|e| e.table == CANONICAL_TABLE)
                .filter(|e| rows.iter().any(|r| r.key.starts_with(e.row)))
                .map(|e| ErratumDocument {
                    row: e.row.into(),
                    printed: e.printed.into(),
                    corrected: e.corrected.into(),
                    reason: e.reason.into(),
                })
                .collect();
            Ok(TableDocument {
                format: FORMAT_HEADER.into(),
                command: "table".into(),
                table: CANONICAL_TABLE.into(),
                citation: "A3(2) pairs for minimal surfaces of general type, H = K_S, L = mK_S".into(),
                row_key: "K_S^2".into(),
                rows: rows.into_iter().map(row_document).collect(),
                instantiated,
                errata,
                notes: vec![
                    DAGGER_NOTE.into(),
                    "S_R: for every r >= R, the pair (r, 1 + ceil((r+2)/K_S^2)); when K_S^2 divides r+2 both (r, 1 + (r+2)/K_S^2) and (r, 2 + (r+2)/K_S^2)".into(),
                ],
            })
        }
        KODAIRA_ZERO_TABLE => {
            if ksq.is_some() {
                return Err(CommandError::Usage("--ksq applies to sgt-a32".into()));
            }
            let h = parse_selector(h, 2, "h")?;
            let rows: Vec<&TableRow> = match &h {
                Some(h) => vec![tables::kodaira_zero_row(h).expect("h >= 2")],
                None => KODAIRA_ZERO_ROWS.iter().collect(),
            };
            let instantiated = h.as_ref().filter(|h| **h >= five).map(|h| {
                let start = tables::kodaira_zero_standard_start(h);
                instantiated_document(
                    h.to_string(),
                    tables::kodaira_zero_sporadic(h, false),
                    format!("T_{start}"),
                )
            });
            Ok(TableDocument {
                format: FORMAT_HEADER.into(),
                command: "table".into(),
                table: KODAIRA_ZERO_TABLE.into(),
                citation: "A3(2) pairs for surfaces with K_S numerically trivial, L = mH, h = H^2/2".into(),
                row_key: "h".into(),
                rows: rows.into_iter().map(row_document).collect(),
                instantiated,
                errata: Vec::new(),
                notes: vec![
                    "† in the h >= 5 row applies only when K_S is not trivial; with trivial K_S the general curve in |H| is not hyperelliptic.".into(),
                    "T_M: the pairs (r, m) with m >= M and a_m <= r <= b_m, where a_m = h(2m-2) - 2 and b_m = a_m + h".into(),
                ],
            })
        }
        other => Err(CommandError::Usage(format!(
            "unknown table {other:?}; expected {CANONICAL_TABLE} or {KODAIRA_ZERO_TABLE}"
        ))),
    }
}

fn compact_items(items: &[TableItem]) -> (String, String) {
    let sporadic: Vec<String> = items
        .iter()
        .filter(|i| i.kind == "sporadic")
        .map(|i| {
            let mark = if i.requires_non_hyperelliptic {
                "†"
            } else {
                ""
            };
            format!("{}{mark}", i.item)
        })
        .collect();
    let standard: Vec<String> = items
        .iter()
        .filter(|i| i.kind == "standard")
        .map(|i| subscript(&i.item))
        .collect();
    (sporadic.join(","), standard.join(","))
}

fn render_table(doc: &TableDocument, format: Format) -> String {
    match format {
        Format::Json => json(doc),
        Format::Markdown => {
            let mut out = format!("# {}\n\nSource: {}\n\n", doc.table, doc.citation);
            let mut t =
                OutputTable::new([doc.row_key.as_str(), "sporadic pairs", "standard pairs"]);
            for row in &doc.rows {
                let (sporadic, standard) = compact_items(&row.items);
                t.push(vec![
                    row.row.clone().into(),
                    sporadic.into(),
                    standard.into(),
                ]);
            }
            out.push_str(&t.markdown());
            if let Some(inst) = &doc.instantiated {
                let (sporadic, standard) = compact_items(&inst.items);
                out.push_str(&format!(
                    "\nAt {} = {} (corrected reading): {sporadic} | {standard}\n",
                    doc.row_key, inst.row
                ));
            }
            out.push('\n');
            for note in &doc.notes {
                out.push_str(&format!("{note}\n"));
            }
            if !doc.errata.is_empty() {
                out.push_str("\nErrata:\n");
                for e in &doc.errata {
                    out.push_str(&format!(
                        "- row {}: printed {}, corrected {} ({})\n",
                        e.row, e.printed, e.corrected, e.reason
                    ));
                }
            }
            out
        }
        Format::Csv => {
            let mut t = OutputTable::new(["row", "item", "kind", "requires_non_hyperelliptic"]);
            for row in doc.rows.iter().chain(doc.instantiated.iter()) {
                for item in &row.items {
                    t.push(vec![
                        row.row.clone().into(),
                        item.item.clone().into(),
                        item.kind.clone().into(),
                        item.requires_non_hyperelliptic.into(),
                    ]);
                }
            }
            t.csv()
        }
    }
}

pub fn cmd_table(id: &str, ksq: Option<&BigInt>, h: Option<&BigInt>, format: Format) -> Outcome {
    let doc = table_document(id, ksq, h)?;
    Ok((render_table(&doc, format), EXIT_OK))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckLine {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

pub fn cmd_selfcheck(format: Format) -> Outcome {
    let lines: Vec<SelfcheckLine> = selfcheck::run_all()
        .into_iter()
        .map(|o| SelfcheckLine {
            check: o.name.into(),
            passed: o.passed,
            detail: o.detail,
        })
        .collect();
    let code = if lines.iter().all(|l| l.passed) {
        EXIT_OK
    } else {
        EXIT_NOT_ADMISSIBLE
    };
    let text = match format {
        Format::Json => json(&lines),
        Format::Markdown | Format::Csv => {
            let mut t = OutputTable::new(["check", "result", "detail"]);
            for l in &lines {
                let result = if l.passed { "PASS" } else { "FAIL" };
                t.push(vec![
                    l.check.clone().into(),
                    result.into(),
                    l.detail.clone().into(),
                ]);
            }
            if format == Format::Csv {
                t.csv()
            } else {
                format!("# selfcheck\n\n{}", t.markdown())
            }
        }
    };
    Ok((text, code))
}
