//! Serialization of classification reports. Field order is fixed by the
//! struct declarations, so identical inputs give byte-identical output.

use clap::ValueEnum;
use serde::Serialize;

use cmtriv::criteria::{closed_form_class_tag, ScalarSummary};
use cmtriv::{CaseTag, ClassTag, ClassificationReport, Prime, QuotientInvariants, Val, Variant};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Csv,
    Table,
}

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
struct InvariantsJson {
    torsion_exponents: Vec<u32>,
    free_rank: usize,
}

impl From<&QuotientInvariants> for InvariantsJson {
    fn from(q: &QuotientInvariants) -> Self {
        InvariantsJson { torsion_exponents: q.torsion_exponents.clone(), free_rank: q.free_rank }
    }
}

/// Integers that fit in i64 are JSON numbers; larger ones are decimal strings.
#[derive(Serialize)]
#[serde(untagged)]
enum BigJson {
    Small(i64),
    Large(String),
}

/// Finite valuations are numbers; the valuation of zero is "inf".
#[derive(Serialize)]
#[serde(untagged)]
enum ValJson {
    Fin(u32),
    Inf(&'static str),
}

impl From<Val> for ValJson {
    fn from(v: Val) -> Self {
        match v {
            Val::Fin(e) => ValJson::Fin(e),
            Val::Inf => ValJson::Inf("inf"),
        }
    }
}

#[derive(Serialize)]
struct ScalarJson {
    value: BigJson,
    residue: u64,
    valuation: ValJson,
}

impl From<&ScalarSummary> for ScalarJson {
    fn from(s: &ScalarSummary) -> Self {
        let value = match i64::try_from(&s.value) {
            Ok(v) => BigJson::Small(v),
            Err(_) => BigJson::Large(s.value.to_string()),
        };
        ScalarJson { value, residue: s.residue, valuation: s.valuation.into() }
    }
}

#[derive(Serialize)]
struct ClassGroupJson {
    tag: &'static str,
    invariants: InvariantsJson,
    dim: usize,
}

#[derive(Serialize)]
struct PrimeJson {
    label: &'static str,
    splits_completely: bool,
    non_split: bool,
    unramified: bool,
    totally_ramified: bool,
    image_invariants: InvariantsJson,
}

#[derive(Serialize)]
struct ReportJson {
    schema: u32,
    variant: &'static str,
    p: u64,
    a: i64,
    b: i64,
    c: Option<i64>,
    constraints_ok: bool,
    class_group: ClassGroupJson,
    #[serde(rename = "det_A")]
    det_a: ScalarJson,
    #[serde(rename = "det_K")]
    det_k: ScalarJson,
    knot_trivial: bool,
    knot_cokernel: InvariantsJson,
    condition_iii: bool,
    case: &'static str,
    x_tilde_trivial: Option<bool>,
    per_prime: Vec<PrimeJson>,
}

fn report_json(r: &ClassificationReport) -> ReportJson {
    let v = r.params.variant;
    ReportJson {
        schema: SCHEMA,
        variant: v.short_name(),
        p: r.params.p.get(),
        a: r.params.a,
        b: r.params.b,
        c: v.has_c().then_some(r.params.c),
        constraints_ok: r.constraints_ok,
        class_group: ClassGroupJson {
            tag: r.class_group.tag.as_str(),
            invariants: (&r.class_group.invariants).into(),
            dim: r.class_group.dim_mod_p,
        },
        det_a: (&r.det_a).into(),
        det_k: (&r.det_k).into(),
        knot_trivial: r.knot_trivial,
        knot_cokernel: (&r.knot_cokernel).into(),
        condition_iii: r.condition_iii,
        case: r.case.as_str(),
        x_tilde_trivial: r.x_tilde_trivial,
        per_prime: r
            .per_prime
            .iter()
            .map(|(l, b)| PrimeJson {
                label: l.as_str(),
                splits_completely: b.splits_completely,
                non_split: b.non_split,
                unramified: b.unramified,
                totally_ramified: b.totally_ramified,
                image_invariants: (&b.image_invariants).into(),
            })
            .collect(),
    }
}

pub fn classify_json(r: &ClassificationReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(r)).expect("serializable");
    s.push('\n');
    s
}

fn opt(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

pub fn classify_table(r: &ClassificationReport) -> String {
    let v = r.params.variant;
    let mut lines = vec![
        ("variant", v.short_name().to_string()),
        ("p", r.params.p.to_string()),
        ("a", r.params.a.to_string()),
        ("b", r.params.b.to_string()),
    ];
    if v.has_c() {
        lines.push(("c", r.params.c.to_string()));
    }
    let scalar = |s: &ScalarSummary| format!("{} (residue {}, valuation {})", s.value, s.residue, s.valuation);
    lines.extend([
        ("constraints_ok", r.constraints_ok.to_string()),
        (
            "class_group",
            format!("{} {} (dim {})", r.class_group.tag.as_str(), r.class_group.invariants, r.class_group.dim_mod_p),
        ),
        ("det_A", scalar(&r.det_a)),
        ("det_K", scalar(&r.det_k)),
        ("knot_trivial", r.knot_trivial.to_string()),
        ("knot_cokernel", r.knot_cokernel.to_string()),
        ("condition_iii", r.condition_iii.to_string()),
        ("case", r.case.as_str().to_string()),
        ("x_tilde_trivial", r.x_tilde_trivial.map_or("n/a (constraints fail)".into(), |b| b.to_string())),
    ]);
    let mut out = String::new();
    for (k, val) in lines {
        out.push_str(&format!("{k:<16} {val}\n"));
    }
    for (l, b) in &r.per_prime {
        out.push_str(&format!(
            "prime {:<10} splits_completely={} non_split={} unramified={} totally_ramified={} image={}\n",
            l.as_str(),
            b.splits_completely,
            b.non_split,
            b.unramified,
            b.totally_ramified,
            b.image_invariants
        ));
    }
    out
}

fn header(variant: Variant, with_params: bool) -> Vec<&'static str> {
    let mut h = Vec::new();
    if with_params {
        h.extend(["variant", "p"]);
    }
    h.extend(["a", "b"]);
    if variant.has_c() {
        h.push("c");
    }
    h.extend([
        "class_tag",
        "dim",
        "detA_res",
        "detK_res",
        "knot_trivial",
        "condition_iii",
        "case",
        "x_tilde_trivial",
        "constraints_ok",
    ]);
    h
}

fn record(r: &ClassificationReport, with_params: bool) -> Vec<String> {
    let v = r.params.variant;
    let mut rec = Vec::new();
    if with_params {
        rec.extend([v.short_name().to_string(), r.params.p.to_string()]);
    }
    rec.extend([r.params.a.to_string(), r.params.b.to_string()]);
    if v.has_c() {
        rec.push(r.params.c.to_string());
    }
    rec.extend([
        r.class_group.tag.as_str().to_string(),
        r.class_group.dim_mod_p.to_string(),
        r.det_a.residue.to_string(),
        r.det_k.residue.to_string(),
        r.knot_trivial.to_string(),
        r.condition_iii.to_string(),
        r.case.as_str().to_string(),
        opt(r.x_tilde_trivial),
        r.constraints_ok.to_string(),
    ]);
    rec
}

/// `schema=1`, a header, one row per report, then an optional summary line.
pub fn rows_csv(reports: &[ClassificationReport], with_params: bool, summary: Option<&SweepSummary>) -> String {
    let mut out = format!("schema={SCHEMA}\n");
    if let Some(first) = reports.first() {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header(first.params.variant, with_params)).expect("in-memory write");
        for r in reports {
            w.write_record(record(r, with_params)).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"));
    }
    if let Some(s) = summary {
        out.push_str(&s.line());
        out.push('\n');
    }
    out
}

#[derive(Serialize, Default)]
pub struct SweepSummary {
    pub rows: usize,
    pub knot_trivial: usize,
    pub condition_iii: usize,
    pub x_tilde_trivial: usize,
    pub constraints_ok: usize,
    pub trivial: usize,
    pub cyclic: usize,
    pub two_generated: usize,
    pub three_or_more: usize,
    pub case_sufficient: usize,
    pub case_a: usize,
    pub case_b: usize,
    /// Rows where a matrix computation disagrees with its closed form.
    pub mismatches: usize,
}

/// Whether the matrix-side results agree with the closed forms.
pub fn consistent(r: &ClassificationReport) -> bool {
    let closed_knot = r.det_k.residue != 0;
    let iii_ok = r.params.variant != Variant::Deg6 || r.condition_iii == r.knot_trivial;
    r.knot_trivial == closed_knot && r.class_group.tag == closed_form_class_tag(&r.params) && iii_ok
}

impl SweepSummary {
    pub fn of(reports: &[ClassificationReport]) -> Self {
        let mut s = SweepSummary { rows: reports.len(), ..Default::default() };
        for r in reports {
            s.knot_trivial += r.knot_trivial as usize;
            s.condition_iii += r.condition_iii as usize;
            s.x_tilde_trivial += (r.x_tilde_trivial == Some(true)) as usize;
            s.constraints_ok += r.constraints_ok as usize;
            match r.class_group.tag {
                ClassTag::Trivial => s.trivial += 1,
                ClassTag::Cyclic => s.cyclic += 1,
                ClassTag::TwoGenerated => s.two_generated += 1,
                ClassTag::ThreeOrMore => s.three_or_more += 1,
            }
            match r.case {
                CaseTag::Sufficient => s.case_sufficient += 1,
                CaseTag::CaseA => s.case_a += 1,
                CaseTag::CaseB => s.case_b += 1,
                CaseTag::NotApplicable => {}
            }
            s.mismatches += !consistent(r) as usize;
        }
        s
    }

    pub fn line(&self) -> String {
        format!(
            "# summary rows={} knot_trivial={} condition_iii={} x_tilde_trivial={} constraints_ok={} \
             Trivial={} Cyclic={} TwoGenerated={} ThreeOrMore={} Sufficient={} A={} B={} mismatches={}",
            self.rows,
            self.knot_trivial,
            self.condition_iii,
            self.x_tilde_trivial,
            self.constraints_ok,
            self.trivial,
            self.cyclic,
            self.two_generated,
            self.three_or_more,
            self.case_sufficient,
            self.case_a,
            self.case_b,
            self.mismatches
        )
    }
}

#[derive(Serialize)]
struct RowJson {
    a: i64,
    b: i64,
    c: Option<i64>,
    class_tag: &'static str,
    dim: usize,
    #[serde(rename = "detA_res")]
    det_a_res: u64,
    #[serde(rename = "detK_res")]
    det_k_res: u64,
    knot_trivial: bool,
    condition_iii: bool,
    case: &'static str,
    x_tilde_trivial: Option<bool>,
    constraints_ok: bool,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    schema: u32,
    variant: &'static str,
    p: u64,
    rows: Vec<RowJson>,
    summary: &'a SweepSummary,
}

pub fn sweep_json(variant: Variant, p: Prime, reports: &[ClassificationReport], summary: &SweepSummary) -> String {
    let rows = reports
        .iter()
        .map(|r| RowJson {
            a: r.params.a,
            b: r.params.b,
            c: variant.has_c().then_some(r.params.c),
            class_tag: r.class_group.tag.as_str(),
            dim: r.class_group.dim_mod_p,
            det_a_res: r.det_a.residue,
            det_k_res: r.det_k.residue,
            knot_trivial: r.knot_trivial,
            condition_iii: r.condition_iii,
            case: r.case.as_str(),
            x_tilde_trivial: r.x_tilde_trivial,
            constraints_ok: r.constraints_ok,
        })
        .collect();
    let doc = SweepJson { schema: SCHEMA, variant: variant.short_name(), p: p.get(), rows, summary };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn sweep_table(reports: &[ClassificationReport], summary: &SweepSummary) -> String {
    let Some(first) = reports.first() else {
        return format!("{}\n", summary.line());
    };
    let head = header(first.params.variant, false);
    let rows: Vec<Vec<String>> = reports.iter().map(|r| record(r, false)).collect();
    let widths: Vec<usize> =
        (0..head.len()).map(|i| rows.iter().map(|r| r[i].len()).chain([head[i].len()]).max().unwrap_or(0)).collect();
    let fmt_row = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = fmt_row(&head.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    for r in &rows {
        out.push_str(&fmt_row(r));
    }
    out.push_str(&summary.line());
    out.push('\n');
    out
}
