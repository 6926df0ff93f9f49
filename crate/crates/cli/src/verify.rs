//! The `verify` subcommand: the lemma catalogue over a residue grid, plus
//! agreement of lattice operations with finite enumeration.
//!
//! Grid tuples use the representatives 1..=p of each residue class, so a
//! residue of 0 is realized by p and the exact existence constraints rarely
//! fail.

use rayon::prelude::*;
use serde::Serialize;

use cmtriv::oracle::{oracle_agree, oracle_quotient_order, OracleOp};
use cmtriv::{build_model, verify_lemma, Error, GaloisModel, Lattice, LemmaId, ModelParams, Outcome, Prime, Variant};

use crate::report::{Emit, SCHEMA};
use crate::{CliError, CliResult, Rendered, VerifyArgs, SWEEP_MAX_P};

const DEFAULT_PRIMES: [u64; 3] = [3, 5, 7];
const ORACLE: &str = "oracle";
/// Failing tuples listed per lemma.
const MAX_LISTED: usize = 10;

fn lemma_variants(lemma: LemmaId) -> &'static [Variant] {
    match lemma {
        LemmaId::KiDeg4 => &[Variant::Deg4NonGalois, Variant::Deg4Biquadratic],
        LemmaId::SigmaPermutation => &Variant::ALL,
        _ => &[Variant::Deg6],
    }
}

fn grid(variant: Variant, p: u64) -> Vec<(i64, i64, i64)> {
    let p = p as i64;
    let cs: Vec<i64> = if variant.has_c() { (1..=p).collect() } else { vec![0] };
    let mut out = Vec::new();
    for a in 1..=p {
        for b in 1..=p {
            for &c in &cs {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn models(variants: &[Variant], primes: &[Prime]) -> CliResult<Vec<GaloisModel>> {
    let mut out = Vec::new();
    for &v in variants {
        for &p in primes {
            for (a, b, c) in grid(v, p.get()) {
                out.push(build_model(ModelParams::new(v, p.get(), a, b, c)?, false)?);
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Failure {
    variant: &'static str,
    p: u64,
    a: i64,
    b: i64,
    c: i64,
    claims: Vec<String>,
}

fn failure(m: &GaloisModel, claims: Vec<String>) -> Failure {
    let q = m.params();
    Failure { variant: q.variant.short_name(), p: q.p.get(), a: q.a, b: q.b, c: q.c, claims }
}

#[derive(Serialize)]
struct LemmaSummary {
    lemma: &'static str,
    tuples: usize,
    agree: usize,
    failed: usize,
    skipped: usize,
    failures: Vec<Failure>,
}

impl LemmaSummary {
    fn line(&self) -> String {
        let mut s = format!("{}: {}/{} tuples agree", self.lemma, self.agree, self.tuples - self.skipped);
        if self.skipped > 0 {
            s.push_str(&format!(" ({} skipped)", self.skipped));
        }
        s
    }
}

fn run_lemma(lemma: LemmaId, models: &[GaloisModel]) -> CliResult<LemmaSummary> {
    let reports = models.par_iter().map(|m| verify_lemma(m, lemma)).collect::<Result<Vec<_>, Error>>()?;
    let mut s = LemmaSummary {
        lemma: lemma.as_str(),
        tuples: models.len(),
        agree: 0,
        failed: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for (m, r) in models.iter().zip(&reports) {
        match r.outcome {
            Outcome::Pass => s.agree += 1,
            Outcome::Skipped(_) => s.skipped += 1,
            Outcome::Fail => {
                s.failed += 1;
                if s.failures.len() < MAX_LISTED {
                    s.failures.push(failure(m, r.failures().map(str::to_string).collect()));
                }
            }
        }
    }
    Ok(s)
}

#[derive(Serialize, Default)]
struct OracleSummary {
    depth: u32,
    checked: usize,
    agree: usize,
    depth_limited: usize,
    over_budget: usize,
    disagreements: Vec<Failure>,
}

impl OracleSummary {
    fn line(&self) -> String {
        format!(
            "{ORACLE}: {}/{} checks agree at depth {} ({} depth-limited, {} over budget)",
            self.agree, self.checked, self.depth, self.depth_limited, self.over_budget
        )
    }
}

enum Check {
    Agree,
    Disagree(String),
    DepthLimited,
    OverBudget,
}

fn classify_result(r: cmtriv::Result<bool>, what: String) -> CliResult<Check> {
    match r {
        Ok(true) => Ok(Check::Agree),
        Ok(false) => Ok(Check::Disagree(what)),
        Err(Error::DepthInsufficient(_)) => Ok(Check::DepthLimited),
        Err(Error::BudgetExceeded { .. }) => Ok(Check::OverBudget),
        Err(e) => Err(e.into()),
    }
}

/// Sum, intersection and membership for each prime against its σ-successor,
/// and the order of the class-group quotient ambient/Σ I.
fn oracle_checks(m: &GaloisModel, k: u32) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for l in m.labels() {
        let (d1, d2) = (m.d(l), m.d(m.sigma_successor(l)));
        for (op, name) in
            [(OracleOp::Sum, "sum"), (OracleOp::Intersect, "intersect"), (OracleOp::ContainsSample, "contains")]
        {
            out.push(classify_result(
                oracle_agree(&d1, &d2, k, op),
                format!("{name} D_{l} D_{}", m.sigma_successor(l)),
            )?);
        }
    }
    let inertia = m.inertia_sum();
    let q = Lattice::quotient_invariants(&m.ambient(), &inertia)?;
    if q.is_finite() {
        let expected = (m.prime().get() as u128).pow(q.torsion_order_exponent());
        let r = oracle_quotient_order(&m.ambient(), &inertia, k).map(|n| n == expected);
        out.push(classify_result(r, format!("order of ambient/ΣI = {expected}"))?);
    }
    Ok(out)
}

fn run_oracle(models: &[GaloisModel], k: u32) -> CliResult<OracleSummary> {
    let results = models.par_iter().map(|m| oracle_checks(m, k)).collect::<CliResult<Vec<_>>>()?;
    let mut s = OracleSummary { depth: k, ..Default::default() };
    for (m, checks) in models.iter().zip(results) {
        let mut bad = Vec::new();
        for c in checks {
            match c {
                Check::Agree => {
                    s.checked += 1;
                    s.agree += 1;
                }
                Check::Disagree(what) => {
                    s.checked += 1;
                    bad.push(what);
                }
                Check::DepthLimited => s.depth_limited += 1,
                Check::OverBudget => s.over_budget += 1,
            }
        }
        if !bad.is_empty() && s.disagreements.len() < MAX_LISTED {
            s.disagreements.push(failure(m, bad));
        }
    }
    Ok(s)
}

#[derive(Serialize)]
struct VerifyJson {
    schema: u32,
    primes: Vec<u64>,
    lemmas: Vec<LemmaSummary>,
    oracle: Option<OracleSummary>,
    ok: bool,
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<Rendered> {
    let emit = args.out.emit.unwrap_or(Emit::Table);
    let primes: Vec<Prime> = match args.p {
        Some(p) => vec![Prime::new(p)?],
        None => DEFAULT_PRIMES.iter().map(|&p| Prime::new(p).expect("odd prime")).collect(),
    };
    if let Some(p) = primes.iter().find(|p| p.get() > SWEEP_MAX_P) {
        return Err(CliError::Usage(format!("grid budget exceeded: p = {p} > {SWEEP_MAX_P}")));
    }
    if args.depth == 0 {
        return Err(CliError::Usage("--depth must be at least 1".into()));
    }
    let variant_filter = match args.variant {
        Some(v) => match v.model() {
            Some(v) => Some(v),
            None => return Ok(crate::deg2(emit)),
        },
        None => None,
    };
    let mut lemmas = Vec::new();
    let mut with_oracle = args.lemma.is_empty();
    for name in &args.lemma {
        if name == ORACLE {
            with_oracle = true;
        } else {
            let id: LemmaId = name.parse().map_err(|e: Error| {
                let known: Vec<&str> = LemmaId::ALL.iter().map(|l| l.as_str()).chain([ORACLE]).collect();
                CliError::Usage(format!("{e}; known names: {}", known.join(", ")))
            })?;
            if !lemmas.contains(&id) {
                lemmas.push(id);
            }
        }
    }
    if args.lemma.is_empty() {
        lemmas = LemmaId::ALL.to_vec();
    }
    let keep = |v: &Variant| variant_filter.is_none_or(|f| f == *v);

    let mut summaries = Vec::new();
    for &lemma in &lemmas {
        let variants: Vec<Variant> = lemma_variants(lemma).iter().copied().filter(keep).collect();
        summaries.push(run_lemma(lemma, &models(&variants, &primes)?)?);
    }
    let oracle = if with_oracle {
        let variants: Vec<Variant> = Variant::ALL.into_iter().filter(keep).collect();
        Some(run_oracle(&models(&variants, &primes)?, args.depth)?)
    } else {
        None
    };

    let lemma_failures: usize = summaries.iter().map(|s| s.failed).sum();
    let oracle_failures = oracle.as_ref().map_or(0, |o| o.checked - o.agree);
    let ok = lemma_failures == 0 && oracle_failures == 0;
    let text = match emit {
        Emit::Json => {
            let doc = VerifyJson {
                schema: SCHEMA,
                primes: primes.iter().map(|p| p.get()).collect(),
                lemmas: summaries,
                oracle,
                ok,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Emit::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "tuples", "agree", "failed", "skipped"]).expect("in-memory write");
            for s in &summaries {
                let rec = [
                    s.lemma.to_string(),
                    s.tuples.to_string(),
                    s.agree.to_string(),
                    s.failed.to_string(),
                    s.skipped.to_string(),
                ];
                w.write_record(rec).expect("in-memory write");
            }
            if let Some(o) = &oracle {
                let skipped = o.depth_limited + o.over_budget;
                let rec = [
                    ORACLE.to_string(),
                    (o.checked + skipped).to_string(),
                    o.agree.to_string(),
                    (o.checked - o.agree).to_string(),
                    skipped.to_string(),
                ];
                w.write_record(rec).expect("in-memory write");
            }
            let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
            format!("schema={SCHEMA}\n{body}")
        }
        Emit::Table => {
            let mut out = String::new();
            for s in &summaries {
                out.push_str(&s.line());
                out.push('\n');
                for f in &s.failures {
                    out.push_str(&format!(
                        "  FAIL {} p={} a={} b={} c={}: {}\n",
                        f.variant,
                        f.p,
                        f.a,
                        f.b,
                        f.c,
                        f.claims.join("; ")
                    ));
                }
            }
            if let Some(o) = &oracle {
                out.push_str(&o.line());
                out.push('\n');
                for f in &o.disagreements {
                    out.push_str(&format!(
                        "  FAIL {} p={} a={} b={} c={}: {}\n",
                        f.variant,
                        f.p,
                        f.a,
                        f.b,
                        f.c,
                        f.claims.join("; ")
                    ));
                }
            }
            out.push_str(if ok { "all checks pass\n" } else { "verification FAILED\n" });
            out
        }
    };
    let failed = (!ok).then(|| format!("{lemma_failures} lemma failures, {oracle_failures} oracle disagreements"));
    Ok(Rendered { text, failed })
}
