mod report;
mod verify;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use cmtriv::{build_model, classify, Error, ModelParams, Prime, Variant};

use report::{Emit, SweepSummary};

/// Largest prime a residue sweep accepts.
const SWEEP_MAX_P: u64 = 50;

const DEG2_STATEMENT: &str =
    "Degree 2 (imaginary quadratic k): X(k~) = 0 if and only if X(k_cyc) is isomorphic to Z_p. \
This case has no parameters; nothing is computed.";

#[derive(Parser)]
#[command(name = "cmtriv", version, about = "Triviality criteria for unramified Iwasawa modules over CM-fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one parameter tuple.
    Classify(ClassifyArgs),
    /// Classify every residue tuple for one variant and prime.
    Sweep(SweepArgs),
    /// Run the lemma catalogue and oracle agreement checks over a grid.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Deg6,
    Deg4ng,
    Deg4bq,
    Deg2,
}

impl VariantArg {
    fn model(self) -> Option<Variant> {
        match self {
            VariantArg::Deg6 => Some(Variant::Deg6),
            VariantArg::Deg4ng => Some(Variant::Deg4NonGalois),
            VariantArg::Deg4bq => Some(Variant::Deg4Biquadratic),
            VariantArg::Deg2 => None,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    emit: Option<Emit>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<i64>,
    /// Required for deg6 only.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<i64>,
    /// Reject tuples violating the existence constraints (default true).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    checked: Option<bool>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    p: u64,
    /// Build models in checked mode; violating tuples are reported as errors (default false).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    checked: Option<bool>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Single prime; default grid is 3, 5, 7.
    #[arg(long)]
    p: Option<u64>,
    /// Restrict to one variant.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Lemma names, comma separated or repeated; `oracle` selects the oracle checks.
    #[arg(long, value_delimiter = ',')]
    lemma: Vec<String>,
    /// Enumeration depth for oracle checks.
    #[arg(long, default_value_t = 3)]
    depth: u32,
    #[command(flatten)]
    out: OutputArgs,
}

pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Rendered output plus whether any check failed.
struct Rendered {
    text: String,
    failed: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = match &cli.command {
        Command::Classify(a) => (&a.out, cmd_classify(a)),
        Command::Sweep(a) => (&a.out, cmd_sweep(a)),
        Command::Verify(a) => (&a.out, verify::cmd_verify(a)),
    };
    let result = result.and_then(|r| {
        write_output(out, &r.text)?;
        match r.failed {
            Some(msg) => Err(CliError::Failed(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("cmtriv: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("cmtriv: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_output(out: &OutputArgs, text: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn prime(p: Option<u64>) -> CliResult<Prime> {
    let p = p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
    Ok(Prime::new(p)?)
}

fn deg2(emit: Emit) -> Rendered {
    let text = match emit {
        Emit::Json => {
            format!("{}\n", serde_json::json!({ "schema": 1, "variant": "deg2", "statement": DEG2_STATEMENT }))
        }
        Emit::Csv => format!("schema=1\nvariant,statement\ndeg2,\"{DEG2_STATEMENT}\"\n"),
        Emit::Table => format!("{DEG2_STATEMENT}\n"),
    };
    Rendered { text, failed: None }
}

fn cmd_classify(args: &ClassifyArgs) -> CliResult<Rendered> {
    let emit = args.out.emit.unwrap_or(Emit::Json);
    let Some(variant) = args.variant.model() else {
        return Ok(deg2(emit));
    };
    let p = prime(args.p)?;
    let need = |v: Option<i64>, name: &str| v.ok_or_else(|| CliError::Usage(format!("--{name} is required")));
    let (a, b) = (need(args.a, "a")?, need(args.b, "b")?);
    let c = if variant.has_c() { need(args.c, "c")? } else { 0 };
    let params = ModelParams::new(variant, p.get(), a, b, c)?;
    let model = build_model(params, args.checked.unwrap_or(true))?;
    let rep = classify(&model);
    let text = match emit {
        Emit::Json => report::classify_json(&rep),
        Emit::Csv => report::rows_csv(&[rep], true, None),
        Emit::Table => report::classify_table(&rep),
    };
    Ok(Rendered { text, failed: None })
}

/// Residue tuples in lexicographic order.
fn residue_grid(variant: Variant, p: u64) -> Vec<(i64, i64, i64)> {
    let p = p as i64;
    let cs = if variant.has_c() { p } else { 1 };
    let mut out = Vec::with_capacity((p * p * cs) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..cs {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<Rendered> {
    let emit = args.out.emit.unwrap_or(Emit::Csv);
    let Some(variant) = args.variant.model() else {
        return Ok(deg2(emit));
    };
    let p = prime(Some(args.p))?;
    if p.get() > SWEEP_MAX_P {
        return Err(CliError::Usage(format!("sweep budget exceeded: p = {p} > {SWEEP_MAX_P}")));
    }
    let checked = args.checked.unwrap_or(false);
    let reports = residue_grid(variant, p.get())
        .into_par_iter()
        .map(|(a, b, c)| {
            let params = ModelParams::new(variant, p.get(), a, b, c)?;
            Ok(classify(&build_model(params, checked)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let summary = SweepSummary::of(&reports);
    let text = match emit {
        Emit::Json => report::sweep_json(variant, p, &reports, &summary),
        Emit::Csv => report::rows_csv(&reports, false, Some(&summary)),
        Emit::Table => report::sweep_table(&reports, &summary),
    };
    let failed =
        (summary.mismatches > 0).then(|| format!("{} rows disagree with the closed-form criteria", summary.mismatches));
    Ok(Rendered { text, failed })
}
